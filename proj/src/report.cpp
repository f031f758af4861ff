#include "oscdecay/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace oscdecay {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string config_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string render_csv(std::span<const std::string> header,
                       std::span<const std::vector<double>> columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("render_csv: header/column count mismatch");
    if (columns.empty()) throw std::invalid_argument("render_csv: no columns");
    const std::size_t rows = columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("render_csv: ragged columns");

    std::ostringstream out;
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            out << (j ? "," : "") << sci(columns[j][i]);
        out << "\n";
    }
    return out.str();
}

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(std::span<const Series> series, const PlotOptions& options) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");

    const auto tx = [&](double v) { return options.log_x ? std::log10(v) : v; };
    const auto ty = [&](double v) { return options.log_y ? std::log10(v) : v; };
    const auto usable = [&](double x, double y) {
        if (options.log_x && x <= 0.0) return false;
        if (options.log_y && y <= 0.0) return false;
        return std::isfinite(x) && std::isfinite(y);
    };

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const Series& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg: x/y length mismatch in series");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x_lo = std::min(x_lo, tx(s.x[i]));
            x_hi = std::max(x_hi, tx(s.x[i]));
            y_lo = std::min(y_lo, ty(s.y[i]));
            y_hi = std::max(y_hi, ty(s.y[i]));
        }
    }
    if (x_lo > x_hi) throw std::invalid_argument("render_svg: no plottable points");
    if (x_hi - x_lo < 1e-12) { x_lo -= 0.5; x_hi += 0.5; }
    if (y_hi - y_lo < 1e-12) { y_lo -= 0.5; y_hi += 0.5; }

    constexpr double width = 800.0, height = 600.0;
    constexpr double ml = 80.0, mr = 30.0, mt = 45.0, mb = 55.0;
    const auto px = [&](double v) { return ml + (tx(v) - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    const auto py = [&](double v) { return height - mb - (ty(v) - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"monospace\" font-size=\"13\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
        << "<rect x=\"" << fixed2(ml) << "\" y=\"" << fixed2(mt) << "\" width=\""
        << fixed2(width - ml - mr) << "\" height=\"" << fixed2(height - mt - mb)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    if (!options.title.empty())
        out << "<text x=\"400\" y=\"28\" text-anchor=\"middle\">" << xml_escape(options.title)
            << "</text>\n";

    for (int j = 0; j <= 4; ++j) {
        const double fx = x_lo + (x_hi - x_lo) * j / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * j / 4.0;
        const double gx = ml + (width - ml - mr) * j / 4.0;
        const double gy = height - mb - (height - mt - mb) * j / 4.0;
        const double vx = options.log_x ? std::pow(10.0, fx) : fx;
        const double vy = options.log_y ? std::pow(10.0, fy) : fy;
        out << "<line x1=\"" << fixed2(gx) << "\" y1=\"" << fixed2(height - mb) << "\" x2=\""
            << fixed2(gx) << "\" y2=\"" << fixed2(height - mb + 6.0) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed2(gx) << "\" y=\"" << fixed2(height - mb + 22.0)
            << "\" text-anchor=\"middle\">" << compact(vx) << "</text>\n"
            << "<line x1=\"" << fixed2(ml - 6.0) << "\" y1=\"" << fixed2(gy) << "\" x2=\""
            << fixed2(ml) << "\" y2=\"" << fixed2(gy) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed2(ml - 10.0) << "\" y=\"" << fixed2(gy + 4.0)
            << "\" text-anchor=\"end\">" << compact(vy) << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = palette[si % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            out << (first ? "" : " ") << fixed2(px(s.x[i])) << "," << fixed2(py(s.y[i]));
            first = false;
        }
        out << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            out << "<circle cx=\"" << fixed2(px(s.x[i])) << "\" cy=\"" << fixed2(py(s.y[i]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }

    if (series.size() > 1) {
        for (std::size_t si = 0; si < series.size(); ++si) {
            const double ly = mt + 18.0 + 18.0 * static_cast<double>(si);
            out << "<rect x=\"" << fixed2(ml + 12.0) << "\" y=\"" << fixed2(ly - 9.0)
                << "\" width=\"12\" height=\"12\" fill=\"" << palette[si % 5] << "\"/>\n"
                << "<text x=\"" << fixed2(ml + 30.0) << "\" y=\"" << fixed2(ly + 2.0) << "\">"
                << xml_escape(series[si].label) << "</text>\n";
        }
    }

    if (std::isfinite(options.slope_annotation))
        out << "<text x=\"" << fixed2(width - mr - 10.0) << "\" y=\"" << fixed2(mt + 18.0)
            << "\" text-anchor=\"end\">slope " << compact(options.slope_annotation)
            << "</text>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace oscdecay
