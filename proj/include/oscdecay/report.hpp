#ifndef OSCDECAY_REPORT_HPP
#define OSCDECAY_REPORT_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oscdecay {

inline constexpr const char* artifact_version = "1.0.0";

/// Fixed %.12e formatting used by every numeric artifact.
std::string sci(double v);

/// FNV-1a 64-bit hash of the raw config text, as a 16-digit hex string.
std::string config_hash(std::string_view text);

/// CSV document: header row plus column-major data, %.12e throughout.
/// All columns must share one length.
std::string render_csv(std::span<const std::string> header,
                       std::span<const std::vector<double>> columns);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    bool log_x = false;
    bool log_y = false;
    /// When finite, a slope annotation is drawn in the top-right corner.
    double slope_annotation = std::numeric_limits<double>::quiet_NaN();
};

/// Deterministic standalone SVG: fixed 800x600 viewbox, no timestamps,
/// fixed palette, legend when there is more than one series.
std::string render_svg(std::span<const Series> series, const PlotOptions& options);

}  // namespace oscdecay

#endif
