#include "oscdecay/restriction.hpp"

#include "oscdecay/dispersive.hpp"
#include "oscdecay/parallel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace oscdecay {

double SurfaceSpec::height(std::span<const double> xi_prime) const {
    if (xi_prime.size() != phase.dims())
        throw std::invalid_argument("SurfaceSpec: point dimension mismatch");
    double r = 0.0;
    for (std::size_t j = 0; j < phase.terms.size(); ++j) {
        const PhaseTerm& term = phase.terms[j];
        r += term.abs_power ? term.coeff * std::pow(std::abs(xi_prime[j]), term.exponent)
                            : term.coeff * std::pow(xi_prime[j], static_cast<int>(term.exponent));
    }
    return r;
}

std::vector<double> SurfaceSpec::dilation_exponents() const {
    std::vector<double> e;
    for (const PhaseTerm& term : phase.terms) e.push_back(1.0 / term.exponent);
    e.push_back(1.0);
    return e;
}

double SurfaceSpec::inv_q() const {
    double s = 0.0;
    for (const PhaseTerm& term : phase.terms) s += 1.0 / term.exponent;
    return s;
}

SampledField GaussianSpec::materialize(const Grid& g) const {
    if (g.dims() != widths.size())
        throw std::invalid_argument("GaussianSpec: grid dimension mismatch");
    if (!modulation.empty() && modulation.size() != widths.size())
        throw std::invalid_argument("GaussianSpec: modulation dimension mismatch");
    return SampledField::sample(g, [this](std::span<const double> x) {
        double q = 0.0, ph = 0.0;
        for (std::size_t j = 0; j < widths.size(); ++j) {
            q += x[j] * x[j] / (2.0 * widths[j] * widths[j]);
            if (!modulation.empty()) ph += modulation[j] * x[j];
        }
        return std::exp(-q) * complex(std::cos(ph), std::sin(ph));
    });
}

complex GaussianSpec::hat(std::span<const double> xi) const {
    complex v = 1.0;
    for (std::size_t j = 0; j < widths.size(); ++j) {
        const double w = widths[j];
        const double z = xi[j] - (modulation.empty() ? 0.0 : modulation[j]);
        v *= w * std::exp(-w * w * z * z / 2.0);
    }
    return v;
}

double GaussianSpec::lp(double p) const {
    if (std::isinf(p)) return 1.0;
    double v = 1.0;
    for (double w : widths) v *= std::pow(w * std::sqrt(2.0 * std::numbers::pi / p), 1.0 / p);
    return v;
}

GaussianSpec dilate(const GaussianSpec& g, const SurfaceSpec& surface, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("dilate: need s > 0");
    const std::vector<double> e = surface.dilation_exponents();
    if (e.size() != g.widths.size())
        throw std::invalid_argument("dilate: Gaussian dimension must be surface dimension + 1");
    GaussianSpec out = g;
    for (std::size_t j = 0; j < e.size(); ++j) {
        const double scale = std::pow(s, e[j]);
        out.widths[j] *= scale;
        if (!out.modulation.empty()) out.modulation[j] /= scale;
    }
    return out;
}

SampledField dilate(const SampledField& field, const SurfaceSpec& surface, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("dilate: need s > 0");
    const std::vector<double> e = surface.dilation_exponents();
    const Grid& g = field.grid;
    if (e.size() != g.dims())
        throw std::invalid_argument("dilate: field dimension must be surface dimension + 1");
    if (boundary_mass_fraction(field) >= 1e-6)
        throw std::runtime_error("dilate: input field is not negligible at the boundary");
    SampledField hat = fft_nd(field, FftDirection::forward);
    SampledField out = SampledField::zeros(g);
    parallel_for(out.values.size(), [&](std::size_t flat) {
        std::vector<double> x(g.dims());
        g.point(flat, x);
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] /= std::pow(s, e[j]);
            // the interpolant is N*h periodic, so points past the sampled
            // domain would wrap; the field is negligible there, use zero
            const double extent = g.spacing[j] * static_cast<double>(g.shape[j]);
            if (x[j] < g.origin[j] || x[j] >= g.origin[j] + extent) return;
        }
        for (double& c : x) c = -c;
        // dft_at of the spectrum at -x is the band-limited evaluation at x
        out.values[flat] = dft_at(hat, x);
    });
    const double bf = boundary_mass_fraction(out);
    if (bf >= 1e-6) {
        std::ostringstream msg;
        msg << "dilate: dilated support leaks into the boundary (mass fraction " << bf
            << ") at s=" << s;
        throw std::runtime_error(msg.str());
    }
    return out;
}

std::vector<complex> surface_samples(const SampledField& field, const SurfaceSpec& surface,
                                     const Grid& xi_grid) {
    const std::size_t n = field.grid.dims();
    if (xi_grid.dims() != n - 1 || surface.phase.dims() != n - 1)
        throw std::invalid_argument("surface_samples: xi grid must have surface dimension n-1");
    std::vector<double> band(n);
    for (std::size_t j = 0; j < n; ++j) band[j] = 0.8 * std::numbers::pi / field.grid.spacing[j];

    std::vector<complex> out(xi_grid.size());
    parallel_for(out.size(), [&](std::size_t flat) {
        std::vector<double> freq(n);
        xi_grid.point(flat, std::span<double>(freq.data(), n - 1));
        freq[n - 1] = surface.height(std::span<const double>(freq.data(), n - 1));
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(freq[j]) > band[j]) {
                std::ostringstream msg;
                msg << "surface_samples: frequency component " << freq[j] << " on axis " << j
                    << " exceeds the resolvable band " << band[j];
                throw std::runtime_error(msg.str());
            }
        }
        out[flat] = dft_at(field, freq);
    });
    return out;
}

namespace {

// Product trapezoid weight for the xi'-window integral.
double trapezoid_weight(const Grid& g, std::size_t flat) {
    double w = 1.0;
    for (std::size_t j = g.dims(); j-- > 0;) {
        const std::size_t idx = flat % g.shape[j];
        flat /= g.shape[j];
        w *= g.spacing[j] * ((idx == 0 || idx + 1 == g.shape[j]) ? 0.5 : 1.0);
    }
    return w;
}

double surface_l2(const std::vector<complex>& samples, const Grid& xi_grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        acc += trapezoid_weight(xi_grid, i) * std::norm(samples[i]);
    return std::sqrt(acc);
}

}  // namespace

double restriction_quotient(const SampledField& field, const SurfaceSpec& surface, double p,
                            const Grid& xi_grid) {
    if (!(p >= 1.0)) throw std::invalid_argument("restriction_quotient: need p >= 1");
    const double denom = lp_norm(field, p);
    if (denom == 0.0) throw std::invalid_argument("restriction_quotient: zero field");
    const std::vector<complex> samples = surface_samples(field, surface, xi_grid);
    return surface_l2(samples, xi_grid) / denom;
}

std::vector<NecessityResult> necessity_scan(const GaussianSpec& base, const SurfaceSpec& surface,
                                            std::span<const double> p_list,
                                            std::span<const double> s_list, const Grid& grid,
                                            const Grid& xi_grid) {
    if (p_list.empty() || s_list.empty())
        throw std::invalid_argument("necessity_scan: empty p or s list");
    const double inv_q = surface.inv_q();

    std::vector<NecessityResult> results(p_list.size());
    for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
        results[ip].p = p_list[ip];
        results[ip].alpha_predicted = 1.0 + inv_q / 2.0 - (1.0 + inv_q) / p_list[ip];
        results[ip].s.assign(s_list.begin(), s_list.end());
    }
    for (double s : s_list) {
        const GaussianSpec gs = dilate(base, surface, s);
        const SampledField field = gs.materialize(grid);
        const std::vector<complex> samples = surface_samples(field, surface, xi_grid);
        const double num = surface_l2(samples, xi_grid);
        for (std::size_t ip = 0; ip < p_list.size(); ++ip)
            results[ip].quotient.push_back(num / lp_norm(field, p_list[ip]));
    }
    for (NecessityResult& r : results) r.fit = loglog_fit(r.s, r.quotient);
    return results;
}

}  // namespace oscdecay
