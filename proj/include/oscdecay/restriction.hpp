#ifndef OSCDECAY_RESTRICTION_HPP
#define OSCDECAY_RESTRICTION_HPP

#include "oscdecay/analysis.hpp"
#include "oscdecay/oscillatory.hpp"

namespace oscdecay {

/// Graph surface xi_n = R(xi') with R(xi') = sum a_j xi_j^{k_j}.  For graphs
/// the surface measure weight is identically 1, so integrals over the surface
/// are plain xi' integrals; no weight is ever applied.
struct SurfaceSpec {
    PhaseSpec phase;

    explicit SurfaceSpec(PhaseSpec ph) : phase(std::move(ph)) {}

    double height(std::span<const double> xi_prime) const;

    /// Nonisotropic dilation exponents (1/k_1, ..., 1/k_{n-1}, 1).
    std::vector<double> dilation_exponents() const;

    /// sum 1/k_j over the surface terms.
    double inv_q() const;
};

/// Axis-aligned Gaussian prod exp(-x_j^2 / (2 w_j^2)), optionally modulated
/// by e^{i c.x}.  Kept analytic so dilation and the Fourier transform are
/// exact.
struct GaussianSpec {
    std::vector<double> widths;
    std::vector<double> modulation;  // empty means none

    SampledField materialize(const Grid& g) const;
    complex hat(std::span<const double> xi) const;
    double lp(double p) const;  // closed-form L^p norm
};

/// d_s phi(x) = phi(s^{-1/k_1} x_1, ..., s^{-1} x_n) applied exactly;
/// s > 1 widens the profile along the surface-adapted exponents.
GaussianSpec dilate(const GaussianSpec& g, const SurfaceSpec& surface, double s);

/// Band-limited dilation of a sampled field; errors if the dilated support
/// leaks into the outer 5% of the grid.
SampledField dilate(const SampledField& field, const SurfaceSpec& surface, double s);

/// phi-hat(xi', R(xi')) per xi'-grid point via the semidiscrete transform.
/// Every requested frequency (including the graph height) must stay inside
/// 0.8 * pi/h of the field's grid.
std::vector<complex> surface_samples(const SampledField& field, const SurfaceSpec& surface,
                                     const Grid& xi_grid);

/// sqrt(trapezoid of |phi-hat|^2 over the surface window) / ||phi||_p.
double restriction_quotient(const SampledField& field, const SurfaceSpec& surface, double p,
                            const Grid& xi_grid);

struct NecessityResult {
    double p = 0.0;
    double alpha_predicted = 0.0;
    std::vector<double> s;
    std::vector<double> quotient;
    DecayFit fit;
};

/// Log-log fit of the restriction quotient across the exactly-dilated
/// Gaussian family; the slope reproduces alpha(p) = 1 + 1/(2q) - (1+1/q)/p
/// and vanishes at the critical p.  Surface samples are shared across the
/// p list.
std::vector<NecessityResult> necessity_scan(const GaussianSpec& base, const SurfaceSpec& surface,
                                            std::span<const double> p_list,
                                            std::span<const double> s_list, const Grid& grid,
                                            const Grid& xi_grid);

}  // namespace oscdecay

#endif
