#ifndef OSCDECAY_ANALYSIS_HPP
#define OSCDECAY_ANALYSIS_HPP

#include "oscdecay/oscillatory.hpp"

namespace oscdecay {

/// Exponent arithmetic for a list of monomial orders k_j.
struct CriticalExponents {
    double inv_q = 0.0;   // sum of 1/k_j
    double p = 0.0;       // 2 - 2/(2 + inv_q)
    double p_dual = 0.0;  // p/(p-1)
    double lambda = 0.0;  // 1 + inv_q

    /// Dilation-scaling exponent alpha(p) = 1 + inv_q/2 - (1 + inv_q)/p;
    /// vanishes exactly at the critical p.
    double alpha(double p_arg) const { return 1.0 + inv_q / 2.0 - (1.0 + inv_q) / p_arg; }
};

CriticalExponents critical_exponents(std::span<const double> k_list);

struct BoundSweep {
    double max_abs = 0.0;
    double argmax = 0.0;
    double max_err_est = 0.0;
    /// (x, |A_k(x)|) pairs exceeding ibp_bound(k, x) + tol.
    std::vector<std::pair<double, double>> violations;
};

BoundSweep bound_sweep(int k, double x_lo, double x_hi, double step, double tol);

/// Power-law fit of |scaled_integral(k, x, t)| over a positive t grid.
/// At x = 0 the scaling identity makes the law exact with slope -1/k.
DecayFit decay_fit(int k, double x, std::span<const double> t_grid);

/// Finite-interval oscillatory integral int_a^b e^{i(x xi + t xi^k)} dxi per
/// t, quadrature panels sized to bounded phase variation, then a log-log fit.
DecayFit vdcorput_interval(int k, double x, double a, double b, std::span<const double> t_grid);

/// Check of the half-line transform identity
///   lim_{eps->0} int_0^inf e^{-eps xi} xi^z e^{i x xi} dxi / Gamma(z+1)
///     = i e^{i z pi/2} (x + i0)^{-z-1}:
/// per-eps values against the closed form (eps - ix)^{-z-1}, then the
/// eps -> 0 extrapolation against the right-hand side.
struct TransformCheck {
    std::vector<double> eps;
    std::vector<complex> regularized;      // quadrature values, one per eps
    std::vector<double> closed_form_dev;   // |quadrature - (eps-ix)^{-z-1}|
    complex limit{};                       // Richardson extrapolation
    complex reference{};                   // i e^{iz pi/2} (x+i0)^{-z-1}
    double limit_dev = 0.0;
};

TransformCheck half_line_transform_check(complex z, double x, std::span<const double> eps_grid);

/// Factorized distribution value
///   i (2pi)^{-n/2} e^{iz pi/2} (x_n + i0)^{-z-1}
///     * prod_j int exp(i x_j xi + i a_j x_n xi^{k_j}) dxi
/// where the phase supplies the n-1 surface terms and x has length n.
complex gz_eval(const PhaseSpec& phase, complex z, std::span<const double> x, double tol);

struct EtaScan {
    std::vector<double> eta;
    std::vector<double> ratio;  // |gz_eval| / e^{-eta pi/2}
    double max_rel_dev = 0.0;   // deviation of ratio from its mean
};

/// Scan z = -(1 + inv_q) + i eta; for x_n > 0 the ratio is an exact constant.
EtaScan gz_eta_scan(const PhaseSpec& phase, std::span<const double> x,
                    std::span<const double> eta_grid, double inv_q);

}  // namespace oscdecay

#endif
