#ifndef OSCDECAY_OSCILLATORY_HPP
#define OSCDECAY_OSCILLATORY_HPP

#include "oscdecay/numerics.hpp"

namespace oscdecay {

/// One monomial term of a product phase: coeff * xi^exponent, or
/// coeff * |xi|^exponent when abs_power is set.
struct PhaseTerm {
    double coeff = 1.0;
    double exponent = 2.0;
    bool abs_power = false;
};

/// Sum-of-monomials phase a_1 xi_1^{k_1} + ... + a_n xi_n^{k_n}.
/// Each coefficient must be nonzero; integer exponents must be >= 2,
/// abs-power exponents > 1.
struct PhaseSpec {
    std::vector<PhaseTerm> terms;

    explicit PhaseSpec(std::vector<PhaseTerm> t);
    std::size_t dims() const { return terms.size(); }
};

enum class OscMethod { contour, eps_oracle, closed_form };

struct OscResult {
    complex value{};
    double err_est = 0.0;
    OscMethod method = OscMethod::contour;
};

enum class SplitRegime { even_k, odd_left, odd_mid_neg, odd_mid_pos, odd_right };

/// Phase-derivative split points: x_star solves x + k s^{k-1} = 1,
/// x_sub solves x + k s^{k-1} = -1 (signed roots for even k).
/// For odd k, x_sub is NaN when x > -1 where the root does not exist.
struct SplitPoints {
    double x_star = 0.0;
    double x_sub = 0.0;
    SplitRegime regime = SplitRegime::even_k;
};

/// int_0^inf exp(i(x s + t s^k)) ds for real k > 1, t > 0.
///
/// The contour runs along the real axis up to the point c where the phase
/// derivative reaches 1 (c = 0 when x >= 1), then along the ray of angle
/// pi/(2k).  On the ray the integrand magnitude is certified <= e^{-u sin
/// theta}, which feeds ray_quad's truncation.
QuadResult half_line_osc(double k, double x, double t, double tol);

/// A_k(x) = lim int exp(-eps|s|^k + i x s + i s^k) ds by contour rotation.
OscResult ak_contour(int k, double x, double tol);

/// Same quantity, computed literally: regularized real-axis integrals at
/// eps = eps0/2^m truncated where the damping falls below 1e-14, then
/// extrapolated to eps = 0.  Independent of ak_contour's code path.
OscResult ak_eps_oracle(int k, double x, double eps0, int levels);

/// A starting eps0 that keeps the extrapolation well-conditioned; the
/// regularized value's eps-derivatives grow like powers of (|x|/k)^{k/(k-1)},
/// so eps0 shrinks accordingly.
double oracle_eps0_hint(int k, double x);

/// Closed forms: k=2 Gaussian, k=3 via Ai.
OscResult ak_closed(int k, double x);

SplitPoints split_points(int k, double x);

/// Regional upper bound for |A_k(x)| from integration by parts:
/// 6 for even k; for odd k, 12 / 6 / (10/3) / 2 on
/// x <= -1 / [-1,0] / [0,1] / x >= 1.
double ibp_bound(int k, double x);

/// int exp(i x xi + i t xi^k) dxi for t != 0, by rescaling to A_k:
/// t > 0 gives t^{-1/k} A_k(t^{-1/k} x), t < 0 the conjugate mirror.
OscResult scaled_integral(int k, double x, double t, double tol);

/// int exp(i x xi + i |xi|^K) dxi for real K > 1; equals
/// 2 Gamma(1+1/K) e^{i pi/(2K)} at x = 0.
OscResult ak_abs(double K, double x, double tol);

/// Same with a time coefficient: int exp(i x xi + i t |xi|^K) dxi, t != 0.
OscResult scaled_abs_integral(double K, double x, double t, double tol);

/// Product kernel (2pi)^{-n} prod_j int exp(i x_j xi + i a_j t xi^{k_j}) dxi.
complex kernel_nd(const PhaseSpec& phase, std::span<const double> x, double t, double tol);

}  // namespace oscdecay

#endif
