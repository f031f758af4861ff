#include "oscdecay/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace oscdecay {

namespace {

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
constexpr double lanczos_g = 7.0;
constexpr double lanczos_coeff[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

complex gamma_positive_half(complex w) {
    // Valid for Re w >= 1/2.
    w -= 1.0;
    complex acc = lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) acc += lanczos_coeff[i] / (w + static_cast<double>(i));
    const complex t = w + lanczos_g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, w + 0.5) * std::exp(-t) * acc;
}

}  // namespace

complex gamma_complex(complex w) {
    if (w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real()))
        throw std::invalid_argument("gamma_complex: pole at nonpositive integer " +
                                    std::to_string(w.real()));
    if (w.real() < 0.5) {
        // Reflection: Gamma(w) Gamma(1-w) = pi / sin(pi w).
        const complex s = std::sin(std::numbers::pi * w);
        return std::numbers::pi / (s * gamma_positive_half(1.0 - w));
    }
    return gamma_positive_half(w);
}

namespace {

constexpr double airy_seam = 4.0;

// Maclaurin pieces: Ai(x) = c1 f(x) - c2 g(x).
void airy_series(double x, double& ai, double& aip) {
    double f = 1.0, fp = 0.0, tf = 1.0;
    double g = x, gp = 1.0, tg = x;
    const double x3 = x * x * x;
    for (int n = 0; n < 60; ++n) {
        const double dn = 3.0 * n;
        tf *= x3 / ((dn + 2.0) * (dn + 3.0));
        tg *= x3 / ((dn + 3.0) * (dn + 4.0));
        f += tf;
        g += tg;
        // Derivative terms: d/dx x^{3n} = 3n x^{3n-1}; accumulate via the same terms.
        if (x != 0.0) {
            fp += tf * (dn + 3.0) / x;
            gp += tg * (dn + 4.0) / x;
        }
        if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    }
    const double c1 = 0.35502805388781723926;   // 3^{-2/3}/Gamma(2/3) = Ai(0)
    const double c2 = 0.25881940379280679841;   // 3^{-1/3}/Gamma(1/3) = -Ai'(0)
    ai = c1 * f - c2 * g;
    aip = c1 * fp - c2 * gp;
}

// One Taylor step of y'' = x y from x0 to x0 + h (h may be negative).
void airy_ode_step(double x0, double h, double& y, double& yp) {
    double a[44];
    a[0] = y;
    a[1] = yp;
    for (int m = 0; m + 2 < 44; ++m) {
        const double prev = (m >= 1) ? a[m - 1] : 0.0;
        a[m + 2] = (x0 * a[m] + prev) / (static_cast<double>(m + 2) * static_cast<double>(m + 1));
    }
    double s = 0.0, sp = 0.0;
    for (int m = 43; m >= 1; --m) {
        s = s * h + a[m];
        sp = sp * h + static_cast<double>(m) * a[m];
    }
    y = s * h + a[0];
    yp = sp;
}

double airy_negative(double x) {
    // March the ODE from the seam at -4 down to x in steps of at most 0.5.
    double y, yp;
    airy_series(-airy_seam, y, yp);
    double cur = -airy_seam;
    while (cur > x + 1e-14) {
        const double h = std::max(x - cur, -0.5);
        airy_ode_step(cur, h, y, yp);
        cur += h;
    }
    return y;
}

double airy_positive_quad(double x) {
    // Ai(x) = e^{-zeta}/pi * int_0^inf exp(-sqrt(x) u^2) cos(u^3/3) du,  x > 0.
    const double sx = std::sqrt(x);
    const double zeta = (2.0 / 3.0) * x * sx;
    DecayCertificate cert{
        [sx](double u) { return std::exp(-sx * u * u); },
        [sx](double U) { return U > 0 ? std::exp(-sx * U * U) / (2.0 * sx * U) : 1e300; }};
    auto integrand = [sx](double u) {
        return complex(std::exp(-sx * u * u) * std::cos(u * u * u / 3.0), 0.0);
    };
    QuadResult q = ray_quad(integrand, cert, 1e-14);
    return std::exp(-zeta) / std::numbers::pi * q.value.real();
}

}  // namespace

double airy_ai(double x) {
    if (x < -20.0 || x > 10.0)
        throw std::invalid_argument("airy_ai: x outside supported range [-20, 10]");
    if (x < -airy_seam) return airy_negative(x);
    if (x > airy_seam) return airy_positive_quad(x);
    double ai, aip;
    airy_series(x, ai, aip);
    return ai;
}

complex branch_power(double x, complex w) {
    if (x == 0.0) throw std::invalid_argument("branch_power: base must be nonzero");
    if (x > 0.0) return std::exp(w * std::log(x));
    return std::exp(w * complex(std::log(-x), std::numbers::pi));
}

complex gaussian_closed_form(double x, double t) {
    if (t == 0.0) throw std::invalid_argument("gaussian_closed_form: t must be nonzero");
    const complex root = std::sqrt(std::numbers::pi / complex(0.0, -t));
    const double phase = -x * x / (4.0 * t);
    return root * complex(std::cos(phase), std::sin(phase));
}

}  // namespace oscdecay
