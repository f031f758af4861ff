#include "oscdecay/oscillatory.hpp"

#include "oscdecay/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace oscdecay {

namespace {

bool is_integer_ge2(double e) { return e >= 2.0 && e == std::floor(e); }

}  // namespace

PhaseSpec::PhaseSpec(std::vector<PhaseTerm> t) : terms(std::move(t)) {
    if (terms.empty()) throw std::invalid_argument("PhaseSpec: empty term list");
    for (const PhaseTerm& term : terms) {
        if (term.coeff == 0.0) throw std::invalid_argument("PhaseSpec: zero coefficient");
        if (term.abs_power) {
            if (!(term.exponent > 1.0))
                throw std::invalid_argument("PhaseSpec: abs-power exponent must exceed 1");
        } else if (!is_integer_ge2(term.exponent)) {
            throw std::invalid_argument("PhaseSpec: exponent must be an integer >= 2");
        }
    }
}

QuadResult half_line_osc(double k, double x, double t, double tol) {
    if (!(k > 1.0)) throw std::invalid_argument("half_line_osc: need k > 1");
    if (!(t > 0.0)) throw std::invalid_argument("half_line_osc: need t > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("half_line_osc: need tol > 0");

    // Bend where the phase derivative x + t k s^{k-1} first reaches 1.
    double c = 0.0;
    if (x < 1.0) c = std::pow((1.0 - x) / (t * k), 1.0 / (k - 1.0));

    QuadResult seg1{};
    if (c > 0.0) {
        seg1 = adaptive_quad(
            [&](double s) {
                const double ph = x * s + t * std::pow(s, k);
                return complex(std::cos(ph), std::sin(ph));
            },
            0.0, c, tol / 2.0);
    }

    const double theta = std::numbers::pi / (2.0 * k);
    const double sth = std::sin(theta);
    const complex rot(std::cos(theta), sth);
    auto g = [&](double u) {
        const complex z = c + u * rot;
        const complex iphase = complex(0.0, 1.0) * (x * z + t * std::pow(z, k));
        return rot * std::exp(iphase);
    };
    // On the ray, Re d/du [i phase] <= -sin(theta) * (x + t k |z|^{k-1})
    // <= -sin(theta) since |z| >= c.
    DecayCertificate cert{[sth](double u) { return std::exp(-sth * u); },
                          [sth](double U) { return std::exp(-sth * U) / sth; }};
    QuadResult seg2 = ray_quad(g, cert, tol / 2.0);

    return {seg1.value + seg2.value, seg1.err_est + seg2.err_est, seg1.evals + seg2.evals};
}

OscResult ak_contour(int k, double x, double tol) {
    if (k < 2) throw std::invalid_argument("ak_contour: need k >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("ak_contour: need tol > 0");
    const QuadResult pos = half_line_osc(k, x, 1.0, tol / 2.0);
    complex value;
    double err;
    if (k % 2 == 0) {
        const QuadResult neg = half_line_osc(k, -x, 1.0, tol / 2.0);
        value = pos.value + neg.value;
        err = pos.err_est + neg.err_est;
    } else {
        value = pos.value + std::conj(pos.value);
        err = 2.0 * pos.err_est;
    }
    if (err > tol) throw std::runtime_error("ak_contour: requested tolerance not reached");
    return {value, err, OscMethod::contour};
}

double oracle_eps0_hint(int k, double x) {
    const double s = std::pow(std::abs(x) / k, static_cast<double>(k) / (k - 1));
    return 0.4 / (1.0 + s / 4.0);
}

OscResult ak_eps_oracle(int k, double x, double eps0, int levels) {
    if (k < 2) throw std::invalid_argument("ak_eps_oracle: need k >= 2");
    if (!(eps0 > 0.0 && eps0 <= 1.0))
        throw std::invalid_argument("ak_eps_oracle: need eps0 in (0, 1]");
    if (levels < 3) throw std::invalid_argument("ak_eps_oracle: need levels >= 3");

    std::vector<double> eps(levels);
    std::vector<complex> vals(levels);
    for (int m = 0; m < levels; ++m) {
        const double e = eps0 / std::pow(2.0, m);
        // Truncate where exp(-eps L^k) drops below 1e-14.
        const double L = std::pow(14.0 * std::numbers::ln10 / e, 1.0 / k);
        vals[m] = adaptive_quad(
                      [&](double s) {
                          const double damp = std::exp(-e * std::pow(std::abs(s), k));
                          const double ph = x * s + std::pow(s, k);
                          return damp * complex(std::cos(ph), std::sin(ph));
                      },
                      -L, L, 1e-10, 400000)
                      .value;
        eps[m] = e;
    }
    auto [limit, corr] = richardson_limit(eps, vals);
    if (corr > 1e-6) {
        std::ostringstream msg;
        msg << "ak_eps_oracle: extrapolation residual " << corr << " above 1e-6 at k=" << k
            << " x=" << x << " eps0=" << eps0 << " levels=" << levels;
        throw std::runtime_error(msg.str());
    }
    return {limit, corr, OscMethod::eps_oracle};
}

OscResult ak_closed(int k, double x) {
    if (k == 2) return {gaussian_closed_form(x, 1.0), 1e-14, OscMethod::closed_form};
    if (k == 3) {
        const double c = std::pow(3.0, -1.0 / 3.0);
        return {complex(2.0 * std::numbers::pi * c * airy_ai(x * c), 0.0), 1e-10,
                OscMethod::closed_form};
    }
    throw std::invalid_argument("ak_closed: no closed form for k=" + std::to_string(k));
}

namespace {

// Signed root of k s^{k-1} = y.
double signed_root(int k, double y) {
    if (y == 0.0) return 0.0;
    const double mag = std::pow(std::abs(y) / k, 1.0 / (k - 1));
    return y > 0.0 ? mag : -mag;
}

}  // namespace

SplitPoints split_points(int k, double x) {
    if (k < 2) throw std::invalid_argument("split_points: need k >= 2");
    SplitPoints sp;
    if (k % 2 == 0) {
        sp.x_star = signed_root(k, 1.0 - x);
        sp.x_sub = signed_root(k, -1.0 - x);
        sp.regime = SplitRegime::even_k;
        return sp;
    }
    if (x > 1.0)
        throw std::invalid_argument("split_points: x_star undefined for odd k with x > 1");
    sp.x_star = signed_root(k, 1.0 - x);
    sp.x_sub = x <= -1.0 ? signed_root(k, -1.0 - x) : std::numeric_limits<double>::quiet_NaN();
    if (x <= -1.0)
        sp.regime = SplitRegime::odd_left;
    else if (x <= 0.0)
        sp.regime = SplitRegime::odd_mid_neg;
    else if (x < 1.0)
        sp.regime = SplitRegime::odd_mid_pos;
    else
        sp.regime = SplitRegime::odd_right;
    return sp;
}

double ibp_bound(int k, double x) {
    if (k % 2 == 0) return 6.0;
    if (x <= -1.0) return 12.0;
    if (x <= 0.0) return 6.0;
    if (x <= 1.0) return 10.0 / 3.0;
    return 2.0;
}

OscResult scaled_integral(int k, double x, double t, double tol) {
    if (t == 0.0) throw std::invalid_argument("scaled_integral: need t != 0");
    const double r = std::pow(std::abs(t), -1.0 / k);
    if (t > 0.0) {
        OscResult base = ak_contour(k, r * x, tol);
        return {r * base.value, r * base.err_est, OscMethod::contour};
    }
    OscResult base = ak_contour(k, -r * x, tol);
    return {r * std::conj(base.value), r * base.err_est, OscMethod::contour};
}

OscResult ak_abs(double K, double x, double tol) {
    if (!(K > 1.0)) throw std::invalid_argument("ak_abs: need K > 1");
    const QuadResult pos = half_line_osc(K, x, 1.0, tol / 2.0);
    const QuadResult neg = half_line_osc(K, -x, 1.0, tol / 2.0);
    const double err = pos.err_est + neg.err_est;
    if (err > tol) throw std::runtime_error("ak_abs: requested tolerance not reached");
    return {pos.value + neg.value, err, OscMethod::contour};
}

OscResult scaled_abs_integral(double K, double x, double t, double tol) {
    if (t == 0.0) throw std::invalid_argument("scaled_abs_integral: need t != 0");
    const double r = std::pow(std::abs(t), -1.0 / K);
    if (t > 0.0) {
        OscResult base = ak_abs(K, r * x, tol);
        return {r * base.value, r * base.err_est, OscMethod::contour};
    }
    OscResult base = ak_abs(K, -r * x, tol);
    return {r * std::conj(base.value), r * base.err_est, OscMethod::contour};
}

complex kernel_nd(const PhaseSpec& phase, std::span<const double> x, double t, double tol) {
    if (t == 0.0) throw std::invalid_argument("kernel_nd: need t != 0");
    if (x.size() != phase.terms.size())
        throw std::invalid_argument("kernel_nd: point dimension does not match phase");
    complex prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const PhaseTerm& term = phase.terms[j];
        const double tau = term.coeff * t;
        const OscResult factor =
            term.abs_power
                ? scaled_abs_integral(term.exponent, x[j], tau, tol)
                : scaled_integral(static_cast<int>(term.exponent), x[j], tau, tol);
        prod *= factor.value;
    }
    const double n = static_cast<double>(x.size());
    return prod * std::pow(2.0 * std::numbers::pi, -n);
}

}  // namespace oscdecay
