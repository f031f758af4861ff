#include "oscdecay/analysis.hpp"

#include "oscdecay/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oscdecay {

CriticalExponents critical_exponents(std::span<const double> k_list) {
    if (k_list.empty()) throw std::invalid_argument("critical_exponents: empty exponent list");
    CriticalExponents ce;
    for (double k : k_list) {
        if (!(k > 1.0)) throw std::invalid_argument("critical_exponents: exponents must exceed 1");
        ce.inv_q += 1.0 / k;
    }
    ce.p = 2.0 - 2.0 / (2.0 + ce.inv_q);
    ce.p_dual = ce.p / (ce.p - 1.0);
    ce.lambda = 1.0 + ce.inv_q;
    return ce;
}

BoundSweep bound_sweep(int k, double x_lo, double x_hi, double step, double tol) {
    if (!(step > 0.0)) throw std::invalid_argument("bound_sweep: need step > 0");
    if (!(x_hi >= x_lo)) throw std::invalid_argument("bound_sweep: need x_hi >= x_lo");
    const double quad_tol = std::min(1e-8, tol);
    BoundSweep out;
    const long steps = std::lround((x_hi - x_lo) / step);
    for (long i = 0; i <= steps; ++i) {
        const double x = x_lo + step * static_cast<double>(i);
        OscResult r;
        try {
            r = ak_contour(k, x, quad_tol);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "bound_sweep: quadrature failed at k=" << k << " x=" << x << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
        const double mag = std::abs(r.value);
        out.max_err_est = std::max(out.max_err_est, r.err_est);
        if (mag > out.max_abs) {
            out.max_abs = mag;
            out.argmax = x;
        }
        if (mag > ibp_bound(k, x) + tol) out.violations.emplace_back(x, mag);
    }
    return out;
}

DecayFit decay_fit(int k, double x, std::span<const double> t_grid) {
    if (t_grid.size() < 4) throw std::invalid_argument("decay_fit: need >= 4 time samples");
    const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
    if (!(*lo > 0.0)) throw std::invalid_argument("decay_fit: times must be positive");
    if (*hi / *lo < 100.0)
        throw std::invalid_argument("decay_fit: time grid must span at least two decades");
    std::vector<double> mags(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        mags[i] = std::abs(scaled_integral(k, x, t_grid[i], 1e-9).value);
        if (mags[i] < 1e-12) {
            std::ostringstream msg;
            msg << "decay_fit: integral magnitude vanishes at t=" << t_grid[i]
                << "; pick an x where A_k stays away from zero (x=0 works)";
            throw std::runtime_error(msg.str());
        }
    }
    return loglog_fit(t_grid, mags);
}

namespace {

// int_a^b e^{i(x xi + t xi^k)} dxi with panels cut at stationary points and
// then subdivided so each carries O(2 pi) of phase.
complex interval_osc(int k, double x, double t, double a, double b, double tol) {
    auto phi = [&](double xi) { return x * xi + t * std::pow(xi, k); };

    std::vector<double> cuts{a, b};
    const double rhs = -x / (t * k);  // xi^{k-1} = rhs at stationary points
    if (k % 2 == 0) {
        const double r = (rhs >= 0 ? 1.0 : -1.0) * std::pow(std::abs(rhs), 1.0 / (k - 1));
        if (r > a && r < b) cuts.push_back(r);
    } else if (rhs > 0.0) {
        const double r = std::pow(rhs, 1.0 / (k - 1));
        for (double s : {r, -r})
            if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> edges;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double u = cuts[c], v = cuts[c + 1];
        const double dphi = std::abs(phi(v) - phi(u));
        const long panels = std::clamp<long>(std::lround(dphi / (2.0 * std::numbers::pi)) + 1, 1, 200000);
        for (long m = 0; m < panels; ++m)
            edges.push_back(u + (v - u) * static_cast<double>(m) / static_cast<double>(panels));
    }
    edges.push_back(b);

    const double panel_tol = tol / static_cast<double>(edges.size());
    complex total = 0.0;
    for (std::size_t m = 0; m + 1 < edges.size(); ++m) {
        total += adaptive_quad(
                     [&](double xi) {
                         const double ph = phi(xi);
                         return complex(std::cos(ph), std::sin(ph));
                     },
                     edges[m], edges[m + 1], panel_tol)
                     .value;
    }
    return total;
}

}  // namespace

DecayFit vdcorput_interval(int k, double x, double a, double b, std::span<const double> t_grid) {
    if (!(a < b)) throw std::invalid_argument("vdcorput_interval: need a < b");
    if (t_grid.size() < 2) throw std::invalid_argument("vdcorput_interval: need >= 2 time samples");
    std::vector<double> mags(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        if (!(t > 0.0)) throw std::invalid_argument("vdcorput_interval: times must be positive");
        try {
            mags[i] = std::abs(interval_osc(k, x, t, a, b, 1e-9));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "vdcorput_interval: quadrature failed at t=" << t << " on [" << a << ", " << b
                << "]: " << e.what();
            throw std::runtime_error(msg.str());
        }
    }
    return loglog_fit(t_grid, mags);
}

TransformCheck half_line_transform_check(complex z, double x, std::span<const double> eps_grid) {
    if (!(z.real() > -1.0))
        throw std::invalid_argument("half_line_transform_check: need Re z > -1");
    if (x == 0.0) throw std::invalid_argument("half_line_transform_check: need x != 0");
    if (eps_grid.empty()) throw std::invalid_argument("half_line_transform_check: empty eps grid");

    const complex gz1 = gamma_complex(z + 1.0);
    TransformCheck out;
    out.eps.assign(eps_grid.begin(), eps_grid.end());
    for (double eps : eps_grid) {
        if (!(eps > 0.0))
            throw std::invalid_argument("half_line_transform_check: eps must be positive");
        const complex lam(-eps, x);

        // [0, 1] after xi = w^12, which lifts the xi^z endpoint singularity
        // for Re z > -11/12.
        const double m = 12.0;
        QuadResult head = adaptive_quad(
            [&](double w) {
                if (w <= 0.0) return complex(0.0, 0.0);
                return m * std::exp((m * (z + 1.0) - 1.0) * std::log(w) + lam * std::pow(w, m));
            },
            0.0, 1.0, 1e-11);

        // [1, inf): |integrand| <= (1+u) e^{-eps(1+u)} since Re z <= 1 here.
        DecayCertificate cert{
            [eps](double u) { return (1.0 + u) * std::exp(-eps * (1.0 + u)); },
            [eps](double U) {
                return std::exp(-eps * (1.0 + U)) * ((1.0 + U) / eps + 1.0 / (eps * eps));
            }};
        QuadResult tail = ray_quad(
            [&](double u) {
                const double xi = 1.0 + u;
                return std::exp(z * std::log(xi) + lam * xi);
            },
            cert, 1e-11);

        out.regularized.push_back((head.value + tail.value) / gz1);
        const complex closed = std::pow(complex(eps, -x), -z - 1.0);
        out.closed_form_dev.push_back(std::abs(out.regularized.back() - closed));
    }

    auto [limit, corr] = richardson_limit(out.eps, out.regularized);
    out.limit = limit;
    out.reference = complex(0.0, 1.0) * std::exp(complex(0.0, 1.0) * z * std::numbers::pi / 2.0) *
                    branch_power(x, -z - 1.0);
    out.limit_dev = std::abs(out.limit - out.reference);
    (void)corr;
    return out;
}

complex gz_eval(const PhaseSpec& phase, complex z, std::span<const double> x, double tol) {
    const std::size_t n = x.size();
    if (n != phase.dims() + 1)
        throw std::invalid_argument("gz_eval: point dimension must be surface dimension + 1");
    for (double xj : x)
        if (xj == 0.0) throw std::invalid_argument("gz_eval: factorization needs all x_j != 0");
    const double xn = x[n - 1];

    complex prod = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const PhaseTerm& term = phase.terms[j];
        const double tau = term.coeff * xn;
        prod *= term.abs_power ? scaled_abs_integral(term.exponent, x[j], tau, tol).value
                               : scaled_integral(static_cast<int>(term.exponent), x[j], tau, tol).value;
    }
    const complex pref = complex(0.0, 1.0) *
                         std::pow(2.0 * std::numbers::pi, -static_cast<double>(n) / 2.0) *
                         std::exp(complex(0.0, 1.0) * z * std::numbers::pi / 2.0) *
                         branch_power(xn, -z - 1.0);
    return pref * prod;
}

EtaScan gz_eta_scan(const PhaseSpec& phase, std::span<const double> x,
                    std::span<const double> eta_grid, double inv_q) {
    if (eta_grid.empty()) throw std::invalid_argument("gz_eta_scan: empty eta grid");
    EtaScan out;
    double mean = 0.0;
    for (double eta : eta_grid) {
        const complex z(-(1.0 + inv_q), eta);
        const double mag = std::abs(gz_eval(phase, z, x, 1e-9));
        out.eta.push_back(eta);
        out.ratio.push_back(mag / std::exp(-eta * std::numbers::pi / 2.0));
        mean += out.ratio.back();
    }
    mean /= static_cast<double>(out.ratio.size());
    for (double r : out.ratio)
        out.max_rel_dev = std::max(out.max_rel_dev, std::abs(r - mean) / mean);
    return out;
}

}  // namespace oscdecay
