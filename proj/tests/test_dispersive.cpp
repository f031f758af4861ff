#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oscdecay/dispersive.hpp"

#include <cmath>
#include <numbers>

using namespace oscdecay;

namespace {

Grid centered_grid(double half_width, std::size_t n) {
    return Grid({-half_width}, {2.0 * half_width / static_cast<double>(n)}, {n});
}

SampledField gaussian_field(const Grid& g, double sigma) {
    return SampledField::sample(g, [sigma](std::span<const double> x) {
        double q = 0.0;
        for (double c : x) q += c * c;
        return complex(std::exp(-q / (2.0 * sigma * sigma)), 0.0);
    });
}

// Free Schrodinger evolution of e^{-x^2/(2 sigma^2)} under a(xi) = xi^2.
complex dispersed_gaussian(double x, double t, double sigma) {
    const complex a(sigma * sigma, -2.0 * t);
    return sigma / std::sqrt(a) * std::exp(-x * x / (2.0 * a));
}

const PhaseSpec schrodinger({{1.0, 2.0, false}});

}  // namespace

TEST_CASE("propagate: identity, unitarity, group law") {
    Grid g = centered_grid(40.0, 512);
    SampledField phi = gaussian_field(g, 1.0);

    SampledField u0 = propagate(phi, schrodinger, 0.0);
    double dev0 = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        dev0 = std::max(dev0, std::abs(u0.values[i] - phi.values[i]));
    CHECK(dev0 < 1e-13);

    const double l2 = lp_norm(phi, 2.0);
    SampledField u1 = propagate(phi, schrodinger, 1.3);
    CHECK(std::abs(lp_norm(u1, 2.0) - l2) < 1e-12 * l2);

    SampledField u2 = propagate(u1, schrodinger, 0.9);
    SampledField u12 = propagate(phi, schrodinger, 2.2);
    double devg = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        devg = std::max(devg, std::abs(u2.values[i] - u12.values[i]));
    CHECK(devg < 1e-12);
}

TEST_CASE("propagate matches the dispersed-Gaussian closed form") {
    Grid g = centered_grid(40.0, 1024);
    SampledField phi = gaussian_field(g, 1.0);
    SampledField u = propagate(phi, schrodinger, 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double x = g.origin[0] + g.spacing[0] * static_cast<double>(i);
        if (std::abs(x) > 10.0) continue;
        worst = std::max(worst, std::abs(u.values[i] - dispersed_gaussian(x, 2.0, 1.0)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("duhamel_solve: zero forcing reduces to propagate") {
    Grid g = centered_grid(40.0, 512);
    SampledField phi = gaussian_field(g, 1.0);
    EvolutionProblem prob(schrodinger, phi, {}, 0.0, 10.0);
    SampledField a = duhamel_solve(prob, 1.7);
    SampledField b = propagate(phi, schrodinger, 1.7);
    double dev = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
    CHECK(dev < 1e-14);
}

TEST_CASE("duhamel_solve: prepared profile integrates exactly") {
    // f(s) = e^{isa(D)} g makes the Duhamel integrand constant, so
    // u(t) = i t e^{ita(D)} g for any quadrature with exact weight sum.
    Grid g = centered_grid(40.0, 512);
    SampledField prof = gaussian_field(g, 1.0);
    const double dt = 0.05;
    std::vector<SampledField> forcing;
    for (int j = 0; j <= 40; ++j)
        forcing.push_back(propagate(prof, schrodinger, dt * static_cast<double>(j)));
    EvolutionProblem prob(schrodinger, SampledField::zeros(g), forcing, dt, 2.0);

    for (double t : {1.0, 0.75}) {  // even and odd interval counts
        SampledField u = duhamel_solve(prob, t);
        SampledField ref = propagate(prof, schrodinger, t);
        double dev = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
            dev = std::max(dev, std::abs(u.values[i] - complex(0.0, t) * ref.values[i]));
        CHECK(dev < 1e-10);
    }

    CHECK_THROWS_AS(duhamel_solve(prob, 0.5 * dt), std::invalid_argument);
    CHECK_THROWS_AS(duhamel_solve(prob, 3.0), std::invalid_argument);
}

TEST_CASE("duhamel_solve superposition") {
    Grid g = centered_grid(40.0, 512);
    SampledField phi = gaussian_field(g, 1.0);
    SampledField gsrc = gaussian_field(g, 0.7);
    const double dt = 0.1;
    std::vector<SampledField> forcing;
    for (int j = 0; j <= 10; ++j) {
        SampledField snap = gsrc;
        const double s = dt * static_cast<double>(j);
        for (complex& v : snap.values) v *= std::exp(-s);
        forcing.push_back(std::move(snap));
    }
    EvolutionProblem both(schrodinger, phi, forcing, dt, 1.0);
    EvolutionProblem homo(schrodinger, phi, {}, 0.0, 1.0);
    EvolutionProblem inho(schrodinger, SampledField::zeros(g), forcing, dt, 1.0);

    SampledField ub = duhamel_solve(both, 0.8);
    SampledField uh = duhamel_solve(homo, 0.8);
    SampledField ui = duhamel_solve(inho, 0.8);
    double dev = 0.0;
    for (std::size_t i = 0; i < ub.values.size(); ++i)
        dev = std::max(dev, std::abs(ub.values[i] - uh.values[i] - ui.values[i]));
    CHECK(dev < 1e-10);
}

TEST_CASE("duhamel_solve satisfies the equation to finite-difference accuracy") {
    Grid g = centered_grid(40.0, 512);
    SampledField phi = gaussian_field(g, 1.0);
    SampledField gsrc = gaussian_field(g, 0.8);
    const double dt = 0.025;
    std::vector<SampledField> forcing;
    for (int j = 0; j <= 40; ++j) {
        SampledField snap = gsrc;
        const double s = dt * static_cast<double>(j);
        for (complex& v : snap.values) v *= std::exp(-s);
        forcing.push_back(std::move(snap));
    }
    EvolutionProblem prob(schrodinger, phi, forcing, dt, 1.0);

    const double t = 0.5;
    SampledField um = duhamel_solve(prob, t - dt);
    SampledField uc = duhamel_solve(prob, t);
    SampledField up = duhamel_solve(prob, t + dt);

    // a(D) u through the transform
    SampledField hat = fft_nd(uc, FftDirection::forward);
    for (std::size_t i = 0; i < hat.values.size(); ++i) {
        const double xi = hat.grid.origin[0] + hat.grid.spacing[0] * static_cast<double>(i);
        hat.values[i] *= xi * xi;
    }
    SampledField adu = fft_nd(hat, FftDirection::inverse);

    double worst = 0.0;
    const complex mi(0.0, -1.0);
    for (std::size_t i = 0; i < uc.values.size(); ++i) {
        const complex dtu = (up.values[i] - um.values[i]) / (2.0 * dt);
        const complex resid = mi * dtu - adu.values[i] - forcing[20].values[i];
        worst = std::max(worst, std::abs(resid));
    }
    CHECK(worst < 0.02);
}

TEST_CASE("ts_apply_freespace against the Schrodinger kernel") {
    Grid g = centered_grid(30.0, 512);
    SampledField f = gaussian_field(g, 0.5);
    SampledField u = ts_apply_freespace(f, schrodinger, 1.0);

    const double pref = std::sqrt(2.0 * std::numbers::pi);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double x = g.origin[0] + g.spacing[0] * static_cast<double>(i);
        worst = std::max(worst, std::abs(u.values[i] - pref * dispersed_gaussian(x, 1.0, 0.5)));
    }
    CHECK(worst < 1e-5);

    // L2 relation under the operator's (2pi)^{n/2} normalization
    CHECK(lp_norm(u, 2.0) == doctest::Approx(pref * lp_norm(f, 2.0)).epsilon(1e-6));

    CHECK_THROWS_AS(ts_apply_freespace(f, schrodinger, 0.0), std::invalid_argument);
}

TEST_CASE("ts_apply_freespace sup-norm bound") {
    Grid g = centered_grid(30.0, 256);
    SampledField f = gaussian_field(g, 0.7);
    const double f_l1 = lp_norm(f, 1.0);
    for (double tau : {0.5, 1.0, 4.0}) {
        SampledField u = ts_apply_freespace(f, schrodinger, tau);
        const double bound = 12.0 / std::sqrt(2.0 * std::numbers::pi) *
                             std::pow(std::abs(tau), -0.5) * f_l1;
        CHECK(lp_norm(u, std::numeric_limits<double>::infinity()) <= bound * 1.05);
    }
}

TEST_CASE("decay_scan slope for the 1-D Schrodinger flow") {
    Grid g = centered_grid(180.0, 2048);
    SampledField phi = gaussian_field(g, 0.5);
    EvolutionProblem prob(schrodinger, phi, {}, 0.0, 10.0);
    std::vector<double> t;
    for (int j = 0; j <= 7; ++j) t.push_back(1.0 * std::pow(8.0, j / 7.0));
    auto [series, fit] = decay_scan(prob, t);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.03));
    CHECK(series.values.front() > series.values.back());

    // Boundary breach: long time on a small torus
    Grid small = centered_grid(20.0, 256);
    EvolutionProblem tight(schrodinger, gaussian_field(small, 0.5), {}, 0.0, 100.0);
    std::vector<double> late{40.0, 60.0, 90.0};
    CHECK_THROWS_AS(decay_scan(tight, late), std::runtime_error);
}

TEST_CASE("interpolated_bound_check ratio stability") {
    Grid g = centered_grid(60.0, 512);
    SampledField f = gaussian_field(g, 0.7);
    const double p = 1.2;
    double lo = 1e300, hi = 0.0;
    for (double tau : {1.0, 2.0, 4.0, 8.0}) {
        const double r = interpolated_bound_check(f, schrodinger, tau, p);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo < 1.2);
    CHECK_THROWS_AS(interpolated_bound_check(f, schrodinger, 1.0, 2.5), std::invalid_argument);
}

TEST_CASE("strichartz_quotient stable across the dilation family") {
    Grid g = centered_grid(1000.0, 8192);
    const double p = critical_exponents(std::vector<double>{2.0}).p;  // 6/5
    double lo = 1e300, hi = 0.0;
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        EvolutionProblem prob(schrodinger, gaussian_field(g, s), {}, 0.0, 60.0);
        const double q = strichartz_quotient(prob, p);
        CHECK(q > 0.0);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    CHECK(hi / lo < 2.0);

    EvolutionProblem zero(schrodinger, SampledField::zeros(g), {}, 0.0, 1.0);
    CHECK(strichartz_quotient(zero, p) == 0.0);
}
