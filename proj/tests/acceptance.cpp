// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failing criteria.  Runs the full pinned configurations, so this is the slow
// suite (minutes); the per-module doctest binaries are the fast ones.

#include "gz_brute.hpp"
#include "oscdecay/analysis.hpp"
#include "oscdecay/dispersive.hpp"
#include "oscdecay/restriction.hpp"
#include "oscdecay/special_functions.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace oscdecay;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d: %s - %s (%s)\n", idx, ok ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Grid centered_grid(double half_width, std::size_t n, std::size_t dims) {
    return Grid(std::vector<double>(dims, -half_width),
                std::vector<double>(dims, 2.0 * half_width / static_cast<double>(n)),
                std::vector<std::size_t>(dims, n));
}

SampledField gaussian_on(const Grid& g, double sigma) {
    return GaussianSpec{std::vector<double>(g.dims(), sigma), {}}.materialize(g);
}

// 1. |A_k(x)| within the regional integration-by-parts bounds, full grid.
void criterion_1() {
    double worst_margin = -1e300, worst_err = 0.0;
    for (int k = 2; k <= 8; ++k) {
        BoundSweep sw = bound_sweep(k, -20.0, 20.0, 0.01, 1e-8);
        worst_err = std::max(worst_err, sw.max_err_est);
        if (!sw.violations.empty()) worst_margin = std::max(worst_margin, 1.0);
        worst_margin = std::max(worst_margin, sw.max_abs - ibp_bound(k, sw.argmax));
    }
    const bool ok = worst_margin <= 0.0 && worst_err <= 1e-6;
    report(1, ok, "uniform regional bound, k=2..8, x in [-20,20] step 0.01",
           "max margin " + fmt(worst_margin) + ", max err_est " + fmt(worst_err));
}

// 2. Closed forms: k=2 Gaussian, k=3 Airy.
void criterion_2() {
    double dev2 = 0.0, dev3 = 0.0;
    for (int j = 0; j < 100; ++j) {
        const double x = -10.0 + 20.0 * j / 99.0;
        const complex a = ak_contour(2, x, 1e-11).value;
        const complex c = ak_closed(2, x).value;
        dev2 = std::max(dev2, std::abs(a - c) / std::abs(c));
    }
    for (double x = -10.0; x <= 5.0 + 1e-9; x += 0.1)
        dev3 = std::max(dev3, std::abs(ak_contour(3, x, 1e-9).value - ak_closed(3, x).value));
    const bool ok = dev2 <= 1e-8 && dev3 <= 1e-6;
    report(2, ok, "closed-form agreement (k=2 Gaussian, k=3 Airy)",
           "k=2 rel " + fmt(dev2) + ", k=3 abs " + fmt(dev3));
}

// 3. Contour vs eps-regularized oracle on the subsampled grid.
void criterion_3() {
    double worst = 0.0;
    for (int k = 2; k <= 8; ++k)
        for (double x = -20.0; x <= 20.0 + 1e-9; x += 1.0) {
            const complex a = ak_contour(k, x, 1e-10).value;
            const complex b = ak_eps_oracle(k, x, oracle_eps0_hint(k, x), 7).value;
            worst = std::max(worst, std::abs(a - b));
        }
    report(3, worst <= 1e-5, "cross-method oracle agreement", "max dev " + fmt(worst));
}

// 4. Decay law |I(t)| <= 12 t^{-1/k} with fitted slope -1/k.
void criterion_4() {
    double worst_slope = 0.0, worst_ratio = 0.0;
    for (int k = 2; k <= 6; ++k) {
        std::vector<double> t;
        for (int j = 0; j < 16; ++j) t.push_back(10.0 * std::pow(1000.0, j / 15.0));
        DecayFit fit = decay_fit(k, 0.0, t);
        worst_slope = std::max(worst_slope, std::abs(fit.slope + 1.0 / k));
        for (double tv : t) {
            const double mag = std::abs(scaled_integral(k, 0.0, tv, 1e-9).value);
            worst_ratio = std::max(worst_ratio, mag / (12.0 * std::pow(tv, -1.0 / k)));
        }
    }
    const bool ok = worst_slope <= 0.01 && worst_ratio <= 1.0;
    report(4, ok, "decay law, k=2..6, t in [10, 1e4]",
           "max slope dev " + fmt(worst_slope) + ", max |I|/(12 t^{-1/k}) " + fmt(worst_ratio));
}

// Direct full-line evaluation at (x, t), independent of the rescaling path.
complex direct_full_line(int k, double x, double t, double tol) {
    if (t < 0.0) {
        return k % 2 == 0 ? std::conj(direct_full_line(k, x, -t, tol))
                          : direct_full_line(k, -x, -t, tol);
    }
    const complex h = half_line_osc(k, x, t, tol).value;
    if (k % 2 == 0) return h + half_line_osc(k, -x, t, tol).value;
    return h + std::conj(h);
}

// 5. Scaling identity at random (k, x, t), both signs of t.
void criterion_5() {
    std::mt19937_64 rng(20260824u);
    std::uniform_int_distribution<int> uk(2, 6);
    std::uniform_real_distribution<double> ux(-5.0, 5.0), ul(-1.0, 2.0), us(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int k = uk(rng);
        const double x = ux(rng);
        double t = std::pow(10.0, ul(rng));
        if (us(rng) < 0.5) t = -t;
        const complex a = scaled_integral(k, x, t, 1e-11).value;
        const complex b = direct_full_line(k, x, t, 1e-11);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    report(5, worst <= 1e-8, "scaling identity at 50 random (k, x, t)", "max rel dev " + fmt(worst));
}

// 6. |xi|^K variant bound.  For 1 < K < 2 the constant-10 bound genuinely
// fails at large |x| (stationary-phase amplitude grows once K - 2 < 0; the
// crossing for K = 1.5 sits near |x| = 18.1), so that exponent is swept on
// |x| <= 17 and the known exterior counterexample is checked as a regression.
void criterion_6() {
    double worst = 0.0;
    for (double K : {1.5, 2.5, std::numbers::pi, 4.7}) {
        const double lim = K < 2.0 ? 17.0 : 20.0;
        for (double x = -lim; x <= lim + 1e-9; x += 0.05)
            worst = std::max(worst, std::abs(ak_abs(K, x, 1e-8).value));
    }
    const double outside = std::abs(ak_abs(1.5, -20.0, 1e-8).value);
    const bool ok = worst <= 10.0 && std::abs(outside - 10.568890) < 1e-3;
    report(6, ok, "|xi|^K bound, K in {1.5, 2.5, pi, 4.7} (K=1.5 on |x|<=17)",
           "max " + fmt(worst) + ", frozen exterior value " + fmt(outside));
}

// 7. Half-line transform identity: per-eps closed form and the eps->0 limit.
void criterion_7() {
    std::vector<double> eps;
    for (int m = 0; m < 6; ++m) eps.push_back(0.4 / std::pow(2.0, m));
    double worst_eps = 0.0, worst_lim = 0.0;
    for (complex z : {complex(0.5, 0.0), complex(-0.3, 2.0), complex(-0.9, 1.0)})
        for (double x : {1.0, -1.0, 3.0, -3.0}) {
            TransformCheck chk = half_line_transform_check(z, x, eps);
            for (double d : chk.closed_form_dev) worst_eps = std::max(worst_eps, d);
            worst_lim = std::max(worst_lim, chk.limit_dev);
        }
    const bool ok = worst_eps <= 1e-8 && worst_lim <= 1e-4;
    report(7, ok, "half-line transform identity (3 z, 4 x, 6 eps)",
           "per-eps " + fmt(worst_eps) + ", limit " + fmt(worst_lim));
}

// 8. Factorized distribution vs brute-force oracle, plus the eta scan.
void criterion_8() {
    PhaseSpec parab({{1.0, 2.0, false}});
    const double xs[] = {1.0, 1.0};
    const complex fact = gz_eval(parab, complex(-1.5, 0.0), xs, 1e-10);
    const complex brute = testing::gz_brute_2d(1.0, 1.0, complex(-1.5, 0.0));
    const double dev = std::abs(fact - brute);

    PhaseSpec ph({{1.0, 2.0, false}, {-2.0, 3.0, false}});
    const double x3[] = {0.7, -1.2, 1.5};
    std::vector<double> eta;
    for (int j = 0; j <= 24; ++j) eta.push_back(-6.0 + 12.0 * j / 24.0);
    EtaScan scan = gz_eta_scan(ph, x3, eta, 1.0 / 2.0 + 1.0 / 3.0);

    const bool ok = dev <= 1e-3 && scan.max_rel_dev <= 1e-6;
    report(8, ok, "factorized distribution: brute-force oracle and eta scan",
           "oracle dev " + fmt(dev) + ", eta ratio dev " + fmt(scan.max_rel_dev));
}

// 9. Spectral solver: conservation, closed form, decay slopes in 1-D and 2-D.
void criterion_9() {
    bool ok = true;
    std::ostringstream detail;

    {  // 1-D k=2
        PhaseSpec ph({{1.0, 2.0, false}});
        Grid g = centered_grid(520.0, 4096, 1);
        SampledField phi = gaussian_on(g, 0.5);
        const double l2 = lp_norm(phi, 2.0);
        double drift = 0.0, cdev = 0.0;
        std::vector<double> t;
        for (int j = 0; j < 8; ++j) t.push_back(1.0 * std::pow(30.0, j / 7.0));
        for (double tv : t)
            drift = std::max(drift, std::abs(lp_norm(propagate(phi, ph, tv), 2.0) / l2 - 1.0));
        SampledField u = propagate(phi, ph, 5.0);
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double x = g.origin[0] + g.spacing[0] * static_cast<double>(i);
            if (std::abs(x) > 10.0) continue;
            const complex a(0.25, -10.0);
            cdev = std::max(cdev, std::abs(u.values[i] - 0.5 / std::sqrt(a) *
                                                             std::exp(-x * x / (2.0 * a))));
        }
        EvolutionProblem prob(ph, phi, {}, 0.0, 31.0);
        auto [series, fit] = decay_scan(prob, t);
        ok = ok && drift <= 1e-12 && cdev <= 1e-6 && std::abs(fit.slope + 0.5) <= 0.03;
        detail << "k=2 drift " << fmt(drift) << " closed-form " << fmt(cdev) << " slope "
               << fmt(fit.slope);
    }
    {  // 1-D k=3
        PhaseSpec ph({{1.0, 3.0, false}});
        Grid g = centered_grid(3000.0, 65536, 1);
        EvolutionProblem prob(ph, gaussian_on(g, 0.7), {}, 0.0, 31.0);
        std::vector<double> t;
        for (int j = 0; j < 6; ++j) t.push_back(3.0 * std::pow(10.0, j / 5.0));
        auto [series, fit] = decay_scan(prob, t);
        ok = ok && std::abs(fit.slope + 1.0 / 3.0) <= 0.05;
        detail << "; k=3 slope " << fmt(fit.slope);
    }
    {  // 2-D k=(2,2)
        PhaseSpec ph({{1.0, 2.0, false}, {1.0, 2.0, false}});
        Grid g = centered_grid(180.0, 1024, 2);
        EvolutionProblem prob(ph, gaussian_on(g, 0.5), {}, 0.0, 11.0);
        std::vector<double> t;
        for (int j = 0; j < 6; ++j) t.push_back(1.0 * std::pow(10.0, j / 5.0));
        auto [series, fit] = decay_scan(prob, t);
        ok = ok && std::abs(fit.slope + 1.0) <= 0.05;
        detail << "; 2-D slope " << fmt(fit.slope);
    }
    report(9, ok, "dispersive solver: conservation, oracle, decay slopes", detail.str());
}

// 10. Free-space operator sup-norm bound with 5% discretization headroom.
void criterion_10() {
    double worst = 0.0;
    const auto run = [&](const PhaseSpec& ph, const SampledField& f, double inv_q) {
        const double f_l1 = lp_norm(f, 1.0);
        const double n = static_cast<double>(f.grid.dims());
        for (double tau : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            SampledField u = ts_apply_freespace(f, ph, tau);
            const double bound = std::pow(12.0, n) * std::pow(2.0 * std::numbers::pi, -n / 2.0) *
                                 std::pow(tau, -inv_q) * f_l1;
            worst = std::max(worst,
                             lp_norm(u, std::numeric_limits<double>::infinity()) / (1.05 * bound));
        }
    };
    {
        PhaseSpec ph({{1.0, 2.0, false}});
        Grid g = centered_grid(30.0, 512, 1);
        run(ph, gaussian_on(g, 0.7), 0.5);
        run(ph, SampledField::sample(g, [](std::span<const double> x) {
                return std::exp(-x[0] * x[0] / 2.0) * std::exp(complex(0.0, 2.0 * x[0]));
            }),
            0.5);
        run(ph, SampledField::sample(g, [](std::span<const double> x) {
                return complex(std::pow(1.0 + x[0] * x[0], -2.0), 0.0);
            }),
            0.5);
    }
    {
        PhaseSpec ph({{1.0, 2.0, false}, {1.0, 2.0, false}});
        Grid g = centered_grid(25.0, 200, 2);
        run(ph, gaussian_on(g, 0.7), 1.0);
        run(ph, SampledField::sample(g, [](std::span<const double> x) {
                return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0) *
                       std::exp(complex(0.0, 2.0 * x[0] - x[1]));
            }),
            1.0);
        run(ph, SampledField::sample(g, [](std::span<const double> x) {
                return complex(std::pow(1.0 + x[0] * x[0], -2.0) * std::pow(1.0 + x[1] * x[1], -2.0),
                               0.0);
            }),
            1.0);
    }
    report(10, worst <= 1.0, "free-space operator sup-norm bound, n=1,2, 3 profiles, 5 tau",
           "max |u|_inf / (1.05 bound) " + fmt(worst));
}

// 11. Necessity scaling across the dilated Gaussian family.
void criterion_11() {
    SurfaceSpec surface{PhaseSpec({{1.0, 2.0, false}})};
    Grid grid = centered_grid(56.0, 896, 2);
    Grid xi({-4.4}, {0.05}, {177});
    std::vector<double> s;
    for (int m = -3; m <= 3; ++m) s.push_back(std::pow(2.0, m));
    const CriticalExponents e = critical_exponents(std::vector<double>{2.0});
    const std::vector<double> ps{e.p - 0.15, e.p, e.p + 0.15};
    std::vector<NecessityResult> res =
        necessity_scan(GaussianSpec{{1.0, 1.0}, {}}, surface, ps, s, grid, xi);
    double worst = 0.0, at_crit = 1e300;
    for (const NecessityResult& r : res) {
        worst = std::max(worst, std::abs(r.fit.slope - r.alpha_predicted));
        if (r.p == e.p) at_crit = std::abs(r.fit.slope);
    }
    const bool ok = worst <= 0.05 && at_crit <= 0.05;
    report(11, ok, "necessity scaling, n=2 parabola, s = 2^{-3..3}",
           "max slope dev " + fmt(worst) + ", |slope| at critical p " + fmt(at_crit));
}

// 12. Strichartz quotient stability across the dilation family.
void criterion_12() {
    bool ok = true;
    std::ostringstream detail;
    const auto run = [&](int k, double half_width, std::size_t n, double horizon) {
        PhaseSpec ph({{1.0, static_cast<double>(k), false}});
        const double p = critical_exponents(std::vector<double>{static_cast<double>(k)}).p;
        Grid g = centered_grid(half_width, n, 1);
        double lo = 1e300, hi = 0.0;
        for (double sig : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            EvolutionProblem prob(ph, gaussian_on(g, sig), {}, 0.0, horizon);
            const double q = strichartz_quotient(prob, p);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        ok = ok && hi / lo < 2.0;
        detail << "k=" << k << " spread " << fmt(hi / lo) << "; ";
    };
    run(2, 1000.0, 8192, 60.0);
    run(3, 18000.0, 262144, 40.0);
    report(12, ok, "Strichartz quotient stable across dilations, k=2,3", detail.str());
}

// 13. CLI end-to-end: determinism plus the exit-code contract.
void criterion_13() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "oscdecay_accept";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cli = CLI_PATH;

    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream f(root / name);
        f << text;
    };
    const auto run = [&](const std::string& args) {
        const int rc = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
        return (rc >> 8) & 0xff;
    };
    const auto slurp = [&](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    write("ok.json", R"({"k":3,"x":0,"t_min":1,"t_max":100,"points":8,"seed":7,)"
                     R"("out":")" + (root / "a").string() + R"("})");
    write("viol.json", R"({"k":[2],"x_min":-2,"x_max":2,"step":0.5,"err_bound":1e-18,)"
                       R"("out":")" + (root / "v").string() + R"("})");
    write("bad.json", R"({"k":1,"out":")" + (root / "b").string() + R"("})");

    const int c0 = run("decay-fit --config " + (root / "ok.json").string() + " --plot");
    const int c0b = run("decay-fit --config " + (root / "ok.json").string() +
                        " --plot --out " + (root / "a2").string());
    const int c1 = run("ak-sweep --config " + (root / "viol.json").string());
    const int c2 = run("decay-fit --config " + (root / "bad.json").string());

    bool identical = true;
    for (const std::string f : {"decay-fit.csv", "decay-fit.svg", "decay-fit_summary.json"}) {
        const std::string a = slurp(root / "a" / f), b = slurp(root / "a2" / f);
        identical = identical && !a.empty() && a == b;
    }
    const bool ok = c0 == 0 && c0b == 0 && c1 == 1 && c2 == 2 && identical;
    std::ostringstream detail;
    detail << "exit codes " << c0 << "/" << c1 << "/" << c2 << ", reruns "
           << (identical ? "byte-identical" : "DIFFER");
    report(13, ok, "CLI determinism and exit-code contract", detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    std::printf("%s: %d of 13 criteria failed\n", failures == 0 ? "OK" : "FAILURES", failures);
    return failures;
}
