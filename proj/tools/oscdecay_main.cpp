// oscdecay: every experiment as a subcommand driven by a JSON config.
//
//   oscdecay <subcommand> --config <path> [--out <dir>] [--plot]
//
// Exit codes: 0 all checks pass, 1 computational failure or bound violation,
// 2 usage/config error (all schema violations listed, nothing written).

#include "CLI11.hpp"
#include "json.hpp"

#include "oscdecay/analysis.hpp"
#include "oscdecay/dispersive.hpp"
#include "oscdecay/report.hpp"
#include "oscdecay/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace oscdecay;

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

std::string compact_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// config reading: every accessor appends to the violation list instead of
// throwing, so a bad config reports all problems at once

struct Cfg {
    const json& doc;
    std::vector<std::string>& errs;

    bool has(const std::string& key) const { return doc.contains(key); }

    double num(const std::string& key) {
        if (!doc.contains(key)) {
            errs.push_back("missing field: " + key);
            return 0.0;
        }
        return num_or(key, 0.0);
    }
    double num_or(const std::string& key, double def) {
        if (!doc.contains(key)) return def;
        if (!doc[key].is_number()) {
            errs.push_back("field " + key + ": expected a number");
            return def;
        }
        return doc[key].get<double>();
    }
    int integer(const std::string& key) { return static_cast<int>(num(key)); }
    int integer_or(const std::string& key, int def) {
        return static_cast<int>(num_or(key, static_cast<double>(def)));
    }
    std::vector<double> list(const std::string& key) {
        if (!doc.contains(key)) {
            errs.push_back("missing field: " + key);
            return {};
        }
        return list_or(key, {});
    }
    std::vector<double> list_or(const std::string& key, std::vector<double> def) {
        if (!doc.contains(key)) return def;
        if (!doc[key].is_array()) {
            errs.push_back("field " + key + ": expected an array of numbers");
            return def;
        }
        std::vector<double> out;
        for (const auto& v : doc[key]) {
            if (!v.is_number()) {
                errs.push_back("field " + key + ": expected an array of numbers");
                return def;
            }
            out.push_back(v.get<double>());
        }
        return out;
    }
    std::string str(const std::string& key) {
        if (!doc.contains(key) || !doc[key].is_string()) {
            errs.push_back("missing field: " + key);
            return {};
        }
        return doc[key].get<std::string>();
    }

    void require(bool ok, const std::string& msg) {
        if (!ok) errs.push_back(msg);
    }
};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Phase exponent list -> validated PhaseSpec; k >= 2 integers only, which is
// what every CLI experiment uses.
PhaseSpec make_phase(const std::vector<double>& k_list, const std::vector<double>& a_list,
                     std::vector<std::string>& errs) {
    std::vector<PhaseTerm> terms;
    for (std::size_t j = 0; j < k_list.size(); ++j) {
        const double k = k_list[j];
        if (k < 2.0 || k != std::floor(k))
            errs.push_back("exponent must be >= 2 or real > 1 with abs flag");
        const double a = j < a_list.size() ? a_list[j] : 1.0;
        if (a == 0.0) errs.push_back("phase coefficients must be nonzero");
        terms.push_back({a == 0.0 ? 1.0 : a, std::max(k, 2.0), false});
    }
    if (terms.empty()) {
        errs.push_back("field k: at least one exponent required");
        terms.push_back({1.0, 2.0, false});
    }
    return PhaseSpec(terms);
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> t;
    for (int j = 0; j < points; ++j)
        t.push_back(lo * std::pow(hi / lo, points == 1 ? 0.0 : static_cast<double>(j) /
                                                                  static_cast<double>(points - 1)));
    return t;
}

Grid centered_grid(double half_width, std::size_t n, std::size_t dims) {
    std::vector<double> origin(dims, -half_width);
    std::vector<double> spacing(dims, 2.0 * half_width / static_cast<double>(n));
    std::vector<std::size_t> shape(dims, n);
    return Grid(origin, spacing, shape);
}

SampledField gaussian_on(const Grid& g, const std::vector<double>& widths) {
    GaussianSpec spec{widths, {}};
    return spec.materialize(g);
}

// ---------------------------------------------------------------------------
// artifact collection

struct Reporter {
    std::string command;
    std::filesystem::path out_dir;
    bool plot = false;
    std::string hash;
    json inputs;
    json results = json::array();
    bool all_pass = true;
    std::string first_violation;

    void add(const std::string& name, double value, double bound, bool pass) {
        json row;
        row["name"] = name;
        row["value"] = value;
        if (std::isnan(bound))
            row["bound"] = nullptr;
        else
            row["bound"] = bound;
        row["pass"] = pass;
        results.push_back(row);
        if (!pass) {
            all_pass = false;
            if (first_violation.empty())
                first_violation = name + " (value " + sci(value) + ", bound " + sci(bound) + ")";
        }
    }
    void info(const std::string& name, double value) { add(name, value, nan_v, true); }

    void save_text(const std::string& filename, const std::string& text) const {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(out_dir / filename, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / filename).string());
        f << text;
    }
    void save_csv(std::span<const std::string> header,
                  std::span<const std::vector<double>> cols) const {
        save_text(command + ".csv", render_csv(header, cols));
    }
    void save_plot(std::span<const Series> series, const PlotOptions& opt) const {
        if (plot) save_text(command + ".svg", render_svg(series, opt));
    }

    int finish(const std::string& exit_reason_override = "") {
        std::string reason = exit_reason_override;
        if (reason.empty())
            reason = all_pass ? "ok" : "bound violation: " + first_violation;
        json summary;
        summary["command"] = command;
        summary["config_hash"] = hash;
        summary["artifact_version"] = artifact_version;
        summary["inputs"] = inputs;
        summary["results"] = results;
        summary["exit_reason"] = reason;
        save_text(command + "_summary.json", summary.dump(2) + "\n");
        return (reason == "ok") ? 0 : 1;
    }
};

// ---------------------------------------------------------------------------
// subcommands

int cmd_ak_eval(Cfg& cfg, Reporter& rep) {
    const int k = cfg.integer("k");
    std::vector<double> xs = cfg.doc.contains("x") && cfg.doc["x"].is_array()
                                 ? cfg.list("x")
                                 : std::vector<double>{cfg.num("x")};
    const double tol = cfg.num_or("tol", 1e-8);
    cfg.require(k >= 2, "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(!xs.empty(), "field x: at least one point required");
    cfg.require(tol > 0.0, "field tol: must be positive");
    if (!cfg.errs.empty()) return 2;

    std::vector<double> cx, cre, cim, cabs, cerr, cbound;
    double worst_margin = -1e300, worst_err = 0.0;
    for (double x : xs) {
        OscResult r = ak_contour(k, x, tol);
        const double bound = ibp_bound(k, x);
        cx.push_back(x);
        cre.push_back(r.value.real());
        cim.push_back(r.value.imag());
        cabs.push_back(std::abs(r.value));
        cerr.push_back(r.err_est);
        cbound.push_back(bound);
        worst_margin = std::max(worst_margin, std::abs(r.value) - bound);
        worst_err = std::max(worst_err, r.err_est);
    }
    const std::string header[] = {"x", "re", "im", "abs", "err_est", "ibp_bound"};
    const std::vector<double> cols[] = {cx, cre, cim, cabs, cerr, cbound};
    rep.save_csv(header, cols);

    rep.add("max(|A_k| - regional bound)", worst_margin, 0.0, worst_margin <= 0.0);
    rep.add("max quadrature err_est", worst_err, tol, worst_err <= tol);
    if (xs.size() > 1) {
        Series s[] = {{"|A_k|", cx, cabs}, {"regional bound", cx, cbound}};
        rep.save_plot(s, {.title = "ak-eval k=" + std::to_string(k)});
    }
    return rep.finish();
}

int cmd_ak_sweep(Cfg& cfg, Reporter& rep) {
    std::vector<double> ks = cfg.list("k");
    const double x_lo = cfg.num("x_min");
    const double x_hi = cfg.num("x_max");
    const double step = cfg.num("step");
    const double tol = cfg.num_or("tol", 1e-8);
    const double err_bound = cfg.num_or("err_bound", 1e-6);
    const int spots = cfg.integer_or("oracle_spots", 0);
    const auto seed = static_cast<std::uint64_t>(cfg.num_or("seed", 0.0));
    for (double k : ks)
        cfg.require(k >= 2.0 && k == std::floor(k),
                    "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(!ks.empty(), "field k: at least one exponent required");
    cfg.require(x_hi > x_lo, "field x_max: must exceed x_min");
    cfg.require(step > 0.0, "field step: must be positive");
    cfg.require(spots >= 0, "field oracle_spots: must be >= 0");
    if (!cfg.errs.empty()) return 2;

    std::vector<double> ck, cmax, cargmax, cerr, cviol;
    for (double kd : ks) {
        const int k = static_cast<int>(kd);
        BoundSweep sw = bound_sweep(k, x_lo, x_hi, step, tol);
        ck.push_back(kd);
        cmax.push_back(sw.max_abs);
        cargmax.push_back(sw.argmax);
        cerr.push_back(sw.max_err_est);
        cviol.push_back(static_cast<double>(sw.violations.size()));
        std::ostringstream name;
        name << "k=" << k << " regional-bound violations";
        if (!sw.violations.empty()) {
            name << " (first at x=" << sw.violations.front().first << ")";
        }
        rep.add(name.str(), static_cast<double>(sw.violations.size()), 0.0,
                sw.violations.empty());
        rep.add("k=" + std::to_string(k) + " max err_est", sw.max_err_est, err_bound,
                sw.max_err_est <= err_bound);
    }
    const std::string header[] = {"k", "max_abs", "argmax", "max_err_est", "violations"};
    const std::vector<double> cols[] = {ck, cmax, cargmax, cerr, cviol};
    rep.save_csv(header, cols);

    if (spots > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ux(x_lo, x_hi);
        std::uniform_int_distribution<std::size_t> uk(0, ks.size() - 1);
        double worst = 0.0;
        for (int i = 0; i < spots; ++i) {
            const int k = static_cast<int>(ks[uk(rng)]);
            const double x = ux(rng);
            OscResult a = ak_contour(k, x, tol);
            OscResult b = ak_eps_oracle(k, x, oracle_eps0_hint(k, x), 7);
            worst = std::max(worst, std::abs(a.value - b.value));
        }
        rep.add("cross-method spot-check max dev", worst, 1e-5, worst <= 1e-5);
    }
    return rep.finish();
}

int cmd_decay_fit(Cfg& cfg, Reporter& rep) {
    const int k = cfg.integer("k");
    const double x = cfg.num_or("x", 0.0);
    const double t_lo = cfg.num("t_min");
    const double t_hi = cfg.num("t_max");
    const int points = cfg.integer_or("points", 24);
    const double slope_tol = cfg.num_or("slope_tol", 0.01);
    cfg.require(k >= 2, "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(t_lo > 0.0 && t_hi > t_lo, "fields t_min/t_max: need 0 < t_min < t_max");
    cfg.require(points >= 3, "field points: need at least 3");
    if (!cfg.errs.empty()) return 2;

    const std::vector<double> t = geometric_grid(t_lo, t_hi, points);
    std::vector<double> mag, bound12;
    double worst_ratio = 0.0;
    for (double tv : t) {
        OscResult r = scaled_integral(k, x, tv, 1e-9);
        mag.push_back(std::abs(r.value));
        bound12.push_back(12.0 * std::pow(tv, -1.0 / static_cast<double>(k)));
        worst_ratio = std::max(worst_ratio, mag.back() / bound12.back());
    }
    DecayFit fit = decay_fit(k, x, t);
    const std::string header[] = {"t", "abs_integral", "bound_12t"};
    const std::vector<double> cols[] = {t, mag, bound12};
    rep.save_csv(header, cols);

    const double target = -1.0 / static_cast<double>(k);
    rep.add("decay slope minus target", fit.slope - target, slope_tol,
            std::abs(fit.slope - target) <= slope_tol);
    rep.add("max |I| / (12 t^{-1/k})", worst_ratio, 1.0, worst_ratio <= 1.0);
    Series s[] = {{"|I(t)|", t, mag}, {"12 t^{-1/k}", t, bound12}};
    rep.save_plot(s, {.title = "decay-fit k=" + std::to_string(k),
                      .log_x = true,
                      .log_y = true,
                      .slope_annotation = fit.slope});
    return rep.finish();
}

int cmd_vdcorput(Cfg& cfg, Reporter& rep) {
    const int k = cfg.integer("k");
    const double x = cfg.num_or("x", 0.0);
    const double a = cfg.num("a");
    const double b = cfg.num("b");
    const double t_lo = cfg.num("t_min");
    const double t_hi = cfg.num("t_max");
    const int points = cfg.integer_or("points", 12);
    const double slope_max = cfg.num_or("slope_max", 0.0);
    cfg.require(k >= 2, "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(b > a, "field b: must exceed a");
    cfg.require(t_lo > 0.0 && t_hi > t_lo, "fields t_min/t_max: need 0 < t_min < t_max");
    cfg.require(points >= 3, "field points: need at least 3");
    if (!cfg.errs.empty()) return 2;

    const std::vector<double> t = geometric_grid(t_lo, t_hi, points);
    DecayFit fit = vdcorput_interval(k, x, a, b, t);
    const std::string header[] = {"slope", "intercept", "max_residual"};
    const std::vector<double> cols[] = {{fit.slope}, {fit.intercept}, {fit.max_residual}};
    rep.save_csv(header, cols);
    rep.add("finite-interval decay slope", fit.slope, slope_max, fit.slope <= slope_max);
    rep.info("fit max residual", fit.max_residual);
    return rep.finish();
}

int cmd_lemma22_check(Cfg& cfg, Reporter& rep) {
    const std::vector<double> zv = cfg.list("z");
    const double x = cfg.num("x");
    const double eps0 = cfg.num_or("eps0", 0.4);
    const int levels = cfg.integer_or("levels", 6);
    const double per_eps_tol = cfg.num_or("per_eps_tol", 1e-8);
    const double limit_tol = cfg.num_or("limit_tol", 1e-4);
    cfg.require(zv.size() == 2, "field z: expected [re, im]");
    cfg.require(x != 0.0, "field x: must be nonzero");
    cfg.require(eps0 > 0.0 && levels >= 3, "fields eps0/levels: need eps0 > 0, levels >= 3");
    if (zv.size() == 2)
        cfg.require(zv[0] > -1.0, "field z: real part must exceed -1");
    if (!cfg.errs.empty()) return 2;

    std::vector<double> eps;
    for (int m = 0; m < levels; ++m) eps.push_back(eps0 / std::pow(2.0, m));
    TransformCheck chk = half_line_transform_check(complex(zv[0], zv[1]), x, eps);

    std::vector<double> cre, cim;
    for (complex v : chk.regularized) {
        cre.push_back(v.real());
        cim.push_back(v.imag());
    }
    const std::string header[] = {"eps", "re", "im", "closed_form_dev"};
    const std::vector<double> cols[] = {chk.eps, cre, cim, chk.closed_form_dev};
    rep.save_csv(header, cols);

    const double worst = *std::max_element(chk.closed_form_dev.begin(), chk.closed_form_dev.end());
    rep.add("max per-eps closed-form dev", worst, per_eps_tol, worst <= per_eps_tol);
    rep.add("eps->0 limit dev", chk.limit_dev, limit_tol, chk.limit_dev <= limit_tol);
    Series s[] = {{"closed-form dev", chk.eps, chk.closed_form_dev}};
    rep.save_plot(s, {.title = "lemma22-check", .log_x = true, .log_y = true});
    return rep.finish();
}

int cmd_gz_scan(Cfg& cfg, Reporter& rep) {
    const std::vector<double> ks = cfg.list("k");
    const std::vector<double> as = cfg.list_or("a", std::vector<double>(ks.size(), 1.0));
    const std::vector<double> x = cfg.list("x");
    const double eta_lo = cfg.num_or("eta_min", -6.0);
    const double eta_hi = cfg.num_or("eta_max", 6.0);
    const int points = cfg.integer_or("points", 25);
    const double tol = cfg.num_or("tol", 1e-6);
    PhaseSpec phase = make_phase(ks, as, cfg.errs);
    cfg.require(x.size() == ks.size() + 1, "field x: length must be one more than k");
    cfg.require(eta_hi > eta_lo && points >= 3,
                "fields eta_min/eta_max/points: need eta_min < eta_max, points >= 3");
    for (double xj : x) cfg.require(xj != 0.0, "field x: components must be nonzero");
    if (!x.empty()) cfg.require(x.back() > 0.0, "field x: last component must be positive");
    if (!cfg.errs.empty()) return 2;

    std::vector<double> eta;
    for (int j = 0; j < points; ++j)
        eta.push_back(eta_lo + (eta_hi - eta_lo) * j / static_cast<double>(points - 1));
    const double inv_q = critical_exponents(ks).inv_q;
    EtaScan scan = gz_eta_scan(phase, x, eta, inv_q);

    const std::string header[] = {"eta", "ratio"};
    const std::vector<double> cols[] = {scan.eta, scan.ratio};
    rep.save_csv(header, cols);
    rep.add("eta-scan max relative dev", scan.max_rel_dev, tol, scan.max_rel_dev <= tol);
    Series s[] = {{"|G(eta)| / e^{-eta pi/2}", scan.eta, scan.ratio}};
    rep.save_plot(s, {.title = "gz-scan"});
    return rep.finish();
}

int cmd_exponents(Cfg& cfg, Reporter& rep) {
    const std::vector<double> ks = cfg.list("k");
    for (double k : ks)
        cfg.require(k > 1.0, "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(!ks.empty(), "field k: at least one exponent required");
    if (!cfg.errs.empty()) return 2;

    CriticalExponents e = critical_exponents(ks);
    const std::string header[] = {"inv_q", "p", "p_dual", "lambda", "alpha_at_p"};
    const std::vector<double> cols[] = {{e.inv_q}, {e.p}, {e.p_dual}, {e.lambda}, {e.alpha(e.p)}};
    rep.save_csv(header, cols);
    rep.info("inv_q", e.inv_q);
    rep.info("p", e.p);
    rep.info("p_dual", e.p_dual);
    rep.info("lambda", e.lambda);
    rep.add("alpha at critical p", e.alpha(e.p), 1e-12, std::abs(e.alpha(e.p)) <= 1e-12);
    return rep.finish();
}

int cmd_pde_solve(Cfg& cfg, Reporter& rep) {
    const std::vector<double> ks = cfg.list("k");
    const std::vector<double> as = cfg.list_or("a", std::vector<double>(ks.size(), 1.0));
    const std::vector<double> widths =
        cfg.list_or("widths", std::vector<double>(ks.size(), cfg.num_or("sigma", 1.0)));
    const double half_width = cfg.num("half_width");
    const int points = cfg.integer("points");
    const double t = cfg.num("t");
    PhaseSpec phase = make_phase(ks, as, cfg.errs);
    cfg.require(widths.size() == ks.size(), "field widths: length must match k");
    cfg.require(half_width > 0.0, "field half_width: must be positive");
    cfg.require(power_of_two(points), "field points: must be a power of two");
    if (!cfg.errs.empty()) return 2;

    Grid g = centered_grid(half_width, static_cast<std::size_t>(points), ks.size());
    SampledField phi = gaussian_on(g, widths);
    EvolutionProblem prob(phase, phi, {}, 0.0, std::abs(t) + 1.0);
    SampledField u = duhamel_solve(prob, t);

    // center slice along the first axis
    std::size_t inner = 1;
    for (std::size_t d = 1; d < g.dims(); ++d) inner *= g.shape[d];
    const std::size_t mid_off = g.dims() > 1 ? inner / 2 : 0;
    std::vector<double> cx, cre, cim, cabs;
    for (std::size_t i = 0; i < g.shape[0]; ++i) {
        const complex v = u.values[i * inner + mid_off];
        cx.push_back(g.origin[0] + g.spacing[0] * static_cast<double>(i));
        cre.push_back(v.real());
        cim.push_back(v.imag());
        cabs.push_back(std::abs(v));
    }
    const std::string header[] = {"x", "re", "im", "abs"};
    const std::vector<double> cols[] = {cx, cre, cim, cabs};
    rep.save_csv(header, cols);

    const double drift = std::abs(lp_norm(u, 2.0) / lp_norm(phi, 2.0) - 1.0);
    rep.add("L2 conservation drift", drift, 1e-10, drift <= 1e-10);
    rep.info("sup norm at t", lp_norm(u, std::numeric_limits<double>::infinity()));
    Series s[] = {{"|u(t, x)|", cx, cabs}};
    rep.save_plot(s, {.title = "pde-solve center slice"});
    return rep.finish();
}

int cmd_pde_decay(Cfg& cfg, Reporter& rep) {
    const std::vector<double> ks = cfg.list("k");
    const std::vector<double> as = cfg.list_or("a", std::vector<double>(ks.size(), 1.0));
    const std::vector<double> widths =
        cfg.list_or("widths", std::vector<double>(ks.size(), cfg.num_or("sigma", 0.5)));
    const double half_width = cfg.num("half_width");
    const int points = cfg.integer("points");
    const double t_lo = cfg.num("t_min");
    const double t_hi = cfg.num("t_max");
    const int t_count = cfg.integer_or("t_points", 8);
    const double slope_tol = cfg.num_or("slope_tol", 0.05);
    PhaseSpec phase = make_phase(ks, as, cfg.errs);
    cfg.require(widths.size() == ks.size(), "field widths: length must match k");
    cfg.require(half_width > 0.0, "field half_width: must be positive");
    cfg.require(power_of_two(points), "field points: must be a power of two");
    cfg.require(t_lo > 0.0 && t_hi > t_lo && t_count >= 3,
                "fields t_min/t_max/t_points: need 0 < t_min < t_max, t_points >= 3");
    if (!cfg.errs.empty()) return 2;

    Grid g = centered_grid(half_width, static_cast<std::size_t>(points), ks.size());
    EvolutionProblem prob(phase, gaussian_on(g, widths), {}, 0.0, t_hi);
    const std::vector<double> t = geometric_grid(t_lo, t_hi, t_count);
    auto [series, fit] = decay_scan(prob, t);

    const std::string header[] = {"t", "sup_norm"};
    const std::vector<double> cols[] = {series.times, series.values};
    rep.save_csv(header, cols);

    const double target = -critical_exponents(ks).inv_q;
    rep.add("sup-norm decay slope minus target", fit.slope - target, slope_tol,
            std::abs(fit.slope - target) <= slope_tol);
    rep.info("fit max residual", fit.max_residual);
    Series s[] = {{"sup norm", series.times, series.values}};
    rep.save_plot(s, {.title = "pde-decay", .log_x = true, .log_y = true,
                      .slope_annotation = fit.slope});
    return rep.finish();
}

int cmd_strichartz(Cfg& cfg, Reporter& rep) {
    const int k = cfg.integer("k");
    const std::vector<double> sigmas = cfg.list("sigma");
    const double half_width = cfg.num("half_width");
    const int points = cfg.integer("points");
    const double horizon = cfg.num("horizon");
    const double ratio_bound = cfg.num_or("ratio_bound", 2.0);
    cfg.require(k >= 2, "exponent must be >= 2 or real > 1 with abs flag");
    cfg.require(!sigmas.empty(), "field sigma: at least one width required");
    cfg.require(half_width > 0.0 && horizon > 0.0,
                "fields half_width/horizon: must be positive");
    cfg.require(power_of_two(points), "field points: must be a power of two");
    if (!cfg.errs.empty()) return 2;

    PhaseSpec phase({{1.0, static_cast<double>(k), false}});
    const double p = critical_exponents(std::vector<double>{static_cast<double>(k)}).p;
    Grid g = centered_grid(half_width, static_cast<std::size_t>(points), 1);

    std::vector<double> quot;
    double lo = 1e300, hi = 0.0;
    for (double s : sigmas) {
        EvolutionProblem prob(phase, gaussian_on(g, {s}), {}, 0.0, horizon);
        const double q = strichartz_quotient(prob, p);
        quot.push_back(q);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    const std::string header[] = {"sigma", "quotient"};
    const std::vector<double> cols[] = {sigmas, quot};
    rep.save_csv(header, cols);

    rep.info("critical p", p);
    rep.add("quotient spread hi/lo", hi / lo, ratio_bound, hi / lo < ratio_bound);
    Series s[] = {{"quotient", sigmas, quot}};
    rep.save_plot(s, {.title = "strichartz dilation family", .log_x = true});
    return rep.finish();
}

int cmd_restrict_scan(Cfg& cfg, Reporter& rep) {
    const std::vector<double> ks = cfg.list("k");
    const std::vector<double> as = cfg.list_or("a", std::vector<double>(ks.size(), 1.0));
    const double half_width = cfg.num("half_width");
    const double h = cfg.num("h");
    const double xi_half = cfg.num("xi_half_width");
    const double xi_step = cfg.num_or("xi_step", 0.05);
    const double slope_tol = cfg.num_or("slope_tol", 0.05);
    PhaseSpec phase = make_phase(ks, as, cfg.errs);
    cfg.require(half_width > 0.0 && h > 0.0, "fields half_width/h: must be positive");
    cfg.require(xi_half > 0.0 && xi_step > 0.0,
                "fields xi_half_width/xi_step: must be positive");
    cfg.require(ks.size() == 1, "field k: restrict-scan supports one surface exponent (n = 2)");

    std::vector<double> p_list = cfg.list_or("p", {});
    std::vector<double> s_list = cfg.list_or("s", {});
    if (!cfg.errs.empty()) return 2;

    SurfaceSpec surface{phase};
    const CriticalExponents exps = critical_exponents(ks);
    if (p_list.empty()) p_list = {exps.p - 0.15, exps.p, exps.p + 0.15};
    if (s_list.empty())
        for (int m = -3; m <= 3; ++m) s_list.push_back(std::pow(2.0, m));

    const std::size_t n_side =
        static_cast<std::size_t>(std::llround(2.0 * half_width / h));
    Grid grid = centered_grid(half_width, n_side, ks.size() + 1);
    const std::size_t xi_count = static_cast<std::size_t>(std::llround(2.0 * xi_half / xi_step)) + 1;
    Grid xi_grid({-xi_half}, {xi_step}, {xi_count});

    GaussianSpec base{std::vector<double>(ks.size() + 1, 1.0), {}};
    std::vector<NecessityResult> res =
        necessity_scan(base, surface, p_list, s_list, grid, xi_grid);

    std::vector<double> cp, cs, cq;
    std::vector<Series> series;
    for (const NecessityResult& r : res) {
        Series ser;
        ser.label = "p=" + compact_label(r.p);
        for (std::size_t i = 0; i < r.s.size(); ++i) {
            cp.push_back(r.p);
            cs.push_back(r.s[i]);
            cq.push_back(r.quotient[i]);
            ser.x.push_back(r.s[i]);
            ser.y.push_back(r.quotient[i]);
        }
        series.push_back(std::move(ser));
        std::ostringstream name;
        name << "p=" << r.p << " slope minus alpha(p)";
        rep.add(name.str(), r.fit.slope - r.alpha_predicted, slope_tol,
                std::abs(r.fit.slope - r.alpha_predicted) <= slope_tol);
    }
    const std::string header[] = {"p", "s", "quotient"};
    const std::vector<double> cols[] = {cp, cs, cq};
    rep.save_csv(header, cols);
    rep.save_plot(series, {.title = "restriction necessity scan", .log_x = true, .log_y = true});
    return rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillatory-integral decay experiments"};
    app.require_subcommand(1);

    std::string config_path, out_flag;
    bool plot = false;

    const std::vector<std::pair<std::string, int (*)(Cfg&, Reporter&)>> commands = {
        {"ak-eval", cmd_ak_eval},         {"ak-sweep", cmd_ak_sweep},
        {"decay-fit", cmd_decay_fit},     {"vdcorput", cmd_vdcorput},
        {"lemma22-check", cmd_lemma22_check}, {"gz-scan", cmd_gz_scan},
        {"exponents", cmd_exponents},     {"pde-solve", cmd_pde_solve},
        {"pde-decay", cmd_pde_decay},     {"strichartz", cmd_strichartz},
        {"restrict-scan", cmd_restrict_scan},
    };
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the JSON config")->required();
        sub->add_option("--out", out_flag, "output directory (overrides the config's out field)");
        sub->add_flag("--plot", plot, "also emit an SVG plot");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream f(config_path, std::ios::binary);
    if (!f) {
        std::cerr << "config error: cannot read " << config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();

    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (!doc.is_object()) {
        std::cerr << "config error: top-level document must be an object\n";
        return 2;
    }

    std::vector<std::string> errs;
    Cfg cfg{doc, errs};
    std::string out_dir = out_flag;
    if (out_dir.empty()) {
        if (doc.contains("out") && doc["out"].is_string())
            out_dir = doc["out"].get<std::string>();
        else
            errs.push_back("missing field: out (or pass --out)");
    }

    Reporter rep;
    rep.command = command;
    rep.plot = plot;
    rep.hash = config_hash(text);
    rep.inputs = doc;

    int (*handler)(Cfg&, Reporter&) = nullptr;
    for (const auto& [name, fn] : commands)
        if (name == command) handler = fn;

    int code = 2;
    try {
        rep.out_dir = out_dir;
        // handlers validate first and return 2 (writing nothing) when the
        // violation list is nonempty, so every schema problem gets reported
        code = handler(cfg, rep);
    } catch (const std::exception& e) {
        rep.add(std::string("error: ") + e.what(), nan_v, nan_v, false);
        rep.finish(std::string("error: ") + e.what());
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (!errs.empty() || code == 2) {
        for (const std::string& msg : errs) std::cerr << "config error: " << msg << "\n";
        return 2;
    }
    return code;
}
