#include "oscdecay/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace oscdecay {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double kron_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kron_weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
// Gauss weights apply to Kronrod nodes 1,3,5,...,13.
constexpr double gauss_weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct PanelResult {
    complex value;
    double err;
};

PanelResult gk15(const std::function<complex(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    complex kron{}, gauss{};
    for (int i = 0; i < 15; ++i) {
        const double x = mid + half * kron_nodes[i];
        const complex fx = f(x);
        if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag()))
            throw std::runtime_error("adaptive_quad: integrand not finite at x = " + std::to_string(x));
        kron += kron_weights[i] * fx;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fx;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

struct Interval {
    double a, b, err;
    complex value;
    bool operator<(const Interval& o) const { return err < o.err; }
};

}  // namespace

QuadResult adaptive_quad(const std::function<complex(double)>& f, double a, double b, double tol,
                         std::size_t max_intervals) {
    if (!(a < b)) throw std::invalid_argument("adaptive_quad: requires a < b");
    if (!(tol > 0)) throw std::invalid_argument("adaptive_quad: requires tol > 0");

    std::priority_queue<Interval> queue;
    auto first = gk15(f, a, b);
    queue.push({a, b, first.err, first.value});
    std::size_t evals = 15;
    double total_err = first.err;
    bool hit_max = false;

    while (total_err > tol) {
        if (queue.size() >= max_intervals) {
            hit_max = true;
            break;
        }
        Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at machine resolution; keep its estimate.
            queue.push(worst);
            break;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        evals += 30;
        total_err += left.err + right.err - worst.err;
        queue.push({worst.a, mid, left.err, left.value});
        queue.push({mid, worst.b, right.err, right.value});
    }

    // Recompute the error sum to avoid drift from incremental updates.
    double err = 0;
    complex val{};
    while (!queue.empty()) {
        err += queue.top().err;
        val += queue.top().value;
        queue.pop();
    }
    if (hit_max && err > 100.0 * tol)
        throw std::runtime_error("adaptive_quad: no convergence after max subdivisions, estimate error " +
                                 std::to_string(err));
    return {val, err, evals};
}

QuadResult ray_quad(const std::function<complex(double)>& g, const DecayCertificate& cert, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("ray_quad: requires tol > 0");
    double U = 1.0;
    bool found = false;
    for (int i = 0; i < 80; ++i) {
        if (cert.tail(U) <= 0.5 * tol) {
            found = true;
            break;
        }
        U *= 1.5;
    }
    if (!found) throw std::runtime_error("ray_quad: decay bound never reaches the tolerance");
    // Geometric panels [0,1], [1,2], [2,4], ...: the integrand may decay much
    // faster than the certificate, and a single rule over [0, U] can land all
    // of its nodes past that faster scale and silently miss the mass near 0.
    std::vector<double> edges{0.0};
    for (double e = std::min(1.0, U); e < U; e *= 2.0) edges.push_back(e);
    edges.push_back(U);
    const double panel_tol = 0.5 * tol / static_cast<double>(edges.size() - 1);
    QuadResult r{};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        QuadResult p = adaptive_quad(g, edges[i], edges[i + 1], panel_tol);
        r.value += p.value;
        r.err_est += p.err_est;
        r.evals += p.evals;
    }
    r.err_est += 0.5 * tol;
    return r;
}

std::pair<complex, double> richardson_limit(std::span<const double> eps, std::span<const complex> vals) {
    const std::size_t n = eps.size();
    if (n < 3 || vals.size() != n)
        throw std::invalid_argument("richardson_limit: need >= 3 matching samples");
    for (std::size_t m = 0; m + 1 < n; ++m) {
        if (!(eps[m] > 0) || !(eps[m + 1] > 0))
            throw std::invalid_argument("richardson_limit: eps must be positive");
        const double ratio = eps[m + 1] / eps[m];
        if (std::abs(ratio - 0.5) > 1e-9)
            throw std::invalid_argument("richardson_limit: eps sequence must halve at each step");
    }
    // Neville evaluation of the interpolating polynomial at eps = 0.  The
    // diagonal entries approach the limit until quadrature noise takes over,
    // so keep the entry whose successive correction was smallest.
    std::vector<complex> v(vals.begin(), vals.end());
    complex prev_diag = v[n - 1];
    complex best = prev_diag;
    double best_corr = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            v[i] = v[i] + (v[i] - v[i - 1]) * (eps[i] / (eps[i - j] - eps[i]));
        }
        const double corr = std::abs(v[n - 1] - prev_diag);
        prev_diag = v[n - 1];
        if (corr < best_corr) {
            best_corr = corr;
            best = v[n - 1];
        }
    }
    return {best, best_corr};
}

Grid::Grid(std::vector<double> org, std::vector<double> spc, std::vector<std::size_t> shp)
    : origin(std::move(org)), spacing(std::move(spc)), shape(std::move(shp)) {
    if (shape.empty() || origin.size() != shape.size() || spacing.size() != shape.size())
        throw std::invalid_argument("Grid: mismatched dimensions");
    for (std::size_t j = 0; j < shape.size(); ++j) {
        if (shape[j] < 2) throw std::invalid_argument("Grid: need >= 2 points per dimension");
        if (!(spacing[j] > 0)) throw std::invalid_argument("Grid: spacing must be positive");
    }
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (auto s : shape) {
        if (n > std::numeric_limits<std::size_t>::max() / s)
            throw std::invalid_argument("Grid: total point count overflows");
        n *= s;
    }
    return n;
}

double Grid::cell_volume() const {
    double v = 1;
    for (auto h : spacing) v *= h;
    return v;
}

void Grid::point(std::size_t flat, std::span<double> out) const {
    for (std::size_t j = shape.size(); j-- > 0;) {
        out[j] = origin[j] + spacing[j] * static_cast<double>(flat % shape[j]);
        flat /= shape[j];
    }
}

Grid Grid::dual() const {
    std::vector<double> dorg(dims()), dspc(dims());
    for (std::size_t j = 0; j < dims(); ++j) {
        dspc[j] = 2.0 * std::numbers::pi / (spacing[j] * static_cast<double>(shape[j]));
        dorg[j] = -dspc[j] * static_cast<double>(shape[j] / 2);
    }
    return Grid(dorg, dspc, shape);
}

SampledField::SampledField(Grid g, std::vector<complex> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("SampledField: value count does not match grid");
}

SampledField SampledField::zeros(const Grid& g) {
    return SampledField(g, std::vector<complex>(g.size()));
}

SampledField SampledField::sample(const Grid& g,
                                  const std::function<complex(std::span<const double>)>& f) {
    std::vector<complex> v(g.size());
    std::vector<double> x(g.dims());
    for (std::size_t i = 0; i < v.size(); ++i) {
        g.point(i, x);
        v[i] = f(x);
    }
    return SampledField(g, std::move(v));
}

namespace {

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT, sign = -1 forward, +1 inverse (unnormalized).
void fft_radix2(complex* data, std::size_t n, std::size_t stride, int sign, complex* scratch) {
    // Gather into contiguous scratch, transform, scatter back.
    for (std::size_t i = 0; i < n; ++i) scratch[i] = data[i * stride];
    // Bit reversal.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(scratch[i], scratch[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            complex w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                // Resync the recurrence periodically to stop roundoff growth on long lines.
                if ((j & 31u) == 0) w = complex(std::cos(ang * static_cast<double>(j)),
                                               std::sin(ang * static_cast<double>(j)));
                const complex u = scratch[i + j];
                const complex t = w * scratch[i + j + len / 2];
                scratch[i + j] = u + t;
                scratch[i + j + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) data[i * stride] = scratch[i];
}

}  // namespace

SampledField fft_nd(const SampledField& field, FftDirection direction) {
    const Grid& g = field.grid;
    const std::size_t nd = g.dims();
    for (auto s : g.shape)
        if (!is_pow2(s)) throw std::invalid_argument("fft_nd: points per dimension must be a power of two");

    // The dual of a centered grid is centered, so forward followed by inverse
    // reproduces the original grid exactly when the spatial grid is centered.
    const Grid out_grid = g.dual();

    std::vector<complex> data = field.values;
    const int sign = direction == FftDirection::forward ? -1 : +1;

    // Phase convention: grids are centered, so fold the origin offsets into
    // pre/post twiddles around the plain DFT, axis by axis.
    std::size_t total = g.size();
    std::vector<complex> scratch(*std::max_element(g.shape.begin(), g.shape.end()));

    for (std::size_t axis = 0; axis < nd; ++axis) {
        const std::size_t n = g.shape[axis];
        const double h = g.spacing[axis];
        const double x0 = g.origin[axis];
        const double dxi = out_grid.spacing[axis];
        const double xi0 = out_grid.origin[axis];

        std::size_t inner = 1;
        for (std::size_t j = axis + 1; j < nd; ++j) inner *= g.shape[j];
        const std::size_t outer = total / (n * inner);

        // Pre-twiddle e^{-sign... } : multiply sample j by e^{sign*i*xi0*(x0+j h)}? Work it out:
        // forward: F(xi_m) = C sum_j f_j e^{-i (x0 + j h)(xi0 + m dxi)}
        //  = C e^{-i x0 xi_m} sum_j [f_j e^{-i j h xi0}] e^{-i j m h dxi},  h*dxi = 2pi/n.
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t in = 0; in < inner; ++in) {
                complex* base = data.data() + (o * n * inner + in);
                for (std::size_t j = 0; j < n; ++j) {
                    const double ph = sign * xi0 * (static_cast<double>(j) * h);
                    base[j * inner] *= complex(std::cos(ph), std::sin(ph));
                }
                fft_radix2(base, n, inner, sign, scratch.data());
                for (std::size_t m = 0; m < n; ++m) {
                    const double xim = xi0 + dxi * static_cast<double>(m);
                    const double ph = sign * x0 * xim;
                    base[m * inner] *= complex(std::cos(ph), std::sin(ph));
                }
            }
    }

    // Unitary normalization: forward carries prod h_j/(2pi)^{n/2}; the inverse
    // carries prod dxi_j/(2pi)^{n/2} relative to its own (frequency) grid.
    double norm = field.grid.cell_volume() / std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(nd));
    for (auto& v : data) v *= norm;

    return SampledField(out_grid, std::move(data));
}

complex dft_at(const SampledField& field, std::span<const double> freq) {
    const Grid& g = field.grid;
    if (freq.size() != g.dims()) throw std::invalid_argument("dft_at: frequency dimension mismatch");
    const std::size_t nd = g.dims();

    // Separable phase tables per axis keep this O(total + sum shape).
    std::vector<std::vector<complex>> axis_phase(nd);
    for (std::size_t j = 0; j < nd; ++j) {
        axis_phase[j].resize(g.shape[j]);
        for (std::size_t m = 0; m < g.shape[j]; ++m) {
            const double x = g.origin[j] + g.spacing[j] * static_cast<double>(m);
            const double ph = -x * freq[j];
            axis_phase[j][m] = complex(std::cos(ph), std::sin(ph));
        }
    }
    complex sum{};
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        complex ph(1.0);
        for (std::size_t j = nd; j-- > 0;) {
            ph *= axis_phase[j][rem % g.shape[j]];
            rem /= g.shape[j];
        }
        sum += field.values[flat] * ph;
    }
    return sum * (g.cell_volume() / std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(nd)));
}

double lp_norm(const SampledField& field, double p) {
    if (std::isinf(p)) {
        double m = 0;
        for (const auto& v : field.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1)) throw std::invalid_argument("lp_norm: requires p >= 1 or p = inf");
    double sum = 0;
    if (p == 2.0) {
        for (const auto& v : field.values) sum += std::norm(v);
    } else {
        for (const auto& v : field.values) sum += std::pow(std::abs(v), p);
    }
    return std::pow(sum * field.grid.cell_volume(), 1.0 / p);
}

DecayFit loglog_fit(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n < 3 || y.size() != n) throw std::invalid_argument("loglog_fit: need >= 3 matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t[i] > 0)) throw std::invalid_argument("loglog_fit: t must be positive");
        if (!(y[i] > 0)) throw std::invalid_argument("loglog_fit: y must be positive");
        const double lx = std::log(t[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    const double det = dn * sxx - sx * sx;
    if (det == 0) throw std::invalid_argument("loglog_fit: t values must be distinct");
    DecayFit fit;
    fit.slope = (dn * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(std::log(y[i]) - (fit.slope * std::log(t[i]) + fit.intercept));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

}  // namespace oscdecay
