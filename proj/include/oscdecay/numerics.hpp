#ifndef OSCDECAY_NUMERICS_HPP
#define OSCDECAY_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oscdecay {

using complex = std::complex<double>;

/// Result of a quadrature: value, absolute error estimate, evaluation count.
struct QuadResult {
    complex value{};
    double err_est = 0.0;
    std::size_t evals = 0;
};

/// Slope/intercept/residual of a least-squares fit of log y against log t.
struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

/// Uniform rectangular grid with physical spacing.
///
/// Row-major storage convention: the last axis varies fastest.  The dual
/// (frequency) grid has spacing 2*pi/(h_j*N_j) per axis.
struct Grid {
    std::vector<double> origin;
    std::vector<double> spacing;
    std::vector<std::size_t> shape;

    Grid() = default;
    Grid(std::vector<double> org, std::vector<double> spc, std::vector<std::size_t> shp);

    std::size_t dims() const { return shape.size(); }
    std::size_t size() const;
    double cell_volume() const;

    /// Physical coordinates of the point with the given flat row-major index.
    void point(std::size_t flat, std::span<double> out) const;

    /// Frequency grid dual to this one (same shape, centered at -pi/h).
    Grid dual() const;
};

/// Complex samples of a function on a Grid, row-major.
struct SampledField {
    Grid grid;
    std::vector<complex> values;

    SampledField() = default;
    SampledField(Grid g, std::vector<complex> v);

    static SampledField zeros(const Grid& g);
    /// Sample a callable f(x) on the grid.
    static SampledField sample(const Grid& g, const std::function<complex(std::span<const double>)>& f);
};

enum class FftDirection { forward, inverse };

/// Adaptive Gauss-Kronrod quadrature of a complex integrand on [a, b].
/// Absolute-error target; the estimate comes from the nested-rule difference.
QuadResult adaptive_quad(const std::function<complex(double)>& f, double a, double b, double tol,
                         std::size_t max_intervals = 200000);

/// Truncation certificate for a semi-infinite integrand: |g(u)| <= bound(u)
/// for u >= 0, and tail(U) >= integral of bound over [U, inf).
struct DecayCertificate {
    std::function<double(double)> bound;
    std::function<double(double)> tail;
};

/// Integral of g over [0, inf).  The truncation point U is chosen from the
/// certificate so the discarded tail is below tol/2, then adaptive_quad
/// finishes the job on [0, U].
QuadResult ray_quad(const std::function<complex(double)>& g, const DecayCertificate& cert, double tol);

/// Polynomial extrapolation of samples (eps_m, v_m) to eps = 0.
/// Requires >= 3 samples with eps decreasing geometrically by factor 2.
/// Returns the extrapolation-diagonal entry with the smallest successive
/// correction together with that correction's magnitude.
std::pair<complex, double> richardson_limit(std::span<const double> eps, std::span<const complex> vals);

/// Unitary n-dimensional FFT in the symmetric (2pi)^{-n/2} convention.
/// Output lives on the dual grid with frequencies in increasing order.
/// Requires power-of-two points per dimension.
SampledField fft_nd(const SampledField& field, FftDirection direction);

/// Semi-discrete Fourier transform at an arbitrary (off-grid) frequency:
/// (2pi)^{-n/2} * sum_x field(x) e^{-i x.freq} * prod h_j.
complex dft_at(const SampledField& field, std::span<const double> freq);

/// Discrete L^p norm, quadrature-aware: (sum |f|^p prod h_j)^{1/p};
/// p = infinity gives max |f|.
double lp_norm(const SampledField& field, double p);

/// Least-squares power-law fit of log y against log t.
DecayFit loglog_fit(std::span<const double> t, std::span<const double> y);

}  // namespace oscdecay

#endif
