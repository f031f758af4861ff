#ifndef OSCDECAY_SPECIAL_FUNCTIONS_HPP
#define OSCDECAY_SPECIAL_FUNCTIONS_HPP

#include "oscdecay/numerics.hpp"

namespace oscdecay {

/// Gamma function for complex argument, Lanczos approximation with reflection
/// for Re w < 1/2.  Throws at the poles (nonpositive integers).
complex gamma_complex(complex w);

/// Airy function Ai on [-20, 10].
///
/// Maclaurin series on [-4, 4], a steepest-descent integral representation on
/// (4, 10], and Taylor-series marching of the Airy ODE leftward from -4 on
/// [-20, -4).  Absolute accuracy ~1e-12 across the range.
double airy_ai(double x);

/// The boundary-value power (x + i0)^w: e^{w ln x} for x > 0 and
/// e^{w(ln|x| + i pi)} for x < 0 (upper-branch limit, arg = +pi).
complex branch_power(double x, complex w);

/// Closed form of the regularized Gaussian oscillatory integral
/// lim_{eps->0} int exp(-eps xi^2 + i x xi + i t xi^2) dxi
///   = sqrt(pi/(-i t)) e^{-i x^2/(4t)}   (principal square root).
complex gaussian_closed_form(double x, double t);

}  // namespace oscdecay

#endif
