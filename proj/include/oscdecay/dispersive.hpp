#ifndef OSCDECAY_DISPERSIVE_HPP
#define OSCDECAY_DISPERSIVE_HPP

#include "oscdecay/analysis.hpp"
#include "oscdecay/oscillatory.hpp"

namespace oscdecay {

/// D_t u - a(D) u = f with u(0) = initial, on a large torus standing in for
/// whole space.  Forcing is a list of snapshots at uniform time step
/// forcing_dt, all on the initial data's grid; empty means f = 0.
struct EvolutionProblem {
    PhaseSpec phase;
    SampledField initial;
    std::vector<SampledField> forcing;
    double forcing_dt = 0.0;
    double horizon = 0.0;

    EvolutionProblem(PhaseSpec ph, SampledField init, std::vector<SampledField> f,
                     double f_dt, double T);
};

struct NormSeries {
    std::vector<double> times;
    std::vector<double> values;
    double norm_p = 0.0;  // infinity() for the sup norm
};

/// Fraction of squared L^2 mass within the outer 5% of the domain per side.
double boundary_mass_fraction(const SampledField& field);

/// e^{it a(D)}: forward transform, multiply e^{it a(xi)}, inverse transform.
/// Exactly unitary on the grid.
SampledField propagate(const SampledField& field, const PhaseSpec& phase, double t);

/// u(t) = e^{ita(D)} phi + i int_0^t e^{i(t-s)a(D)} f(s) ds, the time
/// integral by composite Simpson over the forcing snapshots (3/8 correction
/// for odd interval counts, trapezoid for a single interval).
SampledField duhamel_solve(const EvolutionProblem& problem, double t);

/// Free-space T_s: (2pi)^{n/2} times the discrete convolution of f_s with
/// kernel_nd(phase, ., tau), evaluated axis by axis through the kernel's
/// product structure.  Matches the unnormalized spectral definition
/// int e^{ix.xi} e^{i tau a(xi)} f-hat(xi) dxi.
SampledField ts_apply_freespace(const SampledField& f_s, const PhaseSpec& phase, double tau);

/// Sup-norm decay of the free evolution over t_grid, with the boundary-mass
/// guard (< 1e-6) policing torus wrap-around.
std::pair<NormSeries, DecayFit> decay_scan(const EvolutionProblem& problem,
                                           std::span<const double> t_grid);

/// ||T_s f||_{p'} / (|tau|^{-2(p-1)/p} ||f||_p) for p in (1, 2).
double interpolated_bound_check(const SampledField& f_s, const PhaseSpec& phase, double tau,
                                double p);

/// Space-time L^{p'} norm of u on [0, horizon] (trapezoid in t; graded time
/// grid when there is no forcing) divided by ||phi||_2 + ||f||_{L^p_{s,x}}.
/// Zero data gives 0.
double strichartz_quotient(const EvolutionProblem& problem, double p);

}  // namespace oscdecay

#endif
