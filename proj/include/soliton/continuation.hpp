#pragma once

#include <cstddef>
#include <vector>

#include "soliton/picard.hpp"
#include "soliton/profile.hpp"

namespace soliton {

struct ContinuationOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_floor = 1e-12;  ///< positivity guard on h
    double max_step = 0.02;  ///< cap on |ds|, keeps the dense Hermite output accurate
    double initial_step = 1e-3;
    std::size_t max_steps = 2'000'000;
};

/// Accepted steps of an integration of the (u, q) system in s, start included.
struct Trajectory {
    std::vector<double> s, u, q, q_s;
};

/// Dormand-Prince 5(4) with embedded error control, from s0 to s1 (either direction).
///
/// The error in u is measured against rtol + atol, i.e. as a relative error in
/// h; the error in q against atol + rtol |q|. Throws PositivityLossError when h
/// drops below opt.h_floor and StiffnessError on step-size underflow.
Trajectory integrate_profile_ode(const SolitonParams& p, double s0, double u0, double q0, double s1,
                                 const ContinuationOptions& opt);

/// Rejects R_max >= -(n-1)/lambda when lambda < 0.
void check_barrier(const SolitonParams& p, double R_max);

/// Continue the Picard solution from r = eps to R_max; the result holds the
/// local nodes followed by the accepted integrator steps.
GlobalProfile extend_global(const LocalSolution& local, double R_max, double rtol, double atol);
GlobalProfile extend_global(const LocalSolution& local, double R_max, const ContinuationOptions& opt);

/// Max relative difference between the Picard h and a backward integration
/// from (h(eps), h_r(eps)) over the local nodes in (eps/2, eps].
double overlap_error(const LocalSolution& local, const ContinuationOptions& opt);

/// |LHS - RHS| of the identity
///   h_r(r1) = (n-1)/r1 + lambda + sqrt(h(r1)/h(r2)) (h_r(r2) - (n-1)/r2 - lambda)
///             + (n-1) sqrt(h(r1))/2 * integral_{r2}^{r1} (h+1)/(rho^2 sqrt h) d rho.
double integral_identity_residual(const GlobalProfile& profile, double r2, double r1);

struct WindowBounds {
    double minh = 0.0;
    double maxh = 0.0;
    double minhr = 0.0;
    double maxhr = 0.0;
};

/// Extrema of h and h_r over [L/2, L] (profile nodes plus the two endpoints).
WindowBounds window_bounds(const GlobalProfile& profile, double L);

}  // namespace soliton
