#pragma once

#include <vector>

#include "soliton/constants.hpp"
#include "soliton/profile.hpp"

namespace soliton {

/// Samples of the warped product g = dt^2 + a(t)^2 g_{S^n} and its potential f.
struct MetricProfile {
    std::vector<double> t, a, a_t, a_tt;
    std::vector<double> f_t, f_tt, f;

    std::size_t size() const { return t.size(); }
};

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// t(a) = integral_0^a d rho / sqrt(h(rho^2)); a_t = sqrt(h(a^2)), a_tt = a h_r(a^2).
///
/// Below a0 = sqrt(r_min) the integrand is replaced by its leading behaviour
/// c0^{-1/2} rho^alpha, so the tail contributes c0^{-1/2} a0^{alpha+1}/(alpha+1).
MetricProfile reconstruct_a(const GlobalProfile& profile, const std::vector<double>& a_samples);

/// max |a(t) / (sqrt(n c0) t)^{1/sqrt(n)} - 1| over the smallest decade of t.
/// Throws RangeError unless the samples span two decades of t.
double check_a_asymptote(const MetricProfile& mp, const SolitonParams& p);

/// Fills f_t from the sphere component of the soliton equation, f_tt from
/// the dt^2 component and f by the trapezoid rule with f = 0 at the first sample.
void reconstruct_f(MetricProfile& mp, double lambda, int n);

struct SolitonResidual {
    std::vector<double> res_tt;      ///< -n a_tt/a - (d/dt f_t - lambda), d/dt by finite differences
    std::vector<double> res_sphere;  ///< [n-1 - a a_tt - (n-1) a_t^2] - [a a_t f_t - lambda a^2]
};

SolitonResidual soliton_residual(const MetricProfile& mp, double lambda, int n);

/// Residual of the third-order equation for a, with a_ttt by finite differences of a_tt:
///   a^2 a_t a_ttt - [a a_t^2 a_tt + a^2 a_tt^2 - (n-1) a a_tt - lambda a^3 a_tt
///                    - (n-1) a_t^2 + (n-1) a_t^4].
std::vector<double> a_eqn_residual(const MetricProfile& mp, double lambda, int n);

/// Second-order derivative estimate dy/dx on nonuniform nodes (one-sided at the ends).
std::vector<double> fd_derivative(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace soliton
