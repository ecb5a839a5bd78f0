#pragma once

#include <utility>
#include <vector>

#include "soliton/constants.hpp"
#include "soliton/profile.hpp"

namespace soliton {

/// Coefficients of the truncated small-r expansion of r^alpha h.
///
///   HighN:     c0 + k_alpha r^alpha + k_lin r^{alpha+1} + k_log r^{alpha+1} log r + k_2a r^{2 alpha}
///   LowN:      c0 + k_alpha r^alpha + k_2a r^{2 alpha}
///   CriticalN: c0 + k_log r^2 log r
/// and of r^{alpha+1} h_r with the h_r-specific linear coefficient hr_lin.
struct ExpansionTerms {
    Branch branch = Branch::LowN;
    double alpha = 0.0;
    double c0 = 0.0;
    double k_alpha = 0.0;  ///< -c2/alpha
    double k_lin = 0.0;    ///< c1/(alpha+1) - alpha lambda / (2 (alpha+1)^2)
    double hr_lin = 0.0;   ///< c1/(alpha+1) + alpha^2 lambda / (2 (alpha+1)^2)
    double k_log = 0.0;    ///< alpha lambda/(2 alpha + 2); lambda/4 when n = 4
    double k_2a = 0.0;     ///< (c2^2 + (n-1) c2) / (4 c0 alpha (alpha-1))
};

ExpansionTerms expansion_terms(const SolitonParams& p);

enum class ExpansionOrder { H, Hr };

/// Truncated expansion of h (or h_r) at r, without the o(1) remainder.
double eval_expansion(const SolitonParams& p, double r, ExpansionOrder order);
/// Same with explicit terms; throws ConfigError if terms.branch does not match n.
double eval_expansion(const ExpansionTerms& t, int n, double r, ExpansionOrder order);

/// Truncated r^alpha h minus c0 (the part the remainder is measured against).
double expansion_deviation(const ExpansionTerms& t, double r);

/// Operational delta0 = min(eps, 0.1).
double delta0(double eps);

struct RemainderSample {
    double r = 0.0;
    double deviation = 0.0;         ///< r^alpha h - c0
    double remainder = 0.0;         ///< r^alpha h - truncated expansion
    double scaled_remainder = 0.0;  ///< remainder / r^{2 alpha}, or / (r^2 |log r|) when n = 4
};

/// Remainder samples at every profile node with r <= r_cap.
///
/// Uses the stored w_dev where available so that r^alpha h - c0 keeps full
/// precision near the origin.
std::vector<RemainderSample> remainder_profile(const GlobalProfile& profile, const SolitonParams& p,
                                               double r_cap);
std::vector<RemainderSample> remainder_profile(const GlobalProfile& profile, const SolitonParams& p);

struct DecadeBand {
    double r_lo = 0.0;
    double r_hi = 0.0;
    double max_abs_scaled = 0.0;
    double max_abs_remainder = 0.0;
    double max_abs_deviation = 0.0;
    bool resolved = false;
};

struct DecayCheck {
    std::vector<DecadeBand> bands;  ///< increasing r
    std::vector<double> drops;      ///< per-decade drop factors toward the origin over the deepest resolved bands
    bool exact = false;             ///< no band resolved: the truncated expansion is exact to roundoff
    bool pass = false;
    double worst_drop = 0.0;
};

/// Groups samples into decades of r and checks that max |scaled remainder|
/// falls by at least min_drop per decade toward the origin over the deepest
/// `decades` + 1 contiguous resolved bands. A band is resolved when its max
/// |remainder| exceeds rel_noise times its max |r^alpha h - c0|; below that the
/// remainder is roundoff in the leading behaviour.
DecayCheck check_remainder_decay(const std::vector<RemainderSample>& samples, double rel_noise,
                                 int decades = 2, double min_drop = 2.0);

struct RateFit {
    double alpha_hat = 0.0;
    double std_error = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    std::vector<std::pair<double, double>> q_tail;  ///< (r, q) at the fitted nodes
    std::size_t nodes = 0;
};

/// Least-squares slope of log h against log r over the profile nodes in the window.
/// Throws RangeError with fewer than 8 nodes.
RateFit fit_blowup_rate(const GlobalProfile& profile, std::pair<double, double> window);

struct QDiagnostics {
    std::vector<double> r;
    std::vector<double> q;
    std::vector<double> residual;  ///< q_r + (-1/r + lambda/(2h) + (n-1)/(2 r h)) q + (q^2 - (n-1)(h-1)/h)/(2r)
    std::vector<double> F;         ///< integrating factor
    double representation_residual = 0.0;  ///< max absolute misfit of the integral representation of q
    std::pair<double, double> representation_window{0.0, 0.0};
};

/// Finite-difference residual of the q equation on the profile nodes (ends
/// use one-sided second-order stencils), the integrating factor
///   F(r) = exp(lambda/2 int_0^r d rho / h + (n-1)/2 int_0^r d rho / (rho h))
/// and the residual of q = r F^{-1} (F(r_b) q(r_b)/r_b + int_r^{r_b} F/(2 rho^2) (q^2 - (n-1)(h-1)/h))
/// on [r_a, r_b]. Below the smallest node h is taken as c0 r^{-alpha}.
QDiagnostics q_ode_residual(const GlobalProfile& profile);
QDiagnostics q_ode_residual(const GlobalProfile& profile, std::pair<double, double> window);

}  // namespace soliton
