#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "soliton/constants.hpp"
#include "soliton/picard.hpp"

namespace soliton {

enum class ProfileSource { LocalOnly, Extended, Synthetic };

std::string_view to_string(ProfileSource s);

/// Right-hand side of the profile equation in log variables.
///
/// With s = log r, u = log h and q = r h_r / h the equation reads
///   u_s = q,
///   q_s = q - q^2/2 + (n-1)(1 - e^{-u})/2 - q (lambda e^s + n - 1) e^{-u} / 2.
/// The h(h-1) and h_r terms cancel to O(r^alpha) near the origin; in these
/// variables that cancellation never happens in floating point.
double q_slope(const SolitonParams& p, double s, double u, double q);

/// Samples of h on increasing nodes over (r_min, R_max].
///
/// Besides (r, h, h_r) the log variables (s, u, q) and dq/ds are kept at full
/// precision; interpolation works on them. w_dev = r^alpha h - c0 is carried
/// for the first local_count nodes when the profile comes from the Picard
/// solver, because r^alpha h - c0 cannot be recovered from h near the origin.
struct GlobalProfile {
    SolitonParams params;
    std::vector<double> r, h, h_r;
    std::vector<double> s, u, q, q_s;
    std::vector<double> w_dev;
    std::size_t local_count = 0;
    ProfileSource source = ProfileSource::Synthetic;
    double rtol = 0.0;
    double atol = 0.0;
    double R_max = 0.0;

    std::size_t size() const { return r.size(); }
    bool empty() const { return r.empty(); }
    double r_min() const { return r.front(); }
    double r_max() const { return r.back(); }

    /// Build from plain samples. q_s defaults to the ODE slope; probes that do
    /// not solve the equation should pass their own.
    static GlobalProfile from_samples(const SolitonParams& p, std::vector<double> r,
                                      std::vector<double> h, std::vector<double> h_r,
                                      std::optional<std::vector<double>> q_s = std::nullopt);
};

/// h = r^{-alpha} w and h_r = r^{-alpha} v - alpha r^{-alpha-1} w on the Picard grid.
/// Throws SolverError if some h is not positive.
GlobalProfile to_h(const LocalSolution& sol);

/// Piecewise cubic Hermite interpolant of (u, q) in s.
class ProfileInterpolant {
public:
    explicit ProfileInterpolant(const GlobalProfile& profile);

    double r_min() const;
    double r_max() const;
    double u(double r) const { return eval(std::log(r)).first; }
    double q(double r) const { return eval(std::log(r)).second; }
    double h(double r) const;
    double h_r(double r) const;

    /// (u, q) at s = log r.
    std::pair<double, double> eval(double s) const;

    /// integral over [s_a, s_b] of f(s, u(s), q(s)) ds, 5-point Gauss-Legendre
    /// on every sub-interval between profile nodes.
    template <class F>
    double integrate(double s_a, double s_b, F&& f) const;

    const GlobalProfile& profile() const { return *profile_; }

private:
    std::size_t interval(double s) const;
    const GlobalProfile* profile_;
};

namespace detail {
inline constexpr double kGaussNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
inline constexpr double kGaussWeights[5] = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};
}  // namespace detail

template <class F>
double ProfileInterpolant::integrate(double s_a, double s_b, F&& f) const {
    if (s_b == s_a) return 0.0;
    const double sign = s_b > s_a ? 1.0 : -1.0;
    const double lo = std::min(s_a, s_b), hi = std::max(s_a, s_b);
    const auto& S = profile_->s;
    double total = 0.0;
    std::size_t i = interval(lo);
    double a = lo;
    while (a < hi) {
        const double b = (i + 1 < S.size()) ? std::min(hi, S[i + 1]) : hi;
        if (b > a) {
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int j = 0; j < 5; ++j) {
                const double s = mid + half * detail::kGaussNodes[j];
                const auto [uu, qq] = eval(s);
                total += half * detail::kGaussWeights[j] * f(s, uu, qq);
            }
        }
        a = b;
        ++i;
        if (i + 1 >= S.size()) break;
    }
    return sign * total;
}

}  // namespace soliton
