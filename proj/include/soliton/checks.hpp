#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soliton/constants.hpp"
#include "soliton/continuation.hpp"
#include "soliton/io.hpp"
#include "soliton/picard.hpp"

namespace soliton {

/// Numerical settings shared by every check.
struct CheckSettings {
    std::size_t K = 2048;
    double r_min_factor = 1e-8;
    double picard_tol = 1e-12;
    double rtol = 1e-10;
    double atol = 1e-12;
    double R_max = 100.0;
    /// Replaces both eps3 (local checks) and the continuation radius (global checks).
    std::optional<double> eps_override;
    kernels::Exec exec = kernels::Exec::Parallel;
};

/// Pinned tolerances of the verification suite.
namespace tolerance {
inline constexpr double kContraction = 0.5;
inline constexpr int kContractionWindow = 5;
inline constexpr double kWrrOrder = 3.5;
inline constexpr double kBoundaryV = 1e-3;
inline constexpr double kRate = 1e-3;
inline constexpr double kRateCritical = 5e-3;
inline constexpr std::pair<double, double> kRateWindow{1e-6, 1e-3};
inline constexpr double kRemainderDrop = 2.0;
/// Remainders below this fraction of r^alpha h - c0 are roundoff (measured ~2e-13).
inline constexpr double kRemainderNoise = 1e4 * 2.220446049250313e-16;
inline constexpr double kIdentity = 1e-6;
inline constexpr double kIdentityRoundoff = 1e-13;
inline constexpr double kAsymptote = 0.01;
inline constexpr double kClosureOrder = 3.5;
inline constexpr double kUniqueness = 1e-9;
}  // namespace tolerance

/// Continuation radius for the global checks.
///
/// eps3 is tiny (1e-6..1e-9) and starting the outward integration there
/// leaves the free constant c1 badly conditioned: a relative error of 1e-13
/// in r^{1-alpha} v at eps3 grows to O(1) changes of h at r = 100 for large n.
/// The largest of 0.02, 0.01, 0.005, 0.002, 0.001 whose Picard iteration stays
/// in the ball is used instead; eps3 is the fallback.
double practical_eps(const SolitonParams& p, const CheckSettings& cfg);

/// Picard solve on the geometric grid (eps, eps * r_min_factor, K).
LocalSolution solve_at(const SolitonParams& p, double eps, std::size_t K, double tol,
                       const CheckSettings& cfg);

/// eps of the local checks: the override, else eps3.
double local_radius(const SolitonParams& p, const CheckSettings& cfg);
/// eps the outward continuation starts from: the override, else practical_eps.
double continuation_radius(const SolitonParams& p, const CheckSettings& cfg);

/// Picard solve at continuation_radius continued to R_max.
GlobalProfile continued_profile(const SolitonParams& p, const CheckSettings& cfg);
GlobalProfile continued_profile(const SolitonParams& p, const CheckSettings& cfg, double R_max,
                                const ContinuationOptions& opt);

/// Each check returns one record per call. Names are stable and unique.
CheckRecord check_contraction(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_wrr_order(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_boundary_data(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_blowup_rate(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_remainders(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_global_existence(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_identity(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_metric_asymptote(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_closure(const SolitonParams& p, const CheckSettings& cfg);
CheckRecord check_uniqueness(const SolitonParams& p, const CheckSettings& cfg);

/// Names of all checks in suite order.
const std::vector<std::string>& check_names();

/// Runs every check for one tuple. A check whose solver throws is recorded as
/// failed with the message in `detail`; ConfigError propagates.
VerificationReport verify_all(const SolitonParams& p, const CheckSettings& cfg);

nlohmann::json settings_json(const CheckSettings& cfg);

}  // namespace soliton
