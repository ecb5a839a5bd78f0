#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace soliton {

/// User inputs of the profile equation
///   2 r^2 h h'' = (n-1) h (h-1) + r h' (r h' - lambda r - (n-1)),
/// with the singular boundary behaviour r^alpha h(r) -> c0 at the origin.
struct SolitonInputs {
    int n = 2;           ///< sphere dimension, S^n
    double lambda = 0.0; ///< soliton constant (0 steady, > 0 expanding, < 0 shrinking)
    double c0 = 1.0;     ///< blow-up coefficient
    double c1 = 0.0;     ///< free integration constant selecting the solution

    friend bool operator==(const SolitonInputs&, const SolitonInputs&) = default;
};

enum class Branch { LowN, CriticalN, HighN };

std::string_view to_string(Branch b);
Branch branch_from_string(std::string_view s);
Branch branch_for(int n);

/// Inputs plus every constant the local existence argument derives from them.
///
/// alpha = sqrt(n) - 1 is the only blow-up rate compatible with the equation.
/// c3..c7 and eps1..eps3 bound the contraction map; any eps <= eps3 is
/// guaranteed to give a contraction with factor 1/2 on the ball D_eps.
struct SolitonParams {
    SolitonInputs inputs;
    double alpha = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c5 = 0.0;
    double c6 = 0.0;
    double c7 = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps3 = 0.0;
    Branch branch = Branch::LowN;

    int n() const { return inputs.n; }
    double lambda() const { return inputs.lambda; }
    double c0() const { return inputs.c0; }
    double c1() const { return inputs.c1; }

    friend bool operator==(const SolitonParams&, const SolitonParams&) = default;
};

/// Any c4 > 1 with |log r| <= c4 r^{-1/2} on (0, 1/2] works; sup sqrt(r)|log r| = 2/e.
inline constexpr double kLogBoundConstant = 1.1;

/// Throws ConfigError for n < 2 or c0 <= 0 (or non-finite reals).
void validate(const SolitonInputs& in);

/// Global continuation additionally needs lambda >= 0.
void validate_global(const SolitonInputs& in);

SolitonParams derive_params(const SolitonInputs& in);

void to_json(nlohmann::json& j, const SolitonParams& p);
void from_json(const nlohmann::json& j, SolitonParams& p);

}  // namespace soliton
