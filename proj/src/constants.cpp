#include "soliton/constants.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/errors.hpp"

namespace soliton {

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::LowN: return "LowN";
        case Branch::CriticalN: return "CriticalN";
        case Branch::HighN: return "HighN";
    }
    return "LowN";
}

Branch branch_from_string(std::string_view s) {
    if (s == "LowN") return Branch::LowN;
    if (s == "CriticalN") return Branch::CriticalN;
    if (s == "HighN") return Branch::HighN;
    throw ConfigError("unknown branch tag '" + std::string(s) + "'");
}

Branch branch_for(int n) {
    if (n < 4) return Branch::LowN;
    if (n == 4) return Branch::CriticalN;
    return Branch::HighN;
}

void validate(const SolitonInputs& in) {
    if (in.n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(in.n));
    if (!std::isfinite(in.c0) || !(in.c0 > 0.0))
        throw ConfigError("c0 must be a positive finite number");
    if (!std::isfinite(in.lambda)) throw ConfigError("lambda must be finite");
    if (!std::isfinite(in.c1)) throw ConfigError("c1 must be finite");
}

void validate_global(const SolitonInputs& in) {
    validate(in);
    if (in.lambda < 0.0)
        throw ConfigError("global continuation requires lambda >= 0");
}

SolitonParams derive_params(const SolitonInputs& in) {
    validate(in);

    SolitonParams p;
    p.inputs = in;
    p.branch = branch_for(in.n);

    const double n = in.n;
    const double c0 = in.c0;
    const double abs_lambda = std::abs(in.lambda);

    // n = 4 must give alpha = 1 and c2 = 0 exactly.
    p.alpha = (in.n == 4) ? 1.0 : std::sqrt(n) - 1.0;
    const double alpha = p.alpha;
    p.c2 = (in.n == 4) ? 0.0 : (n - 1.0) * (alpha - 1.0) / 2.0;
    p.c3 = std::abs(p.c2) + c0 / 10.0;
    p.c4 = kLogBoundConstant;

    const double c3 = p.c3;
    const double c4 = p.c4;
    const bool critical = p.branch == Branch::CriticalN;
    const double gap = std::abs(alpha - 1.0);

    p.c5 = critical ? 4.0 * n * c4 * (c3 + c3 * c3) / c0 + c3 * abs_lambda / (c0 * alpha)
                    : 4.0 * n * (c3 + c3 * c3) / (c0 * gap) + c3 * abs_lambda / (c0 * alpha);
    p.c6 = 20.0 / (9.0 * c0) + 200.0 * c3 / (81.0 * c0 * c0);
    p.c7 = critical ? p.c6 * (n * c4 * (1.0 + c3) + abs_lambda / alpha)
                    : p.c6 * (n * (1.0 + c3) / gap + abs_lambda / alpha);

    const double inv_alpha = 1.0 / alpha;
    p.eps1 = std::min(0.5, std::pow(c0 * alpha / (10.0 * std::abs(p.c2) + c0), inv_alpha));

    const double lam_term = alpha * abs_lambda * c4 + p.c5;
    p.eps2 = std::min({p.eps1, c0 / (30.0 * (std::abs(in.c1) + 1.0)),
                       std::pow(c0 / (30.0 * p.c5), inv_alpha),
                       c0 * c0 / (900.0 * lam_term * lam_term)});

    const double six_c7 = 6.0 * p.c7;
    p.eps3 = std::min({p.eps2, std::pow(alpha / 6.0, inv_alpha), std::pow(six_c7, -inv_alpha),
                       1.0 / (six_c7 * six_c7)});
    return p;
}

void to_json(nlohmann::json& j, const SolitonParams& p) {
    j = nlohmann::json{{"n", p.inputs.n},   {"lambda", p.inputs.lambda},
                       {"c0", p.inputs.c0}, {"c1", p.inputs.c1},
                       {"alpha", p.alpha},  {"c2", p.c2},
                       {"c3", p.c3},        {"c4", p.c4},
                       {"c5", p.c5},        {"c6", p.c6},
                       {"c7", p.c7},        {"eps1", p.eps1},
                       {"eps2", p.eps2},    {"eps3", p.eps3},
                       {"branch", std::string(to_string(p.branch))}};
}

void from_json(const nlohmann::json& j, SolitonParams& p) {
    try {
        j.at("n").get_to(p.inputs.n);
        j.at("lambda").get_to(p.inputs.lambda);
        j.at("c0").get_to(p.inputs.c0);
        j.at("c1").get_to(p.inputs.c1);
        j.at("alpha").get_to(p.alpha);
        j.at("c2").get_to(p.c2);
        j.at("c3").get_to(p.c3);
        j.at("c4").get_to(p.c4);
        j.at("c5").get_to(p.c5);
        j.at("c6").get_to(p.c6);
        j.at("c7").get_to(p.c7);
        j.at("eps1").get_to(p.eps1);
        j.at("eps2").get_to(p.eps2);
        j.at("eps3").get_to(p.eps3);
        p.branch = branch_from_string(j.at("branch").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed SolitonParams JSON: ") + e.what());
    }
    validate(p.inputs);
}

}  // namespace soliton
