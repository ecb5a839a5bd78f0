// One PASS/FAIL line per acceptance criterion, evaluated over its parameter tuples.
// Exits non-zero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "soliton/checks.hpp"
#include "soliton/errors.hpp"

using namespace soliton;

namespace {

using CheckFn = CheckRecord (*)(const SolitonParams&, const CheckSettings&);

struct Criterion {
    int id;
    const char* title;
    CheckFn fn;
    std::vector<int> ns;
    std::vector<double> lambdas;
    bool higher_is_better;
};

std::string tuple_label(int n, double lambda) {
    return "n=" + std::to_string(n) + ",lambda=" + (lambda == 0.0 ? "0" : "1");
}

bool evaluate(const Criterion& c, const CheckSettings& cfg) {
    bool pass = true;
    double worst = c.higher_is_better ? INFINITY : -INFINITY;
    std::string worst_at, failures;
    for (int n : c.ns) {
        for (double lambda : c.lambdas) {
            CheckRecord rec;
            try {
                rec = c.fn(derive_params({n, lambda, 1.0, 0.0}), cfg);
            } catch (const std::exception& e) {
                rec = {"", NAN, 0.0, false, e.what()};
            }
            const std::string label = tuple_label(n, lambda);
            if (!rec.pass) {
                pass = false;
                failures += " " + label + "(" + std::to_string(rec.value) + ")";
            }
            const bool worse = std::isnan(rec.value) ||
                               (c.higher_is_better ? rec.value < worst : rec.value > worst);
            if (worse && !std::isnan(worst)) {
                worst = rec.value;
                worst_at = label;
            }
        }
    }
    std::printf("%s criterion %-2d %-18s worst %.6g at %s%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                worst, worst_at.c_str(), failures.empty() ? "" : "; failing:", failures.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main() {
    const std::vector<int> all_n{2, 3, 4, 5, 9};
    const std::vector<double> both{0.0, 1.0};
    const std::vector<Criterion> criteria = {
        {1, "contraction", check_contraction, all_n, both, false},
        {2, "wrr_order", check_wrr_order, {2, 4, 9}, both, true},
        {3, "boundary_data", check_boundary_data, all_n, both, false},
        {4, "blowup_rate", check_blowup_rate, all_n, both, false},
        {5, "remainder_decay", check_remainders, all_n, both, true},
        {6, "global_existence", check_global_existence, all_n, both, true},
        {7, "identity_residual", check_identity, all_n, both, false},
        {8, "a_asymptote", check_metric_asymptote, {2, 4, 9}, {0.0}, false},
        {9, "soliton_closure", check_closure, {2, 3}, both, true},
        {10, "uniqueness", check_uniqueness, all_n, both, false},
    };

    const CheckSettings cfg;
    int failed = 0;
    for (const Criterion& c : criteria)
        if (!evaluate(c, cfg)) ++failed;
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
