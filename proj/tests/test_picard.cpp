#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "soliton/errors.hpp"
#include "soliton/picard.hpp"
#include "soliton/profile.hpp"

using namespace soliton;

namespace {

GridPtr grid_for(const SolitonParams& p, std::size_t K = 2048) {
    return RadialGrid::geometric(p.eps3, p.eps3 * 1e-8, K);
}

double distance(const IterateState& a, const IterateState& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.w_dev.size(); ++k) {
        d = std::max(d, std::abs(a.w_dev[k] - b.w_dev[k]));
        d = std::max(d, std::abs(a.vs[k] - b.vs[k]));
    }
    return d;
}

// A smooth random state at distance <= c0/20 from the center.
IterateState random_state(const SolitonParams& p, const GridPtr& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), beta(0.2, 2.0), freq(0.1, 2.0);
    const double a = u(rng), b = u(rng), be = beta(rng), om = freq(rng);
    IterateState s = center_state(p, g);
    for (std::size_t k = 0; k < g->size(); ++k) {
        const double x = g->r(k) / g->eps();
        s.w_dev[k] = p.c0() / 20.0 * a * std::pow(x, be);
        s.vs[k] += p.c0() / 20.0 * b * std::cos(om * g->s(k));
    }
    update_distance(s, p);
    return s;
}

}  // namespace

TEST_CASE("the center has distance zero") {
    const SolitonParams p = derive_params({2, 0.0, 1.0, 0.0});
    IterateState c = center_state(p, grid_for(p));
    CHECK(update_distance(c, p) == 0.0);
    CHECK(c.norm_distance_to_center <= p.c0() / 10.0);
}

TEST_CASE("one step from the center stays in the ball") {
    for (int n : {2, 3, 4, 5, 9}) {
        const SolitonParams p = derive_params({n, 0.0, 1.0, 0.0});
        const GridPtr g = grid_for(p);
        IterateState img;
        CHECK_NOTHROW(img = phi_step(center_state(p, g), p));
        CHECK(img.norm_distance_to_center <= p.c0() / 10.0);
    }
}

TEST_CASE("n = 4, lambda = 0, c1 = 0: the center is a fixed point") {
    // alpha lambda / 2 = 0 and c2 = 0 leave nothing to force the iterate
    const SolitonParams p = derive_params({4, 0.0, 1.0, 0.0});
    const GridPtr g = grid_for(p);
    const IterateState img = phi_step(center_state(p, g), p);
    for (std::size_t k = 0; k < g->size(); ++k) {
        CHECK(img.w_dev[k] == 0.0);
        CHECK(img.vs[k] == 0.0);
    }
}

TEST_CASE("image of the center for n = 9, lambda = 1 matches the closed form") {
    const SolitonParams p = derive_params({9, 1.0, 1.0, 0.0});
    const double a = p.alpha, c0 = p.c0(), c2 = p.c2, lam = p.lambda(), n = p.n();
    // r_min = eps 2^-64 with K = 2048 puts eps/2 on node K - 32.
    const GridPtr g = RadialGrid::geometric(p.eps3, p.eps3 * std::ldexp(1.0, -64), 2048);
    const std::size_t k = g->intervals() - 32;
    const double r = g->r(k);
    REQUIRE(r == doctest::Approx(p.eps3 / 2).epsilon(1e-13));

    // w = c0, w_r = -c2 r^{alpha-1} substituted into the from-zero integral equation.
    const double I1 = -c2 / c0 * std::pow(r, a - 1) / (a - 1);  // int rho^-1 w_r / w
    const double I2 = -c2 / c0 * std::pow(r, a) / a;            // int w_r / w
    const double I3 = c2 * c2 / c0 * std::pow(r, a - 1) / (a - 1);  // int rho^-alpha w_r^2 / w
    const double v_oracle = -c2 * std::pow(r, a - 1) + p.c1() * std::pow(r, a) +
                            0.5 * a * lam * std::pow(r, a) * std::log(r) +
                            std::pow(r, a) * (-(n - 1) / 2 * I1 - lam / 2 * I2 + 0.5 * I3);
    const double w_oracle = -c2 * std::pow(r, a) / a;

    const IterateState img = phi_step(center_state(p, g), p);
    const double v = std::pow(r, a - 1) * img.vs[k];
    CHECK(v == doctest::Approx(v_oracle).epsilon(1e-12));
    CHECK(img.w_dev[k] == doctest::Approx(w_oracle).epsilon(1e-12));
}

TEST_CASE("the map halves distances between random states in the ball") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4, 5, 9})
        for (double lam : {0.0, 1.0}) {
            const SolitonParams p = derive_params({n, lam, 1.0, 0.5});
            const GridPtr g = grid_for(p, 512);
            const PicardMap map(p, g);
            for (int trial = 0; trial < 5; ++trial) {
                const IterateState s1 = random_state(p, g, rng);
                const IterateState s2 = random_state(p, g, rng);
                REQUIRE(s1.norm_distance_to_center <= p.c0() / 10.0);
                const double before = distance(s1, s2);
                const double after = distance(map.apply(s1), map.apply(s2));
                INFO("n=" << n << " lambda=" << lam << " ratio=" << after / before);
                CHECK(after <= 0.5 * before);
            }
        }
}

TEST_CASE("solve_local contracts and refuses large eps without an override") {
    const SolitonParams p = derive_params({3, 1.0, 1.0, 0.0});
    const LocalSolution sol = solve_local(p, grid_for(p));
    CHECK(sol.final_update_norm <= 1e-12);
    for (double c : sol.contraction_estimates) CHECK(c <= 0.5);
    CHECK(fixed_point_residual(sol) <= 1e-12);

    const GridPtr big = RadialGrid::geometric(0.02, 0.02 * 1e-8, 2048);
    CHECK_THROWS_AS(solve_local(p, big), ConfigError);
    PicardOptions opt;
    opt.allow_large_eps = true;
    CHECK_NOTHROW(solve_local(p, big, opt));
    CHECK_THROWS_AS(solve_local(p, RadialGrid::geometric(0.6, 0.6e-8, 2048), opt), ConfigError);
}

TEST_CASE("escaping the ball is reported") {
    // n = 2 at eps = 0.05 is far beyond the contraction radius
    const SolitonParams p = derive_params({2, 0.0, 1.0, 0.0});
    PicardOptions opt;
    opt.allow_large_eps = true;
    CHECK_THROWS_AS(solve_local(p, RadialGrid::geometric(0.05, 0.05e-8, 2048), opt), BallEscapeError);
}

TEST_CASE("w(eps) for n = 2 agrees with a doubled-resolution solve") {
    const SolitonParams p = derive_params({2, 0.0, 1.0, 0.0});
    const LocalSolution a = solve_local(p, grid_for(p, 2048));
    PicardOptions fine;
    fine.tol = 1e-12 / 2;
    const LocalSolution b = solve_local(p, grid_for(p, 4096), fine);
    CHECK(a.w(a.size() - 1) == doctest::Approx(b.w(b.size() - 1)).epsilon(1e-9));
}

TEST_CASE("serial and parallel solves are identical") {
    const SolitonParams p = derive_params({5, 1.0, 1.0, 0.3});
    PicardOptions ser;
    ser.exec = kernels::Exec::Serial;
    const LocalSolution a = solve_local(p, grid_for(p), ser);
    const LocalSolution b = solve_local(p, grid_for(p));
    CHECK(a.w_dev == b.w_dev);
    CHECK(a.vs == b.vs);
}

TEST_CASE("residual of the second-order equation") {
    SUBCASE("converged n = 3 solution") {
        // Second-order differences: relative level O(h^2), quartering per doubling of K.
        const SolitonParams p = derive_params({3, 0.0, 1.0, 0.0});
        double prev = 0.0;
        for (std::size_t K : {2048u, 4096u}) {
            const LocalSolution sol = solve_local(p, grid_for(p, K));
            const GridFunction res = residual_wrr(sol);
            // w_rr by differences, the scale the residual is measured against
            const double d = sol.grid->log_step();
            double wrr_max = 0.0, res_max = 0.0;
            for (std::size_t k = 2; k + 2 < sol.size(); ++k) {
                const double ws = (sol.w_dev[k + 1] - sol.w_dev[k - 1]) / (2 * d);
                const double wss = (sol.w_dev[k + 1] - 2 * sol.w_dev[k] + sol.w_dev[k - 1]) / (d * d);
                wrr_max = std::max(wrr_max, std::abs((wss - ws) / (sol.r(k) * sol.r(k))));
                res_max = std::max(res_max, std::abs(res[k]));
            }
            CHECK(res_max <= 1e-4 * wrr_max);
            if (prev > 0.0) CHECK(prev / res_max >= 3.5);
            prev = res_max;
        }
    }
    SUBCASE("perturbed solution is detected") {
        const SolitonParams p = derive_params({3, 0.0, 1.0, 0.0});
        const LocalSolution sol = solve_local(p, grid_for(p));
        std::vector<double> w = sol.w_dev;
        for (double& x : w) x *= 1.01;
        const GridFunction res = residual_wrr(p, sol.grid, w, sol.vs);
        const GridFunction ref = residual_wrr(sol);
        double gap = 0.0;
        for (std::size_t k = 0; k < res.size(); ++k) gap = std::max(gap, std::abs(res[k] - ref[k]));
        double ref_max = 0.0;
        for (double x : ref.values) ref_max = std::max(ref_max, std::abs(x));
        CHECK(gap > 100 * ref_max);
    }
    SUBCASE("power-law probe leaves only the forcing term") {
        for (int n : {2, 3, 5, 9}) {
            const SolitonParams p = derive_params({n, 0.0, 1.0, 0.0});
            const GridPtr g = grid_for(p, 256);
            const std::vector<double> zero(g->size(), 0.0);
            const GridFunction res = residual_wrr(p, g, zero, zero);
            for (std::size_t k = 2; k + 2 < g->size(); ++k)
                CHECK(res[k] == doctest::Approx(-p.c2 * std::pow(g->r(k), p.alpha - 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("conversion to h") {
    SUBCASE("w = c0 gives the pure blow-up profile") {
        const SolitonParams p = derive_params({3, 0.0, 2.0, 0.0});
        LocalSolution sol;
        sol.params = p;
        sol.grid = grid_for(p, 256);
        sol.w_dev.assign(sol.grid->size(), 0.0);
        sol.vs.assign(sol.grid->size(), 0.0);
        const GlobalProfile g = to_h(sol);
        for (std::size_t k = 0; k < g.size(); k += 17)
            CHECK(g.h[k] == doctest::Approx(2.0 * std::pow(g.r[k], -p.alpha)).epsilon(1e-13));
        CHECK(g.source == ProfileSource::LocalOnly);
    }
    SUBCASE("r^alpha h tends to c0 for n = 2") {
        const SolitonParams p = derive_params({2, 0.0, 1.0, 0.0});
        const LocalSolution sol = solve_local(p, grid_for(p));
        const GlobalProfile g = to_h(sol);
        const double w0 = std::pow(g.r[0], p.alpha) * g.h[0];
        const double w1 = std::pow(g.r[1000], p.alpha) * g.h[1000];
        CHECK(std::abs(w0 - 1.0) < 1e-3);
        CHECK(std::abs(w0 - 1.0) < std::abs(w1 - 1.0));
    }
    SUBCASE("h_r matches centered differences of h for n = 5") {
        const SolitonParams p = derive_params({5, 0.0, 1.0, 0.0});
        const LocalSolution sol = solve_local(p, grid_for(p));
        const std::size_t k = sol.grid->locate(sol.grid->eps() / 2);
        const double d = sol.grid->log_step();
        const double fd = (sol.h(k + 1) - sol.h(k - 1)) / (2 * d) / sol.r(k);
        CHECK(std::abs(fd - sol.h_r(k)) <= d * d * p.alpha * p.alpha * std::abs(sol.h_r(k)));
    }
}
