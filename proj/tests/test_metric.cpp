#include <doctest.h>

#include <cmath>
#include <vector>

#include "soliton/continuation.hpp"
#include "soliton/errors.hpp"
#include "soliton/metric.hpp"

using namespace soliton;

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

GlobalProfile solved(int n, double lambda) {
    const SolitonParams p = derive_params({n, lambda, 1.0, 0.0});
    const double eps = n == 2 ? 0.005 : 0.02;
    PicardOptions opt;
    opt.allow_large_eps = true;
    const LocalSolution local = solve_local(p, RadialGrid::geometric(eps, eps * 1e-8, 2048), opt);
    return extend_global(local, 100.0, 1e-10, 1e-12);
}

// h = c0 r^-alpha sampled exactly, with q = -alpha constant.
GlobalProfile blowup_probe(int n, double c0) {
    const SolitonParams p = derive_params({n, 0.0, c0, 0.0});
    std::vector<double> r, h, hr, qs;
    for (double x = 1e-10; x <= 1.0 * (1 + 1e-12); x *= 1.2) {
        r.push_back(x);
        h.push_back(c0 * std::pow(x, -p.alpha));
        hr.push_back(-p.alpha * c0 * std::pow(x, -p.alpha - 1));
        qs.push_back(0.0);
    }
    return GlobalProfile::from_samples(p, r, h, hr, qs);
}

MetricProfile flat(int N) {
    MetricProfile mp;
    for (int i = 0; i < N; ++i) {
        const double t = 0.1 + 0.05 * i;
        mp.t.push_back(t);
        mp.a.push_back(t);
        mp.a_t.push_back(1.0);
        mp.a_tt.push_back(0.0);
    }
    return mp;
}

}  // namespace

TEST_CASE("pure blow-up profile reproduces the closed-form warping function") {
    for (int n : {2, 5}) {
        const double c0 = 1.7;
        const GlobalProfile g = blowup_probe(n, c0);
        const MetricProfile mp = reconstruct_a(g, log_spaced(1e-4, 0.9, 60));
        const double rn = std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < mp.size(); ++i) {
            const double t_exact = std::pow(mp.a[i], rn) / (rn * std::sqrt(c0));
            CHECK(mp.t[i] == doctest::Approx(t_exact).epsilon(1e-10));
        }
        CHECK(check_a_asymptote(mp, g.params) <= 1e-10);
    }
}

TEST_CASE("a(t) near the tip for a solved n = 4 profile") {
    const GlobalProfile g = solved(4, 0.0);
    const MetricProfile mp = reconstruct_a(g, log_spaced(std::sqrt(g.r_min()), 0.1, 100));
    // sqrt(n c0) = 2
    CHECK(std::abs(mp.a.front() / std::sqrt(2.0 * mp.t.front()) - 1.0) < 1e-6);
}

TEST_CASE("t increases and a_t^2 = h(a^2)") {
    const GlobalProfile g = solved(3, 1.0);
    const ProfileInterpolant ip(g);
    const MetricProfile mp = reconstruct_a(g, log_spaced(1e-4, 5.0, 300));
    for (std::size_t i = 1; i < mp.size(); ++i) CHECK(mp.t[i] > mp.t[i - 1]);
    for (std::size_t i = 0; i < mp.size(); i += 13)
        CHECK(mp.a_t[i] * mp.a_t[i] == doctest::Approx(ip.h(mp.a[i] * mp.a[i])).epsilon(1e-13));
    CHECK_THROWS_AS(reconstruct_a(g, {20.0}), RangeError);
}

TEST_CASE("metric asymptote on solved profiles") {
    for (int n : {2, 9}) {
        const GlobalProfile g = solved(n, 0.0);
        const MetricProfile mp = reconstruct_a(g, log_spaced(std::sqrt(g.r_min()), 1.0, 200));
        CHECK(check_a_asymptote(mp, g.params) <= 0.01);
    }
}

TEST_CASE("flat probe") {
    MetricProfile mp = flat(20);
    reconstruct_f(mp, 0.0, 3);
    for (std::size_t i = 0; i < mp.size(); ++i) {
        CHECK(mp.f_t[i] == 0.0);
        CHECK(mp.f_tt[i] == 0.0);
    }
    const SolitonResidual r = soliton_residual(mp, 0.0, 3);
    CHECK(max_abs(r.res_tt) == 0.0);
    CHECK(max_abs(r.res_sphere) == 0.0);
    CHECK(max_abs(a_eqn_residual(mp, 0.0, 3)) == 0.0);
}

TEST_CASE("soliton equation closes on solved profiles") {
    for (auto [n, lam] : {std::pair{3, 0.0}, std::pair{2, 1.0}}) {
        const GlobalProfile g = solved(n, lam);
        std::vector<double> tt, ae;
        double scale = 0.0;
        for (std::size_t N : {201u, 401u}) {
            MetricProfile mp = reconstruct_a(g, log_spaced(0.05, 5.0, N));
            reconstruct_f(mp, lam, n);
            const SolitonResidual r = soliton_residual(mp, lam, n);
            CHECK(max_abs(r.res_sphere) <= 1e-12);
            tt.push_back(max_abs(r.res_tt));
            ae.push_back(max_abs(a_eqn_residual(mp, lam, n)));
            for (std::size_t i = 0; i < mp.size(); ++i) scale = std::max(scale, std::abs(n * mp.a_tt[i] / mp.a[i]));
        }
        INFO("n=" << n << " lambda=" << lam);
        // relative to the size of the terms, which grow like a^-2 towards the tip
        CHECK(tt[1] <= 1e-3 * scale);
        CHECK(tt[0] / tt[1] >= 3.5);
        CHECK(ae[0] / ae[1] >= 3.5);
    }
}

TEST_CASE("corrupted curvature is detected by the a equation") {
    const GlobalProfile g = solved(3, 0.0);
    MetricProfile mp = reconstruct_a(g, log_spaced(0.05, 5.0, 1601));
    const double clean = max_abs(a_eqn_residual(mp, 0.0, 3));
    for (double& x : mp.a_tt) x *= 1.01;
    CHECK(max_abs(a_eqn_residual(mp, 0.0, 3)) > 50 * clean);
}

TEST_CASE("preconditions") {
    MetricProfile mp = flat(4);
    CHECK_THROWS_AS(a_eqn_residual(mp, 0.0, 3), RangeError);
    CHECK_THROWS_AS(soliton_residual(mp, 0.0, 3), RangeError);
    mp.a_t[2] = 0.0;
    CHECK_THROWS_AS(reconstruct_f(mp, 0.0, 3), SolverError);
    CHECK_THROWS_AS(check_a_asymptote(flat(20), derive_params({3, 0.0, 1.0, 0.0})), RangeError);
    CHECK_THROWS_AS(log_spaced(0.0, 1.0, 5), RangeError);
}

TEST_CASE("finite differences are exact for quadratics") {
    std::vector<double> x{0.0, 0.3, 0.5, 1.1, 1.2, 2.0}, y, dy;
    for (double v : x) {
        y.push_back(3 * v * v - v + 2);
        dy.push_back(6 * v - 1);
    }
    const auto d = fd_derivative(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(d[i] == doctest::Approx(dy[i]).epsilon(1e-12));
}
