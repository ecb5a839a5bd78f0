#include <doctest.h>

#include <cmath>
#include <vector>

#include "soliton/errors.hpp"
#include "soliton/quadrature.hpp"

using namespace soliton;

namespace {

GridFunction sample(const GridPtr& g, double (*f)(double)) {
    std::vector<double> v(g->size());
    for (std::size_t k = 0; k < g->size(); ++k) v[k] = f(g->r(k));
    return GridFunction(g, std::move(v));
}

// E_m(x) = int_0^1 e^{xt} t^m dt by its power series, in long double.
long double moment_series(int m, long double x) {
    long double term = 1.0L, sum = 0.0L;
    for (int j = 0; j < 200; ++j) {
        sum += term / (j + m + 1);
        term *= x / (j + 1);
    }
    return sum;
}

}  // namespace

TEST_CASE("zero integrand integrates to zero") {
    const GridPtr g = RadialGrid::geometric(0.1, 1e-9, 256);
    const GridFunction zero(g, 0.0);
    for (std::size_t k : {std::size_t{0}, std::size_t{100}, g->intervals()}) {
        CHECK(integral_to_right(zero, k, -1.3) == 0.0);
        CHECK(integral_from_zero(zero, k, -0.5, 0.0) == 0.0);
    }
}

TEST_CASE("pure powers to the right are exact") {
    const double alpha = std::sqrt(2.0) - 1.0;
    const double eps = 0.01;
    const GridPtr g = RadialGrid::geometric(eps, eps * 1e-8, 512);
    const GridFunction one(g, 1.0);
    for (std::size_t k = 0; k <= g->intervals(); k += 37) {
        const double r = g->r(k);
        const double exact = (std::pow(eps, alpha - 1) - std::pow(r, alpha - 1)) / (alpha - 1);
        CHECK(integral_to_right(one, k, alpha - 2) == doctest::Approx(exact).epsilon(1e-13));
        CHECK(integral_to_right(one, k, -1.0) == doctest::Approx(std::log(eps / r)).epsilon(1e-13));
    }
    CHECK(integral_to_right(one, g->intervals(), alpha - 2) == 0.0);
}

TEST_CASE("pure powers from zero include the analytic tail") {
    for (double alpha : {std::sqrt(2.0) - 1.0, 1.0, 2.0}) {
        const GridPtr g = RadialGrid::geometric(0.02, 0.02 * 1e-8, 256);
        const GridFunction one(g, 1.0);
        for (std::size_t k = 0; k <= g->intervals(); k += 64) {
            const double r = g->r(k);
            CHECK(integral_from_zero(one, k, alpha - 1, 0.0) ==
                  doctest::Approx(std::pow(r, alpha) / alpha).epsilon(1e-13));
        }
    }
}

TEST_CASE("square root weight from zero") {
    auto f = [](double r) { return std::sqrt(r); };
    const double exact = std::pow(0.25, 1.5) / 1.5;
    const GridPtr g1 = RadialGrid::geometric(0.25, 0.25 * 1e-8, 1024);
    const GridPtr g2 = RadialGrid::geometric(0.25, 0.25 * 1e-8, 2048);
    const double i1 = integral_from_zero(sample(g1, f), g1->intervals(), 0.0, 0.5);
    const double i2 = integral_from_zero(sample(g2, f), g2->intervals(), 0.0, 0.5);
    CHECK(std::abs(i2 - exact) <= 1e-10);
    CHECK(std::abs(i1 - i2) <= 1e-10);
}

TEST_CASE("refinement gains at least a factor 8 per doubling") {
    // int rho^{-1/2} / (1 + rho) = 2 atan(sqrt(rho))
    auto f = [](double r) { return 1.0 / (1.0 + r); };
    const double eps = 0.5;
    double prev = 0.0;
    for (std::size_t K : {64u, 128u, 256u, 512u}) {
        const GridPtr g = RadialGrid::geometric(eps, eps * 1e-4, K);
        const double exact = 2.0 * (std::atan(std::sqrt(eps)) - std::atan(std::sqrt(g->r_min())));
        const double err = std::abs(integral_to_right(sample(g, f), 0, -0.5) - exact);
        if (prev > 0.0 && prev > 1e-13) {
            INFO("K=" << K << " err=" << err << " prev=" << prev);
            CHECK(prev / err >= 8.0);
        }
        prev = err;
    }
}

TEST_CASE("exponential moments match their series on both sides of the switch") {
    for (int m = 0; m <= 2; ++m)
        for (double x : {-5.0, -2.0001, -1.9999, -0.3, 0.0, 1e-8, 0.3, 1.9999, 2.0001, 5.0}) {
            INFO("m=" << m << " x=" << x);
            CHECK(detail::exp_moment(m, x) ==
                  doctest::Approx(static_cast<double>(moment_series(m, x))).epsilon(1e-14));
        }
    // closed form at a large argument
    const long double x = 30.0L;
    const long double e2 = (std::exp(x) * (x * x - 2 * x + 2) - 2) / (x * x * x);
    CHECK(detail::exp_moment(2, 30.0) == doctest::Approx(static_cast<double>(e2)).epsilon(1e-14));
}

TEST_CASE("to_right and from_zero are consistent") {
    auto f = [](double r) { return std::cos(r); };
    const GridPtr g = RadialGrid::geometric(0.3, 0.3 * 1e-8, 512);
    const PowerQuadrature q(g, 0.2);
    const GridFunction fv = sample(g, f);
    const auto right = q.to_right(fv.span());
    const auto left = q.from_zero(fv.span());
    const double total = left.back();
    for (std::size_t k = 0; k < g->size(); k += 51)
        CHECK(left[k] + right[k] == doctest::Approx(total).epsilon(1e-13));
}

TEST_CASE("non-finite integrands and divergent tails are rejected") {
    const GridPtr g = RadialGrid::geometric(0.1, 1e-9, 128);
    GridFunction bad(g, 1.0);
    bad[17] = NAN;
    CHECK_THROWS_AS(integral_to_right(bad, 0, 0.0), QuadratureError);
    const GridFunction one(g, 1.0);
    CHECK_THROWS_AS(integral_from_zero(one, 5, -1.0, 0.0), DivergentTailError);
    CHECK_THROWS_AS(integral_from_zero(one, 5, -0.5, -0.6), DivergentTailError);
}

TEST_CASE("grid invariants") {
    const GridPtr g = RadialGrid::geometric(0.05, 0.05 * 1e-8, 2048);
    CHECK(g->eps() == 0.05);
    CHECK(g->r_min() == doctest::Approx(0.05e-8).epsilon(1e-15));
    CHECK(g->ratio() > 0.5);
    CHECK(g->ratio() < 1.0);
    for (std::size_t k = 1; k < g->size(); ++k) CHECK(g->r(k) > g->r(k - 1));
    CHECK_THROWS_AS(RadialGrid::geometric(0.05, 0.05 * 1e-8, 63), ConfigError);
}
