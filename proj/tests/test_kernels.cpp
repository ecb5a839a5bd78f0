#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "soliton/kernels.hpp"

using namespace soliton;
using namespace soliton::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    std::mt19937_64 rng(20240607);
    for (std::size_t K : {64u, 1000u, 4096u}) {
        const std::size_t N = K + 1;
        const auto f = random_vector(N, rng, -3.0, 3.0);
        const auto scale = random_vector(K / 2, rng, 0.1, 2.0);
        PanelWeights w;
        w.first = {0.11, 0.42, -0.03};
        w.second = {-0.02, 0.39, 0.17};

        std::vector<double> a(K), b(K);
        serial::interval_contributions(scale, w, f, a);
        omp::interval_contributions(scale, w, f, b);
        CHECK(a == b);

        const auto wd = random_vector(N, rng, -0.05, 0.05);
        const auto vs = random_vector(N, rng, -1.0, 1.0);
        std::vector<double> r1(N), s1(N), r2(N), s2(N);
        serial::picard_integrands(wd, vs, 1.3, r1, s1);
        omp::picard_integrands(wd, vs, 1.3, r2, s2);
        CHECK(r1 == r2);
        CHECK(s1 == s2);

        auto r = random_vector(N, rng, 1e-9, 0.02);
        std::sort(r.begin(), r.end());
        std::vector<double> s(N);
        for (std::size_t i = 0; i < N; ++i) s[i] = std::log(r[i]);
        const AssemblyCoefficients k{-0.29, 0.5, 0.2, 0.5, -0.5, -0.5};
        const auto A = random_vector(N, rng, -1, 1), B = random_vector(N, rng, -1, 1),
                   C = random_vector(N, rng, -1, 1);
        std::vector<double> o1(N), o2(N);
        serial::assemble_scaled_v(r, s, k, A, B, C, o1);
        omp::assemble_scaled_v(r, s, k, A, B, C, o2);
        CHECK(o1 == o2);

        CHECK(serial::max_abs_diff(A, B) == omp::max_abs_diff(A, B));
        CHECK(serial::max_abs_offset(C, 0.3) == omp::max_abs_offset(C, 0.3));
    }
}

TEST_CASE("kernel results by hand") {
    const std::vector<double> w_dev{0.0, 0.5}, vs{2.0, -3.0};
    std::vector<double> ratio(2), square(2);
    for (Exec ex : {Exec::Serial, Exec::Parallel}) {
        picard_integrands(ex, w_dev, vs, 1.5, ratio, square);
        CHECK(ratio[0] == doctest::Approx(2.0 / 1.5));
        CHECK(square[1] == doctest::Approx(9.0 / 2.0));
        CHECK(max_abs_diff(ex, w_dev, vs) == 3.5);
        CHECK(max_abs_offset(ex, vs, 1.0) == 3.0);
    }

    // f = 1 with first = (1, 0, 0), second = (0, 0, 1): each interval picks one node value
    const std::vector<double> f{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> scale{1.0, 10.0};
    PanelWeights w;
    w.first = {1.0, 0.0, 0.0};
    w.second = {0.0, 0.0, 1.0};
    std::vector<double> out(4);
    interval_contributions(Exec::Parallel, scale, w, f, out);
    CHECK(out == std::vector<double>{1.0, 3.0, 30.0, 50.0});
}
