#include <algorithm>
#include <cmath>
#include <cstdint>

#include "soliton/kernels.hpp"

namespace soliton::kernels {

namespace omp {

void interval_contributions(std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out) {
    const auto panels = static_cast<std::int64_t>(scale.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t m = 0; m < panels; ++m) {
        const auto i = static_cast<std::size_t>(m);
        const double f0 = f[2 * i];
        const double f1 = f[2 * i + 1];
        const double f2 = f[2 * i + 2];
        out[2 * i] = scale[i] * (wts.first[0] * f0 + wts.first[1] * f1 + wts.first[2] * f2);
        out[2 * i + 1] = scale[i] * (wts.second[0] * f0 + wts.second[1] * f1 + wts.second[2] * f2);
    }
}

void picard_integrands(std::span<const double> w_dev, std::span<const double> vs, double c0,
                       std::span<double> ratio, std::span<double> square) {
    const auto count = static_cast<std::int64_t>(vs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double q = vs[i] / (c0 + w_dev[i]);
        ratio[i] = q;
        square[i] = q * vs[i];
    }
}

void assemble_scaled_v(std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out) {
    const auto count = static_cast<std::int64_t>(r.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto i = static_cast<std::size_t>(j);
        const double bracket = k.ka * a[i] + k.kb * b[i] + k.kc * c[i];
        out[i] = -k.c2 + r[i] * (k.c1 + k.log_coeff * s[i] + bracket);
    }
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    const auto count = static_cast<std::int64_t>(x.size());
    double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto i = static_cast<std::size_t>(j);
        m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

double max_abs_offset(std::span<const double> x, double offset) {
    const auto count = static_cast<std::int64_t>(x.size());
    double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::int64_t j = 0; j < count; ++j) m = std::max(m, std::abs(x[static_cast<std::size_t>(j)] + offset));
    return m;
}

}  // namespace omp

void interval_contributions(Exec ex, std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out) {
    if (ex == Exec::Parallel) omp::interval_contributions(scale, wts, f, out);
    else serial::interval_contributions(scale, wts, f, out);
}

void picard_integrands(Exec ex, std::span<const double> w_dev, std::span<const double> vs,
                       double c0, std::span<double> ratio, std::span<double> square) {
    if (ex == Exec::Parallel) omp::picard_integrands(w_dev, vs, c0, ratio, square);
    else serial::picard_integrands(w_dev, vs, c0, ratio, square);
}

void assemble_scaled_v(Exec ex, std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out) {
    if (ex == Exec::Parallel) omp::assemble_scaled_v(r, s, k, a, b, c, out);
    else serial::assemble_scaled_v(r, s, k, a, b, c, out);
}

double max_abs_diff(Exec ex, std::span<const double> x, std::span<const double> y) {
    return ex == Exec::Parallel ? omp::max_abs_diff(x, y) : serial::max_abs_diff(x, y);
}

double max_abs_offset(Exec ex, std::span<const double> x, double offset) {
    return ex == Exec::Parallel ? omp::max_abs_offset(x, offset) : serial::max_abs_offset(x, offset);
}

}  // namespace soliton::kernels
