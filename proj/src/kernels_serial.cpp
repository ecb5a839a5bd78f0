#include <algorithm>
#include <cmath>

#include "soliton/kernels.hpp"

namespace soliton::kernels::serial {

void interval_contributions(std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out) {
    const std::size_t panels = scale.size();
    for (std::size_t m = 0; m < panels; ++m) {
        const double f0 = f[2 * m];
        const double f1 = f[2 * m + 1];
        const double f2 = f[2 * m + 2];
        out[2 * m] = scale[m] * (wts.first[0] * f0 + wts.first[1] * f1 + wts.first[2] * f2);
        out[2 * m + 1] = scale[m] * (wts.second[0] * f0 + wts.second[1] * f1 + wts.second[2] * f2);
    }
}

void picard_integrands(std::span<const double> w_dev, std::span<const double> vs, double c0,
                       std::span<double> ratio, std::span<double> square) {
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double q = vs[k] / (c0 + w_dev[k]);
        ratio[k] = q;
        square[k] = q * vs[k];
    }
}

void assemble_scaled_v(std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double bracket = k.ka * a[i] + k.kb * b[i] + k.kc * c[i];
        out[i] = -k.c2 + r[i] * (k.c1 + k.log_coeff * s[i] + bracket);
    }
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

double max_abs_offset(std::span<const double> x, double offset) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v + offset));
    return m;
}

}  // namespace soliton::kernels::serial
