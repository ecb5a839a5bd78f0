#include "soliton/quadrature.hpp"

#include <cmath>
#include <string>

#include "soliton/errors.hpp"

namespace soliton {

namespace detail {

double exp_moment(int m, double x) {
    if (std::abs(x) <= 2.0) {
        // sum_k x^k / (k! (k + m + 1))
        double term = 1.0;
        double sum = 1.0 / (m + 1);
        for (int k = 1; k < 60; ++k) {
            term *= x / k;
            const double add = term / (k + m + 1);
            sum += add;
            if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    double e = std::expm1(x) / x;  // E_0
    const double ex = std::exp(x);
    for (int j = 1; j <= m; ++j) e = (ex - j * e) / x;
    return e;
}

kernels::PanelWeights product_simpson_weights(double h, double beta) {
    // Lagrange basis on u = 0, h, 2h integrated against e^{beta u}.
    const double E0 = exp_moment(0, 2.0 * h * beta);
    const double E1 = exp_moment(1, 2.0 * h * beta);
    const double E2 = exp_moment(2, 2.0 * h * beta);
    const double full[3] = {h * (4.0 * E2 - 6.0 * E1 + 2.0 * E0), 8.0 * h * (E1 - E2),
                            h * (4.0 * E2 - 2.0 * E1)};

    const double e0 = exp_moment(0, h * beta);
    const double e1 = exp_moment(1, h * beta);
    const double e2 = exp_moment(2, h * beta);

    kernels::PanelWeights w;
    w.first = {0.5 * h * (e2 - 3.0 * e1 + 2.0 * e0), h * (2.0 * e1 - e2), 0.5 * h * (e2 - e1)};
    for (int j = 0; j < 3; ++j) w.second[j] = full[j] - w.first[j];
    return w;
}

}  // namespace detail

namespace {

void require_finite(std::span<const double> g) {
    for (std::size_t k = 0; k < g.size(); ++k)
        if (!std::isfinite(g[k])) throw QuadratureError(k, g[k]);
}

}  // namespace

PowerQuadrature::PowerQuadrature(GridPtr grid, double p, kernels::Exec exec)
    : grid_(std::move(grid)), p_(p), exec_(exec) {
    if (!grid_) throw RangeError("PowerQuadrature without grid");
    if (!(p > -2.0)) throw ConfigError("power weight exponent must exceed -2");
    const double beta = p + 1.0;
    weights_ = detail::product_simpson_weights(grid_->log_step(), beta);
    const std::size_t panels = grid_->intervals() / 2;
    panel_scale_.resize(panels);
    for (std::size_t m = 0; m < panels; ++m) panel_scale_[m] = std::exp(beta * grid_->s(2 * m));
}

void PowerQuadrature::intervals(std::span<const double> g, std::span<double> out) const {
    if (g.size() != grid_->size() || out.size() != grid_->intervals())
        throw RangeError("quadrature input does not match grid");
    require_finite(g);
    kernels::interval_contributions(exec_, panel_scale_, weights_, g, out);
}

std::vector<double> PowerQuadrature::to_right(std::span<const double> g) const {
    const std::size_t K = grid_->intervals();
    std::vector<double> pieces(K);
    intervals(g, pieces);
    std::vector<double> out(K + 1);
    out[K] = 0.0;
    for (std::size_t i = K; i-- > 0;) out[i] = out[i + 1] + pieces[i];
    return out;
}

double PowerQuadrature::tail(std::span<const double> g, double q, double gamma) const {
    const double P = p_ + q + 1.0;
    if (!(P > 0.0))
        throw DivergentTailError("integrand ~ rho^" + std::to_string(p_ + q) +
                                 " is not integrable at 0");
    if (!(gamma > 0.0)) throw ConfigError("tail correction exponent must be positive");
    const double r0 = grid_->r(0);
    const double r1 = grid_->r(1);
    const double g0 = g[0] / std::pow(r0, q);
    const double g1 = g[1] / std::pow(r1, q);
    // g(rho) rho^-q ~ C + D rho^gamma; D r0^gamma = (g1 - g0) / (theta^-gamma - 1).
    const double d_r0 = (g1 - g0) / std::expm1(gamma * grid_->log_step());
    const double C = g0 - d_r0;
    return std::pow(r0, P) * (C / P + d_r0 / (P + gamma));
}

std::vector<double> PowerQuadrature::from_zero(std::span<const double> g, double q,
                                               double gamma) const {
    const std::size_t K = grid_->intervals();
    std::vector<double> pieces(K);
    intervals(g, pieces);
    std::vector<double> out(K + 1);
    out[0] = tail(g, q, gamma);
    for (std::size_t i = 0; i < K; ++i) out[i + 1] = out[i] + pieces[i];
    return out;
}

double integral_to_right(const GridFunction& f, std::size_t k, double p) {
    if (k >= f.size()) throw RangeError("node index out of range");
    PowerQuadrature quad(f.grid, p, kernels::Exec::Serial);
    const std::size_t K = f.grid->intervals();
    std::vector<double> pieces(K);
    quad.intervals(f.span(), pieces);
    double sum = 0.0;
    for (std::size_t i = K; i-- > k;) sum += pieces[i];
    return sum;
}

double integral_from_zero(const GridFunction& f, std::size_t k, double p, double q, double gamma) {
    if (k >= f.size()) throw RangeError("node index out of range");
    if (!(p + q > -1.0))
        throw DivergentTailError("integrand ~ rho^" + std::to_string(p + q) +
                                 " is not integrable at 0");
    PowerQuadrature quad(f.grid, p, kernels::Exec::Serial);
    return quad.from_zero(f.span(), q, gamma)[k];
}

}  // namespace soliton
