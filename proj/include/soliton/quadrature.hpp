#pragma once

#include <cstddef>
#include <vector>

#include "soliton/grid.hpp"
#include "soliton/kernels.hpp"

namespace soliton {

/// Product-Simpson rule for integrals of rho^p g(rho) on a RadialGrid.
///
/// In s = log rho the integrand is e^{(p+1)s} g(e^s). The exponential factor
/// is integrated exactly against the quadratic interpolant of g through the
/// three nodes of each panel, so the rule is exact whenever g is a quadratic
/// polynomial in s (in particular for g = const, i.e. pure power laws).
/// Subranges are addressed by node index only.
class PowerQuadrature {
public:
    PowerQuadrature(GridPtr grid, double p, kernels::Exec exec = kernels::Exec::Parallel);

    double weight_exponent() const { return p_; }
    const RadialGrid& grid() const { return *grid_; }

    /// out[k] = integral_{r_k}^{eps} rho^p g(rho) d rho, for every node k.
    std::vector<double> to_right(std::span<const double> g) const;

    /// out[k] = integral_0^{r_k} rho^p g(rho) d rho.
    ///
    /// Below r_min, g is modelled as rho^q (C + D rho^gamma) with C, D fitted
    /// at the two smallest nodes and integrated analytically; gamma = 1 is
    /// linear extrapolation in rho. Requires p + q > -1.
    std::vector<double> from_zero(std::span<const double> g, double q = 0.0,
                                  double gamma = 1.0) const;

    /// Interval contributions J_i = integral over [r_i, r_{i+1}], i = 0..K-1.
    void intervals(std::span<const double> g, std::span<double> out) const;

    /// Tail integral_0^{r_min} rho^p g, same model as from_zero.
    double tail(std::span<const double> g, double q, double gamma) const;

    const kernels::PanelWeights& panel_weights() const { return weights_; }

private:
    GridPtr grid_;
    double p_;
    kernels::Exec exec_;
    kernels::PanelWeights weights_;
    std::vector<double> panel_scale_;  // r_{2m}^{p+1}
};

/// integral_{r_k}^{eps} rho^p f(rho) d rho.
double integral_to_right(const GridFunction& f, std::size_t k, double p);

/// integral_0^{r_k} rho^p f(rho) d rho, f ~ C rho^q near 0; throws DivergentTailError if p + q <= -1.
double integral_from_zero(const GridFunction& f, std::size_t k, double p, double q,
                          double gamma = 1.0);

namespace detail {
/// E_m(x) = integral_0^1 e^{x t} t^m dt, m = 0, 1, 2.
double exp_moment(int m, double x);
kernels::PanelWeights product_simpson_weights(double h, double beta);
}  // namespace detail

}  // namespace soliton
