#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "soliton/constants.hpp"
#include "soliton/grid.hpp"
#include "soliton/kernels.hpp"

namespace soliton {

/// Which integral form of the w_r equation the map uses.
///
/// ToRight integrates the rho^{-1} v/w and rho^{-alpha} v^2/w kernels over
/// [r, eps] and is valid for every n. FromZero integrates all three kernels
/// over [0, r]; it needs alpha > 1 (n > 4). Auto picks FromZero for n > 4.
enum class MapVariant { Auto, ToRight, FromZero };

MapVariant resolve_variant(MapVariant v, int n);

std::string_view to_string(MapVariant v);
/// "auto", "to_right" or "from_zero"; anything else is a ConfigError.
MapVariant variant_from_string(std::string_view s);

/// A candidate pair (w, v) stored in regularized form.
///
/// w_dev = w - c0 and vs = r^{1-alpha} v. Near the origin w - c0 ~ r^alpha is
/// far below the resolution of w itself, so w is never stored directly.
struct IterateState {
    GridPtr grid;
    std::vector<double> w_dev;
    std::vector<double> vs;
    double norm_distance_to_center = 0.0;  ///< max(|w - c0|_inf, |vs + c2|_inf)

    double w(std::size_t k, double c0) const { return c0 + w_dev[k]; }
};

/// The center (c0, -c2 r^{alpha-1}) of the ball D_eps.
IterateState center_state(const SolitonParams& p, GridPtr grid);

/// Fills norm_distance_to_center and returns it.
double update_distance(IterateState& s, const SolitonParams& p);

/// Precomputed quadratures for repeated applications of the map on one grid.
class PicardMap {
public:
    PicardMap(const SolitonParams& p, GridPtr grid, MapVariant variant = MapVariant::Auto,
              kernels::Exec exec = kernels::Exec::Parallel);

    /// Phi(state), without the ball check.
    IterateState apply(const IterateState& state) const;

    MapVariant variant() const { return variant_; }
    const SolitonParams& params() const { return params_; }
    const GridPtr& grid() const { return grid_; }

private:
    SolitonParams params_;
    GridPtr grid_;
    MapVariant variant_;
    kernels::Exec exec_;
    double gamma_;  // tail correction exponent min(alpha, 1)
};

/// One application of Phi; throws BallEscapeError if the image leaves D_eps.
IterateState phi_step(const IterateState& state, const SolitonParams& p,
                      MapVariant variant = MapVariant::Auto,
                      kernels::Exec exec = kernels::Exec::Parallel);

struct PicardOptions {
    double tol = 1e-12;
    int max_iter = 200;
    /// Permit grid.eps > eps3 (up to 1/2). Contraction is then only monitored.
    bool allow_large_eps = false;
    MapVariant variant = MapVariant::Auto;
    kernels::Exec exec = kernels::Exec::Parallel;
};

/// Converged fixed point of Phi on (r_min, eps].
struct LocalSolution {
    SolitonParams params;
    GridPtr grid;
    std::vector<double> w_dev;
    std::vector<double> vs;
    MapVariant variant = MapVariant::ToRight;
    int iterations = 0;
    double final_update_norm = 0.0;
    std::vector<double> contraction_estimates;
    std::vector<double> update_norms;

    std::size_t size() const { return w_dev.size(); }
    double r(std::size_t k) const { return grid->r(k); }
    double w(std::size_t k) const { return params.c0() + w_dev[k]; }
    double v(std::size_t k) const;
    double h(std::size_t k) const;
    double h_r(std::size_t k) const;
    /// q = r h_r / h = r^alpha vs / w - alpha.
    double q(std::size_t k) const;

    GridFunction w_function() const;
    GridFunction v_function() const;

    /// h at an arbitrary r in [r_min, eps]: cubic Hermite in log r on w - c0.
    double h_at(double r) const;
};

/// Iterate Phi from the ball center until the update norm drops to tol.
///
/// Throws ConfigError when grid.eps > eps3 without allow_large_eps,
/// BallEscapeError when an iterate leaves D_eps and NonConvergenceError
/// after max_iter iterations.
LocalSolution solve_local(const SolitonParams& p, GridPtr grid, const PicardOptions& opt = {});

/// Pointwise residual w_rr - RHS of the second-order w equation, with w_rr
/// from central differences of w on the log grid and w_r = v. The first and
/// last two nodes are set to 0.
GridFunction residual_wrr(const SolitonParams& p, const GridPtr& grid,
                          const std::vector<double>& w_dev, const std::vector<double>& vs);
GridFunction residual_wrr(const LocalSolution& sol);

/// Fixed-point residual |Phi(w, v) - (w, v)| in the X_eps norm.
double fixed_point_residual(const LocalSolution& sol);

}  // namespace soliton
