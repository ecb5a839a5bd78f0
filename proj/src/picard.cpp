#include "soliton/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "soliton/errors.hpp"
#include "soliton/hermite.hpp"
#include "soliton/quadrature.hpp"

namespace soliton {

MapVariant resolve_variant(MapVariant v, int n) {
    if (v == MapVariant::Auto) return n > 4 ? MapVariant::FromZero : MapVariant::ToRight;
    if (v == MapVariant::FromZero && n <= 4)
        throw ConfigError("the from-zero map needs n > 4 (integrability at the origin)");
    return v;
}

std::string_view to_string(MapVariant v) {
    switch (v) {
        case MapVariant::Auto: return "auto";
        case MapVariant::ToRight: return "to_right";
        case MapVariant::FromZero: return "from_zero";
    }
    return "auto";
}

MapVariant variant_from_string(std::string_view s) {
    if (s == "auto") return MapVariant::Auto;
    if (s == "to_right") return MapVariant::ToRight;
    if (s == "from_zero") return MapVariant::FromZero;
    throw ConfigError("unknown map variant '" + std::string(s) + "'");
}

IterateState center_state(const SolitonParams& p, GridPtr grid) {
    IterateState s;
    s.w_dev.assign(grid->size(), 0.0);
    s.vs.assign(grid->size(), -p.c2);
    s.grid = std::move(grid);
    s.norm_distance_to_center = 0.0;
    return s;
}

double update_distance(IterateState& s, const SolitonParams& p) {
    const double dw = kernels::serial::max_abs_offset(s.w_dev, 0.0);
    const double dv = kernels::serial::max_abs_offset(s.vs, p.c2);
    s.norm_distance_to_center = std::max(dw, dv);
    return s.norm_distance_to_center;
}

namespace {

void check_ball(const IterateState& s, const SolitonParams& p, int iteration) {
    const double radius = p.c0() / 10.0;
    const double dw = kernels::serial::max_abs_offset(s.w_dev, 0.0);
    const double dv = kernels::serial::max_abs_offset(s.vs, p.c2);
    if (!(dw <= radius)) throw BallEscapeError(BallEscapeError::Component::W, dw, radius, iteration);
    if (!(dv <= radius)) throw BallEscapeError(BallEscapeError::Component::V, dv, radius, iteration);
}

double update_norm(const IterateState& a, const IterateState& b, kernels::Exec ex) {
    return std::max(kernels::max_abs_diff(ex, a.w_dev, b.w_dev), kernels::max_abs_diff(ex, a.vs, b.vs));
}

}  // namespace

PicardMap::PicardMap(const SolitonParams& p, GridPtr grid, MapVariant variant, kernels::Exec exec)
    : params_(p), grid_(std::move(grid)), variant_(resolve_variant(variant, p.n())), exec_(exec),
      gamma_(std::min(p.alpha, 1.0)) {
    if (!grid_) throw RangeError("PicardMap without grid");
}

IterateState PicardMap::apply(const IterateState& state) const {
    const std::size_t N = grid_->size();
    if (state.w_dev.size() != N || state.vs.size() != N)
        throw RangeError("iterate does not match grid");
    const double a = params_.alpha;
    const int n = params_.n();
    const double lam = params_.lambda();

    std::vector<double> ratio(N), square(N);
    kernels::picard_integrands(exec_, state.w_dev, state.vs, params_.c0(), ratio, square);

    const PowerQuadrature q1(grid_, a - 1.0, exec_);  // kernels rho^{alpha-1}
    const PowerQuadrature q2(grid_, a - 2.0, exec_);  // kernels rho^{alpha-2}

    IterateState out;
    out.grid = grid_;
    out.w_dev = q1.from_zero(state.vs, 0.0, gamma_);

    const std::vector<double> B = q1.from_zero(ratio, 0.0, gamma_);
    std::vector<double> A, C;
    kernels::AssemblyCoefficients k;
    k.c2 = params_.c2;
    k.c1 = params_.c1();
    k.log_coeff = 0.5 * a * lam;
    k.kb = -0.5 * lam;
    if (variant_ == MapVariant::ToRight) {
        A = q2.to_right(ratio);
        C = q2.to_right(square);
        k.ka = 0.5 * (n - 1);
        k.kc = -0.5;
    } else {
        A = q2.from_zero(ratio, 0.0, gamma_);
        C = q2.from_zero(square, 0.0, gamma_);
        k.ka = -0.5 * (n - 1);
        k.kc = 0.5;
    }
    out.vs.resize(N);
    kernels::assemble_scaled_v(exec_, grid_->r(), grid_->s(), k, A, B, C, out.vs);
    update_distance(out, params_);
    return out;
}

IterateState phi_step(const IterateState& state, const SolitonParams& p, MapVariant variant,
                      kernels::Exec exec) {
    PicardMap map(p, state.grid, variant, exec);
    IterateState out = map.apply(state);
    check_ball(out, p, -1);
    return out;
}

LocalSolution solve_local(const SolitonParams& p, GridPtr grid, const PicardOptions& opt) {
    if (!grid) throw RangeError("solve_local without grid");
    if (!(opt.tol > 0.0)) throw ConfigError("picard tolerance must be positive");
    if (opt.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (grid->eps() > 0.5) throw ConfigError("eps must not exceed 1/2");
    if (grid->eps() > p.eps3 && !opt.allow_large_eps) {
        std::ostringstream os;
        os << "eps = " << grid->eps() << " exceeds the guaranteed contraction radius eps3 = "
           << p.eps3 << "; pass an explicit override to proceed";
        throw ConfigError(os.str());
    }

    const PicardMap map(p, grid, opt.variant, opt.exec);
    LocalSolution sol;
    sol.params = p;
    sol.grid = grid;
    sol.variant = map.variant();

    IterateState state = center_state(p, grid);
    double prev = 0.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        IterateState next = map.apply(state);
        check_ball(next, p, it);
        const double upd = update_norm(next, state, opt.exec);
        sol.update_norms.push_back(upd);
        if (it > 1 && prev > 0.0) sol.contraction_estimates.push_back(upd / prev);
        prev = upd;
        state = std::move(next);
        if (upd <= opt.tol) {
            sol.iterations = it;
            sol.final_update_norm = upd;
            sol.w_dev = std::move(state.w_dev);
            sol.vs = std::move(state.vs);
            return sol;
        }
    }
    std::ostringstream os;
    os << "Picard iteration did not reach tol " << opt.tol << " in " << opt.max_iter
       << " iterations; last update " << prev << ", last contraction estimates:";
    const auto& ce = sol.contraction_estimates;
    for (std::size_t i = ce.size() > 5 ? ce.size() - 5 : 0; i < ce.size(); ++i) os << ' ' << ce[i];
    throw NonConvergenceError(os.str());
}

double LocalSolution::v(std::size_t k) const {
    return std::exp((params.alpha - 1.0) * grid->s(k)) * vs[k];
}

double LocalSolution::h(std::size_t k) const {
    return w(k) * std::exp(-params.alpha * grid->s(k));
}

double LocalSolution::h_r(std::size_t k) const {
    const double a = params.alpha;
    const double s = grid->s(k);
    return (std::exp(a * s) * vs[k] - a * w(k)) * std::exp(-(a + 1.0) * s);
}

double LocalSolution::q(std::size_t k) const {
    return std::exp(params.alpha * grid->s(k)) * vs[k] / w(k) - params.alpha;
}

GridFunction LocalSolution::w_function() const {
    std::vector<double> vals(size());
    for (std::size_t k = 0; k < size(); ++k) vals[k] = w(k);
    return GridFunction(grid, std::move(vals));
}

GridFunction LocalSolution::v_function() const {
    std::vector<double> vals(size());
    for (std::size_t k = 0; k < size(); ++k) vals[k] = v(k);
    return GridFunction(grid, std::move(vals));
}

double LocalSolution::h_at(double r) const {
    if (!(r >= grid->r_min() && r <= grid->eps()))
        throw RangeError("h_at: r outside the local grid");
    const double a = params.alpha;
    const std::size_t k = std::min(grid->locate(r), grid->intervals() - 1);
    const double s = std::log(r);
    const double s0 = grid->s(k), s1 = grid->s(k + 1);
    // d(w - c0)/ds = r v = r^alpha vs
    const double d0 = std::exp(a * s0) * vs[k];
    const double d1 = std::exp(a * s1) * vs[k + 1];
    const double wd = hermite(s0, s1, w_dev[k], w_dev[k + 1], d0, d1, s);
    return (params.c0() + wd) * std::exp(-a * s);
}

GridFunction residual_wrr(const SolitonParams& p, const GridPtr& grid,
                          const std::vector<double>& w_dev, const std::vector<double>& vs) {
    const std::size_t N = grid->size();
    if (w_dev.size() != N || vs.size() != N) throw RangeError("residual_wrr: size mismatch");
    const double a = p.alpha;
    const double lam = p.lambda();
    const double nm1 = p.n() - 1.0;
    const double d = grid->log_step();
    std::vector<double> res(N, 0.0);
    for (std::size_t k = 2; k + 2 < N; ++k) {
        const double r = grid->r(k);
        const double ws = (w_dev[k + 1] - w_dev[k - 1]) / (2.0 * d);
        const double wss = (w_dev[k + 1] - 2.0 * w_dev[k] + w_dev[k - 1]) / (d * d);
        const double wrr = (wss - ws) / (r * r);
        const double w = p.c0() + w_dev[k];
        const double ra = std::exp(a * grid->s(k));
        const double wr = ra / r * vs[k];
        const double rhs = a / r * wr + p.c2 * ra / (r * r) + 0.5 * a * lam * ra / r -
                           0.5 * nm1 * ra / r * wr / w - 0.5 * lam * ra * wr / w + 0.5 * wr * wr / w;
        res[k] = wrr - rhs;
    }
    return GridFunction(grid, std::move(res));
}

GridFunction residual_wrr(const LocalSolution& sol) {
    return residual_wrr(sol.params, sol.grid, sol.w_dev, sol.vs);
}

double fixed_point_residual(const LocalSolution& sol) {
    const PicardMap map(sol.params, sol.grid, sol.variant, kernels::Exec::Serial);
    IterateState s;
    s.grid = sol.grid;
    s.w_dev = sol.w_dev;
    s.vs = sol.vs;
    const IterateState img = map.apply(s);
    return update_norm(img, s, kernels::Exec::Serial);
}

}  // namespace soliton
