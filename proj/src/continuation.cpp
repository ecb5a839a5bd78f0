#include "soliton/continuation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::array<double, 2>;  // (u, q)

State rhs(const SolitonParams& p, double s, const State& y) {
    return {y[1], q_slope(p, s, y[0], y[1])};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

}  // namespace

Trajectory integrate_profile_ode(const SolitonParams& p, double s0, double u0, double q0, double s1,
                                 const ContinuationOptions& opt) {
    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw ConfigError("rtol and atol must be positive");
    if (!std::isfinite(u0) || !std::isfinite(q0)) throw SolverError("non-finite initial data");
    const double log_floor = std::log(opt.h_floor);
    if (u0 <= log_floor) throw PositivityLossError(std::exp(s0), std::exp(u0));

    Trajectory tr;
    State y{u0, q0};
    double s = s0;
    State k1 = rhs(p, s, y);
    tr.s.push_back(s);
    tr.u.push_back(y[0]);
    tr.q.push_back(y[1]);
    tr.q_s.push_back(k1[1]);
    if (s1 == s0) return tr;

    const double dir = s1 > s0 ? 1.0 : -1.0;
    double h = dir * std::min(opt.initial_step, opt.max_step);
    std::size_t steps = 0;
    while (dir * (s1 - s) > 0.0) {
        if (++steps > opt.max_steps) throw StiffnessError("continuation exceeded the step budget");
        if (dir * (s + h - s1) > 0.0) h = s1 - s;
        const double min_step = 1e-13 * std::max(1.0, std::abs(s));
        if (std::abs(h) < min_step) {
            std::ostringstream os;
            os << "step size underflow at r = " << std::exp(s);
            throw StiffnessError(os.str());
        }

        const State k2 = rhs(p, s + c2 * h, axpy(y, h, {{a21, &k1}}));
        const State k3 = rhs(p, s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(p, s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 =
            rhs(p, s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs(p, s + h,
                             axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new =
            axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(p, s + h, y_new);

        double err = 0.0;
        bool finite = std::isfinite(y_new[0]) && std::isfinite(y_new[1]);
        if (finite) {
            const double sc_u = opt.rtol + opt.atol * std::exp(-std::min(y[0], y_new[0]));
            const double sc_q = opt.atol + opt.rtol * std::max(std::abs(y[1]), std::abs(y_new[1]));
            const double eu = h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
            const double eq = h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);
            err = std::sqrt(0.5 * ((eu / sc_u) * (eu / sc_u) + (eq / sc_q) * (eq / sc_q)));
            finite = std::isfinite(err);
        }

        if (finite && err <= 1.0) {
            s = (dir * (s + h - s1) >= 0.0) ? s1 : s + h;
            y = y_new;
            k1 = k7;
            if (y[0] <= log_floor) throw PositivityLossError(std::exp(s), std::exp(y[0]));
            tr.s.push_back(s);
            tr.u.push_back(y[0]);
            tr.q.push_back(y[1]);
            tr.q_s.push_back(k7[1]);
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = dir * std::min(std::abs(h) * fac, opt.max_step);
        } else {
            const double fac = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25;
            h *= fac;
        }
    }
    return tr;
}

void check_barrier(const SolitonParams& p, double R_max) {
    if (p.lambda() < 0.0) {
        const double barrier = -(p.n() - 1.0) / p.lambda();
        if (!(R_max < barrier)) {
            std::ostringstream os;
            os << "R_max = " << R_max << " is not below the barrier -(n-1)/lambda = " << barrier;
            throw ConfigError(os.str());
        }
    }
}

GlobalProfile extend_global(const LocalSolution& local, double R_max, double rtol, double atol) {
    ContinuationOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    return extend_global(local, R_max, opt);
}

GlobalProfile extend_global(const LocalSolution& local, double R_max, const ContinuationOptions& opt) {
    const double eps = local.grid->eps();
    if (!(R_max > eps) || !std::isfinite(R_max))
        throw ConfigError("R_max must exceed the local grid eps");
    check_barrier(local.params, R_max);

    GlobalProfile g = to_h(local);
    const std::size_t K = local.size() - 1;
    const Trajectory tr = integrate_profile_ode(local.params, g.s[K], g.u[K], g.q[K],
                                                std::log(R_max), opt);
    for (std::size_t i = 1; i < tr.s.size(); ++i) {
        const double r = i + 1 == tr.s.size() ? R_max : std::exp(tr.s[i]);
        const double h = std::exp(tr.u[i]);
        g.r.push_back(r);
        g.s.push_back(tr.s[i]);
        g.u.push_back(tr.u[i]);
        g.q.push_back(tr.q[i]);
        g.q_s.push_back(tr.q_s[i]);
        g.h.push_back(h);
        g.h_r.push_back(tr.q[i] * h / r);
    }
    g.source = ProfileSource::Extended;
    g.rtol = opt.rtol;
    g.atol = opt.atol;
    g.R_max = R_max;
    return g;
}

double overlap_error(const LocalSolution& local, const ContinuationOptions& opt) {
    const GlobalProfile loc = to_h(local);
    const std::size_t K = local.size() - 1;
    const double s_half = std::log(0.5 * local.grid->eps());
    const Trajectory tr =
        integrate_profile_ode(local.params, loc.s[K], loc.u[K], loc.q[K], s_half, opt);
    // Reverse into increasing order and interpolate.
    std::vector<double> r, h, hr, qs;
    for (std::size_t i = tr.s.size(); i-- > 0;) {
        const double ri = std::exp(tr.s[i]);
        const double hi = std::exp(tr.u[i]);
        r.push_back(ri);
        h.push_back(hi);
        hr.push_back(tr.q[i] * hi / ri);
        qs.push_back(tr.q_s[i]);
    }
    r.back() = local.grid->eps();
    const GlobalProfile back = GlobalProfile::from_samples(local.params, r, h, hr, qs);
    const ProfileInterpolant interp(back);
    double worst = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (loc.r[k] <= back.r.front()) continue;
        const double du = interp.u(loc.r[k]) - loc.u[k];
        worst = std::max(worst, std::abs(std::expm1(du)));
    }
    return worst;
}

double integral_identity_residual(const GlobalProfile& profile, double r2, double r1) {
    if (!(r2 > 0.0) || !(r1 >= r2)) throw RangeError("identity needs 0 < r2 <= r1");
    const ProfileInterpolant ip(profile);
    const SolitonParams& p = profile.params;
    const double nm1 = p.n() - 1.0;
    const double lam = p.lambda();
    const double h1 = ip.h(r1), h2 = ip.h(r2);
    const double hr1 = ip.h_r(r1), hr2 = ip.h_r(r2);
    // (h+1)/(rho^2 sqrt h) d rho = e^{-s} (e^{u/2} + e^{-u/2}) ds
    const double I = ip.integrate(std::log(r2), std::log(r1), [](double s, double u, double) {
        return std::exp(-s) * (std::exp(0.5 * u) + std::exp(-0.5 * u));
    });
    const double rhs = nm1 / r1 + lam + std::sqrt(h1 / h2) * (hr2 - nm1 / r2 - lam) +
                       0.5 * nm1 * std::sqrt(h1) * I;
    return std::abs(hr1 - rhs);
}

WindowBounds window_bounds(const GlobalProfile& profile, double L) {
    if (profile.empty() || !(L / 2 >= profile.r_min()) || !(L <= profile.r_max()))
        throw RangeError("window [L/2, L] outside profile range");
    const ProfileInterpolant ip(profile);
    WindowBounds b;
    b.minh = b.maxh = ip.h(L / 2);
    b.minhr = b.maxhr = ip.h_r(L / 2);
    auto take = [&](double h, double hr) {
        b.minh = std::min(b.minh, h);
        b.maxh = std::max(b.maxh, h);
        b.minhr = std::min(b.minhr, hr);
        b.maxhr = std::max(b.maxhr, hr);
    };
    take(ip.h(L), ip.h_r(L));
    for (std::size_t k = 0; k < profile.size(); ++k)
        if (profile.r[k] > L / 2 && profile.r[k] < L) take(profile.h[k], profile.h_r[k]);
    return b;
}

}  // namespace soliton
