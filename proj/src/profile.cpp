#include "soliton/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/hermite.hpp"

namespace soliton {

std::string_view to_string(ProfileSource s) {
    switch (s) {
        case ProfileSource::LocalOnly: return "LocalOnly";
        case ProfileSource::Extended: return "Extended";
        case ProfileSource::Synthetic: return "Synthetic";
    }
    return "Synthetic";
}

double q_slope(const SolitonParams& p, double s, double u, double q) {
    const double nm1 = p.n() - 1.0;
    const double eu = std::exp(-u);
    return q - 0.5 * q * q + 0.5 * nm1 * (1.0 - eu) - 0.5 * q * (p.lambda() * std::exp(s) + nm1) * eu;
}

GlobalProfile GlobalProfile::from_samples(const SolitonParams& p, std::vector<double> r,
                                          std::vector<double> h, std::vector<double> h_r,
                                          std::optional<std::vector<double>> q_s) {
    const std::size_t N = r.size();
    if (N < 2 || h.size() != N || h_r.size() != N)
        throw RangeError("profile samples need at least two nodes and matching lengths");
    GlobalProfile g;
    g.params = p;
    g.s.resize(N);
    g.u.resize(N);
    g.q.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        if (!(r[k] > 0.0)) throw RangeError("profile nodes must be positive");
        if (k > 0 && !(r[k] > r[k - 1])) throw RangeError("profile nodes must increase");
        if (!(h[k] > 0.0)) throw SolverError("profile has nonpositive h");
        g.s[k] = std::log(r[k]);
        g.u[k] = std::log(h[k]);
        g.q[k] = r[k] * h_r[k] / h[k];
    }
    if (q_s) {
        if (q_s->size() != N) throw RangeError("q_s length mismatch");
        g.q_s = std::move(*q_s);
    } else {
        g.q_s.resize(N);
        for (std::size_t k = 0; k < N; ++k) g.q_s[k] = q_slope(p, g.s[k], g.u[k], g.q[k]);
    }
    g.r = std::move(r);
    g.h = std::move(h);
    g.h_r = std::move(h_r);
    g.R_max = g.r.back();
    return g;
}

GlobalProfile to_h(const LocalSolution& sol) {
    const std::size_t N = sol.size();
    const double a = sol.params.alpha;
    GlobalProfile g;
    g.params = sol.params;
    g.source = ProfileSource::LocalOnly;
    g.r.resize(N);
    g.h.resize(N);
    g.h_r.resize(N);
    g.s.resize(N);
    g.u.resize(N);
    g.q.resize(N);
    g.q_s.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double w = sol.w(k);
        if (!(w > 0.0)) {
            std::ostringstream os;
            os << "nonpositive h at r = " << sol.r(k);
            throw SolverError(os.str());
        }
        const double s = sol.grid->s(k);
        g.r[k] = sol.r(k);
        g.s[k] = s;
        g.u[k] = std::log(w) - a * s;
        g.q[k] = sol.q(k);
        g.h[k] = sol.h(k);
        g.h_r[k] = sol.h_r(k);
        g.q_s[k] = q_slope(sol.params, s, g.u[k], g.q[k]);
    }
    g.w_dev = sol.w_dev;
    g.local_count = N;
    g.R_max = g.r.back();
    return g;
}

ProfileInterpolant::ProfileInterpolant(const GlobalProfile& profile) : profile_(&profile) {
    if (profile.size() < 2) throw RangeError("interpolant needs at least two nodes");
}

double ProfileInterpolant::r_min() const { return profile_->r.front(); }
double ProfileInterpolant::r_max() const { return profile_->r.back(); }

std::size_t ProfileInterpolant::interval(double s) const {
    const auto& S = profile_->s;
    auto it = std::upper_bound(S.begin(), S.end(), s);
    std::size_t i = it == S.begin() ? 0 : static_cast<std::size_t>(it - S.begin()) - 1;
    return std::min(i, S.size() - 2);
}

std::pair<double, double> ProfileInterpolant::eval(double s) const {
    const auto& P = *profile_;
    // Allow a relative slack of a few ulps at both ends.
    const double slack = 1e-12 * std::max(1.0, std::abs(s));
    if (s < P.s.front() - slack || s > P.s.back() + slack) {
        std::ostringstream os;
        os << "r = " << std::exp(s) << " outside profile range [" << P.r.front() << ", "
           << P.r.back() << "]";
        throw RangeError(os.str());
    }
    const std::size_t i = interval(s);
    const double s0 = P.s[i], s1 = P.s[i + 1];
    const double uu = hermite(s0, s1, P.u[i], P.u[i + 1], P.q[i], P.q[i + 1], s);
    const double qq = hermite(s0, s1, P.q[i], P.q[i + 1], P.q_s[i], P.q_s[i + 1], s);
    return {uu, qq};
}

double ProfileInterpolant::h(double r) const { return std::exp(u(r)); }

double ProfileInterpolant::h_r(double r) const {
    const auto [uu, qq] = eval(std::log(r));
    return qq * std::exp(uu) / r;
}

}  // namespace soliton
