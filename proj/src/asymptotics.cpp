#include "soliton/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "soliton/errors.hpp"
#include "soliton/hermite.hpp"

namespace soliton {

ExpansionTerms expansion_terms(const SolitonParams& p) {
    ExpansionTerms t;
    t.branch = p.branch;
    t.alpha = p.alpha;
    t.c0 = p.c0();
    const double a = p.alpha;
    const double lam = p.lambda();
    const double nm1 = p.n() - 1.0;
    if (p.branch == Branch::CriticalN) {
        t.k_log = lam / 4.0;
        return t;
    }
    t.k_alpha = -p.c2 / a;
    t.k_2a = (p.c2 * p.c2 + nm1 * p.c2) / (4.0 * p.c0() * a * (a - 1.0));
    if (p.branch == Branch::HighN) {
        const double a1 = a + 1.0;
        t.k_lin = p.c1() / a1 - a * lam / (2.0 * a1 * a1);
        t.hr_lin = p.c1() / a1 + a * a * lam / (2.0 * a1 * a1);
        t.k_log = a * lam / (2.0 * a + 2.0);
    }
    return t;
}

double expansion_deviation(const ExpansionTerms& t, double r) {
    const double a = t.alpha;
    const double lr = std::log(r);
    switch (t.branch) {
        case Branch::CriticalN: return t.k_log * r * r * lr;
        case Branch::LowN: return t.k_alpha * std::pow(r, a) + t.k_2a * std::pow(r, 2.0 * a);
        case Branch::HighN: {
            const double ra1 = std::pow(r, a + 1.0);
            return t.k_alpha * std::pow(r, a) + t.k_lin * ra1 + t.k_log * ra1 * lr +
                   t.k_2a * std::pow(r, 2.0 * a);
        }
    }
    return 0.0;
}

double eval_expansion(const ExpansionTerms& t, int n, double r, ExpansionOrder order) {
    if (t.branch != branch_for(n))
        throw ConfigError("expansion branch " + std::string(to_string(t.branch)) +
                          " does not match n = " + std::to_string(n));
    if (!(r > 0.0)) throw RangeError("expansion needs r > 0");
    const double a = t.alpha;
    if (order == ExpansionOrder::H) return (t.c0 + expansion_deviation(t, r)) * std::pow(r, -a);

    const double lr = std::log(r);
    double bracket = -a * t.c0;
    switch (t.branch) {
        case Branch::CriticalN: bracket += t.k_log * r * r * lr; break;
        case Branch::LowN: bracket += a * t.k_2a * std::pow(r, 2.0 * a); break;
        case Branch::HighN: {
            const double ra1 = std::pow(r, a + 1.0);
            bracket += t.hr_lin * ra1 + t.k_log * ra1 * lr + a * t.k_2a * std::pow(r, 2.0 * a);
            break;
        }
    }
    return bracket * std::pow(r, -a - 1.0);
}

double eval_expansion(const SolitonParams& p, double r, ExpansionOrder order) {
    return eval_expansion(expansion_terms(p), p.n(), r, order);
}

double delta0(double eps) { return std::min(eps, 0.1); }

std::vector<RemainderSample> remainder_profile(const GlobalProfile& profile, const SolitonParams& p,
                                               double r_cap) {
    const ExpansionTerms t = expansion_terms(p);
    const double a = p.alpha;
    std::vector<RemainderSample> out;
    for (std::size_t k = 0; k < profile.size() && profile.r[k] <= r_cap; ++k) {
        const double r = profile.r[k];
        const double w_dev = k < profile.w_dev.size()
                                 ? profile.w_dev[k]
                                 : std::exp(profile.u[k] + a * profile.s[k]) - p.c0();
        RemainderSample smp;
        smp.r = r;
        smp.deviation = w_dev;
        smp.remainder = w_dev - expansion_deviation(t, r);
        const double scale = p.branch == Branch::CriticalN ? r * r * std::abs(profile.s[k])
                                                          : std::pow(r, 2.0 * a);
        smp.scaled_remainder = smp.remainder / scale;
        out.push_back(smp);
    }
    return out;
}

std::vector<RemainderSample> remainder_profile(const GlobalProfile& profile, const SolitonParams& p) {
    const double eps = profile.local_count > 0 ? profile.r[profile.local_count - 1] : profile.r_max();
    return remainder_profile(profile, p, delta0(eps));
}

DecayCheck check_remainder_decay(const std::vector<RemainderSample>& samples, double rel_noise,
                                 int decades, double min_drop) {
    DecayCheck dc;
    std::map<int, DecadeBand> bands;
    for (const auto& smp : samples) {
        const int d = static_cast<int>(std::floor(std::log10(smp.r)));
        auto [it, fresh] = bands.try_emplace(d);
        DecadeBand& b = it->second;
        if (fresh) {
            b.r_lo = smp.r;
            b.r_hi = smp.r;
        }
        b.r_lo = std::min(b.r_lo, smp.r);
        b.r_hi = std::max(b.r_hi, smp.r);
        b.max_abs_scaled = std::max(b.max_abs_scaled, std::abs(smp.scaled_remainder));
        b.max_abs_remainder = std::max(b.max_abs_remainder, std::abs(smp.remainder));
        b.max_abs_deviation = std::max(b.max_abs_deviation, std::abs(smp.deviation));
    }
    bool any = false;
    for (auto& [d, b] : bands) {
        b.resolved = b.max_abs_remainder > rel_noise * b.max_abs_deviation;
        any = any || b.resolved;
        dc.bands.push_back(b);
    }
    if (!any) {
        dc.exact = true;
        dc.pass = true;
        return dc;
    }
    const std::size_t need = static_cast<std::size_t>(decades) + 1;
    for (std::size_t i = 0; i + need <= dc.bands.size(); ++i) {
        bool run = true;
        for (std::size_t j = i; j < i + need; ++j) run = run && dc.bands[j].resolved;
        if (!run) continue;
        dc.pass = true;
        dc.worst_drop = INFINITY;
        for (std::size_t j = i; j + 1 < i + need; ++j) {
            const double drop = dc.bands[j + 1].max_abs_scaled / dc.bands[j].max_abs_scaled;
            dc.drops.push_back(drop);
            dc.worst_drop = std::min(dc.worst_drop, drop);
            dc.pass = dc.pass && drop >= min_drop;
        }
        return dc;
    }
    return dc;  // too few resolved decades
}

RateFit fit_blowup_rate(const GlobalProfile& profile, std::pair<double, double> window) {
    const auto [lo, hi] = window;
    if (!(lo > 0.0) || !(hi > lo)) throw RangeError("fit window must satisfy 0 < r_lo < r_hi");
    if (profile.empty() || lo < profile.r_min() || hi > profile.r_max())
        throw RangeError("fit window outside profile range");
    RateFit fit;
    fit.window = window;
    double sx = 0, sy = 0;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < profile.size(); ++k)
        if (profile.r[k] >= lo && profile.r[k] <= hi) idx.push_back(k);
    if (idx.size() < 8) {
        std::ostringstream os;
        os << "fit window holds " << idx.size() << " nodes; at least 8 are needed";
        throw RangeError(os.str());
    }
    for (std::size_t k : idx) {
        sx += profile.s[k];
        sy += profile.u[k];
        fit.q_tail.emplace_back(profile.r[k], profile.q[k]);
    }
    const double N = static_cast<double>(idx.size());
    const double mx = sx / N, my = sy / N;
    double sxx = 0, sxy = 0;
    for (std::size_t k : idx) {
        sxx += (profile.s[k] - mx) * (profile.s[k] - mx);
        sxy += (profile.s[k] - mx) * (profile.u[k] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t k : idx) {
        const double e = profile.u[k] - (my + slope * (profile.s[k] - mx));
        ssr += e * e;
    }
    fit.alpha_hat = -slope;
    fit.std_error = std::sqrt(ssr / (N - 2.0) / sxx);
    fit.nodes = idx.size();
    return fit;
}

namespace {

// d/dx at node k from its neighbours, second order on nonuniform nodes.
double fd_first(const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
    const std::size_t N = x.size();
    std::size_t i0, i1, i2;
    if (k == 0) {
        i0 = 0, i1 = 1, i2 = 2;
    } else if (k + 1 == N) {
        i0 = N - 3, i1 = N - 2, i2 = N - 1;
    } else {
        i0 = k - 1, i1 = k, i2 = k + 1;
    }
    const double x0 = x[i0], x1 = x[i1], x2 = x[i2], xk = x[k];
    // Derivative of the Lagrange interpolant through the three points.
    const double l0 = (2 * xk - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (2 * xk - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (2 * xk - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return l0 * y[i0] + l1 * y[i1] + l2 * y[i2];
}

}  // namespace

QDiagnostics q_ode_residual(const GlobalProfile& profile) {
    const double rb = std::min(1.0, profile.r_max());
    const double ra = std::max(profile.r_min(), rb / 100.0);
    return q_ode_residual(profile, {ra, rb});
}

QDiagnostics q_ode_residual(const GlobalProfile& profile, std::pair<double, double> window) {
    const std::size_t N = profile.size();
    if (N < 3) throw RangeError("q diagnostics need at least 3 nodes");
    const SolitonParams& p = profile.params;
    const double lam = p.lambda();
    const double nm1 = p.n() - 1.0;
    const double a = p.alpha;

    QDiagnostics d;
    d.r = profile.r;
    d.q = profile.q;
    d.residual.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double r = profile.r[k], h = profile.h[k], q = profile.q[k];
        const double qr = fd_first(profile.r, profile.q, k);
        d.residual[k] = qr + (-1.0 / r + lam / (2.0 * h) + nm1 / (2.0 * r * h)) * q +
                        (q * q - nm1 * (h - 1.0) / h) / (2.0 * r);
    }

    // log F obeys (log F)_s = lambda/2 e^{s-u} + (n-1)/2 e^{-u}.
    auto dlogF = [&](double s, double u) { return 0.5 * lam * std::exp(s - u) + 0.5 * nm1 * std::exp(-u); };
    const ProfileInterpolant ip(profile);
    std::vector<double> logF(N), dlF(N);
    const double r0 = profile.r[0];
    logF[0] = 0.5 * lam * std::pow(r0, a + 1.0) / ((a + 1.0) * p.c0()) +
              0.5 * nm1 * std::pow(r0, a) / (a * p.c0());
    for (std::size_t k = 0; k < N; ++k) {
        dlF[k] = dlogF(profile.s[k], profile.u[k]);
        if (k > 0)
            logF[k] = logF[k - 1] + ip.integrate(profile.s[k - 1], profile.s[k],
                                                 [&](double s, double u, double) { return dlogF(s, u); });
    }
    d.F.resize(N);
    for (std::size_t k = 0; k < N; ++k) d.F[k] = std::exp(logF[k]);

    const auto [ra, rb] = window;
    if (!(ra >= profile.r_min()) || !(rb <= profile.r_max()) || !(rb > ra))
        throw RangeError("representation window outside profile range");
    d.representation_window = window;
    auto logF_at = [&](double s) {
        auto it = std::upper_bound(profile.s.begin(), profile.s.end(), s);
        std::size_t i = it == profile.s.begin() ? 0 : static_cast<std::size_t>(it - profile.s.begin()) - 1;
        i = std::min(i, N - 2);
        return hermite(profile.s[i], profile.s[i + 1], logF[i], logF[i + 1], dlF[i], dlF[i + 1], s);
    };
    const double sb = std::log(rb);
    const double Fb = std::exp(logF_at(sb));
    const double qb = ip.q(rb);
    auto integrand = [&](double s, double u, double q) {
        return std::exp(logF_at(s) - s) * 0.5 * (q * q - nm1 * (1.0 - std::exp(-u)));
    };
    double worst = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        const double r = profile.r[k];
        if (r < ra || r > rb) continue;
        const double J = ip.integrate(profile.s[k], sb, integrand);
        const double q_rep = r / d.F[k] * (Fb * qb / rb + J);
        worst = std::max(worst, std::abs(q_rep - profile.q[k]));
    }
    d.representation_residual = worst;
    return d;
}

}  // namespace soliton
