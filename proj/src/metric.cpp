#include "soliton/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw RangeError("log_spaced needs 0 < lo < hi, n >= 2");
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

MetricProfile reconstruct_a(const GlobalProfile& profile, const std::vector<double>& a_samples) {
    if (a_samples.empty()) throw RangeError("no a samples");
    const ProfileInterpolant ip(profile);
    const SolitonParams& p = profile.params;
    const double a_lo = std::sqrt(profile.r_min());
    const double a_hi = std::sqrt(profile.r_max());
    const double slack = 1e-12;
    for (std::size_t i = 0; i < a_samples.size(); ++i) {
        const double a = a_samples[i];
        if (!(a >= a_lo * (1 - slack)) || !(a <= a_hi * (1 + slack))) {
            std::ostringstream os;
            os << "a = " << a << " outside coverage [" << a_lo << ", " << a_hi << "]";
            throw RangeError(os.str());
        }
        if (i > 0 && !(a > a_samples[i - 1])) throw RangeError("a samples must increase");
    }

    MetricProfile mp;
    const std::size_t N = a_samples.size();
    mp.t.resize(N);
    mp.a = a_samples;
    mp.a_t.resize(N);
    mp.a_tt.resize(N);

    // dt = d rho / sqrt(h(rho^2)) = (1/2) exp((s - u)/2) ds with s = log rho^2
    auto integrand = [](double s, double u, double) { return 0.5 * std::exp(0.5 * (s - u)); };
    const double alpha = p.alpha;
    double t = std::pow(a_lo, alpha + 1.0) / ((alpha + 1.0) * std::sqrt(p.c0()));
    double s_prev = profile.s.front();
    for (std::size_t i = 0; i < N; ++i) {
        const double a = a_samples[i];
        const double s = std::clamp(2.0 * std::log(a), profile.s.front(), profile.s.back());
        t += ip.integrate(s_prev, s, integrand);
        s_prev = s;
        const auto [u, q] = ip.eval(s);
        mp.t[i] = t;
        mp.a_t[i] = std::exp(0.5 * u);
        mp.a_tt[i] = q * std::exp(u) / a;  // a h_r(a^2) with h_r = q h / r
        if (!(mp.a_t[i] > 0.0)) throw SolverError("nonpositive h while reconstructing a");
    }
    return mp;
}

double check_a_asymptote(const MetricProfile& mp, const SolitonParams& p) {
    if (mp.size() < 2 || !(mp.t.back() >= 100.0 * mp.t.front()))
        throw RangeError("metric samples must cover at least two decades of t");
    const double rn = std::sqrt(static_cast<double>(p.n()));
    const double k = std::sqrt(p.n() * p.c0());
    const double t_cap = 10.0 * mp.t.front();
    double worst = 0.0;
    for (std::size_t i = 0; i < mp.size() && mp.t[i] <= t_cap; ++i) {
        const double model = std::pow(k * mp.t[i], 1.0 / rn);
        worst = std::max(worst, std::abs(mp.a[i] / model - 1.0));
    }
    return worst;
}

void reconstruct_f(MetricProfile& mp, double lambda, int n) {
    const std::size_t N = mp.size();
    const double nm1 = n - 1.0;
    mp.f_t.resize(N);
    mp.f_tt.resize(N);
    mp.f.assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double a = mp.a[i], at = mp.a_t[i], att = mp.a_tt[i];
        const double denom = a * at;
        if (!(denom > 0.0)) throw SolverError("a a_t vanishes; f_t is singular");
        mp.f_t[i] = (nm1 - a * att - nm1 * at * at + lambda * a * a) / denom;
        mp.f_tt[i] = lambda - n * att / a;
    }
    for (std::size_t i = 1; i < N; ++i)
        mp.f[i] = mp.f[i - 1] + 0.5 * (mp.t[i] - mp.t[i - 1]) * (mp.f_t[i] + mp.f_t[i - 1]);
}

std::vector<double> fd_derivative(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t N = x.size();
    if (N < 3 || y.size() != N) throw RangeError("finite differences need at least 3 samples");
    std::vector<double> d(N);
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t c = std::clamp<std::size_t>(k, 1, N - 2);
        const double x0 = x[c - 1], x1 = x[c], x2 = x[c + 1], xk = x[k];
        const double l0 = (2 * xk - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double l1 = (2 * xk - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double l2 = (2 * xk - x0 - x1) / ((x2 - x0) * (x2 - x1));
        d[k] = l0 * y[c - 1] + l1 * y[c] + l2 * y[c + 1];
    }
    return d;
}

SolitonResidual soliton_residual(const MetricProfile& mp, double lambda, int n) {
    const std::size_t N = mp.size();
    if (mp.f_t.size() != N) throw RangeError("metric profile has no potential; call reconstruct_f");
    const double nm1 = n - 1.0;
    const std::vector<double> dft = fd_derivative(mp.t, mp.f_t);
    SolitonResidual r;
    r.res_tt.resize(N);
    r.res_sphere.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double a = mp.a[i], at = mp.a_t[i], att = mp.a_tt[i];
        r.res_tt[i] = -n * att / a - (dft[i] - lambda);
        r.res_sphere[i] =
            (nm1 - a * att - nm1 * at * at) - (a * at * mp.f_t[i] - lambda * a * a);
    }
    return r;
}

std::vector<double> a_eqn_residual(const MetricProfile& mp, double lambda, int n) {
    const std::size_t N = mp.size();
    if (N < 5) throw RangeError("a equation residual needs at least 5 samples");
    const double nm1 = n - 1.0;
    const std::vector<double> attt = fd_derivative(mp.t, mp.a_tt);
    std::vector<double> res(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double a = mp.a[i], at = mp.a_t[i], att = mp.a_tt[i];
        const double rhs = a * at * at * att + a * a * att * att - nm1 * a * att -
                           lambda * a * a * a * att - nm1 * at * at + nm1 * at * at * at * at;
        res[i] = a * a * at * attt[i] - rhs;
    }
    return res;
}

}  // namespace soliton
