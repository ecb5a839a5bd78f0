#pragma once

// Data-parallel inner loops of the contraction map.
//
// Every kernel exists twice with the same signature: `serial` is the plain
// reference implementation kept for testing, `omp` is the OpenMP version used
// by default. Each output element is computed by the same arithmetic in both,
// so results agree bit for bit; tests/test_kernels.cpp holds them to that.

#include <array>
#include <cstddef>
#include <span>

namespace soliton::kernels {

enum class Exec { Serial, Parallel };

/// Product-Simpson weights of one panel [s_2m, s_2m+2], without the r_2m^(p+1) factor.
struct PanelWeights {
    std::array<double, 3> first{};   ///< interval [s_2m, s_2m+1] of the panel quadratic
    std::array<double, 3> second{};  ///< interval [s_2m+1, s_2m+2]
};

/// Coefficients of the Phi_2 assembly
///   vs_new = -c2 + c1 r + (alpha lambda / 2) r log r + r (ka A + kb B + kc C).
struct AssemblyCoefficients {
    double c2 = 0.0;
    double c1 = 0.0;
    double log_coeff = 0.0;
    double ka = 0.0;
    double kb = 0.0;
    double kc = 0.0;
};

namespace serial {

/// out[i] = integral over [s_i, s_{i+1}] for i = 0..K-1, panel m scaled by scale[m].
void interval_contributions(std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out);

/// ratio[k] = vs/w, square[k] = vs^2/w with w = c0 + w_dev.
void picard_integrands(std::span<const double> w_dev, std::span<const double> vs, double c0,
                       std::span<double> ratio, std::span<double> square);

void assemble_scaled_v(std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out);

double max_abs_diff(std::span<const double> x, std::span<const double> y);
double max_abs_offset(std::span<const double> x, double offset);

}  // namespace serial

namespace omp {

void interval_contributions(std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out);
void picard_integrands(std::span<const double> w_dev, std::span<const double> vs, double c0,
                       std::span<double> ratio, std::span<double> square);
void assemble_scaled_v(std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
double max_abs_offset(std::span<const double> x, double offset);

}  // namespace omp

// Dispatch on Exec.
void interval_contributions(Exec ex, std::span<const double> scale, const PanelWeights& wts,
                            std::span<const double> f, std::span<double> out);
void picard_integrands(Exec ex, std::span<const double> w_dev, std::span<const double> vs,
                       double c0, std::span<double> ratio, std::span<double> square);
void assemble_scaled_v(Exec ex, std::span<const double> r, std::span<const double> s,
                       const AssemblyCoefficients& k, std::span<const double> a,
                       std::span<const double> b, std::span<const double> c,
                       std::span<double> out);
double max_abs_diff(Exec ex, std::span<const double> x, std::span<const double> y);
double max_abs_offset(Exec ex, std::span<const double> x, double offset);

}  // namespace soliton::kernels
