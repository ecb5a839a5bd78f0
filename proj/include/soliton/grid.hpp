#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace soliton {

/// Geometric grid r_k = eps * theta^(K-k), k = 0..K, on [r_min, eps].
///
/// Nodes are uniform in s = log r with step log(1/theta); s is stored so that
/// log r never has to be recomputed from r.
class RadialGrid {
public:
    /// K must be even (Simpson panels) and >= 64; theta must land in (0.5, 1).
    static std::shared_ptr<const RadialGrid> geometric(double eps, double r_min, std::size_t K);

    double eps() const { return r_.back(); }
    double r_min() const { return r_.front(); }
    std::size_t intervals() const { return r_.size() - 1; }
    std::size_t size() const { return r_.size(); }
    double log_step() const { return log_step_; }
    double ratio() const;

    std::span<const double> r() const { return r_; }
    std::span<const double> s() const { return s_; }
    double r(std::size_t k) const { return r_[k]; }
    double s(std::size_t k) const { return s_[k]; }

    /// Index of the last node with r_k <= x (clamped to [0, K]).
    std::size_t locate(double x) const;

private:
    RadialGrid() = default;
    std::vector<double> r_;
    std::vector<double> s_;
    double log_step_ = 0.0;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Values sampled at the nodes of a RadialGrid.
struct GridFunction {
    GridPtr grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(GridPtr g, std::vector<double> v);
    explicit GridFunction(GridPtr g, double fill = 0.0);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
    double& operator[](std::size_t k) { return values[k]; }
    std::span<const double> span() const { return values; }
};

}  // namespace soliton
