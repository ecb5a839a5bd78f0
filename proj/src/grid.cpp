#include "soliton/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soliton/errors.hpp"

namespace soliton {

std::shared_ptr<const RadialGrid> RadialGrid::geometric(double eps, double r_min, std::size_t K) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("grid eps must be positive");
    if (!(r_min > 0.0) || !(r_min < eps)) throw ConfigError("grid requires 0 < r_min < eps");
    if (K < 64) throw ConfigError("grid needs at least 64 intervals, got " + std::to_string(K));
    if (K % 2 != 0) throw ConfigError("grid interval count must be even (Simpson panels)");

    const double span = std::log(eps / r_min);
    const double step = span / static_cast<double>(K);
    if (!(std::exp(-step) > 0.5))
        throw ConfigError("grid ratio theta must exceed 1/2; increase K or r_min");

    auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
    grid->log_step_ = step;
    grid->r_.resize(K + 1);
    grid->s_.resize(K + 1);
    const double s_eps = std::log(eps);
    for (std::size_t k = 0; k <= K; ++k) {
        const double s = s_eps - static_cast<double>(K - k) * step;
        grid->s_[k] = s;
        grid->r_[k] = std::exp(s);
    }
    grid->r_[K] = eps;
    grid->s_[K] = s_eps;
    return grid;
}

double RadialGrid::ratio() const { return std::exp(-log_step_); }

std::size_t RadialGrid::locate(double x) const {
    if (x <= r_.front()) return 0;
    auto it = std::upper_bound(r_.begin(), r_.end(), x);
    return static_cast<std::size_t>(std::distance(r_.begin(), it)) - 1;
}

GridFunction::GridFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw RangeError("GridFunction without grid");
    if (values.size() != grid->size())
        throw RangeError("GridFunction length " + std::to_string(values.size()) +
                         " does not match grid size " + std::to_string(grid->size()));
}

GridFunction::GridFunction(GridPtr g, double fill) : grid(std::move(g)) {
    if (!grid) throw RangeError("GridFunction without grid");
    values.assign(grid->size(), fill);
}

}  // namespace soliton
