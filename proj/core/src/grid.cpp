#include "ztoa/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ztoa {

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

SpatialGrid make_grid(double x_min, double x_max, int n_points) {
    if (!(x_max > x_min))
        throw std::invalid_argument("make_grid: x_max must exceed x_min");
    if (!is_power_of_two(n_points) || n_points < 16)
        throw std::invalid_argument("make_grid: n_points must be a power of two >= 16, got " +
                                    std::to_string(n_points));
    if (!(x_min < 0.0 && 0.0 < x_max))
        throw std::invalid_argument("make_grid: arrival position x = 0 must lie inside (x_min, x_max)");

    SpatialGrid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_points = n_points;
    g.dx = (x_max - x_min) / static_cast<double>(n_points);
    g.dk = 2.0 * std::numbers::pi / (n_points * g.dx);

    // first node with x >= 0 (tolerate rounding when a node sits at the origin)
    g.split_index = static_cast<int>(std::ceil(-x_min / g.dx - 1e-9));
    if (g.split_index < 0) g.split_index = 0;
    if (g.split_index > n_points) g.split_index = n_points;

    g.k_values.resize(n_points);
    for (int j = 0; j < n_points; ++j) {
        const int jj = (j < n_points / 2) ? j : j - n_points;
        g.k_values[j] = g.dk * static_cast<double>(jj);
    }
    return g;
}

std::shared_ptr<const SpatialGrid> make_shared_grid(double x_min, double x_max, int n_points) {
    return std::make_shared<const SpatialGrid>(make_grid(x_min, x_max, n_points));
}

} // namespace ztoa
