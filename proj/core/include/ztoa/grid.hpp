#pragma once

#include <memory>
#include <vector>

namespace ztoa {

/// Uniform position grid with its conjugate momentum grid.
///
/// Internal natural units (hbar = m = 1) throughout. The momentum grid
/// follows the FFT frequency ordering: k[j] = j*dk for j < n/2 and
/// (j-n)*dk for j >= n/2.  x = 0 is the arrival position; split_index
/// is the first node with x >= 0 and the "x > 0 region" means indices
/// >= split_index (Theta(0) = 1 convention).
struct SpatialGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;
    double dx = 0.0;
    double dk = 0.0;
    int split_index = 0;
    std::vector<double> k_values;

    double x(int i) const { return x_min + dx * static_cast<double>(i); }
};

/// Build a grid. n_points must be a power of two >= 16 and the origin
/// must lie strictly inside (x_min, x_max).
SpatialGrid make_grid(double x_min, double x_max, int n_points);

std::shared_ptr<const SpatialGrid> make_shared_grid(double x_min, double x_max, int n_points);

bool is_power_of_two(int n);

} // namespace ztoa
