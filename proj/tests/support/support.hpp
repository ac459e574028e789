#pragma once

#include <cmath>
#include <vector>

#include "wgl/field.hpp"

namespace wgl::test {

inline Grid grid_square(double lo, double hi, int n, BoundaryMode mode = BoundaryMode::one_sided) {
    Grid g;
    g.nx = g.ny = n;
    g.h = (hi - lo) / (n - 1);
    g.x0 = g.y0 = lo;
    g.boundary = mode;
    return g;
}

/// n samples of one period starting at 0; the wrap neighbor of the last
/// sample is the first.
inline Grid grid_periodic(double period, int n) {
    Grid g;
    g.nx = g.ny = n;
    g.h = period / n;
    g.x0 = g.y0 = 0.0;
    g.boundary = BoundaryMode::periodic;
    return g;
}

inline Mask disk_mask(const Grid& g, double radius) {
    return make_mask(g, [radius](double x, double y) { return x * x + y * y <= radius * radius; });
}

inline Mask annulus_mask(const Grid& g, double r0, double r1) {
    return make_mask(g, [r0, r1](double x, double y) {
        const double r2 = x * x + y * y;
        return r2 >= r0 * r0 && r2 <= r1 * r1;
    });
}

/// log2 error ratios between successive refinement levels.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
    std::vector<double> orders;
    for (std::size_t k = 1; k < errors.size(); ++k)
        orders.push_back(std::log2(errors[k - 1] / errors[k]));
    return orders;
}

/// Area of the spherical zone of a radius-R sphere over the disk r <= rho.
inline double zone_area(double R, double rho) {
    return 2.0 * M_PI * R * (R - std::sqrt(R * R - rho * rho));
}

}  // namespace wgl::test
