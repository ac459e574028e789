#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgl/parallel.hpp"

namespace wgl {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

enum class BoundaryMode : std::uint8_t { periodic, one_sided };

inline const char* to_string(BoundaryMode m) {
    return m == BoundaryMode::periodic ? "periodic" : "one_sided";
}

inline BoundaryMode boundary_mode_from(const std::string& s) {
    if (s == "periodic") return BoundaryMode::periodic;
    if (s == "one_sided") return BoundaryMode::one_sided;
    throw std::invalid_argument("unknown boundary mode: " + s);
}

/// Uniform grid over [x0, x0+(nx-1)h] x [y0, y0+(ny-1)h] with equal spacing in
/// both axes. In periodic mode the sample at index nx wraps to index 0, so the
/// period is nx*h.
struct Grid {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    BoundaryMode boundary = BoundaryMode::one_sided;

    double x(int i) const { return x0 + i * h; }
    double y(int j) const { return y0 + j * h; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

    bool operator==(const Grid&) const = default;
};

inline void validate(const Grid& g) {
    if (g.nx < 5 || g.ny < 5)
        throw std::invalid_argument("grid too small: need nx, ny >= 5 (got " +
                                    std::to_string(g.nx) + "x" + std::to_string(g.ny) + ")");
    if (!(g.h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// Scalar samples on a grid, row-major with y outer and x inner.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {
        validate(g);
    }

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

struct VectorField {
    ScalarField x;
    ScalarField y;
};

struct HessianFields {
    ScalarField xx;
    ScalarField xy;  // equal to yx by construction
    ScalarField yy;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

inline void assert_finite(const ScalarField& f, const char* what) {
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite value in ") + what);
}

namespace detail {
// Verification hook: scales the interior first-derivative coefficient so the
// convergence watchdog in `verify` has a deliberate defect to catch.
inline double& stencil_scale() {
    static double s = 1.0;
    return s;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Elementwise algebra
// ---------------------------------------------------------------------------

template <class Fn>
inline ScalarField map(const ScalarField& f, Fn&& fn) {
    ScalarField out(f.grid);
    const int ny = f.grid.ny, nx = f.grid.nx;
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j)
            for (int i = 0; i < nx; ++i) out.at(i, j) = fn(f.at(i, j));
    });
    return out;
}

template <class Fn>
inline ScalarField zip(const ScalarField& a, const ScalarField& b, Fn&& fn) {
    require_same_grid(a.grid, b.grid, "zip");
    ScalarField out(a.grid);
    const int ny = a.grid.ny, nx = a.grid.nx;
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j)
            for (int i = 0; i < nx; ++i) out.at(i, j) = fn(a.at(i, j), b.at(i, j));
    });
    return out;
}

/// Builds a field from a pointwise function of the coordinates.
template <class Fn>
inline ScalarField tabulate(const Grid& g, Fn&& fn) {
    ScalarField out(g);
    parallel_for(g.ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j)
            for (int i = 0; i < g.nx; ++i) out.at(i, j) = fn(g.x(i), g.y(j));
    });
    return out;
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double u, double v) { return u + v; });
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double u, double v) { return u - v; });
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double u, double v) { return u * v; });
}
inline ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double u, double v) { return u / v; });
}
inline ScalarField operator*(double s, const ScalarField& f) {
    return map(f, [s](double v) { return s * v; });
}
inline ScalarField operator*(const ScalarField& f, double s) { return s * f; }
inline ScalarField operator-(const ScalarField& f) { return -1.0 * f; }
inline ScalarField operator+(const ScalarField& f, double s) {
    return map(f, [s](double v) { return v + s; });
}

// ---------------------------------------------------------------------------
// Finite-difference stencils (second order)
// ---------------------------------------------------------------------------

/// d/dx by central differences; boundary columns wrap (periodic) or use the
/// second-order one-sided stencil.
inline ScalarField deriv_x(const ScalarField& f) {
    const Grid& g = f.grid;
    validate(g);
    ScalarField out(g);
    const int nx = g.nx, ny = g.ny;
    const double inv2h = 1.0 / (2.0 * g.h);
    const double scale = detail::stencil_scale();
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j) {
            const double* row = &f.values[g.index(0, j)];
            double* o = &out.values[g.index(0, j)];
            for (int i = 1; i + 1 < nx; ++i) o[i] = scale * (row[i + 1] - row[i - 1]) * inv2h;
            if (g.boundary == BoundaryMode::periodic) {
                o[0] = scale * (row[1] - row[nx - 1]) * inv2h;
                o[nx - 1] = scale * (row[0] - row[nx - 2]) * inv2h;
            } else {
                o[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) * inv2h;
                o[nx - 1] = (3.0 * row[nx - 1] - 4.0 * row[nx - 2] + row[nx - 3]) * inv2h;
            }
        }
    });
    return out;
}

inline ScalarField deriv_y(const ScalarField& f) {
    const Grid& g = f.grid;
    validate(g);
    ScalarField out(g);
    const int nx = g.nx, ny = g.ny;
    const double inv2h = 1.0 / (2.0 * g.h);
    const double scale = detail::stencil_scale();
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j) {
            double* o = &out.values[g.index(0, j)];
            if (j >= 1 && j + 1 < ny) {
                const double* up = &f.values[g.index(0, j + 1)];
                const double* dn = &f.values[g.index(0, j - 1)];
                for (int i = 0; i < nx; ++i) o[i] = scale * (up[i] - dn[i]) * inv2h;
            } else if (g.boundary == BoundaryMode::periodic) {
                const double* up = &f.values[g.index(0, (j + 1) % ny)];
                const double* dn = &f.values[g.index(0, (j + ny - 1) % ny)];
                for (int i = 0; i < nx; ++i) o[i] = scale * (up[i] - dn[i]) * inv2h;
            } else if (j == 0) {
                const double* r0 = &f.values[g.index(0, 0)];
                const double* r1 = &f.values[g.index(0, 1)];
                const double* r2 = &f.values[g.index(0, 2)];
                for (int i = 0; i < nx; ++i) o[i] = (-3.0 * r0[i] + 4.0 * r1[i] - r2[i]) * inv2h;
            } else {
                const double* r0 = &f.values[g.index(0, ny - 1)];
                const double* r1 = &f.values[g.index(0, ny - 2)];
                const double* r2 = &f.values[g.index(0, ny - 3)];
                for (int i = 0; i < nx; ++i) o[i] = (3.0 * r0[i] - 4.0 * r1[i] + r2[i]) * inv2h;
            }
        }
    });
    return out;
}

inline ScalarField deriv_xx(const ScalarField& f) {
    const Grid& g = f.grid;
    validate(g);
    ScalarField out(g);
    const int nx = g.nx, ny = g.ny;
    const double invh2 = 1.0 / (g.h * g.h);
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j) {
            const double* row = &f.values[g.index(0, j)];
            double* o = &out.values[g.index(0, j)];
            for (int i = 1; i + 1 < nx; ++i) o[i] = (row[i + 1] - 2.0 * row[i] + row[i - 1]) * invh2;
            if (g.boundary == BoundaryMode::periodic) {
                o[0] = (row[1] - 2.0 * row[0] + row[nx - 1]) * invh2;
                o[nx - 1] = (row[0] - 2.0 * row[nx - 1] + row[nx - 2]) * invh2;
            } else {
                o[0] = (2.0 * row[0] - 5.0 * row[1] + 4.0 * row[2] - row[3]) * invh2;
                o[nx - 1] =
                    (2.0 * row[nx - 1] - 5.0 * row[nx - 2] + 4.0 * row[nx - 3] - row[nx - 4]) * invh2;
            }
        }
    });
    return out;
}

inline ScalarField deriv_yy(const ScalarField& f) {
    const Grid& g = f.grid;
    validate(g);
    ScalarField out(g);
    const int nx = g.nx, ny = g.ny;
    const double invh2 = 1.0 / (g.h * g.h);
    parallel_for(ny, [&](int jb, int je) {
        for (int j = jb; j < je; ++j) {
            double* o = &out.values[g.index(0, j)];
            auto row = [&](int jj) { return &f.values[g.index(0, jj)]; };
            if (j >= 1 && j + 1 < ny) {
                const double *up = row(j + 1), *md = row(j), *dn = row(j - 1);
                for (int i = 0; i < nx; ++i) o[i] = (up[i] - 2.0 * md[i] + dn[i]) * invh2;
            } else if (g.boundary == BoundaryMode::periodic) {
                const double *up = row((j + 1) % ny), *md = row(j), *dn = row((j + ny - 1) % ny);
                for (int i = 0; i < nx; ++i) o[i] = (up[i] - 2.0 * md[i] + dn[i]) * invh2;
            } else if (j == 0) {
                const double *r0 = row(0), *r1 = row(1), *r2 = row(2), *r3 = row(3);
                for (int i = 0; i < nx; ++i)
                    o[i] = (2.0 * r0[i] - 5.0 * r1[i] + 4.0 * r2[i] - r3[i]) * invh2;
            } else {
                const double *r0 = row(ny - 1), *r1 = row(ny - 2), *r2 = row(ny - 3), *r3 = row(ny - 4);
                for (int i = 0; i < nx; ++i)
                    o[i] = (2.0 * r0[i] - 5.0 * r1[i] + 4.0 * r2[i] - r3[i]) * invh2;
            }
        }
    });
    return out;
}

inline VectorField gradient(const ScalarField& f) { return {deriv_x(f), deriv_y(f)}; }

/// Mixed derivative taken as d/dy of d/dx; the two orders commute exactly, so
/// a single field serves as both xy and yx.
inline HessianFields hessian(const ScalarField& f) {
    return {deriv_xx(f), deriv_y(deriv_x(f)), deriv_yy(f)};
}

inline ScalarField divergence(const VectorField& v) {
    require_same_grid(v.x.grid, v.y.grid, "divergence");
    return deriv_x(v.x) + deriv_y(v.y);
}

/// Coefficient of the exterior derivative of a 1-form: d(w) = curl(w) dx^dy.
inline ScalarField curl(const VectorField& w) {
    require_same_grid(w.x.grid, w.y.grid, "curl");
    return deriv_x(w.y) - deriv_y(w.x);
}

// ---------------------------------------------------------------------------
// Masks and quadrature
// ---------------------------------------------------------------------------

struct Mask {
    std::vector<std::uint8_t> keep;

    bool empty() const {
        for (auto k : keep)
            if (k) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto k : keep) n += k ? 1 : 0;
        return n;
    }
};

inline Mask make_mask(const Grid& g, const std::function<bool(double, double)>& pred) {
    Mask m;
    m.keep.resize(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) m.keep[g.index(i, j)] = pred(g.x(i), g.y(j)) ? 1 : 0;
    return m;
}

/// Interior mask excluding `cells` rows/columns at each edge (0 keeps all).
inline Mask trim_mask(const Grid& g, int cells) {
    Mask m;
    m.keep.assign(g.size(), 0);
    for (int j = cells; j < g.ny - cells; ++j)
        for (int i = cells; i < g.nx - cells; ++i) m.keep[g.index(i, j)] = 1;
    return m;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
    Mask m;
    m.keep.resize(a.keep.size());
    for (std::size_t k = 0; k < a.keep.size(); ++k) m.keep[k] = (a.keep[k] && b.keep[k]) ? 1 : 0;
    return m;
}

/// Fixed-tree pairwise sum; bit-stable for a given input regardless of thread
/// count.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct IntegralResult {
    double value = 0.0;
    bool empty_mask = false;
};

namespace detail {
inline double trapezoid_weight(int i, int n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }
}  // namespace detail

/// Tensor-product trapezoid rule over the whole window.
inline double integrate(const ScalarField& f) {
    const Grid& g = f.grid;
    std::vector<double> contrib(g.size());
    const double cell = g.h * g.h;
    for (int j = 0; j < g.ny; ++j) {
        const double wy = detail::trapezoid_weight(j, g.ny);
        for (int i = 0; i < g.nx; ++i)
            contrib[g.index(i, j)] = f.at(i, j) * (wy * detail::trapezoid_weight(i, g.nx) * cell);
    }
    return pairwise_sum(contrib);
}

/// Masked trapezoid rule; masked-out points contribute zero (weights are not
/// renormalized). An empty mask yields 0 with the warning flag set.
inline IntegralResult integrate(const ScalarField& f, const Mask& m) {
    const Grid& g = f.grid;
    if (m.keep.size() != g.size()) throw std::invalid_argument("mask size mismatch in integrate");
    if (m.empty()) return {0.0, true};
    std::vector<double> contrib(g.size(), 0.0);
    const double cell = g.h * g.h;
    for (int j = 0; j < g.ny; ++j) {
        const double wy = detail::trapezoid_weight(j, g.ny);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            if (m.keep[k]) contrib[k] = f.at(i, j) * (wy * detail::trapezoid_weight(i, g.nx) * cell);
        }
    }
    return {pairwise_sum(contrib), false};
}

inline double sup_abs(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

inline double sup_abs(const ScalarField& f, const Mask& m) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        if (m.keep[k]) s = std::max(s, std::abs(f.values[k]));
    return s;
}

}  // namespace wgl
