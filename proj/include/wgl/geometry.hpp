#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wgl/field.hpp"

namespace wgl {

// ---------------------------------------------------------------------------
// GeometryBundle
// ---------------------------------------------------------------------------

/// All first-order geometric quantities of the graph z = u(x,y) on one grid.
/// The normal has positive z-component, n = (-ux, -uy, 1)/v, so the Gauss map
/// lands in the open upper hemisphere, and H = div(Du/v) keeps its sign (the
/// upward-oriented sphere cap has H = -2/R).
struct GeometryBundle {
    ScalarField u;
    VectorField du;
    ScalarField v;           // slope factor sqrt(1+|Du|^2); also the area density
    ScalarField mean_curv;   // H
    ScalarField gauss_curv;  // K
    ScalarField a2;          // |A|^2 = H^2 - 2K, kept unclipped
    ScalarField n_x, n_y, n_z;
    double a2_min = 0.0;     // most negative discrete |A|^2 value (diagnostic)

    const Grid& grid() const { return u.grid; }
    const ScalarField& area_density() const { return v; }
};

inline GeometryBundle build_bundle(const ScalarField& u) {
    validate(u.grid);
    assert_finite(u, "build_bundle input");
    GeometryBundle b;
    b.u = u;
    b.du = gradient(u);
    b.v = zip(b.du.x, b.du.y, [](double p, double q) { return std::sqrt(1.0 + p * p + q * q); });
    b.mean_curv = divergence({b.du.x / b.v, b.du.y / b.v});
    const HessianFields d2 = hessian(u);
    const ScalarField det = d2.xx * d2.yy - d2.xy * d2.xy;
    const ScalarField v4 = b.v * b.v * b.v * b.v;
    b.gauss_curv = det / v4;
    b.a2 = b.mean_curv * b.mean_curv - 2.0 * b.gauss_curv;
    b.a2_min = 0.0;
    for (double a : b.a2.values) b.a2_min = std::min(b.a2_min, a);
    b.n_x = -1.0 * (b.du.x / b.v);
    b.n_y = -1.0 * (b.du.y / b.v);
    b.n_z = map(b.v, [](double vv) { return 1.0 / vv; });
    assert_finite(b.mean_curv, "mean curvature");
    assert_finite(b.gauss_curv, "gauss curvature");
    return b;
}

// ---------------------------------------------------------------------------
// Laplace-Beltrami and surface quadrature
// ---------------------------------------------------------------------------

/// (1/v) div((v I - Du⊗Du/v) grad f), composed from the first-order stencils.
inline ScalarField laplace_beltrami(const GeometryBundle& b, const ScalarField& f) {
    require_same_grid(b.grid(), f.grid, "laplace_beltrami");
    const VectorField df = gradient(f);
    const ScalarField proj = (b.du.x * df.x + b.du.y * df.y) / b.v;
    const VectorField w{b.v * df.x - b.du.x * proj, b.v * df.y - b.du.y * proj};
    return divergence(w) / b.v;
}

/// int f dmu over the window: trapezoid quadrature of f*v.
inline double surface_integral(const GeometryBundle& b, const ScalarField& f) {
    require_same_grid(b.grid(), f.grid, "surface_integral");
    return integrate(f * b.v);
}

/// Masked version with an optional trim margin; throws on an empty mask.
inline double surface_integral(const GeometryBundle& b, const ScalarField& f, const Mask& m,
                               int trim = 0) {
    require_same_grid(b.grid(), f.grid, "surface_integral");
    const Mask eff = trim > 0 ? mask_and(m, trim_mask(b.grid(), trim)) : m;
    const IntegralResult r = integrate(f * b.v, eff);
    if (r.empty_mask) throw std::invalid_argument("surface_integral: empty mask");
    return r.value;
}

/// Area |Sigma cap (mask)| = int 1 dmu.
inline double surface_area(const GeometryBundle& b, const Mask& m, int trim = 0) {
    const ScalarField one(b.grid(), 1.0);
    return surface_integral(b, one, m, trim);
}

/// Squared norm of a 1-form in the induced cometric,
/// |w|_g^2 = g^{ij} w_i w_j = |w|^2 - (Du.w)^2 / v^2.
inline ScalarField cometric_norm_sq(const GeometryBundle& b, const VectorField& w) {
    require_same_grid(b.grid(), w.x.grid, "cometric_norm_sq");
    const ScalarField dot = b.du.x * w.x + b.du.y * w.y;
    return w.x * w.x + w.y * w.y - (dot * dot) / (b.v * b.v);
}

}  // namespace wgl
