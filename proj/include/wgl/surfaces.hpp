#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgl/field.hpp"
#include "wgl/jet.hpp"

namespace wgl {

// ---------------------------------------------------------------------------
// SurfaceSpec
// ---------------------------------------------------------------------------

struct CurvaturePair {
    double mean;   // H = div(Du/v)
    double gauss;  // K = det D2u / v^4
};

/// Optional closed-form knowledge about a catalog surface, used as an extra
/// cross-check on top of the generic derivative-based oracle.
struct AnalyticFacts {
    std::function<double(double, double)> mean_curvature;
    std::function<double(double, double)> gauss_curvature;
    bool minimal = false;  // H identically zero
    bool umbilic = false;  // H^2 == 4K identically
    std::optional<double> total_gauss_limit;  // lim of int K dmu over growing disks
};

struct Deriv2 {
    double u, ux, uy, uxx, uxy, uyy;
};

/// An analytic test surface: closed-form height together with closed-form
/// derivatives. `deriv2` is hand-coded; `jet` reproduces the same data (and
/// third/fourth order) by exact Taylor propagation of the closed form, so the
/// two paths cross-check each other. `eval` is finite everywhere — outside
/// `valid` the formula is clamped, and callers must mask those regions out of
/// any quantitative use.
struct SurfaceSpec {
    std::string name;
    std::map<std::string, double> params;
    int jet_order = 4;
    std::function<double(double, double)> eval;
    std::function<Deriv2(double, double)> deriv2;
    std::function<Jet4(double, double)> jet;
    std::function<bool(double, double)> valid;
    AnalyticFacts facts;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

inline SurfaceSpec make_plane(double a, double b, double c) {
    SurfaceSpec s;
    s.name = "plane";
    s.params = {{"a", a}, {"b", b}, {"c", c}};
    s.eval = [=](double x, double y) { return a * x + b * y + c; };
    s.deriv2 = [=](double x, double y) { return Deriv2{a * x + b * y + c, a, b, 0.0, 0.0, 0.0}; };
    s.jet = [=](double x, double y) { return a * jet_x(x) + b * jet_y(y) + c; };
    s.valid = [](double, double) { return true; };
    s.facts.mean_curvature = [](double, double) { return 0.0; };
    s.facts.gauss_curvature = [](double, double) { return 0.0; };
    s.facts.minimal = true;
    s.facts.total_gauss_limit = 0.0;
    return s;
}

inline SurfaceSpec make_paraboloid() {
    SurfaceSpec s;
    s.name = "paraboloid";
    s.eval = [](double x, double y) { return 0.5 * (x * x + y * y); };
    s.deriv2 = [](double x, double y) {
        return Deriv2{0.5 * (x * x + y * y), x, y, 1.0, 0.0, 1.0};
    };
    s.jet = [](double x, double y) {
        const Jet4 X = jet_x(x), Y = jet_y(y);
        return 0.5 * (X * X + Y * Y);
    };
    s.valid = [](double, double) { return true; };
    s.facts.mean_curvature = [](double x, double y) {
        const double r2 = x * x + y * y;
        return (2.0 + r2) / std::pow(1.0 + r2, 1.5);
    };
    s.facts.gauss_curvature = [](double x, double y) {
        const double r2 = x * x + y * y;
        return 1.0 / ((1.0 + r2) * (1.0 + r2));
    };
    s.facts.total_gauss_limit = 2.0 * M_PI;  // Gauss image fills the open upper hemisphere
    return s;
}

/// Upper hemisphere piece u = sqrt(R^2 - r^2). Trusted for r < 0.95 R; the
/// formula itself stays genuine up to r < R, which gives stencils a buffer,
/// and is clamped to a small positive height beyond that.
inline SurfaceSpec make_sphere_cap(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere_cap: R must be positive");
    SurfaceSpec s;
    s.name = "sphere_cap";
    s.params = {{"R", radius}};
    const double R2 = radius * radius;
    const double floor2 = 1e-8 * R2;
    s.eval = [=](double x, double y) {
        return std::sqrt(std::max(R2 - x * x - y * y, floor2));
    };
    s.deriv2 = [=](double x, double y) {
        const double w2 = std::max(R2 - x * x - y * y, floor2);
        const double w = std::sqrt(w2), w3 = w2 * w;
        return Deriv2{w, -x / w, -y / w, -1.0 / w - x * x / w3, -x * y / w3, -1.0 / w - y * y / w3};
    };
    s.jet = [=](double x, double y) {
        const Jet4 X = jet_x(x), Y = jet_y(y);
        return sqrt(R2 - X * X - Y * Y);
    };
    s.valid = [=](double x, double y) { return x * x + y * y < 0.9025 * R2; };
    s.facts.mean_curvature = [=](double, double) { return -2.0 / radius; };
    s.facts.gauss_curvature = [=](double, double) { return 1.0 / R2; };
    s.facts.umbilic = true;
    return s;
}

/// Catenoid piece u = arccosh(r) for r > 1, trusted for r > 1.05. Inside the
/// unit disk the evaluation clamps r, which pins u near zero there.
inline SurfaceSpec make_catenoid() {
    SurfaceSpec s;
    s.name = "catenoid";
    const double rmin = 1.0 + 1e-9;
    s.eval = [=](double x, double y) {
        const double r = std::max(std::sqrt(x * x + y * y), rmin);
        return std::acosh(r);
    };
    s.deriv2 = [=](double x, double y) {
        const double r = std::max(std::sqrt(x * x + y * y), rmin);
        const double q2 = r * r * (r * r - 1.0);  // Q^2
        const double q = std::sqrt(q2), q3 = q2 * q;
        const double m = 2.0 * r * r - 1.0;
        return Deriv2{std::acosh(r), x / q, y / q,
                      1.0 / q - x * x * m / q3, -x * y * m / q3, 1.0 / q - y * y * m / q3};
    };
    s.jet = [](double x, double y) {
        const Jet4 X = jet_x(x), Y = jet_y(y);
        const Jet4 r = sqrt(X * X + Y * Y);
        return log(r + sqrt(r * r - 1.0));  // arccosh
    };
    s.valid = [](double x, double y) { return x * x + y * y > 1.1025; };  // r > 1.05
    s.facts.mean_curvature = [](double, double) { return 0.0; };
    s.facts.gauss_curvature = [](double x, double y) {
        const double r2 = x * x + y * y;
        return -1.0 / (r2 * r2);
    };
    s.facts.minimal = true;
    return s;
}

/// Gaussian bump u = A exp(-r^2/w^2); entire, asymptotically flat, H in L^2.
inline SurfaceSpec make_gaussian_bump(double amplitude, double width = 1.0) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
    SurfaceSpec s;
    s.name = "gaussian_bump";
    s.params = {{"A", amplitude}, {"w", width}};
    const double iw2 = 1.0 / (width * width);
    s.eval = [=](double x, double y) { return amplitude * std::exp(-(x * x + y * y) * iw2); };
    s.deriv2 = [=](double x, double y) {
        const double u = amplitude * std::exp(-(x * x + y * y) * iw2);
        const double gx = -2.0 * x * iw2, gy = -2.0 * y * iw2;
        return Deriv2{u, gx * u, gy * u, (gx * gx - 2.0 * iw2) * u, gx * gy * u,
                      (gy * gy - 2.0 * iw2) * u};
    };
    s.jet = [=](double x, double y) {
        const Jet4 X = jet_x(x), Y = jet_y(y);
        return amplitude * exp(-iw2 * (X * X + Y * Y));
    };
    s.valid = [](double, double) { return true; };
    s.facts.total_gauss_limit = 0.0;
    return s;
}

/// Gaussian bump on a tilted plane; breaks the rotational symmetry.
inline SurfaceSpec make_tilted_bump(double amplitude, double a, double b, double width = 1.0) {
    SurfaceSpec bump = make_gaussian_bump(amplitude, width);
    SurfaceSpec s;
    s.name = "tilted_bump";
    s.params = {{"A", amplitude}, {"a", a}, {"b", b}, {"w", width}};
    s.eval = [=, be = bump.eval](double x, double y) { return be(x, y) + a * x + b * y; };
    s.deriv2 = [=, bd = bump.deriv2](double x, double y) {
        Deriv2 d = bd(x, y);
        d.u += a * x + b * y;
        d.ux += a;
        d.uy += b;
        return d;
    };
    s.jet = [=, bj = bump.jet](double x, double y) {
        return bj(x, y) + a * jet_x(x) + b * jet_y(y);
    };
    s.valid = [](double, double) { return true; };
    s.facts.total_gauss_limit = 0.0;
    return s;
}

/// Seeded superposition of integer-frequency waves; periodic over a 2*pi
/// window. Used for randomized residual and refinement studies.
inline SurfaceSpec make_trig(std::uint64_t seed, double amplitude, int modes = 4, int kmax = 2) {
    SurfaceSpec s;
    s.name = "trig";
    s.params = {{"seed", double(seed)}, {"A", amplitude}, {"modes", double(modes)}};
    struct Wave {
        double a, kx, ky, phase;
    };
    std::vector<Wave> waves;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> freq(-kmax, kmax);
    while (static_cast<int>(waves.size()) < modes) {
        const int kx = freq(rng), ky = freq(rng);
        if (kx == 0 && ky == 0) continue;
        waves.push_back({(0.5 + unit(rng)) * amplitude / modes, double(kx), double(ky),
                         2.0 * M_PI * unit(rng)});
    }
    s.eval = [waves](double x, double y) {
        double u = 0.0;
        for (const auto& w : waves) u += w.a * std::cos(w.kx * x + w.ky * y + w.phase);
        return u;
    };
    s.deriv2 = [waves](double x, double y) {
        Deriv2 d{0, 0, 0, 0, 0, 0};
        for (const auto& w : waves) {
            const double t = w.kx * x + w.ky * y + w.phase;
            const double c = w.a * std::cos(t), sn = w.a * std::sin(t);
            d.u += c;
            d.ux -= w.kx * sn;
            d.uy -= w.ky * sn;
            d.uxx -= w.kx * w.kx * c;
            d.uxy -= w.kx * w.ky * c;
            d.uyy -= w.ky * w.ky * c;
        }
        return d;
    };
    s.jet = [waves](double x, double y) {
        const Jet4 X = jet_x(x), Y = jet_y(y);
        Jet4 u = jet_const(0.0);
        for (const auto& w : waves) u = u + w.a * cos(w.kx * X + w.ky * Y + w.phase);
        return u;
    };
    s.valid = [](double, double) { return true; };
    return s;
}

// ---------------------------------------------------------------------------
// Name-based construction (CLI entry point)
// ---------------------------------------------------------------------------

inline double param_or(const std::map<std::string, double>& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

inline SurfaceSpec make_surface(const std::string& name, const std::map<std::string, double>& p) {
    if (name == "plane")
        return make_plane(param_or(p, "a", 0.0), param_or(p, "b", 0.0), param_or(p, "c", 0.0));
    if (name == "paraboloid") return make_paraboloid();
    if (name == "sphere_cap") return make_sphere_cap(param_or(p, "R", 2.0));
    if (name == "catenoid") return make_catenoid();
    if (name == "gaussian_bump")
        return make_gaussian_bump(param_or(p, "A", 1.0), param_or(p, "w", 1.0));
    if (name == "tilted_bump")
        return make_tilted_bump(param_or(p, "A", 1.0), param_or(p, "a", 0.2), param_or(p, "b", 0.1),
                                param_or(p, "w", 1.0));
    if (name == "trig")
        return make_trig(static_cast<std::uint64_t>(param_or(p, "seed", 1.0)),
                         param_or(p, "A", 0.1), static_cast<int>(param_or(p, "modes", 4.0)),
                         static_cast<int>(param_or(p, "kmax", 2.0)));
    throw std::invalid_argument("unknown surface: " + name);
}

// ---------------------------------------------------------------------------
// Sampling and pointwise oracles
// ---------------------------------------------------------------------------

/// Strict sampling: every grid point must lie in the trusted domain.
inline ScalarField sample(const SurfaceSpec& s, const Grid& g) {
    validate(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!s.valid(g.x(i), g.y(j))) {
                std::ostringstream msg;
                msg << "surface '" << s.name << "' domain violation at (" << g.x(i) << ", "
                    << g.y(j) << ")";
                throw std::domain_error(msg.str());
            }
    ScalarField f = tabulate(g, s.eval);
    assert_finite(f, "sample");
    return f;
}

/// Clamped sampling: evaluates everywhere (finite by construction); callers
/// keep quantitative use inside the trusted domain via masks.
inline ScalarField sample_clamped(const SurfaceSpec& s, const Grid& g) {
    validate(g);
    ScalarField f = tabulate(g, s.eval);
    assert_finite(f, "sample_clamped");
    return f;
}

inline void require_valid(const SurfaceSpec& s, double x, double y) {
    if (!s.valid(x, y)) {
        std::ostringstream msg;
        msg << "surface '" << s.name << "' domain violation at (" << x << ", " << y << ")";
        throw std::domain_error(msg.str());
    }
}

/// Closed-form H and K through the hand-coded derivatives.
inline CurvaturePair exact_curvatures(const SurfaceSpec& s, double x, double y) {
    require_valid(s, x, y);
    const Deriv2 d = s.deriv2(x, y);
    const double v2 = 1.0 + d.ux * d.ux + d.uy * d.uy;
    const double v = std::sqrt(v2);
    const double mean =
        ((1.0 + d.uy * d.uy) * d.uxx - 2.0 * d.ux * d.uy * d.uxy + (1.0 + d.ux * d.ux) * d.uyy) /
        (v2 * v);
    const double gauss = (d.uxx * d.uyy - d.uxy * d.uxy) / (v2 * v2);
    return {mean, gauss};
}

/// Pointwise Willmore density H^2 v / 4 (the weight that integrates to the
/// energy in flat coordinates).
inline double exact_willmore_density(const SurfaceSpec& s, double x, double y) {
    const CurvaturePair c = exact_curvatures(s, x, y);
    const Deriv2 d = s.deriv2(x, y);
    const double v = std::sqrt(1.0 + d.ux * d.ux + d.uy * d.uy);
    return 0.25 * c.mean * c.mean * v;
}

/// Self-test: worst relative disagreement between hand-coded derivatives and
/// the jet evaluator over seeded points of the trusted domain.
inline double deriv_self_check(const SurfaceSpec& s, int samples, std::uint64_t seed,
                               double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(lo, hi);
    double worst = 0.0;
    int done = 0;
    int guard = 0;
    while (done < samples && guard++ < samples * 1000) {
        const double x = coord(rng), y = coord(rng);
        if (!s.valid(x, y)) continue;
        const Deriv2 d = s.deriv2(x, y);
        const Jet4 J = s.jet(x, y);
        const double entries[6] = {d.u, d.ux, d.uy, d.uxx, d.uxy, d.uyy};
        const double jets[6] = {J.deriv(0, 0), J.deriv(1, 0), J.deriv(0, 1),
                                J.deriv(2, 0), J.deriv(1, 1), J.deriv(0, 2)};
        for (int k = 0; k < 6; ++k) {
            const double scale = std::max({1.0, std::abs(entries[k]), std::abs(jets[k])});
            worst = std::max(worst, std::abs(entries[k] - jets[k]) / scale);
        }
        ++done;
    }
    if (done < samples) throw std::runtime_error("deriv_self_check: domain too sparse for sampling");
    return worst;
}

}  // namespace wgl
