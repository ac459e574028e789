#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgl/geometry.hpp"
#include "wgl/util.hpp"

namespace wgl {

// ---------------------------------------------------------------------------
// Report types and the constant ledger
// ---------------------------------------------------------------------------

inline constexpr double kReportTol = 1e-9;  // relative slack in `satisfied`

struct ReportRow {
    double parameter = 0.0;  // R or sigma
    double measured = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    bool untrusted = false;  // parameter exceeds what the window supports
};

inline bool bound_satisfied(double measured, double bound) {
    return measured <= bound * (1.0 + kReportTol) + 1e-300;
}

/// Constants of the estimate pipeline, each recorded with the formula that
/// produced it. C_alpha = 1 is the certified supremum of |alpha| on the closed
/// upper hemisphere for alpha = (x dy - y dx)/(1+z).
struct ConstantLedger {
    double c1 = 0.0;     // 2 sqrt(pi) (int H^2 dmu)^(1/2)
    double c2 = 0.0;     // 2 pi + C1
    double c_alpha = 1.0;
    double c3 = 0.0;     // int H^2 dmu over the window
    double c4 = 0.0;     // per-annulus constant, = C2
    double c5 = 0.0;     // 4 e^2 C4
};

inline ConstantLedger make_ledger(const GeometryBundle& b, int trim = 2) {
    ConstantLedger led;
    led.c3 = surface_integral(b, b.mean_curv * b.mean_curv, trim_mask(b.grid(), 0), trim);
    led.c1 = 2.0 * std::sqrt(M_PI) * std::sqrt(std::max(0.0, led.c3));
    led.c2 = 2.0 * M_PI + led.c1;
    led.c4 = led.c2;
    led.c5 = 4.0 * std::exp(2.0) * led.c4;
    return led;
}

// ---------------------------------------------------------------------------
// Ambient-ball masks
// ---------------------------------------------------------------------------

/// Ambient distance |X| = sqrt(x^2 + y^2 + u^2) of each surface point.
inline ScalarField ambient_radius(const GeometryBundle& b) {
    const Grid& g = b.grid();
    ScalarField rho(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j), u = b.u.at(i, j);
            rho.at(i, j) = std::sqrt(x * x + y * y + u * u);
        }
    return rho;
}

inline Mask ball_mask(const GeometryBundle& b, double radius) {
    const ScalarField rho = ambient_radius(b);
    Mask m;
    m.keep.resize(rho.values.size());
    for (std::size_t k = 0; k < rho.values.size(); ++k)
        m.keep[k] = rho.values[k] <= radius ? 1 : 0;
    return m;
}

/// True when the trimmed window still contains the projected disk r <= radius.
inline bool window_contains_disk(const Grid& g, double radius, int trim) {
    const double xlo = g.x(trim), xhi = g.x(g.nx - 1 - trim);
    const double ylo = g.y(trim), yhi = g.y(g.ny - 1 - trim);
    return xlo <= -radius && xhi >= radius && ylo <= -radius && yhi >= radius;
}

// ---------------------------------------------------------------------------
// Area growth
// ---------------------------------------------------------------------------

/// Measured |Sigma cap B(R)| against the quadratic bound C2 R^2.
inline std::vector<ReportRow> area_growth(const GeometryBundle& b, std::span<const double> radii,
                                          const ConstantLedger& led, int trim = 2) {
    std::vector<ReportRow> rows;
    rows.reserve(radii.size());
    for (double R : radii) {
        ReportRow row;
        row.parameter = R;
        row.untrusted = !window_contains_disk(b.grid(), R, trim);
        const Mask ball = mask_and(ball_mask(b, R), trim_mask(b.grid(), trim));
        const IntegralResult area = integrate(b.v, ball);  // int 1 dmu
        row.measured = area.value;
        row.bound = led.c2 * R * R;
        row.satisfied = bound_satisfied(row.measured, row.bound);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Calibration inequality chain
// ---------------------------------------------------------------------------

struct ChainLink {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

struct CalibrationChain {
    double radius = 0.0;
    double disk_area_discrete = 0.0;  // quadrature area of the masked disk
    double disk_area_exact = 0.0;     // pi R^2, the exact-area normalization
    double slab_term = 0.0;           // T1 = 2R int_{r<=R} |H| dxdy
    double holder_term = 0.0;         // T2 = 2R (int H^2)^(1/2) (discrete disk area)^(1/2)
    double holder_term_exact = 0.0;   // T2 with the exact (pi R^2)^(1/2) factor
    double weighted_term = 0.0;       // T3 = 2 sqrt(pi) R^2 (int H^2 v)^(1/2)
    double window_term = 0.0;         // T4 = 2 sqrt(pi) R^2 (int_window H^2 dmu)^(1/2)
    double area = 0.0;                // measured |Sigma cap B(R)|
    double area_bound = 0.0;          // 2 pi R^2 + T1
    std::vector<ChainLink> links;
    bool all_ok = true;
    int first_violation = -1;
};

/// Every intermediate of the slab/Hoelder/slope-factor/window chain. Each
/// asserted link is exact algebra or Cauchy-Schwarz on the same discrete
/// data, so the 1e-12 relative tolerance is purely for rounding: the Hoelder
/// link carries the discrete disk area (the pi R^2 normalization is reported
/// alongside and converges to it), the slope-factor link uses v >= 1
/// pointwise, the window link is domain monotonicity. The final link is the
/// calibration area bound with the ball relaxed to the slab.
inline CalibrationChain calibration_chain(const GeometryBundle& b, double R, int trim = 2) {
    CalibrationChain c;
    c.radius = R;
    const Grid& g = b.grid();
    const Mask disk =
        mask_and(make_mask(g, [R](double x, double y) { return x * x + y * y <= R * R; }),
                 trim_mask(g, trim));
    if (disk.empty()) throw std::invalid_argument("calibration_chain: disk mask empty");

    const ScalarField one(g, 1.0);
    const ScalarField absH = map(b.mean_curv, [](double h) { return std::abs(h); });
    const ScalarField h2 = b.mean_curv * b.mean_curv;

    c.disk_area_discrete = integrate(one, disk).value;
    c.disk_area_exact = M_PI * R * R;
    const double int_absH_flat = integrate(absH, disk).value;
    const double int_h2_flat = integrate(h2, disk).value;
    const double int_h2_weighted = integrate(h2 * b.v, disk).value;
    const double int_h2_window = surface_integral(b, h2, trim_mask(g, 0), trim);

    c.slab_term = 2.0 * R * int_absH_flat;
    c.holder_term = 2.0 * R * std::sqrt(int_h2_flat) * std::sqrt(c.disk_area_discrete);
    c.holder_term_exact = 2.0 * R * std::sqrt(int_h2_flat) * std::sqrt(c.disk_area_exact);
    c.weighted_term = 2.0 * std::sqrt(M_PI) * R * R * std::sqrt(int_h2_weighted);
    c.window_term = 2.0 * std::sqrt(M_PI) * R * R * std::sqrt(std::max(0.0, int_h2_window));

    const Mask ball = mask_and(ball_mask(b, R), trim_mask(g, trim));
    c.area = integrate(b.v, ball).value;
    c.area_bound = 2.0 * M_PI * R * R + c.slab_term;

    auto link = [&](const std::string& name, double lhs, double rhs) {
        const bool ok = lhs <= rhs * (1.0 + 1e-12) + 1e-300;
        c.links.push_back({name, lhs, rhs, ok});
        if (!ok && c.first_violation < 0) c.first_violation = int(c.links.size()) - 1;
        c.all_ok = c.all_ok && ok;
    };
    link("holder", c.slab_term, c.holder_term);
    link("slope_factor", c.holder_term_exact, c.weighted_term);
    link("window", c.weighted_term, c.window_term);
    link("quadratic_growth", c.area, c.area_bound);
    return c;
}

// ---------------------------------------------------------------------------
// Logarithmic cutoff (eta_sigma)
// ---------------------------------------------------------------------------

struct CutoffSpec {
    double sigma = 0.0;
    ScalarField eta;                   // sampled on ambient radius
    ScalarField grad_tangential_sq;    // |grad_Sigma eta|^2 via stencils
    ScalarField bound;                 // analytic 2/(|X| log sigma), for comparison
    bool window_ok = true;
};

inline double eta_sigma_value(double rho, double sigma) {
    const double rt = std::sqrt(sigma);
    if (rho <= rt) return 1.0;
    if (rho > sigma) return 0.0;
    return 2.0 - 2.0 * std::log(rho) / std::log(sigma);
}

/// Radially symmetric cutoff: 1 inside |X| <= sqrt(sigma), log-linear decay to
/// 0 at |X| = sigma. Tangential gradient computed from the sampled field, with
/// the analytic bound attached.
inline CutoffSpec eta_sigma(const GeometryBundle& b, double sigma) {
    if (!(sigma > 1.0)) throw std::invalid_argument("eta_sigma: sigma must exceed 1");
    CutoffSpec spec;
    spec.sigma = sigma;
    const ScalarField rho = ambient_radius(b);
    spec.eta = map(rho, [sigma](double r) { return eta_sigma_value(r, sigma); });
    const VectorField de = gradient(spec.eta);
    spec.grad_tangential_sq = cometric_norm_sq(b, de);
    // the bound applies on the annulus; clamping below sqrt(sigma) keeps the
    // field finite where eta is constant anyway
    const double logs = std::log(sigma);
    const double rt = std::sqrt(sigma);
    spec.bound = map(rho, [logs, rt](double r) { return 2.0 / (std::max(r, rt) * logs); });
    spec.window_ok = window_contains_disk(b.grid(), sigma, 0);
    return spec;
}

/// Dirichlet energy of the cutoff against the dyadic-sum bound C5 / log sigma.
inline ReportRow cutoff_energy(const GeometryBundle& b, const CutoffSpec& spec,
                               const ConstantLedger& led, int trim = 2) {
    ReportRow row;
    row.parameter = spec.sigma;
    row.measured = surface_integral(b, spec.grad_tangential_sq, trim_mask(b.grid(), 0), trim);
    row.bound = led.c5 / std::log(spec.sigma);
    row.satisfied = bound_satisfied(row.measured, row.bound);
    row.untrusted = !spec.window_ok;
    return row;
}

// ---------------------------------------------------------------------------
// Gauss-map pullback and Stokes
// ---------------------------------------------------------------------------

/// Pullback n*alpha of the concrete primitive alpha = (x dy - y dx)/(1+z) on
/// the upper hemisphere (d alpha = area form); components via stencil
/// derivatives of the Gauss map.
inline VectorField alpha_pullback(const GeometryBundle& b) {
    const VectorField dnx = gradient(b.n_x);
    const VectorField dny = gradient(b.n_y);
    const ScalarField denom = map(b.n_z, [](double z) { return 1.0 + z; });
    return {(b.n_x * dny.x - b.n_y * dnx.x) / denom, (b.n_x * dny.y - b.n_y * dnx.y) / denom};
}

struct StokesReport {
    double lhs = 0.0;          // int eta^2 K dmu
    double rhs = 0.0;          // -2 int eta (d eta ^ n*alpha)
    double discrepancy = 0.0;  // |lhs - rhs|
    double bound = 0.0;        // 4 C_alpha (int eta^2 |A|^2 dmu)^(1/2) (int |grad eta|^2 dmu)^(1/2)
    bool bound_ok = false;
    double slack = 0.0;        // bound - |lhs|
};

/// Discrete Stokes identity on compactly supported eta plus the
/// Cauchy-Schwarz bound through the pullback.
inline StokesReport stokes_check(const GeometryBundle& b, const ScalarField& eta,
                                 double c_alpha = 1.0, int trim = 2) {
    require_same_grid(b.grid(), eta.grid, "stokes_check");
    const Mask interior = trim_mask(b.grid(), trim);
    for (std::size_t k = 0; k < eta.values.size(); ++k)
        if (!interior.keep[k] && eta.values[k] != 0.0)
            throw std::invalid_argument("stokes_check: eta support touches the margin");

    StokesReport rep;
    const ScalarField eta2 = eta * eta;
    rep.lhs = surface_integral(b, eta2 * b.gauss_curv, interior);
    const VectorField de = gradient(eta);
    const VectorField na = alpha_pullback(b);
    const ScalarField wedge = de.x * na.y - de.y * na.x;  // d eta ^ n*alpha coefficient
    rep.rhs = -2.0 * integrate(eta * wedge, interior).value;
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);

    const double a2_weighted =
        std::max(0.0, surface_integral(b, eta2 * b.a2, interior));
    const double dirichlet = std::max(0.0, surface_integral(b, cometric_norm_sq(b, de), interior));
    rep.bound = 4.0 * c_alpha * std::sqrt(a2_weighted) * std::sqrt(dirichlet);
    rep.bound_ok = bound_satisfied(std::abs(rep.lhs), rep.bound);
    rep.slack = rep.bound - std::abs(rep.lhs);
    return rep;
}

// ---------------------------------------------------------------------------
// Self-improving bound ("Solving this inequality yields")
// ---------------------------------------------------------------------------

/// Upper solution of x^2 <= 8 b x + c, relaxed via sqrt(a + b) <= sqrt(a)
/// + sqrt(b): x <= 4b + sqrt(16 b^2 + c) <= 8b + sqrt(c).
inline double self_improved_bound(double b, double c) { return 8.0 * b + std::sqrt(std::max(0.0, c)); }

struct BoundChain {
    double dirichlet_energy = 0.0;  // int |grad eta|^2 dmu
    double a2_weighted = 0.0;       // int eta^2 |A|^2 dmu
    double a2_bound = 0.0;          // (8 C_a sqrt(E) + sqrt(C3))^2 via the self-improved root
    double k_weighted = 0.0;        // |int eta^2 K dmu|
    double k_bound = 0.0;           // 4 C_a (8 C_a sqrt(E) + sqrt(C3)) sqrt(E)
    bool a2_ok = false;
    bool k_ok = false;
};

inline BoundChain bound_chain(const GeometryBundle& b, const CutoffSpec& spec,
                              const ConstantLedger& led, int trim = 2) {
    BoundChain out;
    const Mask interior = trim_mask(b.grid(), trim);
    out.dirichlet_energy =
        std::max(0.0, surface_integral(b, spec.grad_tangential_sq, interior));
    const ScalarField eta2 = spec.eta * spec.eta;
    out.a2_weighted = surface_integral(b, eta2 * b.a2, interior);
    out.k_weighted = std::abs(surface_integral(b, eta2 * b.gauss_curv, interior));
    const double root = self_improved_bound(led.c_alpha * std::sqrt(out.dirichlet_energy), led.c3);
    out.a2_bound = root * root;
    out.k_bound = 4.0 * led.c_alpha * root * std::sqrt(out.dirichlet_energy);
    out.a2_ok = bound_satisfied(out.a2_weighted, out.a2_bound);
    out.k_ok = bound_satisfied(out.k_weighted, out.k_bound);
    return out;
}

// ---------------------------------------------------------------------------
// Total Gauss curvature
// ---------------------------------------------------------------------------

struct TotalCurvature {
    std::vector<ReportRow> rows;      // measured int eta_s^2 K dmu per sigma (signed measured)
    double limit_estimate = 0.0;      // intercept of measured ~ L + c / sqrt(log sigma)
    double fit_coefficient = 0.0;
    double direct_total = 0.0;        // int K dmu over the trimmed window
};

/// Sweep of int eta_sigma^2 K dmu. The limit is extrapolated by fitting
/// measured ~ L + c / sqrt(log sigma); since the model is the bound's decay
/// envelope (the data usually converges faster), the fit runs over the
/// asymptotic tail — the last half of the rows, at least two — where the
/// envelope is descriptive rather than wildly conservative.
inline TotalCurvature total_curvature(const GeometryBundle& b, std::span<const double> sigmas,
                                      const ConstantLedger& led, int trim = 2) {
    if (sigmas.size() < 2) throw std::invalid_argument("total_curvature: need at least 2 sigmas");
    TotalCurvature out;
    std::vector<double> abscissa, measured;
    for (double s : sigmas) {
        const CutoffSpec spec = eta_sigma(b, s);
        const BoundChain bc = bound_chain(b, spec, led, trim);
        ReportRow row;
        row.parameter = s;
        const ScalarField eta2 = spec.eta * spec.eta;
        row.measured = surface_integral(b, eta2 * b.gauss_curv, trim_mask(b.grid(), 0), trim);
        row.bound = bc.k_bound;
        row.satisfied = bound_satisfied(std::abs(row.measured), row.bound);
        row.untrusted = !spec.window_ok;
        out.rows.push_back(row);
        abscissa.push_back(1.0 / std::sqrt(std::log(s)));
        measured.push_back(row.measured);
    }
    const std::size_t tail = std::max<std::size_t>(2, sigmas.size() / 2);
    const std::size_t from = sigmas.size() - tail;
    const LinearFit fit =
        fit_linear(std::span(abscissa).subspan(from), std::span(measured).subspan(from));
    out.limit_estimate = fit.intercept;
    out.fit_coefficient = fit.slope;
    out.direct_total = surface_integral(b, b.gauss_curv, trim_mask(b.grid(), 0), trim);
    return out;
}

}  // namespace wgl
