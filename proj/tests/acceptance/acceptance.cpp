// Acceptance suite: one criterion per invocation (1..11, or "all").
// Prints one [PASS]/[FAIL] line per criterion plus the measurements behind
// the verdict; the exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "support/support.hpp"
#include "wgl/wgl.hpp"

using namespace wgl;
using namespace wgl::test;
namespace fs = std::filesystem;

namespace {

struct Log {
    std::ostringstream lines;
    template <class... Args>
    void add(const char* fmt, Args... args) {
        char buf[512];
        std::snprintf(buf, sizeof(buf), fmt, args...);
        lines << "  - " << buf << '\n';
    }
};

ScalarField cutoff_profile(const Grid& g, double amp, double r0) {
    return tabulate(g, [amp, r0](double x, double y) {
        const double s = (x * x + y * y) / (r0 * r0);
        return s < 1.0 ? amp * std::pow(1.0 - s, 3) : 0.0;
    });
}

// --------------------------------------------------------------------------
// 1. Operator convergence vs the closed-form oracle
// --------------------------------------------------------------------------

bool criterion_1(Log& log) {
    bool ok = true;
    const SurfaceSpec surfaces[] = {make_sphere_cap(2.0), make_gaussian_bump(1.0)};
    for (const auto& s : surfaces) {
        std::vector<double> err_h, err_k;
        for (int n : {193, 385, 769}) {  // h = 1/64, 1/128, 1/256 on [-1.5, 1.5]
            const Grid g = grid_square(-1.5, 1.5, n);
            const GeometryBundle b = build_bundle(sample_clamped(s, g));
            const Mask m = disk_mask(g, 1.2);
            double wh = 0.0, wk = 0.0;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    if (!m.keep[g.index(i, j)]) continue;
                    const CurvaturePair e = exact_curvatures(s, g.x(i), g.y(j));
                    wh = std::max(wh, std::abs(b.mean_curv.at(i, j) - e.mean));
                    wk = std::max(wk, std::abs(b.gauss_curv.at(i, j) - e.gauss));
                }
            err_h.push_back(wh);
            err_k.push_back(wk);
        }
        for (const auto& errs : {err_h, err_k})
            for (double order : observed_orders(errs)) ok = ok && order >= 1.9;
        ok = ok && err_h.back() < 1e-3;
        log.add("%s: H errors %.3e -> %.3e -> %.3e (orders %.2f, %.2f), K orders %.2f, %.2f",
                s.name.c_str(), err_h[0], err_h[1], err_h[2],
                observed_orders(err_h)[0], observed_orders(err_h)[1],
                observed_orders(err_k)[0], observed_orders(err_k)[1]);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 2. Residual vanishing on Willmore surfaces
// --------------------------------------------------------------------------

bool criterion_2(Log& log) {
    bool ok = true;

    // plane: exactly zero on the residual's 4-cell-trimmed interior, where the
    // dyadic slope keeps every central-stencil cancellation exact
    const Grid gp = grid_square(-1.0, 1.0, 33);
    const GeometryBundle plane = build_bundle(sample(make_plane(0.25, -0.5, 1.0), gp));
    const Mask pm = residual_mask(gp);
    const double plane_el = sup_abs(el_residual(plane), pm);
    const double plane_dv = sup_abs(div_residual(plane), pm);
    ok = ok && plane_el == 0.0 && plane_dv == 0.0;
    log.add("plane: sup|el| = %.1e, sup|div| = %.1e (exact zeros required)", plane_el, plane_dv);

    // sphere cap on [-1.5,1.5], catenoid on [-3,3]; fixed masks across h
    {
        std::vector<double> el_sup, dv_sup;
        for (int n : {193, 385, 769}) {
            const Grid g = grid_square(-1.5, 1.5, n);
            const GeometryBundle b = build_bundle(sample_clamped(make_sphere_cap(2.0), g));
            const Mask m = disk_mask(g, 1.2);
            el_sup.push_back(sup_abs(el_residual(b), m));
            dv_sup.push_back(sup_abs(div_residual(b), m));
        }
        ok = ok && el_sup[1] < 5e-2 && dv_sup[1] < 5e-2;
        for (const auto& v : {el_sup, dv_sup})
            for (double order : observed_orders(v)) ok = ok && order >= 1.9;
        log.add("sphere cap: sup|el| at h=1/128 %.3e (orders %.2f, %.2f)", el_sup[1],
                observed_orders(el_sup)[0], observed_orders(el_sup)[1]);
    }
    {
        std::vector<double> el_sup, dv_sup;
        for (int n : {385, 769, 1537}) {  // h = 1/64, 1/128, 1/256 on [-3,3]
            const Grid g = grid_square(-3.0, 3.0, n);
            const GeometryBundle b = build_bundle(sample_clamped(make_catenoid(), g));
            const Mask m = annulus_mask(g, 1.3, 2.5);
            el_sup.push_back(sup_abs(el_residual(b), m));
            dv_sup.push_back(sup_abs(div_residual(b), m));
        }
        ok = ok && el_sup[1] < 5e-2 && dv_sup[1] < 5e-2;
        for (const auto& v : {el_sup, dv_sup})
            for (double order : observed_orders(v)) ok = ok && order >= 1.9;
        log.add("catenoid: sup|el| at h=1/128 %.3e (orders %.2f, %.2f)", el_sup[1],
                observed_orders(el_sup)[0], observed_orders(el_sup)[1]);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 3. Residual equivalence: one consistent conversion factor
// --------------------------------------------------------------------------

bool criterion_3(Log& log) {
    bool ok = true;
    double worst_factor_dev = 0.0, worst_order = 1e9;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const SurfaceSpec s = make_trig(seed, 0.1);
        std::vector<double> dev;
        double factor = 0.0, dev_v = 0.0;
        for (int n : {96, 192, 384}) {
            Grid g;
            g.nx = g.ny = n;
            g.h = 2.0 * M_PI / n;
            g.boundary = BoundaryMode::periodic;
            const GeometryBundle b = build_bundle(sample(s, g));
            const ResidualEquivalence r = residual_equivalence(b);
            dev.push_back(r.sup_deviation);
            factor = r.fitted_factor;
            dev_v = r.sup_deviation_v;
        }
        worst_factor_dev = std::max(worst_factor_dev, std::abs(factor - 1.0));
        for (double order : observed_orders(dev)) worst_order = std::min(worst_order, order);
        ok = ok && std::abs(factor - 1.0) < 0.05;
        for (double order : observed_orders(dev)) ok = ok && order >= 1.9;
        // the v-scaled hypothesis is measurably wrong, factor 1 is right
        ok = ok && dev.back() < 0.05 * dev_v;
        log.add("seed %llu: fitted factor %.6f, sup|div-el| %.2e (vs sup|div-v el| %.2e)",
                (unsigned long long)seed, factor, dev.back(), dev_v);
    }
    log.add("worst |factor-1| = %.2e, worst order = %.2f (symbolic oracle: factor = 1)",
            worst_factor_dev, worst_order);
    return ok;
}

// --------------------------------------------------------------------------
// 4. Gradient fidelity
// --------------------------------------------------------------------------

bool criterion_4(Log& log) {
    const Grid g = grid_square(-2.0, 2.0, 513);  // h = 1/128
    const ScalarField u = sample(make_gaussian_bump(1.0), g);
    bool ok = true;
    for (int pair = 0; pair < 3; ++pair) {
        const ScalarField phi = cutoff_profile(g, 0.3 + 0.1 * pair, 1.2 + 0.1 * pair);
        const GradientCheck gc = gradient_check(u, phi, 1e-4);
        ok = ok && gc.mismatch < 1e-3 && gc.sign == 1;
        log.add("pair %d: mismatch %.3e, sign %+d (frozen variation scale %.1f)", pair,
                gc.mismatch, gc.sign, kFirstVariationScale);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 5. Second-form identity as exact field algebra
// --------------------------------------------------------------------------

bool criterion_5(Log& log) {
    struct Entry {
        SurfaceSpec s;
        double lo, hi;
    };
    const Entry catalog[] = {
        {make_plane(0.3, -0.2, 1.0), -1.4, 1.4}, {make_paraboloid(), -1.4, 1.4},
        {make_sphere_cap(2.0), -1.4, 1.4},       {make_catenoid(), -3.0, 3.0},
        {make_gaussian_bump(1.0), -2.0, 2.0},    {make_tilted_bump(0.8, 0.3, -0.1), -2.0, 2.0},
        {make_trig(1, 0.2), 0.0, 6.0},
    };
    bool ok = true;
    for (const auto& e : catalog) {
        const Grid g = grid_square(e.lo, e.hi, 129);
        const GeometryBundle b = build_bundle(sample_clamped(e.s, g));
        const double lhs = surface_integral(b, b.a2);
        const double rhs = surface_integral(b, b.mean_curv * b.mean_curv) -
                           2.0 * surface_integral(b, b.gauss_curv);
        const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        ok = ok && rel <= 1e-12;
        log.add("%-13s: |int A2 - (int H^2 - 2 int K)| rel = %.2e", e.s.name.c_str(), rel);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 6. Calibration chain
// --------------------------------------------------------------------------

bool criterion_6(Log& log) {
    bool ok = true;
    {
        const Grid g = grid_square(-4.5, 4.5, 577);
        const GeometryBundle b = build_bundle(sample(make_gaussian_bump(1.0), g));
        const ConstantLedger led = make_ledger(b);
        for (double R : {1.0, 2.0, 4.0}) {
            const CalibrationChain c = calibration_chain(b, R);
            ok = ok && c.all_ok;
            if (!c.all_ok) log.add("bump R=%.0f: violation at link %d", R, c.first_violation);
        }
        log.add("gaussian bump R in {1,2,4}: all links hold; C1 = %.6f, C2 = %.6f", led.c1,
                led.c2);
    }
    {
        const Grid g = grid_square(-1.5, 1.5, 385);
        const ScalarField u = sample_clamped(make_sphere_cap(2.0), g);
        const GeometryBundle b = build_bundle(u + (-2.0));  // cap through the origin
        const ConstantLedger led = make_ledger(b);
        for (double R : {1.0, 2.0, 4.0}) {
            const CalibrationChain c = calibration_chain(b, R);
            ok = ok && c.all_ok;
            if (!c.all_ok) log.add("cap R=%.0f: violation at link %d", R, c.first_violation);
        }
        log.add("sphere cap R in {1,2,4}: all links hold; C1 = %.6f, C2 = %.6f", led.c1, led.c2);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 7. Cutoff machinery on the plane
// --------------------------------------------------------------------------

bool criterion_7(Log& log) {
    bool ok = true;
    for (double sigma : {16.0, 64.0, 256.0}) {
        const int n = sigma > 100.0 ? 1025 : 513;
        const Grid g = grid_square(-(sigma + 1.0), sigma + 1.0, n);
        const GeometryBundle b = build_bundle(sample(make_plane(0, 0, 0), g));
        const ConstantLedger led = make_ledger(b);
        const CutoffSpec spec = eta_sigma(b, sigma);
        const ReportRow row = cutoff_energy(b, spec, led);
        const double closed_form = 4.0 * M_PI / std::log(sigma);
        const double rel = std::abs(row.measured - closed_form) / closed_form;
        ok = ok && rel < 0.05 && row.satisfied;
        log.add("sigma %4.0f: measured %.6f vs 4pi/log(sigma) %.6f (rel %.3f%%), C5 bound %.3f %s",
                sigma, row.measured, closed_form, rel * 100.0, row.bound,
                row.satisfied ? "holds" : "VIOLATED");
    }
    return ok;
}

// --------------------------------------------------------------------------
// 8. Stokes / pullback
// --------------------------------------------------------------------------

bool criterion_8(Log& log) {
    bool ok = true;
    std::vector<double> disc;
    for (int n : {161, 321, 641}) {  // h = 1/32, 1/64, 1/128 on [-2.5, 2.5]
        const Grid g = grid_square(-2.5, 2.5, n);
        const GeometryBundle b = build_bundle(sample(make_gaussian_bump(1.0), g));
        disc.push_back(stokes_check(b, cutoff_profile(g, 1.0, 2.0)).discrepancy);
    }
    ok = ok && disc.back() < 1e-2;
    for (double order : observed_orders(disc)) ok = ok && order >= 1.9;
    log.add("stokes discrepancy %.3e -> %.3e -> %.3e (orders %.2f, %.2f)", disc[0], disc[1],
            disc[2], observed_orders(disc)[0], observed_orders(disc)[1]);

    const Grid g = grid_square(-2.5, 2.5, 641);
    const GeometryBundle b = build_bundle(sample(make_gaussian_bump(1.0), g));
    const VectorField na = alpha_pullback(b);
    const ScalarField norm2 = cometric_norm_sq(b, na);
    const Mask interior = trim_mask(g, 2);
    double worst = 0.0;
    for (std::size_t k = 0; k < norm2.values.size(); ++k) {
        if (!interior.keep[k] || b.a2.values[k] < 1e-6) continue;
        worst = std::max(worst, std::sqrt(std::max(0.0, norm2.values[k]) / b.a2.values[k]));
    }
    ok = ok && worst <= 1.05;
    log.add("C_alpha certification: sup |n*alpha| / |dn| = %.4f (<= 1.05)", worst);
    return ok;
}

// --------------------------------------------------------------------------
// 9. Vanishing total curvature (bump) and the paraboloid counter-exhibit
// --------------------------------------------------------------------------

bool criterion_9(Log& log) {
    bool ok = true;
    {
        // H in L^2: wide gaussian bump; sweep strictly decreasing, limit ~ 0
        const Grid g = grid_square(-68.0, 68.0, 1025);
        const GeometryBundle b = build_bundle(sample(make_gaussian_bump(1.0, 3.0), g));
        const ConstantLedger led = make_ledger(b);
        const std::vector<double> sigmas = {8.0, 16.0, 32.0, 64.0};
        const TotalCurvature tc = total_curvature(b, sigmas, led);
        bool strict = true;
        for (std::size_t k = 1; k < tc.rows.size(); ++k)
            strict = strict && std::abs(tc.rows[k].measured) < std::abs(tc.rows[k - 1].measured);
        ok = ok && strict && std::abs(tc.limit_estimate) < 0.05;
        log.add("bump sweep |int eta^2 K dmu|: %.4f, %.4f, %.5f, %.5f (strictly decreasing: %s)",
                std::abs(tc.rows[0].measured), std::abs(tc.rows[1].measured),
                std::abs(tc.rows[2].measured), std::abs(tc.rows[3].measured),
                strict ? "yes" : "NO");
        log.add("extrapolated limit %.4e (|.| < 0.05), direct window total %.4e, C3 = %.4f",
                tc.limit_estimate, tc.direct_total, led.c3);
    }
    {
        // paraboloid: H not in L^2; gauss image approaches the full hemisphere
        const Grid g = grid_square(-17.0, 17.0, 1025);
        const GeometryBundle b = build_bundle(sample(make_paraboloid(), g));
        const double measured = surface_integral(b, b.gauss_curv, disk_mask(g, 16.0), 2);
        const double rel = std::abs(measured - 2.0 * M_PI) / (2.0 * M_PI);
        const bool within = rel <= 0.02;
        ok = ok && within;
        const double truncation = 2.0 * M_PI * (1.0 - 1.0 / std::sqrt(257.0));
        log.add("paraboloid int_{r<=16} K dmu = %.5f vs 2pi = %.5f: off by %.2f%% (gate 2%%) -> %s",
                measured, 2.0 * M_PI, rel * 100.0, within ? "pass" : "FAIL");
        log.add("  exact truncated value 2pi(1-1/sqrt(257)) = %.5f sits %.2f%% below 2pi,",
                truncation, 100.0 * (1.0 - truncation / (2.0 * M_PI)));
        log.add("  so the 2%% gate is unreachable at r<=16 for any grid; R=64 diagnostic below");

        const Grid g64 = grid_square(-66.0, 66.0, 1025);
        const GeometryBundle b64 = build_bundle(sample(make_paraboloid(), g64));
        const double m64 = surface_integral(b64, b64.gauss_curv, disk_mask(g64, 64.0), 2);
        log.add("  diagnostic R=64: %.5f, off 2pi by %.2f%% (within 2%%: %s)", m64,
                100.0 * std::abs(m64 - 2.0 * M_PI) / (2.0 * M_PI),
                std::abs(m64 - 2.0 * M_PI) / (2.0 * M_PI) <= 0.02 ? "yes" : "no");

        // growth of the willmore integrand against a + b log R
        std::vector<double> logr, vals_dmu, vals_flat;
        const ScalarField h2 = b.mean_curv * b.mean_curv;
        for (double R : {2.0, 4.0, 8.0, 16.0}) {
            logr.push_back(std::log(R));
            const Mask disk = mask_and(disk_mask(g, R), trim_mask(g, 2));
            vals_dmu.push_back(integrate(h2 * b.v, disk).value);
            vals_flat.push_back(integrate(h2, disk).value);
        }
        const LinearFit fit = fit_linear(logr, vals_dmu);
        ok = ok && fit.r_squared >= 0.99;
        log.add("paraboloid int_{r<=R} H^2 dmu vs log R: slope %.4f, R^2 of fit %.6f (gate 0.99) -> %s",
                fit.slope, fit.r_squared, fit.r_squared >= 0.99 ? "pass" : "FAIL");
        log.add("  the dmu-weighted integral grows linearly (H ~ 1/r, dmu ~ r dr dtheta),");
        const LinearFit flat = fit_linear(logr, vals_flat);
        log.add("  while the flat integral is the log-grower: int H^2 dxdy slope %.4f "
                "(2pi = %.4f), R^2 %.6f",
                flat.slope, 2.0 * M_PI, flat.r_squared);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 10. Flow exhibit
// --------------------------------------------------------------------------

bool run_flow_exhibit(Log& log, int n, long max_steps, bool& reached) {
    const Grid g = grid_square(-2.0, 2.0, n);
    const ScalarField bump = sample(make_gaussian_bump(0.5), g);
    const ScalarField u0 = bump * cutoff_profile(g, 1.0, 2.0 - (kResidualTrim + 2) * g.h);

    FlowOptions opt;
    opt.record_every = 200;
    const FlowSummary run = run_flow(u0, FlowBc::dirichlet_clamp, {max_steps, 1e-6}, opt);

    bool monotone = true;
    for (std::size_t k = 1; k < run.state.energy_history.size(); ++k)
        monotone = monotone && run.state.energy_history[k].second <=
                                   run.state.energy_history[k - 1].second *
                                       (1.0 + 1e-12 * opt.record_every);
    const bool flattened = run.final_sup_u < 0.05 * run.initial_sup_u;
    const bool resolved = run.final_sup_residual < 1e-6;
    reached = flattened && resolved && monotone;
    log.add("%dx%d: %ld steps (%s), sup|u| %.4f -> %.2e (5%% gate %.2e), sup|res| %.2e, monotone %s",
            n, n, run.state.step_count, run.stop_reason.c_str(), run.initial_sup_u,
            run.final_sup_u, 0.05 * run.initial_sup_u, run.final_sup_residual,
            monotone ? "yes" : "NO");
    return monotone;
}

bool criterion_10(Log& log) {
    long budget = 20000;  // wall-clock-bounded attempt; WGL_ACCEPT_FLOW_MAX_STEPS overrides
    if (const char* env = std::getenv("WGL_ACCEPT_FLOW_MAX_STEPS")) budget = std::atol(env);

    bool reached_256 = false;
    const auto t0 = std::chrono::steady_clock::now();
    run_flow_exhibit(log, 257, budget, reached_256);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!reached_256) {
        log.add("256^2 did not reach the gates within %ld explicit steps (%.0f s, %.1f ms/step);",
                budget, seconds, 1e3 * seconds / std::max<long>(1, budget));
        log.add("  stability caps tau at h^4/2, so full relaxation needs ~1e8 steps here "
                "(~%.0f hours at this rate)",
                1e8 * seconds / std::max<long>(1, budget) / 3600.0);
    }

    bool reached_small = false;
    run_flow_exhibit(log, 33, 400000, reached_small);
    log.add("diagnostic 33x33 run (identical code path) reaches all gates: %s",
            reached_small ? "yes" : "NO");
    return reached_256;
}

// --------------------------------------------------------------------------
// 11. Determinism of the CLI
// --------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool criterion_11(Log& log) {
    const char* cli = std::getenv("WGL_CLI");
    if (!cli) {
        log.add("WGL_CLI not set (point it at the wgl_cli binary)");
        return false;
    }
    const fs::path base = fs::temp_directory_path() / "wgl_accept_det";
    fs::remove_all(base);
    fs::create_directories(base);

    const fs::path cfg_analyze = base / "analyze.json";
    std::ofstream(cfg_analyze) << R"({
      "surface": {"name": "sphere_cap", "params": {"R": 2.0}},
      "grid": {"nx": 193, "ny": 193, "h": 0.015625, "x0": -1.5, "y0": -1.5},
      "trim": 2})";
    const fs::path cfg_flow = base / "flow.json";
    std::ofstream(cfg_flow) << R"({
      "surface": {"name": "gaussian_bump", "params": {"A": 0.5}},
      "grid": {"nx": 65, "ny": 65, "h": 0.0625, "x0": -2.0, "y0": -2.0},
      "flow": {"max_steps": 500, "record_every": 50, "checkpoint_every": 250}})";
    const fs::path cfg_total = base / "total.json";
    std::ofstream(cfg_total) << R"({
      "surface": {"name": "gaussian_bump", "params": {"A": 1.0, "w": 2.0}},
      "grid": {"nx": 513, "ny": 513, "h": 0.12890625, "x0": -33.0, "y0": -33.0},
      "sigmas": [8.0, 16.0, 32.0]})";

    bool ok = true;
    const struct {
        const char* cmd;
        fs::path cfg;
    } runs[] = {{"analyze", cfg_analyze}, {"flow", cfg_flow}, {"total-curvature", cfg_total}};
    for (const auto& r : runs) {
        const fs::path out1 = base / (std::string(r.cmd) + "_1");
        const fs::path out2 = base / (std::string(r.cmd) + "_2");
        for (const fs::path& out : {out1, out2}) {
            std::ostringstream cmd;
            cmd << '"' << cli << "\" " << r.cmd << " --config " << r.cfg << " --out " << out
                << " --threads 1 > /dev/null 2>&1";
            if (std::system(cmd.str().c_str()) != 0) {
                log.add("%s: run failed", r.cmd);
                ok = false;
            }
        }
        std::size_t files = 0;
        bool identical = true;
        for (const auto& entry : fs::directory_iterator(out1)) {
            ++files;
            const fs::path other = out2 / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                identical = false;
                log.add("%s: %s differs", r.cmd, entry.path().filename().c_str());
            }
        }
        ok = ok && identical && files > 0;
        log.add("%s: %zu output files byte-identical across two runs: %s", r.cmd, files,
                identical ? "yes" : "NO");
    }
    fs::remove_all(base);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        std::function<bool(Log&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "operator convergence (H, K vs oracle, order >= 1.9, |H err| < 1e-3 at h=1/256)",
         criterion_1},
        {2, "residual vanishing on plane / sphere cap / catenoid", criterion_2},
        {3, "residual equivalence: consistent conversion factor across 5 random surfaces",
         criterion_3},
        {4, "gradient fidelity (mismatch < 1e-3, unanimous sign)", criterion_4},
        {5, "int |A|^2 dmu = int H^2 dmu - 2 int K dmu to 1e-12 on the catalog", criterion_5},
        {6, "calibration inequality chain with zero violations", criterion_6},
        {7, "cutoff energy matches 4pi/log(sigma) within 5% and the C5 bound", criterion_7},
        {8, "stokes/pullback discrepancy and C_alpha certification", criterion_8},
        {9, "total-curvature exhibit (bump) and counter-exhibit (paraboloid)", criterion_9},
        {10, "flow exhibit: 0.5-amplitude bump on 256^2 relaxes to the plane", criterion_10},
        {11, "byte-identical outputs for identical config and thread count", criterion_11},
    };

    int selected = 0;
    if (argc > 1 && std::strcmp(argv[1], "all") != 0) selected = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : criteria) {
        if (selected != 0 && c.id != selected) continue;
        Log log;
        bool pass = false;
        try {
            pass = c.run(log);
        } catch (const std::exception& e) {
            log.add("exception: %s", e.what());
        }
        std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", c.id, c.title);
        std::fputs(log.lines.str().c_str(), stdout);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures;
}
