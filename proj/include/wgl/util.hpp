#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace wgl {

inline constexpr std::string_view kVersion = "0.1.0";

/// FNV-1a 64-bit hash; stamps configs into every output file.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Observed convergence order between errors at h and h/2.
inline double convergence_order(double err_coarse, double err_fine) {
    if (!(err_fine > 0.0)) return std::numeric_limits<double>::infinity();
    return std::log2(err_coarse / err_fine);
}

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 1.0;
};

/// Least-squares fit y ~ intercept + slope * t.
inline LinearFit fit_linear(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("fit_linear: need two samples");
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t k = 0; k < n; ++k) {
        st += t[k];
        sy += y[k];
        stt += t[k] * t[k];
        sty += t[k] * y[k];
    }
    const double den = n * stt - st * st;
    if (den == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
    LinearFit f;
    f.slope = (n * sty - st * sy) / den;
    f.intercept = (sy - f.slope * st) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t k = 0; k < n; ++k) {
        const double fit = f.intercept + f.slope * t[k];
        ss_res += (y[k] - fit) * (y[k] - fit);
        ss_tot += (y[k] - ybar) * (y[k] - ybar);
    }
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace wgl
