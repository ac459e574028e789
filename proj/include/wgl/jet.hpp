#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace wgl {

// ---------------------------------------------------------------------------
// Jet4: truncated bivariate Taylor expansion
// ---------------------------------------------------------------------------
//
// Carries Taylor coefficients c[i,j] = d^{i+j}f / (dx^i dy^j) / (i! j!) for
// total degree i+j <= 4 and propagates them exactly through arithmetic and
// the elementary functions. Seeding x and y as variables and evaluating a
// closed form therefore yields its derivatives up to fourth order with no
// truncation error beyond rounding. Derivative extraction (dx/dy) loses one
// valid order per application; the caller tracks how deep a result is valid.

struct Jet4 {
    static constexpr int kCoeffs = 15;
    std::array<double, kCoeffs> c{};

    static constexpr int index(int i, int j) {
        constexpr int base[5] = {0, 1, 3, 6, 10};
        return base[i + j] + j;
    }

    double value() const { return c[0]; }

    /// Partial derivative d^{i+j} / dx^i dy^j (undoes the factorial scaling).
    double deriv(int i, int j) const {
        constexpr double fact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};
        return c[index(i, j)] * fact[i] * fact[j];
    }
};

inline Jet4 jet_const(double a) {
    Jet4 r;
    r.c[0] = a;
    return r;
}

inline Jet4 jet_x(double x0) {
    Jet4 r;
    r.c[0] = x0;
    r.c[Jet4::index(1, 0)] = 1.0;
    return r;
}

inline Jet4 jet_y(double y0) {
    Jet4 r;
    r.c[0] = y0;
    r.c[Jet4::index(0, 1)] = 1.0;
    return r;
}

inline Jet4 operator+(const Jet4& a, const Jet4& b) {
    Jet4 r;
    for (int k = 0; k < Jet4::kCoeffs; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

inline Jet4 operator-(const Jet4& a, const Jet4& b) {
    Jet4 r;
    for (int k = 0; k < Jet4::kCoeffs; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

inline Jet4 operator*(double s, const Jet4& a) {
    Jet4 r;
    for (int k = 0; k < Jet4::kCoeffs; ++k) r.c[k] = s * a.c[k];
    return r;
}

inline Jet4 operator*(const Jet4& a, double s) { return s * a; }
inline Jet4 operator-(const Jet4& a) { return -1.0 * a; }
inline Jet4 operator+(const Jet4& a, double s) {
    Jet4 r = a;
    r.c[0] += s;
    return r;
}
inline Jet4 operator+(double s, const Jet4& a) { return a + s; }
inline Jet4 operator-(double s, const Jet4& a) { return (-a) + s; }
inline Jet4 operator-(const Jet4& a, double s) { return a + (-s); }

inline Jet4 operator*(const Jet4& a, const Jet4& b) {
    Jet4 r;
    for (int i1 = 0; i1 <= 4; ++i1)
        for (int j1 = 0; i1 + j1 <= 4; ++j1) {
            const double ca = a.c[Jet4::index(i1, j1)];
            if (ca == 0.0) continue;
            for (int i2 = 0; i2 + i1 <= 4; ++i2)
                for (int j2 = 0; i1 + j1 + i2 + j2 <= 4; ++j2)
                    r.c[Jet4::index(i1 + i2, j1 + j2)] += ca * b.c[Jet4::index(i2, j2)];
        }
    return r;
}

/// Applies an analytic F to a jet via F(a0 + t) = sum_k fk * t^k, where
/// fk = F^(k)(a0)/k! and t = a - a0 has no constant term.
inline Jet4 compose(const Jet4& a, const std::array<double, 5>& fk) {
    Jet4 t = a;
    t.c[0] = 0.0;
    // Horner over the truncated series
    Jet4 r = jet_const(fk[4]);
    for (int k = 3; k >= 0; --k) r = r * t + fk[k];
    return r;
}

inline Jet4 recip(const Jet4& a) {
    const double v = a.c[0];
    if (v == 0.0) throw std::domain_error("jet recip at zero");
    const double iv = 1.0 / v;
    return compose(a, {iv, -iv * iv, iv * iv * iv, -iv * iv * iv * iv, iv * iv * iv * iv * iv});
}

inline Jet4 operator/(const Jet4& a, const Jet4& b) { return a * recip(b); }

inline Jet4 sqrt(const Jet4& a) {
    const double v = a.c[0];
    if (!(v > 0.0)) throw std::domain_error("jet sqrt of non-positive value");
    const double s = std::sqrt(v);
    return compose(a, {s, 0.5 / s, -1.0 / (8.0 * v * s), 1.0 / (16.0 * v * v * s),
                       -5.0 / (128.0 * v * v * v * s)});
}

inline Jet4 exp(const Jet4& a) {
    const double e = std::exp(a.c[0]);
    return compose(a, {e, e, e / 2.0, e / 6.0, e / 24.0});
}

inline Jet4 log(const Jet4& a) {
    const double v = a.c[0];
    if (!(v > 0.0)) throw std::domain_error("jet log of non-positive value");
    const double iv = 1.0 / v;
    return compose(a, {std::log(v), iv, -iv * iv / 2.0, iv * iv * iv / 3.0, -iv * iv * iv * iv / 4.0});
}

inline Jet4 sin(const Jet4& a) {
    const double s = std::sin(a.c[0]), c = std::cos(a.c[0]);
    return compose(a, {s, c, -s / 2.0, -c / 6.0, s / 24.0});
}

inline Jet4 cos(const Jet4& a) {
    const double s = std::sin(a.c[0]), c = std::cos(a.c[0]);
    return compose(a, {c, -s, -c / 2.0, s / 6.0, c / 24.0});
}

/// d/dx as a coefficient shift; the top total degree of the result is
/// meaningless (one valid order is consumed).
inline Jet4 jet_dx(const Jet4& a) {
    Jet4 r;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) r.c[Jet4::index(i, j)] = (i + 1) * a.c[Jet4::index(i + 1, j)];
    return r;
}

inline Jet4 jet_dy(const Jet4& a) {
    Jet4 r;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) r.c[Jet4::index(i, j)] = (j + 1) * a.c[Jet4::index(i, j + 1)];
    return r;
}

}  // namespace wgl
