#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wgl/field.hpp"

namespace wgl {

// ---------------------------------------------------------------------------
// WGL1 binary field format
// ---------------------------------------------------------------------------
//
// One ASCII header line
//     WGL1 nx ny h x0 y0 boundary_mode\n
// followed by nx*ny little-endian IEEE-754 doubles, row-major (y outer,
// x inner). Reals in the header use max round-trip precision.

namespace detail {

inline std::uint64_t to_little_endian(double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t out = 0;
        for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * (7 - i))) & 0xffull) << (8 * i);
        return out;
    }
    return bits;
}

inline double from_little_endian(std::uint64_t bits) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t out = 0;
        for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * (7 - i))) & 0xffull) << (8 * i);
        bits = out;
    }
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
}

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_wgl1(const ScalarField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const Grid& g = f.grid;
    out << "WGL1 " << g.nx << ' ' << g.ny << ' ' << detail::format_real(g.h) << ' '
        << detail::format_real(g.x0) << ' ' << detail::format_real(g.y0) << ' '
        << to_string(g.boundary) << '\n';
    for (double v : f.values) {
        const std::uint64_t bits = detail::to_little_endian(v);
        out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline ScalarField read_wgl1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("missing WGL1 header: " + path);
    std::istringstream hs(header);
    std::string magic, mode;
    Grid g;
    if (!(hs >> magic >> g.nx >> g.ny >> g.h >> g.x0 >> g.y0 >> mode) || magic != "WGL1")
        throw std::runtime_error("malformed WGL1 header: " + path);
    g.boundary = boundary_mode_from(mode);
    ScalarField f(g);
    for (double& v : f.values) {
        std::uint64_t bits;
        in.read(reinterpret_cast<char*>(&bits), sizeof(bits));
        if (!in) throw std::runtime_error("truncated WGL1 payload: " + path);
        v = detail::from_little_endian(bits);
    }
    return f;
}

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

/// Field samples as `x,y,value` rows.
inline void write_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "x,y,value\n";
    const Grid& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out << detail::format_real(g.x(i)) << ',' << detail::format_real(g.y(j)) << ','
                << detail::format_real(f.at(i, j)) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wgl
