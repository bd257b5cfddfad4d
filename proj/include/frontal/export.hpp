#pragma once

/**
    \file
    \brief CSV / OBJ / JSON-lines writers

    All numbers go through format_number (shortest round-trip), so identical
    inputs give byte-identical files. Writers fill a stream; callers decide when
    to touch the filesystem.
*/

#include <frontal/error.hpp>
#include <frontal/expr.hpp>
#include <frontal/moving_frames.hpp>
#include <frontal/surface_grid.hpp>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace frontal {

inline std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    return detail::format_number(v);
}

// One row per node: t, s, x1..xn, jac_rank.
inline void write_surface_csv(std::ostream& out, SurfaceGrid const& g)
{
    out << "t,s";
    for (int k = 1; k <= g.ambient_dim; ++k) out << ",x" << k;
    out << ",jac_rank\n";
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            out << fmt(g.t_grid[i]) << ',' << fmt(g.s_grid[j]);
            Vec const& p = g.at(i, j);
            for (Eigen::Index k = 0; k < p.size(); ++k) out << ',' << fmt(p[k]);
            out << ',' << g.jac_rank[g.index(i, j)] << '\n';
        }
    }
}

// Vertices in grid order (t-major), each quad as two triangles, singular nodes
// listed as "# singular i j" (0-based grid indices). Plane curves get z = 0.
inline void write_surface_obj(std::ostream& out, SurfaceGrid const& g)
{
    if (g.ambient_dim > 3) throw ConfigError("OBJ export needs ambient dimension <= 3; use CSV");
    out << "# " << to_string(g.kind) << " surface, " << g.rows() << " x " << g.cols() << " nodes\n";
    for (auto const& p : g.points) {
        out << 'v';
        for (Eigen::Index k = 0; k < 3; ++k) out << ' ' << fmt(k < p.size() ? p[k] : 0.0);
        out << '\n';
    }
    std::size_t const cols = g.cols();
    for (std::size_t i = 0; i + 1 < g.rows(); ++i) {
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            std::size_t const a = g.index(i, j) + 1;
            std::size_t const b = g.index(i + 1, j) + 1;
            std::size_t const c = g.index(i + 1, j + 1) + 1;
            std::size_t const d = g.index(i, j + 1) + 1;
            out << "f " << a << ' ' << b << ' ' << c << '\n';
            out << "f " << a << ' ' << c << ' ' << d << '\n';
        }
    }
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (g.is_singular(i, j)) out << "# singular " << i << ' ' << j << '\n';
}

// t, a, kappa, ell_1..ell_{p-1}. A profile with no ell rows but a nonzero
// ell count (frame undefined) prints nan.
inline void write_invariants_csv(std::ostream& out, InvariantProfile const& p, std::size_t ell_count)
{
    out << "t,a,kappa";
    for (std::size_t k = 1; k <= ell_count; ++k) out << ",ell_" << k;
    out << '\n';
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        out << fmt(p.grid[i]) << ',' << fmt(p.a[i]) << ',' << fmt(p.kappa[i]);
        for (std::size_t k = 0; k < ell_count; ++k)
            out << ',' << (k < p.ells.size() ? fmt(p.ells[k][i]) : std::string("nan"));
        out << '\n';
    }
}

inline void write_file(std::string const& path, std::string const& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

} // namespace frontal
