#pragma once

/**
    \file
    \brief Wronskian frontality test, contact orders, and the unit tangent line field

    The tangent line of a frontal curve survives its singular points. Where f' vanishes
    to order a1 - 1 at t0, f'(t) = (t - t0)^{a1 - 1} G(t) with G(t0) != 0, and the unit
    tangent extends as G / |G|. Jets make the factorisation exact: the first a1 - 1
    coefficients of the jet of f' are dropped and the rest normalised.
*/

#include <frontal/curve.hpp>
#include <frontal/error.hpp>
#include <frontal/jet.hpp>
#include <frontal/linalg.hpp>
#include <frontal/surface_grid.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace frontal {

inline constexpr int default_k_max = 8;

// Below this speed the tangent is taken from the factored jet of f'.
inline constexpr double singular_speed = 1e-6;

// (1+p) x k matrix (f', f'', ..., f^{(k)}) at t0.
inline Mat wronskian_matrix(Curve const& c, double t0, int k)
{
    if (k < 1) throw ConfigError("Wronskian order must be at least 1");
    return c.derivatives(t0, k).rightCols(k);
}

inline int wronskian_rank(Curve const& c, double t0, int k, double tol = default_rank_tol)
{
    return numeric_rank(wronskian_matrix(c, t0, k), tol);
}

struct WronskianReport
{
    double t0 = 0.0;
    std::vector<int> ranks;  // ranks[k - 1] = rank W_k
    std::optional<int> a1;
    std::optional<int> a2;
    bool frontal_sufficient = false;
};

inline WronskianReport contact_orders(Curve const& c, double t0, int k_max = default_k_max,
                                      double tol = default_rank_tol)
{
    if (k_max < 2) throw ConfigError("k_max must be at least 2");
    WronskianReport r;
    r.t0 = t0;
    Mat const w = c.derivatives(t0, k_max).rightCols(k_max);
    for (int k = 1; k <= k_max; ++k) {
        int const rank = numeric_rank(w.leftCols(k), tol);
        r.ranks.push_back(rank);
        if (!r.a1 && rank >= 1) r.a1 = k;
        if (!r.a2 && rank >= 2) r.a2 = k;
    }
    r.frontal_sufficient = r.a2.has_value();
    return r;
}

// Unit tangent as a vector of component jets about t0, plus the order a1 used
// for the factorisation (1 at regular points).
struct TangentJet
{
    std::vector<Jet> tau;
    int a1 = 1;
};

inline TangentJet tangent_jet(Curve const& c, double t0, int order, int k_max = default_k_max,
                              double tol = default_rank_tol)
{
    int const total = order + k_max + 1;
    auto const f = c.jets(t0, total);
    std::vector<Jet> df;
    df.reserve(f.size());
    for (auto const& j : f) df.push_back(j.differentiated());

    Vec speed(c.dim());
    for (int i = 0; i < c.dim(); ++i) speed[i] = df[static_cast<std::size_t>(i)][0];

    int a1 = 1;
    if (speed.norm() < singular_speed) {
        // numeric rank of W_k grows to 1 at k = a1
        Mat w(c.dim(), k_max);
        for (int i = 0; i < c.dim(); ++i)
            for (int k = 1; k <= k_max; ++k) w(i, k - 1) = f[static_cast<std::size_t>(i)].derivative(k);
        a1 = 0;
        for (int k = 1; k <= k_max; ++k) {
            if (numeric_rank(w.leftCols(k), tol) >= 1) {
                a1 = k;
                break;
            }
        }
        if (a1 == 0) throw PreconditionError("tangent line undetermined: all derivatives up to k_max vanish");
    }

    std::vector<Jet> g;
    g.reserve(df.size());
    for (auto const& j : df) g.push_back(j.divided_by_power(a1 - 1).truncated(order));

    Jet norm2 = Jet::constant(t0, order, 0.0);
    for (auto const& j : g) norm2 += j * j;
    Jet const inv = 1.0 / sqrt(norm2);

    TangentJet out;
    out.a1 = a1;
    out.tau.reserve(g.size());
    for (auto const& j : g) out.tau.push_back(j * inv);
    return out;
}

// Column k of the result is the k-th derivative of the jet vector at its base.
inline Mat jet_vector_derivatives(std::vector<Jet> const& v, int kmax)
{
    Mat d(static_cast<Eigen::Index>(v.size()), kmax + 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (int k = 0; k <= kmax; ++k) d(static_cast<Eigen::Index>(i), k) = v[i].derivative(k);
    return d;
}

struct TangentField
{
    std::vector<double> grid;
    std::vector<Vec> tau;
    // Indices i where f'/|f'| reverses between samples i-1 and i; the chained
    // representative tau stays continuous across them.
    std::vector<std::size_t> orientation_flips;
    std::vector<int> a1;
};

inline TangentField unit_tangent(Curve const& c, std::vector<double> const& grid, int k_max = default_k_max,
                                 double tol = default_rank_tol)
{
    TangentField field;
    field.grid = grid;
    field.tau.reserve(grid.size());
    Vec prev_raw;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto const tj = tangent_jet(c, grid[i], 0, k_max, tol);
        Vec raw(c.dim());
        for (int k = 0; k < c.dim(); ++k) raw[k] = tj.tau[static_cast<std::size_t>(k)][0];
        Vec chained = raw;
        if (i > 0) {
            if (raw.dot(prev_raw) < 0.0) field.orientation_flips.push_back(i);
            if (chained.dot(field.tau.back()) < 0.0) chained = -chained;
        }
        prev_raw = raw;
        field.tau.push_back(chained);
        field.a1.push_back(tj.a1);
    }
    return field;
}

struct PropernessReport
{
    double singular_fraction = 0.0;
    // largest all-singular axis-aligned box (by node count)
    std::size_t box_rows = 0;
    std::size_t box_cols = 0;
    std::size_t box_row0 = 0;
    std::size_t box_col0 = 0;
    bool full_dimensional_box = false;  // some 2 x 2 block is entirely singular

    bool proper() const noexcept { return singular_fraction < 1.0 && !full_dimensional_box; }
};

inline PropernessReport properness_scan(SurfaceGrid const& grid, double tol = default_rank_tol)
{
    std::size_t const rows = grid.rows();
    std::size_t const cols = grid.cols();
    auto const sing = [&](std::size_t i, std::size_t j) {
        std::size_t const idx = grid.index(i, j);
        return grid.singular[idx] != 0 || grid.sv_ratio[idx] <= tol;
    };

    PropernessReport r;
    std::size_t count = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sing(i, j)) ++count;
    r.singular_fraction = rows > 0 && cols > 0 ? static_cast<double>(count) / static_cast<double>(rows * cols) : 0.0;

    for (std::size_t i = 0; i + 1 < rows && !r.full_dimensional_box; ++i)
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (sing(i, j) && sing(i + 1, j) && sing(i, j + 1) && sing(i + 1, j + 1)) {
                r.full_dimensional_box = true;
                break;
            }

    // maximal rectangle via per-row histograms
    std::vector<std::size_t> height(cols, 0);
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) height[j] = sing(i, j) ? height[j] + 1 : 0;
        std::vector<std::size_t> stack;
        for (std::size_t j = 0; j <= cols; ++j) {
            std::size_t const h = j < cols ? height[j] : 0;
            while (!stack.empty() && height[stack.back()] >= h) {
                std::size_t const top = stack.back();
                stack.pop_back();
                std::size_t const left = stack.empty() ? 0 : stack.back() + 1;
                std::size_t const width = j - left;
                std::size_t const area = height[top] * width;
                if (area > best) {
                    best = area;
                    r.box_rows = height[top];
                    r.box_cols = width;
                    r.box_row0 = i + 1 - height[top];
                    r.box_col0 = left;
                }
            }
            if (j < cols) stack.push_back(j);
        }
    }
    return r;
}

} // namespace frontal
