#pragma once

#include <frontal/linalg.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace frontal {

enum class MapKind { tan, nor, pal, can, tan_of_directrix };

inline char const* to_string(MapKind k)
{
    switch (k) {
    case MapKind::tan: return "tan";
    case MapKind::nor: return "nor";
    case MapKind::pal: return "pal";
    case MapKind::can: return "can";
    case MapKind::tan_of_directrix: return "directrix-tan";
    }
    return "?";
}

// A sampled map over a (t, s) grid, stored t-major: node (i, j) lives at
// index i * s_grid.size() + j. For the normal map the second parameter runs
// along a slice direction in u-space, but ranks are taken over the full
// (1 + p)-parameter Jacobian, so domain_dim may exceed 2.
struct SurfaceGrid
{
    MapKind kind = MapKind::tan;
    std::vector<double> t_grid;
    std::vector<double> s_grid;
    int ambient_dim = 0;
    int domain_dim = 2;
    std::vector<Vec> points;
    std::vector<int> jac_rank;
    std::vector<double> sv_ratio;  // sigma_min / sigma_max of the Jacobian
    std::vector<char> singular;

    std::size_t rows() const noexcept { return t_grid.size(); }
    std::size_t cols() const noexcept { return s_grid.size(); }
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * s_grid.size() + j; }
    Vec const& at(std::size_t i, std::size_t j) const { return points[index(i, j)]; }
    bool is_singular(std::size_t i, std::size_t j) const { return singular[index(i, j)] != 0; }

    void reserve(std::size_t n)
    {
        points.reserve(n);
        jac_rank.reserve(n);
        sv_ratio.reserve(n);
        singular.reserve(n);
    }

    // Appends a node; the Jacobian's columns are the partials in each domain direction.
    void push(Vec point, Mat const& jacobian, double tol = default_rank_tol)
    {
        Vec const sv = singular_values(jacobian);
        double const smax = sv.size() ? sv.maxCoeff() : 0.0;
        double const smin = sv.size() ? sv.minCoeff() : 0.0;
        int const rank = numeric_rank(jacobian, tol);
        points.push_back(std::move(point));
        jac_rank.push_back(rank);
        sv_ratio.push_back(smax > 0.0 ? smin / smax : 0.0);
        singular.push_back(rank < domain_dim ? 1 : 0);
    }
};

} // namespace frontal
