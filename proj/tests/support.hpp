#pragma once

#include <frontal/linalg.hpp>

#include <cmath>
#include <utility>

namespace frontal::testing {

inline Vec vec(std::initializer_list<double> xs)
{
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// (s, t, s^2 - t^2, 2st): the graph of z^2 over C.
inline Vec graph_surface(double s, double t) { return vec({s, t, s * s - t * t, 2 * s * t}); }

// e3, e4: Gram-Schmidt of the last two coordinate axes against the exact tangent plane.
inline std::pair<Vec, Vec> graph_normals(double s, double t)
{
    Vec const fs = vec({1, 0, 2 * s, 2 * t});
    Vec const ft = vec({0, 1, -2 * t, 2 * s});
    Vec const a = fs.normalized();
    Vec const b = (ft - ft.dot(a) * a).normalized();
    auto const proj = [&](Vec v) { return Vec(v - v.dot(a) * a - v.dot(b) * b); };
    Vec const e3 = proj(vec({0, 0, 1, 0})).normalized();
    Vec e4 = proj(vec({0, 0, 0, 1}));
    e4 = (e4 - e4.dot(e3) * e3).normalized();
    return {e3, e4};
}

// Torus of revolution in R^3 x {0}: radii 2 and 0.5.
inline Vec torus(double s, double t)
{
    double const r = 2.0 + 0.5 * std::cos(t);
    return vec({r * std::cos(s), r * std::sin(s), 0.5 * std::sin(t), 0.0});
}

inline std::pair<Vec, Vec> torus_normals(double s, double t)
{
    return {vec({std::cos(t) * std::cos(s), std::cos(t) * std::sin(s), std::sin(t), 0.0}), vec({0, 0, 0, 1})};
}

} // namespace frontal::testing
