#pragma once

/**
    \file
    \brief tangent, normal, parallel and canal maps of frontal curves; directrix; verification checks

    Tan(f)(t, s)  = f(t) + s tau(t)
    Nor(f)(t, u)  = f(t) + sum u_i nu_i(t)          (Bishop frame of N_f)
    Can(f)(t, th) = f(t) + r (cos th nu_1 + sin th nu_2)
    Pal(t, s)     = f(t) + s tau(t) + sum u_i nu_i(t) (adapted frame, nu_i constant in s)

    The directrix g(t) = f(t) + sum u_i (l_i/kappa tau + nu_i) satisfies
    Pal(t, s) = Tan(g)(t, s - sum u_i l_i / kappa), so the parallel is singular exactly on
    s kappa - sum u_i l_i = 0.

    Nodes whose Jacobian has sigma_min / sigma_max below near_singular are left out of
    residual maxima and counted separately; frame fields are not defined there.
*/

#include <frontal/curve.hpp>
#include <frontal/error.hpp>
#include <frontal/frontal_analysis.hpp>
#include <frontal/linalg.hpp>
#include <frontal/moving_frames.hpp>
#include <frontal/surface_grid.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frontal {

inline constexpr double near_singular = 1e-7;

// d/dt of sampled values: fourth-order stencils on uniform grids with at
// least five samples, second-order otherwise.
inline std::vector<Vec> differentiate_samples(std::vector<double> const& grid, std::vector<Vec> const& v)
{
    std::size_t const n = grid.size();
    if (n < 2 || v.size() != n) throw ConfigError("differentiation needs matching samples");
    std::vector<Vec> d(n);
    double const h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    bool uniform = n >= 5;
    for (std::size_t i = 1; i < n && uniform; ++i)
        uniform = std::abs((grid[i] - grid[i - 1]) - h) <= 1e-9 * std::abs(h);

    if (uniform) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= 2 && i + 2 < n)
                d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
            else if (i < 2)
                d[i] = (-25.0 * v[i] + 48.0 * v[i + 1] - 36.0 * v[i + 2] + 16.0 * v[i + 3] - 3.0 * v[i + 4]) / (12.0 * h);
            else
                d[i] = (25.0 * v[i] - 48.0 * v[i - 1] + 36.0 * v[i - 2] - 16.0 * v[i - 3] + 3.0 * v[i - 4]) / (12.0 * h);
        }
        return d;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t const lo = i == 0 ? 0 : i - 1;
        std::size_t const hi = i + 1 == n ? i : i + 1;
        d[i] = (v[hi] - v[lo]) / (grid[hi] - grid[lo]);
    }
    return d;
}

inline void check_offsets(std::span<double const> u, std::size_t expected, char const* what)
{
    if (u.size() != expected)
        throw ConfigError(std::string(what) + ": expected " + std::to_string(expected) + " offsets, got " +
                          std::to_string(u.size()));
}

// ---------------------------------------------------------------------------
// Tan, Nor, Can, Pal
// ---------------------------------------------------------------------------

inline SurfaceGrid tangent_map(Curve const& c, TangentField const& field, std::vector<double> const& s_grid,
                               double tol = default_rank_tol, int k_max = default_k_max)
{
    SurfaceGrid g;
    g.kind = MapKind::tan;
    g.t_grid = field.grid;
    g.s_grid = s_grid;
    g.ambient_dim = c.dim();
    g.domain_dim = 2;
    g.reserve(g.rows() * g.cols());
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
        double const t = field.grid[i];
        auto const smp = tangent_sample(c, t, k_max, tol);
        Vec const& tau = field.tau[i];
        Vec const dtau = smp.tau.dot(tau) < 0.0 ? Vec(-smp.dtau) : smp.dtau;
        Vec const f = c.point(t);
        for (double s : s_grid) {
            Mat j(c.dim(), 2);
            j.col(0) = smp.fprime + s * dtau;
            j.col(1) = tau;
            g.push(f + s * tau, j, tol);
        }
    }
    return g;
}

// Slice (t, s) -> u = u_base + s * direction of Nor(f); ranks use the full
// (1 + p)-column Jacobian.
inline SurfaceGrid normal_map(Curve const& c, BishopFrame const& frame, std::vector<double> const& s_grid,
                              std::optional<Vec> direction = std::nullopt, std::optional<Vec> u_base = std::nullopt,
                              double tol = default_rank_tol)
{
    auto const p = static_cast<Eigen::Index>(frame.count());
    if (p != c.codim()) throw ConfigError("normal map needs a full Bishop frame of N_f");
    Vec const dir = direction ? *direction : Vec::Unit(p, 0);
    Vec const base = u_base ? *u_base : Vec::Zero(p);
    if (dir.size() != p || base.size() != p) throw ConfigError("normal map slice has wrong dimension");

    SurfaceGrid g;
    g.kind = MapKind::nor;
    g.t_grid = frame.grid;
    g.s_grid = s_grid;
    g.ambient_dim = c.dim();
    g.domain_dim = 1 + static_cast<int>(p);
    g.reserve(g.rows() * g.cols());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        double const t = frame.grid[i];
        Vec const f = c.point(t);
        Vec const df = c.derivative(t, 1);
        for (double s : s_grid) {
            Vec const u = base + s * dir;
            Vec x = f;
            Mat j(c.dim(), 1 + p);
            j.col(0) = df;
            for (Eigen::Index k = 0; k < p; ++k) {
                x += u[k] * frame.nus[i][static_cast<std::size_t>(k)];
                j.col(0) += u[k] * frame.dnus[i][static_cast<std::size_t>(k)];
                j.col(1 + k) = frame.nus[i][static_cast<std::size_t>(k)];
            }
            g.push(x, j, tol);
        }
    }
    return g;
}

inline SurfaceGrid canal_hypersurface(Curve const& c, BishopFrame const& frame, double r,
                                      std::vector<double> const& angle_grid, double tol = default_rank_tol)
{
    if (!(r > 0.0)) throw ConfigError("canal radius must be positive");
    if (c.codim() != 2 || frame.count() != 2)
        throw ConfigError("canal sampling is implemented for space curves (p = 2) only");
    SurfaceGrid g;
    g.kind = MapKind::can;
    g.t_grid = frame.grid;
    g.s_grid = angle_grid;
    g.ambient_dim = c.dim();
    g.domain_dim = 2;
    g.reserve(g.rows() * g.cols());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        double const t = frame.grid[i];
        Vec const f = c.point(t);
        Vec const df = c.derivative(t, 1);
        auto const& n = frame.nus[i];
        auto const& dn = frame.dnus[i];
        for (double th : angle_grid) {
            double const cs = std::cos(th);
            double const sn = std::sin(th);
            Mat j(c.dim(), 2);
            j.col(0) = df + r * (cs * dn[0] + sn * dn[1]);
            j.col(1) = r * (-sn * n[0] + cs * n[1]);
            g.push(f + r * (cs * n[0] + sn * n[1]), j, tol);
        }
    }
    return g;
}

inline SurfaceGrid parallel_of_tangent(Curve const& c, AdaptedFrame const& frame, std::span<double const> u,
                                       std::vector<double> const& s_grid, double tol = default_rank_tol)
{
    check_offsets(u, frame.count(), "parallel");
    SurfaceGrid g;
    g.kind = MapKind::pal;
    g.t_grid = frame.grid;
    g.s_grid = s_grid;
    g.ambient_dim = c.dim();
    g.domain_dim = 2;
    g.reserve(g.rows() * g.cols());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        Vec base = c.point(frame.grid[i]);
        Vec dbase = frame.fprime[i];
        for (std::size_t k = 0; k < u.size(); ++k) {
            base += u[k] * frame.nus[i][k];
            dbase += u[k] * frame.dnus[i][k];
        }
        for (double s : s_grid) {
            Mat j(c.dim(), 2);
            j.col(0) = dbase + s * frame.dtau[i];
            j.col(1) = frame.tau[i];
            g.push(base + s * frame.tau[i], j, tol);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Singular locus and directrix
// ---------------------------------------------------------------------------

struct SingularLocusCurve
{
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> residual;  // |s kappa - sum u_i l_i|
};

inline SingularLocusCurve singular_locus_parallel(InvariantProfile const& profile, std::span<double const> u,
                                                  double kappa_tol = 1e-7)
{
    check_offsets(u, profile.ells.size(), "singular locus");
    SingularLocusCurve loc;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        double const kappa = profile.kappa[i];
        if (std::abs(kappa) < kappa_tol)
            throw PreconditionError("inflection in range: kappa vanishes near t = " + std::to_string(profile.grid[i]));
        double ul = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) ul += u[k] * profile.ells[k][i];
        double const s = ul / kappa;
        loc.t.push_back(profile.grid[i]);
        loc.s.push_back(s);
        loc.residual.push_back(std::abs(s * kappa - ul));
    }
    return loc;
}

struct Directrix
{
    std::vector<double> offsets;
    std::vector<double> grid;
    std::vector<Vec> points;
    std::vector<Vec> tangent;          // chained unit tangent of g from its samples
    double tangency_residual = 0.0;    // max |g' - (g'.tau) tau| / max(1, |g'|)
    std::size_t degenerate_nodes = 0;  // nodes with |g'| too small to orient tau_g
    std::string formula = "g = f + sum u_i (l_i / kappa tau + nu_i)";
};

inline Directrix directrix(Curve const& c, AdaptedFrame const& frame, InvariantProfile const& profile,
                           std::span<double const> u, double tangency_tol = 1e-5)
{
    check_offsets(u, frame.count(), "directrix");
    auto const loc = singular_locus_parallel(profile, u);  // throws on inflections

    Directrix d;
    d.offsets.assign(u.begin(), u.end());
    d.grid = frame.grid;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        Vec g = c.point(frame.grid[i]) + loc.s[i] * frame.tau[i];
        for (std::size_t k = 0; k < u.size(); ++k) g += u[k] * frame.nus[i][k];
        d.points.push_back(std::move(g));
    }

    auto const dg = differentiate_samples(d.grid, d.points);
    for (std::size_t i = 0; i < dg.size(); ++i) {
        double const n = dg[i].norm();
        Vec const perp = dg[i] - dg[i].dot(frame.tau[i]) * frame.tau[i];
        d.tangency_residual = std::max(d.tangency_residual, perp.norm() / std::max(1.0, n));
        if (n < 1e-6) {
            ++d.degenerate_nodes;
            d.tangent.push_back(frame.tau[i]);
            continue;
        }
        Vec tg = dg[i] / n;
        if (tg.dot(frame.tau[i]) < 0.0) tg = -tg;
        d.tangent.push_back(std::move(tg));
    }
    if (d.tangency_residual > tangency_tol)
        throw MathError("directrix is not tangent to tau: residual " + std::to_string(d.tangency_residual));
    return d;
}

// Tan(g)(t, s) = g(t) + s tau_g(t) with tau_g from the samples of g.
inline SurfaceGrid tangent_of_directrix(Directrix const& d, std::vector<double> const& s_grid,
                                        double tol = default_rank_tol)
{
    SurfaceGrid g;
    g.kind = MapKind::tan_of_directrix;
    g.t_grid = d.grid;
    g.s_grid = s_grid;
    g.ambient_dim = d.points.empty() ? 0 : static_cast<int>(d.points.front().size());
    g.domain_dim = 2;
    auto const dg = differentiate_samples(d.grid, d.points);
    auto const dtg = differentiate_samples(d.grid, d.tangent);
    g.reserve(g.rows() * g.cols());
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
        for (double s : s_grid) {
            Mat j(g.ambient_dim, 2);
            j.col(0) = dg[i] + s * dtg[i];
            j.col(1) = d.tangent[i];
            g.push(d.points[i] + s * d.tangent[i], j, tol);
        }
    }
    return g;
}

struct EquivalenceReport
{
    double max_residual = 0.0;
    std::size_t compared = 0;
    std::size_t skipped = 0;  // directrix-degenerate rows
    std::vector<double> row_residual;  // per t sample, NaN on skipped rows
};

// max |Pal(t, s) - Tan(g)(t, s - sum u_i l_i / kappa)| over the shared grid.
inline EquivalenceReport verify_right_equivalence(SurfaceGrid const& pal, Directrix const& dir,
                                                  AdaptedFrame const& frame, InvariantProfile const& profile)
{
    if (pal.t_grid != dir.grid || pal.t_grid != frame.grid) throw ConfigError("right equivalence needs a shared t grid");
    auto const loc = singular_locus_parallel(profile, dir.offsets);
    auto const dg = differentiate_samples(dir.grid, dir.points);
    EquivalenceReport r;
    for (std::size_t i = 0; i < pal.rows(); ++i) {
        if (dg[i].norm() < 1e-6) {
            r.skipped += pal.cols();
            r.row_residual.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        double row = 0.0;
        for (std::size_t j = 0; j < pal.cols(); ++j) {
            double const sigma = pal.s_grid[j] - loc.s[i];
            Vec const tan_g = dir.points[i] + sigma * dir.tangent[i];
            row = std::max(row, (pal.at(i, j) - tan_g).norm());
            ++r.compared;
        }
        r.row_residual.push_back(row);
        r.max_residual = std::max(r.max_residual, row);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Lagrangian lift of the normal map
// ---------------------------------------------------------------------------

struct NormalSample
{
    double t = 0.0;
    std::vector<double> u;
};

// Pull-back of sum dp_j ^ dx_j under (t, u) -> (f(t) + nu; nu), nu = sum u_i nu_i(t),
// covectors identified with vectors by the Euclidean metric. Coordinates are
// ordered (x_1..x_{1+p}, p_1..p_{1+p}).
inline double symplectic_pullback_check(Curve const& c, BishopFrame const& frame,
                                        std::vector<NormalSample> const& samples, double fd_step = 1e-4)
{
    std::size_t const p = frame.count();
    auto const lift = [&](double t, std::vector<double> const& u) {
        auto const nus = bishop_at(frame, t);
        Vec nu = Vec::Zero(c.dim());
        for (std::size_t k = 0; k < p; ++k) nu += u[k] * nus[k];
        return std::pair<Vec, Vec>{c.point(t) + nu, nu};
    };

    double worst = 0.0;
    for (auto const& smp : samples) {
        check_offsets(smp.u, p, "symplectic sample");
        std::vector<Vec> dx(1 + p), dp(1 + p);
        for (std::size_t a = 0; a <= p; ++a) {
            double const base = a == 0 ? smp.t : smp.u[a - 1];
            double const h = fd_step * std::max(1.0, std::abs(base));
            auto plus_t = smp.t;
            auto minus_t = smp.t;
            auto plus_u = smp.u;
            auto minus_u = smp.u;
            if (a == 0) {
                plus_t += h;
                minus_t -= h;
            } else {
                plus_u[a - 1] += h;
                minus_u[a - 1] -= h;
            }
            auto const [xp, pp] = lift(plus_t, plus_u);
            auto const [xm, pm] = lift(minus_t, minus_u);
            dx[a] = (xp - xm) / (2.0 * h);
            dp[a] = (pp - pm) / (2.0 * h);
        }
        for (std::size_t a = 0; a <= p; ++a)
            for (std::size_t b = a + 1; b <= p; ++b)
                worst = std::max(worst, std::abs(dp[a].dot(dx[b]) - dp[b].dot(dx[a])));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Normal flatness of the tangent surface (n = 1)
// ---------------------------------------------------------------------------

struct FlatnessReport
{
    double max_residual = 0.0;
    std::size_t regular_nodes = 0;
    std::size_t skipped_nodes = 0;

    bool vacuous() const noexcept { return regular_nodes == 0; }
};

// Extends nu_i(t, s) = nu_i(t) over Tan(f) and measures the normal component of
// d nu_i / dt (fourth-order differences of the sampled frame) at regular nodes.
// Zero means {nu_i} is a Bishop frame of the tangent surface.
inline FlatnessReport verify_normal_flatness_of_tangent_surface(Curve const& c, AdaptedFrame const& frame,
                                                                std::vector<double> const& s_grid)
{
    (void)c;
    FlatnessReport r;
    std::size_t const n = frame.size();
    if (frame.count() == 0 || n < 3) {
        r.skipped_nodes = n * s_grid.size();
        return r;
    }
    std::vector<std::vector<Vec>> dnu(frame.count());
    for (std::size_t k = 0; k < frame.count(); ++k) {
        std::vector<Vec> samples;
        for (std::size_t i = 0; i < n; ++i) samples.push_back(frame.nus[i][k]);
        dnu[k] = differentiate_samples(frame.grid, samples);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (double s : s_grid) {
            Mat j(frame.fprime[i].size(), 2);
            j.col(0) = frame.fprime[i] + s * frame.dtau[i];
            j.col(1) = frame.tau[i];
            Vec const sv = singular_values(j);
            if (sv.minCoeff() < near_singular * sv.maxCoeff()) {
                ++r.skipped_nodes;
                continue;
            }
            Mat const q = Eigen::HouseholderQR<Mat>(j).householderQ() * Mat::Identity(j.rows(), 2);
            for (std::size_t k = 0; k < frame.count(); ++k) {
                Vec normal_part = dnu[k][i] - q * (q.transpose() * dnu[k][i]);
                normal_part -= normal_part.dot(frame.nus[i][k]) * frame.nus[i][k];
                r.max_residual = std::max(r.max_residual, normal_part.norm());
            }
            ++r.regular_nodes;
        }
    }
    return r;
}

// Tangent plane of Tan(f) at (t, lambda s) vs (t, s): principal-angle distance.
inline double tangent_plane_homogeneity(Curve const& c, double t, double s, double lambda, int k_max = default_k_max)
{
    auto const smp = tangent_sample(c, t, k_max);
    auto const plane = [&](double ss) {
        Mat j(c.dim(), 2);
        j.col(0) = smp.fprime + ss * smp.dtau;
        j.col(1) = smp.tau;
        return j;
    };
    return subspace_distance(plane(s), plane(lambda * s));
}

// ---------------------------------------------------------------------------
// Normal curvature of surfaces in R^4
// ---------------------------------------------------------------------------

using SurfaceFn = std::function<Vec(double s, double t)>;
using NormalPairFn = std::function<std::pair<Vec, Vec>(double s, double t)>;

struct NormalCurvatureGrid
{
    std::vector<double> s_grid;
    std::vector<double> t_grid;
    std::vector<double> k;  // t-major, NaN where the area form degenerates
    std::size_t skipped = 0;

    double at(std::size_t i_s, std::size_t i_t) const { return k[i_s * t_grid.size() + i_t]; }
};

// omega_34(eta) = (d_eta e3) . e4 by central differences; Omega_34 = d omega_34 as the
// circulation around a cell of half-width fd_step centred on each node divided by its
// parameter area; K from Omega_34 = -K omega_1 ^ omega_2, with omega_1 ^ omega_2 the area
// form of the induced metric on (d_s, d_t).
inline NormalCurvatureGrid normal_curvature_r4(SurfaceFn const& surface, NormalPairFn const& normals,
                                               std::vector<double> const& s_grid, std::vector<double> const& t_grid,
                                               double fd_step = 1e-4)
{
    NormalCurvatureGrid out;
    out.s_grid = s_grid;
    out.t_grid = t_grid;
    double const h = fd_step;

    auto const partials = [&](double s, double t) {
        Vec const fs = (surface(s + h, t) - surface(s - h, t)) / (2 * h);
        Vec const ft = (surface(s, t + h) - surface(s, t - h)) / (2 * h);
        return std::pair<Vec, Vec>{fs, ft};
    };
    auto const omega = [&](double s, double t, bool along_s) {
        Vec const e3p = (along_s ? normals(s + h, t) : normals(s, t + h)).first;
        Vec const e3m = (along_s ? normals(s - h, t) : normals(s, t - h)).first;
        return ((e3p - e3m) / (2 * h)).dot(normals(s, t).second);
    };

    for (double s : s_grid) {
        for (double t : t_grid) {
            auto const [fs, ft] = partials(s, t);
            auto const [e3, e4] = normals(s, t);
            if (fs.size() != 4 || e3.size() != 4 || e4.size() != 4)
                throw ConfigError("normal curvature is defined for surfaces in R^4");
            double const ortho = std::max({std::abs(e3.dot(e4)), std::abs(e3.norm() - 1.0), std::abs(e4.norm() - 1.0),
                                           std::abs(e3.dot(fs)) / std::max(1.0, fs.norm()),
                                           std::abs(e3.dot(ft)) / std::max(1.0, ft.norm()),
                                           std::abs(e4.dot(fs)) / std::max(1.0, fs.norm()),
                                           std::abs(e4.dot(ft)) / std::max(1.0, ft.norm())});
            if (ortho > 1e-6)
                throw PreconditionError("normal frame is not orthonormal and normal to the surface");
            double const area = std::sqrt(std::max(0.0, fs.squaredNorm() * ft.squaredNorm() - fs.dot(ft) * fs.dot(ft)));
            if (area < 1e-10) {
                out.k.push_back(std::numeric_limits<double>::quiet_NaN());
                ++out.skipped;
                continue;
            }
            // counter-clockwise boundary of [s-h, s+h] x [t-h, t+h]
            double const w = 2 * h;
            double const circulation = omega(s, t - h, true) * w + omega(s + h, t, false) * w -
                                       omega(s, t + h, true) * w - omega(s - h, t, false) * w;
            double const curvature_form = circulation / (w * w);
            out.k.push_back(-curvature_form / area);
        }
    }
    return out;
}

} // namespace frontal
