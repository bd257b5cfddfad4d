#pragma once

/**
    \file
    \brief normally parallel (Bishop) frames, the adapted frame of the tangent surface, and invariants

    Two different transports live here and must not be confused:

    - bishop_transport: a parallel orthonormal frame {nu_1..nu_p} of the curve's own normal
      bundle N_f (rank p). nu' = -(nu . tau') tau, so nu' is tangential. With it the frame
      (tau, nu_1..nu_p) satisfies tau' = sum k_i nu_i, nu_i' = -k_i tau.

    - adapted_frame: {tau, mu, nu_1..nu_{p-1}} where {tau, mu} spans the tangent plane of
      Tan(f) along s = 0 and the nu_i are parallel in N_{Tan(f)} (rank p - 1), i.e.
      nu_i' in span{tau, mu}. Structure equations: f' = a tau, tau' = kappa mu,
      mu' = -kappa tau + sum l_i nu_i, nu_i' = -l_i mu.

    The projection form nu' = -sum_j (nu . e_j') e_j over an orthonormal tangent basis {e_j}
    is equivalent to the linear ODE for parallel fields written in graph coordinates: both
    say the normal part of nu' vanishes and nu stays orthogonal to the e_j, but the
    projection form does not break down where the tangent turns vertical.

    Orientation: mu = tau' / |tau'|, hence kappa > 0 away from inflections. Flipping
    (mu, kappa, l_i) -> (-mu, -kappa, -l_i) gives an equally valid frame.
*/

#include <frontal/curve.hpp>
#include <frontal/error.hpp>
#include <frontal/frontal_analysis.hpp>
#include <frontal/jet.hpp>
#include <frontal/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frontal {

struct TransportOptions
{
    bool renormalize = true;
    double max_drift = 1e-3;  // larger pre-renormalisation drift rejects the step
    int k_max = default_k_max;
    double tol = default_rank_tol;
};

// Orthonormal tangent vectors e_j with their derivatives e_j' at a parameter.
using TangentBasisFn = std::function<std::vector<std::pair<Vec, Vec>>(double)>;

struct TransportResult
{
    std::vector<double> grid;
    std::vector<std::vector<Vec>> fields;  // fields[i][k]: k-th vector at grid[i]
    std::vector<std::vector<Vec>> derivs;  // right-hand side at grid[i]
    double max_drift = 0.0;                // worst Gram deviation before renormalisation
};

namespace detail {

inline std::vector<Vec> transport_rhs(std::vector<std::pair<Vec, Vec>> const& basis, std::vector<Vec> const& nus)
{
    std::vector<Vec> out;
    out.reserve(nus.size());
    for (auto const& nu : nus) {
        Vec d = Vec::Zero(nu.size());
        for (auto const& [e, de] : basis) d -= nu.dot(de) * e;
        out.push_back(std::move(d));
    }
    return out;
}

inline std::vector<Vec> axpy(std::vector<Vec> const& x, double h, std::vector<Vec> const& k)
{
    std::vector<Vec> out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * k[i];
    return out;
}

inline std::vector<Vec> basis_vectors(std::vector<std::pair<Vec, Vec>> const& basis)
{
    std::vector<Vec> out;
    out.reserve(basis.size());
    for (auto const& b : basis) out.push_back(b.first);
    return out;
}

} // namespace detail

// Classical RK4 for nu' = -sum_j (nu . e_j') e_j along `grid` (increasing or
// decreasing), with Gram-Schmidt against {e_j} after every step.
inline TransportResult parallel_transport(TangentBasisFn const& basis_at, std::vector<double> const& grid,
                                          std::vector<Vec> nu0, TransportOptions const& opt = {})
{
    if (grid.size() < 2) throw ConfigError("transport grid needs at least 2 samples");
    auto const b0 = basis_at(grid.front());
    {
        std::vector<Vec> all = detail::basis_vectors(b0);
        all.insert(all.end(), nu0.begin(), nu0.end());
        if (gram_deviation(all) > 1e-10)
            throw PreconditionError("initial normals must be orthonormal and orthogonal to the tangent space");
    }

    TransportResult r;
    r.grid = grid;
    r.fields.reserve(grid.size());
    r.derivs.reserve(grid.size());
    r.fields.push_back(nu0);
    r.derivs.push_back(detail::transport_rhs(b0, nu0));

    std::vector<Vec> y = std::move(nu0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double const t = grid[i];
        double const h = grid[i + 1] - grid[i];
        auto const mid = basis_at(t + 0.5 * h);
        auto const end = basis_at(t + h);
        auto const k1 = r.derivs.back();
        auto const k2 = detail::transport_rhs(mid, detail::axpy(y, 0.5 * h, k1));
        auto const k3 = detail::transport_rhs(mid, detail::axpy(y, 0.5 * h, k2));
        auto const k4 = detail::transport_rhs(end, detail::axpy(y, h, k3));
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += (h / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);

        auto const fixed = detail::basis_vectors(end);
        std::vector<Vec> all = fixed;
        all.insert(all.end(), y.begin(), y.end());
        double const drift = gram_deviation(all);
        r.max_drift = std::max(r.max_drift, drift);
        if (drift > opt.max_drift)
            throw PreconditionError("step rejected: orthonormality drift " + std::to_string(drift) +
                                    " exceeds limit, grid too coarse");
        if (opt.renormalize) orthonormalize(y, fixed);

        r.fields.push_back(y);
        r.derivs.push_back(detail::transport_rhs(end, y));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Pointwise tangent data
// ---------------------------------------------------------------------------

struct TangentSample
{
    Vec fprime;
    Vec tau;
    Vec dtau;
    Vec ddtau;
};

inline TangentSample tangent_sample(Curve const& c, double t, int k_max = default_k_max,
                                    double tol = default_rank_tol)
{
    auto const tj = tangent_jet(c, t, 2, k_max, tol);
    Mat const d = jet_vector_derivatives(tj.tau, 2);
    return {c.derivative(t, 1), d.col(0), d.col(1), d.col(2)};
}

// tau with mu = tau'/|tau'| and mu'; throws when tau' vanishes.
struct OsculatingSample
{
    Vec tau, dtau, mu, dmu;
    double kappa = 0.0;
};

inline OsculatingSample osculating_sample(Curve const& c, double t, int k_max = default_k_max,
                                          double tol = default_rank_tol)
{
    auto const tj = tangent_jet(c, t, 2, k_max, tol);
    std::vector<Jet> dtau;
    dtau.reserve(tj.tau.size());
    for (auto const& j : tj.tau) dtau.push_back(j.differentiated());
    Jet norm2 = Jet::constant(t, 1, 0.0);
    for (auto const& j : dtau) norm2 += j * j;
    if (!(norm2[0] > 0.0)) throw PreconditionError("inflection point in range: tau' vanishes");
    Jet const inv = 1.0 / sqrt(norm2);
    std::vector<Jet> mu;
    for (auto const& j : dtau) mu.push_back(j * inv);

    Mat const td = jet_vector_derivatives(tj.tau, 1);
    Mat const md = jet_vector_derivatives(mu, 1);
    return {td.col(0), td.col(1), md.col(0), md.col(1), std::sqrt(norm2[0])};
}

// ---------------------------------------------------------------------------
// Bishop frame of N_f
// ---------------------------------------------------------------------------

struct BishopFrame
{
    std::vector<double> grid;
    std::vector<Vec> tau;              // chained unit tangent
    std::vector<Vec> dtau;             // derivative of the chained tangent
    std::vector<std::vector<Vec>> nus;     // nus[i][k]
    std::vector<std::vector<Vec>> dnus;    // ODE right-hand side at grid[i]
    double max_drift = 0.0;

    std::size_t size() const noexcept { return grid.size(); }
    std::size_t count() const noexcept { return nus.empty() ? 0 : nus.front().size(); }
};

// Default initial normals: Gram-Schmidt of the standard basis against tau(t0).
inline std::vector<Vec> default_bishop_normals(Curve const& c, double t0, int k_max = default_k_max)
{
    auto const s = tangent_sample(c, t0, k_max);
    return complete_basis({s.tau}, c.dim());
}

inline BishopFrame bishop_transport(Curve const& c, std::vector<double> const& grid,
                                    std::optional<std::vector<Vec>> nu0 = std::nullopt,
                                    TransportOptions const& opt = {})
{
    auto const basis = [&](double t) {
        auto const s = tangent_sample(c, t, opt.k_max, opt.tol);
        return std::vector<std::pair<Vec, Vec>>{{s.tau, s.dtau}};
    };
    std::vector<Vec> init = nu0 ? *nu0 : default_bishop_normals(c, grid.front(), opt.k_max);
    if (static_cast<int>(init.size()) > c.codim()) throw ConfigError("more initial normals than the codimension");
    auto tr = parallel_transport(basis, grid, std::move(init), opt);

    BishopFrame f;
    f.grid = grid;
    f.max_drift = tr.max_drift;
    f.nus = std::move(tr.fields);
    f.dnus = std::move(tr.derivs);
    f.tau.reserve(grid.size());
    f.dtau.reserve(grid.size());
    for (double t : grid) {
        auto s = tangent_sample(c, t, opt.k_max, opt.tol);
        if (!f.tau.empty() && s.tau.dot(f.tau.back()) < 0.0) {
            s.tau = -s.tau;
            s.dtau = -s.dtau;
        }
        f.tau.push_back(s.tau);
        f.dtau.push_back(s.dtau);
    }
    return f;
}

// Cubic Hermite interpolation of a Bishop frame between nodes, using the
// transported values and the ODE right-hand side as slopes.
inline std::vector<Vec> bishop_at(BishopFrame const& f, double t)
{
    auto const& g = f.grid;
    bool const increasing = g.back() > g.front();
    auto const less = [increasing](double a, double b) { return increasing ? a < b : a > b; };
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(g.begin(), g.end(), t, less) - g.begin());
    hi = std::clamp<std::size_t>(hi, 1, g.size() - 1);
    std::size_t const lo = hi - 1;
    double const h = g[hi] - g[lo];
    double const x = (t - g[lo]) / h;
    double const h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    double const h10 = x * (1 - x) * (1 - x);
    double const h01 = x * x * (3 - 2 * x);
    double const h11 = x * x * (x - 1);
    std::vector<Vec> out;
    for (std::size_t k = 0; k < f.count(); ++k)
        out.push_back(h00 * f.nus[lo][k] + h10 * h * f.dnus[lo][k] + h01 * f.nus[hi][k] + h11 * h * f.dnus[hi][k]);
    return out;
}

// ---------------------------------------------------------------------------
// Adapted frame {tau, mu, nu_1..nu_{p-1}} along the tangent surface
// ---------------------------------------------------------------------------

struct AdaptedFrame
{
    std::vector<double> grid;
    std::vector<Vec> fprime;
    std::vector<Vec> tau, dtau;
    std::vector<Vec> mu, dmu;
    std::vector<std::vector<Vec>> nus;   // p - 1 vectors per sample
    std::vector<std::vector<Vec>> dnus;  // ODE right-hand side
    double max_drift = 0.0;

    std::size_t size() const noexcept { return grid.size(); }
    std::size_t count() const noexcept { return nus.empty() ? 0 : nus.front().size(); }
};

struct FrameOptions
{
    TransportOptions transport{};
    double inflection_tol = 1e-7;  // relative to max |tau'| on the grid
};

inline AdaptedFrame adapted_frame(Curve const& c, std::vector<double> const& grid,
                                  std::optional<std::vector<Vec>> nu0 = std::nullopt,
                                  FrameOptions const& opt = {})
{
    if (grid.size() < 2) throw ConfigError("frame grid needs at least 2 samples");
    int const k_max = opt.transport.k_max;
    double const tol = opt.transport.tol;

    AdaptedFrame f;
    f.grid = grid;
    std::vector<TangentSample> samples;
    samples.reserve(grid.size());
    double max_dtau = 0.0;
    for (double t : grid) {
        samples.push_back(tangent_sample(c, t, k_max, tol));
        max_dtau = std::max(max_dtau, samples.back().dtau.norm());
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(samples[i].dtau.norm() >= opt.inflection_tol * max_dtau) || max_dtau == 0.0)
            throw PreconditionError("inflection point in range near t = " + std::to_string(grid[i]));
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto s = osculating_sample(c, grid[i], k_max, tol);
        if (!f.tau.empty() && s.tau.dot(f.tau.back()) < 0.0) {
            s.tau = -s.tau;
            s.dtau = -s.dtau;
            s.mu = -s.mu;
            s.dmu = -s.dmu;
        }
        f.fprime.push_back(samples[i].fprime);
        f.tau.push_back(s.tau);
        f.dtau.push_back(s.dtau);
        f.mu.push_back(s.mu);
        f.dmu.push_back(s.dmu);
    }

    std::vector<Vec> init = nu0 ? *nu0 : complete_basis({f.tau.front(), f.mu.front()}, c.dim());
    if (static_cast<int>(init.size()) != c.codim() - 1)
        throw ConfigError("adapted frame needs exactly p - 1 initial normals");

    if (init.empty()) {
        f.nus.assign(grid.size(), {});
        f.dnus.assign(grid.size(), {});
        return f;
    }

    auto const basis = [&](double t) {
        auto const s = osculating_sample(c, t, k_max, tol);
        return std::vector<std::pair<Vec, Vec>>{{s.tau, s.dtau}, {s.mu, s.dmu}};
    };
    auto tr = parallel_transport(basis, grid, std::move(init), opt.transport);
    f.nus = std::move(tr.fields);
    f.dnus = std::move(tr.derivs);
    f.max_drift = tr.max_drift;
    return f;
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

struct InvariantProfile
{
    std::vector<double> grid;
    std::vector<double> a;
    std::vector<double> kappa;
    std::vector<std::vector<double>> ells;  // ells[k][i]
};

inline InvariantProfile invariants(AdaptedFrame const& frame)
{
    InvariantProfile p;
    p.grid = frame.grid;
    p.ells.assign(frame.count(), {});
    for (std::size_t i = 0; i < frame.size(); ++i) {
        p.a.push_back(frame.fprime[i].dot(frame.tau[i]));
        p.kappa.push_back(frame.dtau[i].dot(frame.mu[i]));
        for (std::size_t k = 0; k < frame.count(); ++k) p.ells[k].push_back(frame.dmu[i].dot(frame.nus[i][k]));
    }
    return p;
}

// The curve argument is accepted for symmetry with the other operations; every
// derivative the profile needs already lives in the frame.
inline InvariantProfile invariants(Curve const&, AdaptedFrame const& frame) { return invariants(frame); }

// k_i = tau' . nu_i for the Bishop frame of N_f.
inline std::vector<std::vector<double>> bishop_curvatures(BishopFrame const& frame)
{
    std::vector<std::vector<double>> k(frame.count());
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = 0; j < frame.count(); ++j) k[j].push_back(frame.dtau[i].dot(frame.nus[i][j]));
    return k;
}

// Parameter intervals where |tau'| < tol (absolute), plus bracketed minima of
// |tau'|^2 between samples that dip below tol.
inline std::vector<Interval> inflection_points(Curve const& c, std::vector<double> const& grid, double tol = 1e-7,
                                               int k_max = default_k_max)
{
    auto const speed2 = [&](double t) { return tangent_sample(c, t, k_max).dtau.squaredNorm(); };
    std::vector<double> v;
    v.reserve(grid.size());
    for (double t : grid) v.push_back(speed2(t));

    std::vector<Interval> out;
    auto const add = [&out](double lo, double hi) {
        if (!out.empty() && lo <= out.back().hi) out.back().hi = std::max(out.back().hi, hi);
        else out.push_back({lo, hi});
    };

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (v[i] < tol * tol) {
            // runs of flagged samples form one interval
            if (i > 0 && v[i - 1] < tol * tol) out.back().hi = grid[i];
            else add(grid[i], grid[i]);
            continue;
        }
        if (i == 0 || i + 1 == grid.size()) continue;
        // local minimum of |tau'|^2: the slope changes sign from - to +
        if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) {
            double lo = grid[i - 1];
            double hi = grid[i + 1];
            double const phi = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 80; ++it) {
                double const x1 = hi - phi * (hi - lo);
                double const x2 = lo + phi * (hi - lo);
                if (speed2(x1) < speed2(x2)) hi = x2;
                else lo = x1;
            }
            if (speed2(0.5 * (lo + hi)) < tol * tol) add(grid[i - 1], grid[i + 1]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structure-equation residuals
// ---------------------------------------------------------------------------

// Maxima over interior samples; derivatives are central differences of the
// sampled frame, each residual scaled by max(1, |derivative|).
struct StructureResiduals
{
    double speed = 0.0;    // f' - a tau
    double tangent = 0.0;  // tau' - kappa mu      (Bishop: tau' - sum k_i nu_i)
    double principal = 0.0;  // mu' + kappa tau - sum l_i nu_i   (adapted only)
    double normals = 0.0;  // nu_i' + l_i mu       (Bishop: nu_i' + k_i tau)

    double max() const noexcept { return std::max({speed, tangent, principal, normals}); }
};

namespace detail {

inline Vec central(std::vector<Vec> const& v, std::vector<double> const& g, std::size_t i)
{
    return (v[i + 1] - v[i - 1]) / (g[i + 1] - g[i - 1]);
}

inline double scaled(Vec const& residual, Vec const& derivative)
{
    return residual.norm() / std::max(1.0, derivative.norm());
}

} // namespace detail

inline StructureResiduals structure_residuals(AdaptedFrame const& frame, InvariantProfile const& profile)
{
    StructureResiduals r;
    auto const& g = frame.grid;
    std::vector<std::vector<Vec>> nus(frame.count());
    for (std::size_t k = 0; k < frame.count(); ++k)
        for (std::size_t i = 0; i < frame.size(); ++i) nus[k].push_back(frame.nus[i][k]);

    for (std::size_t i = 0; i < frame.size(); ++i)
        r.speed = std::max(r.speed, detail::scaled(frame.fprime[i] - profile.a[i] * frame.tau[i], frame.fprime[i]));
    for (std::size_t i = 1; i + 1 < frame.size(); ++i) {
        Vec const dtau = detail::central(frame.tau, g, i);
        Vec const dmu = detail::central(frame.mu, g, i);
        r.tangent = std::max(r.tangent, detail::scaled(dtau - profile.kappa[i] * frame.mu[i], dtau));
        Vec principal = dmu + profile.kappa[i] * frame.tau[i];
        for (std::size_t k = 0; k < frame.count(); ++k) principal -= profile.ells[k][i] * frame.nus[i][k];
        r.principal = std::max(r.principal, detail::scaled(principal, dmu));
        for (std::size_t k = 0; k < frame.count(); ++k) {
            Vec const dnu = detail::central(nus[k], g, i);
            r.normals = std::max(r.normals, detail::scaled(dnu + profile.ells[k][i] * frame.mu[i], dnu));
        }
    }
    return r;
}

inline StructureResiduals bishop_structure_residuals(Curve const& c, BishopFrame const& frame)
{
    StructureResiduals r;
    auto const& g = frame.grid;
    auto const k = bishop_curvatures(frame);
    std::vector<std::vector<Vec>> nus(frame.count());
    for (std::size_t j = 0; j < frame.count(); ++j)
        for (std::size_t i = 0; i < frame.size(); ++i) nus[j].push_back(frame.nus[i][j]);

    for (std::size_t i = 0; i < frame.size(); ++i) {
        Vec const df = c.derivative(g[i], 1);
        r.speed = std::max(r.speed, detail::scaled(df - df.dot(frame.tau[i]) * frame.tau[i], df));
    }
    for (std::size_t i = 1; i + 1 < frame.size(); ++i) {
        Vec const dtau = detail::central(frame.tau, g, i);
        Vec res = dtau;
        for (std::size_t j = 0; j < frame.count(); ++j) res -= k[j][i] * frame.nus[i][j];
        r.tangent = std::max(r.tangent, detail::scaled(res, dtau));
        for (std::size_t j = 0; j < frame.count(); ++j) {
            Vec const dnu = detail::central(nus[j], g, i);
            r.normals = std::max(r.normals, detail::scaled(dnu + k[j][i] * frame.tau[i], dnu));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Unit normal of the tangent surface of a space curve, across inflections
// ---------------------------------------------------------------------------

// For f in R^3, tau x tau' spans the normal line of Tan(f). At an inflection it
// vanishes to some order m; dividing its jet by (t - t0)^m extends the normal.
inline std::vector<Jet> tangent_surface_normal_jet(Curve const& c, double t0, int order, int k_max = default_k_max,
                                                   double tol = default_rank_tol)
{
    if (c.dim() != 3) throw ConfigError("tangent-surface normal jet is defined for space curves");
    int const total = order + k_max + 1;
    auto const tau = tangent_jet(c, t0, total, k_max, tol).tau;
    std::vector<Jet> dtau;
    for (auto const& j : tau) dtau.push_back(j.differentiated());
    std::vector<Jet> t3;
    for (auto const& j : tau) t3.push_back(j.truncated(total - 1));
    std::vector<Jet> n{t3[1] * dtau[2] - t3[2] * dtau[1], t3[2] * dtau[0] - t3[0] * dtau[2],
                       t3[0] * dtau[1] - t3[1] * dtau[0]};

    double scale = 0.0;
    for (int k = 0; k <= total - 1; ++k) {
        double s = 0.0;
        for (auto const& j : n) s += j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k)];
        scale = std::max(scale, std::sqrt(s));
    }
    int m = -1;
    for (int k = 0; k <= k_max && k <= total - 1; ++k) {
        double s = 0.0;
        for (auto const& j : n) s += j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k)];
        if (std::sqrt(s) > tol * scale && std::sqrt(s) > 0.0) {
            m = k;
            break;
        }
    }
    if (m < 0) throw PreconditionError("tangent-surface normal undetermined: tau' vanishes to high order");

    std::vector<Jet> g;
    for (auto const& j : n) g.push_back(j.divided_by_power(m).truncated(order));
    Jet norm2 = Jet::constant(t0, order, 0.0);
    for (auto const& j : g) norm2 += j * j;
    Jet const inv = 1.0 / sqrt(norm2);
    for (auto& j : g) j = j * inv;
    return g;
}

} // namespace frontal
