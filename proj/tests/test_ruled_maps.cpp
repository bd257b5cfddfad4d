#include "support.hpp"

#include <frontal/corpus.hpp>
#include <frontal/ruled_maps.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace frontal;
using frontal::testing::vec;

namespace {

SurfaceGrid tan_of(Curve const& c, std::vector<double> const& t_grid, std::vector<double> const& s_grid)
{
    return tangent_map(c, unit_tangent(c, t_grid), s_grid);
}

} // namespace

// The closed forms use the frame tau = f'; the unit-tangent map is the same
// surface reparametrized by s -> s / |f'(t)|.
TEST(TangentMapExamples, ClosedForms)
{
    auto const grid = linspace(-1, 1, 21);
    auto const c22 = corpus::get("example22").curve;
    auto const c23 = corpus::get("example23").curve;
    auto const t22 = tan_of(c22, grid, grid);
    auto const t23 = tan_of(c23, grid, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double const t = grid[i];
            double s = grid[j] / c22.derivative(t, 1).norm();
            EXPECT_LE((t22.at(i, j) - vec({t + s, t * t / 2 + s * t, t * t * t / 6 + s * t * t / 2})).norm(), 1e-10);
            s = grid[j] / c23.derivative(t, 1).norm();
            EXPECT_LE((t23.at(i, j) - vec({t + s, t * t * t / 6 + s * t * t / 2, std::pow(t, 4) / 24 + s * t * t * t / 6}))
                          .norm(),
                      1e-10);
        }
    }
}

TEST(TangentMapExamples, ZeroOffsetIsTheCurve)
{
    for (auto id : corpus::ids()) {
        auto const c = corpus::get(id).curve;
        auto const grid = linspace(c.domain().lo, c.domain().hi, 11);
        auto const tan = tan_of(c, grid, {0.0});
        for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE((tan.at(i, 0) - c.point(grid[i])).norm(), 1e-15) << id;
    }
}

TEST(TangentMapExamples, SingularFlagMatchesRank)
{
    auto const grid = linspace(-1, 1, 11);
    auto const tan = tan_of(corpus::get("example23").curve, grid, grid);
    for (std::size_t k = 0; k < tan.points.size(); ++k) EXPECT_EQ(tan.singular[k] != 0, tan.jac_rank[k] < 2);
}

TEST(NormalMapExamples, LineIsIdentity)
{
    auto const c = corpus::get("line").curve;
    auto const grid = linspace(-1, 1, 11);
    auto const frame = bishop_transport(c, grid, std::vector<Vec>{vec({0, 1, 0}), vec({0, 0, 1})});
    for (double u2 : {-0.5, 0.0, 0.7}) {
        auto const nor = normal_map(c, frame, grid, vec({1, 0}), vec({0, u2}));
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = 0; j < grid.size(); ++j)
                EXPECT_LE((nor.at(i, j) - vec({grid[i], grid[j], u2})).norm(), 1e-15);
    }
}

TEST(NormalMapExamples, CircleOffset)
{
    auto const c = corpus::get("circle").curve;
    auto const frame = bishop_transport(c, linspace(0, 1, 101), std::vector<Vec>{vec({1, 0, 0}), vec({0, 0, 1})});
    auto const nor = normal_map(c, frame, {0.0, 0.3});
    EXPECT_LE((nor.at(0, 1) - vec({1.3, 0, 0})).norm(), 1e-15);
    for (std::size_t i = 0; i < frame.size(); ++i) EXPECT_LE((nor.at(i, 0) - c.point(frame.grid[i])).norm(), 1e-15);
}

TEST(CanalExamples, TorusAndCylinder)
{
    auto const angles = linspace(0, 2 * std::numbers::pi, 37);
    auto const circle = corpus::get("circle").curve;
    auto const cf = bishop_transport(circle, linspace(0, 2 * std::numbers::pi, 629),
                                     std::vector<Vec>{vec({1, 0, 0}), vec({0, 0, 1})});
    auto const torus = canal_hypersurface(circle, cf, 0.3, angles);
    EXPECT_LE((torus.at(0, 0) - vec({1.3, 0, 0})).norm(), 1e-15);
    for (std::size_t i = 0; i < torus.rows(); ++i)
        for (std::size_t j = 0; j < torus.cols(); ++j)
            EXPECT_NEAR((torus.at(i, j) - circle.point(torus.t_grid[i])).norm(), 0.3, 1e-9);

    auto const line = corpus::get("line").curve;
    auto const cyl = canal_hypersurface(line, bishop_transport(line, linspace(-1, 1, 11)), 1.0, angles);
    for (auto const& x : cyl.points) EXPECT_NEAR(std::hypot(x[1], x[2]), 1.0, 1e-12);
}

TEST(CanalExamples, Preconditions)
{
    auto const c = corpus::get("circle").curve;
    auto const f = bishop_transport(c, linspace(0, 1, 11));
    EXPECT_THROW((void)canal_hypersurface(c, f, 0.0, {0.0}), ConfigError);
    auto const r4 = corpus::get("r4curve").curve;
    EXPECT_THROW((void)canal_hypersurface(r4, bishop_transport(r4, linspace(-1, 1, 21)), 0.3, {0.0}), ConfigError);
}

TEST(ParallelExamples, Example22ClosedForm)
{
    auto const c = corpus::get("example22").curve;
    auto const grid = linspace(-1, 1, 41);
    auto const frame = adapted_frame(c, grid);
    double const u = 0.4;
    auto const pal = parallel_of_tangent(c, frame, std::vector<double>{u}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double const t = grid[i];
            double const w = 2 + t * t;
            double const s = grid[j] / (w / 2);  // |f'| = (2 + t^2) / 2
            Vec const want = vec({t + s + u * t * t / w, t * t / 2 + s * t - 2 * u * t / w, t * t * t / 6 + s * t * t / 2 + 2 * u / w});
            EXPECT_LE((pal.at(i, j) - want).norm(), 1e-8) << t << ", " << s;
        }
    }
    // singular nodes sit on s = u
    for (std::size_t i = 0; i < pal.rows(); ++i)
        for (std::size_t j = 0; j < pal.cols(); ++j) EXPECT_EQ(pal.is_singular(i, j), std::abs(grid[j] - u) < 1e-12);
}

TEST(ParallelExamples, ZeroOffsetIsTangentMap)
{
    auto const c = corpus::get("helix").curve;
    auto const grid = linspace(0, 6, 31);
    auto const s_grid = linspace(-1, 1, 11);
    auto const pal = parallel_of_tangent(c, adapted_frame(c, grid), std::vector<double>{0.0}, s_grid);
    auto const tan = tan_of(c, grid, s_grid);
    for (std::size_t k = 0; k < pal.points.size(); ++k) {
        EXPECT_LE((pal.points[k] - tan.points[k]).norm(), 1e-12);
        EXPECT_EQ(pal.jac_rank[k], tan.jac_rank[k]);
    }
}

TEST(SingularLocusExamples, Example22IsConstant)
{
    auto const c = corpus::get("example22").curve;
    auto const frame = adapted_frame(c, linspace(-1, 1, 101));
    auto const prof = invariants(c, frame);
    for (double u : {0.0, 0.5, -0.7}) {
        auto const loc = singular_locus_parallel(prof, std::vector<double>{u});
        for (std::size_t i = 0; i < loc.s.size(); ++i) {
            EXPECT_NEAR(loc.s[i], u, 1e-6);
            EXPECT_LE(loc.residual[i], 1e-8 * std::max(1.0, std::abs(prof.kappa[i])));
        }
    }
}

TEST(SingularLocusExamples, Example23Diverges)
{
    auto const c = corpus::get("example23").curve;
    try {
        (void)singular_locus_parallel(invariants(c, adapted_frame(c, linspace(-1, 1, 21), std::nullopt)),
                                      std::vector<double>{0.5, 0.0});
        FAIL() << "expected a throw";
    } catch (PreconditionError const& e) {
        EXPECT_NE(std::string(e.what()).find("inflection"), std::string::npos);
    }
    // Off the inflection the locus grows like u / (2t); 499.9998 and 49.998 from a
    // symbolic expansion of l / kappa.
    for (double u2 : {0.5, -0.3}) {
        auto const frame = adapted_frame(c, linspace(1e-3, 1e-2, 901));
        auto const prof = invariants(c, frame);
        double const sign = frame.nus.front()[0][2] > 0 ? 1.0 : -1.0;
        auto const loc = singular_locus_parallel(prof, std::vector<double>{sign * u2});
        EXPECT_NEAR(std::abs(loc.s.front()) / std::abs(u2), 499.9998, 1e-3);
        EXPECT_NEAR(std::abs(loc.s.back()) / std::abs(u2), 49.998, 1e-2);
        EXPECT_GT(std::abs(loc.s.front()), 100 * std::abs(u2));
    }
}

TEST(DirectrixExamples, Example22)
{
    auto const c = corpus::get("example22").curve;
    auto const grid = linspace(-1, 1, 101);
    auto const frame = adapted_frame(c, grid);
    auto const prof = invariants(c, frame);
    for (double u : {0.0, 0.1, 0.5, -0.7}) {
        auto const d = directrix(c, frame, prof, std::vector<double>{u});
        double tangential = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double const t = grid[i];
            EXPECT_LE((d.points[i] - vec({t + u, t * t / 2, t * t * t / 6 + u})).norm(), 1e-6) << "u = " << u;
            tangential = std::max(tangential, std::abs((d.points[i] - c.point(t)).dot(frame.tau[i])));
        }
        // g - f has a tangential part exactly when g is not a parallel of f
        if (u == 0.0) {
            EXPECT_LE(tangential, 1e-12);
        } else {
            EXPECT_GT(tangential, 1e-3);
        }
        EXPECT_LE(d.tangency_residual, 1e-5);
    }
}

TEST(RightEquivalenceExamples, Residuals)
{
    auto const c22 = corpus::get("example22").curve;
    auto const grid = linspace(-1, 1, 201);
    auto const f22 = adapted_frame(c22, grid);
    auto const p22 = invariants(c22, f22);
    for (double u : {0.5, 0.0}) {
        std::vector<double> const off{u};
        auto const pal = parallel_of_tangent(c22, f22, off, grid);
        auto const rep = verify_right_equivalence(pal, directrix(c22, f22, p22, off), f22, p22);
        EXPECT_LE(rep.max_residual, u == 0.0 ? 1e-12 : 1e-6);
        EXPECT_EQ(rep.skipped, 0u);
    }

    auto const helix = corpus::get("helix").curve;
    auto const hgrid = linspace(0, 2 * std::numbers::pi, 401);
    auto const fh = adapted_frame(helix, hgrid);
    auto const ph = invariants(helix, fh);
    std::vector<double> const off{0.3};
    auto const rep = verify_right_equivalence(parallel_of_tangent(helix, fh, off, linspace(-1, 1, 21)),
                                              directrix(helix, fh, ph, off), fh, ph);
    EXPECT_LE(rep.max_residual, 1e-5);
}

TEST(SymplecticExamples, PullbackVanishes)
{
    struct Case
    {
        char const* id;
        double bound;
    };
    for (auto const& [id, bound] : {Case{"example22", 1e-6}, Case{"line", 1e-12}, Case{"circle", 1e-6}}) {
        auto const c = corpus::get(id).curve;
        auto const d = c.domain();
        auto const frame = bishop_transport(c, linspace(d.lo, d.hi, 2001));
        std::vector<NormalSample> samples;
        for (double t : linspace(d.lo + 0.05, d.hi - 0.05, 9))
            for (double u : {-0.4, 0.1, 0.6}) samples.push_back({t, {u, 0.5 * u + 0.2}});
        EXPECT_LE(symplectic_pullback_check(c, frame, samples), bound) << id;
    }
}

TEST(FlatnessExamples, TangentSurfaces)
{
    auto const s_grid = linspace(-1, 1, 20);  // avoids s = 0
    auto const r4 = corpus::get("r4curve").curve;
    auto const rep4 = verify_normal_flatness_of_tangent_surface(r4, adapted_frame(r4, linspace(-1, 1, 201)), s_grid);
    EXPECT_FALSE(rep4.vacuous());
    EXPECT_LE(rep4.max_residual, 1e-5);

    auto const c22 = corpus::get("example22").curve;
    auto const rep3 = verify_normal_flatness_of_tangent_surface(c22, adapted_frame(c22, linspace(-1, 1, 201)), s_grid);
    EXPECT_LE(rep3.max_residual, 1e-6);
}

TEST(FlatnessExamples, LineIsVacuous)
{
    // the line has no principal normal, so its frame is assembled by hand
    auto const c = corpus::get("line").curve;
    AdaptedFrame f;
    f.grid = linspace(-1, 1, 11);
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        f.fprime.push_back(vec({1, 0, 0}));
        f.tau.push_back(vec({1, 0, 0}));
        f.dtau.push_back(vec({0, 0, 0}));
        f.mu.push_back(vec({0, 1, 0}));
        f.dmu.push_back(vec({0, 0, 0}));
        f.nus.push_back({vec({0, 0, 1})});
        f.dnus.push_back({vec({0, 0, 0})});
    }
    auto const rep = verify_normal_flatness_of_tangent_surface(c, f, linspace(-1, 1, 5));
    EXPECT_TRUE(rep.vacuous());
    EXPECT_EQ(rep.skipped_nodes, 55u);
}

TEST(NormalCurvatureExamples, FlatCases)
{
    auto const grid = linspace(-0.5, 0.5, 5);
    auto const plane = normal_curvature_r4([](double s, double t) { return vec({s, t, 0, 0}); },
                                           [](double, double) { return std::pair{vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}; },
                                           grid, grid);
    for (double k : plane.k) EXPECT_EQ(k, 0.0);

    auto const torus = normal_curvature_r4(frontal::testing::torus, frontal::testing::torus_normals,
                                           linspace(0, 6, 7), linspace(0, 6, 7));
    EXPECT_EQ(torus.skipped, 0u);
    for (double k : torus.k) EXPECT_LE(std::abs(k), 1e-5);
}

TEST(NormalCurvatureExamples, GraphSurface)
{
    // symbolic K = -Omega_34 / area with the same frame: 8 at the origin, 125/27 at (0.1, -0.2)
    auto const k = normal_curvature_r4(frontal::testing::graph_surface, frontal::testing::graph_normals, {0.0, 0.1},
                                       {0.0, -0.2});
    EXPECT_NEAR(k.at(0, 0), 8.0, 0.05 * 8.0);
    EXPECT_GE(std::abs(k.at(0, 0)), 0.1);
    EXPECT_NEAR(k.at(1, 1), 125.0 / 27.0, 0.05 * 125.0 / 27.0);
}

TEST(NormalCurvatureExamples, RejectsNonNormalFrame)
{
    EXPECT_THROW((void)normal_curvature_r4(frontal::testing::graph_surface,
                                           [](double, double) { return std::pair{vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}; },
                                           {0.3}, {0.2}),
                 PreconditionError);
}

TEST(RuledProperties, TangentPlaneHomogeneity)
{
    for (char const* id : {"example22", "example23", "helix", "circle", "r4curve"}) {
        auto const c = corpus::get(id).curve;
        auto const d = c.domain();
        for (double t : linspace(d.lo, d.hi, 13)) {
            if (tangent_sample(c, t).dtau.norm() < 1e-6) continue;  // Tan is singular along the whole ruling
            for (double s : {-0.8, 0.3, 1.1})
                for (double lambda : {0.5, 2.0, -1.0})
                    EXPECT_LE(tangent_plane_homogeneity(c, t, s, lambda), 1e-5) << id << " t = " << t;
        }
    }
}

TEST(RuledProperties, CurveTangentInSurfaceTangentNearEdge)
{
    double const h = 1e-4;
    for (char const* id : {"example22", "helix", "r4curve"}) {
        auto const c = corpus::get(id).curve;
        auto const d = c.domain();
        for (double t : linspace(d.lo + 0.1, d.hi - 0.1, 7)) {
            auto const tan = tan_of(c, {t - h, t, t + h}, {-h, 0.0, h});
            auto const tau = tangent_sample(c, t).tau;
            for (std::size_t j : {0u, 2u}) {
                Mat plane(c.dim(), 2);
                plane.col(0) = (tan.at(2, j) - tan.at(0, j)) / (2 * h);
                plane.col(1) = (tan.at(1, 2) - tan.at(1, 0)) / (2 * h);
                Mat const q = Eigen::HouseholderQR<Mat>(plane).householderQ() * Mat::Identity(c.dim(), 2);
                EXPECT_LE((tau - q * (q.transpose() * tau)).norm(), 1e-6) << id << " t = " << t;
            }
        }
    }
}

TEST(RuledProperties, MonomialSingularSets)
{
    auto const grid = linspace(-1, 1, 21);
    for (auto [a1, a2] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        auto const c = Curve::from_strings("monomials", {"t^" + std::to_string(a1), "t^" + std::to_string(a2)}, {-1, 1});
        auto const tan = tan_of(c, grid, grid);
        int const e = a2 - a1 - 1;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = 0; j < grid.size(); ++j) {
                bool const zero = grid[j] == 0.0 || (e > 0 && grid[i] == 0.0);
                EXPECT_EQ(tan.is_singular(i, j), zero) << "(" << a1 << "," << a2 << ") t = " << grid[i] << " s = " << grid[j];
            }
        }
    }
}

TEST(RuledProperties, LocusMatchesSmallestSingularValue)
{
    struct Case
    {
        char const* id;
        std::vector<double> u;
    };
    double const ds = 0.01;
    auto const s_grid = linspace(-3, 3, 601);
    for (auto const& [id, u] : {Case{"example22", {0.5}}, Case{"helix", {0.3}}, Case{"r4curve", {0.3, 0.2}}}) {
        auto const c = corpus::get(id).curve;
        auto const d = c.domain();
        auto const frame = adapted_frame(c, linspace(d.lo, d.hi, 41));
        auto const loc = singular_locus_parallel(invariants(c, frame), u);
        auto const pal = parallel_of_tangent(c, frame, u, s_grid);
        for (std::size_t i = 0; i < pal.rows(); ++i) {
            if (std::abs(loc.s[i]) > 2.9) continue;
            std::size_t best = 0;
            for (std::size_t j = 1; j < pal.cols(); ++j)
                if (pal.sv_ratio[pal.index(i, j)] < pal.sv_ratio[pal.index(i, best)]) best = j;
            EXPECT_LE(std::abs(s_grid[best] - loc.s[i]), 2 * ds) << id << " t = " << frame.grid[i];
        }
    }
}

TEST(RuledProperties, NormalOfTangentSurfaceAtInflection)
{
    // nu_2'(0) = -1/2 with nu_2(0) = (0, 0, 1)
    auto const n = tangent_surface_normal_jet(corpus::get("example23").curve, 0.0, 1);
    double const sign = n[2][0] > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(sign * n[1].derivative(1), -0.5, 1e-6);
    EXPECT_NEAR(n[0].derivative(1), 0.0, 1e-9);
    EXPECT_NEAR(n[2].derivative(1), 0.0, 1e-9);
}
