// frontal: command-line front end over the header library.
//
//   frontal invariants  (--curve ID | --config FILE) [grid flags]
//   frontal surface     ... --kind tan|nor|pal|can|directrix-tan [--export obj|csv] [--u ..] [--r R]
//   frontal verify      ... --check theorem22|theorem21|symplectic|structure [--u ..] [--log FILE]
//   frontal frontality  ...
//   frontal bishop      ...
//
// Exit codes: 0 ok/pass, 1 config or usage error, 2 math precondition or failed
// check, 3 I/O error.

#include <frontal/frontal.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace frontal;

struct Common
{
    std::string curve_id;
    std::string config_path;
    int t_steps = 0;
    int s_steps = 0;
    std::vector<double> s_range;
    std::vector<double> u;
    double tol = default_rank_tol;
    int k_max = default_k_max;
    std::string out;
};

struct Setup
{
    Curve curve;
    GridSpec grid;
    std::vector<double> t_grid;
    std::vector<double> s_grid;
};

void add_common(CLI::App& cmd, Common& c)
{
    auto* curve = cmd.add_option("--curve", c.curve_id, "built-in curve id");
    auto* config = cmd.add_option("--config", c.config_path, "curve config file");
    curve->excludes(config);
    config->excludes(curve);
    cmd.add_option("--t-steps", c.t_steps, "number of t samples")->check(CLI::PositiveNumber);
    cmd.add_option("--s-steps", c.s_steps, "number of s samples")->check(CLI::PositiveNumber);
    cmd.add_option("--s-range", c.s_range, "s interval lo,hi")->expected(2)->delimiter(',');
    cmd.add_option("--u", c.u, "normal offsets u_1,...")->delimiter(',');
    cmd.add_option("--tol", c.tol, "numeric rank tolerance");
    cmd.add_option("--k-max", c.k_max, "highest derivative order used for contact orders");
    cmd.add_option("--out", c.out, "output file (default stdout)");
}

Setup setup(Common const& c)
{
    if (c.curve_id.empty() == c.config_path.empty()) throw ConfigError("give exactly one of --curve or --config");
    std::optional<CurveConfig> cfg;
    if (!c.config_path.empty()) cfg = load_config(c.config_path);
    Setup s{cfg ? make_curve(*cfg) : corpus::get(c.curve_id).curve, cfg ? cfg->grid : GridSpec{}, {}, {}};
    if (c.t_steps) s.grid.t_steps = c.t_steps;
    if (c.s_steps) s.grid.s_steps = c.s_steps;
    if (!c.s_range.empty()) {
        s.grid.s_lo = c.s_range[0];
        s.grid.s_hi = c.s_range[1];
    }
    if (s.grid.t_steps < 2 || s.grid.s_steps < 2) throw ConfigError("step counts must be at least 2");
    if (!(s.grid.s_lo < s.grid.s_hi)) throw ConfigError("--s-range must be increasing");
    if (c.k_max < 2) throw ConfigError("--k-max must be at least 2");
    if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
    auto const d = s.curve.domain();
    s.t_grid = linspace(d.lo, d.hi, s.grid.t_steps);
    s.s_grid = linspace(s.grid.s_lo, s.grid.s_hi, s.grid.s_steps);
    return s;
}

TransportOptions transport_options(Common const& c)
{
    TransportOptions o;
    o.k_max = c.k_max;
    o.tol = c.tol;
    return o;
}

FrameOptions frame_options(Common const& c)
{
    FrameOptions o;
    o.transport = transport_options(c);
    return o;
}

std::vector<double> offsets(Common const& c, std::size_t count)
{
    if (c.u.empty()) return std::vector<double>(count, 0.5);
    return c.u;
}

void emit(Common const& c, std::string const& text)
{
    if (c.out.empty()) std::cout << text;
    else write_file(c.out, text);
}

// ---------------------------------------------------------------------------

int cmd_invariants(Common const& c)
{
    auto const s = setup(c);
    std::size_t const ell_count = static_cast<std::size_t>(s.curve.codim() - 1);
    InvariantProfile profile;
    try {
        profile = invariants(adapted_frame(s.curve, s.t_grid, std::nullopt, frame_options(c)));
    } catch (PreconditionError const& e) {
        // no adapted frame: a and kappa = |tau'| are still defined, ell is not
        std::cerr << "warning: " << e.what() << "; ell columns are nan\n";
        profile = {};
        profile.grid = s.t_grid;
        auto const field = unit_tangent(s.curve, s.t_grid, c.k_max, c.tol);
        for (std::size_t i = 0; i < s.t_grid.size(); ++i) {
            auto const smp = tangent_sample(s.curve, s.t_grid[i], c.k_max, c.tol);
            profile.a.push_back(smp.fprime.dot(field.tau[i]));
            profile.kappa.push_back(smp.dtau.norm());
        }
    }
    std::ostringstream out;
    write_invariants_csv(out, profile, ell_count);
    emit(c, out.str());
    return 0;
}

int cmd_surface(Common const& c, std::string const& kind, std::string const& format, double r)
{
    auto const s = setup(c);
    auto const& curve = s.curve;
    SurfaceGrid grid;
    if (kind == "tan") {
        grid = tangent_map(curve, unit_tangent(curve, s.t_grid, c.k_max, c.tol), s.s_grid, c.tol, c.k_max);
    } else if (kind == "nor") {
        auto const frame = bishop_transport(curve, s.t_grid, std::nullopt, transport_options(c));
        std::optional<Vec> dir;
        if (!c.u.empty()) {
            check_offsets(c.u, frame.count(), "nor direction");
            dir = Eigen::Map<Vec const>(c.u.data(), static_cast<Eigen::Index>(c.u.size()));
        }
        grid = normal_map(curve, frame, s.s_grid, dir, std::nullopt, c.tol);
    } else if (kind == "can") {
        auto const frame = bishop_transport(curve, s.t_grid, std::nullopt, transport_options(c));
        grid = canal_hypersurface(curve, frame, r, linspace(0.0, 2.0 * std::numbers::pi, s.grid.s_steps), c.tol);
    } else if (kind == "pal" || kind == "directrix-tan") {
        auto const frame = adapted_frame(curve, s.t_grid, std::nullopt, frame_options(c));
        auto const u = offsets(c, frame.count());
        check_offsets(u, frame.count(), "offsets");
        if (kind == "pal") {
            grid = parallel_of_tangent(curve, frame, u, s.s_grid, c.tol);
        } else {
            auto const profile = invariants(frame);
            grid = tangent_of_directrix(directrix(curve, frame, profile, u), s.s_grid, c.tol);
        }
    } else {
        throw ConfigError("unknown surface kind '" + kind + "'");
    }

    std::ostringstream out;
    if (format == "obj") write_surface_obj(out, grid);
    else if (format == "csv") write_surface_csv(out, grid);
    else throw ConfigError("unknown export format '" + format + "'");
    emit(c, out.str());
    return 0;
}

// ---------------------------------------------------------------------------

struct CheckResult
{
    double residual = 0.0;
    double threshold = 0.0;
    std::string detail;
    std::vector<nlohmann::json> rows;
};

CheckResult check_theorem22(Setup const& s, Common const& c)
{
    if (s.curve.codim() < 2) throw PreconditionError("theorem22 needs a curve in R^n with n >= 3");
    auto const frame = adapted_frame(s.curve, s.t_grid, std::nullopt, frame_options(c));
    auto const profile = invariants(frame);
    auto const u = offsets(c, frame.count());
    check_offsets(u, frame.count(), "offsets");
    auto const pal = parallel_of_tangent(s.curve, frame, u, s.s_grid, c.tol);
    auto const dir = directrix(s.curve, frame, profile, u);
    auto const rep = verify_right_equivalence(pal, dir, frame, profile);

    CheckResult r{rep.max_residual, 1e-5, {}, {}};
    r.detail = std::to_string(rep.compared) + " nodes compared, " + std::to_string(rep.skipped) + " skipped";
    for (std::size_t i = 0; i < rep.row_residual.size(); ++i) {
        double const v = rep.row_residual[i];
        r.rows.push_back({{"t", s.t_grid[i]}, {"residual", std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v)}});
    }
    return r;
}

CheckResult check_theorem21(Setup const& s, Common const& c)
{
    auto const frame = adapted_frame(s.curve, s.t_grid, std::nullopt, frame_options(c));
    auto const rep = verify_normal_flatness_of_tangent_surface(s.curve, frame, s.s_grid);
    if (rep.vacuous()) throw PreconditionError("no regular nodes with a normal frame to test");
    CheckResult r{rep.max_residual, 1e-5, {}, {}};
    r.detail = std::to_string(rep.regular_nodes) + " regular nodes, " + std::to_string(rep.skipped_nodes) + " skipped";
    return r;
}

CheckResult check_symplectic(Setup const& s, Common const& c)
{
    auto const frame = bishop_transport(s.curve, s.t_grid, std::nullopt, transport_options(c));
    std::size_t const p = frame.count();
    std::vector<NormalSample> samples;
    std::size_t const stride = std::max<std::size_t>(1, s.t_grid.size() / 20);
    std::size_t const s_stride = std::max<std::size_t>(1, s.s_grid.size() / 4);
    for (std::size_t i = stride; i + 1 < s.t_grid.size(); i += stride)
        for (std::size_t j = 0; j < s.s_grid.size(); j += s_stride) {
            NormalSample smp{s.t_grid[i], {}};
            for (std::size_t k = 0; k < p; ++k) smp.u.push_back(s.s_grid[j] * static_cast<double>(k + 1) / static_cast<double>(p));
            samples.push_back(std::move(smp));
        }
    CheckResult r{symplectic_pullback_check(s.curve, frame, samples), 1e-6, {}, {}};
    r.detail = std::to_string(samples.size()) + " samples";
    return r;
}

CheckResult check_structure(Setup const& s, Common const& c)
{
    // frame derivatives are central differences, so sample finely
    auto const d = s.curve.domain();
    auto const grid = linspace(d.lo, d.hi, std::max(s.grid.t_steps, 10001));
    auto const bishop = bishop_structure_residuals(s.curve, bishop_transport(s.curve, grid, std::nullopt, transport_options(c)));
    CheckResult r{bishop.max(), 1e-5, {}, {}};
    r.detail = "bishop " + fmt(bishop.max());
    r.rows.push_back({{"frame", "bishop"}, {"speed", bishop.speed}, {"tangent", bishop.tangent}, {"normals", bishop.normals}});
    try {
        auto const frame = adapted_frame(s.curve, grid, std::nullopt, frame_options(c));
        auto const adapted = structure_residuals(frame, invariants(frame));
        r.residual = std::max(r.residual, adapted.max());
        r.detail += ", adapted " + fmt(adapted.max());
        r.rows.push_back({{"frame", "adapted"},
                          {"speed", adapted.speed},
                          {"tangent", adapted.tangent},
                          {"principal", adapted.principal},
                          {"normals", adapted.normals}});
    } catch (PreconditionError const& e) {
        r.detail += std::string(", adapted skipped (") + e.what() + ")";
    }
    return r;
}

int cmd_verify(Common const& c, std::string const& check, std::string const& log_path, std::optional<double> threshold)
{
    auto const s = setup(c);
    std::ostringstream report;
    std::ostringstream log;
    report << "check " << check << " on " << s.curve.name() << '\n';

    bool pass = false;
    try {
        CheckResult r;
        if (check == "theorem22") r = check_theorem22(s, c);
        else if (check == "theorem21") r = check_theorem21(s, c);
        else if (check == "symplectic") r = check_symplectic(s, c);
        else if (check == "structure") r = check_structure(s, c);
        else throw ConfigError("unknown check '" + check + "'");
        if (threshold) r.threshold = *threshold;
        pass = r.residual <= r.threshold;
        report << "max residual " << fmt(r.residual) << " (threshold " << fmt(r.threshold) << "; " << r.detail
               << ")\n"
               << (pass ? "PASS" : "FAIL") << '\n';
        for (auto& row : r.rows) {
            row["check"] = check;
            log << row.dump() << '\n';
        }
        log << nlohmann::json{{"check", check},
                              {"curve", s.curve.name()},
                              {"max_residual", r.residual},
                              {"threshold", r.threshold},
                              {"pass", pass}}
                   .dump()
            << '\n';
    } catch (MathError const& e) {
        report << "FAIL (precondition): " << e.what() << '\n';
        log << nlohmann::json{{"check", check}, {"curve", s.curve.name()}, {"pass", false}, {"precondition", e.what()}}
                   .dump()
            << '\n';
    }
    if (!log_path.empty()) write_file(log_path, log.str());
    emit(c, report.str());
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------------------

int cmd_frontality(Common const& c)
{
    auto const s = setup(c);
    auto const field = unit_tangent(s.curve, s.t_grid, c.k_max, c.tol);
    std::vector<char> flip(s.t_grid.size(), 0);
    for (auto i : field.orientation_flips) flip[i] = 1;

    std::ostringstream out;
    out << "t,a1,a2,frontal";
    for (int k = 1; k <= s.curve.dim(); ++k) out << ",tau_" << k;
    out << ",flip\n";
    for (std::size_t i = 0; i < s.t_grid.size(); ++i) {
        auto const rep = contact_orders(s.curve, s.t_grid[i], c.k_max, c.tol);
        out << fmt(s.t_grid[i]) << ',' << (rep.a1 ? std::to_string(*rep.a1) : "") << ','
            << (rep.a2 ? std::to_string(*rep.a2) : "") << ',' << (rep.frontal_sufficient ? 1 : 0);
        for (Eigen::Index k = 0; k < field.tau[i].size(); ++k) out << ',' << fmt(field.tau[i][k]);
        out << ',' << int(flip[i]) << '\n';
    }
    for (auto i : field.orientation_flips)
        std::cerr << "orientation of f'/|f'| reverses at t = " << fmt(s.t_grid[i]) << '\n';
    emit(c, out.str());
    return 0;
}

int cmd_bishop(Common const& c)
{
    auto const s = setup(c);
    auto const frame = bishop_transport(s.curve, s.t_grid, std::nullopt, transport_options(c));
    auto const k = bishop_curvatures(frame);
    int const n = s.curve.dim();

    std::ostringstream out;
    out << 't';
    for (int j = 1; j <= n; ++j) out << ",tau_" << j;
    for (std::size_t m = 1; m <= frame.count(); ++m)
        for (int j = 1; j <= n; ++j) out << ",nu" << m << '_' << j;
    for (std::size_t m = 1; m <= frame.count(); ++m) out << ",k_" << m;
    out << '\n';
    for (std::size_t i = 0; i < frame.size(); ++i) {
        out << fmt(frame.grid[i]);
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << fmt(frame.tau[i][j]);
        for (auto const& nu : frame.nus[i])
            for (Eigen::Index j = 0; j < n; ++j) out << ',' << fmt(nu[j]);
        for (std::size_t m = 0; m < frame.count(); ++m) out << ',' << fmt(k[m][i]);
        out << '\n';
    }
    std::cerr << "max orthonormality drift before renormalisation " << fmt(frame.max_drift) << '\n';
    emit(c, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frames, invariants and ruled maps of frontal curves"};
    app.require_subcommand(1);

    Common common;
    std::string kind;
    std::string format = "obj";
    double radius = 0.3;
    std::string check;
    std::string log_path;
    std::optional<double> threshold;

    auto* inv = app.add_subcommand("invariants", "CSV of t, a, kappa, ell_1..ell_{p-1}");
    add_common(*inv, common);

    auto* surf = app.add_subcommand("surface", "sample a ruled map and export it");
    add_common(*surf, common);
    surf->add_option("--kind", kind, "tan, nor, pal, can or directrix-tan")->required();
    surf->add_option("--export", format, "obj or csv");
    surf->add_option("--r", radius, "canal radius");

    auto* ver = app.add_subcommand("verify", "run a numeric check; exit 0 on pass, 2 on fail");
    add_common(*ver, common);
    ver->add_option("--check", check, "theorem22, theorem21, symplectic or structure")->required();
    ver->add_option("--log", log_path, "JSON-lines residual log");
    ver->add_option("--threshold", threshold, "override the pass threshold");

    auto* fr = app.add_subcommand("frontality", "contact orders and unit tangent per sample");
    add_common(*fr, common);

    auto* bi = app.add_subcommand("bishop", "Bishop frame of the normal bundle and its curvatures");
    add_common(*bi, common);

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*inv) return cmd_invariants(common);
        if (*surf) return cmd_surface(common, kind, format, radius);
        if (*ver) return cmd_verify(common, check, log_path, threshold);
        if (*fr) return cmd_frontality(common);
        if (*bi) return cmd_bishop(common);
    } catch (ConfigError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (MathError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (IoError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
