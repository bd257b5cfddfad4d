#pragma once

// Built-in curves. example21 is piecewise and evaluated in closed form;
// the rest are ordinary expression curves.

#include <frontal/curve.hpp>
#include <frontal/error.hpp>
#include <frontal/expr.hpp>
#include <frontal/jet.hpp>

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace frontal::corpus {

struct Entry
{
    std::string id;
    std::string description;
    Curve curve;
    bool has_inflection = false;
};

// (exp(-1/t^2), 0, -t^2) for t >= 0 and (0, exp(-1/t^2), -t^2) for t <= 0.
// Every derivative of exp(-1/t^2) vanishes at 0, so the jet there is zero.
inline Curve example21(Interval domain = {-1.0, 1.0})
{
    static Expr const flat = parse("exp(-1/t^2)");
    static Expr const height = parse("-t^2");
    auto fn = [](double t0, int order) {
        Jet const zero = Jet::constant(t0, order, 0.0);
        Jet const bump = t0 == 0.0 ? zero : eval_jet(flat, t0, order);
        Jet const z = eval_jet(height, t0, order);
        if (t0 >= 0.0) return std::vector<Jet>{bump, zero, z};
        return std::vector<Jet>{zero, bump, z};
    };
    return Curve("example21", 3, domain, fn);
}

inline std::vector<std::string_view> ids()
{
    return {"example21", "example22", "example23", "circle", "line", "cusp", "helix", "r4curve"};
}

inline Entry get(std::string_view id)
{
    double const two_pi = 2.0 * std::numbers::pi;
    if (id == "example21")
        return {"example21", "piecewise flat curve whose tangent surface is not a frontal", example21(), true};
    if (id == "example22")
        return {"example22", "(t, t^2/2, t^3/6)", Curve::from_strings("example22", {"t", "t^2/2", "t^3/6"}, {-1, 1}),
                false};
    if (id == "example23")
        return {"example23", "(t, t^3/6, t^4/24), inflection at 0",
                Curve::from_strings("example23", {"t", "t^3/6", "t^4/24"}, {-1, 1}), true};
    if (id == "circle")
        return {"circle", "unit circle in the xy-plane",
                Curve::from_strings("circle", {"cos(t)", "sin(t)", "0"}, {0, two_pi}), false};
    if (id == "line")
        return {"line", "straight line (t, 0, 0)", Curve::from_strings("line", {"t", "0", "0"}, {-1, 1}), true};
    if (id == "cusp")
        return {"cusp", "plane cusp (t^2/2, t^3/3)", Curve::from_strings("cusp", {"t^2/2", "t^3/3"}, {-1, 1}), false};
    if (id == "helix")
        return {"helix", "(cos t, sin t, t)", Curve::from_strings("helix", {"cos(t)", "sin(t)", "t"}, {0, two_pi}),
                false};
    if (id == "r4curve")
        return {"r4curve", "(t, t^2/2, t^3/6, t^4/24) in R^4",
                Curve::from_strings("r4curve", {"t", "t^2/2", "t^3/6", "t^4/24"}, {-1, 1}), false};
    throw ConfigError("unknown corpus curve '" + std::string(id) + "'");
}

} // namespace frontal::corpus
