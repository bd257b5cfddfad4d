#pragma once

// Parametric curves t -> R^{1+p}, evaluable to points and to component jets.

#include <frontal/error.hpp>
#include <frontal/expr.hpp>
#include <frontal/jet.hpp>
#include <frontal/linalg.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace frontal {

struct Interval
{
    double lo = 0.0;
    double hi = 1.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
};

class Curve
{
public:
    using JetFn = std::function<std::vector<Jet>(double t0, int order)>;

    Curve(std::string name, int dim, Interval domain, JetFn jets)
        : name_(std::move(name)), dim_(dim), domain_(domain), jets_(std::move(jets))
    {
        if (dim_ < 2) throw ConfigError("curve dimension must be at least 2");
        if (!(domain_.lo < domain_.hi)) throw ConfigError("curve domain must satisfy t_lo < t_hi");
    }

    static Curve from_exprs(std::string name, std::vector<Expr> components, Interval domain)
    {
        int const dim = static_cast<int>(components.size());
        auto fn = [components = std::move(components)](double t0, int order) {
            std::vector<Jet> out;
            out.reserve(components.size());
            for (auto const& c : components) out.push_back(eval_jet(c, t0, order));
            return out;
        };
        Curve c(std::move(name), dim, domain, std::move(fn));
        return c;
    }

    static Curve from_strings(std::string name, std::vector<std::string> const& components, Interval domain)
    {
        std::vector<Expr> exprs;
        exprs.reserve(components.size());
        for (auto const& s : components) exprs.push_back(parse(s));
        return from_exprs(std::move(name), std::move(exprs), domain);
    }

    std::string const& name() const noexcept { return name_; }
    int dim() const noexcept { return dim_; }
    int codim() const noexcept { return dim_ - 1; }
    Interval domain() const noexcept { return domain_; }

    std::vector<Jet> jets(double t0, int order) const { return jets_(t0, order); }

    Vec point(double t) const
    {
        auto const js = jets_(t, 0);
        Vec p(dim_);
        for (int i = 0; i < dim_; ++i) p[i] = js[static_cast<std::size_t>(i)][0];
        return p;
    }

    // Columns f(t0), f'(t0), ..., f^{(kmax)}(t0).
    Mat derivatives(double t0, int kmax) const
    {
        auto const js = jets_(t0, kmax);
        Mat d(dim_, kmax + 1);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k <= kmax; ++k) d(i, k) = js[static_cast<std::size_t>(i)].derivative(k);
        return d;
    }

    Vec derivative(double t0, int k) const { return derivatives(t0, k).col(k); }

private:
    std::string name_;
    int dim_;
    Interval domain_;
    JetFn jets_;
};

// Equally spaced samples with exact endpoints; lo + (hi - lo) * i / (n - 1).
inline std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 2) throw ConfigError("grid needs at least 2 samples");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

} // namespace frontal
