#pragma once

/**
    \file
    \brief truncated Taylor expansions (univariate jets)

    A Jet of order K about t0 stores c_0 ... c_K with g(t0 + h) = sum c_k h^k + O(h^{K+1}).
    Every operation truncates at K, so g^{(k)}(t0) = k! c_k is exact up to rounding for the
    functions the expression language can build.
*/

#include <frontal/error.hpp>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frontal {

// p/q with q > 0. Only used for exponents.
struct Rational
{
    long num = 0;
    long den = 1;

    constexpr bool is_integer() const noexcept { return den == 1; }
    constexpr double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    static Rational make(long num, long den)
    {
        if (den == 0) throw DomainError("rational exponent with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        auto const g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return {num, den};
    }

    friend constexpr bool operator==(Rational const&, Rational const&) = default;
};

class Jet
{
public:
    Jet() : Jet(0.0, 0) {}

    Jet(double base, int order) : base_(base), coeffs_(check_order(order) + 1, 0.0) {}

    Jet(double base, std::vector<double> coeffs) : base_(base), coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) throw DomainError("jet needs at least one coefficient");
    }

    static Jet constant(double base, int order, double value)
    {
        Jet j(base, order);
        j.coeffs_[0] = value;
        return j;
    }

    // jet of the identity t -> t about base
    static Jet variable(double base, int order)
    {
        Jet j(base, order);
        j.coeffs_[0] = base;
        if (order >= 1) j.coeffs_[1] = 1.0;
        return j;
    }

    double base() const noexcept { return base_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double value() const noexcept { return coeffs_[0]; }
    double operator[](std::size_t k) const noexcept { return coeffs_[k]; }
    double& operator[](std::size_t k) noexcept { return coeffs_[k]; }
    std::span<double const> coeffs() const noexcept { return coeffs_; }

    // g^{(k)}(base) = k! c_k
    double derivative(int k) const
    {
        if (k < 0 || k > order()) throw DomainError("insufficient jet order");
        double factorial = 1.0;
        for (int i = 2; i <= k; ++i) factorial *= i;
        return factorial * coeffs_[static_cast<std::size_t>(k)];
    }

    // Jet of g' about the same base; loses one order.
    Jet differentiated() const
    {
        if (order() < 1) throw DomainError("insufficient jet order");
        Jet d(base_, order() - 1);
        for (int k = 0; k <= d.order(); ++k) d.coeffs_[k] = (k + 1) * coeffs_[k + 1];
        return d;
    }

    // Jet of g(t) / (t - base)^m, assuming c_0 ... c_{m-1} vanish; loses m orders.
    Jet divided_by_power(int m) const
    {
        if (m < 0 || m > order()) throw DomainError("insufficient jet order");
        return Jet(base_, std::vector<double>(coeffs_.begin() + m, coeffs_.end()));
    }

    Jet truncated(int order) const
    {
        if (order > this->order()) throw DomainError("insufficient jet order");
        return Jet(base_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    Jet operator-() const
    {
        Jet r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Jet& operator+=(Jet const& b)
    {
        check_compatible(b);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += b.coeffs_[k];
        return *this;
    }

    Jet& operator-=(Jet const& b)
    {
        check_compatible(b);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= b.coeffs_[k];
        return *this;
    }

    Jet& operator*=(double s)
    {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    Jet& operator+=(double s)
    {
        coeffs_[0] += s;
        return *this;
    }

    friend Jet operator+(Jet a, Jet const& b) { return a += b; }
    friend Jet operator-(Jet a, Jet const& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }

    // Cauchy product truncated at K.
    friend Jet operator*(Jet const& a, Jet const& b)
    {
        a.check_compatible(b);
        Jet r(a.base_, a.order());
        auto const n = a.coeffs_.size();
        for (std::size_t k = 0; k < n; ++k) {
            double sum = 0.0;
            for (std::size_t j = 0; j <= k; ++j) sum += a.coeffs_[j] * b.coeffs_[k - j];
            r.coeffs_[k] = sum;
        }
        return r;
    }

    // Forward recurrence q_k = (a_k - sum_{j>=1} b_j q_{k-j}) / b_0.
    friend Jet operator/(Jet const& a, Jet const& b)
    {
        a.check_compatible(b);
        if (b.coeffs_[0] == 0.0) throw DomainError("jet division singular");
        Jet q(a.base_, a.order());
        auto const n = a.coeffs_.size();
        for (std::size_t k = 0; k < n; ++k) {
            double sum = a.coeffs_[k];
            for (std::size_t j = 1; j <= k; ++j) sum -= b.coeffs_[j] * q.coeffs_[k - j];
            q.coeffs_[k] = sum / b.coeffs_[0];
        }
        return q;
    }

    friend Jet operator/(Jet const& a, double s)
    {
        if (s == 0.0) throw DomainError("jet division singular");
        return a * (1.0 / s);
    }

    friend Jet operator/(double s, Jet const& b) { return constant(b.base_, b.order(), s) / b; }

private:
    static std::size_t check_order(int order)
    {
        if (order < 0) throw DomainError("jet order must be non-negative");
        return static_cast<std::size_t>(order);
    }

    void check_compatible(Jet const& b) const
    {
        if (b.coeffs_.size() != coeffs_.size() || b.base_ != base_)
            throw DomainError("jets differ in base or order");
    }

    double base_;
    std::vector<double> coeffs_;
};

inline Jet exp(Jet const& a)
{
    Jet r(a.base(), a.order());
    r[0] = std::exp(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double sum = 0.0;
        for (int j = 1; j <= k; ++j) sum += j * a[j] * r[k - j];
        r[k] = sum / k;
    }
    return r;
}

// sin and cos share one recurrence.
inline std::pair<Jet, Jet> sincos(Jet const& a)
{
    Jet s(a.base(), a.order());
    Jet c(a.base(), a.order());
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double ss = 0.0;
        double cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc += j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = -cc / k;
    }
    return {s, c};
}

inline Jet sin(Jet const& a) { return sincos(a).first; }
inline Jet cos(Jet const& a) { return sincos(a).second; }

inline Jet sqrt(Jet const& a)
{
    if (!(a[0] > 0.0)) throw DomainError("sqrt of jet with non-positive constant term");
    Jet r(a.base(), a.order());
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double sum = a[k];
        for (int j = 1; j < k; ++j) sum -= r[j] * r[k - j];
        r[k] = sum / (2.0 * r[0]);
    }
    return r;
}

inline Jet pow(Jet const& a, long n)
{
    if (n < 0) return 1.0 / pow(a, -n);
    Jet result = Jet::constant(a.base(), a.order(), 1.0);
    Jet square = a;
    while (n > 0) {
        if (n & 1) result = result * square;
        n >>= 1;
        if (n > 0) square = square * square;
    }
    return result;
}

// Integer exponents go through repeated multiplication and accept any
// constant term; proper fractions need a positive constant term.
inline Jet pow(Jet const& a, Rational e)
{
    if (e.is_integer()) return pow(a, e.num);
    if (a.order() == 0 && a[0] == 0.0 && e.num > 0) return Jet::constant(a.base(), 0, 0.0);
    if (!(a[0] > 0.0))
        throw DomainError("fractional power of jet with non-positive constant term");
    double const alpha = e.value();
    Jet r(a.base(), a.order());
    r[0] = std::pow(a[0], alpha);
    for (int k = 1; k <= a.order(); ++k) {
        double sum = 0.0;
        for (int j = 1; j <= k; ++j) sum += ((alpha + 1.0) * j - k) * a[j] * r[k - j];
        r[k] = sum / (k * a[0]);
    }
    return r;
}

} // namespace frontal
