#include <frontal/error.hpp>
#include <frontal/jet.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

using frontal::Jet;
using frontal::Rational;

namespace {

void expect_coeffs(Jet const& j, std::vector<double> const& want, double tol = 1e-14)
{
    ASSERT_EQ(j.order() + 1, static_cast<int>(want.size()));
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(j[k], want[k], tol) << "coefficient " << k;
}

// Exact truncated product of two coefficient lists.
std::vector<double> convolve(std::vector<double> const& a, std::vector<double> const& b, std::size_t K)
{
    std::vector<double> c(K + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i + j <= K) c[i + j] += a[i] * b[j];
    return c;
}

} // namespace

TEST(JetExamples, SinTimesExp)
{
    Jet const s(0.0, {0.0, 1.0, 0.0, -1.0 / 6.0});
    Jet const e(0.0, {1.0, 1.0, 0.5, 1.0 / 6.0});
    expect_coeffs(s * e, {0.0, 1.0, 1.0, 1.0 / 3.0});
}

TEST(JetExamples, AddZeroIsIdentity)
{
    Jet const x(0.3, {1.5, -2.0, 0.25});
    expect_coeffs(x + Jet(0.3, 2), {1.5, -2.0, 0.25}, 0.0);
}

TEST(JetExamples, Reciprocal)
{
    Jet const one(0.0, {1.0, 0.0, 0.0});
    Jet const b(0.0, {1.0, 1.0, 0.0});
    expect_coeffs(one / b, {1.0, -1.0, 1.0});
}

TEST(JetExamples, DivisionBySingularJetThrows)
{
    Jet const a(0.0, {1.0, 0.0});
    Jet const b(0.0, {0.0, 1.0});
    try {
        (void)(a / b);
        FAIL() << "expected a throw";
    } catch (frontal::DomainError const& e) {
        EXPECT_NE(std::string(e.what()).find("jet division singular"), std::string::npos);
    }
}

TEST(JetExamples, ElementaryFunctions)
{
    expect_coeffs(exp(Jet(0.0, {0.0, 1.0, 0.0, 0.0})), {1.0, 1.0, 0.5, 1.0 / 6.0});
    // sqrt(4 + 4t) = 2 sqrt(1 + t) = 2 + t - t^2/4
    expect_coeffs(sqrt(Jet(0.0, {4.0, 4.0, 0.0})), {2.0, 1.0, -0.25});
    expect_coeffs(pow(Jet(0.0, {1.0, 1.0, 0.0}), 2L), {1.0, 2.0, 1.0});
    expect_coeffs(pow(Jet(0.0, {1.0, 1.0, 0.0}), Rational::make(2, 1)), {1.0, 2.0, 1.0});
}

TEST(JetExamples, SqrtMatchesFiniteDifferences)
{
    // sqrt(4 + 4t): second derivative -1/2 = 2! * (-1/4)
    auto const f = [](double t) { return std::sqrt(4.0 + 4.0 * t); };
    double const h = 1e-4;
    double const d2 = (f(h) - 2 * f(0) + f(-h)) / (h * h);
    EXPECT_NEAR(sqrt(Jet(0.0, {4.0, 4.0, 0.0})).derivative(2), d2, 1e-5);
}

TEST(JetExamples, SqrtOfNonPositiveThrows)
{
    EXPECT_THROW((void)sqrt(Jet(0.0, {0.0, 1.0})), frontal::DomainError);
    EXPECT_THROW((void)sqrt(Jet(0.0, {-1.0, 1.0})), frontal::DomainError);
}

TEST(JetExamples, Derivatives)
{
    EXPECT_DOUBLE_EQ(Jet(1.0, {1.0, 2.0, 1.0}).derivative(2), 2.0);
    Jet const any(0.7, {3.25, 1.0, -4.0});
    EXPECT_EQ(any.derivative(0), any[0]);
    Jet const t = Jet::variable(0.0, 4);
    EXPECT_NEAR((t * t * t / 6.0).derivative(3), 1.0, 1e-15);
}

TEST(JetExamples, DerivativeBeyondOrderThrows)
{
    try {
        (void)Jet(0.0, {1.0, 2.0}).derivative(2);
        FAIL() << "expected a throw";
    } catch (frontal::Error const& e) {
        EXPECT_NE(std::string(e.what()).find("insufficient jet order"), std::string::npos);
    }
}

TEST(JetStructure, DividedByPowerDropsLeadingZeros)
{
    // t^2 (1 + t) at 0 divided by t^2 is 1 + t
    Jet const t = Jet::variable(0.0, 4);
    Jet const g = t * t * (1.0 + t);
    Jet const q = g.divided_by_power(2);
    EXPECT_EQ(q.order(), 2);
    expect_coeffs(q, {1.0, 1.0, 0.0});
}

TEST(JetProperties, ProductMatchesConvolution)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> order(0, 10);
    for (int trial = 0; trial < 200; ++trial) {
        int const K = order(rng);
        std::vector<double> a(static_cast<std::size_t>(K) + 1), b(a.size());
        for (auto& x : a) x = coef(rng);
        for (auto& x : b) x = coef(rng);
        auto const want = convolve(a, b, static_cast<std::size_t>(K));
        Jet const prod = Jet(0.0, a) * Jet(0.0, b);
        for (std::size_t k = 0; k < want.size(); ++k)
            EXPECT_NEAR(prod[k], want[k], 1e-12 * std::max(1.0, std::abs(want[k])));
    }
}

// (a b) / b = a. The forward recurrence divides by b_0 once per order, so the
// rounding error grows like (sum |b_j| / |b_0|)^K; the 1e-10 bound is checked
// where that ratio is O(1) at every scale |b_0| >= 1e-3, and the general case
// against the growth bound itself.
TEST(JetProperties, DivisionUndoesMultiplication)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> rel(-0.5, 0.5);
    std::uniform_real_distribution<double> lead_exp(-3.0, 0.3);
    for (int trial = 0; trial < 200; ++trial) {
        int const K = 1 + trial % 9;
        double const b0 = (trial % 2 ? 1.0 : -1.0) * std::pow(10.0, lead_exp(rng));
        std::vector<double> a(static_cast<std::size_t>(K) + 1), b(a.size());
        for (auto& x : a) x = coef(rng);
        b[0] = b0;
        for (std::size_t j = 1; j < b.size(); ++j) b[j] = b0 * rel(rng);
        Jet const back = (Jet(0.5, a) * Jet(0.5, b)) / Jet(0.5, b);
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(back[k], a[k], 1e-10) << "K = " << K << ", b0 = " << b0;
    }
}

TEST(JetProperties, DivisionErrorWithinConditioningBound)
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> lead(1e-3, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        int const K = 1 + trial % 9;
        std::vector<double> a(static_cast<std::size_t>(K) + 1), b(a.size());
        for (auto& x : a) x = coef(rng);
        for (auto& x : b) x = coef(rng);
        b[0] = (trial % 2 ? 1.0 : -1.0) * lead(rng);
        double ratio = 1.0;
        for (double x : b) ratio += std::abs(x) / std::abs(b[0]);
        Jet const back = (Jet(0.5, a) * Jet(0.5, b)) / Jet(0.5, b);
        for (std::size_t k = 0; k < a.size(); ++k)
            EXPECT_NEAR(back[k], a[k], 1e-14 * std::pow(ratio, static_cast<double>(k + 1))) << "K = " << K;
    }
}

TEST(JetProperties, ExpDerivativesAllEqualExp)
{
    for (double t0 : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
        Jet const e = exp(Jet::variable(t0, 8));
        for (int k = 0; k <= 8; ++k) EXPECT_NEAR(e.derivative(k), std::exp(t0), 1e-10 * std::exp(t0)) << "k = " << k;
    }
}

TEST(JetProperties, FirstDerivativeMatchesCentralDifference)
{
    using Fn = std::function<Jet(Jet const&)>;
    using RealFn = std::function<double(double)>;
    struct Case
    {
        char const* name;
        Fn jet;
        RealFn real;
        double t0;
    };
    std::vector<Case> const cases{
        {"sin", [](Jet const& x) { return sin(x); }, [](double x) { return std::sin(x); }, 0.7},
        {"cos", [](Jet const& x) { return cos(x); }, [](double x) { return std::cos(x); }, -1.2},
        {"exp", [](Jet const& x) { return exp(x); }, [](double x) { return std::exp(x); }, 0.4},
        {"sqrt", [](Jet const& x) { return sqrt(x); }, [](double x) { return std::sqrt(x); }, 2.5},
        {"pow 3/2", [](Jet const& x) { return pow(x, Rational::make(3, 2)); }, [](double x) { return std::pow(x, 1.5); }, 1.3},
        {"pow -2", [](Jet const& x) { return pow(x, -2L); }, [](double x) { return std::pow(x, -2.0); }, 0.8},
    };
    double const h = 1e-5;
    for (auto const& c : cases) {
        double const fd = (c.real(c.t0 + h) - c.real(c.t0 - h)) / (2 * h);
        double const d1 = c.jet(Jet::variable(c.t0, 3)).derivative(1);
        EXPECT_NEAR(d1, fd, 1e-6 * std::max(1.0, std::abs(fd))) << c.name;
    }
}

TEST(JetProperties, SinCosPythagoras)
{
    Jet const x = Jet::variable(0.9, 10) * 3.0 + 0.2;
    auto const [s, c] = sincos(x);
    Jet const one = s * s + c * c;
    EXPECT_NEAR(one[0], 1.0, 1e-14);
    for (std::size_t k = 1; k <= 10; ++k) EXPECT_NEAR(one[k], 0.0, 1e-11);
}
