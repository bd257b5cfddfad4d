#pragma once

// Small dense helpers on top of Eigen: numeric rank, Gram drift, Gram-Schmidt.

#include <frontal/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace frontal {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default relative threshold for every rank decision in the library.
inline constexpr double default_rank_tol = 1e-9;

inline Vec singular_values(Mat const& m)
{
    if (m.size() == 0) return Vec();
    return Eigen::JacobiSVD<Mat>(m).singularValues();
}

// Counts sigma_i > tol * sigma_max, or sigma_i > tol when sigma_max < tol.
inline int numeric_rank(Mat const& m, double tol = default_rank_tol)
{
    Vec const sv = singular_values(m);
    if (sv.size() == 0) return 0;
    double const smax = sv.maxCoeff();
    double const cut = smax < tol ? tol : tol * smax;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cut) ++rank;
    return rank;
}

// max |G - I| over the Gram matrix of the given vectors
inline double gram_deviation(std::vector<Vec> const& vs)
{
    double dev = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            dev = std::max(dev, std::abs(vs[i].dot(vs[j]) - (i == j ? 1.0 : 0.0)));
    return dev;
}

inline Vec project_out(Vec v, std::vector<Vec> const& orthonormal)
{
    for (auto const& e : orthonormal) v -= v.dot(e) * e;
    return v;
}

// Orthonormalises `vs` in place against `fixed` (assumed orthonormal) and
// against each other, in order. Uses two passes of modified Gram-Schmidt.
inline void orthonormalize(std::vector<Vec>& vs, std::vector<Vec> const& fixed)
{
    std::vector<Vec> basis = fixed;
    for (auto& v : vs) {
        for (int pass = 0; pass < 2; ++pass) v = project_out(v, basis);
        double const n = v.norm();
        if (!(n > 0.0)) throw MathError("Gram-Schmidt on a dependent vector set");
        v /= n;
        basis.push_back(v);
    }
}

// Completes `fixed` to an orthonormal basis with standard basis vectors,
// skipping those whose residual norm falls below `pivot`.
inline std::vector<Vec> complete_basis(std::vector<Vec> const& fixed, Eigen::Index dim, double pivot = 1e-6)
{
    std::vector<Vec> basis = fixed;
    std::vector<Vec> added;
    for (Eigen::Index k = 0; k < dim && static_cast<Eigen::Index>(basis.size()) < dim; ++k) {
        Vec v = Vec::Unit(dim, k);
        for (int pass = 0; pass < 2; ++pass) v = project_out(v, basis);
        double const n = v.norm();
        if (n < pivot) continue;
        v /= n;
        basis.push_back(v);
        added.push_back(v);
    }
    return added;
}

// Sum of squared sines of the principal angles between two column spaces.
inline double subspace_distance(Mat const& a, Mat const& b)
{
    Mat const qa = Eigen::HouseholderQR<Mat>(a).householderQ() * Mat::Identity(a.rows(), a.cols());
    Mat const qb = Eigen::HouseholderQR<Mat>(b).householderQ() * Mat::Identity(b.rows(), b.cols());
    Vec const cosines = singular_values(qa.transpose() * qb);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < cosines.size(); ++i)
        worst = std::max(worst, std::sqrt(std::max(0.0, 1.0 - cosines[i] * cosines[i])));
    return worst;
}

} // namespace frontal
