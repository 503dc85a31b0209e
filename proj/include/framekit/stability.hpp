#pragma once

#include <limits>

#include "framekit/frame.hpp"
#include "framekit/numeric.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// mu = radius * sqrt(sum_{i=0}^{n} ||T||^{2i}). The classical bound fixes
/// radius = 1/k with integer k; any nonnegative real radius is accepted here.
inline double perturbation_mu(const Matrix& t, double radius, unsigned long n) {
    if (radius < 0.0) throw PreconditionError("radius must be nonnegative");
    const double nrm2 = operator_norm(t) * operator_norm(t);
    double term = 1.0;  // ||T||^0, also for ||T|| = 0
    double sum = 1.0;
    for (unsigned long i = 1; i <= n; ++i) {
        term *= nrm2;
        sum += term;
        if (!std::isfinite(sum)) return std::numeric_limits<double>::infinity();
    }
    return radius * std::sqrt(sum);
}

/// Perturbation verdict for replacing the seed f by phi in the truncated orbit
/// {T^i .}_{i<=n}. sufficient means mu < sqrt(A); the certified bound is the
/// Casazza-style (sqrt(A) - mu)^2 with lambda_1 = lambda_2 = 0. oracle_bounds
/// is the exact ground truth for the perturbed family, reported regardless.
struct StabilityReport {
    double lower_bound_a = 0.0;
    double k_inverse = 0.0;  // perturbation radius ||f - phi||
    double equivalent_k = std::numeric_limits<double>::infinity();
    double mu = 0.0;
    bool sufficient = false;
    double certified_lower_bound = 0.0;  // (sqrt(A) - mu)^2 when sufficient
    BoundsResult oracle_bounds = NotAFrame{};
};

namespace detail {

inline VectorFamily orbit_prefix(const Matrix& t, const Vector& seed, unsigned long n) {
    Matrix cols(seed.size(), static_cast<Index>(n) + 1);
    Vector v = seed;
    for (unsigned long i = 0; i <= n; ++i) {
        cols.col(static_cast<Index>(i)) = v;
        v = t * v;
    }
    return VectorFamily(std::move(cols));
}

}  // namespace detail

inline StabilityReport stability_test(const Matrix& t, const Vector& f, const Vector& phi,
                                      unsigned long n, double tolerance = tol::strict_margin) {
    require_square(t);
    if (t.rows() != f.size() || f.size() != phi.size())
        throw DimensionMismatchError("operator and seed dimensions differ");

    const BoundsResult base = frame_bounds(detail::orbit_prefix(t, f, n));
    if (!is_frame(base)) throw BaseNotAFrameError(lambda_min_witness(base));
    const double a = bounds(base).lower;

    StabilityReport report;
    report.lower_bound_a = a;
    report.k_inverse = (f - phi).norm();
    if (report.k_inverse > 0.0) report.equivalent_k = 1.0 / report.k_inverse;
    report.mu = perturbation_mu(t, report.k_inverse, n);
    report.sufficient = report.mu < std::sqrt(a) - tolerance;
    if (report.sufficient) {
        const double gap = std::sqrt(a) - report.mu;
        report.certified_lower_bound = gap * gap;
    }
    report.oracle_bounds = frame_bounds(detail::orbit_prefix(t, phi, n));
    return report;
}

/// Optimal constant c with ||sum_i c_i (f_i - g_i)|| <= c (sum |c_i|^2)^{1/2},
/// i.e. the operator norm of the synthesis difference. perturbation_mu is an
/// upper bound for it on orbit pairs.
inline double bessel_difference_bound(const VectorFamily& f, const VectorFamily& g) {
    if (f.dim() != g.dim() || f.count() != g.count())
        throw DimensionMismatchError("families must share dimension and count");
    return operator_norm(f.columns() - g.columns());
}

}  // namespace framekit
