#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "framekit/types.hpp"

namespace framekit {

/// Spectral decomposition of a Hermitian matrix.
/// values ascending, vectors columns orthonormal, M = V diag(values) V*.
struct EigenDecomposition {
    RealVector values;
    Matrix vectors;
};

/// M = left * diag(singular_values) * right^*, singular values descending,
/// factors with orthonormal columns (thin form).
struct SvdResult {
    RealVector singular_values;
    Matrix left;
    Matrix right;
};

inline void require_square(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotSquareError(m.rows(), m.cols());
}

/// Frobenius distance from M to its adjoint.
inline double hermitian_deviation(const Matrix& m) { return (m - m.adjoint()).norm(); }

inline EigenDecomposition hermitian_eig(const Matrix& m, double tolerance = tol::hermitian) {
    require_square(m);
    const double dev = hermitian_deviation(m);
    if (dev > tolerance * rel_scale(m.norm())) throw NotHermitianError(dev);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) throw Error("hermitian eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline SvdResult svd(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

/// Largest singular value; defined for any rectangular matrix.
inline double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> solver(m);
    return solver.singularValues()(0);
}

/// Max modulus over the (general, possibly non-Hermitian) spectrum.
inline double spectral_radius(const Matrix& m) {
    require_square(m);
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Moore-Penrose pseudoinverse; singular values below rank_tol * sigma_max are
/// treated as zero.
inline Matrix pseudoinverse(const Matrix& m, double rank_tol = tol::rank) {
    if (rank_tol <= 0.0) throw PreconditionError("rank_tol must be positive");
    const SvdResult f = svd(m);
    const double cutoff = rank_tol * (f.singular_values.size() > 0 ? f.singular_values(0) : 0.0);
    RealVector inv = RealVector::Zero(f.singular_values.size());
    for (Index i = 0; i < f.singular_values.size(); ++i) {
        if (f.singular_values(i) > cutoff) inv(i) = 1.0 / f.singular_values(i);
    }
    return f.right * inv.asDiagonal() * f.left.adjoint();
}

/// M^n by repeated squaring; M^0 is the identity.
inline Matrix matrix_power(Matrix m, unsigned long n) {
    require_square(m);
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    while (n > 0) {
        if (n & 1UL) result = result * m;
        n >>= 1UL;
        if (n > 0) m = m * m;
    }
    return result;
}

/// Inverse when sigma_min / sigma_max > 1 / cond_tol, else the sigma_min witness.
inline InverseResult try_inverse(const Matrix& m, double cond_tol = tol::cond_limit) {
    require_square(m);
    if (cond_tol <= 0.0) throw PreconditionError("cond_tol must be positive");
    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sigma = solver.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    const double smin = sigma.size() > 0 ? sigma(sigma.size() - 1) : 0.0;
    if (smax <= 0.0 || smin / smax <= 1.0 / cond_tol) return NotInvertible{smin};
    return Matrix(solver.matrixV() * sigma.cwiseInverse().asDiagonal() * solver.matrixU().adjoint());
}

}  // namespace framekit
