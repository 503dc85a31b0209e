#pragma once

#include <initializer_list>
#include <vector>

#include "framekit/numeric.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// Ordered finite family F = {f_1, ..., f_N} in C^d, stored as the columns of
/// its synthesis matrix. Entries are validated finite at construction.
class VectorFamily {
public:
    /// Column k of `columns` is f_{k+1}.
    explicit VectorFamily(Matrix columns) : columns_(std::move(columns)) {
        if (columns_.rows() < 1 || columns_.cols() < 1)
            throw PreconditionError("family needs dimension >= 1 and at least one vector");
        if (!all_finite(columns_)) throw PreconditionError("family entries must be finite");
    }

    static VectorFamily from_vectors(const std::vector<Vector>& vectors) {
        if (vectors.empty()) throw PreconditionError("family needs at least one vector");
        Matrix cols(vectors.front().size(), static_cast<Index>(vectors.size()));
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].size() != cols.rows())
                throw DimensionMismatchError("family vectors must share one dimension");
            cols.col(static_cast<Index>(k)) = vectors[k];
        }
        return VectorFamily(std::move(cols));
    }

    Index dim() const { return columns_.rows(); }
    Index count() const { return columns_.cols(); }
    Vector vector(Index k) const { return columns_.col(k); }  // 0-based
    const Matrix& columns() const { return columns_; }

    /// Family with vector j removed; j is 1-based.
    VectorFamily without(Index j) const {
        if (j < 1 || j > count()) throw IndexError(j, count());
        Matrix cols(dim(), count() - 1);
        Index out = 0;
        for (Index k = 0; k < count(); ++k) {
            if (k == j - 1) continue;
            cols.col(out++) = columns_.col(k);
        }
        return VectorFamily(std::move(cols));
    }

private:
    Matrix columns_;
};

/// d x N matrix U_F with column k equal to f_k; U_F c = sum_k c_k f_k.
inline Matrix synthesis_matrix(const VectorFamily& f) { return f.columns(); }

/// N x d adjoint of the synthesis matrix; row k applied to f gives <f, f_k>.
inline Matrix analysis_matrix(const VectorFamily& f) { return f.columns().adjoint(); }

/// S_F = U_F U_F*; Hermitian positive semidefinite.
inline Matrix frame_operator(const VectorFamily& f) { return f.columns() * f.columns().adjoint(); }

/// Optimal bounds (lambda_min(S_F), lambda_max(S_F)), or the NotAFrame witness
/// when lambda_min <= rank_tol * max(1, lambda_max).
inline BoundsResult frame_bounds(const VectorFamily& f, double rank_tol = tol::rank) {
    const EigenDecomposition eig = hermitian_eig(frame_operator(f));
    const double lmin = eig.values(0);
    const double lmax = eig.values(eig.values.size() - 1);
    if (lmin <= rank_tol * rel_scale(lmax)) return NotAFrame{lmin};
    return FrameBounds{lmin, lmax};
}

/// Extremal eigenvectors of S_F certifying the optimal bounds.
struct BoundsWitness {
    Vector lower;  // attains A ||v||^2 = sum |<v, f_k>|^2
    Vector upper;
};

inline BoundsWitness frame_bounds_witness(const VectorFamily& f) {
    const EigenDecomposition eig = hermitian_eig(frame_operator(f));
    return {eig.vectors.col(0), eig.vectors.col(eig.vectors.cols() - 1)};
}

inline bool is_tight(const VectorFamily& f, double tolerance = tol::predicate) {
    const FrameBounds b = bounds(frame_bounds(f));
    return (b.upper - b.lower) / b.upper <= tolerance;
}

inline bool is_parseval(const VectorFamily& f, double tolerance = tol::predicate) {
    const FrameBounds b = bounds(frame_bounds(f));
    return (b.upper - b.lower) / b.upper <= tolerance && std::abs(b.lower - 1.0) <= tolerance;
}

/// Finite-dimensional Riesz basis: exactly d vectors with an invertible
/// synthesis matrix at the rank tolerance.
inline bool is_riesz_basis(const VectorFamily& f, double rank_tol = tol::rank) {
    if (f.count() != f.dim()) return false;
    Eigen::JacobiSVD<Matrix> solver(f.columns());
    const RealVector& sigma = solver.singularValues();
    return sigma(sigma.size() - 1) > rank_tol * sigma(0);
}

/// Canonical dual {S_F^{-1} f_k}; reconstruction sum <f, S^{-1} f_k> f_k = f.
inline VectorFamily canonical_dual(const VectorFamily& f) {
    const EigenDecomposition eig = hermitian_eig(frame_operator(f));
    const double lmin = eig.values(0);
    const double lmax = eig.values(eig.values.size() - 1);
    if (lmin <= tol::rank * rel_scale(lmax)) throw NotAFrameError(lmin);
    const Matrix s_inv =
        eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.adjoint();
    return VectorFamily(s_inv * f.columns());
}

/// Hermitian positive definite R = S_F^{-1/2}, via the eigendecomposition of
/// S_F; satisfies R S_F R = I.
inline Matrix inverse_sqrt_frame_operator(const VectorFamily& f) {
    const EigenDecomposition eig = hermitian_eig(frame_operator(f));
    const double lmin = eig.values(0);
    const double lmax = eig.values(eig.values.size() - 1);
    if (lmin <= tol::rank * rel_scale(lmax)) throw NotAFrameError(lmin);
    const RealVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
    return eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
}

/// {S_F^{-1/2} f_k}; Parseval by construction.
inline VectorFamily parseval_transform(const VectorFamily& f) {
    return VectorFamily(inverse_sqrt_frame_operator(f) * f.columns());
}

}  // namespace framekit
