#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace framekit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default tolerances. All residual checks are relative to max(1, ||input||).
namespace tol {
inline constexpr double decomposition = 1e-10;  // factorization residuals
inline constexpr double predicate = 1e-9;       // boolean predicates on computed quantities
inline constexpr double rank = 1e-12;           // rank decisions, relative to sigma_max
inline constexpr double hermitian = 1e-12;      // symmetry check, relative
inline constexpr double cond_limit = 1e12;      // inversion refuses beyond this condition number
inline constexpr double strict_margin = 1e-12;  // keeps strict inequalities numerically open
}  // namespace tol

/// Scale factor for relative tolerances.
inline double rel_scale(double norm) { return std::max(1.0, norm); }

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquareError : Error {
    NotSquareError(Index rows, Index cols)
        : Error("matrix is not square: " + std::to_string(rows) + "x" + std::to_string(cols)) {}
};

struct NotHermitianError : Error {
    double deviation;
    explicit NotHermitianError(double dev)
        : Error("matrix is not Hermitian, ||M - M*|| = " + std::to_string(dev)), deviation(dev) {}
};

struct NotInvertibleError : Error {
    double sigma_min;
    explicit NotInvertibleError(double smin)
        : Error("matrix is not invertible at tolerance, sigma_min = " + std::to_string(smin)),
          sigma_min(smin) {}
};

struct NotAFrameError : Error {
    double lambda_min;
    explicit NotAFrameError(double lmin)
        : Error("family is not a frame, lambda_min = " + std::to_string(lmin)), lambda_min(lmin) {}
};

/// The base orbit handed to the stability test failed to be a frame.
struct BaseNotAFrameError : NotAFrameError {
    using NotAFrameError::NotAFrameError;
};

struct TightFrameError : Error {
    TightFrameError() : Error("removal criterion excludes tight frames") {}
};

struct IndexError : Error {
    IndexError(Index j, Index count)
        : Error("index " + std::to_string(j) + " out of range 1.." + std::to_string(count)) {}
};

struct TooFewVectorsError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/// Optimal frame bounds: A = lambda_min(S_F), B = lambda_max(S_F).
struct FrameBounds {
    double lower = 0.0;  // A > 0
    double upper = 0.0;  // B >= A
};

/// Witness for a family that fails to span at tolerance.
struct NotAFrame {
    double lambda_min = 0.0;
};

using BoundsResult = std::variant<FrameBounds, NotAFrame>;

inline bool is_frame(const BoundsResult& r) { return std::holds_alternative<FrameBounds>(r); }

inline const FrameBounds& bounds(const BoundsResult& r) {
    if (const auto* b = std::get_if<FrameBounds>(&r)) return *b;
    throw NotAFrameError(std::get<NotAFrame>(r).lambda_min);
}

inline double lambda_min_witness(const BoundsResult& r) {
    if (const auto* b = std::get_if<FrameBounds>(&r)) return b->lower;
    return std::get<NotAFrame>(r).lambda_min;
}

/// Rank-deficiency witness for a failed inversion.
struct NotInvertible {
    double sigma_min = 0.0;
};

using InverseResult = std::variant<Matrix, NotInvertible>;

inline bool is_invertible(const InverseResult& r) { return std::holds_alternative<Matrix>(r); }

inline const Matrix& inverse(const InverseResult& r) {
    if (const auto* m = std::get_if<Matrix>(&r)) return *m;
    throw NotInvertibleError(std::get<NotInvertible>(r).sigma_min);
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace framekit
