#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "framekit/frame.hpp"
#include "framekit/numeric.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// Outcome of fitting an operator T with T f_k = f_{k+1} for all k.
/// `op` is empty when no linear operator reproduces the sequence within
/// tolerance; `max_residual` then witnesses the best achievable fit.
struct RepresentationReport {
    std::optional<Matrix> op;
    double max_residual = 0.0;
    bool linearly_independent = false;
    bool kernel_shift_invariant = false;
};

/// Truncated necessary-condition test for shift invariance of ker(U_F).
/// Only kernel directions with vanishing last coordinate are decidable at a
/// finite truncation (the shift of any other leaks past index N); those form
/// the tested subspace.
struct ShiftInvarianceReport {
    bool invariant = true;
    Index kernel_dim = 0;
    Index tested_dim = 0;  // dim of ker(U_F) with last coordinate zero
    std::optional<Vector> witness;  // unit kernel vector whose shift leaves the kernel
    double max_residual = 0.0;      // worst ||U_F shift(c)|| over the tested basis
};

namespace detail {

/// Orthonormal basis of the null space of m (full V side of the SVD).
inline Matrix null_space_basis(const Matrix& m, double rank_tol = tol::rank) {
    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullV);
    const RealVector& sigma = solver.singularValues();
    const double cutoff = sigma.size() > 0 ? rank_tol * sigma(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++rank;
    return solver.matrixV().rightCols(m.cols() - rank);
}

inline Index numeric_rank(const Matrix& m, double rank_tol = tol::rank) {
    Eigen::JacobiSVD<Matrix> solver(m);
    const RealVector& sigma = solver.singularValues();
    const double cutoff = sigma.size() > 0 ? rank_tol * sigma(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++rank;
    return rank;
}

inline Vector right_shift(const Vector& c) {
    Vector s = Vector::Zero(c.size());
    s.tail(c.size() - 1) = c.head(c.size() - 1);
    return s;
}

}  // namespace detail

inline ShiftInvarianceReport kernel_shift_invariance(const VectorFamily& f,
                                                     double tolerance = tol::predicate) {
    if (f.count() < 2) throw TooFewVectorsError("shift test needs at least two vectors");
    const Matrix u = synthesis_matrix(f);
    ShiftInvarianceReport report;
    report.kernel_dim = f.count() - detail::numeric_rank(u);

    // Kernel vectors with last coordinate zero: null space of U stacked on e_N*.
    Matrix stacked(u.rows() + 1, u.cols());
    stacked.topRows(u.rows()) = u;
    stacked.bottomRows(1).setZero();
    stacked(u.rows(), u.cols() - 1) = Complex(1.0, 0.0);
    const Matrix tested = detail::null_space_basis(stacked);
    report.tested_dim = tested.cols();

    const double scale = rel_scale(u.norm());
    for (Index i = 0; i < tested.cols(); ++i) {
        const Vector c = tested.col(i);
        const double residual = (u * detail::right_shift(c)).norm();
        if (residual > report.max_residual) report.max_residual = residual;
        if (residual > tolerance * scale && !report.witness) {
            report.invariant = false;
            report.witness = c;
        }
    }
    return report;
}

/// Minimal Frobenius-norm T solving T [f_1 .. f_{N-1}] = [f_2 .. f_N].
inline RepresentationReport build_representation(const VectorFamily& f,
                                                 double tolerance = tol::predicate) {
    if (f.count() < 2) throw TooFewVectorsError("representation needs at least two vectors");
    const Matrix& cols = f.columns();
    const Matrix prefix = cols.leftCols(f.count() - 1);
    const Matrix suffix = cols.rightCols(f.count() - 1);

    RepresentationReport report;
    const Matrix t = suffix * pseudoinverse(prefix);
    double worst = 0.0;
    for (Index k = 0; k + 1 < f.count(); ++k)
        worst = std::max(worst, (t * cols.col(k) - cols.col(k + 1)).norm());
    report.max_residual = worst;

    const Index prefix_rank = detail::numeric_rank(prefix);
    report.linearly_independent = prefix_rank == std::min(f.count() - 1, f.dim());
    report.kernel_shift_invariant = kernel_shift_invariance(f, tolerance).invariant;
    if (worst <= tolerance * rel_scale(cols.norm())) report.op = t;
    return report;
}

/// Orbit {T^k phi} truncation policy: stop at the first length whose tail
/// estimate falls under tail_tol, else at max_length.
struct OrbitConfig {
    Matrix transition;  // T, square
    Vector seed;        // phi
    Index max_length = 512;
    double tail_tol = 1e-10;
};

struct OrbitResult {
    VectorFamily family;
    bool hit_max_length = false;
};

enum class OrbitVerdict { InV, NotInV, Undecidable };

inline const char* to_string(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::InV: return "in_V";
        case OrbitVerdict::NotInV: return "not_in_V";
        default: return "undecidable";
    }
}

/// Frame verdict for the truncated orbit. tail_bound estimates ||S_inf - S_N||
/// by geometric extrapolation of the observed decay; it is infinite when the
/// orbit norms do not decay (q >= 1), in which case no Bessel certificate
/// exists and a spanning family is reported Undecidable.
struct OrbitReport {
    Index truncation_used = 0;
    bool hit_max_length = false;
    BoundsResult bounds_estimate = NotAFrame{};
    double tail_bound = 0.0;  // +inf without a decay certificate
    double decay_ratio = 0.0;  // q = ||T^{2N} phi|| / ||T^N phi||
    OrbitVerdict verdict = OrbitVerdict::NotInV;
    bool in_v = false;
    std::string reason;  // "", "rank", "diverging_bessel", "tail_dominates"
};

namespace detail {

struct OrbitScan {
    Matrix vectors;              // d x max_length, column k = T^k phi
    std::vector<double> norms2;  // k = 0 .. 2*max_length
    Index chosen = 0;
    bool hit_max = false;
    double tail_bound = 0.0;
    double decay_ratio = 0.0;
};

inline double tail_estimate(const std::vector<double>& norms2, Index n, double* q_out) {
    // sum_{k=n}^{2n} ||T^k phi||^2 plus a geometric extrapolation beyond 2n
    // with per-step ratio (||T^{2n} phi|| / ||T^n phi||)^{1/n}.
    double head = 0.0;
    for (Index k = n; k <= 2 * n; ++k) head += norms2[static_cast<std::size_t>(k)];
    const double base = norms2[static_cast<std::size_t>(n)];
    const double far = norms2[static_cast<std::size_t>(2 * n)];
    if (!std::isfinite(base) || !std::isfinite(far)) {  // orbit norms overflowed
        if (q_out) *q_out = std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::infinity();
    }
    if (base <= 0.0) {  // orbit already vanished; everything beyond is zero
        if (q_out) *q_out = 0.0;
        return head;
    }
    const double q = std::sqrt(far / base);
    if (q_out) *q_out = q;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    const double step2 = std::pow(q * q, 1.0 / static_cast<double>(n));
    return head + far * step2 / (1.0 - step2);
}

inline OrbitScan scan_orbit(const OrbitConfig& config) {
    const Matrix& t = config.transition;
    require_square(t);
    if (t.rows() != config.seed.size())
        throw DimensionMismatchError("operator and seed dimensions differ");
    if (config.max_length < t.rows())
        throw PreconditionError("max_length must be at least the dimension");
    if (config.tail_tol <= 0.0) throw PreconditionError("tail_tol must be positive");
    if (!all_finite(t) || !config.seed.allFinite())
        throw PreconditionError("operator and seed entries must be finite");

    OrbitScan scan;
    scan.vectors.resize(t.rows(), config.max_length);
    scan.norms2.resize(static_cast<std::size_t>(2 * config.max_length + 1));
    Vector v = config.seed;
    for (Index k = 0; k <= 2 * config.max_length; ++k) {
        if (k < config.max_length) scan.vectors.col(k) = v;
        scan.norms2[static_cast<std::size_t>(k)] = v.squaredNorm();
        v = t * v;
    }

    scan.chosen = config.max_length;
    scan.hit_max = true;
    for (Index n = 1; n <= config.max_length; ++n) {
        double q = 0.0;
        const double tail = tail_estimate(scan.norms2, n, &q);
        if (tail < config.tail_tol) {
            scan.chosen = n;
            scan.hit_max = false;
            scan.tail_bound = tail;
            scan.decay_ratio = q;
            break;
        }
        if (n == config.max_length) {
            scan.tail_bound = tail;
            scan.decay_ratio = q;
        }
    }
    return scan;
}

}  // namespace detail

inline OrbitResult orbit(const OrbitConfig& config) {
    detail::OrbitScan scan = detail::scan_orbit(config);
    return {VectorFamily(scan.vectors.leftCols(scan.chosen)), scan.hit_max};
}

inline OrbitReport orbit_frame_report(const OrbitConfig& config) {
    detail::OrbitScan scan = detail::scan_orbit(config);
    const VectorFamily family(scan.vectors.leftCols(scan.chosen));

    OrbitReport report;
    report.truncation_used = scan.chosen;
    report.hit_max_length = scan.hit_max;
    report.tail_bound = scan.tail_bound;
    report.decay_ratio = scan.decay_ratio;

    // Spanning at truncation is decided against tail_tol, not the relative
    // rank gate: a growing orbit inflates lambda_max without erasing the
    // lower bound contributed by the early vectors.
    const EigenDecomposition eig = hermitian_eig(frame_operator(family));
    const double lmin = eig.values(0);
    const double lmax = eig.values(eig.values.size() - 1);
    const bool spans = lmin > config.tail_tol;
    report.bounds_estimate =
        spans ? BoundsResult(FrameBounds{lmin, lmax}) : BoundsResult(NotAFrame{lmin});

    if (!spans) {
        report.verdict = OrbitVerdict::NotInV;
        report.reason = "rank";
    } else if (!std::isfinite(report.tail_bound)) {
        report.verdict = OrbitVerdict::Undecidable;
        report.reason = "diverging_bessel";
    } else if (lmin <= report.tail_bound) {
        report.verdict = OrbitVerdict::Undecidable;
        report.reason = "tail_dominates";
    } else {
        report.verdict = OrbitVerdict::InV;
    }
    report.in_v = report.verdict == OrbitVerdict::InV;
    return report;
}

/// Synthesis, analysis and frame operator of T^n(F) = {T^n f_k}, computed from
/// the closed forms T^n U_F, U_F* (T^n)* and T^n S_F (T^n)*. The same three
/// operators are recomputed directly from the transformed family, and
/// max_rel_discrepancy carries the worst relative disagreement (including the
/// factorization T^n S_F (T^n)* vs T^n U_F U_F* (T^n)*).
struct IteratedOperators {
    Matrix synthesis;
    Matrix analysis;
    Matrix frame_op;
    double max_rel_discrepancy = 0.0;
};

inline IteratedOperators iterated_family_operators(const VectorFamily& f, const Matrix& t,
                                                   unsigned long n) {
    require_square(t);
    if (t.rows() != f.dim()) throw DimensionMismatchError("operator and family dimensions differ");
    if (n == 0) throw PreconditionError("n must be positive");

    const Matrix tn = matrix_power(t, n);
    const Matrix u = synthesis_matrix(f);
    const Matrix s = frame_operator(f);

    IteratedOperators out;
    out.synthesis = tn * u;
    out.analysis = analysis_matrix(f) * tn.adjoint();
    out.frame_op = tn * s * tn.adjoint();

    // Direct route: transform the family column by column, then accumulate.
    Matrix direct_synth(u.rows(), u.cols());
    for (Index k = 0; k < u.cols(); ++k) direct_synth.col(k) = tn * u.col(k);
    const Matrix direct_analysis = direct_synth.adjoint();
    Matrix direct_frame = Matrix::Zero(u.rows(), u.rows());
    for (Index k = 0; k < u.cols(); ++k)
        direct_frame += direct_synth.col(k) * direct_synth.col(k).adjoint();
    const Matrix chained = tn * u * u.adjoint() * tn.adjoint();

    const auto rel = [](const Matrix& a, const Matrix& b) {
        return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
    };
    out.max_rel_discrepancy = std::max({rel(out.synthesis, direct_synth),
                                        rel(out.analysis, direct_analysis),
                                        rel(out.frame_op, direct_frame),
                                        rel(out.frame_op, chained)});
    return out;
}

struct RieszIterationVerdict {
    bool riesz_basis = false;
    bool operator_invertible = false;
    bool agree = false;
};

/// Prop-style biconditional probe: T^n(F) Riesz basis vs T^n invertible.
/// Requires F itself to be a Riesz basis.
inline RieszIterationVerdict riesz_iff_invertible(const VectorFamily& f, const Matrix& t,
                                                  unsigned long n, double rank_tol = tol::rank) {
    require_square(t);
    if (t.rows() != f.dim()) throw DimensionMismatchError("operator and family dimensions differ");
    if (n == 0) throw PreconditionError("n must be positive");
    if (!is_riesz_basis(f, rank_tol)) throw PreconditionError("family must be a Riesz basis");

    const Matrix tn = matrix_power(t, n);
    RieszIterationVerdict v;
    v.riesz_basis = is_riesz_basis(VectorFamily(tn * f.columns()), rank_tol);
    v.operator_invertible = is_invertible(try_inverse(tn, 1.0 / rank_tol));
    v.agree = v.riesz_basis == v.operator_invertible;
    return v;
}

/// Search verdict for phi in B(f, k) = union_n { ||T^n phi - f|| < 1/k }.
/// A false `member` only means no witness exists up to searched_up_to.
struct BallMembership {
    bool member = false;
    Index witness_n = -1;  // smallest witness when member
    double best_distance = std::numeric_limits<double>::infinity();
    Index best_n = 0;
    Index searched_up_to = 0;
};

inline BallMembership ball_membership(const Vector& phi, const Vector& f, long k, const Matrix& t,
                                      Index n_max = 512) {
    if (k < 1) throw PreconditionError("k must be at least 1");
    require_square(t);
    if (t.rows() != phi.size() || phi.size() != f.size())
        throw DimensionMismatchError("operator and vector dimensions differ");

    const double radius = 1.0 / static_cast<double>(k);
    BallMembership result;
    result.searched_up_to = n_max;
    Vector v = phi;
    for (Index n = 0; n <= n_max; ++n) {
        const double dist = (v - f).norm();
        if (dist < result.best_distance) {
            result.best_distance = dist;
            result.best_n = n;
        }
        if (dist < radius) {
            result.member = true;
            result.witness_n = n;
            return result;
        }
        v = t * v;
    }
    return result;
}

struct VsetCheck {
    Index phi_index = 0;
    Index f_index = 0;
    long k = 0;
    BallMembership membership;
};

/// Sampled forward-inclusion probe of V(T) = intersection of the B(f, k):
/// classifies every seed, then checks each in-V seed against every other in-V
/// seed and every k. Violations are counterexample candidates, not proofs.
struct VsetExperiment {
    std::vector<OrbitReport> seed_reports;
    std::vector<Index> in_v_seeds;
    std::vector<VsetCheck> checks;
    std::vector<VsetCheck> violations;
};

inline VsetExperiment vset_ball_experiment(const Matrix& t, const std::vector<Vector>& seeds,
                                           const std::vector<long>& ks, Index n_max = 512,
                                           double tail_tol = 1e-10) {
    VsetExperiment exp;
    for (const Vector& seed : seeds)
        exp.seed_reports.push_back(orbit_frame_report({t, seed, std::max(n_max, t.rows()), tail_tol}));
    for (Index i = 0; i < static_cast<Index>(seeds.size()); ++i)
        if (exp.seed_reports[static_cast<std::size_t>(i)].in_v) exp.in_v_seeds.push_back(i);

    for (Index phi_idx : exp.in_v_seeds) {
        for (Index f_idx : exp.in_v_seeds) {
            if (phi_idx == f_idx) continue;
            for (long k : ks) {
                VsetCheck check;
                check.phi_index = phi_idx;
                check.f_index = f_idx;
                check.k = k;
                check.membership = ball_membership(seeds[static_cast<std::size_t>(phi_idx)],
                                                   seeds[static_cast<std::size_t>(f_idx)], k, t,
                                                   n_max);
                if (!check.membership.member) exp.violations.push_back(check);
                exp.checks.push_back(check);
            }
        }
    }
    return exp;
}

/// Radius r = 1 / ||T^{-1}||: every U with ||T - U|| < r is invertible.
inline double invertibility_neighborhood(const Matrix& t) {
    return 1.0 / operator_norm(inverse(try_inverse(t)));
}

/// Certificate quantity r(T^{-1}(T - U)); < 1 inside the neighborhood.
inline double perturbation_certificate(const Matrix& t, const Matrix& u) {
    if (t.rows() != u.rows() || t.cols() != u.cols())
        throw DimensionMismatchError("operators must share dimensions");
    return spectral_radius(inverse(try_inverse(t)) * (t - u));
}

}  // namespace framekit
