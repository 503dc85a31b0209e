#pragma once

#include "framekit/frame.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// Removal verdict for one index. The criterion ||S^{-1/2} f_j|| <= sqrt(A/B)
/// is sufficient, not necessary, so the report carries the exact post-removal
/// bounds alongside it. certified_lower_bound is the guaranteed lower frame
/// bound of the Parseval-transformed family after removal.
struct RemovalReport {
    Index index = 0;  // 1-based j
    double criterion_value = 0.0;
    double threshold = 0.0;
    bool removable = false;
    BoundsResult post_removal_bounds = NotAFrame{};
    double certified_lower_bound = 0.0;  // 1 - A/B
};

/// j is 1-based. Requires a non-tight frame with at least dim+1 vectors.
inline RemovalReport removal_test(const VectorFamily& f, Index j, double tolerance = tol::predicate) {
    if (j < 1 || j > f.count()) throw IndexError(j, f.count());
    if (f.count() < f.dim() + 1)
        throw TooFewVectorsError("removal needs at least dim+1 vectors");
    const FrameBounds b = bounds(frame_bounds(f));
    if ((b.upper - b.lower) / b.upper <= tolerance) throw TightFrameError();

    RemovalReport report;
    report.index = j;
    report.criterion_value = (inverse_sqrt_frame_operator(f) * f.vector(j - 1)).norm();
    report.threshold = std::sqrt(b.lower / b.upper);
    report.removable = report.criterion_value <= report.threshold + tolerance;
    report.certified_lower_bound = 1.0 - b.lower / b.upper;
    report.post_removal_bounds = frame_bounds(f.without(j));
    return report;
}

}  // namespace framekit
