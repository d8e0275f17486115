#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// Reachable sub-intervals on the left/bottom boundary of one free-space
/// cell (i,j), each a sub-interval of [0,1] or empty (lo > hi).
struct FreeSpaceCell {
    double left_lo = 1.0, left_hi = 0.0;
    double bottom_lo = 1.0, bottom_hi = 0.0;
    bool left_empty() const { return left_lo > left_hi; }
    bool bottom_empty() const { return bottom_lo > bottom_hi; }
};

/// Free-space diagram of (A, B) at radius r: cell (i,j) covers A-edge i x
/// B-edge j, 0-based. Intervals here are the *free* (not reachable) parts;
/// intended for diagnostics and plotting.
struct FreeSpaceDiagram {
    std::size_t rows = 0;  // A edge count
    std::size_t cols = 0;  // B edge count
    double radius = 0.0;
    std::vector<FreeSpaceCell> cells;  // row-major, rows*cols
    const FreeSpaceCell& cell(std::size_t i, std::size_t j) const {
        return cells[i * cols + j];
    }
};

FreeSpaceDiagram free_space_diagram(const Curve& A, const Curve& B, double r);

/// True iff the Frechet distance between A and B is at most r, decided by
/// monotone reachability propagation through the free-space diagram.
bool decide_frechet(const Curve& A, const Curve& B, double r);

enum class ExactMode {
    kCriticalValues,  // binary search over enumerated critical values
    kBisection,       // plain bisection to a relative tolerance
};

struct ExactConfig {
    ExactMode mode = ExactMode::kCriticalValues;
    double bisect_rel_tol = 1e-10;
};

/// The Frechet distance between A and B, exact up to 1e-9 relative.
///
/// The default enumerates the free-space critical values (vertex-vertex,
/// vertex-edge, and monotonicity-opening events) and binary-searches them
/// with decide_frechet; bisection mode brackets the value instead.
double exact_frechet(const Curve& A, const Curve& B, const ExactConfig& cfg = {});

/// d_F(K<u,v>, seg): distance between the subcurve of K from u to v and a
/// segment. Exact within 1e-9; linear in the subcurve size times a
/// logarithmic bisection factor. Requires u <= v on K.
double segment_subcurve_frechet(const Curve& K, CurvePosition u, CurvePosition v,
                                const Segment& seg);

/// Process-wide count of exact_frechet invocations. Lets callers assert the
/// quadratic oracle stayed out of a code path.
std::uint64_t exact_frechet_call_count();

}  // namespace frechet
