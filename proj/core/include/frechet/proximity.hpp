#pragma once

#include <cstdint>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// Uniform hash grid over the edges of a curve K, built for a fixed radius
/// r: query_edges reports exactly the edges within distance 2r of a point.
///
/// Cell size equals r. Every edge is registered in every grid cell its
/// 2r-neighbourhood overlaps (cells the edge passes through, dilated by two
/// cells in Chebyshev distance); queries scan the 3^d block around the query
/// cell and filter candidates by exact segment distance. The last edge of K
/// is checked unconditionally, whatever its length.
class SegmentIndex {
public:
    SegmentIndex(const Curve& K, double r);

    /// Ids (0-based edge indices of K) of all edges e with d(q, e) <= 2r,
    /// closed ball with +1e-9 slack, sorted ascending.
    std::vector<std::uint32_t> query_edges(const Point& q) const;
    std::vector<std::uint32_t> query_edges(std::span<const double> q) const;

    /// Same contract at an explicit radius; exact for radius <= 2r via the
    /// standard block scan and for larger radii via a wider scan.
    std::vector<std::uint32_t> query_edges_within(std::span<const double> q,
                                                  double radius) const;

    double r() const { return r_; }
    const Curve& curve() const { return curve_; }
    std::size_t edge_count() const { return curve_.edge_count(); }
    std::int64_t last_edge_id() const {
        return static_cast<std::int64_t>(curve_.edge_count()) - 1;
    }

private:
    Curve curve_;
    double r_ = 0.0;
    // CSR layout over sorted cell keys: keys_ unique-sorted, edge ids for
    // keys_[i] live in edges_[offsets_[i] .. offsets_[i+1]).
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> edges_;

    std::uint64_t cell_key(std::span<const std::int64_t> cell) const;
    void collect_cell(std::uint64_t key, std::vector<std::uint32_t>& out) const;
};

/// Builds the index; r must be positive.
SegmentIndex build_index(const Curve& K, double r);

/// Edge ids within 2r of q, by brute force over all edges (test oracle).
std::vector<std::uint32_t> query_edges_brute_force(const Curve& K, double r, const Point& q);

}  // namespace frechet
