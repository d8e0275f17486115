#include "frechet/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

constexpr double kQuerySlack = 1e-9;

std::int64_t cell_of(double x, double cell) {
    return static_cast<std::int64_t>(std::floor(x / cell));
}

std::uint64_t fnv64(std::span<const std::int64_t> cell) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : cell) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffULL;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

void box_cells(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi,
               std::size_t axis, std::vector<std::int64_t>& scratch,
               std::vector<std::vector<std::int64_t>>& out) {
    if (axis == lo.size()) {
        out.push_back(scratch);
        return;
    }
    for (std::int64_t v = lo[axis]; v <= hi[axis]; ++v) {
        scratch[axis] = v;
        box_cells(lo, hi, axis + 1, scratch, out);
    }
}

// Cells stabbed by the segment a->b on a uniform grid. Short edges register
// their whole cell bounding box; long ones take an Amanatides-Woo walk.
void raster_cells(std::span<const double> a, std::span<const double> b, double cell,
                  std::vector<std::vector<std::int64_t>>& out) {
    const std::size_t dim = a.size();
    std::vector<std::int64_t> cur(dim), goal(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        cur[k] = cell_of(a[k], cell);
        goal[k] = cell_of(b[k], cell);
    }
    {
        std::vector<std::int64_t> lo(dim), hi(dim);
        std::size_t volume = 1;
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(cur[k], goal[k]);
            hi[k] = std::max(cur[k], goal[k]);
            volume *= static_cast<std::size_t>(hi[k] - lo[k] + 1);
            if (volume > 32) break;
        }
        if (volume <= 32) {
            std::vector<std::int64_t> scratch(dim);
            box_cells(lo, hi, 0, scratch, out);
            return;
        }
    }
    out.push_back(cur);
    std::vector<double> tmax(dim), tdelta(dim);
    std::vector<int> stepdir(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = b[k] - a[k];
        if (d > 0.0) {
            stepdir[k] = 1;
            tmax[k] = ((cur[k] + 1) * cell - a[k]) / d;
            tdelta[k] = cell / d;
        } else if (d < 0.0) {
            stepdir[k] = -1;
            tmax[k] = (cur[k] * cell - a[k]) / d;
            tdelta[k] = -cell / d;
        } else {
            stepdir[k] = 0;
            tmax[k] = std::numeric_limits<double>::infinity();
            tdelta[k] = std::numeric_limits<double>::infinity();
        }
    }
    // Guard against pathologies at exact cell boundaries: the walk is capped;
    // queries stay exact regardless because candidates are distance-filtered.
    const std::size_t max_steps = 4 * dim + [&] {
        std::size_t s = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            s += static_cast<std::size_t>(std::llabs(goal[k] - cur[k]));
        }
        return s;
    }();
    for (std::size_t step = 0; step < max_steps && cur != goal; ++step) {
        std::size_t axis = 0;
        for (std::size_t k = 1; k < dim; ++k) {
            if (tmax[k] < tmax[axis]) axis = k;
        }
        if (!std::isfinite(tmax[axis])) break;
        cur[axis] += stepdir[axis];
        tmax[axis] += tdelta[axis];
        out.push_back(cur);
    }
    if (cur != goal) out.push_back(goal);
}

void dilate(const std::vector<std::int64_t>& base, int radius, std::size_t axis,
            std::vector<std::int64_t>& scratch, std::vector<std::vector<std::int64_t>>& out) {
    if (axis == base.size()) {
        out.push_back(scratch);
        return;
    }
    for (int o = -radius; o <= radius; ++o) {
        scratch[axis] = base[axis] + o;
        dilate(base, radius, axis + 1, scratch, out);
    }
}

}  // namespace

SegmentIndex::SegmentIndex(const Curve& K, double r) : curve_(K), r_(r) {
    if (!(r > 0.0)) throw std::domain_error("index radius must be positive");
    const std::size_t dim = K.dim();
    const std::size_t ec = K.edge_count();

    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    std::vector<std::vector<std::int64_t>> stabbed, dilated;
    std::vector<std::int64_t> scratch(dim);
    for (std::size_t e = 0; e < ec; ++e) {
        stabbed.clear();
        raster_cells(K.vertex(e), K.vertex(e + 1), r_, stabbed);
        dilated.clear();
        for (const auto& c : stabbed) {
            dilate(c, 2, 0, scratch, dilated);
        }
        std::sort(dilated.begin(), dilated.end());
        dilated.erase(std::unique(dilated.begin(), dilated.end()), dilated.end());
        for (const auto& c : dilated) {
            entries.emplace_back(fnv64(c), static_cast<std::uint32_t>(e));
        }
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

    keys_.reserve(entries.size());
    offsets_.reserve(entries.size() + 1);
    edges_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (keys_.empty() || keys_.back() != entries[i].first) {
            keys_.push_back(entries[i].first);
            offsets_.push_back(static_cast<std::uint32_t>(edges_.size()));
        }
        edges_.push_back(entries[i].second);
    }
    offsets_.push_back(static_cast<std::uint32_t>(edges_.size()));
}

void SegmentIndex::collect_cell(std::uint64_t key, std::vector<std::uint32_t>& out) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return;
    const std::size_t idx = static_cast<std::size_t>(it - keys_.begin());
    out.insert(out.end(), edges_.begin() + offsets_[idx], edges_.begin() + offsets_[idx + 1]);
}

std::vector<std::uint32_t> SegmentIndex::query_edges_within(std::span<const double> q,
                                                            double radius) const {
    const std::size_t dim = curve_.dim();
    if (q.size() != dim) throw std::domain_error("query point dimension mismatch");
    std::vector<std::uint32_t> cand;
    if (curve_.edge_count() == 0) return cand;

    // Registration already dilated edges by two cells; scanning the block of
    // Chebyshev radius ceil(max(0, radius - 2r)/r) + 1 around q covers any
    // point within `radius` of a registered edge.
    int scan = 1;
    if (radius > 2.0 * r_) {
        scan = static_cast<int>(std::ceil((radius - 2.0 * r_) / r_)) + 1;
    }
    std::int64_t base_arr[24], cell_arr[24];
    std::vector<std::int64_t> base_vec, cell_vec;
    std::int64_t *base = base_arr, *cell = cell_arr;
    if (dim > 24) {
        base_vec.resize(dim);
        cell_vec.resize(dim);
        base = base_vec.data();
        cell = cell_vec.data();
    }
    for (std::size_t k = 0; k < dim; ++k) {
        base[k] = cell_of(q[k], r_);
        cell[k] = base[k] - scan;
    }
    // Odometer walk over the block, no per-cell allocation.
    while (true) {
        collect_cell(fnv64(std::span<const std::int64_t>(cell, dim)), cand);
        std::size_t axis = 0;
        while (axis < dim && cell[axis] == base[axis] + scan) {
            cell[axis] = base[axis] - scan;
            ++axis;
        }
        if (axis == dim) break;
        ++cell[axis];
    }

    // The last edge is always a candidate, over and above the grid.
    cand.push_back(static_cast<std::uint32_t>(curve_.edge_count() - 1));

    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<std::uint32_t> out;
    const double cutoff = radius + kQuerySlack;
    for (std::uint32_t e : cand) {
        if (point_segment_distance(q, curve_.vertex(e), curve_.vertex(e + 1)) <= cutoff) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<std::uint32_t> SegmentIndex::query_edges(std::span<const double> q) const {
    return query_edges_within(q, 2.0 * r_);
}

std::vector<std::uint32_t> SegmentIndex::query_edges(const Point& q) const {
    return query_edges_within(q.coords, 2.0 * r_);
}

SegmentIndex build_index(const Curve& K, double r) { return SegmentIndex(K, r); }

std::vector<std::uint32_t> query_edges_brute_force(const Curve& K, double r, const Point& q) {
    std::vector<std::uint32_t> out;
    const double cutoff = 2.0 * r + kQuerySlack;
    for (std::size_t e = 0; e + 1 < K.size(); ++e) {
        if (point_segment_distance(q.coords, K.vertex(e), K.vertex(e + 1)) <= cutoff) {
            out.push_back(static_cast<std::uint32_t>(e));
        }
    }
    return out;
}

}  // namespace frechet
