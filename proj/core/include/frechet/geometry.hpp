#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace frechet {

/// A point in d-dimensional Euclidean space, d >= 1. All coordinates finite.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }

    bool operator==(const Point& o) const = default;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);
double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// A straight line segment. Both endpoints share one dimension.
struct Segment {
    Point start;
    Point end;

    Segment() = default;
    Segment(Point s, Point e);

    std::size_t dim() const { return start.dim(); }
    double length() const { return distance(start, end); }
    /// Point at parameter t in [0,1].
    Point at(double t) const;

    bool operator==(const Segment& o) const = default;
};

/// Distance from a point to the closed segment [a,b].
double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b);
double point_segment_distance(const Point& p, const Segment& s);

/// A polygonal curve: a non-empty vertex sequence with cached arc lengths.
///
/// Vertices are stored flat (row-major) so hot paths can work on spans.
/// Zero-length edges are legal and preserved.
class Curve {
public:
    explicit Curve(std::vector<Point> vertices);
    Curve(std::size_t dim, std::vector<double> flat_coords);

    std::size_t size() const { return n_; }            // number of vertices
    std::size_t edge_count() const { return n_ - 1; }  // n_ >= 1 always
    std::size_t dim() const { return dim_; }

    std::span<const double> vertex(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    Point point(std::size_t i) const;
    Segment edge(std::size_t i) const;  // 0-based edge i joins vertices i, i+1

    /// Arc length from the first vertex to vertex i. cumulative_length(0) == 0.
    double cumulative_length(std::size_t i) const { return cumlen_[i]; }
    double length() const { return cumlen_.back(); }
    double edge_length(std::size_t i) const { return cumlen_[i + 1] - cumlen_[i]; }

    std::span<const double> flat() const { return coords_; }

    bool operator==(const Curve& o) const {
        return dim_ == o.dim_ && coords_ == o.coords_;
    }

private:
    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> coords_;
    std::vector<double> cumlen_;
    void init_lengths();
};

/// A location on a curve: 1-based edge index plus a fraction in [0,1].
/// Edge index k refers to the segment joining vertices k and k+1 (1-based),
/// valid range [1, #vertices-1]. Ordered lexicographically after
/// normalisation; (k, 1) is canonically (k+1, 0) except on the last edge.
struct CurvePosition {
    int edge_index = 1;
    double fraction = 0.0;

    friend auto operator<=>(const CurvePosition&, const CurvePosition&) = default;
};

/// Canonical form: (k, 1) becomes (k+1, 0) unless k is the last edge.
CurvePosition normalize(const Curve& curve, CurvePosition pos);

/// Throws std::domain_error when pos is not valid for curve.
void validate_position(const Curve& curve, CurvePosition pos);

/// Continuous curve parameter in [0, #vertices-1] for a position.
double position_param(CurvePosition pos);
CurvePosition position_from_param(const Curve& curve, double param);

/// Point on the curve at the given position: the convex combination
/// (1-f) * v[k] + f * v[k+1] of the edge's endpoints.
Point point_at(const Curve& curve, CurvePosition pos);

/// The polygonal curve from a to b (inclusive), keeping interior vertices.
/// Requires a <= b in curve order; a == b yields a single-point curve.
Curve subcurve(const Curve& curve, CurvePosition a, CurvePosition b);

/// Arc length between two positions (a <= b).
double arc_length_between(const Curve& curve, CurvePosition a, CurvePosition b);

/// The sub-segment of seg inside the closed ball B(center, radius), or
/// absent when the intersection is empty. Tangency yields a degenerate
/// (zero-length) segment. radius must be positive.
std::optional<Segment> chord_clip(const Segment& seg, const Point& center, double radius);

/// Parameter interval [t0, t1] of seg inside B(center, radius), if any.
std::optional<std::pair<double, double>> chord_clip_params(
    std::span<const double> seg_start, std::span<const double> seg_end,
    std::span<const double> center, double radius);

}  // namespace frechet
