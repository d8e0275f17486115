#include "frechet/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace frechet {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

double squared_distance(const Point& a, const Point& b) {
    return squared_distance(std::span<const double>(a.coords),
                            std::span<const double>(b.coords));
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

Segment::Segment(Point s, Point e) : start(std::move(s)), end(std::move(e)) {
    if (start.dim() != end.dim()) {
        throw std::domain_error("segment endpoints must share one dimension");
    }
}

Point Segment::at(double t) const {
    Point p = start;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        p[i] = (1.0 - t) * start[i] + t * end[i];
    }
    return p;
}

double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b) {
    double dd = 0.0, dp = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = b[i] - a[i];
        dd += d * d;
        dp += d * (p[i] - a[i]);
    }
    double t = 0.0;
    if (dd > 0.0) t = std::clamp(dp / dd, 0.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = a[i] + t * (b[i] - a[i]) - p[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double point_segment_distance(const Point& p, const Segment& s) {
    return point_segment_distance(std::span<const double>(p.coords),
                                  std::span<const double>(s.start.coords),
                                  std::span<const double>(s.end.coords));
}

Curve::Curve(std::vector<Point> vertices) {
    if (vertices.empty()) throw std::domain_error("curve needs at least one vertex");
    dim_ = vertices[0].dim();
    if (dim_ == 0) throw std::domain_error("curve dimension must be >= 1");
    n_ = vertices.size();
    coords_.reserve(n_ * dim_);
    for (const Point& v : vertices) {
        if (v.dim() != dim_) throw std::domain_error("curve vertices must share one dimension");
        for (double c : v.coords) {
            if (!std::isfinite(c)) throw std::domain_error("curve coordinates must be finite");
            coords_.push_back(c);
        }
    }
    init_lengths();
}

Curve::Curve(std::size_t dim, std::vector<double> flat_coords)
    : dim_(dim), coords_(std::move(flat_coords)) {
    if (dim_ == 0) throw std::domain_error("curve dimension must be >= 1");
    if (coords_.empty() || coords_.size() % dim_ != 0) {
        throw std::domain_error("flat coordinate array must hold a whole number of vertices");
    }
    for (double c : coords_) {
        if (!std::isfinite(c)) throw std::domain_error("curve coordinates must be finite");
    }
    n_ = coords_.size() / dim_;
    init_lengths();
}

void Curve::init_lengths() {
    cumlen_.resize(n_);
    cumlen_[0] = 0.0;
    for (std::size_t i = 1; i < n_; ++i) {
        cumlen_[i] = cumlen_[i - 1] + distance(vertex(i - 1), vertex(i));
    }
}

Point Curve::point(std::size_t i) const {
    auto v = vertex(i);
    return Point(std::vector<double>(v.begin(), v.end()));
}

Segment Curve::edge(std::size_t i) const { return Segment(point(i), point(i + 1)); }

CurvePosition normalize(const Curve& curve, CurvePosition pos) {
    if (pos.fraction == 1.0 && pos.edge_index < static_cast<int>(curve.edge_count())) {
        return {pos.edge_index + 1, 0.0};
    }
    return pos;
}

void validate_position(const Curve& curve, CurvePosition pos) {
    if (curve.edge_count() == 0) {
        throw std::domain_error("single-vertex curve has no valid positions");
    }
    if (pos.edge_index < 1 || pos.edge_index > static_cast<int>(curve.edge_count())) {
        throw std::domain_error("edge index " + std::to_string(pos.edge_index) +
                                " outside [1, " + std::to_string(curve.edge_count()) + "]");
    }
    if (!(pos.fraction >= 0.0 && pos.fraction <= 1.0)) {
        throw std::domain_error("position fraction outside [0, 1]");
    }
}

double position_param(CurvePosition pos) { return (pos.edge_index - 1) + pos.fraction; }

CurvePosition position_from_param(const Curve& curve, double param) {
    const double last = static_cast<double>(curve.edge_count());
    param = std::clamp(param, 0.0, last);
    int edge0 = std::min(static_cast<int>(param), static_cast<int>(curve.edge_count()) - 1);
    if (edge0 < 0) edge0 = 0;
    return {edge0 + 1, param - edge0};
}

Point point_at(const Curve& curve, CurvePosition pos) {
    validate_position(curve, pos);
    const std::size_t e = static_cast<std::size_t>(pos.edge_index - 1);
    auto a = curve.vertex(e);
    auto b = curve.vertex(e + 1);
    std::vector<double> c(curve.dim());
    for (std::size_t i = 0; i < curve.dim(); ++i) {
        c[i] = (1.0 - pos.fraction) * a[i] + pos.fraction * b[i];
    }
    return Point(std::move(c));
}

Curve subcurve(const Curve& curve, CurvePosition a, CurvePosition b) {
    validate_position(curve, a);
    validate_position(curve, b);
    a = normalize(curve, a);
    b = normalize(curve, b);
    if (b < a) throw std::domain_error("subcurve requires a <= b in curve order");

    std::vector<Point> verts;
    verts.push_back(point_at(curve, a));
    const double pa = position_param(a);
    const double pb = position_param(b);
    for (std::size_t v = 0; v < curve.size(); ++v) {
        const double pv = static_cast<double>(v);
        if (pv > pa && pv < pb) verts.push_back(curve.point(v));
    }
    if (pb > pa) verts.push_back(point_at(curve, b));
    return Curve(std::move(verts));
}

double arc_length_between(const Curve& curve, CurvePosition a, CurvePosition b) {
    a = normalize(curve, a);
    b = normalize(curve, b);
    if (b < a) throw std::domain_error("arc_length_between requires a <= b");
    auto prefix = [&](CurvePosition p) {
        const std::size_t e = static_cast<std::size_t>(p.edge_index - 1);
        return curve.cumulative_length(e) + p.fraction * curve.edge_length(e);
    };
    return prefix(b) - prefix(a);
}

std::optional<std::pair<double, double>> chord_clip_params(
    std::span<const double> seg_start, std::span<const double> seg_end,
    std::span<const double> center, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("chord radius must be positive");
    // Solve |s + t*(e-s) - c|^2 <= radius^2 for t in [0,1].
    double a = 0.0, b = 0.0, c = -radius * radius;
    for (std::size_t i = 0; i < seg_start.size(); ++i) {
        const double u = seg_end[i] - seg_start[i];
        const double v = seg_start[i] - center[i];
        a += u * u;
        b += u * v;
        c += v * v;
    }
    if (a == 0.0) {  // degenerate segment: one point
        if (c <= 0.0) return std::make_pair(0.0, 1.0);
        return std::nullopt;
    }
    // Closest approach first; robust against a marginally negative discriminant
    // at tangency.
    const double tstar = std::clamp(-b / a, 0.0, 1.0);
    const double closest2 = a * tstar * tstar + 2.0 * b * tstar + c + radius * radius;
    double disc = b * b - a * c;
    if (disc < 0.0) {
        if (closest2 > radius * radius * (1.0 + 1e-12)) return std::nullopt;
        disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    double t0 = (-b - sq) / a;
    double t1 = (-b + sq) / a;
    t0 = std::max(t0, 0.0);
    t1 = std::min(t1, 1.0);
    if (t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

std::optional<Segment> chord_clip(const Segment& seg, const Point& center, double radius) {
    auto ts = chord_clip_params(seg.start.coords, seg.end.coords, center.coords, radius);
    if (!ts) return std::nullopt;
    return Segment(seg.at(ts->first), seg.at(ts->second));
}

}  // namespace frechet
