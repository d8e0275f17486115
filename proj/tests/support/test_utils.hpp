#pragma once

// Shared helpers for the test suites: random curve generators, rigid
// motions, and an independent dense dynamic-programming oracle used to
// corroborate the free-space implementation.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "frechet/geometry.hpp"

namespace testutil {

using frechet::Curve;
using frechet::Point;

using Rng = std::mt19937_64;

inline Point random_point(std::size_t dim, Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> c(dim);
    for (auto& x : c) x = u(rng);
    return Point(std::move(c));
}

/// Unconstrained random walk: a "general" curve.
inline Curve random_walk(std::size_t n, std::size_t dim, Rng& rng, double step = 1.0,
                         Point start = Point{}) {
    std::normal_distribution<double> g(0.0, step);
    std::vector<Point> verts;
    Point cur = start.dim() == dim ? start : Point(std::vector<double>(dim, 0.0));
    verts.push_back(cur);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) cur[k] += g(rng);
        verts.push_back(cur);
    }
    return Curve(std::move(verts));
}

/// Random rotation (Gram-Schmidt over gaussian columns) + translation.
struct RigidMotion {
    std::vector<double> rot;  // dim x dim, row major
    std::vector<double> offset;
    std::size_t dim;

    Point apply(const Point& p) const {
        std::vector<double> out(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = offset[r];
            for (std::size_t k = 0; k < dim; ++k) acc += rot[r * dim + k] * p[k];
            out[r] = acc;
        }
        return Point(std::move(out));
    }
    Curve apply(const Curve& c) const {
        std::vector<Point> verts;
        for (std::size_t i = 0; i < c.size(); ++i) verts.push_back(apply(c.point(i)));
        return Curve(std::move(verts));
    }
};

inline RigidMotion random_rigid_motion(std::size_t dim, Rng& rng, double offset_scale = 5.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    RigidMotion m;
    m.dim = dim;
    m.rot.assign(dim * dim, 0.0);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<double> v(dim);
        for (auto& x : v) x = g(rng);
        for (std::size_t prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += v[k] * m.rot[k * dim + prev];
            for (std::size_t k = 0; k < dim; ++k) v[k] -= dot * m.rot[k * dim + prev];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-9) {
            std::fill(v.begin(), v.end(), 0.0);
            v[col] = 1.0;
            norm = 1.0;
        }
        for (std::size_t k = 0; k < dim; ++k) m.rot[k * dim + col] = v[k] / norm;
    }
    std::uniform_real_distribution<double> u(-offset_scale, offset_scale);
    m.offset.resize(dim);
    for (auto& x : m.offset) x = u(rng);
    return m;
}

/// Arc-length-uniform dense sampling of a curve.
inline std::vector<Point> dense_sample(const Curve& c, double spacing) {
    std::vector<Point> out;
    out.push_back(c.point(0));
    for (std::size_t e = 0; e + 1 < c.size(); ++e) {
        const double len = c.edge_length(e);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
        for (int k = 1; k <= pieces; ++k) {
            const double t = static_cast<double>(k) / pieces;
            auto a = c.vertex(e);
            auto b = c.vertex(e + 1);
            std::vector<double> p(c.dim());
            for (std::size_t d = 0; d < c.dim(); ++d) p[d] = (1 - t) * a[d] + t * b[d];
            out.push_back(Point(std::move(p)));
        }
    }
    return out;
}

/// Discrete Frechet distance over point sequences (quadratic DP). With
/// dense samplings this brackets the continuous distance to within the
/// sampling spacing; fully independent of the free-space code.
inline double discrete_frechet(const std::vector<Point>& A, const std::vector<Point>& B) {
    const std::size_t n = A.size(), m = B.size();
    std::vector<double> prev(m), cur(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double d = frechet::distance(A[0], B[j]);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = frechet::distance(A[i], B[j]);
            double best = prev[j];
            if (j > 0) best = std::min(best, std::min(prev[j - 1], cur[j - 1]));
            cur[j] = std::max(d, best);
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

/// Continuous-Frechet estimate by dense sampling; error bounded by roughly
/// twice the spacing.
inline double dense_frechet_oracle(const Curve& A, const Curve& B, double spacing) {
    return discrete_frechet(dense_sample(A, spacing), dense_sample(B, spacing));
}

}  // namespace testutil
