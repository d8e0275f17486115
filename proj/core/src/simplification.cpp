#include "frechet/simplification.hpp"

#include <algorithm>
#include <stdexcept>

namespace frechet {

Simplification simplify(const Curve& pi, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("simplification mu must be positive");

    std::vector<std::size_t> marked;
    marked.push_back(0);
    std::size_t current = 0;
    const double mu2 = mu * mu;
    for (std::size_t i = 1; i < pi.size(); ++i) {
        if (squared_distance(pi.vertex(i), pi.vertex(current)) >= mu2) {
            marked.push_back(i);
            current = i;
        }
    }
    if (marked.back() != pi.size() - 1) marked.push_back(pi.size() - 1);

    std::vector<double> flat;
    flat.reserve(marked.size() * pi.dim());
    for (std::size_t idx : marked) {
        auto v = pi.vertex(idx);
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return Simplification{Curve(pi.dim(), std::move(flat)), mu, std::move(marked)};
}

std::vector<double> simplification_critical_values(const Curve& pi) {
    std::vector<double> vals;
    const std::size_t n = pi.size();
    vals.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            vals.push_back(distance(pi.vertex(i), pi.vertex(j)));
        }
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

}  // namespace frechet
