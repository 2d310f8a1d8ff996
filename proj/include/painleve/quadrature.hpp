#pragma once

#include <utility>
#include <vector>

namespace painleve {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Sum of fixed-degree Gauss panels over consecutive breakpoints.
template <typename F, typename T = decltype(std::declval<F>()(0.0))>
T integrate_panels(const F& f, const std::vector<double>& breaks, int degree = 20) {
    const GaussRule& g = gauss_legendre(degree);
    T total{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double m = 0.5 * (a + b), r = 0.5 * (b - a);
        T panel{};
        for (std::size_t j = 0; j < g.nodes.size(); ++j) panel += g.weights[j] * f(m + r * g.nodes[j]);
        total += r * panel;
    }
    return total;
}

}  // namespace painleve
