#include "painleve/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "painleve/error.hpp"

namespace painleve {

namespace {

GaussRule build_rule(int n) {
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.nodes[i] = x;
        g.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 200) throw DomainError("gauss_legendre: degree must be in [1, 200]");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

}  // namespace painleve
