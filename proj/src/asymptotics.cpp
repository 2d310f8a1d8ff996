#include "painleve/asymptotics.hpp"

#include <cmath>

#include "painleve/error.hpp"

namespace painleve {

PsiValue psi_tilde(double s, const ConnectionConstants& c) {
    if (!(s > 0)) throw DomainError("psi_tilde: s must be positive");
    const double q = 0.75 * c.d * c.d;
    const double rs = std::sqrt(s);
    return {2.0 / 3.0 * s * rs - q * std::log(s) + c.phi, rs - q / s};
}

double psi_turning_point(double d) { return std::pow(0.75 * d * d, 2.0 / 3.0); }

VState v_neg_asym(double x, const ASParams& p, const ConnectionConstants& c, bool include_alpha_term) {
    if (!(x <= -1.0)) throw DomainError("v_neg_asym: requires x <= -1");
    const double s = -x;
    const PsiValue psi = psi_tilde(s, c);
    const double amp = c.d * std::pow(s, -0.25);
    const double damp = -0.25 * amp / s;
    const double cs = std::cos(psi.value), sn = std::sin(psi.value);
    VState out{amp * cs, -(damp * cs - amp * psi.derivative * sn)};
    if (include_alpha_term) {
        out.v += p.alpha() / x;
        out.v_prime -= p.alpha() / (x * x);
    }
    return out;
}

VState v_neg_asym(double x, const ASParams& p, bool include_alpha_term) {
    if (p.degenerate()) {
        if (!(x <= -1.0)) throw DomainError("v_neg_asym: requires x <= -1");
        return {0.0, 0.0};
    }
    return v_neg_asym(x, p, connection_constants(p), include_alpha_term);
}

VState v_pos_asym(double x, double alpha) {
    if (!(x >= 1.0)) throw DomainError("v_pos_asym: requires x >= 1");
    const double c = 2.0 * alpha * (1.0 - alpha * alpha);
    const double x2 = x * x, x4 = x2 * x2;
    return {alpha / x + c / x4, -alpha / x2 - 4.0 * c / (x4 * x)};
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 5) throw DomainError("loglog_slope: need at least 5 points");
    double sx = 0, sy = 0;
    for (auto [a, v] : points) {
        if (!(a > 0) || !(v > 0)) throw DomainError("loglog_slope: abscissas and values must be positive");
        sx += std::log(a);
        sy += std::log(v);
    }
    const double n = double(points.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [a, v] : points) {
        const double dx = std::log(a) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(v) - my);
    }
    if (sxx <= 1e-300) throw DomainError("loglog_slope: abscissas coincide");
    return sxy / sxx;
}

std::vector<std::pair<double, double>> envelope_maxima(const std::vector<std::pair<double, double>>& samples,
                                                       double lo, double hi, int bins) {
    if (!(lo > 0) || !(hi > lo) || bins < 1) throw DomainError("envelope_maxima: bad bin range");
    std::vector<std::pair<double, double>> best(bins, {0.0, -1.0});
    const double ratio = std::log(hi / lo);
    for (auto [a, v] : samples) {
        if (a < lo || a > hi) continue;
        int b = int(std::floor(std::log(a / lo) / ratio * bins));
        if (b == bins) b = bins - 1;
        if (std::abs(v) > best[b].second) best[b] = {a, std::abs(v)};
    }
    std::vector<std::pair<double, double>> out;
    for (const auto& e : best)
        if (e.second > 0) out.push_back(e);
    return out;
}

}  // namespace painleve
