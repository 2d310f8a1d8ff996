#include "painleve/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "painleve/asymptotics.hpp"
#include "painleve/error.hpp"
#include "painleve/quadrature.hpp"

namespace painleve {

namespace {

constexpr double kPi = std::numbers::pi;

void check_policy(const Profile& profile, const TailPolicy& policy) {
    if (!(policy.cutoff >= 20.0)) throw DomainError("TailPolicy: cutoff X must be >= 20");
    if (policy.ibp_levels != 1 && policy.ibp_levels != 2) throw DomainError("TailPolicy: ibp_levels must be 1 or 2");
    if (policy.cutoff > profile.options().cutoff)
        throw DomainError("TailPolicy: cutoff beyond the profile's grid (rebuild the profile with a larger cutoff)");
    if (policy.cutoff <= profile.options().x_match)
        throw DomainError("TailPolicy: cutoff must exceed x_match");
    if (const auto& c = profile.constants()) {
        // Phase must be monotone on the tail, with margin x2 over the turning point.
        if (policy.cutoff < 2.0 * psi_turning_point(c->d))
            throw DomainError("TailPolicy: cutoff below twice the phase turning point");
    }
}

// Panel breakpoints on [-X, X]: a fraction of the local period of v (and of
// 2 pi / |xi|), with the profile's seams as breakpoints.
std::vector<double> core_breaks(const Profile& profile, double X, double xi) {
    const ProfileOptions& o = profile.options();
    std::vector<double> fixed = {-X, o.x_join, o.x_match, X};
    std::vector<double> out = {-X};
    const double xi_len = xi != 0.0 ? 2 * kPi / std::abs(xi) / 4 : 1e300;
    for (std::size_t i = 0; i + 1 < fixed.size(); ++i) {
        double x = fixed[i];
        const double end = fixed[i + 1];
        while (x < end) {
            const double period = 2 * kPi / std::sqrt(std::max(std::abs(x), 1.0));
            const double w = std::min({1.0, period / 2, xi_len});
            x = std::min(end, x + w);
            if (end - x < 1e-9) x = end;
            out.push_back(x);
        }
    }
    return out;
}

// (4/3) C X^{-3/4}, where C fits |v - model| ~ C s^{-7/4} on the grid envelope over [X/2, X].
double h_tail_bound(const Profile& profile, double X) {
    const auto& c = profile.constants();
    if (!c) return 0.0;
    std::vector<std::pair<double, double>> samples;
    for (double s = X / 2; s <= X; s += 0.01) {
        const double x = -s;
        samples.emplace_back(s, profile.evaluate(x).v - v_neg_asym(x, profile.params(), *c, true).v);
    }
    const auto env = envelope_maxima(samples, X / 2, X, 6);
    double lc = 0;
    for (auto [s, r] : env) lc += std::log(r) + 1.75 * std::log(s);
    const double C = std::exp(lc / env.size());
    return 4.0 / 3.0 * C * std::pow(X, -0.75);
}

}  // namespace

double total_integral_formula(const ASParams& p) {
    const double c = std::cos(kPi * p.alpha());
    const double k = std::abs(p.k());
    return std::copysign(0.5 * std::log1p(2 * k / (c - k)), p.k());
}

OscillatoryTail oscillatory_tail(const ConnectionConstants& c, double sign, double omega, double X, int levels) {
    const double q = 0.75 * c.d * c.d;
    const double s = X;
    // Amplitude a = d s^{-1/4} and phase chi = sign * psi + omega s with derivatives.
    const double a0 = c.d * std::pow(s, -0.25);
    const double a1 = -0.25 * a0 / s;
    const double a2 = 5.0 / 16.0 * a0 / (s * s);
    const double rs = std::sqrt(s);
    const double chi = sign * psi_tilde(s, c).value + omega * s;
    const double c1 = sign * (rs - q / s) + omega;
    const double c2 = sign * (0.5 / rs + q / (s * s));
    const double c3 = sign * (-0.25 / (s * rs) - 2.0 * q / (s * s * s));
    if (!(std::abs(c1) > 0)) throw DomainError("oscillatory_tail: stationary phase on the tail");
    const cplx i(0.0, 1.0);
    const cplx ic1 = i * c1;
    const cplx e = std::exp(i * chi);
    // b1 = (a / (i chi'))', b2 = (b1 / (i chi'))'.
    const cplx b1 = a1 / ic1 - a0 * c2 / (i * c1 * c1);
    const cplx b1p = a2 / ic1 - 2.0 * a1 * c2 / (i * c1 * c1) - a0 * c3 / (i * c1 * c1) +
                     2.0 * a0 * c2 * c2 / (i * c1 * c1 * c1);
    const cplx b2 = b1p / ic1 - b1 * c2 / (i * c1 * c1);
    cplx value = -a0 / ic1 * e;
    double rem = std::abs(b1 / c1);
    if (levels >= 2) {
        value += b1 / ic1 * e;
        rem = std::abs(b2 / c1);
    }
    return {value, rem};
}

TotalIntegral pv_total_integral(const Profile& profile, const TailPolicy& policy, double tol) {
    check_policy(profile, policy);
    const double X = policy.cutoff;
    const double alpha = profile.params().alpha();
    TotalIntegral r{};
    if (profile.params().degenerate()) return r;
    r.core = integrate_panels([&](double x) { return profile.evaluate(x).v; }, core_breaks(profile, X, 0.0));
    r.right_tail = 2.0 / 3.0 * alpha * (1 - alpha * alpha) / (X * X * X);
    const OscillatoryTail t = oscillatory_tail(*profile.constants(), 1.0, 0.0, X, policy.ibp_levels);
    r.left_tail = t.value.real();
    r.remainder_estimate = t.remainder_estimate;
    if (policy.mean_correction) {
        const double d2 = profile.constants()->d * profile.constants()->d;
        r.mean_tail = -2.0 * alpha * d2 * std::pow(X, -1.5) + r.right_tail;
    }
    r.h_tail_bound = h_tail_bound(profile, X);
    r.value = r.core + r.right_tail + r.left_tail + r.mean_tail;
    r.warn = r.remainder_estimate > tol;
    return r;
}

FourierValue v_hat(const Profile& profile, double xi, const TailPolicy& policy, double tol) {
    if (!(xi != 0.0) || !(std::abs(xi) <= 1.0)) throw DomainError("v_hat: need 0 < |xi| <= 1");
    check_policy(profile, policy);
    const double X = policy.cutoff;
    const double alpha = profile.params().alpha();
    FourierValue r{};
    if (profile.params().degenerate()) return r;
    const cplx i(0.0, 1.0);
    r.core = integrate_panels([&](double x) { return profile.evaluate(x).v * std::exp(-i * xi * x); },
                              core_breaks(profile, X, xi));
    const double sg = xi > 0 ? 1.0 : -1.0;
    r.f_tail = -2.0 * i * alpha * sg * (kPi / 2 - sine_integral(std::abs(xi) * X));
    // Right side beyond X without alpha/x: 2 alpha (1 - alpha^2) x^{-4}; the
    // part beyond 50 X is below c4 (50 X)^{-3} / 3.
    {
        const double c4 = 2.0 * alpha * (1 - alpha * alpha);
        std::vector<double> br = {X};
        const double w = std::min(2 * kPi / std::abs(xi) / 4, 5.0);
        while (br.back() < 50 * X) br.push_back(std::min(50 * X, br.back() + w));
        r.right_tail = integrate_panels([&](double x) { return c4 / (x * x * x * x) * std::exp(-i * xi * x); }, br);
    }
    // Left side: with x = -s, cos(psi) e^{i xi s} = (e^{i(psi + xi s)} + e^{-i(psi - xi s)}) / 2.
    const ConnectionConstants& c = *profile.constants();
    const OscillatoryTail up = oscillatory_tail(c, 1.0, xi, X, policy.ibp_levels);
    const OscillatoryTail down = oscillatory_tail(c, -1.0, xi, X, policy.ibp_levels);
    r.g_tail = 0.5 * (up.value + down.value);
    r.remainder_estimate = 0.5 * (up.remainder_estimate + down.remainder_estimate);
    if (policy.mean_correction) {
        const double d2 = c.d * c.d;
        const double c4 = 2.0 * alpha * (1 - alpha * alpha);
        std::vector<double> br = {X};
        const double w = std::min(2 * kPi / std::abs(xi) / 4, 5.0);
        while (br.back() < 50 * X) br.push_back(std::min(50 * X, br.back() + w));
        r.mean_tail = integrate_panels(
            [&](double s) {
                return (-3.0 * alpha * d2 * std::pow(s, -2.5) + c4 / (s * s * s * s)) * std::exp(i * xi * s);
            },
            br);
        // beyond 50 X, at xi = 0
        r.mean_tail += -2.0 * alpha * d2 * std::pow(50 * X, -1.5);
    }
    r.h_tail_bound = h_tail_bound(profile, X);
    r.value = r.core + r.f_tail + r.right_tail + r.g_tail + r.mean_tail;
    r.warn = r.remainder_estimate > tol;
    return r;
}

}  // namespace painleve
