#include "painleve/mkdv.hpp"

#include <cmath>
#include <numbers>

#include "painleve/error.hpp"
#include "painleve/quadrature.hpp"

namespace painleve {

namespace {

constexpr double kPi = std::numbers::pi;

double tau_of(double t) { return std::cbrt(3.0 * t); }

void check_window(const SelfSimilarField& f, double x_lo, double x_hi, double t_lo, double t_hi, double margin) {
    if (!(x_lo <= x_hi)) throw DomainError("pde residual: empty window");
    for (double t : {t_lo, t_hi}) {
        if (x_lo - margin < f.grid_lo(t) || x_hi + margin > f.grid_hi(t))
            throw DomainError("pde residual: window outside the grid region");
    }
}

// residual of the PDE in terms of v at y = x / tau, scaled by tau^4 / 2
double scaled_residual(double y, double v, double vp, double vppp) {
    return v + y * vp - vppp + 6 * v * v * vp;
}

}  // namespace

ASParams ab_to_params(const InitialDataCoefficients& c) {
    if (!(std::abs(c.b) < 1.0)) throw DomainError("ab_to_params: need |b| < 1");
    if (!std::isfinite(c.a)) throw DomainError("ab_to_params: non-finite a");
    const double alpha = -c.b / 2;
    return make_params(alpha, std::cos(kPi * alpha) * std::tanh(-c.a / 2));
}

InitialDataCoefficients params_to_ab(const ASParams& p) {
    return {-2.0 * total_integral_formula(p), -2.0 * p.alpha()};
}

SelfSimilarField::SelfSimilarField(std::shared_ptr<const Profile> profile, double t)
    : profile_(std::move(profile)), t_(t), tau_(tau_of(t)) {
    if (!profile_) throw ConfigError("SelfSimilarField: null profile");
    if (!(t > 0) || !std::isfinite(t)) throw DomainError("SelfSimilarField: need t > 0");
}

double SelfSimilarField::u(double x) const { return u_at(t_, x); }

double SelfSimilarField::u_at(double t, double x) const {
    if (!(t > 0)) throw DomainError("SelfSimilarField: need t > 0");
    const double tau = tau_of(t);
    return -2.0 / tau * profile_->evaluate(x / tau).v;
}

cplx SelfSimilarField::u_hat(double xi, const TailPolicy& policy) const {
    return -2.0 * v_hat(*profile_, xi * tau_, policy).value;
}

double SelfSimilarField::grid_lo(double t) const { return -profile_->options().cutoff * tau_of(t); }
double SelfSimilarField::grid_hi(double t) const { return profile_->options().x_match * tau_of(t); }

double pde_residual_fd(const SelfSimilarField& f, double x_lo, double x_hi, double h) {
    if (!(h > 0) || !(h < f.t())) throw DomainError("pde_residual_fd: need 0 < h < t");
    check_window(f, x_lo, x_hi, f.t() - h, f.t() + h, 2 * h);
    if (f.profile().params().degenerate()) return 0.0;
    const double t = f.t();
    double worst = 0;
    const int n = std::max(1, int(std::ceil((x_hi - x_lo) / h)));
    for (int i = 0; i <= n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / n;
        const double um2 = f.u_at(t, x - 2 * h), um1 = f.u_at(t, x - h), u0 = f.u_at(t, x);
        const double up1 = f.u_at(t, x + h), up2 = f.u_at(t, x + 2 * h);
        const double ut = (f.u_at(t + h, x) - f.u_at(t - h, x)) / (2 * h);
        const double ux = (up1 - um1) / (2 * h);
        const double uxxx = (up2 - 2 * up1 + 2 * um1 - um2) / (2 * h * h * h);
        worst = std::max(worst, std::abs(ut + uxxx - 1.5 * u0 * u0 * ux));
    }
    return worst;
}

namespace {

template <class ThirdDerivative>
double analytic_residual(const SelfSimilarField& f, double x_lo, double x_hi, int samples, ThirdDerivative d3) {
    check_window(f, x_lo, x_hi, f.t(), f.t(), 0.0);
    if (samples < 1) throw DomainError("pde residual: samples must be positive");
    if (f.profile().params().degenerate()) return 0.0;
    const double tau = f.tau();
    const double scale = 2.0 / (tau * tau * tau * tau);
    double worst = 0;
    for (int i = 0; i <= samples; ++i) {
        const double y = (x_lo + (x_hi - x_lo) * i / samples) / tau;
        const VState s = f.profile().evaluate(y);
        worst = std::max(worst, scale * std::abs(scaled_residual(y, s.v, s.v_prime, d3(y, s))));
    }
    return worst;
}

}  // namespace

double pde_residual_grid(const SelfSimilarField& f, double x_lo, double x_hi, int samples) {
    const Profile& p = f.profile();
    return analytic_residual(f, x_lo, x_hi, samples, [&](double y, const VState&) {
        return y <= p.options().x_join ? p.left().third_derivative(y) : p.right().third_derivative(y);
    });
}

double pde_residual_closure(const SelfSimilarField& f, double x_lo, double x_hi, int samples) {
    return analytic_residual(f, x_lo, x_hi, samples, [](double y, const VState& s) {
        return s.v + y * s.v_prime + 6 * s.v * s.v * s.v_prime;
    });
}

double test_function(TestFunction g, double x) {
    switch (g) {
        case TestFunction::gaussian:
            return std::exp(-x * x) * (1 + x);
        case TestFunction::sech2: {
            const double s = 1.0 / std::cosh(x);
            return s * s * (1 + x);
        }
    }
    return 0.0;
}

double pairing_limit(const InitialDataCoefficients& c, TestFunction g) {
    // g(0) = 1; p.v. int g(x)/x dx = int of the even part of g(x)/x
    switch (g) {
        case TestFunction::gaussian:
            return c.a + c.b * std::sqrt(kPi);
        case TestFunction::sech2:
            return c.a + 2.0 * c.b;
    }
    return 0.0;
}

double pairing(const SelfSimilarField& f, TestFunction g) {
    if (f.profile().params().degenerate()) return 0.0;
    // int u(t, x) g(x) dx = -2 int v(y) g(tau y) dy, folded about 0 so the
    // alpha/y tails cancel.
    const double tau = f.tau();
    const double width = g == TestFunction::gaussian ? 7.0 : 20.0;
    const double L = width / tau;
    const Profile& p = f.profile();
    std::vector<double> br = {0.0};
    while (br.back() < L) {
        const double y = br.back();
        const double w = std::min(0.5, kPi / std::sqrt(std::max(y, 1.0)) / 2);
        br.push_back(std::min(L, y + w));
    }
    const double I = integrate_panels(
        [&](double y) { return p.evaluate(y).v * test_function(g, tau * y) + p.evaluate(-y).v * test_function(g, -tau * y); },
        br);
    return -2.0 * I;
}

}  // namespace painleve
