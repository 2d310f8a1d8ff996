#include "painleve/stokes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "painleve/error.hpp"

namespace painleve {

namespace {
constexpr double kPi = std::numbers::pi;

// cos^2(pi alpha) - k^2, positive on the valid domain.
double gap(const ASParams& p) {
    const double c = std::cos(kPi * p.alpha());
    return c * c - p.k() * p.k();
}
}  // namespace

ASParams make_params(double alpha, double k) {
    if (!std::isfinite(alpha) || !std::isfinite(k))
        throw DomainError("make_params: non-finite input");
    if (std::abs(alpha) >= 0.5)
        throw DomainError("make_params: |alpha| must be < 1/2, got " + std::to_string(alpha));
    if (std::abs(k) >= std::cos(kPi * alpha))
        throw DomainError("make_params: |k| must be < cos(pi alpha), got k=" + std::to_string(k));
    return ASParams(alpha, k);
}

StokesTriple stokes_triple(const ASParams& p) {
    const double s = std::sin(kPi * p.alpha());
    return {cplx(-s, -p.k()), 0.0, cplx(-s, p.k())};
}

double stokes_constraint_residual(const StokesTriple& s, double alpha) {
    return std::abs(s.s1 - s.s2 + s.s3 + s.s1 * s.s2 * s.s3 + 2.0 * std::sin(kPi * alpha));
}

double amplitude_d(const ASParams& p) {
    if (p.degenerate()) return 0.0;
    return std::sqrt(-std::log(gap(p)) / kPi);
}

ConnectionConstants connection_constants(const ASParams& p) {
    if (p.degenerate())
        throw DegenerateError("connection_constants: (0, 0) is the zero solution, phase undefined");
    const double d = amplitude_d(p);
    const double d2 = d * d;
    const double arg_gamma = log_gamma(cplx(0.0, d2 / 2.0)).imag();
    const double arg_s1 = std::arg(cplx(-std::sin(kPi * p.alpha()), -p.k()));
    const double phi = -1.5 * d2 * std::log(2.0) + arg_gamma - kPi / 4.0 - arg_s1;
    return {d, wrap_phase(phi)};
}

RHConstants rh_constants(const ASParams& p) {
    const double d = amplitude_d(p);
    const cplx nu(0.0, -d * d / 2.0);
    const double r2pi = std::sqrt(2.0 * kPi);
    const cplx i(0.0, 1.0);
    return {nu, -i * r2pi * rgamma(nu + 1.0), r2pi * std::exp(i * kPi * nu) * rgamma(-nu)};
}

double wrap_phase(double phi) {
    double r = std::remainder(phi, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

}  // namespace painleve
