#include "painleve/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "painleve/error.hpp"

namespace painleve {

namespace {

using quad = __float128;

constexpr double kPi = std::numbers::pi;

// Ai(0) and Ai'(0) as double-double pairs.
constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0Hi = -0.2588194037928068;
constexpr double kAip0Lo = 2.522243111610832e-17;

constexpr double kAirySeam = 9.0;

AiryValue airy_maclaurin(double x) {
    // y'' = x y, a_{n+2} = a_{n-1} / ((n+2)(n+1)).
    const quad xq = x;
    quad am1 = 0;                             // a_{n-1}
    quad a0 = quad(kAi0Hi) + quad(kAi0Lo);    // a_n
    quad a1 = quad(kAip0Hi) + quad(kAip0Lo);  // a_{n+1}
    quad pw = 1;                              // x^n
    quad pwm1 = 0;                            // x^{n-1}
    quad sum = 0, dsum = 0, big = 0;
    int small_run = 0;
    for (int n = 0; n < 400; ++n) {
        const quad term = a0 * pw;
        const quad dterm = n * a0 * pwm1;
        sum += term;
        dsum += dterm;
        const quad mag = (term < 0 ? -term : term) + (dterm < 0 ? -dterm : dterm);
        if (mag > big) big = mag;
        // Every third coefficient vanishes, so wait for a run of small terms.
        small_run = (mag <= big * quad(1e-33)) ? small_run + 1 : 0;
        if (n > 6 && small_run >= 3) break;
        const quad a2 = am1 / quad((n + 2) * (n + 1));
        am1 = a0;
        a0 = a1;
        a1 = a2;
        pwm1 = pw;
        pw *= xq;
    }
    return {double(sum), double(dsum)};
}

AiryValue airy_asymptotic(double x) {
    const double ax = std::abs(x);
    const double zeta = 2.0 / 3.0 * ax * std::sqrt(ax);
    // u_k, v_k of the standard expansion, truncated at the smallest term.
    std::array<double, 64> u{}, v{};
    u[0] = v[0] = 1.0;
    int kmax = 1;
    for (int k = 1; k < 64; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) /
               ((2.0 * k - 1) * 216.0 * k);
        v[k] = -u[k] * (6.0 * k + 1) / (6.0 * k - 1);
        kmax = k;
        if (std::abs(u[k]) / std::pow(zeta, k) > std::abs(u[k - 1]) / std::pow(zeta, k - 1)) break;
        if (std::abs(u[k]) / std::pow(zeta, k) < 1e-18) break;
    }
    const double q = std::pow(ax, 0.25);
    const double sqrt_pi = std::sqrt(kPi);
    if (x > 0) {
        double su = 0, sv = 0, zp = 1;
        for (int k = 0; k < kmax; ++k) {
            const double sg = (k % 2 == 0) ? 1.0 : -1.0;
            su += sg * u[k] / zp;
            sv += sg * v[k] / zp;
            zp *= zeta;
        }
        const double e = std::exp(-zeta);
        return {e / (2 * sqrt_pi * q) * su, -q * e / (2 * sqrt_pi) * sv};
    }
    double ue = 0, uo = 0, ve = 0, vo = 0, zp = 1;
    for (int k = 0; k < kmax; ++k) {
        const double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            ue += sg * u[k] / zp;
            ve += sg * v[k] / zp;
        } else {
            uo += sg * u[k] / zp;
            vo += sg * v[k] / zp;
        }
        zp *= zeta;
    }
    const double c = std::cos(zeta - kPi / 4), s = std::sin(zeta - kPi / 4);
    return {(c * ue + s * uo) / (sqrt_pi * q), q / sqrt_pi * (s * ve - c * vo)};
}

// Bernoulli coefficients B_{2k} / (2k (2k-1)).
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

bool is_gamma_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// ---- parabolic cylinder ----

constexpr double kPcfAsymRadius = 10.0;
constexpr double kPcfMaxRadius = 50.0;
constexpr int kPcfOrder = 30;

PcfValue pcf_asymptotic(cplx nu, cplx z) {
    const cplx u = 1.0 / (z * z);
    cplx s = 1.0, ds = 0.0, term = 1.0;
    double prev = 1.0;
    for (int n = 1; n < 200; ++n) {
        const cplx next = -term * (nu - 2.0 * n + 2.0) * (nu - 2.0 * n + 1.0) / (2.0 * n) * u;
        const double mag = std::abs(next);
        if (mag > prev) break;
        term = next;
        s += term;
        ds += -2.0 * n * term / z;
        prev = mag;
        if (mag < 1e-18 * std::abs(s)) break;
    }
    const cplx pre = std::exp(nu * std::log(z) - z * z / 4.0);
    return {pre * s, pre * ((nu / z - z / 2.0) * s + ds)};
}

PcfValue pcf_origin(cplx nu) {
    const double sqrt_pi = std::sqrt(kPi);
    return {std::pow(2.0, nu / 2.0) * sqrt_pi * rgamma((1.0 - nu) / 2.0),
            -std::pow(2.0, (nu + 1.0) / 2.0) * sqrt_pi * rgamma(-nu / 2.0)};
}

// Taylor stepping of w'' = (z^2/4 - nu - 1/2) w along the segment z0 -> z1.
PcfValue pcf_propagate(cplx nu, cplx z0, PcfValue w, cplx z1) {
    const cplx a = nu + 0.5;
    std::array<cplx, kPcfOrder + 1> c;
    cplx z = z0;
    for (int guard = 0; guard < 10000; ++guard) {
        const cplx rem = z1 - z;
        if (std::abs(rem) == 0.0) return w;
        c[0] = w.value;
        c[1] = w.derivative;
        const cplx q0 = z * z / 4.0 - a;
        for (int n = 0; n + 2 <= kPcfOrder; ++n) {
            cplx acc = q0 * c[n];
            if (n >= 1) acc += z / 2.0 * c[n - 1];
            if (n >= 2) acc += 0.25 * c[n - 2];
            c[n + 2] = acc / double((n + 2) * (n + 1));
        }
        const double scale = std::abs(c[0]) + std::abs(c[1]);
        double r = 1.5;
        for (int j = kPcfOrder - 1; j <= kPcfOrder; ++j) {
            const double m = std::abs(c[j]);
            if (m > 0) r = std::min(r, std::pow(1e-17 * scale / m, 1.0 / j));
        }
        const cplx h = std::abs(rem) <= r ? rem : rem * (r / std::abs(rem));
        cplx v = c[kPcfOrder], dv = double(kPcfOrder) * c[kPcfOrder];
        for (int n = kPcfOrder - 1; n >= 0; --n) {
            v = v * h + c[n];
            if (n >= 1) dv = dv * h + double(n) * c[n];
        }
        w = {v, dv};
        z = (h == rem) ? z1 : z + h;
    }
    throw ConvergenceError("pcf_d: Taylor stepping did not reach the target");
}

// Closed right half-plane.
PcfValue pcf_right(cplx nu, cplx z) {
    const double r = std::abs(z);
    if (r >= kPcfAsymRadius) return pcf_asymptotic(nu, z);
    if (r > 0 && std::abs(std::arg(z)) <= kPi / 4) {
        const cplx za = z * (kPcfAsymRadius / r);
        return pcf_propagate(nu, za, pcf_asymptotic(nu, za), z);
    }
    return pcf_propagate(nu, 0.0, pcf_origin(nu), z);
}

}  // namespace

AiryValue airy_ai(double x) {
    if (!std::isfinite(x)) throw DomainError("airy_ai: non-finite argument");
    if (std::abs(x) <= kAirySeam) return airy_maclaurin(x);
    return airy_asymptotic(x);
}

cplx log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    if (is_gamma_pole(z)) throw DomainError("log_gamma: pole at non-positive integer");
    cplx shift = 0.0;
    while (z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z, inv2 = inv * inv;
    cplx series = 0.0, p = inv;
    for (double b : kStirling) {
        series += b * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi) + series - shift;
}

cplx rgamma(cplx z) {
    if (is_gamma_pole(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

PcfValue pcf_d(cplx nu, cplx z) {
    if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()) ||
        !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("pcf_d: non-finite argument");
    if (std::abs(z) > kPcfMaxRadius) throw RangeError("pcf_d: |z| beyond supported range 50");
    if (z.real() >= 0.0) return pcf_right(nu, z);
    // Connection formula to the right half-plane.
    const double s = z.imag() >= 0.0 ? 1.0 : -1.0;
    const cplx i(0.0, 1.0);
    const cplx c = std::sqrt(2 * kPi) * rgamma(-nu);
    const cplx e1 = std::exp(s * i * kPi * nu);
    const cplx e2 = std::exp(s * i * kPi * (nu + 1.0) / 2.0);
    const PcfValue a = pcf_right(nu, -z);
    PcfValue b{0.0, 0.0};
    if (c != 0.0) b = pcf_right(-nu - 1.0, -s * i * z);
    return {e1 * a.value + c * e2 * b.value, -e1 * a.derivative - s * i * c * e2 * b.derivative};
}

double sine_integral(double x) {
    if (!std::isfinite(x)) throw DomainError("sine_integral: non-finite argument");
    const double ax = std::abs(x);
    const double sg = x < 0 ? -1.0 : 1.0;
    if (ax <= 4.0) {
        double sum = 0, term = ax;  // x^{2n+1}/(2n+1)!
        for (int n = 0; n < 60; ++n) {
            const double add = term / (2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= -ax * ax / ((2.0 * n + 2) * (2.0 * n + 3));
        }
        return sg * sum;
    }
    // E1(i x) by modified Lentz; Si = pi/2 + Im E1(i x).
    const double tiny = 1e-300;
    cplx b(1.0, ax);
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -double(i - 1) * (i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    h *= cplx(std::cos(ax), -std::sin(ax));
    return sg * (kPi / 2 + h.imag());
}

}  // namespace painleve
