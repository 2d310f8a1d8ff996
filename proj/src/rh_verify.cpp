#include "painleve/rh_verify.hpp"

#include <cmath>
#include <numbers>

#include "painleve/error.hpp"

namespace painleve {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx epi(cplx c) { return std::exp(kI * kPi * c); }

struct NuConstants {
    cplx h0, h1;
};

NuConstants nu_constants(cplx nu) {
    const double r = std::sqrt(2 * kPi);
    return {-kI * r * rgamma(nu + 1.0), r * epi(nu) * rgamma(-nu)};
}

void check_circle(const ContourCircle& c, cplx center, double max_radius, const char* who) {
    if (std::abs(c.center - center) > 1e-14) throw DomainError(std::string(who) + ": circle has the wrong center");
    if (!(c.radius > 0) || !(c.radius <= max_radius)) throw DomainError(std::string(who) + ": circle radius out of range");
    if (c.orientation != Orientation::clockwise) throw DomainError(std::string(who) + ": circle must be clockwise");
}

// arg w moved into [-pi/4, 7pi/4)
double sector_angle(cplx w) {
    double th = std::arg(w);
    if (th < -kPi / 4) th += 2 * kPi;
    return th;
}

}  // namespace

const Matrix2 kSigma1{0.0, 1.0, 1.0, 0.0};
const Matrix2 kSigma2{0.0, -kI, kI, 0.0};
const Matrix2 kSigma3{1.0, 0.0, 0.0, -1.0};

double Matrix2::frobenius() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
}

Matrix2 Matrix2::inverse() const {
    const cplx d = det();
    if (d == 0.0) throw NumericalError("Matrix2: singular");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

bool Matrix2::finite() const {
    for (cplx v : {a11, a12, a21, a22})
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22, a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22};
}
Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
Matrix2 operator*(cplx s, const Matrix2& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }

ContourIntegral contour_integral(const ContourCircle& circle, const std::function<cplx(cplx)>& f, double tol,
                                 int max_nodes) {
    if (!(circle.radius > 0)) throw DomainError("contour_integral: radius must be positive");
    if (circle.n_nodes < 64) throw DomainError("contour_integral: need at least 64 nodes");
    const double dir = circle.orientation == Orientation::clockwise ? -1.0 : 1.0;
    auto trapezoid = [&](int n) {
        cplx s = 0;
        for (int j = 0; j < n; ++j) {
            const cplx e = std::exp(kI * (dir * 2 * kPi * j / n));
            s += f(circle.center + circle.radius * e) * e;
        }
        return s * kI * dir * circle.radius * (2 * kPi / n);
    };
    int n = circle.n_nodes;
    cplx prev = trapezoid(n);
    while (2 * n <= max_nodes) {
        n *= 2;
        const cplx cur = trapezoid(n);
        const double change = std::abs(cur - prev);
        if (change < tol) return {cur, n, change};
        prev = cur;
    }
    throw ConvergenceError("contour_integral: no convergence within max_nodes");
}

cplx zeta_map(cplx z) { return 4 * std::sqrt(3.0) / 3 * epi(0.75) * (z - 0.5) * std::sqrt(z + 1.0); }

PhaseMaps phase_maps(cplx z) {
    const cplx z3 = z * z * z;
    PhaseMaps m;
    m.theta_tilde = kI * (4.0 * z3 / 3.0 - z);
    m.eta = z - 4.0 * z3 / 3.0;
    m.zeta = zeta_map(z);
    m.near_cut = std::abs(z.imag()) < 1e-8 && z.real() < -1 + 1e-8;
    return m;
}

Matrix2 n_matrix(cplx z, cplx nu) {
    if (std::abs(z.imag()) < 1e-14 && std::abs(z.real()) <= 0.5) throw BranchError("n_matrix: z on [-1/2, 1/2]");
    const cplx e = std::exp(nu * (std::log(z + 0.5) - std::log(z - 0.5)));
    return Matrix2::power_sigma3(e);
}

cplx beta_fn(cplx z, double t, cplx nu) {
    if (!(t > 0)) throw DomainError("beta_fn: need t > 0");
    if (nu == 0.0) return 1.0;
    const cplx base = std::sqrt(t) * zeta_map(z) * (z + 0.5) / (z - 0.5);
    if (base == 0.0 || !std::isfinite(std::abs(base))) throw BranchError("beta_fn: base vanishes or is infinite");
    if (base.real() < 0 && std::abs(base.imag()) <= 1e-14 * std::abs(base)) throw BranchError("beta_fn: base on the cut");
    return std::exp(nu * std::log(base));
}

cplx e11(cplx z, cplx nu) { return std::exp(nu * (std::log(0.5 + z) - std::log(0.5 - z))); }

ContourIntegral residue_check_origin(const ContourCircle& circle, cplx nu) {
    check_circle(circle, 0.0, 0.25, "residue_check_origin");
    if (!(circle.radius < 0.25)) throw DomainError("residue_check_origin: radius must be below 1/4");
    return contour_integral(circle, [&](cplx z) {
        const cplx e = e11(z, nu);
        return e * e / phase_maps(z).eta;
    });
}

StationaryIdentity stationary_identity(const ASParams& p, double t, const ContourCircle& c_plus,
                                       const ContourCircle& c_minus) {
    if (!(t >= 10)) throw DomainError("stationary_identity: need t >= 10");
    check_circle(c_plus, 0.5, 0.2, "stationary_identity");
    check_circle(c_minus, -0.5, 0.2, "stationary_identity");
    if (p.degenerate()) return {0.0, 0.0};
    const auto c = connection_constants(p);
    const auto rh = rh_constants(p);
    const auto s = stokes_triple(p);
    const cplx nu = rh.nu;
    const cplx ip = contour_integral(c_plus, [&](cplx z) {
                        const cplx b = beta_fn(z, t, nu);
                        return b * b / zeta_map(z);
                    }).value;
    const cplx im = contour_integral(c_minus, [&](cplx z) {
                        const cplx b = beta_fn(-z, t, nu);
                        return 1.0 / (b * b * zeta_map(-z));
                    }).value;
    const double rt = 1 / std::sqrt(t);
    const cplx ph = std::exp(kI * (2 * t / 3));
    StationaryIdentity r;
    r.lhs = -rt * (nu * s.s3 / rh.h1) * ph * ip + rt * (rh.h1 / s.s3) / ph * im;
    r.rhs = -kI * kPi * c.d * rt * std::cos(2 * t / 3 - 0.75 * c.d * c.d * std::log(std::pow(t, 2.0 / 3.0)) + c.phi);
    return r;
}

int z_sector(cplx w) {
    if (w == 0.0) throw BranchError("z_sector: w = 0");
    const double th = sector_angle(w);
    constexpr double eps = 1e-12;
    for (double ray : {-kPi / 4, 0.0, kPi / 2, kPi, 1.5 * kPi, 1.75 * kPi})
        if (std::abs(th - ray) < eps) throw BranchError("z_sector: w on a sector boundary ray");
    if (th < 0) return 0;
    if (th < kPi / 2) return 1;
    if (th < kPi) return 2;
    if (th < 1.5 * kPi) return 3;
    return 4;
}

std::array<Matrix2, 4> h_matrices(cplx nu) {
    const auto h = nu_constants(nu);
    return {Matrix2{1.0, 0.0, h.h0, 1.0}, Matrix2{1.0, h.h1, 0.0, 1.0},
            Matrix2{1.0, 0.0, -h.h0 * std::exp(-2.0 * kI * kPi * nu), 1.0},
            Matrix2{1.0, -h.h1 * std::exp(2.0 * kI * kPi * nu), 0.0, 1.0}};
}

namespace {

// 2^{-sigma3/2} [[F, G], [F', G']] with F = cf D_{-nu-1}(sf w), G = cg D_nu(sg w)
Matrix2 z_columns(cplx nu, cplx w, cplx cf, cplx sf, cplx cg, cplx sg) {
    const PcfValue f = pcf_d(-nu - 1.0, sf * w);
    const PcfValue g = pcf_d(nu, sg * w);
    const double r = std::sqrt(0.5);
    return {r * cf * f.value, r * cg * g.value, 2 * r * cf * sf * f.derivative, 2 * r * cg * sg * g.derivative};
}

}  // namespace

Matrix2 z0_matrix(cplx nu, cplx w) { return z_columns(nu, w, epi((nu + 1.0) / 2.0), kI, 1.0, 1.0); }

Matrix2 z_parametrix(cplx nu, cplx w) {
    if (!(std::abs(nu) <= 2)) throw DomainError("z_parametrix: need |nu| <= 2");
    switch (z_sector(w)) {
        case 0:
            return z0_matrix(nu, w);
        case 1:
            return z_columns(nu, w, epi(-(nu + 1.0) / 2.0), -kI, 1.0, 1.0);
        case 2:
            return z_columns(nu, w, epi(-(nu + 1.0) / 2.0), -kI, epi(nu), -1.0);
        case 3:
            return z_columns(nu, w, epi((1.0 - 3.0 * nu) / 2.0), kI, epi(nu), -1.0);
        default:
            return z_columns(nu, w, epi((1.0 - 3.0 * nu) / 2.0), kI, epi(2.0 * nu), 1.0);
    }
}

Matrix2 z_expansion_remainder(cplx nu, cplx w) {
    const Matrix2 z = z_parametrix(nu, w);
    const cplx lw(std::log(std::abs(w)), sector_angle(w));
    const cplx e = w * w / 4.0 - (nu + 0.5) * lw;
    const Matrix2 left = std::sqrt(2.0) * Matrix2::power_sigma3(std::exp(lw / 2.0));
    const Matrix2 a{1.0, 1.0, 1.0, -1.0};
    const Matrix2 b{(nu + 1.0) * (nu + 2.0) / 2.0, -nu * (nu - 1.0) / 2.0, (nu + 1.0) * (nu - 2.0) / 2.0,
                    nu * (nu + 3.0) / 2.0};
    return left * z * Matrix2::power_sigma3(std::exp(-e)) - a - (1.0 / (w * w)) * b;
}

Matrix2 t_right_parametrix(const ASParams& p, double t, cplx z) {
    if (!(t >= 10)) throw DomainError("t_right_parametrix: need t >= 10");
    const double r = std::abs(z - 0.5);
    if (!(r >= 0.05 && r <= 0.2)) throw DomainError("t_right_parametrix: z outside the annulus about 1/2");
    if (p.degenerate()) throw DegenerateError("t_right_parametrix: degenerate parameters");
    const auto rh = rh_constants(p);
    const auto s = stokes_triple(p);
    const cplx xi = std::sqrt(t) * zeta_map(z);
    const cplx c = std::sqrt(-rh.h1 / s.s3);
    const Matrix2 lead = Matrix2::power_sigma3(beta_fn(z, t, rh.nu) / c * std::exp(kI * (t / 3)) / std::sqrt(2.0));
    const Matrix2 k{xi, 1.0, 1.0, 0.0};
    const Matrix2 tail = Matrix2::power_sigma3(std::exp(t * phase_maps(z).theta_tilde) * c);
    return lead * k * z_parametrix(rh.nu, xi) * tail;
}

Matrix2 t_left_parametrix(const ASParams& p, double t, cplx z) {
    return kSigma2 * t_right_parametrix(p, t, -z) * kSigma2;
}

Matrix2 m_pred(const ASParams& p, double t, cplx z, Side side) {
    if (!(t > 0)) throw DomainError("m_pred: need t > 0");
    if (p.degenerate()) return Matrix2::identity();
    const auto rh = rh_constants(p);
    const auto s = stokes_triple(p);
    const cplx nu = rh.nu;
    const cplx zz = side == Side::right ? z : -z;
    const cplx ze = zeta_map(zz);
    if (ze == 0.0) throw DomainError("m_pred: zeta vanishes");
    const cplx b2 = std::pow(beta_fn(zz, t, nu), 2);
    const cplx ph = std::exp(kI * (2 * t / 3));
    const cplx st = std::sqrt(t) * ze;
    const cplx up = nu * (nu + 1.0) / (2 * t * ze * ze);
    const cplx down = nu * (nu - 1.0) / (2 * t * ze * ze);
    const cplx f12 = nu * s.s3 / rh.h1 * ph * b2 / st;
    const cplx f21 = rh.h1 / s.s3 / ph / b2 / st;
    if (side == Side::right) return {1.0 + up, -f12, -f21, 1.0 - down};
    return {1.0 - down, f21, f12, 1.0 + up};
}

}  // namespace painleve
