#pragma once

#include <array>
#include <functional>

#include "painleve/specfun.hpp"
#include "painleve/stokes.hpp"

namespace painleve {

struct Matrix2 {
    cplx a11, a12, a21, a22;

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }
    // diag(x, 1/x)
    static Matrix2 power_sigma3(cplx x) { return {x, 0.0, 0.0, 1.0 / x}; }

    cplx det() const { return a11 * a22 - a12 * a21; }
    cplx trace() const { return a11 + a22; }
    double frobenius() const;
    Matrix2 inverse() const;
    bool finite() const;
};

Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator+(const Matrix2& a, const Matrix2& b);
Matrix2 operator-(const Matrix2& a, const Matrix2& b);
Matrix2 operator*(cplx s, const Matrix2& a);

extern const Matrix2 kSigma1;
extern const Matrix2 kSigma2;
extern const Matrix2 kSigma3;

enum class Orientation { clockwise, counterclockwise };

struct ContourCircle {
    cplx center;
    double radius;
    Orientation orientation = Orientation::clockwise;
    int n_nodes = 64;
};

struct ContourIntegral {
    cplx value;
    int nodes;      // nodes used by the accepted value
    double change;  // difference from the previous doubling
};

// Periodic trapezoid on the circle, doubling nodes from circle.n_nodes until
// two successive values differ by less than tol. ConvergenceError past max_nodes.
ContourIntegral contour_integral(const ContourCircle& circle, const std::function<cplx(cplx)>& f, double tol = 1e-10,
                                 int max_nodes = 1 << 16);

struct PhaseMaps {
    cplx theta_tilde;  // i (4 z^3 / 3 - z)
    cplx eta;          // z - 4 z^3 / 3
    cplx zeta;         // (4 sqrt 3 / 3) e^{3 pi i / 4} (z - 1/2) (z + 1)^{1/2}
    bool near_cut;     // z within 1e-8 of the cut of (z + 1)^{1/2}
};

PhaseMaps phase_maps(cplx z);
cplx zeta_map(cplx z);

// ((z + 1/2) / (z - 1/2))^{nu sigma3}; BranchError on [-1/2, 1/2].
Matrix2 n_matrix(cplx z, cplx nu);

// (sqrt(t) zeta(z) (z + 1/2) / (z - 1/2))^nu, principal power.
cplx beta_fn(cplx z, double t, cplx nu);

// E11(z) = ((z + 1/2) / (1/2 - z))^nu
cplx e11(cplx z, cplx nu);

// contour integral of E11^2 / eta over a clockwise circle about 0
ContourIntegral residue_check_origin(const ContourCircle& circle, cplx nu);

struct StationaryIdentity {
    cplx lhs;
    cplx rhs;
};

StationaryIdentity stationary_identity(const ASParams& p, double t, const ContourCircle& c_plus,
                                       const ContourCircle& c_minus);

// Sectors of the w-plane: 0: (-pi/4, 0), 1: (0, pi/2), 2: (pi/2, pi),
// 3: (pi, 3pi/2), 4: (3pi/2, 7pi/4). BranchError on the rays and at 0.
int z_sector(cplx w);

// H0..H3
std::array<Matrix2, 4> h_matrices(cplx nu);

// Z0 continued to any w (it is entire in w).
Matrix2 z0_matrix(cplx nu, cplx w);

// Piecewise Z(w) = Z_j(w) in sector j, from the direct formulas.
Matrix2 z_parametrix(cplx nu, cplx w);

// Ztilde in Z(w) = w^{-sigma3/2} 2^{-1/2} (A + B / w^2 + Ztilde) e^{(w^2/4 - (nu + 1/2) ln w) sigma3},
// with ln w on arg w in (-pi/4, 7pi/4).
Matrix2 z_expansion_remainder(cplx nu, cplx w);

// T^(r)(z) on 0.05 <= |z - 1/2| <= 0.2, t >= 10.
Matrix2 t_right_parametrix(const ASParams& p, double t, cplx z);
// sigma2 T^(r)(-z) sigma2
Matrix2 t_left_parametrix(const ASParams& p, double t, cplx z);

enum class Side { right, left };

// Predicted T N^{-1} up to O(t^{-3/2}).
Matrix2 m_pred(const ASParams& p, double t, cplx z, Side side);

}  // namespace painleve
