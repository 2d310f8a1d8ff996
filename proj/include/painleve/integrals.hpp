#pragma once

#include "painleve/pii.hpp"
#include "painleve/specfun.hpp"

namespace painleve {

struct TailPolicy {
    double cutoff = 60.0;  // X
    int ibp_levels = 2;    // 1 or 2
    // Add the non-oscillatory mean of the left remainder beyond X,
    // -3 alpha d^2 s^{-5/2} + 2 alpha (1 - alpha^2) s^{-4}.
    bool mean_correction = true;
};

// (1/2) ln((cos(pi alpha) + k) / (cos(pi alpha) - k))
double total_integral_formula(const ASParams& p);

struct TotalIntegral {
    double value;
    double core;                // int_{-X}^{X} v
    double right_tail;          // int_X^inf (v_pos_asym - alpha/x)
    double left_tail;           // oscillatory part of int_{-inf}^{-X} v, by parts
    double mean_tail;           // non-oscillatory part of the left tail (0 if disabled)
    double remainder_estimate;  // size of the next integration-by-parts term
    double h_tail_bound;        // bound on the unmodelled O(s^{-7/4}) remainder
    bool warn;                  // remainder_estimate > requested tolerance
};

// Symmetric-limit integral of v over the real line.
TotalIntegral pv_total_integral(const Profile& profile, const TailPolicy& policy, double tol = 1e-3);

struct FourierValue {
    cplx value;
    cplx core;
    cplx f_tail;  // alpha/x beyond the core, closed form
    cplx g_tail;  // oscillatory left tail, by parts
    cplx right_tail;
    cplx mean_tail;
    double remainder_estimate;
    double h_tail_bound;
    bool warn;
};

// v_hat(xi) = int v(x) e^{-i xi x} dx, 0 < |xi| <= 1.
FourierValue v_hat(const Profile& profile, double xi, const TailPolicy& policy, double tol = 1e-3);

struct OscillatoryTail {
    cplx value;
    double remainder_estimate;
};

// int_X^inf d s^{-1/4} e^{i(sign * psi_tilde(s) + omega s)} ds by repeated
// integration by parts (levels 1 or 2). Needs sign * psi' + omega > 0 or < 0
// on [X, inf).
OscillatoryTail oscillatory_tail(const ConnectionConstants& c, double sign, double omega, double X, int levels);

}  // namespace painleve
