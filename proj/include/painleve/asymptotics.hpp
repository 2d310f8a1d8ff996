#pragma once

#include <utility>
#include <vector>

#include "painleve/stokes.hpp"

namespace painleve {

struct PsiValue {
    double value;
    double derivative;  // d/ds
};

// (2/3) s^{3/2} - (3/4) d^2 ln s + phi, s > 0.
PsiValue psi_tilde(double s, const ConnectionConstants& c);

// Beyond s0 = ((3/4) d^2)^{2/3} the phase is strictly increasing.
double psi_turning_point(double d);

struct VState {
    double v;
    double v_prime;
};

// Oscillatory model for x <= -1, optionally with the alpha/x term.
// v_prime is the exact x-derivative of the model.
VState v_neg_asym(double x, const ASParams& p, const ConnectionConstants& c, bool include_alpha_term);

// Same, computing (d, phi) internally; the degenerate pair gives zero.
VState v_neg_asym(double x, const ASParams& p, bool include_alpha_term = true);

// alpha/x + 2 alpha (1 - alpha^2)/x^4 for x >= 1.
VState v_pos_asym(double x, double alpha);

// Least-squares slope of ln(value) against ln(abscissa).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

// Largest |value| in each of `bins` geometric bins of [lo, hi], with the
// abscissa where it occurs. Empty bins are skipped.
std::vector<std::pair<double, double>> envelope_maxima(const std::vector<std::pair<double, double>>& samples,
                                                       double lo, double hi, int bins);

}  // namespace painleve
