#pragma once

#include <memory>

#include "painleve/integrals.hpp"
#include "painleve/pii.hpp"

namespace painleve {

// u(0, x) = a delta(x) + b p.v.(1/x)
struct InitialDataCoefficients {
    double a;
    double b;
};

// alpha = -b/2, k = cos(pi alpha) tanh(-a/2). DomainError for |b| >= 1.
ASParams ab_to_params(const InitialDataCoefficients& c);
// Inverse map: a = -2 c(alpha, k), b = -2 alpha.
InitialDataCoefficients params_to_ab(const ASParams& p);

// u(t, x) = -2 (3t)^{-1/3} v(x (3t)^{-1/3}) over a shared profile.
class SelfSimilarField {
public:
    SelfSimilarField(std::shared_ptr<const Profile> profile, double t);

    double t() const { return t_; }
    double tau() const { return tau_; }
    const Profile& profile() const { return *profile_; }

    double u(double x) const;
    // u at another time from the same profile
    double u_at(double t, double x) const;
    // -2 v_hat(xi (3t)^{1/3})
    cplx u_hat(double xi, const TailPolicy& policy = {}) const;

    // x range where v comes from the integrated grid at time t
    double grid_lo(double t) const;
    double grid_hi(double t) const;

private:
    std::shared_ptr<const Profile> profile_;
    double t_;
    double tau_;
};

// max over the window of |u_t + u_xxx - (3/2) u^2 u_x| with second-order
// central differences of step h in t and x (window sampled with step h).
double pde_residual_fd(const SelfSimilarField& f, double x_lo, double x_hi, double h);

// Same residual with u_t, u_x, u_xxx from v, v' and the third derivative of
// the grid's local polynomial.
double pde_residual_grid(const SelfSimilarField& f, double x_lo, double x_hi, int samples = 200);

// Same residual with v''' from the closure v''' = v + x v' + 6 v^2 v'.
double pde_residual_closure(const SelfSimilarField& f, double x_lo, double x_hi, int samples = 200);

enum class TestFunction { gaussian, sech2 };  // e^{-x^2}(1+x), sech^2(x)(1+x)

double test_function(TestFunction g, double x);
// <a delta + b p.v.(1/x), g>
double pairing_limit(const InitialDataCoefficients& c, TestFunction g);
// int u(t, x) g(x) dx
double pairing(const SelfSimilarField& f, TestFunction g);

}  // namespace painleve
