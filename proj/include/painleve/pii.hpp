#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "painleve/asymptotics.hpp"
#include "painleve/stokes.hpp"

namespace painleve {

// x v + 2 v^3 - alpha
double pii_rhs(double x, double v, double alpha);

enum class LaunchSide { left, right };

// Integrator output. Abscissas are step endpoints in integration order
// (increasing for a left launch, decreasing for a right launch); each step
// keeps its Taylor polynomial, which is the dense output.
class SolutionGrid {
public:
    static constexpr int kOrder = 20;

    const std::vector<double>& abscissas() const { return abscissas_; }
    const std::vector<VState>& states() const { return states_; }
    double launch_point() const { return launch_point_; }
    LaunchSide launch_side() const { return side_; }
    double tolerance() const { return tol_; }
    double alpha() const { return alpha_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    double x_min() const;
    double x_max() const;
    bool covers(double x) const;

    // Dense output; DomainError outside [x_min, x_max].
    VState at(double x) const;
    // Second derivative of the local polynomial (not of the ODE right side).
    double second_derivative(double x) const;
    double third_derivative(double x) const;

private:
    friend class GridBuilder;
    std::size_t segment_index(double x) const;

    std::vector<double> abscissas_;
    std::vector<VState> states_;
    std::vector<double> coeffs_;  // (kOrder + 1) per step
    double launch_point_ = 0;
    LaunchSide side_ = LaunchSide::left;
    double tol_ = 0;
    double alpha_ = 0;
    std::vector<std::string> warnings_;
};

// Integrate PII from (x0, y0) to x1 and keep the trajectory on the part of
// the path that lies beyond record_from (all of it when unset). Throws
// BlowupError when |v| exceeds 1e6.
SolutionGrid integrate_pii(double alpha, double x0, VState y0, double x1, double tol,
                           std::optional<double> record_from = std::nullopt);

// Left launch from the oscillatory model at x_start (<= -20) to x_end (<= 6).
// record_from limits storage to [record_from, x_end], so a deep launch does
// not keep its whole pre-roll.
SolutionGrid solve_left_launch(const ASParams& p, double x_start, double x_end, double tol = 1e-10,
                               std::optional<double> record_from = std::nullopt);

// alpha = 0 family seeded with k Ai at x_start >= 8, integrated leftward.
SolutionGrid solve_right_launch_homogeneous(double k, double x_start, double x_end, double tol = 1e-10);

struct ProfileOptions {
    double cutoff = 60.0;       // X: below -X the oscillatory model is used
    double x_match = 6.0;       // above x_match the x -> +inf expansion is used
    double seed_depth = 4000.0; // left launch starts at -seed_depth
    double x_join = 0.0;        // left launch ends here
    double x_right = 10.0;      // right boundary of the x > 0 boundary-value patch
    double tol = 1e-10;
};

// v on the whole real line for one (alpha, k): oscillatory model on
// (-inf, -X), deep left launch on [-X, x_join], a boundary-value patch on
// [x_join, x_match] pinned to the left launch at x_join and to the
// expansion at x_right, and the expansion beyond x_match.
class Profile {
public:
    static Profile build(const ASParams& p, const ProfileOptions& opt = {});

    VState evaluate(double x) const;

    const ASParams& params() const { return params_; }
    const ProfileOptions& options() const { return opt_; }
    const std::optional<ConnectionConstants>& constants() const { return constants_; }
    const SolutionGrid& left() const { return left_; }
    const SolutionGrid& right() const { return right_; }

    // |v'| mismatch at x_join between the left launch and the patch.
    double join_slope_jump() const { return join_slope_jump_; }
    // |v| jumps where the grid meets the two expansions.
    double seam_jump_left() const;
    double seam_jump_right() const;

private:
    explicit Profile(const ASParams& p) : params_(p) {}

    ASParams params_;
    ProfileOptions opt_;
    std::optional<ConnectionConstants> constants_;
    SolutionGrid left_;
    SolutionGrid right_;
    double join_slope_jump_ = 0;
};

VState evaluate_v(const Profile& profile, double x);

struct OscillationFit {
    double d;
    double phi;
    int iterations;
    double rms;
};

// Fit d s^{-1/4} cos(psi_tilde(s)) + alpha/x to samples (x, v) with x < 0.
OscillationFit fit_oscillation(const std::vector<std::pair<double, double>>& samples, double alpha);

// Samples the grid on [x_lo, x_hi] (40 points per local period) and fits.
OscillationFit fit_oscillation(const SolutionGrid& grid, double x_lo, double x_hi, double alpha);

struct RemainderSlopes {
    double full;  // |v - oscillatory - alpha/x|
    double osc;   // |v - oscillatory|
};

// Log-log slopes against s = -x of the binned envelope maxima of the two
// residuals over s in [s_lo, s_hi]; the grid must cover [-s_hi, -s_lo].
RemainderSlopes remainder_slopes(const SolutionGrid& grid, const ASParams& p, double s_lo, double s_hi,
                                 int bins = 12);

}  // namespace painleve
