#include "painleve/pii.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "painleve/error.hpp"
#include "painleve/specfun.hpp"

namespace painleve {

namespace {

constexpr int N = SolutionGrid::kOrder;
constexpr double kBlowup = 1e6;
using Coeffs = std::array<double, N + 1>;

// Taylor coefficients of v about x0 from the recurrence
// (n+2)(n+1) a_{n+2} = x0 a_n + a_{n-1} + 2 (v^3)_n - alpha [n = 0].
void taylor_coeffs(double x0, VState y, double alpha, Coeffs& a) {
    Coeffs p{}, q{};
    a[0] = y.v;
    a[1] = y.v_prime;
    for (int n = 0; n + 2 <= N; ++n) {
        double pn = 0, qn = 0;
        for (int j = 0; j <= n; ++j) pn += a[j] * a[n - j];
        p[n] = pn;
        for (int j = 0; j <= n; ++j) qn += p[j] * a[n - j];
        q[n] = qn;
        double r = x0 * a[n] + 2.0 * qn;
        if (n >= 1) r += a[n - 1];
        if (n == 0) r -= alpha;
        a[n + 2] = r / double((n + 2) * (n + 1));
    }
}

// At most a twentieth of the local period of the linearised oscillation.
double step_cap(double x) {
    return 2.0 * std::numbers::pi / (20.0 * std::sqrt(std::max(std::abs(x), 1.0)));
}

// The two highest coefficients estimate the truncation error in v, v', v''.
double step_size(const Coeffs& a, double tol, double x) {
    double h = step_cap(x);
    for (int j = N - 1; j <= N; ++j) {
        const double m = std::abs(a[j]);
        if (m == 0) continue;
        h = std::min(h, std::pow(tol / m, 1.0 / j));
        h = std::min(h, std::pow(tol / (double(j) * (j - 1) * m), 1.0 / (j - 2)));
    }
    return 0.8 * h;
}

VState eval_poly(const double* a, double h) {
    double v = a[N], dv = N * a[N];
    for (int n = N - 1; n >= 0; --n) {
        v = v * h + a[n];
        if (n >= 1) dv = dv * h + n * a[n];
    }
    return {v, dv};
}

double eval_second(const double* a, double h) {
    double d2 = double(N) * (N - 1) * a[N];
    for (int n = N - 1; n >= 2; --n) d2 = d2 * h + double(n) * (n - 1) * a[n];
    return d2;
}

double eval_third(const double* a, double h) {
    double d3 = double(N) * (N - 1) * (N - 2) * a[N];
    for (int n = N - 1; n >= 3; --n) d3 = d3 * h + double(n) * (n - 1) * (n - 2) * a[n];
    return d3;
}

struct MarchResult {
    bool blown = false;
    double x = 0;
    VState y{0, 0};
};

using StepHook = std::function<void(double x0, double h, const Coeffs& a, VState y1)>;

MarchResult march(double alpha, double x0, VState y0, double x1, double tol, const StepHook& hook) {
    MarchResult r{false, x0, y0};
    if (x0 == x1) return r;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    Coeffs a;
    while (r.x != x1) {
        taylor_coeffs(r.x, r.y, alpha, a);
        double h = step_size(a, tol, r.x);
        if (!(h > 1e-13 * (1.0 + std::abs(r.x)))) {
            r.blown = true;
            return r;
        }
        bool last = false;
        if (dir * (x1 - r.x) <= h * 1.0000001) {
            h = x1 - r.x;
            last = true;
        } else {
            h *= dir;
        }
        const VState y1 = eval_poly(a.data(), h);
        if (!std::isfinite(y1.v) || !std::isfinite(y1.v_prime) || std::abs(y1.v) > kBlowup) {
            r.blown = true;
            return r;
        }
        if (hook) hook(r.x, h, a, y1);
        r.x = last ? x1 : r.x + h;
        r.y = y1;
    }
    return r;
}

[[noreturn]] void throw_blowup(double alpha, const MarchResult& r) {
    throw BlowupError("PII integration blew up near x = " + std::to_string(r.x) + " (alpha = " +
                      std::to_string(alpha) + ", |v| > 1e6 or step collapse)");
}

void check_tol(double tol) {
    if (!(tol > 0) || !(tol < 1e-2)) throw DomainError("integrator tolerance must lie in (0, 1e-2)");
}

}  // namespace

class GridBuilder {
public:
    static SolutionGrid run(double alpha, double x0, VState y0, double x1, double tol,
                            std::optional<double> record_from, LaunchSide side) {
        check_tol(tol);
        if (x0 == x1) throw DomainError("integrate_pii: empty interval");
        SolutionGrid g;
        g.launch_point_ = x0;
        g.side_ = side;
        g.tol_ = tol;
        g.alpha_ = alpha;
        double start = x0;
        VState y = y0;
        if (record_from) {
            const double rf = *record_from;
            if ((rf - x0) * (x1 - rf) < 0) throw DomainError("integrate_pii: record_from outside the path");
            if (rf == x1) throw DomainError("integrate_pii: record_from equals the end point");
            const MarchResult pre = march(alpha, x0, y0, rf, tol, nullptr);
            if (pre.blown) throw_blowup(alpha, pre);
            start = rf;
            y = pre.y;
        }
        g.abscissas_.push_back(start);
        g.states_.push_back(y);
        const MarchResult res = march(alpha, start, y, x1, tol, [&g](double, double h, const Coeffs& a, VState y1) {
            g.abscissas_.push_back(g.abscissas_.back() + h);
            g.states_.push_back(y1);
            g.coeffs_.insert(g.coeffs_.end(), a.begin(), a.end());
        });
        if (res.blown) throw_blowup(alpha, res);
        g.abscissas_.back() = x1;
        return g;
    }

    static void warn(SolutionGrid& g, std::string msg) { g.warnings_.push_back(std::move(msg)); }
};

double pii_rhs(double x, double v, double alpha) { return x * v + 2.0 * v * v * v - alpha; }

double SolutionGrid::x_min() const { return std::min(abscissas_.front(), abscissas_.back()); }
double SolutionGrid::x_max() const { return std::max(abscissas_.front(), abscissas_.back()); }
bool SolutionGrid::covers(double x) const { return !abscissas_.empty() && x >= x_min() && x <= x_max(); }

std::size_t SolutionGrid::segment_index(double x) const {
    if (!covers(x)) throw DomainError("SolutionGrid: x = " + std::to_string(x) + " outside the grid");
    const std::size_t nseg = abscissas_.size() - 1;
    std::size_t idx;
    if (side_ == LaunchSide::left) {
        idx = std::upper_bound(abscissas_.begin(), abscissas_.end(), x) - abscissas_.begin();
    } else {
        idx = std::upper_bound(abscissas_.begin(), abscissas_.end(), x, std::greater<double>()) - abscissas_.begin();
    }
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, nseg - 1);
}

VState SolutionGrid::at(double x) const {
    const std::size_t i = segment_index(x);
    return eval_poly(&coeffs_[i * (N + 1)], x - abscissas_[i]);
}

double SolutionGrid::second_derivative(double x) const {
    const std::size_t i = segment_index(x);
    return eval_second(&coeffs_[i * (N + 1)], x - abscissas_[i]);
}

double SolutionGrid::third_derivative(double x) const {
    const std::size_t i = segment_index(x);
    return eval_third(&coeffs_[i * (N + 1)], x - abscissas_[i]);
}

SolutionGrid integrate_pii(double alpha, double x0, VState y0, double x1, double tol,
                           std::optional<double> record_from) {
    return GridBuilder::run(alpha, x0, y0, x1, tol, record_from, x1 > x0 ? LaunchSide::left : LaunchSide::right);
}

SolutionGrid solve_left_launch(const ASParams& p, double x_start, double x_end, double tol,
                               std::optional<double> record_from) {
    if (!(x_start <= -20.0)) throw DomainError("solve_left_launch: x_start must be <= -20");
    if (!(x_start < x_end) || !(x_end <= 6.0)) throw DomainError("solve_left_launch: need x_start < x_end <= 6");
    const VState y0 = v_neg_asym(x_start, p, true);
    return GridBuilder::run(p.alpha(), x_start, y0, x_end, tol, record_from, LaunchSide::left);
}

SolutionGrid solve_right_launch_homogeneous(double k, double x_start, double x_end, double tol) {
    if (!(std::abs(k) < 1.0)) throw DomainError("solve_right_launch_homogeneous: need |k| < 1");
    if (!(x_start >= 8.0) || !(x_end < x_start))
        throw DomainError("solve_right_launch_homogeneous: need x_start >= 8 and x_end < x_start");
    const AiryValue ai = airy_ai(x_start);
    SolutionGrid g = GridBuilder::run(0.0, x_start, {k * ai.ai, k * ai.ai_prime}, x_end, tol, std::nullopt,
                                      LaunchSide::right);
    // d = sqrt(-ln(1 - k^2)/pi) here; |d ln d / d ln k| = k^2 / (pi d^2 (1 - k^2))
    // grows without bound as |k| -> 1.
    if (k != 0.0) {
        const double one_minus = 1.0 - k * k;
        const double cond = k * k / (-std::log(one_minus) * one_minus);
        if (cond > 50.0)
            GridBuilder::warn(g, "right launch near |k| = 1: amplitude condition number " + std::to_string(cond) +
                                     " exceeds 50");
    }
    return g;
}

Profile Profile::build(const ASParams& p, const ProfileOptions& opt) {
    if (!(opt.cutoff >= 20.0) || !(opt.seed_depth >= opt.cutoff))
        throw DomainError("Profile: need cutoff >= 20 and seed_depth >= cutoff");
    if (!(opt.x_join < opt.x_match) || !(opt.x_match <= opt.x_right) || !(opt.x_join >= 0.0) ||
        !(opt.x_right <= 16.0))
        throw DomainError("Profile: need 0 <= x_join < x_match <= x_right <= 16");
    check_tol(opt.tol);
    Profile prof(p);
    prof.opt_ = opt;
    if (!p.degenerate()) prof.constants_ = connection_constants(p);
    const double alpha = p.alpha();
    prof.left_ = solve_left_launch(p, -opt.seed_depth, opt.x_join, opt.tol, -opt.cutoff);

    const VState join = prof.left_.at(opt.x_join);
    const double target = v_pos_asym(opt.x_right, alpha).v;
    // For x >= 0 the right side is increasing in v, so v(x_right) is
    // increasing in the initial slope: bracket and bisect.
    auto shoot = [&](double lam) {
        const MarchResult r = march(alpha, opt.x_join, {join.v, lam}, opt.x_right, opt.tol, nullptr);
        if (r.blown) return r.y.v > 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
        return r.y.v - target;
    };
    double lam = 0.0;
    if (!p.degenerate()) {
        double delta = 1e-6;
        double lo = join.v_prime - delta, hi = join.v_prime + delta;
        double flo = shoot(lo), fhi = shoot(hi);
        for (int i = 0; i < 60 && !(flo <= 0 && fhi >= 0); ++i) {
            delta *= 4;
            if (flo > 0) flo = shoot(lo = join.v_prime - delta);
            if (fhi < 0) fhi = shoot(hi = join.v_prime + delta);
        }
        if (!(flo <= 0 && fhi >= 0)) throw ConvergenceError("Profile: could not bracket the x > 0 shooting slope");
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double fm = shoot(mid);
            if (fm == 0) {
                lo = hi = mid;
                break;
            }
            (fm < 0 ? lo : hi) = mid;
        }
        lam = 0.5 * (lo + hi);
    }
    prof.right_ = integrate_pii(alpha, opt.x_join, {join.v, lam}, opt.x_match, opt.tol);
    prof.join_slope_jump_ = std::abs(lam - join.v_prime);
    return prof;
}

VState Profile::evaluate(double x) const {
    if (!std::isfinite(x)) throw DomainError("evaluate_v: non-finite x");
    if (x < -opt_.cutoff) {
        if (!constants_) return {0.0, 0.0};
        return v_neg_asym(x, params_, *constants_, true);
    }
    if (x <= opt_.x_join) return left_.at(x);
    if (x <= opt_.x_match) return right_.at(x);
    return v_pos_asym(x, params_.alpha());
}

double Profile::seam_jump_left() const {
    const double x = -opt_.cutoff;
    const VState model = constants_ ? v_neg_asym(x, params_, *constants_, true) : VState{0, 0};
    return std::abs(left_.at(x).v - model.v);
}

double Profile::seam_jump_right() const {
    return std::abs(right_.at(opt_.x_match).v - v_pos_asym(opt_.x_match, params_.alpha()).v);
}

VState evaluate_v(const Profile& profile, double x) { return profile.evaluate(x); }

OscillationFit fit_oscillation(const std::vector<std::pair<double, double>>& samples, double alpha) {
    if (samples.size() < 10) throw DomainError("fit_oscillation: too few samples");
    for (auto [x, v] : samples)
        if (!(x < 0) || !std::isfinite(v)) throw DomainError("fit_oscillation: samples must have x < 0");
    // Envelope for d, then the phase from a linear fit at that amplitude.
    double d = 0;
    for (auto [x, v] : samples) d = std::max(d, std::abs(v - alpha / x) * std::pow(-x, 0.25));
    {
        double scc = 0, scs = 0, sss = 0, rc = 0, rs = 0;
        for (auto [x, v] : samples) {
            const double s = -x;
            const double a = d * std::pow(s, -0.25);
            const double psi0 = psi_tilde(s, {d, 0.0}).value;
            const double bc = a * std::cos(psi0), bs = -a * std::sin(psi0);
            const double r = v - alpha / x;
            scc += bc * bc;
            scs += bc * bs;
            sss += bs * bs;
            rc += bc * r;
            rs += bs * r;
        }
        const double det = scc * sss - scs * scs;
        if (!(std::abs(det) > 0)) throw ConvergenceError("fit_oscillation: singular initial phase fit");
        const double c = (rc * sss - rs * scs) / det, sn = (rs * scc - rc * scs) / det;
        d *= std::hypot(c, sn);
        const double phi0 = std::atan2(sn, c);
        double phi = phi0;
        // Levenberg-Marquardt on (d, phi).
        double lambda = 1e-3;
        auto cost = [&](double dd, double ph) {
            double acc = 0;
            for (auto [x, v] : samples) {
                const double s = -x;
                const double m = dd * std::pow(s, -0.25) * std::cos(psi_tilde(s, {dd, ph}).value) + alpha / x;
                acc += (m - v) * (m - v);
            }
            return acc;
        };
        double f = cost(d, phi);
        for (int it = 1; it <= 200; ++it) {
            double jdd = 0, jdp = 0, jpp = 0, gd = 0, gp = 0;
            for (auto [x, v] : samples) {
                const double s = -x;
                const double q = std::pow(s, -0.25);
                const double psi = psi_tilde(s, {d, phi}).value;
                const double cs = std::cos(psi), sn2 = std::sin(psi);
                const double r = d * q * cs + alpha / x - v;
                const double jd = q * (cs + 1.5 * d * d * std::log(s) * sn2);
                const double jp = -d * q * sn2;
                jdd += jd * jd;
                jdp += jd * jp;
                jpp += jp * jp;
                gd += jd * r;
                gp += jp * r;
            }
            bool accepted = false;
            for (int tries = 0; tries < 40 && !accepted; ++tries) {
                const double a11 = jdd * (1 + lambda), a22 = jpp * (1 + lambda);
                const double det2 = a11 * a22 - jdp * jdp;
                const double dd = -(gd * a22 - gp * jdp) / det2;
                const double dp = -(gp * a11 - gd * jdp) / det2;
                const double fn = cost(d + dd, phi + dp);
                if (fn <= f) {
                    const bool small = std::abs(dd) < 1e-15 * (1 + std::abs(d)) && std::abs(dp) < 1e-15 * (1 + std::abs(phi));
                    d += dd;
                    phi += dp;
                    f = fn;
                    lambda = std::max(lambda / 10, 1e-12);
                    accepted = true;
                    if (small || fn == 0) {
                        if (d < 0) {
                            d = -d;
                            phi += std::numbers::pi;
                        }
                        return {d, wrap_phase(phi), it, std::sqrt(f / samples.size())};
                    }
                } else {
                    lambda *= 10;
                }
            }
            if (!accepted) {
                // No decrease possible at any damping: at the minimum to rounding.
                if (d < 0) {
                    d = -d;
                    phi += std::numbers::pi;
                }
                return {d, wrap_phase(phi), it, std::sqrt(f / samples.size())};
            }
        }
    }
    throw ConvergenceError("fit_oscillation: no convergence within 200 iterations");
}

OscillationFit fit_oscillation(const SolutionGrid& grid, double x_lo, double x_hi, double alpha) {
    if (!(x_lo < x_hi) || !(x_hi < 0)) throw DomainError("fit_oscillation: window must satisfy x_lo < x_hi < 0");
    if (!grid.covers(x_lo) || !grid.covers(x_hi)) throw DomainError("fit_oscillation: grid does not cover window");
    const double s_hi = -x_lo, s_lo = -x_hi;
    const double periods = (std::pow(s_hi, 1.5) - std::pow(s_lo, 1.5)) * (2.0 / 3.0) / (2 * std::numbers::pi);
    if (periods < 3) throw DomainError("fit_oscillation: window shorter than three periods");
    std::vector<std::pair<double, double>> samples;
    for (double x = x_lo; x <= x_hi;) {
        samples.emplace_back(x, grid.at(x).v);
        x += 2 * std::numbers::pi / std::sqrt(-x) / 40;
    }
    return fit_oscillation(samples, alpha);
}

RemainderSlopes remainder_slopes(const SolutionGrid& grid, const ASParams& p, double s_lo, double s_hi, int bins) {
    if (!(s_lo > 1) || !(s_hi > s_lo)) throw DomainError("remainder_slopes: need 1 < s_lo < s_hi");
    if (!grid.covers(-s_hi) || !grid.covers(-s_lo)) throw DomainError("remainder_slopes: grid does not cover the window");
    if (p.degenerate()) throw DegenerateError("remainder_slopes: degenerate parameters");
    const auto c = connection_constants(p);
    std::vector<std::pair<double, double>> full, osc;
    double s = s_lo;
    while (s <= s_hi) {
        const double x = -s;
        const double v = grid.at(x).v;
        const double model = v_neg_asym(x, p, c, true).v;
        full.push_back({s, std::abs(v - model)});
        osc.push_back({s, std::abs(v - model + p.alpha() / x)});
        s += 2 * std::numbers::pi / std::sqrt(s) / 40;
    }
    return {loglog_slope(envelope_maxima(full, s_lo, s_hi, bins)), loglog_slope(envelope_maxima(osc, s_lo, s_hi, bins))};
}

}  // namespace painleve
