#include "painleve/cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "json.hpp"
#include "painleve/error.hpp"
#include "painleve/integrals.hpp"
#include "painleve/rh_verify.hpp"

namespace painleve {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError("config: '" + key + "' is not a finite number: '" + v + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("config: '" + key + "' is not an integer: '" + v + "'");
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string tag(const ASParams& p) { return "(alpha=" + fmt(p.alpha()) + ",k=" + fmt(p.k()) + ")"; }
std::string tag(const InitialDataCoefficients& c) { return "(a=" + fmt(c.a) + ",b=" + fmt(c.b) + ")"; }

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double ms() const { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }
};

CheckReport check(std::string id, CheckValue lhs, CheckValue rhs, double abs_err, double tol, const Timer& t) {
    return {std::move(id), lhs, rhs, abs_err, tol, abs_err <= tol, t.ms()};
}

CheckReport near(std::string id, CheckValue lhs, CheckValue rhs, double tol, const Timer& t) {
    const double err = std::visit(
        [](auto a, auto b) { return std::abs(cplx(a) - cplx(b)); }, lhs, rhs);
    return check(std::move(id), lhs, rhs, err, tol, t);
}

// value <= bound, reported as the excess over the bound with tol 0
CheckReport at_most(std::string id, double value, double bound, const Timer& t) {
    const double excess = std::isnan(value) ? value : std::max(0.0, value - bound);
    return check(std::move(id), value, bound, excess, 0.0, t);
}

ProfileOptions profile_options(const RunConfig& cfg) {
    ProfileOptions o;
    o.cutoff = cfg.cutoff;
    o.seed_depth = cfg.seed_depth;
    o.tol = cfg.tol;
    return o;
}

const std::vector<std::pair<double, double>> kMatrix = {
    {0.0, 0.3}, {0.0, 0.5}, {0.25, 0.3}, {-0.3, -0.4}, {0.4, 0.5 * 0.30901699437494745}};

std::vector<ASParams> matrix_or(const RunConfig& cfg, const std::vector<std::pair<double, double>>& dflt) {
    if (auto p = cfg.params()) return {*p};
    std::vector<ASParams> out;
    for (const auto& [a, k] : dflt) out.push_back(make_params(a, k));
    return out;
}

using Job = std::function<std::vector<CheckReport>()>;

// connection: literal x = -60 launch, deep launch, remainder slopes, right launch
void connection_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    for (const ASParams& p : matrix_or(cfg, kMatrix)) {
        if (p.degenerate()) continue;
        jobs.push_back([p, cfg] {
            std::vector<CheckReport> out;
            const double target = v_pos_asym(4, p.alpha()).v;
            {
                Timer t;
                const double v = solve_left_launch(p, -60, 4, cfg.tol).states().back().v;
                out.push_back(near("connection.launch60" + tag(p), v, target, 5e-3, t));
            }
            Timer t;
            const auto g = solve_left_launch(p, -cfg.seed_depth, 4, cfg.tol, -200.0);
            out.push_back(near("connection.launch_deep" + tag(p), g.states().back().v, target, 5e-3, t));
            if (p.alpha() != 0) {
                Timer ts;
                const auto s = remainder_slopes(g, p, 20, 200);
                out.push_back(at_most("connection.slope_full" + tag(p), s.full, -1.6, ts));
                out.push_back(near("connection.slope_osc" + tag(p), s.osc, -1.0, 0.15, ts));
            }
            return out;
        });
        if (p.alpha() == 0) {
            jobs.push_back([p, cfg] {
                Timer t;
                const auto g = solve_right_launch_homogeneous(p.k(), 12, -60, cfg.tol);
                const auto fit = fit_oscillation(g, -60, -30, 0.0);
                const auto c = connection_constants(p);
                std::vector<CheckReport> out;
                out.push_back(near("connection.right_fit_d" + tag(p), fit.d, c.d, 1e-2, t));
                out.push_back(check("connection.right_fit_phi" + tag(p), fit.phi, c.phi,
                                    std::abs(wrap_phase(fit.phi - c.phi)), 5e-2, t));
                return out;
            });
        }
    }
}

void total_integral_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    auto dflt = kMatrix;
    dflt.push_back({0.25, 0.0});
    for (const ASParams& p : matrix_or(cfg, dflt)) {
        jobs.push_back([p, cfg] {
            std::vector<CheckReport> out;
            const TailPolicy policy{cfg.cutoff, 2};
            Timer t;
            const double pv = pv_total_integral(Profile::build(p, profile_options(cfg)), policy).value;
            out.push_back(near("total-integral.pv" + tag(p), pv, total_integral_formula(p), 1e-3, t));
            if (p.k() != 0) {
                Timer ta;
                const double mirror =
                    pv_total_integral(Profile::build(make_params(p.alpha(), -p.k()), profile_options(cfg)), policy).value;
                out.push_back(near("total-integral.antisymmetry" + tag(p), pv + mirror, 0.0, 2e-3, ta));
            }
            return out;
        });
    }
}

void fourier_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    std::vector<ASParams> ps;
    std::vector<InitialDataCoefficients> abs;
    if (auto p = cfg.params()) {
        ps.push_back(*p);
        abs.push_back(cfg.a ? InitialDataCoefficients{*cfg.a, *cfg.b} : params_to_ab(*p));
    } else {
        ps.push_back(make_params(0.25, 0.3));
        abs.push_back({1.0, 0.5});
    }
    for (const ASParams& p : ps) {
        jobs.push_back([p, cfg] {
            std::vector<CheckReport> out;
            if (p.degenerate()) return out;
            Timer t;
            const Profile prof = Profile::build(p, profile_options(cfg));
            const double c = total_integral_formula(p);
            for (double xi : {1e-3, -1e-3}) {
                Timer tx;
                const cplx v = v_hat(prof, xi, {cfg.cutoff, 2}).value;
                const cplx want(c, -kPi * p.alpha() * (xi > 0 ? 1 : -1));
                out.push_back(near(std::string("fourier-limit.vhat") + (xi > 0 ? "+" : "-") + tag(p), v, want, 1e-2, tx));
            }
            return out;
        });
    }
    for (const InitialDataCoefficients& ab : abs) {
        jobs.push_back([ab, cfg] {
            std::vector<CheckReport> out;
            const ASParams p = ab_to_params(ab);
            if (p.degenerate()) return out;
            Timer t;
            const auto prof = std::make_shared<const Profile>(Profile::build(p, profile_options(cfg)));
            for (double xi : {1.0, -1.0}) {
                const cplx want(ab.a, -kPi * ab.b * xi);
                double worst_rise = 0, last = 0;
                cplx final_value;
                bool first = true;
                for (double tt : {1e-2, 1e-4, 1e-6}) {
                    final_value = SelfSimilarField(prof, tt).u_hat(xi, {cfg.cutoff, 2});
                    const double e = std::abs(final_value - want);
                    if (!first) worst_rise = std::max(worst_rise, e - last);
                    last = e;
                    first = false;
                }
                const std::string s = xi > 0 ? "+" : "-";
                out.push_back(near("fourier-limit.uhat" + s + tag(ab), final_value, want, 5e-2, t));
                out.push_back(at_most("fourier-limit.uhat_monotone" + s + tag(ab), worst_rise, 0.0, t));
            }
            return out;
        });
    }
}

void pde_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    for (const ASParams& p : matrix_or(cfg, {{0.0, 0.5}})) {
        jobs.push_back([p, cfg] {
            std::vector<CheckReport> out;
            if (p.degenerate()) return out;
            Timer t;
            const auto prof = std::make_shared<const Profile>(Profile::build(p, profile_options(cfg)));
            const SelfSimilarField f(prof, 1.0);
            const double r1 = pde_residual_fd(f, -3, 3, 0.1);
            const double r2 = pde_residual_fd(f, -3, 3, 0.05);
            out.push_back(near("pde.fd_ratio" + tag(p), r1 / r2, 4.0, 0.5, t));
            Timer tc;
            out.push_back(near("pde.closure" + tag(p), pde_residual_closure(f, -3, 3), 0.0, 1e-9, tc));
            Timer tg;
            out.push_back(near("pde.grid_derivatives" + tag(p), pde_residual_grid(f, -3, 3), 0.0, 1e-9, tg));
            Timer tsc;
            double worst = 0;
            for (double lambda : {0.5, 2.0, 10.0})
                for (double x : {-20.0, -3.1, -0.2, 0.4, 3.0}) {
                    const double u = f.u(x);
                    worst = std::max(worst, std::abs(lambda * f.u_at(lambda * lambda * lambda, lambda * x) - u) / std::abs(u));
                }
            out.push_back(near("pde.scaling" + tag(p), worst, 0.0, 1e-9, tsc));
            return out;
        });
    }
}

void rh_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    for (const ASParams& p : matrix_or(cfg, {{0.0, 0.5}, {0.25, 0.3}})) {
        jobs.push_back([p] {
            std::vector<CheckReport> out;
            const cplx nu = p.degenerate() ? cplx(0) : rh_constants(p).nu;
            for (double r : {0.05, 0.1, 0.2}) {
                Timer t;
                const cplx v = residue_check_origin({0.0, r}, nu).value;
                out.push_back(near("rh.residue(r=" + fmt(r) + ")" + tag(p), v, -2 * kPi * kI, 1e-8, t));
            }
            if (p.degenerate()) return out;
            for (double tt : {20.0, 50.0, 100.0}) {
                Timer t;
                const auto s = stationary_identity(p, tt, {0.5, 0.15}, {-0.5, 0.15});
                out.push_back(near("rh.stationary(t=" + fmt(tt) + ")" + tag(p), s.lhs, s.rhs, 1e-6, t));
            }
            Timer t;
            std::vector<std::pair<double, double>> pts;
            double sym = 0;
            for (double tt : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
                double worst = 0;
                for (int j = 0; j < 16; ++j) {
                    const cplx z = 0.5 + 0.15 * std::exp(kI * (2 * kPi * (j + 0.5) / 16));
                    const Matrix2 r = t_right_parametrix(p, tt, z) * n_matrix(z, nu).inverse() - m_pred(p, tt, z, Side::right);
                    worst = std::max(worst, r.frobenius());
                    const Matrix2 d = t_left_parametrix(p, tt, -z) - kSigma2 * t_right_parametrix(p, tt, z) * kSigma2;
                    sym = std::max(sym, d.frobenius());
                }
                pts.push_back({tt, worst});
            }
            out.push_back(at_most("rh.parametrix_slope" + tag(p), loglog_slope(pts), -1.4, t));
            out.push_back(near("rh.parametrix_symmetry" + tag(p), sym, 0.0, 1e-14, t));
            return out;
        });
    }
}

void specfun_jobs(const RunConfig& cfg, std::vector<Job>& jobs) {
    jobs.push_back([] {
        std::vector<CheckReport> out;
        {
            Timer t;
            double worst = 0;
            for (double x = -3; x <= 3; x += 0.5)
                for (double y = -3; y <= 3; y += 0.5) {
                    const cplx z(x + 0.01, y);
                    const cplx want = std::exp(-z * z / 4.0);
                    worst = std::max(worst, std::abs(pcf_d(0.0, z).value - want) / std::abs(want));
                }
            out.push_back(near("specfun.d0_gaussian", worst, 0.0, 1e-14, t));
        }
        {
            Timer t;
            double worst = 0;
            for (cplx nu : {cplx(0, -0.5), cplx(0.3, 0), cplx(1, 0.2)})
                for (double x = -4; x <= 4; x += 1)
                    for (double y = -4; y <= 4; y += 1) {
                        const cplx z(x + 0.13, y - 0.07);
                        const auto dm = pcf_d(nu - 1.0, z), d0 = pcf_d(nu, z), dp = pcf_d(nu + 1.0, z);
                        const double scale = std::abs(dp.value) + std::abs(z * d0.value) + std::abs(nu * dm.value);
                        worst = std::max(worst, std::abs(dp.value - z * d0.value + nu * dm.value) / scale);
                    }
            out.push_back(near("specfun.pcf_recurrence", worst, 0.0, 1e-10, t));
        }
        {
            Timer t;
            const double g = std::exp(log_gamma(cplx(0, 1)).real());
            out.push_back(near("specfun.abs_gamma_i", g, std::sqrt(kPi / std::sinh(kPi)), 1e-10, t));
        }
        return out;
    });
    for (const ASParams& p : matrix_or(cfg, kMatrix)) {
        jobs.push_back([p] {
            std::vector<CheckReport> out;
            Timer t;
            const auto s = stokes_triple(p);
            out.push_back(near("specfun.stokes_constraint" + tag(p), stokes_constraint_residual(s, p.alpha()), 0.0, 1e-14, t));
            if (!p.degenerate()) {
                const auto rh = rh_constants(p);
                const cplx s13 = s.s1 * s.s3;
                out.push_back(near("specfun.h0h1" + tag(p), rh.h0 * rh.h1 * (1.0 - s13), s13, 1e-12, t));
            }
            return out;
        });
    }
}

using JobBuilder = void (*)(const RunConfig&, std::vector<Job>&);

const std::map<std::string, JobBuilder>& builders() {
    static const std::map<std::string, JobBuilder> m = {
        {"connection", connection_jobs}, {"total-integral", total_integral_jobs}, {"fourier-limit", fourier_jobs},
        {"pde", pde_jobs},               {"rh-checks", rh_jobs},                  {"specfun", specfun_jobs}};
    return m;
}

std::vector<CheckReport> run_jobs(const std::vector<Job>& jobs, int threads) {
    std::vector<std::vector<CheckReport>> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                results[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, int(jobs.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<CheckReport> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json value(const CheckValue& v) {
    if (const double* d = std::get_if<double>(&v)) return number(*d);
    const cplx c = std::get<cplx>(v);
    return nlohmann::json::array({number(c.real()), number(c.imag())});
}

}  // namespace

std::optional<ASParams> RunConfig::params() const {
    const bool ak = alpha || k, ab = a || b;
    if (ak && ab) throw ConfigError("config: give either alpha/k or a/b, not both");
    if (ak) {
        if (!alpha || !k) throw ConfigError("config: alpha and k must be given together");
        try {
            return make_params(*alpha, *k);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    if (ab) {
        if (!a || !b) throw ConfigError("config: a and b must be given together");
        try {
            return ab_to_params({*a, *b});
        } catch (const DomainError& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    return std::nullopt;
}

void RunConfig::validate() const {
    params();
    if (!(step > 0)) throw ConfigError("config: step must be positive");
    if (!(x_lo < x_hi)) throw ConfigError("config: need x_lo < x_hi");
    if (!(tol > 0 && tol < 1e-3)) throw ConfigError("config: tol must be in (0, 1e-3)");
    if (!(cutoff >= 20)) throw ConfigError("config: cutoff must be >= 20");
    if (!(seed_depth >= 200)) throw ConfigError("config: seed_depth must be >= 200");
    if (threads < 0) throw ConfigError("config: threads must be >= 0");
    if (report.empty() || grid_out.empty()) throw ConfigError("config: empty output path");
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (val.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("config: repeated key '" + key + "'");
        if (key == "alpha") cfg.alpha = parse_double(key, val);
        else if (key == "k") cfg.k = parse_double(key, val);
        else if (key == "a") cfg.a = parse_double(key, val);
        else if (key == "b") cfg.b = parse_double(key, val);
        else if (key == "x_lo") cfg.x_lo = parse_double(key, val);
        else if (key == "x_hi") cfg.x_hi = parse_double(key, val);
        else if (key == "step") cfg.step = parse_double(key, val);
        else if (key == "tol") cfg.tol = parse_double(key, val);
        else if (key == "cutoff") cfg.cutoff = parse_double(key, val);
        else if (key == "seed_depth") cfg.seed_depth = parse_double(key, val);
        else if (key == "threads") cfg.threads = parse_int(key, val);
        else if (key == "report") cfg.report = val;
        else if (key == "grid_out") cfg.grid_out = val;
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

void apply_env_overrides(RunConfig& cfg, const std::function<const char*(const char*)>& getenv_fn) {
    if (const char* r = getenv_fn("PAINLEVE_MKDV_REPORT"); r && *r) cfg.report = r;
    if (const char* g = getenv_fn("PAINLEVE_MKDV_GRID"); g && *g) cfg.grid_out = g;
}

std::string to_json_line(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["lhs"] = value(r.lhs);
    j["rhs"] = value(r.rhs);
    j["abs_err"] = number(r.abs_err);
    j["tol"] = number(r.tol);
    j["pass"] = r.pass;
    j["runtime_ms"] = number(r.runtime_ms);
    return j.dump();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"connection", "total-integral", "fourier-limit", "pde",
                                                   "rh-checks",  "specfun",        "all"};
    return names;
}

std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    std::vector<Job> jobs;
    if (suite == "all") {
        for (const char* s : {"specfun", "connection", "total-integral", "fourier-limit", "pde", "rh-checks"})
            builders().at(s)(cfg, jobs);
    } else {
        const auto it = builders().find(suite);
        if (it == builders().end()) throw ConfigError("unknown suite '" + suite + "'");
        it->second(cfg, jobs);
    }
    const int threads = cfg.threads > 0 ? cfg.threads : int(std::max(1u, std::thread::hardware_concurrency()));
    return run_jobs(jobs, threads);
}

int exit_status(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return 1;
    return 0;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ConfigError("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("cannot rename onto '" + path + "'");
    }
}

void write_report(const std::string& path, const std::vector<CheckReport>& reports) {
    std::string text;
    for (const auto& r : reports) text += to_json_line(r) + "\n";
    write_atomic(path, text);
}

std::string grid_csv(const RunConfig& cfg) {
    cfg.validate();
    const auto sel = cfg.params();
    if (!sel) throw ConfigError("grid: alpha/k or a/b required");
    const ASParams p = *sel;
    ProfileOptions opt = profile_options(cfg);
    opt.cutoff = std::max(cfg.cutoff, -cfg.x_lo);
    const Profile prof = Profile::build(p, opt);
    const auto& c = prof.constants();
    const long n = long(std::floor((cfg.x_hi - cfg.x_lo) / cfg.step + 1e-9)) + 1;

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "# painleve-mkdv %s alpha=%.17g k=%.17g x_lo=%.17g x_hi=%.17g step=%.17g tol=%.17g\n",
                  kToolVersion, p.alpha(), p.k(), cfg.x_lo, cfg.x_hi, cfg.step, cfg.tol);
    out += buf;
    out += "x,v,v_prime,v_neg_asym,v_pos_asym,residual_osc,residual_full\n";
    auto field = [&](std::optional<double> v) {
        if (!v) return std::string();
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        return std::string(buf);
    };
    for (long i = 0; i < n; ++i) {
        const double x = cfg.x_lo + double(i) * cfg.step;
        const VState s = prof.evaluate(x);
        std::optional<double> neg, pos, rosc, rfull;
        if (x <= -1) {
            const double model = c ? v_neg_asym(x, p, *c, true).v : 0.0;
            neg = model;
            rfull = std::abs(s.v - model);
            rosc = std::abs(s.v - (model - p.alpha() / x));
        }
        if (x >= 1) pos = v_pos_asym(x, p.alpha()).v;
        out += field(x) + "," + field(s.v) + "," + field(s.v_prime) + "," + field(neg) + "," + field(pos) + "," +
               field(rosc) + "," + field(rfull) + "\n";
    }
    return out;
}

void emit_grid(const RunConfig& cfg) { write_atomic(cfg.grid_out, grid_csv(cfg)); }

}  // namespace painleve
