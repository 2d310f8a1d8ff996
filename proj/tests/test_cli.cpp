#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "painleve/asymptotics.hpp"
#include "painleve/cli.hpp"
#include "painleve/error.hpp"

using namespace painleve;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto c = parse("# comment\nalpha = 0.25\n  k=0.3  # trailing\n\nstep = 0.5\nreport = out/r.jsonl\nthreads = 2\n");
    CHECK(*c.alpha == 0.25);
    CHECK(*c.k == 0.3);
    CHECK(c.step == 0.5);
    CHECK(c.report == "out/r.jsonl");
    CHECK(c.threads == 2);
    CHECK(c.params()->alpha() == 0.25);
    const auto d = parse("");
    CHECK_FALSE(d.params().has_value());
    CHECK(d.x_lo == -60);
    CHECK(d.x_hi == 4);
}

TEST_CASE("config rejects bad documents") {
    CHECK_THROWS_AS(parse("alhpa = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = 0.1\nalpha = 0.2\nk = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = x\nk = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = 0.1 0.2\nk = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha =\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = 0.1\nk = 0.2\na = 1\nb = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("alpha = 0.6\nk = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("a = 1\nb = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("step = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("x_lo = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse("threads = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("tol = nan\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config"), ConfigError);
}

TEST_CASE("a, b select the pair through ab_to_params") {
    const auto c = parse("a = 1\nb = 0.5\n");
    const auto p = c.params();
    CHECK(p->alpha() == -0.25);
    CHECK(p->k() == doctest::Approx(std::cos(std::numbers::pi / 4) * std::tanh(-0.5)));
}

TEST_CASE("environment overrides only output paths") {
    RunConfig c = parse("report = a.jsonl\ngrid_out = a.csv\n");
    apply_env_overrides(c, [](const char* name) -> const char* {
        if (std::strcmp(name, "PAINLEVE_MKDV_REPORT") == 0) return "env.jsonl";
        if (std::strcmp(name, "PAINLEVE_MKDV_ALPHA") == 0) return "0.3";
        return nullptr;
    });
    CHECK(c.report == "env.jsonl");
    CHECK(c.grid_out == "a.csv");
    CHECK_FALSE(c.alpha.has_value());
}

TEST_CASE("json lines") {
    const CheckReport r{"x.y", cplx(1.5, -2.0), 0.25, 1e-3, 1e-2, true, 4.0};
    const auto j = nlohmann::json::parse(to_json_line(r));
    CHECK(j["check_id"] == "x.y");
    CHECK(j["lhs"].is_array());
    CHECK(j["lhs"][0] == 1.5);
    CHECK(j["lhs"][1] == -2.0);
    CHECK(j["rhs"] == 0.25);
    CHECK(j["pass"] == true);
    CHECK(to_json_line(r).find('\n') == std::string::npos);
    const CheckReport bad{"nan", std::nan(""), 0.0, std::nan(""), 1.0, false, 0.0};
    const auto jb = nlohmann::json::parse(to_json_line(bad));
    CHECK(jb["lhs"].is_null());
    CHECK(jb["abs_err"].is_null());
}

TEST_CASE("specfun suite passes on defaults") {
    const auto reports = run_suite("specfun", parse("threads = 2\n"));
    CHECK(reports.size() >= 5);
    for (const auto& r : reports) {
        INFO(r.check_id);
        CHECK(r.pass);
        CHECK(r.pass == (r.abs_err <= r.tol));
    }
    CHECK(exit_status(reports) == 0);
}

TEST_CASE("total-integral suite for one pair") {
    const auto reports = run_suite("total-integral", parse("alpha = 0\nk = 0.5\n"));
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].check_id == "total-integral.pv(alpha=0,k=0.5)");
    CHECK(reports[0].abs_err < 1e-3);
    CHECK(reports[0].pass);
}

TEST_CASE("suite results do not depend on the thread count") {
    const auto a = run_suite("rh-checks", parse("threads = 1\n"));
    const auto b = run_suite("rh-checks", parse("threads = 3\n"));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].check_id == b[i].check_id);
        CHECK(a[i].abs_err == b[i].abs_err);
    }
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("nope", parse("")), ConfigError); }

TEST_CASE("exit status") {
    std::vector<CheckReport> r = {{"a", 0.0, 0.0, 0.0, 1.0, true, 0.0}};
    CHECK(exit_status(r) == 0);
    r.push_back({"b", 1.0, 0.0, 1.0, 0.5, false, 0.0});
    CHECK(exit_status(r) == 1);
}

TEST_CASE("atomic write replaces the file") {
    const auto dir = std::filesystem::temp_directory_path() / "painleve_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "r.jsonl").string();
    write_atomic(path, "old\n");
    write_atomic(path, "new\n");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    CHECK(s == "new\n");
    for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().filename() == "r.jsonl");
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(write_atomic("/nonexistent/dir/x", "y"), ConfigError);
}

TEST_CASE("grid csv layout") {
    const std::string text = grid_csv(parse("alpha = 0\nk = 0.5\n"));
    const auto ls = lines(text);
    REQUIRE(ls.size() == 6401 + 2);
    CHECK(ls[0].rfind("# painleve-mkdv ", 0) == 0);
    CHECK(ls[0].find("alpha=0 k=0.5 ") != std::string::npos);
    CHECK(ls[1] == "x,v,v_prime,v_neg_asym,v_pos_asym,residual_osc,residual_full");
    CHECK(split(ls[2])[0] == "-60");
    CHECK(split(ls.back())[0] == "4");
    // x = 0: both expansions out of domain
    const auto mid = split(ls[2 + 6000]);
    CHECK(mid[0] == "0");
    CHECK(mid[3].empty());
    CHECK(mid[4].empty());
    CHECK(mid[5].empty());
    CHECK(text.find('\r') == std::string::npos);
    CHECK(grid_csv(parse("alpha = 0\nk = 0.5\n")) == text);
}

TEST_CASE("degenerate grid is zero") {
    const auto ls = lines(grid_csv(parse("alpha = 0\nk = 0\nx_lo = -5\nx_hi = 5\nstep = 0.5\n")));
    REQUIRE(ls.size() == 21 + 2);
    for (std::size_t i = 2; i < ls.size(); ++i) {
        CHECK(std::stod(split(ls[i])[1]) == 0.0);
        CHECK(std::stod(split(ls[i])[2]) == 0.0);
    }
}

TEST_CASE("grid residual column decays with the remainder order") {
    const auto ls = lines(grid_csv(parse("alpha = 0.25\nk = 0.3\nx_lo = -200\nx_hi = -20\nstep = 0.01\n")));
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto f = split(ls[i]);
        samples.push_back({-std::stod(f[0]), std::stod(f[6])});
    }
    const double slope = loglog_slope(envelope_maxima(samples, 20, 200, 12));
    CHECK(slope < -1.6);
    CHECK(slope > -2.1);
}

TEST_CASE("grid requires a pair") { CHECK_THROWS_AS(grid_csv(parse("")), ConfigError); }
