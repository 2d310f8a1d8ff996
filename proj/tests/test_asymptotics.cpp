#include <cmath>
#include <vector>

#include "doctest.h"
#include "painleve/asymptotics.hpp"
#include "painleve/error.hpp"

using namespace painleve;

TEST_CASE("psi_tilde") {
    CHECK(psi_tilde(1.0, {0.0, 0.0}).value == doctest::Approx(2.0 / 3.0));
    CHECK(psi_tilde(4.0, {0.0, 0.0}).derivative == doctest::Approx(2.0));
    const ConnectionConstants c{0.302608, -0.90703};
    CHECK(psi_tilde(25.0, c).value == doctest::Approx(250.0 / 3.0 - 0.75 * 0.302608 * 0.302608 * std::log(25.0) - 0.90703));
    CHECK(psi_tilde(25.0, c).value == doctest::Approx(82.2052).epsilon(1e-6));
    CHECK_THROWS_AS(psi_tilde(0.0, c), DomainError);
}

TEST_CASE("psi derivative is positive past the turning point") {
    for (double d : {0.1, 0.5, 1.0, 2.0}) {
        const double s0 = psi_turning_point(d);
        const ConnectionConstants c{d, 0.0};
        CHECK(std::abs(psi_tilde(s0, c).derivative) < 1e-12);
        for (double f : {1.01, 2.0, 10.0}) CHECK(psi_tilde(f * s0, c).derivative > 0);
    }
}

TEST_CASE("v_neg_asym values") {
    const auto zero = make_params(0, 0);
    for (double x : {-1.0, -7.5, -300.0}) {
        CHECK(v_neg_asym(x, zero).v == 0.0);
        CHECK(v_neg_asym(x, zero).v_prime == 0.0);
    }
    const auto p = make_params(0, 0.5);
    const double expect = 0.302608 * std::pow(25.0, -0.25) * std::cos(82.2052);
    CHECK(v_neg_asym(-25.0, p).v == doctest::Approx(expect).epsilon(1e-4));
    CHECK(v_neg_asym(-25.0, p).v == doctest::Approx(0.1172).epsilon(1e-3));
    const auto q = make_params(0.25, 0.3);
    CHECK(v_neg_asym(-25.0, q, true).v - v_neg_asym(-25.0, q, false).v == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK_THROWS_AS(v_neg_asym(-0.5, p), DomainError);
}

TEST_CASE("model derivatives match central differences") {
    const double h = 1e-5;
    for (double a : {-0.3, 0.25}) {
        const auto p = make_params(a, 0.3);
        for (double x : {-30.0, -5.5, -2.0}) {
            const double fd = (v_neg_asym(x + h, p).v - v_neg_asym(x - h, p).v) / (2 * h);
            CHECK(std::abs(fd - v_neg_asym(x, p).v_prime) < 1e-8 * std::max(1.0, std::abs(fd)));
        }
        for (double x : {1.5, 4.0, 10.0}) {
            const double fd = (v_pos_asym(x + h, a).v - v_pos_asym(x - h, a).v) / (2 * h);
            CHECK(std::abs(fd - v_pos_asym(x, a).v_prime) < 1e-8 * std::abs(fd));
        }
    }
}

TEST_CASE("v_pos_asym values") {
    CHECK(v_pos_asym(10.0, 0.25).v == doctest::Approx(0.025046875).epsilon(1e-14));
    CHECK(v_pos_asym(3.0, 0.0).v == 0.0);
    double prev = v_pos_asym(1.0, 0.3).v;
    for (double x = 1.5; x < 50; x += 0.5) {
        const double v = v_pos_asym(x, 0.3).v;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("loglog_slope") {
    std::vector<std::pair<double, double>> pts;
    for (double s : {1.0, 2.0, 5.0, 10.0, 30.0}) pts.emplace_back(s, 1.0 / (s * s));
    CHECK(loglog_slope(pts) == doctest::Approx(-2.0).epsilon(1e-12));
    pts.clear();
    for (double s : {3.0, 7.0, 20.0, 45.0, 90.0, 200.0}) pts.emplace_back(s, 3.0 * std::pow(s, -1.75));
    CHECK(loglog_slope(pts) == doctest::Approx(-1.75).epsilon(1e-12));
    pts.clear();
    for (double s = 1.0; s < 100.0; s += 0.37) pts.emplace_back(s, (1.0 + 0.01 * std::sin(s)) / s);
    CHECK(std::abs(loglog_slope(pts) + 1.0) < 0.02);
    CHECK_THROWS_AS(loglog_slope({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}}), DomainError);
    CHECK_THROWS_AS(loglog_slope({{1, 1}, {2, 2}}), DomainError);
    CHECK_THROWS_AS(loglog_slope({{1, 1}, {2, 2}, {3, -1}, {4, 1}, {5, 1}}), DomainError);
}

TEST_CASE("envelope_maxima picks the peak of each bin") {
    std::vector<std::pair<double, double>> samples;
    for (double s = 10; s <= 1000; s += 0.01) samples.emplace_back(s, std::pow(s, -1.5) * std::cos(s));
    const auto env = envelope_maxima(samples, 10, 1000, 8);
    CHECK(env.size() == 8);
    CHECK(loglog_slope(env) == doctest::Approx(-1.5).epsilon(0.02));
}
