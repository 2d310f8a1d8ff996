#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "painleve/error.hpp"
#include "painleve/integrals.hpp"
#include "painleve/quadrature.hpp"

using namespace painleve;

namespace {

constexpr double kPi = std::numbers::pi;

// mpmath, 20 digits
struct FormulaRef {
    double alpha, k, value;
};
const FormulaRef kFormula[] = {
    {0.0, 0.3, 0.30951960420311170327},
    {0.0, 0.5, 0.54930614433405484570},
    {0.25, 0.3, 0.45288070667073724428},
    {-0.3, -0.4, -0.83008314162340637546},
};

const Profile& profile_025_03() {
    static const Profile p = Profile::build(make_params(0.25, 0.3));
    return p;
}

}  // namespace

TEST_CASE("total_integral_formula") {
    for (const auto& r : kFormula) CHECK(total_integral_formula(make_params(r.alpha, r.k)) == doctest::Approx(r.value).epsilon(1e-14));
    CHECK(total_integral_formula(make_params(0.3, 0.0)) == 0.0);
    CHECK(total_integral_formula(make_params(0.0, 0.5)) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
    for (double a : {0.0, 0.25, -0.3})
        for (double k : {0.1, 0.3, 0.5})
            CHECK(total_integral_formula(make_params(a, -k)) == -total_integral_formula(make_params(a, k)));
}

TEST_CASE("policy validation") {
    const Profile& prof = profile_025_03();
    CHECK_THROWS_AS(pv_total_integral(prof, {10.0, 2}), DomainError);
    CHECK_THROWS_AS(pv_total_integral(prof, {60.0, 3}), DomainError);
    CHECK_THROWS_AS(pv_total_integral(prof, {80.0, 2}), DomainError);
    CHECK_THROWS_AS(v_hat(prof, 0.0, {}), DomainError);
    CHECK_THROWS_AS(v_hat(prof, 1.5, {}), DomainError);
}

TEST_CASE("degenerate total integral") {
    const auto prof = Profile::build(make_params(0, 0));
    CHECK(pv_total_integral(prof, {}).value == 0.0);
}

TEST_CASE("oscillatory_tail matches direct quadrature") {
    const ConnectionConstants c{0.53, 0.8};
    const double X = 40, L = 400;
    for (double sign : {1.0, -1.0}) {
        for (double omega : {0.0, 0.3}) {
            if (sign < 0 && omega > 0) continue;  // stationary point inside
            std::vector<double> br;
            for (double s = X; s < L; s += 0.25) br.push_back(s);
            br.push_back(L);
            const cplx direct = integrate_panels(
                [&](double s) {
                    const double psi = psi_tilde(s, c).value;
                    return c.d * std::pow(s, -0.25) * std::exp(cplx(0, sign * psi + omega * s));
                },
                br);
            const auto a = oscillatory_tail(c, sign, omega, X, 2);
            const auto b = oscillatory_tail(c, sign, omega, L, 2);
            CHECK(std::abs(a.value - b.value - direct) < 1e-6);
            CHECK(a.remainder_estimate > b.remainder_estimate);
        }
    }
}

TEST_CASE("left remainder has the cubic mean") {
    // Average of v - (d s^{-1/4} cos psi + alpha/x) over a window of many periods
    // against -3 alpha d^2 s^{-5/2}.
    for (auto [a, k] : {std::pair{0.4, 0.5 * std::cos(0.4 * kPi)}, std::pair{-0.3, -0.4}}) {
        const auto p = make_params(a, k);
        const auto c = connection_constants(p);
        const auto g = solve_left_launch(p, -4000, -20, 1e-10, -200.0);
        std::vector<double> br;
        for (double x = -144; x < -120; x += 0.05) br.push_back(x);
        br.push_back(-120);
        const double got = integrate_panels([&](double x) { return g.at(x).v - v_neg_asym(x, p, c, true).v; }, br);
        const double want = integrate_panels([&](double x) { return -3 * a * c.d * c.d * std::pow(-x, -2.5); }, br);
        CHECK(std::abs(got - want) < 0.15 * std::abs(want));
    }
}

TEST_CASE("principal value total integral against the formula") {
    for (const auto& r : kFormula) {
        const auto p = make_params(r.alpha, r.k);
        const auto res = pv_total_integral(Profile::build(p), {});
        CHECK(std::abs(res.value - r.value) < 1e-3);
        CHECK_FALSE(res.warn);
    }
    const auto p0 = make_params(0.25, 0.0);
    CHECK(std::abs(pv_total_integral(Profile::build(p0), {}).value) < 1e-3);
}

TEST_CASE("total integral is independent of the cutoff") {
    ProfileOptions o;
    o.cutoff = 80;
    const auto prof = Profile::build(make_params(-0.3, -0.4), o);
    const double a = pv_total_integral(prof, {40.0, 2}).value;
    const double b = pv_total_integral(prof, {60.0, 2}).value;
    const double c = pv_total_integral(prof, {80.0, 2}).value;
    CHECK(std::abs(a - b) < 2e-3);
    CHECK(std::abs(b - c) < 2e-3);
    CHECK(std::abs(a - c) < 2e-3);
}

TEST_CASE("mean correction can be disabled") {
    const Profile& prof = profile_025_03();
    TailPolicy off;
    off.mean_correction = false;
    const auto with = pv_total_integral(prof, {});
    const auto without = pv_total_integral(prof, off);
    CHECK(without.mean_tail == 0.0);
    CHECK(with.value - without.value == doctest::Approx(with.mean_tail));
}

TEST_CASE("v_hat near zero frequency") {
    const Profile& prof = profile_025_03();
    const double c = 0.45288070667073724428;
    const auto up = v_hat(prof, 1e-3, {});
    const auto down = v_hat(prof, -1e-3, {});
    CHECK(std::abs(up.value - cplx(c, -kPi * 0.25)) < 1e-2);
    CHECK(std::abs(down.value - cplx(c, kPi * 0.25)) < 1e-2);
}

TEST_CASE("v_hat reality symmetry") {
    const Profile& prof = profile_025_03();
    for (double xi : {1e-3, 0.05, 0.4, 1.0}) {
        const cplx a = v_hat(prof, xi, {}).value;
        const cplx b = v_hat(prof, -xi, {}).value;
        CHECK(std::abs(a - std::conj(b)) < 1e-8);
        CHECK(std::abs((a - b).real()) < 1e-8);
    }
}

TEST_CASE("alpha/x contribution tends to -i pi alpha sgn xi") {
    const Profile& prof = profile_025_03();
    const double alpha = 0.25;
    for (double xi : {1e-3, -1e-3}) {
        const auto r = v_hat(prof, xi, {});
        // Inside the core, alpha/x e^{-i xi x} has symmetric part -i alpha sin(xi x)/x.
        const double inner = integrate_panels([&](double x) { return x == 0 ? xi : std::sin(xi * x) / x; },
                                              std::vector<double>{0, 20, 40, 60});
        const cplx total = r.f_tail + cplx(0, -2 * alpha * inner);
        CHECK(std::abs(total - cplx(0, -kPi * alpha * (xi > 0 ? 1 : -1))) < 1e-3);
    }
}
