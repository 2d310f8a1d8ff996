#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "painleve/error.hpp"
#include "painleve/stokes.hpp"

using namespace painleve;

namespace {
const double kPi = std::numbers::pi;

std::vector<ASParams> matrix() {
    std::vector<ASParams> out;
    for (double a : {-0.3, 0.0, 0.25, 0.4})
        for (double k : {-0.3, 0.3, -0.6 * std::cos(kPi * a), 0.6 * std::cos(kPi * a)})
            out.push_back(make_params(a, k));
    return out;
}
}  // namespace

TEST_CASE("make_params domain") {
    CHECK_NOTHROW(make_params(0.25, 0.3));
    CHECK_THROWS_AS(make_params(0.25, 0.8), DomainError);
    CHECK_THROWS_AS(make_params(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(make_params(-0.7, 0.0), DomainError);
    CHECK(make_params(0, 0).degenerate());
    CHECK_FALSE(make_params(0, 0.1).degenerate());
    CHECK_FALSE(make_params(0.1, 0).degenerate());
}

TEST_CASE("stokes triple") {
    const auto z = stokes_triple(make_params(0, 0));
    CHECK(z.s1 == cplx(0.0));
    CHECK(z.s3 == cplx(0.0));
    const auto s = stokes_triple(make_params(0.25, 0.3));
    CHECK(s.s1.real() == doctest::Approx(-0.7071068).epsilon(1e-7));
    CHECK(s.s1.imag() == doctest::Approx(-0.3));
    CHECK(s.s3 == std::conj(s.s1));
    CHECK(s.s2 == cplx(0.0));
    for (const auto& p : matrix()) CHECK(stokes_constraint_residual(stokes_triple(p), p.alpha()) < 1e-15);
}

TEST_CASE("connection constants") {
    // d from its closed form; phi against a 40-digit evaluation of the phase formula.
    const auto c = connection_constants(make_params(0, 0.5));
    CHECK(c.d == doctest::Approx(0.3026087370504087).epsilon(1e-13));
    CHECK(c.phi == doctest::Approx(-0.9069975159350276).epsilon(1e-12));
    CHECK(std::abs(c.phi - (-0.90703)) < 1e-4);
    const auto c2 = connection_constants(make_params(0.25, 0.3));
    CHECK(c2.d == doctest::Approx(std::sqrt(-std::log(0.5 - 0.09) / kPi)).epsilon(1e-14));
    CHECK(c2.d == doctest::Approx(0.532730).epsilon(1e-5));
    CHECK(c2.phi == doctest::Approx(0.008298534547299674).epsilon(1e-11));
    CHECK_THROWS_AS(connection_constants(make_params(0, 0)), DegenerateError);
}

TEST_CASE("phase is reduced into (-pi, pi]") {
    for (const auto& p : matrix()) {
        const auto c = connection_constants(p);
        CHECK(c.phi > -kPi);
        CHECK(c.phi <= kPi);
    }
    CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(3 * kPi + 0.5) == doctest::Approx(-kPi + 0.5));
    // (-0.3, -0.4): the unreduced sum is about -3.52.
    CHECK(connection_constants(make_params(-0.3, -0.4)).phi == doctest::Approx(-3.52027 + 2 * kPi).epsilon(1e-5));
}

TEST_CASE("d is even in k") {
    for (double a : {-0.3, 0.0, 0.25})
        CHECK(connection_constants(make_params(a, 0.2)).d == connection_constants(make_params(a, -0.2)).d);
}

TEST_CASE("rh constants") {
    const auto z = rh_constants(make_params(0, 0));
    CHECK(z.nu == cplx(0.0));
    CHECK(z.h1 == cplx(0.0));
    const auto r = rh_constants(make_params(0, 0.5));
    CHECK(r.nu.real() == 0.0);
    CHECK(r.nu.imag() == doctest::Approx(-0.0457859).epsilon(1e-6));
    CHECK(std::abs(r.h0 * r.h1 - 1.0 / 3.0) < 1e-12);
    for (const auto& p : matrix()) {
        const auto rc = rh_constants(p);
        const auto s = stokes_triple(p);
        const double c = std::cos(kPi * p.alpha());
        const cplx nu_log = -std::log(c * c - p.k() * p.k()) / cplx(0.0, 2 * kPi);
        const double d = connection_constants(p).d;
        CHECK(std::abs(rc.nu - nu_log) < 1e-13);
        CHECK(std::abs(rc.nu + cplx(0, d * d / 2)) < 1e-13);
        const cplx ss = s.s1 * s.s3;
        CHECK(std::abs(rc.h0 * rc.h1 * (1.0 - ss) - ss) < 1e-12);
    }
}
