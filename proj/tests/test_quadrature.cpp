#include "doctest.h"

#include <cmath>

#include "branchlab/quadrature.hpp"

using namespace branchlab;

TEST_CASE("exp-sinh rule on known integrals") {
    QuadConfig qc;
    qc.tol = 1e-13;
    // int_0^inf dt / (1 + t^2) = pi/2 and int_0^inf e^{-t} dt = 1.
    const auto q = exp_sinh_integrate(
        [](double t) { return std::vector<Complex>{1.0 / (1.0 + t * t), std::exp(-t)}; }, 2, qc);
    CHECK(std::abs(q[0].value - kPi / 2.0) < 1e-12);
    CHECK(std::abs(q[1].value - 1.0) < 1e-12);
    CHECK(q[0].level >= 3);

    QuadConfig bad;
    bad.level_max = 2;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = {};
    bad.tol = 0.0;
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("integral representation: printed W_1(1)") {
    const auto r = integral_w(1, 1.0, IntegralCase::case1);
    CHECK(r.method == EvalMethod::integral);
    CHECK(std::abs(r.value.real() - -1.53391) < 1e-5);
    CHECK(std::abs(r.value.imag() - 4.37518) < 1e-5);
    CHECK(std::abs(r.value - lambert_w(1, 1.0).value) < 1e-8);
}

TEST_CASE("integral representation agrees with lambert_w on the grid") {
    const Complex xs[] = {1.0, 2.0, Complex(2, 1), -3.0};
    for (long k : {2L, 3L, 5L, -2L, -3L}) {
        for (Complex x : xs) {
            const Complex ref = lambert_w(k, x).value;
            for (IntegralCase c : {IntegralCase::case1, IntegralCase::case2}) {
                CAPTURE(k);
                CAPTURE(x);
                CAPTURE(std::string(to_string(c)));
                IntegralDetail d;
                const auto r = integral_w(k, x, c, {}, &d);
                CHECK(std::abs(r.value - ref) <= 1e-8);
                CHECK(r.residual <= 1e-8);
                CHECK(d.numerator_integral.error_estimate <= 1e-10 * std::max(1.0, std::abs(d.numerator_integral.value)));
            }
        }
    }
    // Remaining case 1 pairs, including k in {0, -1} away from [-1/e, 0].
    for (long k : {0L, -1L, 1L}) {
        for (Complex x : {Complex(1.0), Complex(-3.0), Complex(0.5, -2.0)}) {
            CAPTURE(k);
            CAPTURE(x);
            CHECK(std::abs(integral_w(k, x, IntegralCase::case1).value - lambert_w(k, x).value) <= 1e-8);
        }
    }
}

TEST_CASE("case 1 and case 2 agree") {
    for (long k : {2L, 3L, 5L}) {
        const Complex a = integral_w(k, 1.0, IntegralCase::case1).value;
        const Complex b = integral_w(k, 1.0, IntegralCase::case2).value;
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("integral validity conditions") {
    CHECK_THROWS_AS(integral_w(0, -0.2, IntegralCase::case1), DomainError);
    CHECK_THROWS_AS(integral_w(-1, -kInvE, IntegralCase::case1), DomainError);
    CHECK_THROWS_AS(integral_w(1, 1.0, IntegralCase::case2), DomainError);
    CHECK_THROWS_AS(integral_w(0, 1.0, IntegralCase::case2), DomainError);
    CHECK_THROWS_AS(integral_w(-1, 1.0, IntegralCase::case2), DomainError);
    CHECK_THROWS_AS(integral_w(2, 0.0, IntegralCase::case1), DomainError);
    const auto s = integral_setup(-3, 1.0, IntegralCase::case2);
    CHECK(std::abs(s.K - Complex(0, -5.0 * kPi)) < 1e-15);
    CHECK(s.P == doctest::Approx(kPi / 2.0 - 1.0));
    CHECK(integral_case_from_string("case2") == IntegralCase::case2);
    CHECK_THROWS_AS(integral_case_from_string("case3"), DomainError);
}

TEST_CASE("overflow-safe log|f|") {
    const Complex w(1.5, -0.7);
    CHECK(std::abs(log_abs_f(w, 2.0) - std::log(std::abs(w * std::exp(w) - 2.0))) < 1e-14);
    const double big = log_abs_f(Complex(1260.0, 3.0), 1.0);
    CHECK(std::isfinite(big));
    CHECK(std::abs(big - (1260.0 + std::log(std::abs(Complex(1260.0, 3.0))))) < 1e-12);
    CHECK(std::abs(log_abs_f(Complex(-800.0, 1.0), 3.0) - std::log(3.0)) < 1e-14);
}

TEST_CASE("Jensen integral against an independent quadrature") {
    // Gauss-Legendre values at 25 digits.
    CHECK(std::abs(jensen_I(5.0 * kPi, 1.0).value - 40.633267851254384477) < 1e-9);
    CHECK(std::abs(jensen_I(21.0 * kPi, 1.0).value - 145.390491428130101) < 1e-9);

    CHECK_THROWS_AS(jensen_I(4.0 * kPi, 1.0), DomainError);
    CHECK_THROWS_AS(jensen_I(5.0 * kPi, -1.0), DomainError);
    // W_0(pi e^pi) = pi lies on the circle of radius pi.
    CHECK_THROWS_AS(jensen_I(kPi, kPi * std::exp(kPi)), DomainError);
}

TEST_CASE("Jensen identity is exact") {
    for (auto [K, x] : {std::pair{2L, 1.0}, std::pair{10L, 1.0}, std::pair{50L, 3.0}, std::pair{100L, 0.5}}) {
        CAPTURE(K);
        CAPTURE(x);
        const auto r = jensen_check(K, x);
        CHECK(r.residual < 1e-7);
        CHECK(r.integral.clearance > 0.1);
    }
    CHECK_THROWS_AS(jensen_check(1, 1.0), DomainError);
    CHECK_THROWS_AS(jensen_check(5, 0.0), DomainError);
}

TEST_CASE("Jensen residual is quadrature-limited, not K-limited") {
    for (long K : {5L, 40L, 200L}) {
        CAPTURE(K);
        const auto full = jensen_check(K, 1.0);
        CHECK(full.residual < 1e-9);
        // Swap in coarser trapezoidal values of I: the residual tracks the
        // quadrature error and vanishes once the rule is resolved.
        const double rho = (2.0 * static_cast<double>(K) + 1.0) * kPi;
        auto residual_with = [&](std::size_t n) {
            return std::abs(full.rhs - full.integral.value / (2.0 * kPi) + jensen_trapezoid(rho, 1.0, n) / (2.0 * kPi) -
                            full.lhs);
        };
        const std::size_t n_full = full.integral.points;
        CHECK(residual_with(n_full / 16) > 1e-6);
        CHECK(residual_with(n_full / 16) > residual_with(n_full / 4));
        CHECK(residual_with(n_full) < 1e-9);
    }
    QuadConfig loose;
    loose.tol = 1e-2;
    CHECK(jensen_check(40, 1.0, loose).integral.points <= jensen_check(40, 1.0).integral.points);
}

TEST_CASE("asymptotic behaviour of the Jensen integral") {
    auto delta = [](long K, double x) {
        const double rho = (2.0 * static_cast<double>(K) + 1.0) * kPi;
        return std::abs(jensen_I(rho, x).value - jensen_asymptotic(rho, x));
    };
    const double d20 = delta(20, 1.0), d200 = delta(200, 1.0);
    CHECK(d200 < d20);

    auto xdep = [](long K) {
        const double rho = (2.0 * static_cast<double>(K) + 1.0) * kPi;
        return std::abs(jensen_I(rho, 2.0).value - jensen_I(rho, 1.0).value - kPi * std::log(2.0));
    };
    CHECK(xdep(200) < xdep(20));
}
