#include "doctest.h"

#include <cmath>
#include <map>
#include <memory>

#include "branchlab/identities.hpp"

using namespace branchlab;

namespace {

const Complex kXs[] = {1.0, 2.0, Complex(2, 1)};
const double kTs[] = {0.2, -0.5};

const BranchSweep& sweep_for(Complex x, long K) {
    static std::map<std::pair<double, double>, std::unique_ptr<BranchSweep>> cache;
    auto& slot = cache[{x.real(), x.imag()}];
    if (!slot || slot->K_max() < K) slot = std::make_unique<BranchSweep>(x, K);
    return *slot;
}

}  // namespace

TEST_CASE("closed forms") {
    CHECK(closed_form(IdentityId::PINELIS, 1.0, 0.0) == Complex(0.5));
    CHECK(closed_form(IdentityId::INV1, 1.0, 0.0) == Complex(1.5));
    CHECK(closed_form(IdentityId::INV3, 2.0, 0.0) == Complex(1.625));
    CHECK(std::abs(closed_form(IdentityId::PINELIS2, 1.0, 0.0) - 0.2689414213699951) < 1e-15);
    CHECK(closed_form(IdentityId::PINELIS3, 1.0, 0.0) == closed_form(IdentityId::PINELIS2, 1.0, 0.0));
    CHECK(std::abs(closed_form(IdentityId::PROD_FUND, 1.0, -1.0) - 2.0 * std::cosh(0.5)) < 1e-14);
    CHECK(std::abs(closed_form(IdentityId::PROD_HADAMARD, 1.0, 1.0) - kE * (1 - kE)) < 1e-14);
    CHECK(std::abs(closed_form(IdentityId::PROD_LIMIT, 0.5, 0.0) - 0.5) < 1e-15);
    CHECK(std::abs(closed_form(IdentityId::PROD_LIMIT, 1.0, -1.0) -
                   std::sqrt(0.5) * (std::exp(0.5) + std::exp(-0.5))) < 1e-14);
    CHECK(std::abs(closed_form(IdentityId::CONST_SUM, 3.0, 0.0) - 0.34657359027997264) < 1e-16);

    // t = 0 reduces the shifted forms to the unshifted ones.
    for (Complex x : kXs) {
        CHECK(std::abs(closed_form(IdentityId::INV_SHIFT, x, 0.0) - closed_form(IdentityId::INV1, x, 0.0)) < 1e-15);
        CHECK(std::abs(closed_form(IdentityId::QUAD, x, 0.0) - closed_form(IdentityId::INV2, x, 0.0)) < 1e-14);
        CHECK(std::abs(closed_form(IdentityId::SQ_SHIFT, x, 0.0) - closed_form(IdentityId::INV2, x, 0.0)) < 1e-14);
        CHECK(std::abs(closed_form(IdentityId::PAIR_SHIFT, x, -1.0) - closed_form(IdentityId::PINELIS2, x, 0.0)) < 1e-14);
    }

    // Hadamard and fundamental closed forms differ exactly by exp(t (1/2 + 1/x)).
    const Complex lhs = closed_form(IdentityId::PROD_HADAMARD, 3.0, 0.5);
    const Complex rhs = closed_form(IdentityId::PROD_FUND, 3.0, 0.5) * std::exp(0.5 * (0.5 + 1.0 / 3.0));
    CHECK(std::abs(lhs - rhs) < 1e-14);

    CHECK_THROWS_AS(closed_form(IdentityId::INV1, 0.0, 0.0), DomainError);
    const double w01 = lambert_w(0, 1.0).value.real();  // x e^{-t} = t
    CHECK_THROWS_AS(closed_form(IdentityId::INV_SHIFT, 1.0, w01), DomainError);
    CHECK_THROWS_AS(closed_form(IdentityId::PINELIS2, -kInvE, 0.0), DomainError);
}

TEST_CASE("names") {
    for (IdentityId id : kAllIdentities) CHECK(identity_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(identity_from_string("NOPE"), DomainError);
    CHECK(uses_t(IdentityId::QUAD));
    CHECK_FALSE(uses_t(IdentityId::PINELIS));
}

TEST_CASE("SQ_SHIFT closed form is the t-derivative of INV_SHIFT") {
    auto f = [](double t) { return closed_form(IdentityId::INV_SHIFT, 1.0, t); };
    const double h = 1e-4, t = 0.2;
    const Complex d = (8.0 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h))) / (12 * h);
    CHECK(std::abs(d - closed_form(IdentityId::SQ_SHIFT, 1.0, t)) < 1e-10);
}

TEST_CASE("sum identities on the grid") {
    for (Complex x : kXs) {
        const auto& sw = sweep_for(x, 1000);
        for (double t : kTs) {
            for (IdentityId id : kSumIdentities) {
                CAPTURE(x);
                CAPTURE(t);
                CAPTURE(std::string(to_string(id)));
                const auto r = evaluate_identity(id, sw, t, 1000);
                CHECK(r.abs_err < 1e-3);
                REQUIRE(r.err_trend.size() == 3);
                CHECK(r.err_trend[0].first == 10);
                CHECK(r.err_trend[2].first == 1000);
                CHECK(r.err_trend[2].second < r.err_trend[0].second);
            }
        }
    }
}

TEST_CASE("reference examples for sums") {
    const auto& s1 = sweep_for(1.0, 1000);
    auto r = evaluate_identity(IdentityId::PINELIS, s1, 0.0, 1000);
    CHECK(r.closed_form == Complex(0.5));
    CHECK(r.abs_err < 1e-3);
    r = evaluate_identity(IdentityId::DERIV_RATIO, s1, 0.0, 1000);
    CHECK(std::abs(r.partial - 0.5) < 1e-3);

    // Real x > 0 and real t: the symmetric partials are real.
    for (IdentityId id : {IdentityId::QUAD, IdentityId::QUAD_W}) {
        for (double t : {0.2, -0.5, 1.3}) {
            CHECK(std::abs(evaluate_identity(id, s1, t, 1000).partial.imag()) < 1e-10);
            CHECK(std::abs(evaluate_identity(id, sweep_for(2.0, 1000), t, 1000).partial.imag()) < 1e-10);
        }
    }
}

TEST_CASE("asymmetric truncation degrades PINELIS by the unpaired term") {
    const auto& sw = sweep_for(1.0, 1000);
    SumOptions asym;
    asym.asymmetric = true;
    const auto a = evaluate_identity(IdentityId::PINELIS, sw, 0.0, 1000, asym);
    const auto s = evaluate_identity(IdentityId::PINELIS, sw, 0.0, 1000);
    CHECK(a.asymmetric);
    CHECK(std::abs(a.partial - s.partial - 1.0 / (sw[1001] + 1.0)) < 1e-14);
    CHECK(a.abs_err > s.abs_err);
    // The symmetric partial is real for x > 0; the unpaired term is not.
    CHECK(std::abs(s.partial.imag()) < 1e-12);
    CHECK(std::abs(a.partial.imag()) > 1e-4);
}

TEST_CASE("accelerated partials are labelled and sharper") {
    SumOptions acc;
    acc.accelerate = true;
    const auto plain = symmetric_sum(IdentityId::INV1, 2.0, 0.0, 100);
    const auto fast = symmetric_sum(IdentityId::INV1, 2.0, 0.0, 100, acc);
    CHECK(fast.accelerated);
    CHECK_FALSE(plain.accelerated);
    CHECK(fast.abs_err < plain.abs_err);
}

TEST_CASE("products") {
    CHECK(fundamental_product(1.0, 0.0, 10).partial == Complex(1.0));
    CHECK(hadamard_product(1.0, 0.0, 10).partial == Complex(1.0));

    for (Complex x : kXs) {
        const auto& sw = sweep_for(x, 1000);
        for (double t : kTs) {
            CAPTURE(x);
            CAPTURE(t);
            const auto f = evaluate_identity(IdentityId::PROD_FUND, sw, t, 1000);
            const auto h = evaluate_identity(IdentityId::PROD_HADAMARD, sw, t, 1000);
            CHECK(f.rel_err < 2e-2);
            CHECK(h.rel_err < 2e-2);
            REQUIRE(h.cross_relation_err.has_value());
            CHECK(*h.cross_relation_err < 1e-10);
        }
    }

    const auto f = fundamental_product(Complex(2, 1), 0.3, 1000);
    const Complex expected = std::exp(-0.15) - (0.3 / Complex(2, 1)) * std::exp(0.15);
    CHECK(std::abs(f.closed_form - expected) < 1e-15);
    CHECK(f.rel_err < 2e-2);

    const auto r = fundamental_product(1.0, -1.0, 1000);
    CHECK(std::abs(r.closed_form - 2.0 * std::cosh(0.5)) < 1e-14);
    CHECK(r.rel_err < 2e-2);

    // Partials at x = 3, K = 500 relate through the partial sum of 1/W.
    const BranchSweep s3(3.0, 500);
    const Complex fund = partial_value(IdentityId::PROD_FUND, s3, 0.5, -500, 500);
    const Complex had = partial_value(IdentityId::PROD_HADAMARD, s3, 0.5, -500, 500);
    const Complex inv = partial_value(IdentityId::INV1, s3, 0.5, -500, 500);
    CHECK(std::abs(had - fund * std::exp(0.5 * inv)) < 1e-10);
}

TEST_CASE("limit constant and product limit") {
    const auto c1 = constant_sum(1.0, 2000);
    const auto c2 = constant_sum(2.0, 2000);
    CHECK(c1.abs_err < 0.05);
    CHECK(c2.abs_err < 0.05);
    CHECK(std::abs(c1.partial - c2.partial) < 0.05);
    CHECK_FALSE(c1.informational);
    CHECK(std::abs(c1.partial.imag()) < 1e-9);

    const auto cc = constant_sum(Complex(2, 1), 2000);
    CHECK(cc.informational);

    CHECK(std::abs(product_limit(2.0, 0.0, 2000).partial - 1.0) < 0.05);
    CHECK(product_limit(0.5, 0.0, 2000).rel_err < 0.05);
    CHECK(product_limit(1.0, -1.0, 2000).rel_err < 0.05);
    CHECK_THROWS_AS(constant_sum(1.0, 5), DomainError);
}

TEST_CASE("branch sweep bounds and poles") {
    const BranchSweep s(1.0, 5);
    CHECK(s.K_max() == 5);
    CHECK_THROWS_AS(partial_value(IdentityId::INV1, s, 0.0, -6, 5), DomainError);
    CHECK_THROWS_AS(BranchSweep(0.0, 3), DomainError);
    // t equal to a branch value hits a term pole.
    CHECK_THROWS_AS(partial_value(IdentityId::INV_SHIFT, s, s[2], -5, 5), DomainError);
}
