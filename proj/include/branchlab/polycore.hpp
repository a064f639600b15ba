#pragma once

// Exact-arithmetic engine: Stirling numbers of the first kind, the Lambert
// polynomial families L_n, L_{n,k}, M_n and the shifted P_n, and exact
// verification of the identities they satisfy.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/rational_poly.hpp"

namespace branchlab {

/// Signed Stirling numbers of the first kind s(n, m), 0 <= m <= n <= n_max,
/// with x(x-1)...(x-n+1) = sum_m s(n, m) x^m.
class StirlingTable {
public:
    explicit StirlingTable(std::size_t n_max);

    std::size_t n_max() const noexcept { return n_max_; }
    // s(n, m); zero outside 0 <= m <= n. n must not exceed n_max.
    BigInt operator()(std::size_t n, std::size_t m) const;

private:
    std::size_t n_max_;
    std::vector<std::vector<BigInt>> rows_;
};

BigInt factorial(std::size_t n);
BigInt binomial(std::size_t n, std::size_t k);

/// Truncated power series in z with exact coefficients z^0 .. z^order.
struct FormalSeries {
    std::vector<Rational> coeffs;

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    Rational coeff(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : Rational(0); }

    static FormalSeries from_poly(const RationalPoly& p, std::size_t order);
};

// Lambert family of A: P_0 = A, P_{n+1} = -P_n + n * int_0^X P_n. Returns
// P_0 .. P_{n_max}. Throws DomainError unless A is an X-polynomial with A(0) = 0.
std::vector<RationalPoly> lambert_family(const RationalPoly& seed, std::size_t n_max);

// L_n from its Stirling-number closed form (L_0 = -X).
RationalPoly lambert_L(std::size_t n, const StirlingTable& table);

// L_{n,k}: coefficient of T^n in F(T, X)^k where F = sum_n L_n T^n. For k <= -1
// the result is a Y-polynomial when n <= -k and an X-polynomial when n >= 1-k.
RationalPoly lambert_L_power(std::size_t n, long k, const StirlingTable& table);

// M_1 = -1/X, M_{n+1} = M_n'/n - M_n (derivative in X). Returned in Y = 1/X.
RationalPoly lambert_M(std::size_t n);

// M_n from its Stirling-number expansion.
RationalPoly lambert_M_stirling(std::size_t n, const StirlingTable& table);

// P_N = sum_{n=0..N} binom(N-1, n-1) L_n, the coefficients of the expansion in
// K + 1. binom(-1, -1) is taken as 1 so that P_0 = L_0.
RationalPoly shifted_P(std::size_t n, const StirlingTable& table);

// First N+1 coefficients of F(W_0(z)) via [z^n] F(W_0(z)) = [t^n] F(t)(1+t)e^{-nt}.
FormalSeries compose_with_W0(const FormalSeries& f, std::size_t n);

/// Laurent polynomial in X: coeffs[i] multiplies X^(low + i).
struct LaurentPoly {
    long low = 0;
    std::vector<Rational> coeffs;

    bool is_zero() const;
    // Converts to an X- or Y-polynomial; throws if both signs of power occur.
    RationalPoly to_poly() const;
    static LaurentPoly from_poly(const RationalPoly& p);
};

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);

// Coefficients T^0..T^n_max of F^k computed directly by truncated series
// multiplication (and inversion for k < 0) in Laurent arithmetic. Independent of
// the closed forms used by lambert_L_power.
std::vector<LaurentPoly> generating_power(long k, std::size_t n_max, const StirlingTable& table);

enum class PolyIdentity {
    PDE1,
    ODE_T,
    L2_REL,
    PDE_SET,
    LOG_ID,
    LNK_REC,
    LAPLACE_L,
    PDE2,
    M_STIRLING,
    M_BETA,
    P_REC,
};

inline constexpr PolyIdentity kAllPolyIdentities[] = {
    PolyIdentity::PDE1,      PolyIdentity::ODE_T,  PolyIdentity::L2_REL,     PolyIdentity::PDE_SET,
    PolyIdentity::LOG_ID,    PolyIdentity::LNK_REC, PolyIdentity::LAPLACE_L, PolyIdentity::PDE2,
    PolyIdentity::M_STIRLING, PolyIdentity::M_BETA, PolyIdentity::P_REC,
};

std::string_view to_string(PolyIdentity id);
// Throws DomainError for an unknown name.
PolyIdentity poly_identity_from_string(std::string_view name);

struct PolyVerifyReport {
    PolyIdentity id;
    std::size_t n_min = 0;        // first n the identity is stated for
    std::size_t n_max = 0;
    std::vector<bool> holds;      // holds[n - n_min]
    std::optional<std::size_t> first_failure;

    bool passed() const { return !first_failure.has_value(); }
};

// Test hook: called on every polynomial the verifier generates, with the family
// name ("L", "M", "P", "family") and index, before it is used.
using PolyTamper = std::function<void(std::string_view family, std::size_t n, RationalPoly&)>;

PolyVerifyReport verify_poly_identity(PolyIdentity id, std::size_t n_max,
                                      const PolyTamper& tamper = {});

}  // namespace branchlab
