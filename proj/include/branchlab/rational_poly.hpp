#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "branchlab/common.hpp"

namespace branchlab {

using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den = 1);

// Variable a polynomial is written in. Y stands for 1/X, so a Y-polynomial is
// a Laurent polynomial in X with only non-positive powers.
enum class Variable { X, Y };

const char* to_string(Variable v);

/// Dense polynomial with exact rational coefficients, stored by increasing
/// power. The zero polynomial has no coefficients and degree -1; otherwise the
/// leading coefficient is nonzero.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs, Variable var = Variable::X);

    static RationalPoly monomial(const Rational& c, std::size_t power,
                                 Variable var = Variable::X);
    static RationalPoly constant(const Rational& c, Variable var = Variable::X) {
        return monomial(c, 0, var);
    }

    Variable variable() const noexcept { return var_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    // Coefficient of var^j; zero past the degree.
    Rational coeff(std::size_t j) const;

    // Lowest power with a nonzero coefficient (0 for the zero polynomial).
    std::size_t valuation() const;

    Rational operator()(const Rational& v) const;
    Complex eval(Complex v) const;
    std::vector<double> to_doubles() const;

    // Derivative with respect to the polynomial's own variable.
    RationalPoly derivative() const;
    // Derivative with respect to X. On a Y-polynomial this is -Y^2 d/dY.
    RationalPoly d_dX() const;
    // Antiderivative vanishing at 0 (X-polynomials only).
    RationalPoly integral() const;

    RationalPoly times_var_power(std::size_t k) const;
    // Exact division by var^k; throws if the polynomial is not divisible.
    RationalPoly divided_by_var_power(std::size_t k) const;
    // Returns p(c * var).
    RationalPoly scaled_argument(const Rational& c) const;

    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const Rational& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator-(RationalPoly a) { return a *= Rational(-1); }
    friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
    friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);

    // Human-readable form such as "1/4*X^4 - 11/6*X^3 + 3*X^2 - X".
    std::string to_string() const;

private:
    void trim();
    void require_same_variable(const RationalPoly& other) const;

    std::vector<Rational> coeffs_;
    Variable var_ = Variable::X;
};

// Horner evaluation on binary64 coefficients.
Complex horner(std::span<const double> coeffs, Complex v);

}  // namespace branchlab
