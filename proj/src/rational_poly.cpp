#include "branchlab/rational_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace branchlab {

Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

const char* to_string(Variable v) { return v == Variable::X ? "X" : "Y"; }

RationalPoly::RationalPoly(std::vector<Rational> coeffs, Variable var)
    : coeffs_(std::move(coeffs)), var_(var) {
    trim();
}

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t power, Variable var) {
    std::vector<Rational> coeffs(power + 1);
    coeffs[power] = c;
    return RationalPoly(std::move(coeffs), var);
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

void RationalPoly::require_same_variable(const RationalPoly& other) const {
    // The zero polynomial is compatible with either variable.
    if (var_ != other.var_ && !is_zero() && !other.is_zero())
        throw std::invalid_argument("RationalPoly: mixing X- and Y-polynomials");
}

Rational RationalPoly::coeff(std::size_t j) const {
    return j < coeffs_.size() ? coeffs_[j] : Rational(0);
}

std::size_t RationalPoly::valuation() const {
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (sgn(coeffs_[j]) != 0) return j;
    return 0;
}

Rational RationalPoly::operator()(const Rational& v) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

Complex RationalPoly::eval(Complex v) const {
    const auto d = to_doubles();
    return horner(d, v);
}

std::vector<double> RationalPoly::to_doubles() const {
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.get_d());
    return out;
}

RationalPoly RationalPoly::derivative() const {
    if (coeffs_.size() <= 1) return RationalPoly({}, var_);
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) out[j - 1] = coeffs_[j] * static_cast<long>(j);
    return RationalPoly(std::move(out), var_);
}

RationalPoly RationalPoly::d_dX() const {
    if (var_ == Variable::X) return derivative();
    // d/dX Y^j = -j Y^(j+1)
    std::vector<Rational> out(coeffs_.size() + 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) out[j + 1] = -coeffs_[j] * static_cast<long>(j);
    return RationalPoly(std::move(out), var_);
}

RationalPoly RationalPoly::integral() const {
    if (var_ != Variable::X) throw std::invalid_argument("RationalPoly::integral: X-polynomials only");
    std::vector<Rational> out(coeffs_.size() + 1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) out[j + 1] = coeffs_[j] / static_cast<long>(j + 1);
    return RationalPoly(std::move(out), var_);
}

RationalPoly RationalPoly::times_var_power(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Rational> out(coeffs_.size() + k);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<long>(k));
    return RationalPoly(std::move(out), var_);
}

RationalPoly RationalPoly::divided_by_var_power(std::size_t k) const {
    if (is_zero()) return *this;
    if (valuation() < k) throw std::invalid_argument("RationalPoly: not divisible by var^k");
    return RationalPoly(std::vector<Rational>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()),
                        var_);
}

RationalPoly RationalPoly::scaled_argument(const Rational& c) const {
    std::vector<Rational> out(coeffs_);
    Rational p = 1;
    for (auto& a : out) {
        a *= p;
        p *= c;
    }
    return RationalPoly(std::move(out), var_);
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
    require_same_variable(rhs);
    if (is_zero()) var_ = rhs.var_;
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] += rhs.coeffs_[j];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs) {
    require_same_variable(rhs);
    if (is_zero()) var_ = rhs.var_;
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] -= rhs.coeffs_[j];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    a.require_same_variable(b);
    if (a.is_zero() || b.is_zero()) return RationalPoly({}, a.is_zero() ? b.var_ : a.var_);
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(out), a.var_);
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
}

std::string RationalPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    const char* v = branchlab::to_string(var_);
    bool first = true;
    for (std::size_t idx = coeffs_.size(); idx-- > 0;) {
        const Rational& c = coeffs_[idx];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (!unit || idx == 0) os << mag.get_str();
        if (idx > 0) {
            if (!unit) os << "*";
            os << v;
            if (idx > 1) os << "^" << idx;
        }
    }
    return os.str();
}

Complex horner(std::span<const double> coeffs, Complex v) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
    return acc;
}

}  // namespace branchlab
