#include "branchlab/polycore.hpp"

#include <algorithm>
#include <string>

namespace branchlab {

StirlingTable::StirlingTable(std::size_t n_max) : n_max_(n_max), rows_(n_max + 1) {
    rows_[0] = {BigInt(1)};
    for (std::size_t n = 0; n < n_max; ++n) {
        const auto& prev = rows_[n];
        auto& next = rows_[n + 1];
        next.assign(n + 2, BigInt(0));
        // s(n+1, m) = s(n, m-1) - n s(n, m)
        for (std::size_t m = 1; m <= n + 1; ++m) {
            next[m] = prev[m - 1];
            if (m <= n) next[m] -= prev[m] * static_cast<unsigned long>(n);
        }
    }
}

BigInt StirlingTable::operator()(std::size_t n, std::size_t m) const {
    if (n > n_max_) throw DomainError("StirlingTable: n exceeds table size");
    if (m > n) return 0;
    return rows_[n][m];
}

BigInt factorial(std::size_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(std::size_t n, std::size_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {

long sign_power(long e) { return (e % 2 == 0) ? 1 : -1; }

void require_table(const StirlingTable& table, std::size_t n) {
    if (table.n_max() < n)
        throw DomainError("Stirling table too small: need n_max >= " + std::to_string(n));
}

RationalPoly nth_derivative(RationalPoly p, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) p = p.d_dX();
    return p;
}

}  // namespace

FormalSeries FormalSeries::from_poly(const RationalPoly& p, std::size_t order) {
    FormalSeries s;
    s.coeffs.resize(order + 1);
    for (std::size_t j = 0; j <= order; ++j) s.coeffs[j] = p.coeff(j);
    return s;
}

std::vector<RationalPoly> lambert_family(const RationalPoly& seed, std::size_t n_max) {
    if (seed.variable() != Variable::X && !seed.is_zero())
        throw DomainError("lambert_family: seed must be a polynomial in X");
    if (sgn(seed.coeff(0)) != 0) throw DomainError("lambert_family: seed must vanish at 0");
    std::vector<RationalPoly> out;
    out.reserve(n_max + 1);
    out.push_back(RationalPoly(seed.coeffs(), Variable::X));
    for (std::size_t n = 0; n < n_max; ++n) {
        const RationalPoly& p = out.back();
        out.push_back(p.integral() * Rational(static_cast<long>(n)) - p);
    }
    return out;
}

RationalPoly lambert_L(std::size_t n, const StirlingTable& table) {
    require_table(table, n);
    if (n == 0) return RationalPoly::monomial(-1, 1);
    std::vector<Rational> c(n + 1);
    const long sign = sign_power(static_cast<long>(n) + 1);
    for (std::size_t j = 1; j <= n; ++j)
        c[j] = make_rational(table(n, n + 1 - j) * sign, factorial(j));
    return RationalPoly(std::move(c));
}

RationalPoly lambert_L_power(std::size_t n, long k, const StirlingTable& table) {
    if (k == 0) throw DomainError("lambert_L_power: k must be nonzero");
    if (k >= 1) {
        const auto ku = static_cast<std::size_t>(k);
        if (n == 0) return RationalPoly::monomial(sign_power(k), ku);
        require_table(table, n);
        const BigInt front = factorial(ku) * binomial(n + ku - 1, n) *
                             sign_power(static_cast<long>(n) + k);
        std::vector<Rational> c(n + ku);
        for (std::size_t j = 1; j <= n; ++j)
            c[ku - 1 + j] = make_rational(front * table(n, n + 1 - j), factorial(ku - 1 + j));
        return RationalPoly(std::move(c));
    }

    const auto mk = static_cast<std::size_t>(-k);
    if (n == 0) return RationalPoly::monomial(sign_power(k), mk, Variable::Y);
    if (n <= mk) {
        // -(k/n) M_n^{(-k-n)} / (-k-n)!
        const std::size_t order = mk - n;
        RationalPoly d = nth_derivative(lambert_M(n), order);
        return d * make_rational(BigInt(-k), BigInt(static_cast<unsigned long>(n)) * factorial(order));
    }
    // (-1)^{k-1} k (n+k-1)!/n! L_n^{(1-k)}
    require_table(table, n);
    const std::size_t order = mk + 1;
    RationalPoly d = nth_derivative(lambert_L(n, table), order);
    const BigInt num = factorial(n - mk - 1) * k * sign_power(k - 1);
    return d * make_rational(num, factorial(n));
}

RationalPoly lambert_M(std::size_t n) {
    if (n == 0) throw DomainError("lambert_M: n must be >= 1");
    RationalPoly m = RationalPoly::monomial(-1, 1, Variable::Y);
    for (std::size_t j = 1; j < n; ++j)
        m = m.d_dX() * make_rational(1, static_cast<long>(j)) - m;
    return m;
}

RationalPoly lambert_M_stirling(std::size_t n, const StirlingTable& table) {
    if (n == 0) throw DomainError("lambert_M_stirling: n must be >= 1");
    require_table(table, n);
    std::vector<Rational> c(n + 1);
    const BigInt denom = factorial(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const long sign = sign_power(static_cast<long>(j) - 1);
        c[j + 1] = make_rational(table(n, j + 1) * factorial(j) * sign, denom);
    }
    return RationalPoly(std::move(c), Variable::Y);
}

RationalPoly shifted_P(std::size_t n, const StirlingTable& table) {
    require_table(table, n);
    if (n == 0) return lambert_L(0, table);
    RationalPoly p;
    for (std::size_t m = 1; m <= n; ++m)
        p += lambert_L(m, table) * Rational(binomial(n - 1, m - 1));
    return p;
}

FormalSeries compose_with_W0(const FormalSeries& f, std::size_t n_terms) {
    if (f.coeffs.size() < n_terms + 1)
        throw DomainError("compose_with_W0: input series truncated below requested order");
    FormalSeries out;
    out.coeffs.resize(n_terms + 1);
    for (std::size_t n = 0; n <= n_terms; ++n) {
        // g_m = [t^m] (1+t) e^{-nt}
        std::vector<Rational> g(n + 1);
        Rational e_prev = 1;  // (-n)^{m-1}/(m-1)!
        g[0] = 1;
        for (std::size_t m = 1; m <= n; ++m) {
            Rational e_m = e_prev * make_rational(-static_cast<long>(n), static_cast<long>(m));
            g[m] = e_m + e_prev;
            e_prev = e_m;
        }
        Rational acc = 0;
        for (std::size_t j = 0; j <= n; ++j) acc += f.coeff(j) * g[n - j];
        out.coeffs[n] = acc;
    }
    return out;
}

bool LaurentPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return sgn(c) == 0; });
}

namespace {

LaurentPoly normalized(LaurentPoly p) {
    while (!p.coeffs.empty() && sgn(p.coeffs.back()) == 0) p.coeffs.pop_back();
    std::size_t lead = 0;
    while (lead < p.coeffs.size() && sgn(p.coeffs[lead]) == 0) ++lead;
    if (lead == p.coeffs.size()) return LaurentPoly{};
    p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + static_cast<long>(lead));
    p.low += static_cast<long>(lead);
    return p;
}

}  // namespace

RationalPoly LaurentPoly::to_poly() const {
    const LaurentPoly p = normalized(*this);
    if (p.coeffs.empty()) return RationalPoly();
    const long high = p.low + static_cast<long>(p.coeffs.size()) - 1;
    if (p.low >= 0) {
        std::vector<Rational> c(static_cast<std::size_t>(high) + 1);
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) c[static_cast<std::size_t>(p.low) + i] = p.coeffs[i];
        return RationalPoly(std::move(c), Variable::X);
    }
    if (high <= 0) {
        std::vector<Rational> c(static_cast<std::size_t>(-p.low) + 1);
        for (std::size_t i = 0; i < p.coeffs.size(); ++i)
            c[static_cast<std::size_t>(-(p.low + static_cast<long>(i)))] = p.coeffs[i];
        return RationalPoly(std::move(c), Variable::Y);
    }
    throw DomainError("LaurentPoly: mixed positive and negative powers");
}

LaurentPoly LaurentPoly::from_poly(const RationalPoly& p) {
    LaurentPoly out;
    if (p.is_zero()) return out;
    if (p.variable() == Variable::X) {
        out.low = 0;
        out.coeffs = p.coeffs();
    } else {
        out.low = -p.degree();
        out.coeffs.assign(p.coeffs().rbegin(), p.coeffs().rend());
    }
    return normalized(out);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.coeffs.empty() || b.coeffs.empty()) return LaurentPoly{};
    LaurentPoly out;
    out.low = a.low + b.low;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (sgn(a.coeffs[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return normalized(std::move(out));
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.coeffs.empty()) return b;
    if (b.coeffs.empty()) return a;
    const long low = std::min(a.low, b.low);
    const long high = std::max(a.low + static_cast<long>(a.coeffs.size()),
                               b.low + static_cast<long>(b.coeffs.size()));
    LaurentPoly out;
    out.low = low;
    out.coeffs.assign(static_cast<std::size_t>(high - low), Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        out.coeffs[static_cast<std::size_t>(a.low - low) + i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
        out.coeffs[static_cast<std::size_t>(b.low - low) + i] += b.coeffs[i];
    return normalized(std::move(out));
}

namespace {

using LaurentSeries = std::vector<LaurentPoly>;

LaurentSeries truncated_product(const LaurentSeries& a, const LaurentSeries& b) {
    const std::size_t len = std::min(a.size(), b.size());
    LaurentSeries out(len);
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t i = 0; i <= n; ++i) out[n] = out[n] + a[i] * b[n - i];
    return out;
}

}  // namespace

std::vector<LaurentPoly> generating_power(long k, std::size_t n_max, const StirlingTable& table) {
    require_table(table, n_max);
    LaurentSeries f(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) f[n] = LaurentPoly::from_poly(lambert_L(n, table));

    LaurentSeries base = f;
    if (k < 0) {
        // 1/F: u_0 = 1/L_0 = -1/X, u_n = (1/X) sum_{a=1..n} L_a u_{n-a}
        const LaurentPoly inv_x{-1, {Rational(1)}};
        LaurentSeries u(n_max + 1);
        u[0] = LaurentPoly{-1, {Rational(-1)}};
        for (std::size_t n = 1; n <= n_max; ++n) {
            LaurentPoly acc;
            for (std::size_t a = 1; a <= n; ++a) acc = acc + f[a] * u[n - a];
            u[n] = inv_x * acc;
        }
        base = std::move(u);
    }

    LaurentSeries result(n_max + 1);
    result[0] = LaurentPoly{0, {Rational(1)}};
    const long reps = k < 0 ? -k : k;
    for (long r = 0; r < reps; ++r) result = truncated_product(result, base);
    return result;
}

std::string_view to_string(PolyIdentity id) {
    switch (id) {
        case PolyIdentity::PDE1: return "PDE1";
        case PolyIdentity::ODE_T: return "ODE_T";
        case PolyIdentity::L2_REL: return "L2_REL";
        case PolyIdentity::PDE_SET: return "PDE_SET";
        case PolyIdentity::LOG_ID: return "LOG_ID";
        case PolyIdentity::LNK_REC: return "LNK_REC";
        case PolyIdentity::LAPLACE_L: return "LAPLACE_L";
        case PolyIdentity::PDE2: return "PDE2";
        case PolyIdentity::M_STIRLING: return "M_STIRLING";
        case PolyIdentity::M_BETA: return "M_BETA";
        case PolyIdentity::P_REC: return "P_REC";
    }
    return "?";
}

PolyIdentity poly_identity_from_string(std::string_view name) {
    for (PolyIdentity id : kAllPolyIdentities)
        if (to_string(id) == name) return id;
    throw DomainError("unknown polynomial identity: " + std::string(name));
}

}  // namespace branchlab
