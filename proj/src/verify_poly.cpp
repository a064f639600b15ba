#include <functional>
#include <memory>

#include "branchlab/polycore.hpp"

namespace branchlab {

namespace {

using Series = std::vector<RationalPoly>;

Rational q(long num, long den = 1) { return make_rational(num, den); }

Rational q(const BigInt& num, const BigInt& den = 1) { return make_rational(num, den); }

// Cauchy product, truncated to the shorter length.
Series product(const Series& a, const Series& b) {
    const std::size_t len = std::min(a.size(), b.size());
    Series out(len);
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t i = 0; i <= n; ++i) out[n] += a[i] * b[n - i];
    return out;
}

class Generator {
public:
    Generator(std::size_t n_max, const PolyTamper& tamper) : table_(n_max), tamper_(tamper) {}

    const StirlingTable& table() const { return table_; }

    Series L(std::size_t count) const {
        Series out;
        for (std::size_t n = 0; n < count; ++n) out.push_back(apply("L", n, lambert_L(n, table_)));
        return out;
    }

    RationalPoly M(std::size_t n) const { return apply("M", n, lambert_M(n)); }
    RationalPoly P(std::size_t n) const { return apply("P", n, shifted_P(n, table_)); }

    Series family(const RationalPoly& seed, std::size_t n_max) const {
        Series out = lambert_family(seed, n_max);
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = apply("family", n, std::move(out[n]));
        return out;
    }

private:
    RationalPoly apply(std::string_view fam, std::size_t n, RationalPoly p) const {
        if (tamper_) tamper_(fam, n, p);
        return p;
    }

    StirlingTable table_;
    const PolyTamper& tamper_;
};

// P is the Lambert family of A iff (1+T) dF/dX = A' + T^2 dF/dT and P_n(0) = 0.
bool lambert_pde_holds(const Series& p, const RationalPoly& seed_derivative, std::size_t n) {
    if (sgn(p[n].coeff(0)) != 0) return false;
    if (n == 0) return p[0].derivative() == seed_derivative;
    return p[n].derivative() + p[n - 1].derivative() ==
           p[n - 1] * q(static_cast<long>(n) - 1);
}

bool check_pde1(std::size_t n, const Series& L, const Series& fam,
                const RationalPoly& seed) {
    return lambert_pde_holds(L, RationalPoly::constant(-1), n) &&
           lambert_pde_holds(fam, seed.derivative(), n);
}

// T F F' + (1+T) F' + F = 0, ' = d/dT, coefficient of T^n.
bool check_ode_t(const Series& L, std::size_t n) {
    RationalPoly acc;
    for (std::size_t a = 0; a + 1 <= n; ++a) {
        const std::size_t b = n - 1 - a;
        acc += L[a] * L[b + 1] * q(static_cast<long>(b + 1));
    }
    acc += L[n + 1] * q(static_cast<long>(n + 1));
    acc += L[n] * q(static_cast<long>(n));
    acc += L[n];
    return acc.is_zero();
}

bool check_l2_rel(const Series& L, const Series& L2, std::size_t n) {
    const long nl = static_cast<long>(n);
    if (!(L2[n] == L[n].integral() * q(-2 * (nl + 1)))) return false;
    if (n == 0) return true;
    return L2[n] == (L[n + 1] + L[n]) * q(-2 * (nl + 1), nl);
}

bool check_pde_set(const Series& L, std::size_t n) {
    auto D = [&](std::size_t m) { return L[m].derivative(); };
    auto E = [&](std::size_t m) { return L[m + 1] * q(static_cast<long>(m + 1)); };

    // (TF + T + 1) dF/dX + (TF + 1) = 0
    RationalPoly first;
    for (std::size_t a = 0; a + 1 <= n; ++a) first += L[a] * D(n - 1 - a);
    if (n >= 1) first += D(n - 1) + L[n - 1];
    first += D(n);
    if (n == 0) first += RationalPoly::constant(1);
    if (!first.is_zero()) return false;

    // F dF/dX = (TF + 1) dF/dT = -T dF/dT - F
    RationalPoly lhs;
    for (std::size_t a = 0; a <= n; ++a) lhs += L[a] * D(n - a);
    RationalPoly mid = E(n);
    for (std::size_t a = 0; a + 1 <= n; ++a) mid += L[a] * E(n - 1 - a);
    const RationalPoly rhs = L[n] * q(-static_cast<long>(n) - 1);
    return lhs == mid && mid == rhs;
}

// sum_{n>=1} L_n' T^n / n = -log(F / (-X)); h = log(1 + G) with G_n = -L_n / X.
class LogIdentity {
public:
    explicit LogIdentity(const Series& L) : L_(L) {
        g_.resize(L.size());
        h_.resize(L.size());
        for (std::size_t n = 1; n < L.size(); ++n) g_[n] = -L[n].divided_by_var_power(1);
        for (std::size_t n = 1; n < L.size(); ++n) {
            RationalPoly acc = g_[n] * q(static_cast<long>(n));
            for (std::size_t j = 1; j < n; ++j) acc -= h_[j] * g_[n - j] * q(static_cast<long>(j));
            h_[n] = acc * q(1, static_cast<long>(n));
        }
    }

    bool holds(std::size_t n) const {
        return L_[n].derivative() * q(1, static_cast<long>(n)) == -h_[n];
    }

private:
    const Series& L_;
    Series g_;
    Series h_;
};

bool check_lnk_rec(const Series& L, const std::vector<Series>& powers, std::size_t n) {
    const long nl = static_cast<long>(n);
    for (long k = 2; k < static_cast<long>(powers.size()); ++k) {
        const Series& cur = powers[static_cast<std::size_t>(k)];
        const Series& prev = powers[static_cast<std::size_t>(k - 1)];
        const auto ku = static_cast<std::size_t>(k);
        // L_{n,k} = -k/(k-1) (n+k-1) int L_{n,k-1}
        if (!(cur[n] == prev[n].integral() * q(-k * (nl + k - 1), k - 1))) return false;
        // = -k/(k-1) ((n+1) L_{n+1,k-1} + (n+k-1) L_{n,k-1}) / n
        if (n >= 1) {
            RationalPoly rhs = prev[n + 1] * q(nl + 1) + prev[n] * q(nl + k - 1);
            if (!(cur[n] == rhs * q(-k, (k - 1) * nl))) return false;
        }
        // = (-1)^{k-1} k! binom(n+k-1, n) I^{k-1} L_n  (iterated integral form)
        RationalPoly iter = L[n];
        for (long r = 0; r < k - 1; ++r) iter = iter.integral();
        BigInt c = factorial(ku) * binomial(n + ku - 1, n);
        if (k % 2 == 0) c = -c;
        if (!(cur[n] == iter * q(c))) return false;
        // L_{n,k} / binom(n+k-1, n) is the Lambert family of (-X)^k
        const Rational scale = q(BigInt(1), binomial(n + ku - 1, n));
        if (n == 0) {
            if (!(cur[0] == RationalPoly::monomial(k % 2 == 0 ? 1 : -1, ku))) return false;
        } else {
            const Rational prev_scale = q(BigInt(1), binomial(n + ku - 2, n - 1));
            const RationalPoly qp = cur[n - 1] * prev_scale;
            const RationalPoly expect = qp.integral() * q(nl - 1) - qp;
            if (!(cur[n] * scale == expect)) return false;
        }
    }
    return true;
}

// int_0^inf e^{-Xt} L_n(t) dt = X^{-(n+1)} prod_{j=1}^{n-1} (j - X), multiplied by X^{n+1}.
bool check_laplace(const Series& L, std::size_t n) {
    std::vector<Rational> lhs(n + 1);
    for (std::size_t j = 1; j <= n; ++j) lhs[n - j] = L[n].coeff(j) * q(factorial(j));
    RationalPoly rhs = RationalPoly::constant(1);
    for (std::size_t j = 1; j + 1 <= n; ++j)
        rhs = rhs * RationalPoly({q(static_cast<long>(j)), q(-1)});
    return RationalPoly(std::move(lhs)) == rhs;
}

// d^2F/dX^2 = -T^2 d^2(1/F)/dT^2, i.e. L_n'' = -n(n-1) [T^n](1/F), with 1/F from
// independent Laurent series inversion.
bool check_pde2(const Series& L, const std::vector<LaurentPoly>& inverse, std::size_t n) {
    const RationalPoly lhs = L[n].derivative().derivative();
    const long nl = static_cast<long>(n);
    if (n < 2) return lhs.is_zero();
    RationalPoly u;
    try {
        u = inverse[n].to_poly();
    } catch (const DomainError&) {
        return false;
    }
    if (!u.is_zero() && u.variable() != Variable::X) return false;
    return lhs == u * q(-nl * (nl - 1));
}

// M_n(X) = n(n+1)/X^{n+1} int_0^inf L_n(-Xt)/(t+1)^{n+2} dt with
// int_0^inf t^j/(t+1)^{n+2} dt = j!(n-j)!/(n+1)!.
bool check_m_beta(const Series& L, const RationalPoly& m, std::size_t n) {
    std::vector<Rational> c(n + 2);
    const BigInt denom = factorial(n - 1);
    for (std::size_t j = 1; j <= n; ++j) {
        Rational term = L[n].coeff(j) * q(factorial(j) * factorial(n - j), denom);
        if (j % 2 == 1) term = -term;
        c[n + 1 - j] += term;
    }
    return m == RationalPoly(std::move(c), Variable::Y);
}

bool check_p_rec(const Series& P, std::size_t n) {
    const std::size_t need = n / 2 + 1;
    if (P[n].is_zero() || P[n].valuation() < need) return false;
    if (n == 0) return P[0] == RationalPoly::monomial(-1, 1);
    if (n == 1) return P[1] == RationalPoly::monomial(1, 1);
    // P_n = int_0^X ((n-1) P_{n-1} - (n-2) P_{n-2})
    const long m = static_cast<long>(n) - 1;
    return P[n] == (P[n - 1] * q(m) - P[n - 2] * q(m - 1)).integral();
}

}  // namespace

PolyVerifyReport verify_poly_identity(PolyIdentity id, std::size_t n_max, const PolyTamper& tamper) {
    PolyVerifyReport report;
    report.id = id;
    report.n_max = n_max;
    switch (id) {
        case PolyIdentity::LOG_ID:
        case PolyIdentity::LAPLACE_L:
        case PolyIdentity::M_STIRLING:
        case PolyIdentity::M_BETA:
            report.n_min = 1;
            break;
        default:
            report.n_min = 0;
    }

    Generator gen(n_max + 2, tamper);
    std::function<bool(std::size_t)> check;

    Series L;
    Series aux;
    std::vector<Series> powers;
    std::vector<LaurentPoly> inverse;
    RationalPoly seed;
    std::unique_ptr<LogIdentity> log_id;

    switch (id) {
        case PolyIdentity::PDE1:
            L = gen.L(n_max + 1);
            seed = RationalPoly({q(0), q(0), q(1), q(-3)});
            aux = gen.family(seed, n_max);
            check = [&](std::size_t n) { return check_pde1(n, L, aux, seed); };
            break;
        case PolyIdentity::ODE_T:
            L = gen.L(n_max + 2);
            check = [&](std::size_t n) { return check_ode_t(L, n); };
            break;
        case PolyIdentity::L2_REL:
            L = gen.L(n_max + 2);
            aux = product(L, L);
            check = [&](std::size_t n) { return check_l2_rel(L, aux, n); };
            break;
        case PolyIdentity::PDE_SET:
            L = gen.L(n_max + 2);
            check = [&](std::size_t n) { return check_pde_set(L, n); };
            break;
        case PolyIdentity::LOG_ID:
            L = gen.L(n_max + 1);
            log_id = std::make_unique<LogIdentity>(L);
            check = [&](std::size_t n) { return log_id->holds(n); };
            break;
        case PolyIdentity::LNK_REC:
            L = gen.L(n_max + 2);
            powers.resize(5);
            powers[1] = L;
            for (std::size_t k = 2; k < powers.size(); ++k) powers[k] = product(powers[k - 1], L);
            check = [&](std::size_t n) { return check_lnk_rec(L, powers, n); };
            break;
        case PolyIdentity::LAPLACE_L:
            L = gen.L(n_max + 1);
            check = [&](std::size_t n) { return check_laplace(L, n); };
            break;
        case PolyIdentity::PDE2: {
            L = gen.L(n_max + 1);
            // Invert the (possibly tampered) series directly.
            const LaurentPoly inv_x{-1, {Rational(1)}};
            inverse.resize(n_max + 1);
            inverse[0] = LaurentPoly{-1, {Rational(-1)}};
            for (std::size_t n = 1; n <= n_max; ++n) {
                LaurentPoly acc;
                for (std::size_t a = 1; a <= n; ++a) acc = acc + LaurentPoly::from_poly(L[a]) * inverse[n - a];
                inverse[n] = inv_x * acc;
            }
            check = [&](std::size_t n) { return check_pde2(L, inverse, n); };
            break;
        }
        case PolyIdentity::M_STIRLING:
            check = [&](std::size_t n) { return gen.M(n) == lambert_M_stirling(n, gen.table()); };
            break;
        case PolyIdentity::M_BETA:
            L = gen.L(n_max + 1);
            check = [&](std::size_t n) { return check_m_beta(L, gen.M(n), n); };
            break;
        case PolyIdentity::P_REC:
            for (std::size_t n = 0; n <= n_max; ++n) aux.push_back(gen.P(n));
            check = [&](std::size_t n) { return check_p_rec(aux, n); };
            break;
    }

    for (std::size_t n = report.n_min; n <= n_max; ++n) {
        const bool ok = check(n);
        report.holds.push_back(ok);
        if (!ok && !report.first_failure) report.first_failure = n;
    }
    return report;
}

}  // namespace branchlab
