#include "branchlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace branchlab {

namespace {

struct Bracket {
    Rational a, b;  // a == b for a grid point where the polynomial vanishes
    int sign_a = 0;
};

double bisect(const ExactSignPoly& e, Bracket br, double tol) {
    if (br.a == br.b) return br.a.get_d();
    const Rational width_tol(tol);
    while (br.b - br.a > width_tol) {
        Rational m = (br.a + br.b) / 2;
        const int s = e.sign_at(m);
        if (s == 0) return m.get_d();
        if (s == br.sign_a)
            br.a = m;
        else
            br.b = m;
    }
    return Rational((br.a + br.b) / 2).get_d();
}

// |p(r)| / sum |c_i| r^i, evaluated exactly at the double r.
double relative_residual(const RationalPoly& p, double r) {
    const Rational x(r);
    Rational value = 0, mass = 0;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        value = value * x + p.coeffs()[i];
        mass = mass * abs(x) + abs(p.coeffs()[i]);
    }
    return mass == 0 ? 0.0 : Rational(abs(value) / mass).get_d();
}

}  // namespace

ExactSignPoly::ExactSignPoly(const RationalPoly& p) {
    if (p.variable() != Variable::X) throw DomainError("ExactSignPoly: X-polynomial required");
    if (p.is_zero()) throw DomainError("ExactSignPoly: zero polynomial");
    BigInt l = 1;
    for (const Rational& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    c_.reserve(p.coeffs().size());
    for (const Rational& c : p.coeffs()) c_.push_back(BigInt(c.get_num() * (l / c.get_den())));
}

int ExactSignPoly::sign_at(const Rational& v) const {
    const BigInt& p = v.get_num();
    const BigInt& q = v.get_den();
    BigInt h = c_.back();
    BigInt qpow = 1;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        qpow *= q;
        h = h * p + c_[i] * qpow;
    }
    return sgn(h);
}

std::size_t ExactSignPoly::descartes_above(const Rational& a) const {
    const BigInt& p = a.get_num();
    const BigInt& q = a.get_den();
    const std::size_t d = c_.size() - 1;
    // q^d P(Z/q) has integer coefficients c_i q^(d-i); then shift Z = Y + p.
    std::vector<BigInt> t(c_.size());
    BigInt qpow = 1;
    for (std::size_t i = d + 1; i-- > 0;) {
        t[i] = c_[i] * qpow;
        qpow *= q;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = d; j-- > i;) t[j] += p * t[j + 1];
    std::size_t changes = 0;
    int last = 0;
    for (const BigInt& v : t) {
        const int s = sgn(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

RootReport positive_roots(const RationalPoly& p, const Rational& upper, double tol, std::size_t max_doublings) {
    if (p.is_zero() || p.variable() != Variable::X) throw DomainError("positive_roots: nonzero X-polynomial required");
    if (upper <= 0) throw DomainError("positive_roots: upper bound must be positive");
    RootReport r;
    const std::size_t v = p.valuation();
    r.zero_root = v > 0;
    const RationalPoly q = p.divided_by_var_power(v);
    r.expected = static_cast<std::size_t>(q.degree());
    const ExactSignPoly e(q);

    std::size_t N = std::max<std::size_t>(8, 8 * static_cast<std::size_t>(p.degree()));
    auto point = [&](std::size_t j, std::size_t n_pts) { return Rational(upper * static_cast<long>(j) / static_cast<long>(n_pts)); };
    std::vector<int> signs(N + 1);
    for (std::size_t j = 0; j <= N; ++j) signs[j] = e.sign_at(point(j, N));

    std::vector<Bracket> brackets;
    for (std::size_t level = 0;; ++level) {
        brackets.clear();
        for (std::size_t j = 1; j <= N; ++j) {
            if (signs[j] == 0) {
                const Rational x = point(j, N);
                brackets.push_back({x, x, 0});
            } else if (signs[j - 1] != 0 && signs[j - 1] != signs[j]) {
                brackets.push_back({point(j - 1, N), point(j, N), signs[j - 1]});
            }
        }
        if (brackets.size() >= r.expected || level == max_doublings) break;
        std::vector<int> finer(2 * N + 1);
        for (std::size_t j = 0; j <= N; ++j) finer[2 * j] = signs[j];
        for (std::size_t j = 0; j < N; ++j) finer[2 * j + 1] = e.sign_at(point(2 * j + 1, 2 * N));
        signs = std::move(finer);
        N *= 2;
    }
    r.grid_points = N + 1;
    r.isolation_certified = brackets.size() == r.expected;
    for (const Bracket& br : brackets) {
        const double root = bisect(e, br, tol);
        r.roots.push_back(root);
        r.residual_max = std::max(r.residual_max, relative_residual(p, root));
    }
    return r;
}

RootReport real_roots(std::size_t n, double tol, std::size_t max_doublings) {
    if (n < 1) throw DomainError("real_roots: n must be at least 1");
    const StirlingTable table(n);
    const double nd = static_cast<double>(n);
    const Rational upper(static_cast<long>(std::ceil(nd + std::log(nd) + 2.0)));
    RootReport r = positive_roots(lambert_L(n, table), upper, tol, max_doublings);
    r.n = n;
    return r;
}

bool interlace(const RootReport& lower, const RootReport& upper) {
    if (!lower.isolation_certified || !upper.isolation_certified)
        throw DomainError("interlace: root sets must be certified");
    const auto& a = lower.roots;
    const auto& b = upper.roots;
    if (b.size() != a.size() + 1) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(b[i] < a[i] && a[i] < b[i + 1])) return false;
    return true;
}

bool interlace_check(std::size_t n, double tol) {
    return interlace(real_roots(n, tol), real_roots(n + 1, tol));
}

RationalPoly root_family_poly(std::size_t n, long k, const StirlingTable& table) {
    if (k == 1) return lambert_L(n, table);
    if (k >= 2) return lambert_L_power(n, k, table);
    RationalPoly p = lambert_L(n, table);
    for (long i = 0; i < 1 - k; ++i) p = p.derivative();
    if (p.is_zero()) throw DomainError("root_family_poly: derivative order exceeds the degree");
    return p;
}

TopRoots top_roots(const RationalPoly& p, std::size_t j_max, double tol) {
    if (p.is_zero() || p.variable() != Variable::X) throw DomainError("top_roots: nonzero X-polynomial required");
    const RationalPoly q = p.divided_by_var_power(p.valuation());
    if (j_max < 1 || static_cast<long>(j_max) > q.degree())
        throw DomainError("top_roots: j_max must lie in [1, number of nonzero roots]");
    const ExactSignPoly e(q);

    Rational B = 1;
    while (e.descartes_above(B) != 0) B *= 2;

    TopRoots out;
    Rational h(1, 4);
    for (int attempt = 0; attempt < 8 && !out.certified; ++attempt, h /= 2) {
        std::vector<Bracket> found;
        Rational x = B;
        int sx = e.sign_at(x);
        while (found.size() < j_max && x > 0) {
            Rational y = x - h;
            if (y < 0) y = 0;
            const int sy = e.sign_at(y);
            if (sy == 0)
                found.push_back({y, y, 0});
            else if (sx != 0 && sx != sy)
                found.push_back({y, x, sy});
            x = y;
            sx = sy;
        }
        if (found.size() < j_max) continue;
        // Every root above lo has been bracketed iff Descartes' bound agrees.
        Rational lo = found.back().a;
        if (found.back().sign_a == 0) lo = lo - h < 0 ? Rational(0) : Rational(lo - h);
        if (e.descartes_above(lo) != j_max) continue;
        out.certified = true;
        for (const Bracket& br : found) out.roots.push_back(bisect(e, br, tol));
    }
    return out;
}

double max_root_main_term(std::size_t n, long k) {
    const double nd = static_cast<double>(n);
    return nd + std::log(nd) + kEulerGamma + static_cast<double>(k) - 1.0;
}

FitReport max_root_fit(long k, std::size_t n_lo, std::size_t n_hi, std::size_t step) {
    if (n_lo < 20 || n_hi <= n_lo) throw DomainError("max_root_fit: need n_hi > n_lo >= 20");
    if (step < 1) throw DomainError("max_root_fit: step must be positive");
    FitReport f;
    f.k = k;
    f.n_lo = n_lo;
    f.n_hi = n_hi;
    f.step = step;
    const StirlingTable table(n_hi);
    for (std::size_t n = n_lo; n <= n_hi; n += step) {
        const TopRoots t = top_roots(root_family_poly(n, k, table), 1);
        if (!t.certified) {
            f.failures.push_back(n);
            continue;
        }
        f.estimates.emplace_back(n, static_cast<double>(n) * (t.roots[0] - max_root_main_term(n, k)));
    }
    if (f.estimates.size() < 3) throw DomainError("max_root_fit: fewer than three certified points");

    for (std::size_t i = 2; i < f.estimates.size(); ++i) {
        double value = 0.0;
        for (std::size_t a = i - 2; a <= i; ++a) {
            double w = 1.0;
            const double ha = 1.0 / static_cast<double>(f.estimates[a].first);
            for (std::size_t b = i - 2; b <= i; ++b) {
                if (b == a) continue;
                const double hb = 1.0 / static_cast<double>(f.estimates[b].first);
                w *= -hb / (ha - hb);
            }
            value += w * f.estimates[a].second;
        }
        f.extrapolation_table.emplace_back(f.estimates[i].first, value);
    }
    const auto& tab = f.extrapolation_table;
    f.c0_estimate = tab.back().second;
    const std::size_t back = std::min<std::size_t>(3, tab.size() - 1);
    f.extrapolation_error = std::abs(tab.back().second - tab[tab.size() - 1 - back].second);
    return f;
}

std::vector<JthRootRow> jth_root_check(std::size_t n, std::size_t j_max) {
    if (n < 2) throw DomainError("jth_root_check: n must be at least 2");
    if (j_max < 1 || j_max > n - 1) throw DomainError("jth_root_check: j_max exceeds the number of positive roots");
    const TopRoots t = top_roots(lambert_L(n, StirlingTable(n)), j_max);
    if (!t.certified) throw DomainError("jth_root_check: top roots not certified for n=" + std::to_string(n));
    std::vector<JthRootRow> rows;
    for (std::size_t j = 1; j <= j_max; ++j) {
        double harmonic = 0.0;
        for (std::size_t m = n; m >= j; --m) harmonic += 1.0 / static_cast<double>(m);
        const double predicted = static_cast<double>(n) / static_cast<double>(j) + harmonic;
        rows.push_back({j, t.roots[j - 1], predicted, t.roots[j - 1] - predicted});
    }
    return rows;
}

}  // namespace branchlab
