#include "branchlab/series.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace branchlab {

namespace {

Complex horner_wide(const std::vector<Rational>& c, Complex v, mp_bitcnt_t bits) {
    const mpf_class vr(v.real(), bits), vi(v.imag(), bits);
    mpf_class ar(0, bits), ai(0, bits), t(0, bits);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        t = ar * vr - ai * vi;
        ai = ar * vi + ai * vr;
        ar = t + mpf_class(*it, bits);
    }
    return {ar.get_d(), ai.get_d()};
}

// Partial sums of first + sum_{n >= n0} term(n, |K|^-n) / K^n.
SeriesResult accumulate(const SeriesFrame& f, Complex K, std::size_t n0, Complex first,
                        const std::function<Complex(std::size_t, double)>& term, const SeriesCoefficients& c,
                        const SeriesOptions& opt) {
    if (opt.N > c.n_max())
        throw DomainError("series: N exceeds the coefficient table (" + std::to_string(c.n_max()) + ")");
    SeriesResult r;
    r.margin = convergence_margin(f, opt.predicate_cfg);
    r.converged_flag = r.margin > 0.0;
    if (!r.converged_flag && !opt.allow_divergent)
        throw DomainError("series: frame fails the convergence predicate");

    const Complex kinv = 1.0 / K;
    Complex kpow = 1.0;
    for (std::size_t i = 0; i < n0; ++i) kpow *= kinv;
    Complex sum = first;
    std::size_t small_run = 0;
    for (std::size_t n = n0; n <= opt.N; ++n) {
        const Complex t = term(n, std::abs(kpow)) * kpow;
        sum += t;
        r.terms_used = n + 1;
        r.last_term_magnitude = std::abs(t);
        kpow *= kinv;
        if (opt.early_stop) {
            small_run = r.last_term_magnitude <= opt.tol * std::abs(sum) ? small_run + 1 : 0;
            if (small_run >= 5) break;
        }
    }
    r.value = sum;
    r.tail_estimate = r.converged_flag ? r.last_term_magnitude / (1.0 - std::exp(-r.margin))
                                       : std::numeric_limits<double>::infinity();
    return r;
}

void require_nonzero_M(const SeriesFrame& f, const char* what) {
    if (f.M == 0.0) throw DomainError(std::string(what) + ": requires M != 0");
}

}  // namespace

std::string_view to_string(SeriesVariant v) {
    switch (v) {
        case SeriesVariant::general: return "general";
        case SeriesVariant::two_k_pi_i: return "two_k_pi_i";
        case SeriesVariant::two_k_pi_i_plus_logx: return "two_k_pi_i_plus_logx";
        case SeriesVariant::k_minus1_real: return "k_minus1_real";
        case SeriesVariant::shifted_K1: return "shifted_K1";
    }
    return "?";
}

SeriesVariant series_variant_from_string(std::string_view name) {
    for (auto v : {SeriesVariant::general, SeriesVariant::two_k_pi_i, SeriesVariant::two_k_pi_i_plus_logx,
                   SeriesVariant::k_minus1_real, SeriesVariant::shifted_K1})
        if (to_string(v) == name) return v;
    throw DomainError("unknown series variant: " + std::string(name));
}

std::string_view to_string(AuxKind a) {
    switch (a) {
        case AuxKind::power_j: return "power_j";
        case AuxKind::reciprocal_shift: return "reciprocal_shift";
        case AuxKind::inv_one_plus_w: return "inv_one_plus_w";
        case AuxKind::log_ratio: return "log_ratio";
    }
    return "?";
}

SeriesFrame make_frame(BranchIndex k, Complex x, SeriesVariant variant, std::optional<Complex> general_K) {
    if (x == 0.0) throw DomainError("make_frame: x must be nonzero");
    if (x.imag() == 0.0) x = Complex(x.real(), 0.0);
    SeriesFrame f;
    f.k = k;
    f.x = x;
    f.variant = variant;
    f.k_eq = k;
    const Complex two_k_pi_i = 2.0 * kPi * static_cast<double>(k) * kI;
    switch (variant) {
        case SeriesVariant::general:
            if (!general_K) throw DomainError("make_frame: general variant needs K");
            f.K = *general_K;
            break;
        case SeriesVariant::two_k_pi_i:
            if (k == 0) throw DomainError("make_frame: two_k_pi_i needs k != 0");
            f.K = two_k_pi_i;
            break;
        case SeriesVariant::two_k_pi_i_plus_logx:
            f.K = two_k_pi_i + principal_log(x);
            break;
        case SeriesVariant::k_minus1_real:
            if (k != -1 || x.imag() != 0.0 || x.real() >= 0.0 || x.real() < -kInvE)
                throw DomainError("make_frame: k_minus1_real needs k = -1 and x in [-1/e, 0[");
            f.k_eq = 0;
            f.K = std::log(-x.real());
            break;
        case SeriesVariant::shifted_K1:
            f.K = two_k_pi_i + principal_log(x) - 1.0;
            break;
    }
    if (f.K == 0.0) throw DomainError("make_frame: K = 0");
    if (variant == SeriesVariant::k_minus1_real)
        f.M = std::log(-f.K.real());
    else
        f.M = f.K + principal_log(f.K) - principal_log(x) - 2.0 * kPi * static_cast<double>(f.k_eq) * kI;
    return f;
}

double convergence_margin(const SeriesFrame& f, const PrecisionConfig& cfg) {
    // The inner pair is {-1, 0} for Im M <= 0 and its mirror {0, 1} otherwise,
    // so the predicate respects the symmetry (k, x, M) -> (-k, conj x, conj M).
    const Complex z = -std::exp(f.M - 1.0);
    const BranchIndex other = f.M.imag() > 0.0 ? 1 : -1;
    const double w0 = lambert_w(0, z, cfg).value.real();
    const double wo = lambert_w(other, z, cfg).value.real();
    return std::log(std::abs(f.K)) + 1.0 - f.M.real() + std::min(w0, wo);
}

double convergence_margin_literal(const SeriesFrame& f, const PrecisionConfig& cfg) {
    const Complex z = -std::exp(f.M - 1.0);
    const double w0 = lambert_w(0, z, cfg).value.real();
    const double wm = lambert_w(-1, z, cfg).value.real();
    return std::log(std::abs(f.K)) + 1.0 - f.M.real() + std::min(w0, wm);
}

bool series_converges(const SeriesFrame& f, const PrecisionConfig& cfg) {
    return convergence_margin(f, cfg) > 0.0;
}

bool series_bound_holds(const SeriesFrame& f) { return 2.0 * (1.0 + std::abs(f.M)) < std::abs(f.K); }

CoefficientRow::CoefficientRow(const RationalPoly& p)
    : exact(p.coeffs()), coeffs(p.to_doubles()), in_Y(p.variable() == Variable::Y) {
    if (exact.empty()) {
        exact.emplace_back(0);
        coeffs.push_back(0.0);
    }
    for (double d : coeffs) abs_coeffs.push_back(std::abs(d));
}

Complex evaluate_row(const CoefficientRow& row, Complex v, double weight) {
    if (row.in_Y) v = 1.0 / v;
    const double av = std::abs(v);
    double cond = 0.0;
    for (auto it = row.abs_coeffs.rbegin(); it != row.abs_coeffs.rend(); ++it) cond = cond * av + *it;
    const double eps = std::numeric_limits<double>::epsilon();
    const double err = cond * 4.0 * static_cast<double>(row.coeffs.size()) * eps * weight;
    if (err <= 1e-18) return horner(row.coeffs, v);
    const double extra = std::log2(std::max(1.0, cond)) + 1.0;
    const auto bits = static_cast<mp_bitcnt_t>(128.0 + std::max(0.0, extra));
    return horner_wide(row.exact, v, bits);
}

SeriesCoefficients::SeriesCoefficients(std::size_t n_max) : n_max_(n_max), table_(n_max + 2) {
    L_.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto L = lambert_L(n, table_);
        const auto d = L.derivative();
        L_.emplace_back(L);
        dL_.emplace_back(d);
        d2L_.emplace_back(d.derivative());
        P_.emplace_back(shifted_P(n, table_));
    }
}

const std::vector<CoefficientRow>& SeriesCoefficients::power(long j) const {
    if (j == 0) throw DomainError("power_j: j must be nonzero");
    std::lock_guard lock(mutex_);
    auto it = powers_.find(j);
    if (it != powers_.end()) return it->second;
    std::vector<CoefficientRow> rows;
    rows.reserve(n_max_ + 1);
    for (std::size_t n = 0; n <= n_max_; ++n) rows.emplace_back(lambert_L_power(n, j, table_));
    return powers_.emplace(j, std::move(rows)).first->second;
}

SeriesResult w_series(const SeriesFrame& f, const SeriesCoefficients& c, const SeriesOptions& opt) {
    return accumulate(f, f.K, 0, f.K, [&](std::size_t n, double w) { return evaluate_row(c.L(n), f.M, w); }, c, opt);
}

SeriesResult log_w_series(const SeriesFrame& f, const SeriesCoefficients& c, const SeriesOptions& opt) {
    return accumulate(f, f.K, 1, principal_log(f.K), [&](std::size_t n, double w) { return -evaluate_row(c.L(n), f.M, w); }, c,
                      opt);
}

SeriesResult aux_series(const SeriesFrame& f, AuxSpec which, const SeriesCoefficients& c,
                        const SeriesOptions& opt) {
    const Complex M = f.M;
    switch (which.kind) {
        case AuxKind::power_j: {
            if (which.j < 0) require_nonzero_M(f, "power_j with j < 0");
            const auto& rows = c.power(which.j);
            return accumulate(f, f.K, 0, 0.0, [&](std::size_t n, double w) { return evaluate_row(rows.at(n), M, w); }, c, opt);
        }
        case AuxKind::reciprocal_shift:
            require_nonzero_M(f, "reciprocal_shift");
            return accumulate(f, f.K, 2, 1.0 + 1.0 / f.K, [&](std::size_t n, double w) {
                const double nn = static_cast<double>(n);
                return M * evaluate_row(c.d2L(n), M, w * std::abs(M)) / (nn * (nn - 1.0));
            }, c, opt);
        case AuxKind::inv_one_plus_w:
            return accumulate(f, f.K, 1, 0.0, [&](std::size_t n, double w) { return evaluate_row(c.dL(n), M, w); }, c, opt);
        case AuxKind::log_ratio:
            require_nonzero_M(f, "log_ratio");
            return accumulate(f, f.K, 1, 0.0, [&](std::size_t n, double w) {
                return -evaluate_row(c.dL(n), M, w) / static_cast<double>(n);
            }, c, opt);
    }
    throw DomainError("aux_series: unknown kind");
}

Complex aux_direct(const SeriesFrame& f, AuxSpec which, Complex w) {
    const Complex d = w - f.K;
    switch (which.kind) {
        case AuxKind::power_j: {
            Complex p = 1.0;
            const Complex base = which.j > 0 ? d : 1.0 / d;
            for (long i = 0; i < std::labs(which.j); ++i) p *= base;
            return p;
        }
        case AuxKind::reciprocal_shift: return -f.M / d;
        case AuxKind::inv_one_plus_w: return 1.0 / (1.0 + w);
        case AuxKind::log_ratio: return principal_log(d / (-f.M));
    }
    throw DomainError("aux_direct: unknown kind");
}

SeriesResult w_series_shifted(const SeriesFrame& f, const SeriesCoefficients& c, const SeriesOptions& opt) {
    const Complex K1 = f.K + 1.0;
    if (K1 == 0.0) throw DomainError("w_series_shifted: K + 1 = 0");
    return accumulate(f, K1, 0, K1 - 1.0, [&](std::size_t n, double w) { return evaluate_row(c.P(n), f.M, w); }, c, opt);
}

std::vector<double> w_series_terms(const SeriesFrame& f, std::size_t N, const SeriesCoefficients& c) {
    if (N > c.n_max()) throw DomainError("w_series_terms: N exceeds the coefficient table");
    std::vector<double> out;
    out.reserve(N + 1);
    const Complex kinv = 1.0 / f.K;
    Complex kpow = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        // Relative accuracy is wanted here, so always take the wide path.
        out.push_back(std::abs(evaluate_row(c.L(n), f.M, std::numeric_limits<double>::max()) * kpow));
        kpow *= kinv;
    }
    return out;
}

}  // namespace branchlab
