#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branchlab/branches.hpp"
#include "branchlab/identities.hpp"
#include "branchlab/polycore.hpp"
#include "branchlab/quadrature.hpp"
#include "branchlab/roots.hpp"
#include "branchlab/series.hpp"
#include "reference_values.hpp"

using namespace branchlab;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int number;
    std::string title;
    double time_limit;  // seconds, 0 for none
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Rational q(long n, long d = 1) { return make_rational(n, d); }
RationalPoly X(std::vector<Rational> c) { return RationalPoly(std::move(c), Variable::X); }
RationalPoly Y(std::vector<Rational> c) { return RationalPoly(std::move(c), Variable::Y); }

const Complex kIdXs[] = {1.0, 2.0, Complex(2, 1)};
const double kIdTs[] = {0.2, -0.5};

const BranchSweep& sweep_for(std::size_t i) {
    static const std::vector<BranchSweep> sweeps = [] {
        std::vector<BranchSweep> s;
        for (Complex x : kIdXs) s.emplace_back(x, 1000);
        return s;
    }();
    return sweeps.at(i);
}

constexpr SeriesVariant kGridVariants[] = {SeriesVariant::two_k_pi_i, SeriesVariant::two_k_pi_i_plus_logx};
constexpr long kGridK[] = {-3, -1, 1, 2, 5};
const Complex kGridX[] = {1.0, 10.0, -2.0, Complex(2, 1)};

const SeriesCoefficients& coeffs() {
    static const SeriesCoefficients c(120);
    return c;
}

Outcome branch_table() {
    Outcome o;
    double worst = 0.0;
    for (const auto& s : testing::kPrintedBranchTable) {
        const Complex w = lambert_w(s.k, s.x).value;
        const double err = std::max(std::abs(w.real() - s.w.real()), std::abs(w.imag() - s.w.imag()));
        worst = std::max(worst, err);
        if (err > 1e-5) o.passed = false;
    }
    o.detail = "12 values, max componentwise error " + fmt("%.2e", worst);
    return o;
}

Outcome residual_certification() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<long> kd(-20, 20);
    std::uniform_real_distribution<double> logr(std::log(0.01), std::log(100.0));
    std::uniform_real_distribution<double> theta(-kPi, kPi);
    const PrecisionConfig cfg{1e-12, 60};
    int failures = 0;
    double worst_res = 0.0, worst_ek = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const long k = kd(rng);
        double th = theta(rng);
        while ((k == 0 || k == -1) && std::abs(std::abs(th) - kPi) < 1e-6) th = theta(rng);
        const Complex x = std::polar(std::exp(logr(rng)), th);
        try {
            const auto r = lambert_w(k, x, cfg);
            const double ek = r.ek_residual / (1.0 + std::abs(r.value));
            worst_res = std::max(worst_res, r.residual);
            worst_ek = std::max(worst_ek, ek);
            if (r.residual > cfg.tol || ek > cfg.tol) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    o.passed = failures == 0;
    o.detail = std::to_string(failures) + " failures in 10000, max residual " + fmt("%.2e", worst_res) +
               ", max E_k residual / (1+|w|) " + fmt("%.2e", worst_ek);
    return o;
}

Outcome polynomial_suite() {
    Outcome o;
    int failed_ids = 0;
    for (PolyIdentity id : kAllPolyIdentities)
        if (!verify_poly_identity(id, 25).passed()) ++failed_ids;

    const StirlingTable t(30);
    std::vector<bool> printed{
        lambert_L(0, t) == X({0, -1}),
        lambert_L(1, t) == X({0, 1}),
        lambert_L(2, t) == X({0, -1, q(1, 2)}),
        lambert_L(3, t) == X({0, 1, q(-3, 2), q(1, 3)}),
        lambert_L(4, t) == X({0, -1, 3, q(-11, 6), q(1, 4)}),
        lambert_L_power(0, -1, t) == Y({0, -1}),
        lambert_L_power(1, -1, t) == Y({0, -1}),
        lambert_L_power(0, 2, t) == X({0, 0, 1}),
        lambert_M(1) == Y({0, -1}),
        lambert_M(2) == Y({0, 1, 1}),
        lambert_M(3) == Y({0, -1, q(-3, 2), -1}),
        shifted_P(0, t) == X({0, -1}),
        shifted_P(1, t) == X({0, 1}),
        shifted_P(2, t) == X({0, 0, q(1, 2)}),
        shifted_P(3, t) == X({0, 0, q(-1, 2), q(1, 3)}),
        shifted_P(4, t) == X({0, 0, 0, q(-5, 6), q(1, 4)}),
        shifted_P(5, t) == X({0, 0, 0, q(1, 2), q(-13, 12), q(1, 5)}),
    };
    // L_{0,k} = (-X)^k and L_{n,-1} = -L_n'' / (n (n - 1)).
    for (long k = 1; k <= 6; ++k) {
        std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
        c.back() = k % 2 ? -1 : 1;
        printed.push_back(lambert_L_power(0, k, t) == X(c));
    }
    for (std::size_t n = 2; n <= 25; ++n) {
        const long nn = static_cast<long>(n);
        printed.push_back(lambert_L_power(n, -1, t) ==
                          lambert_L(n, t).derivative().derivative() * q(-1, nn * (nn - 1)));
    }
    int mismatches = 0;
    for (bool b : printed)
        if (!b) ++mismatches;
    o.passed = failed_ids == 0 && mismatches == 0;
    o.detail = std::to_string(failed_ids) + " of 11 identities failed for n <= 25, " + std::to_string(mismatches) +
               " of " + std::to_string(printed.size()) + " explicit polynomials differ";
    return o;
}

Outcome identity_lab() {
    Outcome o;
    double worst = 0.0;
    int checked = 0, skipped = 0, bad = 0;
    for (std::size_t i = 0; i < std::size(kIdXs); ++i) {
        for (double t : kIdTs) {
            for (IdentityId id : kSumIdentities) {
                SumReport r;
                try {
                    r = evaluate_identity(id, sweep_for(i), t, 1000);
                } catch (const DomainError&) {
                    ++skipped;
                    continue;
                }
                ++checked;
                worst = std::max(worst, r.abs_err);
                const double e10 = r.err_trend.front().second;
                if (!(r.abs_err < 1e-3) || !(r.abs_err < e10)) ++bad;
            }
        }
    }
    o.passed = bad == 0 && checked > 0;
    o.detail = std::to_string(checked) + " cases (" + std::to_string(skipped) + " at poles), " + std::to_string(bad) +
               " failed, max abs_err at K=1000 " + fmt("%.2e", worst);
    return o;
}

Outcome products() {
    Outcome o;
    double worst_rel = 0.0, worst_cross = 0.0;
    for (std::size_t i = 0; i < std::size(kIdXs); ++i) {
        for (double t : kIdTs) {
            const auto f = evaluate_identity(IdentityId::PROD_FUND, sweep_for(i), t, 1000);
            const auto h = evaluate_identity(IdentityId::PROD_HADAMARD, sweep_for(i), t, 1000);
            worst_rel = std::max({worst_rel, f.rel_err, h.rel_err});
            worst_cross = std::max(worst_cross, h.cross_relation_err.value_or(INFINITY));
        }
    }
    o.passed = worst_rel < 2e-2 && worst_cross < 1e-10;
    o.detail = "max rel_err " + fmt("%.2e", worst_rel) + ", max cross-relation error " + fmt("%.2e", worst_cross);
    return o;
}

Outcome limit_constant() {
    Outcome o;
    const double target = std::log(2.0) / 2.0;
    const Complex c1 = constant_sum(1.0, 2000).partial;
    const Complex c2 = constant_sum(2.0, 2000).partial;
    const double e1 = std::abs(c1 - target), e2 = std::abs(c2 - target), d = std::abs(c1 - c2);
    o.passed = e1 < 0.05 && e2 < 0.05 && d < 0.05;
    o.detail = "errors " + fmt("%.2e", e1) + " (x=1), " + fmt("%.2e", e2) + " (x=2), x=1 vs x=2 " + fmt("%.2e", d);
    return o;
}

Outcome product_limit_check() {
    Outcome o;
    const double e = std::abs(product_limit(2.0, 0.0, 2000).partial - 1.0);
    o.passed = e < 0.05;
    o.detail = "|partial - 1| = " + fmt("%.2e", e);
    return o;
}

Outcome series_check() {
    Outcome o;
    const auto& c = coeffs();
    const auto f1 = make_frame(1, 1.0, SeriesVariant::two_k_pi_i_plus_logx);
    SeriesOptions opt;
    opt.N = 120;
    const double main_err = std::abs(w_series(f1, c, opt).value - lambert_w(1, 1.0).value);

    const AuxSpec kinds[] = {{AuxKind::power_j, 1}, {AuxKind::power_j, 2},        {AuxKind::power_j, -1},
                             {AuxKind::reciprocal_shift, 1}, {AuxKind::inv_one_plus_w, 1}, {AuxKind::log_ratio, 1}};
    int aux_cases = 0, aux_bad = 0, w_frames = 0, w_bad = 0;
    double aux_worst = 0.0, w_worst = 0.0;
    std::string worst_case;
    for (auto v : kGridVariants) {
        for (long k : kGridK) {
            for (Complex x : kGridX) {
                const auto f = make_frame(k, x, v);
                if (!series_converges(f)) continue;
                const Complex w = lambert_w(k, x).value;
                const double w_err = std::abs(w_series(f, c, opt).value - w);
                ++w_frames;
                if (w_err > 1e-10) ++w_bad;
                w_worst = std::max(w_worst, w_err);
                for (const auto& a : kinds) {
                    const Complex direct = aux_direct(f, a, w);
                    const double err = std::abs(aux_series(f, a, c, opt).value - direct) / std::max(1.0, std::abs(direct));
                    ++aux_cases;
                    if (err > 1e-10) ++aux_bad;
                    if (err > aux_worst) {
                        aux_worst = err;
                        std::ostringstream s;
                        s << to_string(a.kind) << " k=" << k << " x=" << x << " " << to_string(v);
                        worst_case = s.str();
                    }
                }
            }
        }
    }

    bool trivial = true;
    for (Complex w : {Complex(2, 3), Complex(-4, 12), Complex(1.5, 0)}) {
        auto f = make_frame(0, w * std::exp(w), SeriesVariant::general, w);
        f.M = 0.0;
        SeriesOptions exact;
        exact.early_stop = false;
        trivial = trivial && w_series(f, c, exact).value == w;
        for (long j : {1L, 2L, 3L}) trivial = trivial && aux_series(f, {AuxKind::power_j, j}, c, exact).value == 0.0;
    }

    o.passed = main_err <= 1e-10 && aux_bad == 0 && trivial;
    o.detail = "W_1(1) error " + fmt("%.2e", main_err) + "; aux " + std::to_string(aux_bad) + " of " +
               std::to_string(aux_cases) + " above 1e-10, worst " + fmt("%.2e", aux_worst) + " (" + worst_case +
               "); M=0 " + (trivial ? "exact" : "not exact") + "; W series on the grid " + std::to_string(w_bad) +
               " of " + std::to_string(w_frames) + " above 1e-10, worst " + fmt("%.2e", w_worst);
    return o;
}

Outcome predicate_check() {
    Outcome o;
    const auto& c = coeffs();
    int frames = 0, convergent = 0, no_decay = 0, bound_violations = 0;
    for (auto v : kGridVariants) {
        for (long k : kGridK) {
            for (Complex x : kGridX) {
                const auto f = make_frame(k, x, v);
                ++frames;
                const bool conv = series_converges(f);
                if (series_bound_holds(f) && !conv) ++bound_violations;
                if (!conv) continue;
                ++convergent;
                const auto t = w_series_terms(f, 120, c);
                double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
                for (std::size_t n = 60; n <= 120; ++n) {
                    if (t[n] == 0.0) continue;
                    const double y = std::log(t[n]);
                    sx += n;
                    sy += y;
                    sxx += double(n) * n;
                    sxy += n * y;
                    ++m;
                }
                const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
                if (!(slope < 0.0)) ++no_decay;
            }
        }
    }
    o.passed = no_decay == 0 && bound_violations == 0;
    o.detail = std::to_string(convergent) + " of " + std::to_string(frames) + " frames predicate-true, " +
               std::to_string(no_decay) + " without geometric decay, " + std::to_string(bound_violations) +
               " bound-true but predicate-false";
    return o;
}

Outcome integral_check() {
    Outcome o;
    int checked = 0, invalid = 0, bad = 0;
    double worst = 0.0;
    for (long k : {2L, 3L, 5L}) {
        for (Complex x : {Complex(1, 0), Complex(2, 1)}) {
            for (IntegralCase ic : {IntegralCase::case1, IntegralCase::case2}) {
                try {
                    integral_setup(k, x, ic);
                } catch (const DomainError&) {
                    ++invalid;
                    continue;
                }
                ++checked;
                try {
                    const double err = std::abs(integral_w(k, x, ic).value - lambert_w(k, x).value);
                    worst = std::max(worst, err);
                    if (err > 1e-8) ++bad;
                } catch (const std::exception&) {
                    ++bad;
                }
            }
        }
    }
    o.passed = bad == 0 && checked > 0;
    o.detail = std::to_string(checked) + " cases (" + std::to_string(invalid) + " outside case validity), max error " +
               fmt("%.2e", worst);
    return o;
}

Outcome jensen_check_criterion() {
    Outcome o;
    const double r1 = jensen_check(10, 1.0).residual;
    const double r2 = jensen_check(50, 3.0).residual;
    auto delta = [](long K) {
        const double rho = (2.0 * static_cast<double>(K) + 1.0) * kPi;
        return std::abs(jensen_I(rho, 1.0).value - jensen_asymptotic(rho, 1.0));
    };
    const double d20 = delta(20), d200 = delta(200);
    o.passed = r1 < 1e-6 && r2 < 1e-6 && d200 < d20;
    o.detail = "residuals " + fmt("%.2e", r1) + ", " + fmt("%.2e", r2) + "; gap " + fmt("%.4e", d200) +
               " (K=200) vs " + fmt("%.4e", d20) + " (K=20)";
    return o;
}

Outcome roots_check() {
    Outcome o;
    int root_failures = 0;
    for (std::size_t n = 1; n <= 60; ++n) {
        const auto r = real_roots(n);
        if (!r.isolation_certified || r.roots.size() != n - 1 || !r.zero_root) ++root_failures;
    }
    int interlace_failures = 0;
    for (std::size_t n = 1; n <= 40; ++n) {
        try {
            if (!interlace_check(n)) ++interlace_failures;
        } catch (const DomainError&) {
            ++interlace_failures;
        }
    }
    const auto f1 = max_root_fit(1, 50, 200);
    const auto f2 = max_root_fit(2, 50, 200);
    const double c0 = -4.34699097;
    const double e1 = std::abs(f1.c0_estimate - c0);
    const double d12 = std::abs(f1.c0_estimate - f2.c0_estimate);
    o.passed = root_failures == 0 && interlace_failures == 0 && f1.failures.empty() && f2.failures.empty() &&
               e1 < 1e-2 && d12 < 1e-2;
    o.detail = std::to_string(root_failures) + " root-count failures (n<=60), " + std::to_string(interlace_failures) +
               " interlacing failures (n<=40), C0(1) = " + fmt("%.8f", f1.c0_estimate) + " (off by " +
               fmt("%.1e", e1) + "), C0(2) = " + fmt("%.8f", f2.c0_estimate) + " (k=1 vs k=2 " + fmt("%.1e", d12) + ")";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "branch table reproduction", 1.0, branch_table},
        {2, "residual certification", 10.0, residual_certification},
        {3, "exact polynomial suite", 30.0, polynomial_suite},
        {4, "branch sum identities", 60.0, identity_lab},
        {5, "branch products", 0.0, products},
        {6, "limit constant log(2)/2", 60.0, limit_constant},
        {7, "product limit", 0.0, product_limit_check},
        {8, "convergent series", 0.0, series_check},
        {9, "convergence predicate", 0.0, predicate_check},
        {10, "integral representation", 30.0, integral_check},
        {11, "Jensen identity", 0.0, jensen_check_criterion},
        {12, "real roots and largest-root asymptotics", 600.0, roots_check},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = fmt("%.2f s", secs);
        if (c.time_limit > 0) {
            timing += fmt(" (limit %.0f s)", c.time_limit);
            if (secs >= c.time_limit) {
                o.passed = false;
                timing += " over time";
            }
        }
        if (!o.passed) ++failed;
        std::printf("%s %2d %s: %s [%s]\n", o.passed ? "PASS" : "FAIL", c.number, c.title.c_str(), o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
