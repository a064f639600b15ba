#include "branchlab/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>

#include "branchlab/identities.hpp"
#include "branchlab/quadrature.hpp"

namespace branchlab {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

double sum_threshold(long K) { return std::max(1e-3, 1.0 / static_cast<double>(K)); }
double product_threshold(long K) { return std::max(2e-2, 1.0 / static_cast<double>(K)); }

VerifyReport verify_all(const VerifyOptions& opt) {
    if (opt.K < 1) throw DomainError("verify_all: K must be positive");
    VerifyReport report;
    report.n_max = opt.n_max;
    report.K = opt.K;

    for (PolyIdentity id : kAllPolyIdentities) {
        const PolyVerifyReport r = verify_poly_identity(id, opt.n_max, opt.tamper);
        std::string detail = "n in [" + std::to_string(r.n_min) + ", " + std::to_string(r.n_max) + "]";
        if (r.first_failure) detail += ", first failure at n = " + std::to_string(*r.first_failure);
        report.checks.push_back({"poly:" + std::string(to_string(id)), r.passed(), detail});
    }

    const Complex xs[] = {1.0, 2.0, Complex(2, 1)};
    const double ts[] = {0.2, -0.5};
    std::vector<std::unique_ptr<BranchSweep>> sweeps;
    for (Complex x : xs) sweeps.push_back(std::make_unique<BranchSweep>(x, opt.K));

    const double tau_sum = sum_threshold(opt.K);
    for (IdentityId id : kSumIdentities) {
        double worst = 0.0;
        bool trend_ok = true;
        for (const auto& sw : sweeps) {
            for (double t : ts) {
                SumOptions so;
                so.trend_points = {10};
                const SumReport r = evaluate_identity(id, *sw, t, opt.K, so);
                worst = std::max(worst, r.abs_err);
                if (opt.K > 10 && !(r.err_trend.back().second < r.err_trend.front().second)) trend_ok = false;
            }
        }
        std::string detail = "max abs_err " + format_double(worst) + " (threshold " + format_double(tau_sum) + ")";
        if (!trend_ok) detail += ", error at K not below error at K = 10";
        report.checks.push_back({"identity:" + std::string(to_string(id)), worst < tau_sum && trend_ok, detail});
    }

    const double tau_prod = product_threshold(opt.K);
    for (IdentityId id : {IdentityId::PROD_FUND, IdentityId::PROD_HADAMARD}) {
        double worst = 0.0, cross = 0.0;
        for (const auto& sw : sweeps) {
            for (double t : ts) {
                SumOptions so;
                so.trend_points = {};
                const SumReport r = evaluate_identity(id, *sw, t, opt.K, so);
                worst = std::max(worst, r.rel_err);
                if (r.cross_relation_err) cross = std::max(cross, *r.cross_relation_err);
            }
        }
        std::string detail = "max rel_err " + format_double(worst) + " (threshold " + format_double(tau_prod) + ")";
        bool ok = worst < tau_prod;
        if (id == IdentityId::PROD_HADAMARD) {
            detail += ", cross-relation " + format_double(cross);
            ok = ok && cross < 1e-10;
        }
        report.checks.push_back({"identity:" + std::string(to_string(id)), ok, detail});
    }

    for (auto [K, x] : {std::pair{10L, 1.0}, std::pair{50L, 3.0}}) {
        const JensenReport r = jensen_check(K, x);
        report.checks.push_back({"jensen:K=" + std::to_string(K) + ",x=" + format_double(x), r.residual < 1e-6,
                                 "residual " + format_double(r.residual)});
    }
    return report;
}

}  // namespace branchlab
