#include "branchlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "branchlab/summation.hpp"

namespace branchlab {

namespace {

constexpr std::size_t kMinLevel = 3;
constexpr double kContourClearance = 0.1;

bool levels_agree(const std::vector<Complex>& cur, const std::vector<Complex>& prev, double tol) {
    for (std::size_t i = 0; i < cur.size(); ++i)
        if (std::abs(cur[i] - prev[i]) > tol * std::max(1.0, std::abs(cur[i]))) return false;
    return true;
}

double sign_of(BranchIndex k) { return k > 0 ? 1.0 : -1.0; }

std::size_t next_pow2(double v) {
    std::size_t n = 1;
    while (static_cast<double>(n) < v) n <<= 1;
    return n;
}

}  // namespace

void validate(const QuadConfig& qc) {
    if (qc.level_max < kMinLevel) throw DomainError("QuadConfig: level_max must be at least 3");
    if (!(qc.tol > 0.0)) throw DomainError("QuadConfig: tol must be positive");
    if (!(qc.truncation > 0.0)) throw DomainError("QuadConfig: truncation must be positive");
}

std::vector<QuadResult> exp_sinh_integrate(const std::function<std::vector<Complex>(double)>& f,
                                           std::size_t count, const QuadConfig& qc) {
    validate(qc);
    std::vector<CompensatedSum> sums(count);
    std::size_t evaluations = 0;
    auto add_node = [&](double u) {
        const double t = std::exp(kPi / 2.0 * std::sinh(u));
        if (t == 0.0 || !std::isfinite(t)) return;
        const double jac = t * kPi / 2.0 * std::cosh(u);
        const std::vector<Complex> vals = f(t);
        ++evaluations;
        for (std::size_t i = 0; i < count; ++i) {
            const Complex v = vals[i] * jac;
            if (std::isfinite(v.real()) && std::isfinite(v.imag())) sums[i].add(v);
        }
    };

    // Level 0: unit step; level l adds the odd multiples of 2^-l.
    const long j0 = static_cast<long>(std::floor(qc.truncation));
    for (long j = -j0; j <= j0; ++j) add_node(static_cast<double>(j));
    double h = 1.0;
    std::vector<Complex> prev(count), cur(count);
    for (std::size_t i = 0; i < count; ++i) prev[i] = sums[i].value() * h;

    for (std::size_t level = 1; level <= qc.level_max; ++level) {
        h /= 2.0;
        const long jmax = static_cast<long>(std::floor(qc.truncation / h));
        for (long j = -jmax; j <= jmax; ++j)
            if (j % 2 != 0) add_node(static_cast<double>(j) * h);
        for (std::size_t i = 0; i < count; ++i) cur[i] = sums[i].value() * h;
        if (level >= kMinLevel && levels_agree(cur, prev, qc.tol)) {
            std::vector<QuadResult> out(count);
            for (std::size_t i = 0; i < count; ++i)
                out[i] = {cur[i], std::abs(cur[i] - prev[i]), level, evaluations};
            return out;
        }
        prev = cur;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) worst = std::max(worst, std::abs(cur[i] - prev[i]));
    throw ConvergenceError("exp_sinh_integrate: no convergence by level_max", worst);
}

std::string_view to_string(IntegralCase c) { return c == IntegralCase::case1 ? "case1" : "case2"; }

IntegralCase integral_case_from_string(std::string_view name) {
    if (name == "case1" || name == "1") return IntegralCase::case1;
    if (name == "case2" || name == "2") return IntegralCase::case2;
    throw DomainError("unknown integral case: " + std::string(name));
}

IntegralSetup integral_setup(BranchIndex k, Complex x, IntegralCase which) {
    if (x == 0.0) throw DomainError("integral_w: x must be nonzero");
    const Complex log_x = principal_log(x);
    const double kd = static_cast<double>(k);
    if (which == IntegralCase::case1) {
        const bool on_cut = x.imag() == 0.0 && x.real() >= -kInvE && x.real() <= 0.0;
        if ((k == 0 || k == -1) && on_cut)
            throw DomainError("integral_w: case1 requires x outside [-1/e, 0] for k in {0, -1}");
        return {which, kPi / 2.0 + 1.0, 2.0 * kd * kPi * kI + log_x};
    }
    if (k >= -1 && k <= 1) throw DomainError("integral_w: case2 requires k outside {-1, 0, 1}");
    return {which, kPi / 2.0 - 1.0, (2.0 * kd - sign_of(k)) * kPi * kI + log_x};
}

EvalReport integral_w(BranchIndex k, Complex x, IntegralCase which, const QuadConfig& qc,
                      IntegralDetail* detail) {
    const IntegralSetup s = integral_setup(k, x, which);
    const double pi2 = kPi * kPi;
    auto integrands = [&](double t) {
        const Complex f = which == IntegralCase::case1 ? t - std::log(t) + s.K : t + std::log(t) - s.K;
        const Complex g = 1.0 / ((t * t + 1.0) * (f * f + pi2));
        return std::vector<Complex>{t * g, g};
    };
    const auto q = exp_sinh_integrate(integrands, 2, qc);
    const Complex denom = s.K * s.K + s.P * s.P;
    const Complex N = s.K / denom + q[0].value;
    const Complex D = s.P / denom - q[1].value;
    if (D == 0.0) throw ConvergenceError("integral_w: vanishing denominator", 0.0);
    const Complex w = which == IntegralCase::case1 ? N / D : -N / D;
    if (detail) *detail = {s, N, D, q[0], q[1]};

    EvalReport r{w, defining_residual(w, x), ek_residual(certifying_equation(k, x), w, x),
                 EvalMethod::integral, q[0].level};
    const double cert = std::max(qc.tol, 1e-8);
    if (!(r.residual <= cert) || !(r.ek_residual <= cert * (1.0 + std::abs(w))))
        throw ConvergenceError("integral_w: result fails the residual certificate for k=" + std::to_string(k) +
                                   " (" + std::string(to_string(which)) + ")",
                               std::max(r.residual, r.ek_residual));
    return r;
}

double log_abs_f(Complex w, double x) {
    const double log_mag = w.real() + std::log(std::abs(w));
    if (log_mag > std::log(x) + 1.0) {
        const Complex r = x * std::exp(-w) / w;
        return log_mag + std::log(std::abs(1.0 - r));
    }
    return std::log(std::abs(w * std::exp(w) - x));
}

JensenIntegral jensen_I(double rho, double x, const QuadConfig& qc) {
    validate(qc);
    if (!(x > 0.0)) throw DomainError("jensen_I: x must be positive");
    const double odd = rho / kPi;
    const double K_real = (odd - 1.0) / 2.0;
    const long K = std::lround(K_real);
    if (K < 0 || std::abs(K_real - static_cast<double>(K)) > 1e-9)
        throw DomainError("jensen_I: rho must be an odd multiple of pi");

    // Zeros inside the circle must be exactly W_k(x), |k| <= K; for x > 0 the
    // branches are symmetric under k -> -k, so k >= 0 suffices.
    const PrecisionConfig cfg{1e-10, 60};
    double clearance = std::numeric_limits<double>::infinity();
    for (long k = 0; k <= K + 1; ++k) {
        const double m = std::abs(lambert_w(k, x, cfg).value);
        const double gap = k <= K ? rho - m : m - rho;
        clearance = std::min(clearance, gap);
    }
    if (clearance < kContourClearance)
        throw DomainError("jensen_I: a zero of w e^w - x lies too near the contour");

    auto g = [&](std::size_t j, std::size_t n) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        return log_abs_f(std::polar(rho, theta), x);
    };
    std::size_t n = std::max<std::size_t>(64, next_pow2(rho));
    CompensatedSum sum;
    for (std::size_t j = 0; j < n; ++j) sum.add(g(j, n));
    double prev = 2.0 * kPi * sum.value().real() / static_cast<double>(n);
    for (std::size_t level = 1; level <= qc.level_max; ++level) {
        n *= 2;
        for (std::size_t j = 1; j < n; j += 2) sum.add(g(j, n));
        const double cur = 2.0 * kPi * sum.value().real() / static_cast<double>(n);
        const double diff = std::abs(cur - prev);
        if (level >= kMinLevel && diff <= qc.tol) return {cur, diff, n, clearance};
        prev = cur;
    }
    throw ConvergenceError("jensen_I: no convergence by level_max", std::abs(prev));
}

double jensen_trapezoid(double rho, double x, std::size_t n) {
    if (n == 0) throw DomainError("jensen_trapezoid: n must be positive");
    CompensatedSum sum;
    for (std::size_t j = 0; j < n; ++j)
        sum.add(log_abs_f(std::polar(rho, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n)), x));
    return 2.0 * kPi * sum.value().real() / static_cast<double>(n);
}

double jensen_asymptotic(double rho, double x) {
    return kPi * std::log(rho) + 2.0 * rho + kPi * std::log(x);
}

JensenReport jensen_check(long K, double x, const QuadConfig& qc) {
    if (K < 2) throw DomainError("jensen_check: K must be at least 2");
    if (!(x > 0.0)) throw DomainError("jensen_check: x must be positive");
    const double rho = (2.0 * static_cast<double>(K) + 1.0) * kPi;
    JensenReport r;
    r.K = K;
    r.x = x;
    r.integral = jensen_I(rho, x, qc);

    const PrecisionConfig cfg{1e-10, 60};
    CompensatedSum lhs;
    for (long k = -K; k <= K; ++k) lhs.add(lambert_w(k, x, cfg).value.real());
    r.lhs = lhs.value().real();
    r.rhs = 2.0 * static_cast<double>(K) * std::log(x) - (2.0 * static_cast<double>(K) + 1.0) * std::log(rho) +
            r.integral.value / (2.0 * kPi);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

}  // namespace branchlab
