#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace branchlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;
inline constexpr double kInvE = 1.0 / std::numbers::e;
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr Complex kI{0.0, 1.0};

// Raised when the inputs fall outside an operation's domain (x = 0, a branch
// point, an invalid series frame, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an iterative or adaptive method exhausts its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

// Principal logarithm with arg in ]-pi, pi]. A signed-zero imaginary part is
// treated as +0 so that the negative real axis maps to +i*pi.
inline Complex principal_log(Complex z) {
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    return std::log(z);
}

inline bool on_negative_real_axis(Complex z) {
    return z.imag() == 0.0 && z.real() < 0.0;
}

}  // namespace branchlab
