#include "cyclic/special_functions.hpp"

#include <array>
#include <cmath>

namespace cyclic::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Godfrey's coefficients for g = 7, n = 9 (relative error < 1e-13 over
// the positive reals after reflection).
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace

double gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma: argument must be positive");
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * gamma(1.0 - x));
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (x + i);
    double t = x + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

double gauss_2f1(double a, double b, double c, double z, long max_terms) {
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("gauss_2f1: z must satisfy 0 <= z < 1");
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("gauss_2f1: c must not be a non-positive integer");
    if (z == 0.0)
        return 1.0;
    double term = 1.0;
    double sum = 1.0;
    int small_streak = 0;
    for (long n = 0; n < max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) {
            if (++small_streak >= 2)
                return sum;
        } else {
            small_streak = 0;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within term cap", sum);
}

} // namespace cyclic::specfun
