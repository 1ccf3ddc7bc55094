#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cyclic::specfun {

// Tolerances for adaptive quadrature. Callers are expected to transform
// away endpoint singularities before integrating (see integrate()).
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1)
            throw std::invalid_argument("QuadratureSpec: abs_tol > 0, rel_tol > 0, max_depth >= 1 required");
    }
};

// Series did not converge within the configured term cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string what, double partial_sum)
        : std::runtime_error(std::move(what)), partial_sum_(partial_sum) {}
    double partial_sum() const { return partial_sum_; }

private:
    double partial_sum_;
};

// Quadrature could not meet the requested tolerance; carries the best
// estimate and the residual error bound.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(std::string what, double best_estimate, double error_bound)
        : std::runtime_error(std::move(what)),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}
    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

// Gamma function for x > 0 (Lanczos approximation, g = 7, 9 terms).
double gamma(double x);

// Gauss hypergeometric series sum_{n} (a)_n (b)_n / (c)_n z^n / n! for
// 0 <= z < 1. Convergence slows as z -> 1; for c = a + b the function
// diverges logarithmically there and the term cap applies.
double gauss_2f1(double a, double b, double c, double z,
                 long max_terms = 40000000L);

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth, double& defect) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || !std::isfinite(err)) {
        if (!std::isfinite(err)) defect += std::abs(whole);
        return left + right + err;
    }
    if (depth <= 0) {
        defect += std::abs(err);
        return left + right + err;
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, defect) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, defect);
}

} // namespace detail

// Adaptive Simpson quadrature of f over [lo, hi]. The integrand must be
// finite on the open interval; inverse-square-root endpoint singularities
// must be removed by substitution before calling.
template <typename F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(lo < hi))
        throw std::invalid_argument("integrate: lo < hi required");
    auto& fn = f;
    double fa = fn(lo);
    double fb = fn(hi);
    double m = 0.5 * (lo + hi);
    double fm = fn(m);
    double whole = detail::simpson(lo, fa, hi, fb, fm);
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    double defect = 0.0;
    double result = detail::adapt(fn, lo, fa, hi, fb, m, fm, whole, tol,
                                  spec.max_depth, defect);
    double bound = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (!(defect <= bound) || !std::isfinite(result))
        throw ToleranceError("integrate: tolerance not reached", result, defect);
    return result;
}

} // namespace cyclic::specfun
