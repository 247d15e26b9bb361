#pragma once

/// Second-order Taylor-like expansions with minimized remainder envelopes.
///
/// The optimized expansion replaces the single-point derivative term of the
/// classical formula with a weighted combination of f' at n+1 equally spaced
/// nodes plus f'' corrections at the endpoints:
///
///   f(b) = f(a) + (b-a)*Lambda1 + (b-a)^2*Lambda2 + remainder,
///
///   Lambda1 = [f'(b)+f'(a)]/(2n) + (1/n) * sum_{k=1}^{n-1} f'(a + k(b-a)/n)
///   Lambda2 = -3/(32n^2) * (f''(b) - f''(a))          (closure weights)
///           = +3/(32n^2) * f''(a)                     (open weights)
///
/// with the total remainder f(b) - estimate confined to
///   [(b-a)^3 (2 m3 - M3) / (96 n^2), (b-a)^3 (2 M3 - m3) / (96 n^2)]
/// in the closure variant; the open variant shifts the ends by
/// -3 M2 (b-a)^2/(32 n^2) and -3 m2 (b-a)^2/(32 n^2) respectively.

#include <cmath>
#include <stdexcept>

#include "tsharp/derivative_bounds.hpp"
#include "tsharp/function.hpp"
#include "tsharp/interval.hpp"

namespace tsharp {

enum class WeightVariant { closure, open };

/// Node spacing below this many subintervals underflows double resolution.
inline constexpr int kMaxSubintervals = 1'000'000;

/// Endpoint weights of the f'' correction term. Interior weights are zero.
struct WeightScheme {
    int n = 1;
    double omega0 = 0.0;
    double omegaN = 0.0;
    WeightVariant variant = WeightVariant::closure;
};

inline void check_subintervals(int n) {
    if (n < 1) throw std::invalid_argument("expansion: n must be >= 1");
    if (n > kMaxSubintervals)
        throw std::invalid_argument("expansion: n exceeds the 10^6 subinterval cap");
}

/// omega_0 = 3/(32 n^2); closure sets omega_n = -omega_0 (weights sum to zero
/// exactly), the open variant sets omega_n = 0.
inline WeightScheme weights(int n, WeightVariant variant) {
    check_subintervals(n);
    WeightScheme w;
    w.n = n;
    w.omega0 = 3.0 / (32.0 * static_cast<double>(n) * static_cast<double>(n));
    w.omegaN = variant == WeightVariant::closure ? -w.omega0 : 0.0;
    w.variant = variant;
    return w;
}

/// Trapezoid-of-derivative combination over n equal subintervals.
inline double lambda1(const FunctionHandle& f, const Interval& iv, int n) {
    check_subintervals(n);
    const double w = iv.width();
    double interior = 0.0;
    for (int k = 1; k < n; ++k) interior += f.eval(iv.a() + (static_cast<double>(k) * w) / n, 1);
    return (f.eval(iv.b(), 1) + f.eval(iv.a(), 1)) / (2.0 * n) + interior / n;
}

/// Endpoint f'' correction coefficient for the chosen weight variant.
inline double lambda2(const FunctionHandle& f, const Interval& iv, int n, WeightVariant variant) {
    const WeightScheme w = weights(n, variant);
    if (variant == WeightVariant::closure)
        return -w.omega0 * (f.eval(iv.b(), 2) - f.eval(iv.a(), 2));
    return w.omega0 * f.eval(iv.a(), 2);
}

struct ExpansionReport {
    int order = 2;           // 1 or 2
    double estimate = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;    // 0 for order 1
    double remainder_lo = 0.0;  // signed envelope for truth - estimate
    double remainder_hi = 0.0;
    double truth = 0.0;
    double actual_error = 0.0;
    bool satisfied = false;
};

inline constexpr double kDefaultTol = 1e-12;

namespace detail {

inline ExpansionReport finish_report(ExpansionReport r, const FunctionHandle& f,
                                     const Interval& iv, double tol) {
    r.truth = f.eval(iv.b(), 0);
    r.actual_error = r.truth - r.estimate;
    r.satisfied =
        r.remainder_lo - tol <= r.actual_error && r.actual_error <= r.remainder_hi + tol;
    return r;
}

} // namespace detail

/// First-order expansion: estimate = f(a) + (b-a)*Lambda1 with the symmetric
/// envelope +/- (b-a)^2 (M2 - m2) / (8n).
inline ExpansionReport expand_first_order(const FunctionHandle& f, const Interval& iv, int n,
                                          const DerivativeBounds& bounds,
                                          double tol = kDefaultTol) {
    check_subintervals(n);
    bounds.require_order2();
    const double w = iv.width();
    ExpansionReport r;
    r.order = 1;
    r.lambda1 = lambda1(f, iv, n);
    r.lambda2 = 0.0;
    r.estimate = f.eval(iv.a(), 0) + w * r.lambda1;
    const double half = w * w * (bounds.M2 - bounds.m2) / (8.0 * n);
    r.remainder_lo = -half;
    r.remainder_hi = half;
    return detail::finish_report(r, f, iv, tol);
}

/// Second-order expansion with the minimizing endpoint weights.
inline ExpansionReport expand_second_order(const FunctionHandle& f, const Interval& iv, int n,
                                           const DerivativeBounds& bounds,
                                           WeightVariant variant = WeightVariant::closure,
                                           double tol = kDefaultTol) {
    check_subintervals(n);
    bounds.require_order3();
    if (variant == WeightVariant::open) bounds.require_order2();
    const double w = iv.width();
    const double w2 = w * w;
    const double w3 = w2 * w;
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    ExpansionReport r;
    r.order = 2;
    r.lambda1 = lambda1(f, iv, n);
    r.lambda2 = lambda2(f, iv, n, variant);
    r.estimate = f.eval(iv.a(), 0) + w * r.lambda1 + w2 * r.lambda2;
    r.remainder_lo = w3 * (2.0 * bounds.m3 - bounds.M3) / (96.0 * nn);
    r.remainder_hi = w3 * (2.0 * bounds.M3 - bounds.m3) / (96.0 * nn);
    if (variant == WeightVariant::open) {
        r.remainder_lo += -3.0 * bounds.M2 * w2 / (32.0 * nn);
        r.remainder_hi += -3.0 * bounds.m2 * w2 / (32.0 * nn);
    }
    return detail::finish_report(r, f, iv, tol);
}

/// Classical second-order formula, kept for comparison: estimate =
/// f(a) + (b-a) f'(a) + (b-a)^2 f''(a)/2, envelope [(b-a)^3 m3/6, (b-a)^3 M3/6].
inline ExpansionReport expand_classical(const FunctionHandle& f, const Interval& iv,
                                        const DerivativeBounds& bounds,
                                        double tol = kDefaultTol) {
    bounds.require_order3();
    const double w = iv.width();
    ExpansionReport r;
    r.order = 2;
    r.lambda1 = f.eval(iv.a(), 1);
    r.lambda2 = f.eval(iv.a(), 2) / 2.0;
    r.estimate = f.eval(iv.a(), 0) + w * r.lambda1 + w * w * r.lambda2;
    r.remainder_lo = w * w * w * bounds.m3 / 6.0;
    r.remainder_hi = w * w * w * bounds.M3 / 6.0;
    return detail::finish_report(r, f, iv, tol);
}

} // namespace tsharp
