#pragma once

/// Quadratic Lagrange interpolation on the nodes {a, (a+b)/2, b}, the
/// derivative-corrected quasi-interpolant that sharpens its error constant
/// from (b-a)^3/(72*sqrt(3)) to (b-a)^3/(1536*sqrt(3)), and the associated
/// error bounds.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tsharp/derivative_bounds.hpp"
#include "tsharp/function.hpp"
#include "tsharp/interval.hpp"

namespace tsharp {

inline constexpr double kSqrt3 = 1.7320508075688772935;

namespace detail {

inline void check_abscissa(const Interval& iv, double x) {
    if (!iv.contains(x))
        throw std::invalid_argument("interpolation: x outside [a, b]");
}

} // namespace detail

/// Quadratic Lagrange interpolant through (a, fa), (c, fc), (b, fb) at x.
inline double p2_interpolate(double fa, double fb, double fc, const Interval& iv, double x) {
    detail::check_abscissa(iv, x);
    const double a = iv.a(), b = iv.b(), c = iv.c();
    const double la = (x - c) * (x - b) / ((a - c) * (a - b));
    const double lb = (x - a) * (x - c) / ((b - a) * (b - c));
    const double lc = (x - a) * (x - b) / ((c - a) * (c - b));
    return la * fa + lb * fb + lc * fc;
}

struct P2ErrorBounds {
    double bound_sup = 0.0;  // (b-a)^3 * max(|m3|, |M3|) / (72*sqrt(3))
    double bound_osc = 0.0;  // (b-a)^3 * (2*M3 - m3) / (72*sqrt(3))
};

inline P2ErrorBounds p2_error_bounds(const DerivativeBounds& bounds, const Interval& iv) {
    bounds.require_order3();
    const double w3 = iv.width() * iv.width() * iv.width();
    P2ErrorBounds out;
    out.bound_sup = w3 * std::max(std::abs(bounds.m3), std::abs(bounds.M3)) / (72.0 * kSqrt3);
    out.bound_osc = w3 * (2.0 * bounds.M3 - bounds.m3) / (72.0 * kSqrt3);
    return out;
}

namespace detail {

// f' correction: prefactor (x-a)(b-x)(c-x)/(b-a)^2 times a bracket evaluated
// at the x-dependent half-points (x+a)/2, (x+c)/2, (x+b)/2 (inside [a, b]).
inline double correction_d1(const FunctionHandle& f, const Interval& iv, double x) {
    const double a = iv.a(), b = iv.b(), c = iv.c();
    const double q = (x - a) * (b - x) * (c - x);
    const double bracket = (f.eval(a, 1) - 2.0 * f.eval(c, 1) + f.eval(b, 1)) / 2.0 +
                           f.eval((x + a) / 2.0, 1) - 2.0 * f.eval((x + c) / 2.0, 1) +
                           f.eval((x + b) / 2.0, 1);
    return q / (iv.width() * iv.width()) * bracket;
}

// f'' correction with prefactor 3 (x-a)(b-x)(c-x) / (64 (b-a)^2)
inline double correction_d2(const FunctionHandle& f, const Interval& iv, double x) {
    const double a = iv.a(), b = iv.b(), c = iv.c();
    const double q = (x - a) * (b - x) * (c - x);
    const double bracket = f.eval(a, 2) * (a - x) + 2.0 * f.eval(c, 2) * (x - c) +
                           f.eval(b, 2) * (b - x);
    return 3.0 * q / (64.0 * iv.width() * iv.width()) * bracket;
}

} // namespace detail

/// Corrected quasi-interpolant: the quadratic interpolant plus the f'
/// correction minus the f'' correction, the unique sign combination under
/// which the remainder reduces to the expansion error terms and the
/// (b-a)^3/(1536*sqrt(3)) bound holds. Both corrections share the prefactor
/// (x-a)(b-x)(c-x), so the nodes reproduce f exactly.
inline double corrected_interpolant(const FunctionHandle& f, const Interval& iv, double x) {
    detail::check_abscissa(iv, x);
    const double p2 = p2_interpolate(f.eval(iv.a(), 0), f.eval(iv.b(), 0), f.eval(iv.c(), 0),
                                     iv, x);
    return p2 + detail::correction_d1(f, iv, x) - detail::correction_d2(f, iv, x);
}

/// Error bound of the corrected quasi-interpolant.
inline double corrected_bound(const DerivativeBounds& bounds, const Interval& iv) {
    bounds.require_order3();
    const double w3 = iv.width() * iv.width() * iv.width();
    return w3 * (2.0 * bounds.M3 - bounds.m3) / (1536.0 * kSqrt3);
}

/// Classical error bound of the cubic Lagrange interpolant, for comparison:
/// (b-a)^4 * max(|m4|, |M4|) / 1296.
inline double cubic_lagrange_bound(const DerivativeBounds& bounds, const Interval& iv) {
    bounds.require_order4();
    const double w = iv.width();
    return w * w * w * w * std::max(std::abs(*bounds.m4), std::abs(*bounds.M4)) / 1296.0;
}

struct InterpolationReport {
    std::vector<double> grid;
    std::vector<double> values_p2;
    std::vector<double> values_corrected;
    double max_err_p2 = 0.0;
    double max_err_corrected = 0.0;
    double bound_sup = 0.0;
    double bound_osc = 0.0;
    double bound_corrected = 0.0;
    std::optional<double> bound_cubic;  // absent when order-4 bounds are unavailable
    bool satisfied_p2 = false;
    bool satisfied_corrected = false;
};

/// Sweeps a uniform grid, recording both interpolants, their worst errors and
/// all bounds. Containment flags use tol = 1e-12 + 1e-9 * bound.
inline InterpolationReport interp_report(const FunctionHandle& f, const Interval& iv,
                                         const DerivativeBounds& bounds, int grid_size) {
    if (grid_size < 3) throw std::invalid_argument("interp_report: grid_size must be >= 3");
    InterpolationReport rep;
    rep.grid.reserve(grid_size);
    rep.values_p2.reserve(grid_size);
    rep.values_corrected.reserve(grid_size);
    const double fa = f.eval(iv.a(), 0);
    const double fb = f.eval(iv.b(), 0);
    const double fc = f.eval(iv.c(), 0);
    for (int i = 0; i < grid_size; ++i) {
        double x = iv.a() + (static_cast<double>(i) * iv.width()) / (grid_size - 1);
        if (i == grid_size - 1) x = iv.b();
        const double truth = f.eval(x, 0);
        const double vp2 = p2_interpolate(fa, fb, fc, iv, x);
        const double vcor = corrected_interpolant(f, iv, x);
        rep.grid.push_back(x);
        rep.values_p2.push_back(vp2);
        rep.values_corrected.push_back(vcor);
        rep.max_err_p2 = std::max(rep.max_err_p2, std::abs(truth - vp2));
        rep.max_err_corrected = std::max(rep.max_err_corrected, std::abs(truth - vcor));
    }
    const P2ErrorBounds pb = p2_error_bounds(bounds, iv);
    rep.bound_sup = pb.bound_sup;
    rep.bound_osc = pb.bound_osc;
    rep.bound_corrected = corrected_bound(bounds, iv);
    if (bounds.m4 && bounds.M4) rep.bound_cubic = cubic_lagrange_bound(bounds, iv);
    rep.satisfied_p2 = rep.max_err_p2 <= rep.bound_osc + (1e-12 + 1e-9 * rep.bound_osc);
    rep.satisfied_corrected =
        rep.max_err_corrected <= rep.bound_corrected + (1e-12 + 1e-9 * rep.bound_corrected);
    return rep;
}

} // namespace tsharp
