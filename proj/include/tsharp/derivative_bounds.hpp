#pragma once

/// Derivative bound oracles: (inf, sup) pairs of f'', f''', f'''' over an
/// interval and a Lipschitz constant for f'''. Catalog entries with
/// closed-form extrema report exact values (provenance analytic); everything
/// else is grid-sampled and padded so that containment failures downstream can
/// only come from formula errors, not sampling misses.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "tsharp/function.hpp"
#include "tsharp/interval.hpp"

namespace tsharp {

enum class Provenance { analytic, sampled };

struct RangeEstimate {
    double lo = 0.0;
    double hi = 0.0;
    Provenance provenance = Provenance::sampled;
};

struct LipschitzEstimate {
    double value = 0.0;
    Provenance provenance = Provenance::sampled;
};

/// (m_k, M_k) bounds for k in {2,3,4} plus a Lipschitz constant for f''';
/// provenance is analytic only when every populated field is exact.
struct DerivativeBounds {
    double m2 = std::numeric_limits<double>::quiet_NaN();
    double M2 = std::numeric_limits<double>::quiet_NaN();
    double m3 = std::numeric_limits<double>::quiet_NaN();
    double M3 = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> m4;
    std::optional<double> M4;
    std::optional<double> lipschitz3;
    Provenance provenance = Provenance::sampled;

    void require_order2() const {
        if (!(std::isfinite(m2) && std::isfinite(M2) && m2 <= M2))
            throw std::invalid_argument("DerivativeBounds: m2 <= M2 required");
    }
    void require_order3() const {
        if (!(std::isfinite(m3) && std::isfinite(M3) && m3 <= M3))
            throw std::invalid_argument("DerivativeBounds: m3 <= M3 required");
    }
    void require_order4() const {
        if (!m4 || !M4 || !(std::isfinite(*m4) && std::isfinite(*M4) && *m4 <= *M4))
            throw std::invalid_argument("DerivativeBounds: order-4 bounds missing");
    }
    void require_lipschitz() const {
        if (!lipschitz3 || !(std::isfinite(*lipschitz3) && *lipschitz3 >= 0.0))
            throw std::invalid_argument("DerivativeBounds: Lipschitz constant missing");
    }
};

namespace detail {

inline void check_grid(int grid) {
    if (grid < 33) throw std::invalid_argument("bound estimation requires grid >= 33");
}

inline void check_in_domain(const FunctionHandle& f, const Interval& iv) {
    if (!f.domain().contains(iv))
        throw std::domain_error(f.spec() + ": interval outside evaluation domain");
}

inline double grid_node(const Interval& iv, int i, int grid) {
    if (i == 0) return iv.a();
    if (i == grid - 1) return iv.b();
    return iv.a() + (static_cast<double>(i) * iv.width()) / (grid - 1);
}

} // namespace detail

/// (min, max) of the order-th derivative over iv.  Exact endpoint/extrema
/// values when the catalog entry has a closed-form range; otherwise sampled on
/// a uniform grid and widened by 5% of the spread plus one epsilon.
inline RangeEstimate estimate_bounds(const FunctionHandle& f, const Interval& iv, int order,
                                     int grid = 513) {
    if (order < 2 || order > 4)
        throw std::invalid_argument("estimate_bounds: order must be 2, 3 or 4");
    detail::check_grid(grid);
    detail::check_in_domain(f, iv);
    if (!f.has_order(order))
        throw std::invalid_argument(f.spec() + ": derivative order " + std::to_string(order) +
                                    " unavailable");
    if (auto exact = f.analytic_range(order, iv))
        return {exact->first, exact->second, Provenance::analytic};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double v = f.eval(detail::grid_node(iv, i, grid), order);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double pad = 0.05 * (hi - lo) + std::numeric_limits<double>::epsilon() *
                                              std::max({std::abs(lo), std::abs(hi), 1.0});
    return {lo - pad, hi + pad, Provenance::sampled};
}

/// Lipschitz constant for f''' over iv: sup|f''''| when order 4 is available
/// (exact when a closed-form range exists, otherwise sampled and padded 5%);
/// as a fallback, the largest slope of f''' between adjacent grid points,
/// padded 10%.
inline LipschitzEstimate estimate_lipschitz(const FunctionHandle& f, const Interval& iv,
                                            int grid = 513) {
    detail::check_grid(grid);
    detail::check_in_domain(f, iv);
    if (f.has_order(4)) {
        if (auto exact = f.analytic_range(4, iv))
            return {std::max(std::abs(exact->first), std::abs(exact->second)),
                    Provenance::analytic};
        double sup = 0.0;
        for (int i = 0; i < grid; ++i)
            sup = std::max(sup, std::abs(f.eval(detail::grid_node(iv, i, grid), 4)));
        return {1.05 * sup, Provenance::sampled};
    }
    double max_slope = 0.0;
    double prev = f.eval(iv.a(), 3);
    for (int i = 1; i < grid; ++i) {
        const double x = detail::grid_node(iv, i, grid);
        const double cur = f.eval(x, 3);
        const double dx = iv.width() / (grid - 1);
        max_slope = std::max(max_slope, std::abs(cur - prev) / dx);
        prev = cur;
    }
    return {1.10 * max_slope, Provenance::sampled};
}

/// Fills a DerivativeBounds for the orders the handle supports. Order-4 bounds
/// and the Lipschitz constant are optional extras; overall provenance is
/// analytic only if every filled component is.
inline DerivativeBounds derive_bounds(const FunctionHandle& f, const Interval& iv,
                                      bool want_order4 = true, bool want_lipschitz = true,
                                      int grid = 513) {
    DerivativeBounds out;
    const RangeEstimate r2 = estimate_bounds(f, iv, 2, grid);
    const RangeEstimate r3 = estimate_bounds(f, iv, 3, grid);
    out.m2 = r2.lo;
    out.M2 = r2.hi;
    out.m3 = r3.lo;
    out.M3 = r3.hi;
    bool analytic = r2.provenance == Provenance::analytic && r3.provenance == Provenance::analytic;
    if (want_order4 && f.has_order(4)) {
        const RangeEstimate r4 = estimate_bounds(f, iv, 4, grid);
        out.m4 = r4.lo;
        out.M4 = r4.hi;
        analytic = analytic && r4.provenance == Provenance::analytic;
    }
    if (want_lipschitz) {
        const LipschitzEstimate le = estimate_lipschitz(f, iv, grid);
        out.lipschitz3 = le.value;
        analytic = analytic && le.provenance == Provenance::analytic;
    }
    out.provenance = analytic ? Provenance::analytic : Provenance::sampled;
    return out;
}

} // namespace tsharp
