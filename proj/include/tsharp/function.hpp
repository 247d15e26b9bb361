#pragma once

/// Function catalog: named real functions with analytic derivatives up to
/// order 3 (order 4 where the function is C4 on its domain). Handles are
/// immutable values; evaluation is deterministic and rejects points outside
/// the function's domain rather than returning non-finite values.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tsharp/interval.hpp"

namespace tsharp {

/// Maximal evaluation range of a catalog function. Endpoints may be infinite;
/// an open endpoint excludes the boundary point itself.
struct EvalDomain {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;

    static EvalDomain all_reals() { return {}; }
    static EvalDomain greater_than(double lo) {
        return {lo, std::numeric_limits<double>::infinity(), true, false};
    }
    static EvalDomain at_least(double lo) {
        return {lo, std::numeric_limits<double>::infinity(), false, false};
    }

    bool contains(double x) const {
        if (!std::isfinite(x)) return false;
        if (lo_open ? !(x > lo) : !(x >= lo)) return false;
        if (hi_open ? !(x < hi) : !(x <= hi)) return false;
        return true;
    }
    bool contains(const Interval& iv) const { return contains(iv.a()) && contains(iv.b()); }
};

/// Exact (inf, sup) of a derivative over an interval.
using DerivRange = std::pair<double, double>;

namespace detail {

struct FnImpl {
    std::string spec;   // canonical catalog spec, e.g. "pow:p=3.5,a0=-1"
    EvalDomain domain;
    int max_order = 3;
    // k-th derivative at x; caller has already validated x and k
    std::function<double(double, int)> kernel;
    // closed-form (inf, sup) of the k-th derivative over an interval; may be null
    std::function<std::optional<DerivRange>(int, const Interval&)> range;
};

inline std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

class FunctionHandle {
public:
    explicit FunctionHandle(std::shared_ptr<const detail::FnImpl> impl) : impl_(std::move(impl)) {}

    const std::string& spec() const { return impl_->spec; }
    const EvalDomain& domain() const { return impl_->domain; }
    int max_order() const { return impl_->max_order; }
    bool has_order(int k) const { return k >= 0 && k <= impl_->max_order; }

    /// k-th derivative at x (k = 0 is the function itself).
    double eval(double x, int k = 0) const {
        if (!has_order(k))
            throw std::invalid_argument(impl_->spec + ": derivative order " + std::to_string(k) +
                                        " unavailable (max " + std::to_string(impl_->max_order) + ")");
        if (!impl_->domain.contains(x))
            throw std::domain_error(impl_->spec + ": x = " + detail::fmt_param(x) +
                                    " outside evaluation domain");
        const double v = impl_->kernel(x, k);
        if (!std::isfinite(v))
            throw std::domain_error(impl_->spec + ": non-finite derivative of order " +
                                    std::to_string(k) + " at x = " + detail::fmt_param(x));
        return v;
    }

    /// Exact derivative range over iv when a closed form exists.
    std::optional<DerivRange> analytic_range(int k, const Interval& iv) const {
        if (!has_order(k) || !impl_->range) return std::nullopt;
        if (!impl_->domain.contains(iv)) return std::nullopt;
        return impl_->range(k, iv);
    }

private:
    std::shared_ptr<const detail::FnImpl> impl_;
};

namespace detail {

// Sorted endpoint values; valid as (inf, sup) only for derivatives monotone on iv.
inline DerivRange endpoint_range(const FnImpl& fn, int k, const Interval& iv) {
    const double va = fn.kernel(iv.a(), k);
    const double vb = fn.kernel(iv.b(), k);
    return va <= vb ? DerivRange{va, vb} : DerivRange{vb, va};
}

// Extrema of the k-th sine derivative sin(x + phase) over [a, b]: endpoint
// values computed through the kernel itself (so the range is consistent with
// evaluation), widened to the exact +/-1 whenever a crest/trough falls inside
// the interval. The lattice test gets slack on the safe (inclusive) side.
template <typename Kernel>
inline DerivRange shifted_sin_range(double phase, const Interval& iv, const Kernel& val) {
    const double pi = 3.14159265358979323846;
    const double two_pi = 2.0 * pi;
    double lo = std::min(val(iv.a()), val(iv.b()));
    double hi = std::max(val(iv.a()), val(iv.b()));
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(iv.a()), std::abs(iv.b()), 1.0});
    auto lattice_hit = [&](double first) {
        // is first + 2*pi*j in [a - slack, b + slack] for some integer j?
        const double j = std::ceil((iv.a() - slack - first) / two_pi);
        return first + two_pi * j <= iv.b() + slack;
    };
    if (lattice_hit(pi / 2.0 - phase)) hi = 1.0;
    if (lattice_hit(-pi / 2.0 - phase)) lo = -1.0;
    return {lo, hi};
}

inline FunctionHandle make_handle(FnImpl impl) {
    return FunctionHandle(std::make_shared<const detail::FnImpl>(std::move(impl)));
}

inline FunctionHandle make_log1p() {
    FnImpl fn;
    fn.spec = "log1p";
    fn.domain = EvalDomain::greater_than(-1.0);
    fn.max_order = 4;
    fn.kernel = [](double x, int k) {
        const double u = 1.0 + x;
        switch (k) {
            case 0: return std::log1p(x);
            case 1: return 1.0 / u;
            case 2: return -1.0 / (u * u);
            case 3: return 2.0 / (u * u * u);
            default: return -6.0 / (u * u * u * u);
        }
    };
    // every derivative of ln(1+x) is monotone on (-1, inf)
    fn.range = [fn](int k, const Interval& iv) -> std::optional<DerivRange> {
        return endpoint_range(fn, k, iv);
    };
    return make_handle(std::move(fn));
}

inline FunctionHandle make_exp() {
    FnImpl fn;
    fn.spec = "exp";
    fn.domain = EvalDomain::all_reals();
    fn.max_order = 4;
    fn.kernel = [](double x, int) { return std::exp(x); };
    fn.range = [fn](int k, const Interval& iv) -> std::optional<DerivRange> {
        return endpoint_range(fn, k, iv);
    };
    return make_handle(std::move(fn));
}

inline FunctionHandle make_sin() {
    FnImpl fn;
    fn.spec = "sin";
    fn.domain = EvalDomain::all_reals();
    fn.max_order = 4;
    fn.kernel = [](double x, int k) {
        switch (k & 3) {
            case 0: return std::sin(x);
            case 1: return std::cos(x);
            case 2: return -std::sin(x);
            default: return -std::cos(x);
        }
    };
    fn.range = [fn](int k, const Interval& iv) -> std::optional<DerivRange> {
        const double pi = 3.14159265358979323846;
        return shifted_sin_range((k & 3) * (pi / 2.0), iv,
                                 [&](double x) { return fn.kernel(x, k); });
    };
    return make_handle(std::move(fn));
}

inline FunctionHandle make_runge() {
    FnImpl fn;
    fn.spec = "runge";
    fn.domain = EvalDomain::all_reals();
    fn.max_order = 4;
    fn.kernel = [](double x, int k) {
        const double u = 1.0 + 25.0 * x * x;
        switch (k) {
            case 0: return 1.0 / u;
            case 1: return -50.0 * x / (u * u);
            case 2: return 50.0 * (75.0 * x * x - 1.0) / (u * u * u);
            case 3: return 15000.0 * x * (1.0 - 25.0 * x * x) / (u * u * u * u);
            default:
                return 15000.0 * (3125.0 * x * x * x * x - 250.0 * x * x + 1.0) / (u * u * u * u * u);
        }
    };
    // no tractable closed-form extrema; bounds come from sampling
    return make_handle(std::move(fn));
}

inline FunctionHandle make_cubic(double c3, double c2, double c1, double c0) {
    FnImpl fn;
    fn.spec = "cubic:c3=" + fmt_param(c3) + ",c2=" + fmt_param(c2) + ",c1=" + fmt_param(c1) +
              ",c0=" + fmt_param(c0);
    fn.domain = EvalDomain::all_reals();
    fn.max_order = 4;
    fn.kernel = [=](double x, int k) {
        switch (k) {
            case 0: return ((c3 * x + c2) * x + c1) * x + c0;
            case 1: return (3.0 * c3 * x + 2.0 * c2) * x + c1;
            case 2: return 6.0 * c3 * x + 2.0 * c2;
            case 3: return 6.0 * c3;
            default: return 0.0;
        }
    };
    fn.range = [fn](int k, const Interval& iv) -> std::optional<DerivRange> {
        if (k < 2) return std::nullopt;  // derivative may be non-monotone below order 2
        return endpoint_range(fn, k, iv);
    };
    return make_handle(std::move(fn));
}

inline FunctionHandle make_pow(double p, double a0) {
    if (!(p > 0.0)) throw std::invalid_argument("pow: parameter p must be > 0");
    if (!std::isfinite(a0)) throw std::invalid_argument("pow: parameter a0 must be finite");
    const bool integral = (p == std::floor(p));
    FnImpl fn;
    fn.spec = "pow:p=" + fmt_param(p) + ",a0=" + fmt_param(a0);
    fn.domain = integral ? EvalDomain::all_reals() : EvalDomain::at_least(a0);
    // f4 is unbounded near a0 for non-integral p < 4
    fn.max_order = (integral || p >= 4.0) ? 4 : 3;
    fn.kernel = [=](double x, int k) {
        if (integral && k > p) return 0.0;
        double coef = 1.0;
        for (int j = 0; j < k; ++j) coef *= (p - j);
        const double e = p - k;
        const double dx = x - a0;
        if (e == 0.0) return coef;
        return coef * std::pow(dx, e);
    };
    fn.range = [fn, p, a0, integral](int k, const Interval& iv) -> std::optional<DerivRange> {
        if (k < 2) return std::nullopt;
        if (integral && k > p) return DerivRange{0.0, 0.0};
        const double e = p - k;
        if (!integral && e < 0.0 && iv.a() <= a0) return std::nullopt;  // sup is unbounded
        DerivRange r = endpoint_range(fn, k, iv);
        // integral p spanning a0 with positive exponent: interior extremum 0 at a0
        if (integral && e > 0.0 && iv.a() < a0 && a0 < iv.b()) {
            r.first = std::min(r.first, 0.0);
            r.second = std::max(r.second, 0.0);
        }
        return r;
    };
    return make_handle(std::move(fn));
}

} // namespace detail

inline FunctionHandle make_cubic(double c3, double c2, double c1, double c0) {
    return detail::make_cubic(c3, c2, c1, c0);
}

/// Builds a catalog function from its name and named parameters.
/// Known names: log1p, exp, sin, runge, cubic (c3,c2,c1,c0, each defaulting
/// to 0), pow (p and a0, both required).
inline FunctionHandle catalog_lookup(const std::string& name,
                                     const std::map<std::string, double>& params = {}) {
    auto reject_params = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, _] : params) {
            bool ok = false;
            for (const char* a : allowed)
                if (key == a) ok = true;
            if (!ok) throw std::invalid_argument(name + ": unknown parameter '" + key + "'");
        }
    };
    auto get = [&](const std::string& key) -> std::optional<double> {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        return it->second;
    };
    if (name == "log1p") {
        reject_params({});
        return detail::make_log1p();
    }
    if (name == "exp") {
        reject_params({});
        return detail::make_exp();
    }
    if (name == "sin") {
        reject_params({});
        return detail::make_sin();
    }
    if (name == "runge") {
        reject_params({});
        return detail::make_runge();
    }
    if (name == "cubic") {
        reject_params({"c3", "c2", "c1", "c0"});
        return detail::make_cubic(get("c3").value_or(0.0), get("c2").value_or(0.0),
                                  get("c1").value_or(0.0), get("c0").value_or(0.0));
    }
    if (name == "pow") {
        reject_params({"p", "a0"});
        auto p = get("p");
        auto a0 = get("a0");
        if (!p || !a0) throw std::invalid_argument("pow: parameters p and a0 are required");
        return detail::make_pow(*p, *a0);
    }
    throw std::invalid_argument("unknown catalog function '" + name + "'");
}

/// Parses the catalog spec syntax shared with the CLI:
/// "log1p", "cubic:c3=1,c2=0,c1=0,c0=0", "pow:p=3.5,a0=-1".
inline FunctionHandle parse_fn_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            const std::string item = rest.substr(pos, comma - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("malformed parameter '" + item + "' in '" + spec + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            std::size_t used = 0;
            double parsed = 0.0;
            try {
                parsed = std::stod(val, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("non-numeric value for '" + key + "' in '" + spec + "'");
            }
            if (used != val.size())
                throw std::invalid_argument("non-numeric value for '" + key + "' in '" + spec + "'");
            if (!params.emplace(key, parsed).second)
                throw std::invalid_argument("duplicate parameter '" + key + "' in '" + spec + "'");
            pos = comma + 1;
        }
    }
    return catalog_lookup(name, params);
}

/// g(x) = f(x + shift); derivatives and analytic ranges carry over unchanged.
inline FunctionHandle translate(const FunctionHandle& f, double shift) {
    if (!std::isfinite(shift)) throw std::invalid_argument("translate: shift must be finite");
    detail::FnImpl fn;
    fn.spec = f.spec() + "@shift=" + detail::fmt_param(shift);
    fn.max_order = f.max_order();
    fn.domain = f.domain();
    fn.domain.lo -= shift;
    fn.domain.hi -= shift;
    fn.kernel = [f, shift](double x, int k) { return f.eval(x + shift, k); };
    fn.range = [f, shift](int k, const Interval& iv) {
        return f.analytic_range(k, Interval(iv.a() + shift, iv.b() + shift));
    };
    return detail::make_handle(std::move(fn));
}

} // namespace tsharp
