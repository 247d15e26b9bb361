#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsharp {

/// Closed segment [a, b] with a < b strictly and derived midpoint c = (a+b)/2.
/// The midpoint is computed so that c - a and b - c agree to one rounding unit.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("Interval: endpoints must be finite");
        if (!(a < b))
            throw std::invalid_argument("Interval: require a < b, got [" + std::to_string(a) +
                                        ", " + std::to_string(b) + "]");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return std::midpoint(a_, b_); }
    double width() const { return b_ - a_; }

    bool contains(double x) const { return a_ <= x && x <= b_; }

private:
    double a_;
    double b_;
};

} // namespace tsharp
