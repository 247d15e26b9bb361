#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "tsharp/derivative_bounds.hpp"
#include "tsharp/expansion.hpp"
#include "tsharp/function.hpp"

using namespace tsharp;

namespace {

double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (static_cast<double>(eng() >> 11) * 0x1.0p-53) * (hi - lo);
}

} // namespace

TEST_CASE("weights: endpoint values and closure sum") {
    const WeightScheme w1 = weights(1, WeightVariant::closure);
    CHECK(w1.omega0 == 3.0 / 32.0);
    CHECK(w1.omegaN == -3.0 / 32.0);
    const WeightScheme w2 = weights(2, WeightVariant::closure);
    CHECK(w2.omega0 == 3.0 / 128.0);
    const WeightScheme w4 = weights(4, WeightVariant::open);
    CHECK(w4.omega0 == 3.0 / 512.0);
    CHECK(w4.omegaN == 0.0);
    for (int n = 1; n <= 64; ++n) {
        const WeightScheme w = weights(n, WeightVariant::closure);
        CHECK(w.omega0 + w.omegaN == 0.0);
    }
    CHECK_THROWS_AS(weights(0, WeightVariant::closure), std::invalid_argument);
    CHECK_NOTHROW(weights(kMaxSubintervals, WeightVariant::closure));
    CHECK_THROWS_AS(weights(kMaxSubintervals + 1, WeightVariant::closure),
                    std::invalid_argument);
}

TEST_CASE("lambda1: weighted derivative combination") {
    const Interval unit(0.0, 1.0);
    // (1/2 + 2*(2/3) + 1)/4 for ln(1+x) with two subintervals
    const double expected = (0.5 + 2.0 * (2.0 / 3.0) + 1.0) / 4.0;
    CHECK(lambda1(catalog_lookup("log1p"), unit, 2) ==
          Catch::Approx(expected).epsilon(1e-15));
    CHECK(lambda1(catalog_lookup("log1p"), unit, 2) == Catch::Approx(17.0 / 24.0).epsilon(1e-15));

    // linear function: every term is the constant slope
    const FunctionHandle lin = make_cubic(0.0, 0.0, 2.5, -1.0);
    for (int n : {1, 3, 7}) CHECK(lambda1(lin, Interval(-2.0, 3.0), n) == Catch::Approx(2.5));

    // trapezoid of the derivative of x^2 on [0,1]
    const FunctionHandle sq = make_cubic(0.0, 1.0, 0.0, 0.0);
    CHECK(lambda1(sq, unit, 1) == 1.0);
}

TEST_CASE("lambda2: endpoint second-derivative coefficient") {
    const Interval unit(0.0, 1.0);
    const double got = lambda2(catalog_lookup("log1p"), unit, 2, WeightVariant::closure);
    CHECK(got == Catch::Approx(-(3.0 / 128.0) * (-0.25 + 1.0)).epsilon(1e-15));
    CHECK(got == Catch::Approx(-9.0 / 512.0).epsilon(1e-15));

    const FunctionHandle sq = make_cubic(0.0, 1.0, 0.0, 0.0);  // constant f''
    for (int n : {1, 2, 5}) CHECK(lambda2(sq, Interval(-1.0, 4.0), n, WeightVariant::closure) == 0.0);

    const FunctionHandle cu = make_cubic(1.0, 0.0, 0.0, 0.0);
    CHECK(lambda2(cu, unit, 1, WeightVariant::closure) == Catch::Approx(-9.0 / 16.0));

    // open variant keeps only the left endpoint
    CHECK(lambda2(cu, unit, 1, WeightVariant::open) == Catch::Approx((3.0 / 32.0) * 0.0));
    CHECK(lambda2(catalog_lookup("log1p"), unit, 1, WeightVariant::open) ==
          Catch::Approx((3.0 / 32.0) * -1.0));
}

TEST_CASE("second-order expansion reproduces the ln(2) worked numbers") {
    const FunctionHandle f = catalog_lookup("log1p");
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const ExpansionReport rep = expand_second_order(f, unit, 2, db);
    CHECK(rep.estimate == Catch::Approx(1061.0 / 1536.0).margin(1e-13));
    CHECK(rep.remainder_hi == Catch::Approx(15.0 / 1536.0).margin(1e-15));
    CHECK(rep.remainder_lo == Catch::Approx(-1.0 / 256.0).margin(1e-15));
    CHECK(rep.truth == Catch::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(rep.actual_error ==
          Catch::Approx(std::log(2.0) - 1061.0 / 1536.0).margin(1e-13));
    CHECK(rep.actual_error == Catch::Approx(0.0023920).margin(1e-6));
    CHECK(rep.satisfied);
    CHECK(rep.remainder_lo <= rep.actual_error);
    CHECK(rep.actual_error <= rep.remainder_hi);
}

TEST_CASE("quadratic functions are reproduced exactly by the second-order expansion") {
    const FunctionHandle f = make_cubic(0.0, 1.5, -2.0, 0.75);
    const Interval iv(-1.0, 2.0);
    const DerivativeBounds db = derive_bounds(f, iv);
    for (int n : {1, 2, 5}) {
        const ExpansionReport rep = expand_second_order(f, iv, n, db);
        CHECK(rep.remainder_lo == 0.0);
        CHECK(rep.remainder_hi == 0.0);
        CHECK(std::abs(rep.actual_error) <= 1e-13 * std::max(1.0, std::abs(rep.truth)));
        CHECK(rep.satisfied);
    }
}

TEST_CASE("first-order expansion: estimate and symmetric envelope") {
    const FunctionHandle f = catalog_lookup("log1p");
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const ExpansionReport r1 = expand_first_order(f, unit, 1, db);
    CHECK(r1.estimate == 0.75);
    CHECK(r1.remainder_hi == Catch::Approx(3.0 / 32.0).margin(1e-16));
    CHECK(r1.remainder_lo == -r1.remainder_hi);
    CHECK(r1.actual_error == Catch::Approx(std::log(2.0) - 0.75).epsilon(1e-14));
    CHECK(r1.satisfied);
    // envelope scales as 1/n
    const ExpansionReport r4 = expand_first_order(f, unit, 4, db);
    CHECK(r4.remainder_hi == Catch::Approx(3.0 / 128.0).margin(1e-16));
    // quadratic: constant f'' makes the envelope collapse and the estimate exact
    const FunctionHandle sq = make_cubic(0.0, 2.0, 1.0, -3.0);
    const DerivativeBounds dbq = derive_bounds(sq, Interval(0.0, 2.0));
    const ExpansionReport rq = expand_first_order(sq, Interval(0.0, 2.0), 3, dbq);
    CHECK(rq.remainder_lo == 0.0);
    CHECK(rq.remainder_hi == 0.0);
    CHECK(std::abs(rq.actual_error) <= 1e-12);
}

TEST_CASE("classical expansion and its envelope") {
    const FunctionHandle f = catalog_lookup("log1p");
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const ExpansionReport rep = expand_classical(f, unit, db);
    CHECK(rep.estimate == 0.5);
    CHECK(rep.remainder_lo == Catch::Approx(1.0 / 24.0).margin(1e-16));
    CHECK(rep.remainder_hi == Catch::Approx(1.0 / 3.0).margin(1e-16));
    CHECK(rep.actual_error == Catch::Approx(0.1931472).margin(1e-7));
    CHECK(rep.satisfied);
    const double sym = std::max(std::abs(db.m3), std::abs(db.M3)) / 6.0;
    CHECK(sym == Catch::Approx(1.0 / 3.0).margin(1e-16));
}

TEST_CASE("the constant behind the remainder formula: integral of s^2 - s + 3/16 is 1/48") {
    auto anti = [](double s) { return s * s * s / 3.0 - s * s / 2.0 + 3.0 * s / 16.0; };
    CHECK(anti(1.0) - anti(0.0) == Catch::Approx(1.0 / 48.0).margin(1e-17));
}

TEST_CASE("constant third derivative: remainder equals (b-a)^3 gamma/(96 n^2)") {
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const double c3 = uniform(eng, -2.0, 2.0);
        const FunctionHandle f =
            make_cubic(c3, uniform(eng, -2.0, 2.0), uniform(eng, -2.0, 2.0), uniform(eng, -2.0, 2.0));
        const double lo = uniform(eng, -3.0, 2.0);
        const Interval iv(lo, lo + uniform(eng, 0.3, 2.5));
        const DerivativeBounds db = derive_bounds(f, iv);
        const double w3 = iv.width() * iv.width() * iv.width();
        for (int n : {1, 2, 4, 8}) {
            const ExpansionReport rep = expand_second_order(f, iv, n, db);
            const double predicted = w3 * 6.0 * c3 / (96.0 * n * n);
            CHECK(std::abs(rep.actual_error - predicted) <=
                  1e-10 * std::max(1.0, std::abs(rep.truth)));
            // envelope collapses to that same point when m3 == M3
            CHECK(rep.remainder_lo == rep.remainder_hi);
            CHECK(rep.remainder_lo == Catch::Approx(predicted).margin(1e-14));
        }
    }
}

TEST_CASE("envelope containment across the battery, both variants") {
    struct Entry {
        FunctionHandle fn;
        Interval iv;
    };
    const double pi = 3.14159265358979323846;
    const std::vector<Entry> battery = {
        {catalog_lookup("log1p"), Interval(0.0, 1.0)},
        {catalog_lookup("exp"), Interval(-1.0, 1.0)},
        {catalog_lookup("sin"), Interval(0.0, pi / 2.0)},
        {catalog_lookup("pow", {{"p", 3.5}, {"a0", -1.0}}), Interval(-1.0, 1.0)},
    };
    for (const Entry& e : battery) {
        const DerivativeBounds db = derive_bounds(e.fn, e.iv, e.fn.has_order(4), false);
        for (int n = 1; n <= 8; ++n) {
            INFO(e.fn.spec() << " n=" << n);
            CHECK(expand_first_order(e.fn, e.iv, n, db).satisfied);
            CHECK(expand_second_order(e.fn, e.iv, n, db, WeightVariant::closure).satisfied);
            CHECK(expand_second_order(e.fn, e.iv, n, db, WeightVariant::open).satisfied);
        }
    }
}

TEST_CASE("open variant: x^3 on [0,1] attains the lower envelope end exactly") {
    const FunctionHandle f = make_cubic(1.0, 0.0, 0.0, 0.0);
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const ExpansionReport rep = expand_second_order(f, unit, 1, db, WeightVariant::open);
    CHECK(rep.estimate == 1.5);  // f(0) + lambda1 + (3/32) f''(0), all dyadic
    CHECK(rep.remainder_lo == -0.5);
    CHECK(rep.remainder_hi == 0.0625);
    CHECK(rep.actual_error == -0.5);
    CHECK(rep.satisfied);
}

TEST_CASE("classical vs optimized envelope half-width ratio is 16 n^2 / 3") {
    DerivativeBounds db;
    db.m2 = -2.0;
    db.M2 = 2.0;
    db.m3 = -1.5;
    db.M3 = 1.5;
    const FunctionHandle f = catalog_lookup("exp");
    const Interval iv(-0.25, 1.75);
    const ExpansionReport cls = expand_classical(f, iv, db);
    const double ch = (cls.remainder_hi - cls.remainder_lo) / 2.0;
    for (int n = 1; n <= 8; ++n) {
        const ExpansionReport opt = expand_second_order(f, iv, n, db);
        const double nh = (opt.remainder_hi - opt.remainder_lo) / 2.0;
        CHECK(ch / nh == Catch::Approx(16.0 * n * n / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("rearranged summation identity for weighted piecewise integrals") {
    // sum_k a_k * int_k^n u == sum_k S_k * int_k^{k+1} u with S_k the prefix sums,
    // u piecewise quadratic with closed-form piece integrals
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(eng() % 6);
        std::vector<double> a(n), piece(n);
        for (int k = 0; k < n; ++k) a[k] = uniform(eng, -3.0, 3.0);
        for (int j = 0; j < n; ++j) {
            const double q0 = uniform(eng, -2.0, 2.0);
            const double q1 = uniform(eng, -2.0, 2.0);
            const double q2 = uniform(eng, -2.0, 2.0);
            // int_j^{j+1} (q0 + q1 t + q2 t^2) dt
            auto anti = [&](double t) { return q0 * t + q1 * t * t / 2.0 + q2 * t * t * t / 3.0; };
            piece[j] = anti(j + 1.0) - anti(static_cast<double>(j));
        }
        double lhs = 0.0, rhs = 0.0, prefix = 0.0, scale = 0.0;
        for (int k = 0; k < n; ++k) {
            double tail = 0.0;
            for (int j = k; j < n; ++j) tail += piece[j];
            lhs += a[k] * tail;
            prefix += a[k];
            rhs += prefix * piece[k];
            scale += std::abs(a[k] * tail);
        }
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("expansion preconditions") {
    const FunctionHandle f = catalog_lookup("exp");
    const Interval iv(0.0, 1.0);
    DerivativeBounds db;  // all NaN
    CHECK_THROWS_AS(expand_second_order(f, iv, 1, db), std::invalid_argument);
    CHECK_THROWS_AS(expand_first_order(f, iv, 1, db), std::invalid_argument);
    CHECK_THROWS_AS(expand_classical(f, iv, db), std::invalid_argument);
    db.m3 = 1.0;
    db.M3 = 0.5;  // inverted
    CHECK_THROWS_AS(expand_second_order(f, iv, 1, db), std::invalid_argument);
    db.m3 = 0.5;
    db.M3 = 1.0;
    CHECK_NOTHROW(expand_second_order(f, iv, 1, db, WeightVariant::closure));
    // open variant additionally needs order-2 bounds
    CHECK_THROWS_AS(expand_second_order(f, iv, 1, db, WeightVariant::open),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand_second_order(f, iv, 0, db), std::invalid_argument);
}
