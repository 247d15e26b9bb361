#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tsharp/battery.hpp"
#include "tsharp/emit.hpp"

using namespace tsharp;
using nlohmann::json;

namespace {

int count_lines(const std::string& s) {
    int n = 0;
    for (char ch : s)
        if (ch == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("17-significant-digit serialization round-trips bit-exactly") {
    const std::vector<double> values = {1.0 / 3.0, std::log(2.0), 0.1, 1061.0 / 1536.0,
                                        -1.0 / 256.0, 3.14159265358979323846, 1e-300, -0.0};
    for (double v : values) {
        const double back = std::stod(fmt_g17(v));
        CHECK(back == v);
    }
}

TEST_CASE("expansion report JSON carries the schema fields and round-trips") {
    const FunctionHandle f = catalog_lookup("log1p");
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const ExpansionReport rep = expand_second_order(f, unit, 2, db);
    const EmitContext ctx{"expand", "log1p", 0.0, 1.0, 2};
    const std::string text = emit_report(ctx, rep, "second_order_closure", OutFormat::json);
    const json doc = json::parse(text);
    CHECK(doc["command"] == "expand");
    CHECK(doc["function"] == "log1p");
    CHECK(doc["interval"]["a"].get<double>() == 0.0);
    CHECK(doc["interval"]["b"].get<double>() == 1.0);
    CHECK(doc["n"] == 2);
    CHECK(doc["rule"] == "second_order_closure");
    CHECK(doc["estimate"].get<double>() == rep.estimate);
    CHECK(doc["truth"].get<double>() == rep.truth);
    CHECK(doc["actual_error"].get<double>() == rep.actual_error);
    CHECK(doc["remainder_lo"].get<double>() == rep.remainder_lo);
    CHECK(doc["remainder_hi"].get<double>() == rep.remainder_hi);
    CHECK(doc["bound_lo"].get<double>() == rep.remainder_lo);
    CHECK(doc["bound_hi"].get<double>() == rep.remainder_hi);
    CHECK(doc["satisfied"] == true);
    // the worked numbers surface verbatim
    CHECK(doc["remainder_hi"].get<double>() == 0.009765625);
    CHECK(std::abs(doc["estimate"].get<double>() - 1061.0 / 1536.0) <= 1e-13);
}

TEST_CASE("quadrature report emission: null mode for plain rules, CSV shape") {
    const FunctionHandle f = catalog_lookup("log1p");
    const Interval unit(0.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, unit);
    const QuadratureReport rep = quad_report(f, unit, QuadRule::simpson, BoundId::c3_osc, db);
    const EmitContext ctx{"quad", "log1p", 0.0, 1.0, 1};
    const json doc = json::parse(emit_report(ctx, rep, OutFormat::json));
    CHECK(doc["rule"] == "simpson");
    CHECK(doc["mode"].is_null());
    CHECK(doc["sign_variant"].is_null());
    CHECK(doc["value"].get<double>() == rep.value);
    CHECK(doc["oracle"].get<double>() == rep.oracle);
    CHECK(doc["abs_error"].get<double>() == rep.abs_error);
    CHECK(doc["bound"].get<double>() == rep.bound);
    CHECK(doc["bound_id"] == "c3_osc");

    const std::string csv = emit_report(ctx, rep, OutFormat::csv);
    CHECK(count_lines(csv) == 2);  // header + one row
    CHECK(csv.rfind("command,function,a,b,n,rule,mode,sign_variant,value,oracle,", 0) == 0);
}

TEST_CASE("composite sweep emission: one CSV row per panel count plus header") {
    const SweepResult sweep = composite_sweep(catalog_lookup("exp"), Interval(0.0, 1.0),
                                              QuadRule::simpson, {1, 2, 4, 8});
    const EmitContext ctx{"quad", "exp", 0.0, 1.0, 1};
    const std::string csv = emit_report(ctx, sweep, OutFormat::csv);
    CHECK(count_lines(csv) == 1 + 4);
    const json arr = json::parse(emit_report(ctx, sweep, OutFormat::json));
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 4);
    CHECK(arr[0]["n"] == 1);
    CHECK(arr[3]["n"] == 8);
    for (const auto& row : arr)
        CHECK(row["empirical_order"].get<double>() == sweep.empirical_order);
}

TEST_CASE("interpolation report emission: absent cubic bound becomes null") {
    const FunctionHandle pw = catalog_lookup("pow", {{"p", 3.5}, {"a0", -1.0}});
    const Interval iv(-1.0, 1.0);
    const DerivativeBounds db = derive_bounds(pw, iv, false, false);
    const InterpolationReport rep = interp_report(pw, iv, db, 101);
    const EmitContext ctx{"interp", "pow:p=3.5,a0=-1", -1.0, 1.0, 101};
    const json doc = json::parse(emit_report(ctx, rep, OutFormat::json));
    CHECK(doc["bound_cubic"].is_null());
    CHECK(doc["max_err_p2"].get<double>() == rep.max_err_p2);
    CHECK(doc["satisfied"] == true);
    // function specs contain commas; the CSV field must be quoted
    const std::string csv = emit_report(ctx, rep, OutFormat::csv);
    CHECK(csv.find("\"pow:p=3.5,a0=-1\"") != std::string::npos);
}

TEST_CASE("emission is deterministic byte for byte") {
    const FunctionHandle f = catalog_lookup("exp");
    const Interval iv(-1.0, 1.0);
    const DerivativeBounds db = derive_bounds(f, iv);
    const EmitContext ctx{"expand", "exp", -1.0, 1.0, 4};
    const ExpansionReport rep = expand_second_order(f, iv, 4, db);
    CHECK(emit_report(ctx, rep, "second_order_closure", OutFormat::json) ==
          emit_report(ctx, rep, "second_order_closure", OutFormat::json));
    CHECK(emit_bench(run_bench(), OutFormat::csv) == emit_bench(run_bench(), OutFormat::csv));
    const auto criteria = run_verify_battery(7);
    const auto criteria2 = run_verify_battery(7);
    CHECK(emit_verify(criteria, 7, 1e-12, OutFormat::json) ==
          emit_verify(criteria2, 7, 1e-12, OutFormat::json));
}

TEST_CASE("bench table shape and headline ratio columns") {
    const std::vector<BenchRow> rows = run_bench();
    CHECK(rows.size() == 3 * 9);  // three functions, nine rules each
    int n1_rows = 0;
    for (const BenchRow& row : rows) {
        CHECK(row.satisfied);
        if (row.rule == "taylor_optimized" && row.n == 1) {
            ++n1_rows;
            CHECK(row.ratio == Catch::Approx(16.0 / 3.0).epsilon(1e-12));
        }
        if (row.rule == "corrected_interpolant")
            CHECK(row.ratio == Catch::Approx(2.0528).margin(1e-3));
        if (row.rule == "corrected_simpson")
            CHECK(row.ratio == Catch::Approx(4.0 / 3.0).margin(1e-15));
    }
    CHECK(n1_rows == 3);
    const json arr = json::parse(emit_bench(rows, OutFormat::json));
    REQUIRE(arr.is_array());
    CHECK(arr.size() == rows.size());
    // deterministic order: function-major, fixed rule order
    CHECK(arr[0]["function"] == "log1p");
    CHECK(arr[0]["rule"] == "taylor_classical");
    CHECK(arr[9]["function"] == "exp");
}

TEST_CASE("verify document carries the sign-resolution metadata") {
    const auto criteria = run_verify_battery(3);
    const json doc = json::parse(emit_verify(criteria, 3, 1e-12, OutFormat::json));
    CHECK(doc["command"] == "verify");
    CHECK(doc["seed"] == 3);
    CHECK(doc["all_satisfied"] == true);
    CHECK(doc["sign_resolution"]["unique"] == true);
    CHECK(doc["sign_resolution"]["first_sign"].get<double>() == -1.0);
    const auto coeffs = doc["sign_resolution"]["second_coeffs"];
    REQUIRE(coeffs.is_array());
    CHECK(coeffs[0].get<double>() == -1.0);
    CHECK(coeffs[1].get<double>() == 2.0);
    CHECK(coeffs[2].get<double>() == -1.0);
    CHECK(doc["criteria"].size() == 10);
}
