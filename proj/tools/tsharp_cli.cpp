// Command-line front end: expansions, interpolation sweeps, quadrature
// comparisons, the benchmark table and the full bound-verification battery.
// Exit codes: 0 all bounds satisfied, 1 a bound-containment check failed,
// 2 usage or evaluation error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsharp/battery.hpp"
#include "tsharp/derivative_bounds.hpp"
#include "tsharp/emit.hpp"
#include "tsharp/expansion.hpp"
#include "tsharp/function.hpp"
#include "tsharp/interpolation.hpp"
#include "tsharp/quadrature.hpp"

namespace {

double suite_tolerance() {
    const char* env = std::getenv("TAYLOR_SHARP_TOL");
    if (!env) return tsharp::kDefaultTol;
    std::size_t used = 0;
    const std::string text(env);
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("TAYLOR_SHARP_TOL is not a number: '" + text + "'");
    }
    if (used != text.size() || !(v >= 0.0))
        throw std::invalid_argument("TAYLOR_SHARP_TOL must be a nonnegative number");
    return v;
}

tsharp::OutFormat parse_format(const std::string& s) {
    if (s == "json") return tsharp::OutFormat::json;
    if (s == "csv") return tsharp::OutFormat::csv;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

struct CommonArgs {
    std::string fn_spec;
    double a = 0.0;
    double b = 1.0;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--fn", args.fn_spec,
                    "catalog function: log1p | exp | sin | runge | "
                    "cubic:c3=..,c2=..,c1=..,c0=.. | pow:p=..,a0=..")
        ->required();
    cmd->add_option("--a", args.a, "left endpoint")->required();
    cmd->add_option("--b", args.b, "right endpoint")->required();
    cmd->add_option("--format", args.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

int run_expand(const CommonArgs& common, int n, int order, const std::string& variant, int grid,
               double tol) {
    const tsharp::FunctionHandle f = tsharp::parse_fn_spec(common.fn_spec);
    const tsharp::Interval iv(common.a, common.b);
    const tsharp::DerivativeBounds db =
        tsharp::derive_bounds(f, iv, f.has_order(4), f.has_order(4), grid);
    tsharp::ExpansionReport rep;
    std::string rule_tag;
    if (variant == "classical") {
        rep = tsharp::expand_classical(f, iv, db, tol);
        rule_tag = "classical";
    } else if (order == 1) {
        rep = tsharp::expand_first_order(f, iv, n, db, tol);
        rule_tag = "first_order";
    } else {
        const tsharp::WeightVariant wv =
            variant == "open" ? tsharp::WeightVariant::open : tsharp::WeightVariant::closure;
        rep = tsharp::expand_second_order(f, iv, n, db, wv, tol);
        rule_tag = std::string("second_order_") + variant;
    }
    const tsharp::EmitContext ctx{"expand", common.fn_spec, common.a, common.b, n};
    std::cout << tsharp::emit_report(ctx, rep, rule_tag, parse_format(common.format));
    return rep.satisfied ? 0 : 1;
}

int run_interp(const CommonArgs& common, int grid, double tol) {
    (void)tol;
    const tsharp::FunctionHandle f = tsharp::parse_fn_spec(common.fn_spec);
    const tsharp::Interval iv(common.a, common.b);
    const tsharp::DerivativeBounds db =
        tsharp::derive_bounds(f, iv, f.has_order(4), f.has_order(4));
    const tsharp::InterpolationReport rep = tsharp::interp_report(f, iv, db, grid);
    const tsharp::EmitContext ctx{"interp", common.fn_spec, common.a, common.b, grid};
    std::cout << tsharp::emit_report(ctx, rep, parse_format(common.format));
    return rep.satisfied_p2 && rep.satisfied_corrected ? 0 : 1;
}

tsharp::BoundId parse_bound(const std::string& s) {
    if (s == "c4") return tsharp::BoundId::c4;
    if (s == "c3_sup") return tsharp::BoundId::c3_sup;
    if (s == "c3_osc") return tsharp::BoundId::c3_osc;
    if (s == "lipschitz") return tsharp::BoundId::lipschitz;
    if (s == "lipschitz_bis") return tsharp::BoundId::lipschitz_bis;
    if (s == "cheng_sun") return tsharp::BoundId::cheng_sun;
    throw std::invalid_argument("unknown bound id '" + s + "'");
}

int run_quad(const CommonArgs& common, const std::string& rule_name, const std::string& mode_name,
             const std::string& sign_name, std::string bound_name,
             const std::vector<int>& panels, double tol) {
    const tsharp::FunctionHandle f = tsharp::parse_fn_spec(common.fn_spec);
    const tsharp::Interval iv(common.a, common.b);
    tsharp::QuadRule rule = tsharp::QuadRule::simpson;
    if (rule_name == "corrected_simpson") rule = tsharp::QuadRule::corrected_simpson;
    else if (rule_name == "cheng_sun") rule = tsharp::QuadRule::cheng_sun;
    else if (rule_name != "simpson") throw std::invalid_argument("unknown rule '" + rule_name + "'");
    const tsharp::CorrectionMode mode = mode_name == "literal" ? tsharp::CorrectionMode::literal
                                                               : tsharp::CorrectionMode::shifted;
    const tsharp::SignVariant sv =
        sign_name == "paper" ? tsharp::SignVariant::paper : tsharp::SignVariant::validated;
    const tsharp::EmitContext ctx{"quad", common.fn_spec, common.a, common.b, 1};
    const tsharp::OutFormat format = parse_format(common.format);
    if (!panels.empty()) {
        const tsharp::SweepResult sweep = tsharp::composite_sweep(f, iv, rule, panels, tol);
        std::cout << tsharp::emit_report(ctx, sweep, format);
        for (const tsharp::QuadratureReport& rep : sweep.reports)
            if (!rep.satisfied) return 1;
        return 0;
    }
    if (bound_name.empty()) {
        switch (rule) {
            case tsharp::QuadRule::simpson: bound_name = "c3_osc"; break;
            case tsharp::QuadRule::cheng_sun: bound_name = "cheng_sun"; break;
            case tsharp::QuadRule::corrected_simpson:
                bound_name = iv.a() * iv.b() < 0.0 ? "lipschitz_bis" : "lipschitz";
                break;
        }
    }
    const tsharp::DerivativeBounds db =
        tsharp::derive_bounds(f, iv, f.has_order(4), true);
    const tsharp::QuadratureReport rep =
        tsharp::quad_report(f, iv, rule, parse_bound(bound_name), db, mode, sv, tol, 1e-13);
    std::cout << tsharp::emit_report(ctx, rep, format);
    return rep.satisfied ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified Taylor-like expansions, corrected interpolation and corrected "
                 "Simpson quadrature with verified error envelopes"};
    app.require_subcommand(1);

    CommonArgs expand_args, interp_args, quad_args;
    int expand_n = 1, expand_order = 2, expand_grid = 513;
    std::string expand_variant = "closure";
    CLI::App* expand = app.add_subcommand("expand", "Taylor-like expansion with remainder envelope");
    add_common(expand, expand_args);
    expand->add_option("--n", expand_n, "number of subintervals (ignored for classical)")
        ->check(CLI::PositiveNumber);
    expand->add_option("--order", expand_order, "expansion order: 1 | 2")
        ->check(CLI::IsMember({1, 2}));
    expand->add_option("--variant", expand_variant, "weight variant: closure | open | classical")
        ->check(CLI::IsMember({"closure", "open", "classical"}));
    expand->add_option("--grid", expand_grid, "sampling grid for derivative bounds")
        ->check(CLI::Range(33, 1 << 22));

    int interp_grid = 1001;
    CLI::App* interp = app.add_subcommand("interp", "interpolation error sweep with bounds");
    add_common(interp, interp_args);
    interp->add_option("--grid", interp_grid, "evaluation grid size")->check(CLI::Range(3, 1 << 22));

    std::string quad_rule = "simpson", quad_mode = "shifted", quad_sign = "validated",
                quad_bound_name;
    std::vector<int> quad_panels;
    CLI::App* quad = app.add_subcommand("quad", "quadrature rule vs reference oracle");
    add_common(quad, quad_args);
    quad->add_option("--rule", quad_rule, "simpson | corrected_simpson | cheng_sun")
        ->check(CLI::IsMember({"simpson", "corrected_simpson", "cheng_sun"}));
    quad->add_option("--mode", quad_mode, "corrected rule mode: shifted | literal")
        ->check(CLI::IsMember({"shifted", "literal"}));
    quad->add_option("--sign-variant", quad_sign, "corrected rule signs: validated | paper")
        ->check(CLI::IsMember({"validated", "paper"}));
    quad->add_option("--bound", quad_bound_name,
                     "c4 | c3_sup | c3_osc | lipschitz | lipschitz_bis | cheng_sun "
                     "(default depends on rule)");
    quad->add_option("--panels", quad_panels, "composite sweep panel counts, e.g. 1,2,4,8,16")
        ->delimiter(',');

    std::string bench_format = "json";
    CLI::App* bench = app.add_subcommand("bench", "comparison table over the function battery");
    bench->add_option("--format", bench_format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::uint64_t verify_seed = 0;
    std::string verify_format = "json";
    CLI::App* verify = app.add_subcommand("verify", "run the full bound-verification battery");
    verify->add_option("--seed", verify_seed, "seed for randomized battery entries");
    verify->add_option("--format", verify_format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const double tol = suite_tolerance();
        if (expand->parsed())
            return run_expand(expand_args, expand_n, expand_order, expand_variant, expand_grid,
                              tol);
        if (interp->parsed()) return run_interp(interp_args, interp_grid, tol);
        if (quad->parsed())
            return run_quad(quad_args, quad_rule, quad_mode, quad_sign, quad_bound_name,
                            quad_panels, tol);
        if (bench->parsed()) {
            const std::vector<tsharp::BenchRow> rows = tsharp::run_bench(tol);
            std::cout << tsharp::emit_bench(rows, parse_format(bench_format));
            for (const tsharp::BenchRow& row : rows)
                if (!row.satisfied) return 1;
            return 0;
        }
        if (verify->parsed()) {
            const std::vector<tsharp::CriterionResult> criteria =
                tsharp::run_verify_battery(verify_seed, tol);
            std::cout << tsharp::emit_verify(criteria, verify_seed, tol,
                                             parse_format(verify_format));
            for (const tsharp::CriterionResult& c : criteria)
                if (!c.pass) return 1;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
