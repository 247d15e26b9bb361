#pragma once

/// Report serialization. JSON objects keep a fixed field order and CSV uses
/// the same columns; every floating-point number is written with 17
/// significant digits so that parsing recovers it bit-exactly.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "tsharp/expansion.hpp"
#include "tsharp/interpolation.hpp"
#include "tsharp/quadrature.hpp"

namespace tsharp {

enum class OutFormat { json, csv };

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

} // namespace detail

/// Insertion-ordered JSON object writer.
class JsonObj {
public:
    JsonObj& str(const std::string& k, const std::string& v) {
        return emit_raw(k, "\"" + detail::json_escape(v) + "\"");
    }
    JsonObj& num(const std::string& k, double v) {
        return emit_raw(k, std::isfinite(v) ? fmt_g17(v) : "null");
    }
    JsonObj& integer(const std::string& k, long long v) {
        return emit_raw(k, std::to_string(v));
    }
    JsonObj& boolean(const std::string& k, bool v) { return emit_raw(k, v ? "true" : "false"); }
    JsonObj& null(const std::string& k) { return emit_raw(k, "null"); }
    JsonObj& nested(const std::string& k, const std::string& raw_json) {
        return emit_raw(k, raw_json);
    }
    std::string close() const { return first_ ? "{}" : body_ + "}"; }

private:
    JsonObj& emit_raw(const std::string& k, const std::string& raw) {
        body_ += first_ ? "{" : ",";
        first_ = false;
        body_ += "\"" + detail::json_escape(k) + "\":" + raw;
        return *this;
    }
    std::string body_;
    bool first_ = true;
};

inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_field(cells[i]);
    }
    out += '\n';
    return out;
}

inline const char* name_of(WeightVariant v) {
    return v == WeightVariant::closure ? "closure" : "open";
}
inline const char* name_of(QuadRule r) {
    switch (r) {
        case QuadRule::simpson: return "simpson";
        case QuadRule::corrected_simpson: return "corrected_simpson";
        default: return "cheng_sun";
    }
}
inline const char* name_of(CorrectionMode m) {
    return m == CorrectionMode::literal ? "literal" : "shifted";
}
inline const char* name_of(SignVariant v) {
    return v == SignVariant::paper ? "paper" : "validated";
}
inline const char* name_of(BoundId id) {
    switch (id) {
        case BoundId::c4: return "c4";
        case BoundId::c3_sup: return "c3_sup";
        case BoundId::c3_osc: return "c3_osc";
        case BoundId::lipschitz: return "lipschitz";
        case BoundId::lipschitz_bis: return "lipschitz_bis";
        default: return "cheng_sun";
    }
}

struct EmitContext {
    std::string command;
    std::string function;
    double a = 0.0;
    double b = 0.0;
    int n = 1;
};

namespace detail {

inline std::string interval_json(const EmitContext& ctx) {
    return JsonObj().num("a", ctx.a).num("b", ctx.b).close();
}

} // namespace detail

/// rule tag for an expansion report as produced by the CLI.
inline std::string expansion_rule_tag(const ExpansionReport& r, bool classical,
                                      WeightVariant variant) {
    if (classical) return "classical";
    if (r.order == 1) return "first_order";
    return std::string("second_order_") + name_of(variant);
}

inline std::string emit_report(const EmitContext& ctx, const ExpansionReport& r,
                               const std::string& rule_tag, OutFormat format) {
    if (format == OutFormat::json) {
        return JsonObj()
            .str("command", ctx.command)
            .str("function", ctx.function)
            .nested("interval", detail::interval_json(ctx))
            .integer("n", ctx.n)
            .str("rule", rule_tag)
            .num("estimate", r.estimate)
            .num("truth", r.truth)
            .num("actual_error", r.actual_error)
            .num("abs_error", std::abs(r.actual_error))
            .num("remainder_lo", r.remainder_lo)
            .num("remainder_hi", r.remainder_hi)
            .num("bound_lo", r.remainder_lo)
            .num("bound_hi", r.remainder_hi)
            .boolean("satisfied", r.satisfied)
            .close() + "\n";
    }
    std::string out = csv_line({"command", "function", "a", "b", "n", "rule", "estimate", "truth",
                                "actual_error", "abs_error", "remainder_lo", "remainder_hi",
                                "bound_lo", "bound_hi", "satisfied"});
    out += csv_line({ctx.command, ctx.function, fmt_g17(ctx.a), fmt_g17(ctx.b),
                     std::to_string(ctx.n), rule_tag, fmt_g17(r.estimate), fmt_g17(r.truth),
                     fmt_g17(r.actual_error), fmt_g17(std::abs(r.actual_error)),
                     fmt_g17(r.remainder_lo), fmt_g17(r.remainder_hi), fmt_g17(r.remainder_lo),
                     fmt_g17(r.remainder_hi), r.satisfied ? "true" : "false"});
    return out;
}

namespace detail {

inline JsonObj quad_row_json(const EmitContext& ctx, const QuadratureReport& r) {
    JsonObj obj;
    obj.str("command", ctx.command)
        .str("function", ctx.function)
        .nested("interval", interval_json(ctx))
        .integer("n", r.panels)
        .str("rule", name_of(r.rule));
    if (r.mode) obj.str("mode", name_of(*r.mode));
    else obj.null("mode");
    if (r.sign_variant) obj.str("sign_variant", name_of(*r.sign_variant));
    else obj.null("sign_variant");
    obj.num("value", r.value)
        .num("oracle", r.oracle)
        .num("abs_error", r.abs_error)
        .num("bound", r.bound)
        .str("bound_id", name_of(r.bound_id))
        .boolean("satisfied", r.satisfied);
    return obj;
}

inline std::vector<std::string> quad_row_cells(const EmitContext& ctx, const QuadratureReport& r) {
    return {ctx.command,
            ctx.function,
            fmt_g17(ctx.a),
            fmt_g17(ctx.b),
            std::to_string(r.panels),
            name_of(r.rule),
            r.mode ? name_of(*r.mode) : "",
            r.sign_variant ? name_of(*r.sign_variant) : "",
            fmt_g17(r.value),
            fmt_g17(r.oracle),
            fmt_g17(r.abs_error),
            fmt_g17(r.bound),
            name_of(r.bound_id),
            r.satisfied ? "true" : "false"};
}

inline std::string quad_csv_header() {
    return csv_line({"command", "function", "a", "b", "n", "rule", "mode", "sign_variant",
                     "value", "oracle", "abs_error", "bound", "bound_id", "satisfied"});
}

} // namespace detail

inline std::string emit_report(const EmitContext& ctx, const QuadratureReport& r,
                               OutFormat format) {
    if (format == OutFormat::json) return detail::quad_row_json(ctx, r).close() + "\n";
    return detail::quad_csv_header() + csv_line(detail::quad_row_cells(ctx, r));
}

inline std::string emit_report(const EmitContext& ctx, const SweepResult& sweep,
                               OutFormat format) {
    if (format == OutFormat::json) {
        std::string out = "[";
        for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
            if (i) out += ",";
            JsonObj obj = detail::quad_row_json(ctx, sweep.reports[i]);
            obj.num("empirical_order", sweep.empirical_order);
            out += obj.close();
        }
        return out + "]\n";
    }
    std::string out = csv_line({"command", "function", "a", "b", "n", "rule", "mode",
                                "sign_variant", "value", "oracle", "abs_error", "bound",
                                "bound_id", "satisfied", "empirical_order"});
    for (const QuadratureReport& r : sweep.reports) {
        std::vector<std::string> cells = detail::quad_row_cells(ctx, r);
        cells.push_back(fmt_g17(sweep.empirical_order));
        out += csv_line(cells);
    }
    return out;
}

inline std::string emit_report(const EmitContext& ctx, const InterpolationReport& r,
                               OutFormat format) {
    const bool satisfied = r.satisfied_p2 && r.satisfied_corrected;
    if (format == OutFormat::json) {
        JsonObj obj;
        obj.str("command", ctx.command)
            .str("function", ctx.function)
            .nested("interval", detail::interval_json(ctx))
            .integer("n", ctx.n)
            .num("max_err_p2", r.max_err_p2)
            .num("max_err_corrected", r.max_err_corrected)
            .num("bound_sup", r.bound_sup)
            .num("bound_osc", r.bound_osc)
            .num("bound_corrected", r.bound_corrected);
        if (r.bound_cubic) obj.num("bound_cubic", *r.bound_cubic);
        else obj.null("bound_cubic");
        obj.boolean("satisfied_p2", r.satisfied_p2)
            .boolean("satisfied_corrected", r.satisfied_corrected)
            .boolean("satisfied", satisfied);
        return obj.close() + "\n";
    }
    std::string out = csv_line({"command", "function", "a", "b", "n", "max_err_p2",
                                "max_err_corrected", "bound_sup", "bound_osc", "bound_corrected",
                                "bound_cubic", "satisfied_p2", "satisfied_corrected",
                                "satisfied"});
    out += csv_line({ctx.command, ctx.function, fmt_g17(ctx.a), fmt_g17(ctx.b),
                     std::to_string(ctx.n), fmt_g17(r.max_err_p2), fmt_g17(r.max_err_corrected),
                     fmt_g17(r.bound_sup), fmt_g17(r.bound_osc), fmt_g17(r.bound_corrected),
                     r.bound_cubic ? fmt_g17(*r.bound_cubic) : "",
                     r.satisfied_p2 ? "true" : "false",
                     r.satisfied_corrected ? "true" : "false", satisfied ? "true" : "false"});
    return out;
}

} // namespace tsharp
