#pragma once

#include <memory>
#include <string>

#include "symcurv/curvature.hpp"
#include "symcurv/parser.hpp"

namespace symcurv {

// A chart metric together with the registry that owns its symbols and the
// ambient side conditions it was declared with.
struct MetricBundle {
    std::shared_ptr<Context> ctx;
    MetricField metric;
    AssumptionSet assumptions;
    std::string name;
};

inline void declare_physical_constants(Context& ctx) {
    ctx.declare_constant("c");
    ctx.declare_constant("G");
    ctx.declare_constant("pi");
}

namespace detail {

inline MetricBundle bundle_from_components(std::shared_ptr<Context> ctx, std::string name,
                                           const std::vector<std::tuple<int, int, std::string>>& comps,
                                           const std::vector<std::string>& nonzero) {
    TensorField g(*ctx, {Slot::Cov, Slot::Cov});
    for (const auto& [i, j, text] : comps) {
        Expr e = parse_expression(text, *ctx);
        g.at({i, j}) = e;
        g.at({j, i}) = e;
    }
    MetricBundle b;
    b.ctx = ctx;
    b.metric = make_metric(*ctx, std::move(g));
    b.assumptions = AssumptionSet(*ctx);
    for (const char* pc : {"c", "G", "pi"})
        if (auto id = ctx->find(pc)) b.assumptions.declare_nonzero(Expr::atom(*ctx, *id));
    for (const std::string& nz : nonzero)
        b.assumptions.declare_nonzero(parse_expression(nz, *ctx));
    b.assumptions.declare_nonzero(b.metric.det);
    b.assumptions.close();
    b.name = std::move(name);
    return b;
}

} // namespace detail

// Built-in chart metrics on (u, r, x, y) with x > 0:
//   prm   pure radiation metric
//   gprm  pure radiation type metric (constants a, b; conformal factor f(x,y))
//   gppw  generalized pp-wave (-2h du^2 + 2 du dr - (1/2) F (dx^2 + dy^2))
//   ppw   pp-wave (h du^2 + 2 du dr + dx^2 + dy^2)
inline MetricBundle builtin_metric(const std::string& name) {
    auto ctx = std::make_shared<Context>();
    ctx->declare_coordinate("u");
    ctx->declare_coordinate("r");
    ctx->declare_coordinate("x", /*positive=*/true);
    ctx->declare_coordinate("y");
    declare_physical_constants(*ctx);
    if (name == "prm") {
        ctx->declare_constant("p");
        ctx->declare_function("w", {1, 3, 4});
        return detail::bundle_from_components(
            ctx, name,
            {{1, 1, "x*w - p^2*r^2/x^2"}, {1, 2, "1"}, {1, 3, "-2*r/x"},
             {3, 3, "-1/p^2"}, {4, 4, "-1/p^2"}},
            {"p"});
    }
    if (name == "gprm") {
        ctx->declare_constant("a");
        ctx->declare_constant("b");
        ctx->declare_function("w", {1, 3, 4});
        ctx->declare_function("f", {3, 4});
        return detail::bundle_from_components(
            ctx, name,
            {{1, 1, "x*w + a*r^2/x^2"}, {1, 2, "1"}, {1, 3, "b*r/x"},
             {3, 3, "f"}, {4, 4, "f"}},
            {"f"});
    }
    if (name == "gppw") {
        ctx->declare_function("h", {1, 3, 4});
        ctx->declare_function("F", {3, 4});
        return detail::bundle_from_components(
            ctx, name,
            {{1, 1, "-2*h"}, {1, 2, "1"}, {3, 3, "-1/2*F"}, {4, 4, "-1/2*F"}},
            {"F"});
    }
    if (name == "ppw") {
        ctx->declare_function("h", {1, 3, 4});
        return detail::bundle_from_components(
            ctx, name,
            {{1, 1, "h"}, {1, 2, "1"}, {3, 3, "1"}, {4, 4, "1"}}, {});
    }
    throw EngineError("unknown builtin metric '" + name + "'");
}

// Componentwise substitution into the metric; all cached geometry is rebuilt.
inline MetricBundle apply_specialization(const MetricBundle& src, const AssumptionSet& bindings,
                                         const std::string& new_name = "") {
    TensorField g(*src.ctx, {Slot::Cov, Slot::Cov});
    for (std::size_t i = 0; i < g.comp.size(); ++i)
        g.comp[i] = substitute(src.metric.g.comp[i], bindings);
    MetricBundle out;
    out.ctx = src.ctx;
    try {
        out.metric = make_metric(*src.ctx, std::move(g));
    } catch (const SingularMetric&) {
        throw SingularMetric("specialization makes the metric symbolically singular");
    }
    AssumptionSet merged(*src.ctx);
    for (const auto& [t, img] : bindings.substitutions()) merged.set(t, img);
    for (const Expr& nz : src.assumptions.nonzero()) {
        Expr im = substitute(nz, bindings);
        if (!im.is_zero() && !im.is_rational()) merged.declare_nonzero(im);
    }
    for (const Expr& nz : bindings.nonzero()) merged.declare_nonzero(nz);
    merged.declare_nonzero(out.metric.det);
    merged.close();
    out.assumptions = std::move(merged);
    out.name = new_name.empty() ? src.name + "-specialized" : new_name;
    return out;
}

} // namespace symcurv
