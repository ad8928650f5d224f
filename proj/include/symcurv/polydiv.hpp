#pragma once

#include <climits>

#include "symcurv/expression.hpp"

namespace symcurv {

// Exact division of canonical polynomials over the generator algebra,
// through the flat integer-exponent world (exp atoms over their lattice
// basis, rational powers rescaled). Throws when the division is not exact.
inline Poly poly_divide_exact_full(const Poly& a, const Poly& b) {
    const Context& ctx = *a.ctx;
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return poly_zero(ctx);
    if (b.is_rational()) return poly_scale(a, Coeff(1) / b.terms[0].coeff);
    detail::FlattenPlan plan = detail::make_flatten_plan(ctx, a, b);
    FPoly fa = detail::flatten(plan, ctx, a);
    FPoly fb = detail::flatten(plan, ctx, b);
    // Exp-lattice variables are Laurent: shift both operands to nonnegative
    // exponents with fa's content at least fb's, so the flat quotient is a
    // plain polynomial; the net unit E^(sa-sb) is compensated afterwards.
    Poly compensation = poly_zero(ctx); // exp argument to divide out of q
    for (int v = static_cast<int>(plan.atom_vars.size()); v < plan.nvars; ++v) {
        auto vmin = [&](const FPoly& p) {
            int m = INT_MAX;
            for (const FTerm& t : p.terms) m = std::min(m, t.e[static_cast<std::size_t>(v)]);
            return m == INT_MAX ? 0 : m;
        };
        int ma = vmin(fa), mb = vmin(fb);
        int sb = std::max(0, -mb);
        int sa = std::max(0, -ma);
        if (ma + sa < mb + sb) sa += (mb + sb) - (ma + sa);
        if (sa)
            for (FTerm& t : fa.terms) t.e[static_cast<std::size_t>(v)] += sa;
        if (sb)
            for (FTerm& t : fb.terms) t.e[static_cast<std::size_t>(v)] += sb;
        if (sa != sb) {
            const Poly& bv =
                plan.exp_basis[static_cast<std::size_t>(v - static_cast<int>(plan.atom_vars.size()))];
            compensation = poly_add(compensation, poly_scale(bv, Coeff(sa - sb)));
        }
    }
    auto q = fp_divide(fa, fb);
    if (!q) throw EngineError("internal: inexact polynomial division");
    Poly out = detail::unflatten(plan, ctx, *q);
    if (!compensation.is_zero()) {
        Monomial unit;
        Poly neg = poly_neg(compensation);
        unit.exp_arg = std::make_shared<const Poly>(std::move(neg));
        out = poly_mul_term(out, Coeff(1), unit);
    }
    return out;
}

} // namespace symcurv
