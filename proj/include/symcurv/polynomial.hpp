#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "symcurv/context.hpp"

namespace symcurv {

using Coeff = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;
using Exp = boost::rational<long long>; // monomial exponents

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

// atom^exp with exp > 0; non-integer exponents only on positive coordinates.
struct Factor {
    AtomId atom;
    Exp exp;
};

// A power product of atoms, optionally times exp(q) for a polynomial q in the
// coordinates. Products merge exp parts additively: exp(q1)*exp(q2) = exp(q1+q2).
struct Monomial {
    std::vector<Factor> factors; // sorted by the global symbol order
    PolyPtr exp_arg;             // null when no exp factor; q is canonical and nonzero

    bool is_unit() const { return factors.empty() && !exp_arg; }
};

struct Term {
    Coeff coeff;
    Monomial mono;
};

// Sparse multivariate polynomial over the generator algebra. Terms are kept
// sorted descending in the graded-lex order and carry nonzero coefficients.
struct Poly {
    const Context* ctx = nullptr;
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_rational() const {
        return terms.empty() || (terms.size() == 1 && terms[0].mono.is_unit());
    }
};

// ---------------------------------------------------------------------------
// ordering and equality

int poly_cmp(const Poly& a, const Poly& b);

inline Exp mono_total_degree(const Monomial& m) {
    Exp d(0);
    for (const Factor& f : m.factors) d += f.exp;
    return d;
}

// Graded-lex: total degree first, then exponent vectors along the global atom
// order, then the exp(...) argument structurally. Any fixed total order works
// for canonical forms; this one matches the printed order.
inline int mono_cmp(const Context& ctx, const Monomial& a, const Monomial& b) {
    Exp da = mono_total_degree(a), db = mono_total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const Factor& fa = a.factors[i];
        const Factor& fb = b.factors[j];
        if (fa.atom == fb.atom) {
            if (fa.exp != fb.exp) return fa.exp > fb.exp ? 1 : -1;
            ++i, ++j;
        } else if (ctx.atom_less(fa.atom, fb.atom)) {
            return 1; // a has positive exponent on an earlier atom
        } else {
            return -1;
        }
    }
    if (i < a.factors.size()) return 1;
    if (j < b.factors.size()) return -1;
    if (!a.exp_arg && !b.exp_arg) return 0;
    if (!a.exp_arg) return -1;
    if (!b.exp_arg) return 1;
    return poly_cmp(*a.exp_arg, *b.exp_arg);
}

inline int coeff_cmp(const Coeff& a, const Coeff& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

inline int poly_cmp(const Poly& a, const Poly& b) {
    std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = mono_cmp(*a.ctx, a.terms[i].mono, b.terms[i].mono);
        if (c != 0) return c;
        c = coeff_cmp(a.terms[i].coeff, b.terms[i].coeff);
        if (c != 0) return c;
    }
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
    return 0;
}

inline bool mono_equal(const Context& ctx, const Monomial& a, const Monomial& b) {
    return mono_cmp(ctx, a, b) == 0;
}

inline bool poly_equal(const Poly& a, const Poly& b) { return poly_cmp(a, b) == 0; }

// ---------------------------------------------------------------------------
// construction

inline Poly poly_zero(const Context& ctx) { return Poly{&ctx, {}}; }

inline Poly poly_const(const Context& ctx, Coeff c) {
    Poly p{&ctx, {}};
    if (c != 0) p.terms.push_back(Term{std::move(c), Monomial{}});
    return p;
}

inline Poly poly_one(const Context& ctx) { return poly_const(ctx, 1); }

inline void poly_validate_factor(const Context& ctx, const Factor& f) {
    if (f.exp <= Exp(0)) throw EngineError("internal: non-positive factor exponent");
    if (f.exp.denominator() != 1) {
        const AtomInfo& a = ctx.info(f.atom);
        if (a.kind != AtomKind::Coordinate || !a.positive)
            throw EngineError("rational powers are admitted only on positive coordinates");
    }
}

inline Poly poly_atom(const Context& ctx, AtomId atom, Exp exp = Exp(1)) {
    Factor f{atom, exp};
    poly_validate_factor(ctx, f);
    Poly p{&ctx, {}};
    p.terms.push_back(Term{Coeff(1), Monomial{{f}, nullptr}});
    return p;
}

// exp(q): q must be a polynomial in coordinates with integer exponents.
inline Poly poly_exp(const Context& ctx, const Poly& q) {
    for (const Term& t : q.terms) {
        if (t.mono.exp_arg) throw EngineError("exp argument must be a plain coordinate polynomial");
        for (const Factor& f : t.mono.factors) {
            if (ctx.info(f.atom).kind != AtomKind::Coordinate || f.exp.denominator() != 1)
                throw EngineError("exp argument must be a polynomial in the coordinates");
        }
    }
    if (q.is_zero()) return poly_one(ctx);
    Poly p{&ctx, {}};
    p.terms.push_back(Term{Coeff(1), Monomial{{}, std::make_shared<const Poly>(q)}});
    return p;
}

// ---------------------------------------------------------------------------
// arithmetic

inline Poly poly_neg(Poly p) {
    for (Term& t : p.terms) t.coeff = -t.coeff;
    return p;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    const Context& ctx = *a.ctx;
    Poly out{&ctx, {}};
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = mono_cmp(ctx, a.terms[i].mono, b.terms[j].mono);
        if (c > 0) {
            out.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            out.terms.push_back(b.terms[j++]);
        } else {
            Coeff s = a.terms[i].coeff + b.terms[j].coeff;
            if (s != 0) out.terms.push_back(Term{std::move(s), a.terms[i].mono});
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
    return out;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

inline Monomial mono_mul(const Context& ctx, const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const Factor& fa = a.factors[i];
        const Factor& fb = b.factors[j];
        if (fa.atom == fb.atom) {
            Exp e = fa.exp + fb.exp;
            if (e != Exp(0)) out.factors.push_back(Factor{fa.atom, e});
            ++i, ++j;
        } else if (ctx.atom_less(fa.atom, fb.atom)) {
            out.factors.push_back(fa);
            ++i;
        } else {
            out.factors.push_back(fb);
            ++j;
        }
    }
    for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
    for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
    if (a.exp_arg && b.exp_arg) {
        Poly q = poly_add(*a.exp_arg, *b.exp_arg);
        out.exp_arg = q.is_zero() ? nullptr : std::make_shared<const Poly>(std::move(q));
    } else {
        out.exp_arg = a.exp_arg ? a.exp_arg : b.exp_arg;
    }
    return out;
}

struct MonoLess {
    const Context* ctx;
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(*ctx, a, b) > 0; }
};

inline Poly poly_from_map(const Context& ctx, std::map<Monomial, Coeff, MonoLess>& acc) {
    Poly out{&ctx, {}};
    out.terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.terms.push_back(Term{std::move(c), m});
    return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    const Context& ctx = *a.ctx;
    if (a.is_zero() || b.is_zero()) return poly_zero(ctx);
    std::map<Monomial, Coeff, MonoLess> acc{MonoLess{&ctx}};
    for (const Term& ta : a.terms)
        for (const Term& tb : b.terms) {
            Monomial m = mono_mul(ctx, ta.mono, tb.mono);
            acc[std::move(m)] += ta.coeff * tb.coeff;
        }
    return poly_from_map(ctx, acc);
}

inline Poly poly_scale(Poly p, const Coeff& c) {
    if (c == 0) return poly_zero(*p.ctx);
    for (Term& t : p.terms) t.coeff *= c;
    return p;
}

inline Poly poly_mul_term(const Poly& p, const Coeff& c, const Monomial& m) {
    const Context& ctx = *p.ctx;
    if (c == 0) return poly_zero(ctx);
    if (!m.exp_arg) {
        // a plain monomial shift preserves the graded-lex term order
        Poly out{&ctx, {}};
        out.terms.reserve(p.terms.size());
        for (const Term& t : p.terms)
            out.terms.push_back(Term{t.coeff * c, mono_mul(ctx, t.mono, m)});
        return out;
    }
    std::map<Monomial, Coeff, MonoLess> acc{MonoLess{&ctx}};
    for (const Term& t : p.terms) acc[mono_mul(ctx, t.mono, m)] += t.coeff * c;
    return poly_from_map(ctx, acc);
}

// per-atom minimum of the plain factor parts; exp factors are handled by the
// joint exp-shift at fraction level and never enter monomial contents.
inline Monomial mono_factor_gcd(const Context& ctx, const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const Factor& fa = a.factors[i];
        const Factor& fb = b.factors[j];
        if (fa.atom == fb.atom) {
            out.factors.push_back(Factor{fa.atom, std::min(fa.exp, fb.exp)});
            ++i, ++j;
        } else if (ctx.atom_less(fa.atom, fb.atom)) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

// divide the plain factor part of a by m (must divide); exp_arg is retained.
inline Monomial mono_factor_div(const Context& ctx, const Monomial& a, const Monomial& m) {
    Monomial out;
    out.exp_arg = a.exp_arg;
    std::size_t j = 0;
    for (const Factor& fa : a.factors) {
        if (j < m.factors.size() && fa.atom == m.factors[j].atom) {
            Exp e = fa.exp - m.factors[j].exp;
            if (e < Exp(0)) throw EngineError("internal: monomial division underflow");
            if (e != Exp(0)) out.factors.push_back(Factor{fa.atom, e});
            ++j;
        } else {
            out.factors.push_back(fa);
        }
    }
    (void)ctx;
    if (j != m.factors.size()) throw EngineError("internal: monomial does not divide");
    return out;
}

inline Poly poly_pow(const Poly& p, unsigned n) {
    Poly result = poly_one(*p.ctx);
    Poly base = p;
    while (n > 0) {
        if (n & 1u) result = poly_mul(result, base);
        n >>= 1u;
        if (n) base = poly_mul(base, base);
    }
    return result;
}

// ---------------------------------------------------------------------------
// differentiation: exact partial derivative w.r.t. a coordinate (1-based).

inline Poly poly_derivative(const Poly& p, int coord_index) {
    const Context& ctx = *p.ctx;
    Poly sum = poly_zero(ctx);
    for (const Term& t : p.terms) {
        // product rule over the factors
        for (std::size_t k = 0; k < t.mono.factors.size(); ++k) {
            const Factor& f = t.mono.factors[k];
            const AtomInfo& a = ctx.info(f.atom);
            Poly dfactor = poly_zero(ctx);
            if (a.kind == AtomKind::Coordinate) {
                if (a.coord_index != coord_index) continue;
                dfactor = poly_one(ctx);
            } else if (a.kind == AtomKind::Constant) {
                continue;
            } else {
                if (!std::binary_search(a.deps.begin(), a.deps.end(), coord_index)) continue;
                std::vector<int> mi = a.deriv;
                mi.push_back(coord_index);
                dfactor = poly_atom(ctx, ctx.function_atom(a.base, std::move(mi)));
            }
            // coeff * exp * atom^(exp-1) * dfactor * (other factors) * exp_arg
            Coeff c = t.coeff * Coeff(f.exp.numerator()) / Coeff(f.exp.denominator());
            Monomial rest;
            rest.exp_arg = t.mono.exp_arg;
            for (std::size_t l = 0; l < t.mono.factors.size(); ++l) {
                if (l == k) {
                    Exp e = f.exp - Exp(1);
                    if (e != Exp(0)) rest.factors.push_back(Factor{f.atom, e});
                } else {
                    rest.factors.push_back(t.mono.factors[l]);
                }
            }
            sum = poly_add(sum, poly_mul_term(dfactor, c, rest));
        }
        if (t.mono.exp_arg) {
            Poly dq = poly_derivative(*t.mono.exp_arg, coord_index);
            if (!dq.is_zero()) {
                Poly piece{&ctx, {t}};
                sum = poly_add(sum, poly_mul(piece, dq));
            }
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// numeric evaluation

inline long double coeff_to_ld(const Coeff& c) {
    return boost::multiprecision::numerator(c).convert_to<long double>() /
           boost::multiprecision::denominator(c).convert_to<long double>();
}

inline long double poly_eval(const Poly& p, const std::map<AtomId, long double>& values) {
    long double sum = 0.0L;
    for (const Term& t : p.terms) {
        long double v = coeff_to_ld(t.coeff);
        for (const Factor& f : t.mono.factors) {
            auto it = values.find(f.atom);
            if (it == values.end())
                throw EngineError("numeric evaluation: unbound symbol '" +
                                  p.ctx->info(f.atom).name + "'");
            long double e = static_cast<long double>(f.exp.numerator()) /
                            static_cast<long double>(f.exp.denominator());
            v *= std::pow(it->second, e);
        }
        if (t.mono.exp_arg) v *= std::exp(poly_eval(*t.mono.exp_arg, values));
        sum += v;
    }
    return sum;
}

inline void poly_collect_atoms(const Poly& p, std::vector<AtomId>& out) {
    for (const Term& t : p.terms) {
        for (const Factor& f : t.mono.factors) out.push_back(f.atom);
        if (t.mono.exp_arg) poly_collect_atoms(*t.mono.exp_arg, out);
    }
}

} // namespace symcurv
