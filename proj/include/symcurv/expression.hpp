#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "symcurv/flatpoly.hpp"
#include "symcurv/polynomial.hpp"

namespace symcurv {

namespace detail {

// translation-invariant total order on exp arguments: sign of the leading
// coefficient of the difference
inline int arg_cmp(const Context& ctx, const Poly* a, const Poly* b) {
    static const Poly kZero{};
    const Poly za = a ? *a : Poly{&ctx, {}};
    const Poly zb = b ? *b : Poly{&ctx, {}};
    (void)kZero;
    Poly d = poly_sub(za, zb);
    if (d.is_zero()) return 0;
    return d.terms.front().coeff > 0 ? 1 : -1;
}

inline Monomial poly_monomial_content(const Context& ctx, const Poly& p) {
    Monomial m = p.terms.front().mono;
    m.exp_arg = nullptr;
    for (const Term& t : p.terms) {
        m = mono_factor_gcd(ctx, m, t.mono);
        if (m.factors.empty()) break;
    }
    return m;
}

inline Coeff poly_rational_content(const Poly& p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int g = 0, l = 1;
    for (const Term& t : p.terms) {
        g = boost::multiprecision::gcd(g, numerator(t.coeff) < 0 ? Int(-numerator(t.coeff))
                                                                 : Int(numerator(t.coeff)));
        l = boost::multiprecision::lcm(l, denominator(t.coeff));
    }
    if (g == 0) g = 1;
    return Coeff(g, l);
}

inline Poly poly_resort(const Context& ctx, std::vector<Term> terms) {
    std::map<Monomial, Coeff, MonoLess> acc{MonoLess{&ctx}};
    for (Term& t : terms) acc[std::move(t.mono)] += t.coeff;
    return poly_from_map(ctx, acc);
}

} // namespace detail

// Canonical element of the working function field: a reduced, sign- and
// shift-normalized fraction of two Polys. Structural equality of canonical
// forms is semantic equality; generators are algebraically independent.
class Expr {
public:
    Expr() = default;

    static Expr zero(const Context& ctx) { return raw(poly_zero(ctx), poly_one(ctx)); }
    static Expr one(const Context& ctx) { return raw(poly_one(ctx), poly_one(ctx)); }
    static Expr rational(const Context& ctx, Coeff c) {
        return raw(poly_const(ctx, std::move(c)), poly_one(ctx));
    }
    static Expr rational(const Context& ctx, long long n, long long d = 1) {
        return from_polys(poly_const(ctx, Coeff(n)), poly_const(ctx, Coeff(d)));
    }
    static Expr atom(const Context& ctx, AtomId id, Exp e = Exp(1)) {
        if (e == Exp(0)) return one(ctx);
        if (e > Exp(0)) return raw(poly_atom(ctx, id, e), poly_one(ctx));
        return raw(poly_one(ctx), poly_atom(ctx, id, -e));
    }
    static Expr exp_of(const Context& ctx, const Poly& q) {
        return from_polys(poly_exp(ctx, q), poly_one(ctx));
    }
    static Expr from_poly(Poly p) {
        const Context& c = *p.ctx;
        return from_polys(std::move(p), poly_one(c));
    }
    static Expr from_polys(Poly num, Poly den, bool assume_reduced = false);

    bool valid() const { return static_cast<bool>(num_); }
    const Context* context() const { return num_ ? num_->ctx : nullptr; }
    const Poly& num() const { return *num_; }
    const Poly& den() const { return *den_; }

    bool is_zero() const { return num_->is_zero(); }
    bool is_rational() const { return num_->is_rational() && den_->is_rational(); }
    std::optional<Coeff> as_rational() const {
        if (!is_rational()) return std::nullopt;
        if (num_->is_zero()) return Coeff(0);
        return num_->terms[0].coeff; // canonical form has den == 1 for rationals
    }
    bool is_one() const {
        auto r = as_rational();
        return r && *r == 1;
    }

    friend Expr operator+(const Expr& a, const Expr& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (poly_equal(*a.den_, *b.den_))
            return from_polys(poly_add(*a.num_, *b.num_), *a.den_);
        return from_polys(poly_add(poly_mul(*a.num_, *b.den_), poly_mul(*b.num_, *a.den_)),
                          poly_mul(*a.den_, *b.den_));
    }
    friend Expr operator-(const Expr& a) { return raw(poly_neg(*a.num_), *a.den_); }
    friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
    friend Expr operator*(const Expr& a, const Expr& b) {
        if (a.is_zero() || b.is_zero()) return zero(*a.context());
        return from_polys(poly_mul(*a.num_, *b.num_), poly_mul(*a.den_, *b.den_));
    }
    friend Expr operator/(const Expr& a, const Expr& b) {
        if (b.is_zero()) throw DivisionByZero();
        if (a.is_zero()) return a;
        return from_polys(poly_mul(*a.num_, *b.den_), poly_mul(*a.den_, *b.num_));
    }
    friend bool operator==(const Expr& a, const Expr& b) {
        return poly_equal(*a.num_, *b.num_) && poly_equal(*a.den_, *b.den_);
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    Expr pow(long long k) const {
        const Context& ctx = *context();
        if (k == 0) return one(ctx);
        if (is_zero()) {
            if (k < 0) throw DivisionByZero();
            return *this;
        }
        unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
        // powers of a reduced fraction stay reduced
        Poly pn = poly_pow(*num_, n), pd = poly_pow(*den_, n);
        if (k < 0) std::swap(pn, pd);
        return from_polys(std::move(pn), std::move(pd), /*assume_reduced=*/true);
    }

    Expr derivative(int coord_index) const {
        Poly dn = poly_derivative(*num_, coord_index);
        Poly dd = poly_derivative(*den_, coord_index);
        if (dd.is_zero()) return from_polys(std::move(dn), *den_);
        return from_polys(poly_sub(poly_mul(dn, *den_), poly_mul(*num_, dd)),
                          poly_mul(*den_, *den_));
    }

    long double eval(const std::map<AtomId, long double>& values) const {
        return poly_eval(*num_, values) / poly_eval(*den_, values);
    }

    std::vector<AtomId> atoms() const {
        std::vector<AtomId> out;
        poly_collect_atoms(*num_, out);
        poly_collect_atoms(*den_, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // total number of terms; a crude size measure used for pivot selection
    std::size_t size() const { return num_->terms.size() + den_->terms.size(); }

private:
    static Expr raw(Poly n, Poly d) {
        Expr e;
        e.num_ = std::make_shared<const Poly>(std::move(n));
        e.den_ = std::make_shared<const Poly>(std::move(d));
        return e;
    }

    std::shared_ptr<const Poly> num_, den_;
};

namespace detail {

struct FlattenPlan {
    std::vector<AtomId> atom_vars;              // ascending atom order
    std::map<AtomId, long long> root_scale;     // positive coords with rational exps
    std::vector<Poly> exp_basis;                // lattice basis polys (over coords)
    std::vector<const Poly*> args;              // distinct exp args seen
    std::vector<std::vector<Int>> arg_coords;   // coordinates of each arg in the basis
    int nvars = 0;
};

inline FlattenPlan make_flatten_plan(const Context& ctx, const Poly& a, const Poly& b) {
    FlattenPlan plan;
    std::vector<AtomId> atoms;
    std::vector<const Poly*> args;
    auto scan = [&](const Poly& p) {
        for (const Term& t : p.terms) {
            for (const Factor& f : t.mono.factors) atoms.push_back(f.atom);
            if (t.mono.exp_arg) {
                bool seen = false;
                for (const Poly* q : args)
                    if (poly_equal(*q, *t.mono.exp_arg)) {
                        seen = true;
                        break;
                    }
                if (!seen) args.push_back(t.mono.exp_arg.get());
            }
        }
    };
    scan(a);
    scan(b);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    std::sort(atoms.begin(), atoms.end(),
              [&](AtomId x, AtomId y) { return ctx.atom_less(x, y); });
    plan.atom_vars = std::move(atoms);

    auto scan_roots = [&](const Poly& p) {
        for (const Term& t : p.terms)
            for (const Factor& f : t.mono.factors)
                if (f.exp.denominator() != 1) {
                    long long& s = plan.root_scale[f.atom];
                    if (s == 0) s = 1;
                    s = std::lcm(s, f.exp.denominator());
                }
    };
    scan_roots(a);
    scan_roots(b);

    if (!args.empty()) {
        // columns: the union of coordinate monomials appearing in the args
        std::vector<const Monomial*> support;
        auto col_of = [&](const Monomial& m) -> std::size_t {
            for (std::size_t i = 0; i < support.size(); ++i)
                if (mono_equal(ctx, *support[i], m)) return i;
            support.push_back(&m);
            return support.size() - 1;
        };
        std::vector<std::map<std::size_t, Coeff>> rows_q;
        for (const Poly* q : args) {
            std::map<std::size_t, Coeff> row;
            for (const Term& t : q->terms) row[col_of(t.mono)] = t.coeff;
            rows_q.push_back(std::move(row));
        }
        Int scale = 1;
        for (const auto& row : rows_q)
            for (const auto& [col, c] : row)
                scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(c));
        std::vector<std::vector<Int>> rows;
        for (const auto& row : rows_q) {
            std::vector<Int> v(support.size(), 0);
            for (const auto& [col, c] : row)
                v[col] = boost::multiprecision::numerator(c) *
                         (scale / boost::multiprecision::denominator(c));
            rows.push_back(std::move(v));
        }
        HermiteBasis hb = hermite_basis(rows);
        for (const auto& brow : hb.rows) {
            Poly bp{&ctx, {}};
            std::vector<Term> ts;
            for (std::size_t k = 0; k < brow.size(); ++k)
                if (brow[k] != 0) ts.push_back(Term{Coeff(brow[k], scale), *support[k]});
            bp = poly_resort(ctx, std::move(ts));
            plan.exp_basis.push_back(std::move(bp));
        }
        for (const auto& row : rows) plan.arg_coords.push_back(hb.express(row));
        plan.args = std::move(args);
    }
    plan.nvars = static_cast<int>(plan.atom_vars.size() + plan.exp_basis.size());
    return plan;
}

inline FPoly flatten(const FlattenPlan& plan, const Context& ctx, const Poly& p) {
    FPoly out{plan.nvars, {}};
    out.terms.reserve(p.terms.size());
    for (const Term& t : p.terms) {
        FTerm ft{t.coeff, std::vector<int>(static_cast<std::size_t>(plan.nvars), 0)};
        std::size_t vi = 0;
        for (const Factor& f : t.mono.factors) {
            while (plan.atom_vars[vi] != f.atom) ++vi;
            long long s = 1;
            auto it = plan.root_scale.find(f.atom);
            if (it != plan.root_scale.end()) s = it->second;
            Exp scaled = f.exp * Exp(s);
            if (scaled.denominator() != 1) throw EngineError("internal: root scaling failed");
            ft.e[vi] = static_cast<int>(scaled.numerator());
        }
        if (t.mono.exp_arg) {
            std::size_t ai = 0;
            while (!poly_equal(*plan.args[ai], *t.mono.exp_arg)) ++ai;
            const auto& coords = plan.arg_coords[ai];
            for (std::size_t j = 0; j < coords.size(); ++j)
                ft.e[plan.atom_vars.size() + j] = coords[j].convert_to<int>();
        }
        out.terms.push_back(std::move(ft));
    }
    fp_sort(out);
    return out;
}

inline Poly unflatten(const FlattenPlan& plan, const Context& ctx, const FPoly& p) {
    std::vector<Term> ts;
    ts.reserve(p.terms.size());
    for (const FTerm& t : p.terms) {
        Monomial m;
        for (std::size_t vi = 0; vi < plan.atom_vars.size(); ++vi) {
            if (t.e[vi] == 0) continue;
            AtomId a = plan.atom_vars[vi];
            long long s = 1;
            auto it = plan.root_scale.find(a);
            if (it != plan.root_scale.end()) s = it->second;
            m.factors.push_back(Factor{a, Exp(t.e[vi], s)});
        }
        Poly arg{&ctx, {}};
        for (std::size_t j = 0; j < plan.exp_basis.size(); ++j) {
            int e = t.e[plan.atom_vars.size() + j];
            if (e != 0) arg = poly_add(arg, poly_scale(plan.exp_basis[j], Coeff(e)));
        }
        if (!arg.is_zero()) m.exp_arg = std::make_shared<const Poly>(std::move(arg));
        ts.push_back(Term{t.c, std::move(m)});
    }
    return poly_resort(ctx, std::move(ts));
}

} // namespace detail

inline Expr Expr::from_polys(Poly num, Poly den, bool assume_reduced) {
    using namespace detail;
    const Context& ctx = *num.ctx;
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) return raw(poly_zero(ctx), poly_one(ctx));

    // joint monomial content
    Monomial cn = poly_monomial_content(ctx, num);
    Monomial cd = poly_monomial_content(ctx, den);
    Monomial joint = mono_factor_gcd(ctx, cn, cd);
    if (!joint.factors.empty()) {
        std::vector<Term> tn, td;
        for (const Term& t : num.terms) tn.push_back(Term{t.coeff, mono_factor_div(ctx, t.mono, joint)});
        for (const Term& t : den.terms) td.push_back(Term{t.coeff, mono_factor_div(ctx, t.mono, joint)});
        num.terms = std::move(tn); // dividing by a fixed monomial preserves order
        den.terms = std::move(td);
    }

    // polynomial gcd (exp-atoms as Laurent lattice variables, roots rescaled)
    if (!assume_reduced && num.terms.size() > 1 && den.terms.size() > 1) {
        FlattenPlan plan = make_flatten_plan(ctx, num, den);
        FPoly fn = flatten(plan, ctx, num);
        FPoly fd = flatten(plan, ctx, den);
        for (int v = static_cast<int>(plan.atom_vars.size()); v < plan.nvars; ++v) {
            int mn = 0;
            for (const FTerm& t : fn.terms) mn = std::min(mn, t.e[static_cast<std::size_t>(v)]);
            for (const FTerm& t : fd.terms) mn = std::min(mn, t.e[static_cast<std::size_t>(v)]);
            if (mn < 0) {
                for (FTerm& t : fn.terms) t.e[static_cast<std::size_t>(v)] -= mn;
                for (FTerm& t : fd.terms) t.e[static_cast<std::size_t>(v)] -= mn;
            }
        }
        FPoly g = fp_gcd(fn, fd);
        if (!g.is_constant()) {
            num = unflatten(plan, ctx, fp_divide_exact(fn, g));
            den = unflatten(plan, ctx, fp_divide_exact(fd, g));
        }
    }

    // joint exp shift: the ≺-least exp argument over both polys becomes 0
    bool has_exp = false;
    for (const Term& t : num.terms) has_exp = has_exp || t.mono.exp_arg != nullptr;
    for (const Term& t : den.terms) has_exp = has_exp || t.mono.exp_arg != nullptr;
    if (has_exp) {
        const Poly* minarg = nullptr; // nullptr plays the zero polynomial
        bool first = true;
        auto consider = [&](const PolyPtr& q) {
            const Poly* cand = q.get();
            if (first || arg_cmp(ctx, cand, minarg) < 0) minarg = cand;
            first = false;
        };
        for (const Term& t : num.terms) consider(t.mono.exp_arg);
        for (const Term& t : den.terms) consider(t.mono.exp_arg);
        if (minarg != nullptr) {
            Poly shift = poly_neg(*minarg);
            auto apply = [&](Poly& p) {
                std::vector<Term> ts;
                ts.reserve(p.terms.size());
                for (const Term& t : p.terms) {
                    Monomial m = t.mono;
                    Poly arg = m.exp_arg ? poly_add(*m.exp_arg, shift) : shift;
                    m.exp_arg = arg.is_zero() ? nullptr : std::make_shared<const Poly>(std::move(arg));
                    ts.push_back(Term{t.coeff, std::move(m)});
                }
                p = poly_resort(ctx, std::move(ts));
            };
            apply(num);
            apply(den);
        }
    }

    // scale and sign: denominator integer, primitive, positive leading coeff
    Coeff c = poly_rational_content(den);
    if (den.terms.front().coeff < 0) c = -c;
    if (c != 1) {
        den = poly_scale(std::move(den), Coeff(1) / c);
        num = poly_scale(std::move(num), Coeff(1) / c);
    }
    return raw(std::move(num), std::move(den));
}

} // namespace symcurv
