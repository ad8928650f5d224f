#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symcurv/expression.hpp"

namespace symcurv {

class AssumptionSet;
Expr substitute(const Expr& e, const AssumptionSet& s);

// Side conditions under which a computation runs: an acyclic list of
// substitutions (constant or function symbol -> expression) plus expressions
// declared nowhere zero. Substituting a function symbol also rewrites all of
// its higher derivative symbols by differentiating the image, so a relation
// like w_xx -> -w_yy propagates to w_xxx -> -w_xyy.
class AssumptionSet {
public:
    AssumptionSet() = default;
    explicit AssumptionSet(const Context& ctx) : ctx_(&ctx) {}

    const Context* context() const { return ctx_; }
    bool empty() const { return subs_.empty() && nonzero_.empty(); }

    const std::vector<std::pair<AtomId, Expr>>& substitutions() const { return subs_; }
    const std::vector<Expr>& nonzero() const { return nonzero_; }

    void set(AtomId target, Expr image) {
        if (!ctx_) ctx_ = image.context();
        const AtomInfo& a = ctx_->info(target);
        if (a.kind == AtomKind::Coordinate)
            throw SubstitutionError("coordinates cannot be substituted");
        for (auto& [t, img] : subs_) {
            if (t == target) throw SubstitutionError("duplicate substitution for '" + a.name + "'");
            if (a.kind == AtomKind::Function && ctx_->info(t).kind == AtomKind::Function &&
                ctx_->info(t).base == a.base) {
                // comparable multi-indices would make the rewrite ambiguous
                if (multiset_contains(a.deriv, ctx_->info(t).deriv) ||
                    multiset_contains(ctx_->info(t).deriv, a.deriv))
                    throw SubstitutionError("overlapping substitutions for function '" + a.name + "'");
            }
        }
        subs_.emplace_back(target, std::move(image));
        closed_ = false;
    }

    void declare_nonzero(Expr e) {
        if (!ctx_) ctx_ = e.context();
        if (e.is_zero()) throw SubstitutionError("the zero expression cannot be declared nonzero");
        for (const Expr& n : nonzero_)
            if (n == e) return;
        nonzero_.push_back(std::move(e));
    }

    // idempotent closure: rewrite every image by the full set until stable
    void close() {
        if (closed_) return;
        for (int round = 0; round < 64; ++round) {
            bool changed = false;
            for (auto& [target, image] : subs_) {
                Expr next = substitute(image, *this);
                if (!(next == image)) {
                    image = next;
                    changed = true;
                }
            }
            if (!changed) {
                closed_ = true;
                return;
            }
        }
        throw SubstitutionError("cyclic substitution set");
    }

    bool is_closed() const { return closed_; }

    // image for an atom, following the derivative cascade for function symbols
    std::optional<Expr> image_of(AtomId atom) const {
        const AtomInfo& a = ctx_->info(atom);
        for (const auto& [t, img] : subs_)
            if (t == atom) return img;
        if (a.kind != AtomKind::Function) return std::nullopt;
        // the mapped symbol of the same function with the smallest multi-index
        // contained in ours wins
        const std::pair<AtomId, Expr>* best = nullptr;
        for (const auto& s : subs_) {
            const AtomInfo& t = ctx_->info(s.first);
            if (t.kind != AtomKind::Function || t.base != a.base) continue;
            if (!multiset_contains(a.deriv, t.deriv)) continue;
            if (!best || ctx_->info(best->first).deriv > t.deriv) best = &s;
        }
        if (!best) return std::nullopt;
        Expr image = best->second;
        std::vector<int> rest = multiset_minus(a.deriv, ctx_->info(best->first).deriv);
        for (int ix : rest) image = image.derivative(ix);
        return image;
    }

    AssumptionSet merged_with(const AssumptionSet& other) const {
        AssumptionSet out = *this;
        if (!out.ctx_) out.ctx_ = other.ctx_;
        for (const auto& [t, img] : other.subs_) out.set(t, img);
        for (const Expr& n : other.nonzero_) out.declare_nonzero(n);
        out.close();
        return out;
    }

    static bool multiset_contains(const std::vector<int>& big, const std::vector<int>& small) {
        std::size_t i = 0;
        for (int v : small) {
            while (i < big.size() && big[i] < v) ++i;
            if (i == big.size() || big[i] != v) return false;
            ++i;
        }
        return true;
    }

    static std::vector<int> multiset_minus(const std::vector<int>& big,
                                           const std::vector<int>& small) {
        std::vector<int> out;
        std::size_t i = 0;
        for (int v : big) {
            if (i < small.size() && small[i] == v) {
                ++i;
                continue;
            }
            out.push_back(v);
        }
        // small is sorted and contained, so a single sweep suffices
        if (i != small.size()) {
            out.clear();
            std::vector<int> rest = big;
            for (int v : small) {
                auto it = std::find(rest.begin(), rest.end(), v);
                rest.erase(it);
            }
            out = rest;
        }
        return out;
    }

private:
    const Context* ctx_ = nullptr;
    std::vector<std::pair<AtomId, Expr>> subs_;
    std::vector<Expr> nonzero_;
    bool closed_ = false;
};

namespace detail {

inline Expr substitute_poly(const Poly& p, const AssumptionSet& s,
                            std::map<AtomId, std::optional<Expr>>& cache) {
    const Context& ctx = *p.ctx;
    Expr sum = Expr::zero(ctx);
    for (const Term& t : p.terms) {
        Poly passthrough{&ctx, {}};
        Monomial keep;
        keep.exp_arg = t.mono.exp_arg; // exp args contain only coordinates
        Expr factor_product = Expr::one(ctx);
        bool touched = false;
        for (const Factor& f : t.mono.factors) {
            auto it = cache.find(f.atom);
            if (it == cache.end()) it = cache.emplace(f.atom, s.image_of(f.atom)).first;
            if (!it->second) {
                keep.factors.push_back(f);
                continue;
            }
            touched = true;
            if (f.exp.denominator() != 1)
                throw SubstitutionError("cannot substitute under a fractional power");
            factor_product = factor_product * it->second->pow(f.exp.numerator());
        }
        if (!touched) {
            Poly single{&ctx, {Term{t.coeff, t.mono}}};
            sum = sum + Expr::from_polys(std::move(single), poly_one(ctx));
        } else {
            Poly rest{&ctx, {Term{t.coeff, std::move(keep)}}};
            sum = sum + Expr::from_polys(std::move(rest), poly_one(ctx)) * factor_product;
        }
    }
    return sum;
}

} // namespace detail

inline Expr substitute(const Expr& e, const AssumptionSet& s) {
    if (s.substitutions().empty()) return e;
    std::map<AtomId, std::optional<Expr>> cache;
    Expr cur = e;
    for (int round = 0; round < 64; ++round) {
        Expr n = detail::substitute_poly(cur.num(), s, cache);
        Expr d = detail::substitute_poly(cur.den(), s, cache);
        if (d.is_zero())
            throw SubstitutionError("substitution makes a denominator identically zero");
        Expr next = n / d;
        if (next == cur) return next;
        cur = next;
    }
    throw SubstitutionError("substitution did not reach a fixed point (cyclic images?)");
}

inline bool is_zero(const Expr& e, const AssumptionSet& s) {
    return substitute(e, s).is_zero();
}

} // namespace symcurv
