#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symcurv/polydiv.hpp"
#include "symcurv/printing.hpp"
#include "symcurv/tensor.hpp"

namespace symcurv {

// Affine family of solutions of a linear system over the function field:
// particular member plus a homogeneous basis, together with the pivot
// expressions that were assumed nonzero during elimination.
struct SolutionSpace {
    bool consistent = false;
    std::vector<std::string> unknowns;
    std::vector<Expr> particular;
    std::vector<std::vector<Expr>> basis;
    std::vector<Expr> pivot_assumptions;
    Expr certificate; // a nonzero residual when inconsistent

    std::size_t dimension() const { return basis.size(); }
};

namespace detail {

inline bool atom_obviously_nonzero(const Context& ctx, AtomId a, const AssumptionSet* ambient) {
    const AtomInfo& info = ctx.info(a);
    // a coordinate is a nonzero element of the function field
    if (info.kind == AtomKind::Coordinate) return true;
    if (!ambient) return false;
    for (const Expr& nz : ambient->nonzero()) {
        if (nz.den().is_rational() && nz.num().terms.size() == 1) {
            const Term& t = nz.num().terms[0];
            if (!t.mono.exp_arg && t.mono.factors.size() == 1 && t.mono.factors[0].atom == a)
                return true;
        }
    }
    return false;
}

// pivots that need no recorded assumption: rational constants, monomials in
// coordinates / declared-nonzero symbols / exp factors, and rational
// multiples of declared-nonzero expressions
inline bool obviously_nonzero(const Expr& e, const AssumptionSet* ambient) {
    if (e.is_zero()) return false;
    if (e.is_rational()) return true;
    const Context& ctx = *e.context();
    auto monomial_ok = [&](const Poly& p) {
        if (p.terms.size() != 1) return false;
        for (const Factor& f : p.terms[0].mono.factors)
            if (!atom_obviously_nonzero(ctx, f.atom, ambient)) return false;
        return true;
    };
    if (monomial_ok(e.num()) && monomial_ok(e.den())) return true;
    if (ambient)
        for (const Expr& nz : ambient->nonzero()) {
            if (nz.is_zero()) continue;
            Expr q = e / nz;
            if (q.is_rational()) return true;
        }
    return false;
}

// The assumption is recorded as the primitive numerator polynomial with
// known-nonzero monomial factors (coordinates, declared-nonzero symbols, exp
// factors) stripped; what remains is the genuine side condition.
inline Expr pivot_assumption_form(const Expr& e, const AssumptionSet* ambient) {
    const Context& ctx = *e.context();
    Poly num = e.num();
    Coeff c = detail::poly_rational_content(num);
    if (num.terms.front().coeff < 0) c = -c;
    num = poly_scale(std::move(num), Coeff(1) / c);
    Monomial mc = detail::poly_monomial_content(ctx, num);
    Monomial strip;
    for (const Factor& f : mc.factors)
        if (atom_obviously_nonzero(ctx, f.atom, ambient)) strip.factors.push_back(f);
    if (!strip.factors.empty()) {
        std::vector<Term> ts;
        for (const Term& t : num.terms)
            ts.push_back(Term{t.coeff, mono_factor_div(ctx, t.mono, strip)});
        num.terms = std::move(ts);
    }
    if (num.terms.size() == 1 && num.terms[0].mono.exp_arg) {
        // exp factors are units
        Monomial m = num.terms[0].mono;
        m.exp_arg = nullptr;
        num.terms = {Term{num.terms[0].coeff, std::move(m)}};
    }
    return Expr::from_poly(std::move(num));
}

// clear the denominators of an expression row: returns polynomials that are
// the row entries times a single common nonzero multiplier
inline std::vector<Poly> clear_denominators(const Context& ctx, const std::vector<Expr>& row) {
    std::vector<const Poly*> dens;
    for (const Expr& e : row) {
        if (e.den().is_rational()) continue;
        bool seen = false;
        for (const Poly* d : dens) seen = seen || poly_equal(*d, e.den());
        if (!seen) dens.push_back(&e.den());
    }
    Poly D = poly_one(ctx);
    for (const Poly* d : dens) D = poly_mul(D, *d);
    std::vector<Poly> out;
    out.reserve(row.size());
    for (const Expr& e : row) {
        if (e.is_zero()) {
            out.push_back(poly_zero(ctx));
            continue;
        }
        Poly cof = poly_divide_exact_full(D, e.den());
        out.push_back(poly_mul(e.num(), cof));
    }
    return out;
}

// Fraction-free Bareiss elimination. Rows carry an optional trailing rhs
// column. Returns pivot bookkeeping for rank / solution extraction.
struct BareissResult {
    std::vector<std::vector<Poly>> rows; // echelon state
    std::vector<std::size_t> pivot_row_of_col;
    std::vector<std::size_t> pivot_order; // columns in elimination order
    std::vector<bool> row_used;
    std::vector<Expr> pivot_assumptions;
    int rank = 0;
};

inline BareissResult bareiss_eliminate(const Context& ctx, std::vector<std::vector<Poly>> rows,
                                       std::size_t ncols, const AssumptionSet* ambient) {
    BareissResult br;
    br.pivot_row_of_col.assign(ncols, SIZE_MAX);
    br.row_used.assign(rows.size(), false);
    Poly prev = poly_one(ctx);
    for (std::size_t col = 0; col < ncols; ++col) {
        std::size_t best = SIZE_MAX;
        int best_class = 3;
        std::size_t best_size = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (br.row_used[r] || rows[r][col].is_zero()) continue;
            const Poly& p = rows[r][col];
            int cls = p.is_rational() ? 0 : 2;
            if (cls != 0) {
                Expr pe = Expr::from_poly(p);
                if (obviously_nonzero(pe, ambient)) cls = 1;
            }
            std::size_t sz = p.terms.size();
            if (best == SIZE_MAX || cls < best_class || (cls == best_class && sz < best_size)) {
                best = r;
                best_class = cls;
                best_size = sz;
            }
        }
        if (best == SIZE_MAX) continue;
        br.row_used[best] = true;
        br.pivot_row_of_col[col] = best;
        br.pivot_order.push_back(col);
        ++br.rank;
        const Poly piv = rows[best][col];
        if (best_class == 2) {
            // the honest new condition is the ratio of consecutive minors
            Expr ratio = Expr::from_polys(piv, prev);
            Expr assumption = pivot_assumption_form(ratio, ambient);
            if (!obviously_nonzero(assumption, ambient)) {
                bool seen = false;
                for (const Expr& a : br.pivot_assumptions) seen = seen || a == assumption;
                if (!seen) br.pivot_assumptions.push_back(assumption);
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (br.row_used[r] || r == best) continue;
            const Poly mult = rows[r][col];
            for (std::size_t j = 0; j < rows[r].size(); ++j) {
                Poly t = poly_sub(poly_mul(piv, rows[r][j]), poly_mul(mult, rows[best][j]));
                rows[r][j] = t.is_zero() ? t : poly_divide_exact_full(t, prev);
            }
        }
        prev = piv;
    }
    br.rows = std::move(rows);
    return br;
}

} // namespace detail

// Linear solve over the function field by fraction-free elimination; pivot
// preference: rational constants, then known-nonzero, then fewest terms.
// Every other pivot is recorded as a nonzero assumption.
inline SolutionSpace solve_linear(const Context& ctx, std::vector<std::vector<Expr>> rows,
                                  std::vector<Expr> rhs, std::vector<std::string> unknowns,
                                  const AssumptionSet* ambient = nullptr) {
    const std::size_t ncols = unknowns.size();
    SolutionSpace out;
    out.unknowns = std::move(unknowns);

    std::vector<std::vector<Poly>> prows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool nz = !rhs[i].is_zero();
        for (const Expr& e : rows[i]) nz = nz || !e.is_zero();
        if (!nz) continue;
        rows[i].push_back(rhs[i]);
        prows.push_back(detail::clear_denominators(ctx, rows[i]));
    }

    detail::BareissResult br = detail::bareiss_eliminate(ctx, std::move(prows), ncols, ambient);
    out.pivot_assumptions = br.pivot_assumptions;

    for (std::size_t r = 0; r < br.rows.size(); ++r) {
        if (br.row_used[r]) continue;
        if (!br.rows[r][ncols].is_zero()) {
            out.consistent = false;
            out.certificate = Expr::from_poly(br.rows[r][ncols]);
            return out;
        }
    }
    out.consistent = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < ncols; ++c)
        if (br.pivot_row_of_col[c] == SIZE_MAX) free_cols.push_back(c);

    // back substitution in reverse pivot order over the function field
    auto back_solve = [&](const std::function<Expr(std::size_t)>& free_value,
                          bool homogeneous) -> std::vector<Expr> {
        std::vector<Expr> x(ncols, Expr::zero(ctx));
        for (std::size_t fc : free_cols) x[fc] = free_value(fc);
        for (std::size_t k = br.pivot_order.size(); k-- > 0;) {
            std::size_t col = br.pivot_order[k];
            std::size_t r = br.pivot_row_of_col[col];
            Expr acc = homogeneous ? Expr::zero(ctx) : Expr::from_poly(br.rows[r][ncols]);
            for (std::size_t j = 0; j < ncols; ++j) {
                if (j == col || br.rows[r][j].is_zero()) continue;
                if (x[j].is_zero()) continue;
                acc = acc - Expr::from_poly(br.rows[r][j]) * x[j];
            }
            x[col] = acc / Expr::from_poly(br.rows[r][col]);
        }
        return x;
    };

    out.particular = back_solve([&](std::size_t) { return Expr::zero(ctx); }, false);
    for (std::size_t fc : free_cols) {
        auto v = back_solve(
            [&](std::size_t c) { return c == fc ? Expr::one(ctx) : Expr::zero(ctx); }, true);
        out.basis.push_back(std::move(v));
    }
    return out;
}

// exact rational evaluation; nullopt when exp atoms or fractional powers make
// the value irrational
inline std::optional<Coeff> poly_eval_rational(const Poly& p,
                                               const std::map<AtomId, Coeff>& values) {
    Coeff sum = 0;
    for (const Term& t : p.terms) {
        if (t.mono.exp_arg) return std::nullopt;
        Coeff v = t.coeff;
        for (const Factor& f : t.mono.factors) {
            if (f.exp.denominator() != 1) return std::nullopt;
            auto it = values.find(f.atom);
            if (it == values.end()) return std::nullopt;
            Coeff base = it->second;
            for (long long k = 0; k < f.exp.numerator(); ++k) v *= base;
        }
        sum += v;
    }
    return sum;
}

// Rank of the matrix specialized at random rational points: a sound lower
// bound for the generic rank (specialization can only lower rank).
inline std::optional<int> numeric_rank_probe(const Context& ctx,
                                             const std::vector<std::vector<Expr>>& mat,
                                             int trials = 2) {
    if (mat.empty()) return 0;
    std::vector<AtomId> atoms;
    for (const auto& row : mat)
        for (const Expr& e : row) {
            auto a = e.atoms();
            atoms.insert(atoms.end(), a.begin(), a.end());
        }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    int best = -1;
    for (int t = 0; t < trials; ++t) {
        std::map<AtomId, Coeff> values;
        for (AtomId a : atoms)
            values[a] = Coeff(static_cast<long long>(next() % 37) + 2,
                              static_cast<long long>(next() % 11) + 1);
        std::vector<std::vector<Coeff>> num;
        bool ok = true;
        for (const auto& row : mat) {
            std::vector<Coeff> r;
            for (const Expr& e : row) {
                auto n = poly_eval_rational(e.num(), values);
                auto d = poly_eval_rational(e.den(), values);
                if (!n || !d || *d == 0) {
                    ok = false;
                    break;
                }
                r.push_back(*n / *d);
            }
            if (!ok) break;
            num.push_back(std::move(r));
        }
        if (!ok) continue;
        // plain rational Gaussian elimination
        int rank = 0;
        std::size_t nc = num[0].size();
        std::vector<bool> used(num.size(), false);
        for (std::size_t col = 0; col < nc; ++col) {
            std::size_t piv = SIZE_MAX;
            for (std::size_t r = 0; r < num.size(); ++r)
                if (!used[r] && num[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv == SIZE_MAX) continue;
            used[piv] = true;
            ++rank;
            for (std::size_t r = 0; r < num.size(); ++r) {
                if (used[r] || num[r][col] == 0) continue;
                Coeff f = num[r][col] / num[piv][col];
                for (std::size_t j = col; j < nc; ++j) num[r][j] -= f * num[piv][j];
            }
        }
        best = std::max(best, rank);
    }
    if (best < 0) return std::nullopt;
    return best;
}

// generic rank over the function field; non-obvious pivot minors recorded.
// Small matrices use field elimination (its pivots make readable
// assumptions); larger systems use the fraction-free path.
inline std::pair<int, std::vector<Expr>> generic_rank_rows(const Context& ctx,
                                                           std::vector<std::vector<Expr>> mat,
                                                           const AssumptionSet* ambient) {
    const std::size_t ncols = mat.empty() ? 0 : mat[0].size();
    if (ncols <= 6) {
        int rank = 0;
        std::vector<Expr> assumptions;
        std::vector<bool> used(mat.size(), false);
        for (std::size_t col = 0; col < ncols; ++col) {
            std::size_t best = SIZE_MAX;
            int best_class = 3;
            std::size_t best_size = 0;
            for (std::size_t r = 0; r < mat.size(); ++r) {
                if (used[r] || mat[r][col].is_zero()) continue;
                int cls = mat[r][col].is_rational()
                              ? 0
                              : (detail::obviously_nonzero(mat[r][col], ambient) ? 1 : 2);
                std::size_t sz = mat[r][col].size();
                if (best == SIZE_MAX || cls < best_class ||
                    (cls == best_class && sz < best_size)) {
                    best = r;
                    best_class = cls;
                    best_size = sz;
                }
            }
            if (best == SIZE_MAX) continue;
            used[best] = true;
            ++rank;
            if (best_class == 2) {
                Expr a = detail::pivot_assumption_form(mat[best][col], ambient);
                bool seen = false;
                for (const Expr& e : assumptions) seen = seen || e == a;
                if (!seen) assumptions.push_back(a);
            }
            Expr pivot = mat[best][col];
            for (std::size_t r = 0; r < mat.size(); ++r) {
                if (r == best || used[r] || mat[r][col].is_zero()) continue;
                Expr f = mat[r][col] / pivot;
                for (std::size_t j = col; j < ncols; ++j)
                    if (!mat[best][j].is_zero()) mat[r][j] = mat[r][j] - f * mat[best][j];
            }
        }
        return {rank, std::move(assumptions)};
    }
    std::vector<std::vector<Poly>> prows;
    for (auto& row : mat) {
        bool nz = false;
        for (const Expr& e : row) nz = nz || !e.is_zero();
        if (nz) prows.push_back(detail::clear_denominators(ctx, row));
    }
    detail::BareissResult br = detail::bareiss_eliminate(ctx, std::move(prows), ncols, ambient);
    return {br.rank, br.pivot_assumptions};
}

// Is the given vector a member of the affine family? Solves for the free
// parameters over the function field.
inline bool solution_space_contains(const Context& ctx, const SolutionSpace& s,
                                    const std::vector<Expr>& candidate) {
    if (!s.consistent) return false;
    std::vector<std::vector<Expr>> rows;
    std::vector<Expr> rhs;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        std::vector<Expr> row;
        for (const auto& b : s.basis) row.push_back(b[i]);
        rows.push_back(std::move(row));
        rhs.push_back(candidate[i] - s.particular[i]);
    }
    std::vector<std::string> names(s.basis.size());
    for (std::size_t k = 0; k < names.size(); ++k) names[k] = "t" + std::to_string(k + 1);
    SolutionSpace sol = solve_linear(ctx, std::move(rows), std::move(rhs), std::move(names));
    return sol.consistent;
}

// Rational nullspace of sum_i c_i v_i = 0 with rational unknowns c_i over
// function-field vectors v_i: a basis of the rational solution space.
inline std::vector<std::vector<Coeff>>
rational_nullspace(const Context& ctx, const std::vector<std::vector<Expr>>& vectors) {
    const std::size_t k = vectors.size();
    std::vector<std::vector<Coeff>> basis;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<Coeff> v(k, 0);
        v[c] = 1;
        basis.push_back(std::move(v));
    }
    const std::size_t ncomp = vectors.empty() ? 0 : vectors[0].size();
    for (std::size_t j = 0; j < ncomp && !basis.empty(); ++j) {
        Expr den = Expr::one(ctx);
        for (std::size_t i = 0; i < k; ++i)
            if (!vectors[i][j].is_zero()) den = den * Expr::from_poly(vectors[i][j].den());
        std::vector<Poly> nums;
        for (std::size_t i = 0; i < k; ++i) nums.push_back((vectors[i][j] * den).num());
        std::vector<const Monomial*> monos;
        auto find_mono = [&](const Monomial& m) -> std::size_t {
            for (std::size_t t = 0; t < monos.size(); ++t)
                if (mono_equal(ctx, *monos[t], m)) return t;
            monos.push_back(&m);
            return monos.size() - 1;
        };
        std::vector<std::vector<Coeff>> coef(k);
        std::size_t nm = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (const Term& t : nums[i].terms) {
                std::size_t mi = find_mono(t.mono);
                nm = std::max(nm, mi + 1);
                for (auto& cv : coef) cv.resize(nm, 0);
                coef[i][mi] = t.coeff;
            }
        for (std::size_t mi = 0; mi < nm; ++mi) {
            std::vector<Coeff> row(k, 0);
            for (std::size_t i = 0; i < k; ++i)
                row[i] = mi < coef[i].size() ? coef[i][mi] : Coeff(0);
            std::vector<std::vector<Coeff>> next;
            std::optional<std::vector<Coeff>> carrier;
            Coeff carrier_dot = 0;
            for (auto& bvec : basis) {
                Coeff dot = 0;
                for (std::size_t i = 0; i < k; ++i) dot += row[i] * bvec[i];
                if (dot == 0) {
                    next.push_back(std::move(bvec));
                } else if (!carrier) {
                    carrier = std::move(bvec);
                    carrier_dot = dot;
                } else {
                    std::vector<Coeff> comb(k, 0);
                    for (std::size_t i = 0; i < k; ++i)
                        comb[i] = bvec[i] - (dot / carrier_dot) * (*carrier)[i];
                    next.push_back(std::move(comb));
                }
            }
            basis = std::move(next);
            if (basis.empty()) break;
        }
    }
    return basis;
}

} // namespace symcurv
