#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symcurv/errors.hpp"
#include "symcurv/polynomial.hpp"

// Flattened multivariate polynomials over an anonymous variable list with
// integer exponents. This is the arena in which fraction reduction runs:
// exp-atoms become Laurent variables over a lattice basis and rational powers
// of positive coordinates are rescaled to integers before entering here.

namespace symcurv {

struct FTerm {
    Coeff c;
    std::vector<int> e; // dense exponent vector, size nvars
};

struct FPoly {
    int nvars = 0;
    std::vector<FTerm> terms; // graded-lex descending, nonzero coefficients

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() ||
               (terms.size() == 1 &&
                std::all_of(terms[0].e.begin(), terms[0].e.end(), [](int x) { return x == 0; }));
    }
};

inline int fmono_cmp(const std::vector<int>& a, const std::vector<int>& b) {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
}

inline void fp_sort(FPoly& p) {
    std::sort(p.terms.begin(), p.terms.end(),
              [](const FTerm& x, const FTerm& y) { return fmono_cmp(x.e, y.e) > 0; });
    std::vector<FTerm> out;
    out.reserve(p.terms.size());
    for (FTerm& t : p.terms) {
        if (!out.empty() && out.back().e == t.e)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const FTerm& t) { return t.c == 0; }),
              out.end());
    p.terms = std::move(out);
}

inline FPoly fp_const(int nvars, Coeff c) {
    FPoly p{nvars, {}};
    if (c != 0) p.terms.push_back(FTerm{std::move(c), std::vector<int>(nvars, 0)});
    return p;
}

inline FPoly fp_neg(FPoly p) {
    for (FTerm& t : p.terms) t.c = -t.c;
    return p;
}

inline FPoly fp_add(const FPoly& a, const FPoly& b) {
    FPoly out{a.nvars, {}};
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = fmono_cmp(a.terms[i].e, b.terms[j].e);
        if (c > 0)
            out.terms.push_back(a.terms[i++]);
        else if (c < 0)
            out.terms.push_back(b.terms[j++]);
        else {
            Coeff s = a.terms[i].c + b.terms[j].c;
            if (s != 0) out.terms.push_back(FTerm{std::move(s), a.terms[i].e});
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
    return out;
}

inline FPoly fp_sub(const FPoly& a, const FPoly& b) { return fp_add(a, fp_neg(b)); }

inline FPoly fp_mul(const FPoly& a, const FPoly& b) {
    FPoly out{a.nvars, {}};
    if (a.is_zero() || b.is_zero()) return out;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const FTerm& ta : a.terms)
        for (const FTerm& tb : b.terms) {
            FTerm t{ta.c * tb.c, ta.e};
            for (int k = 0; k < a.nvars; ++k) t.e[k] += tb.e[k];
            out.terms.push_back(std::move(t));
        }
    fp_sort(out);
    return out;
}

inline FPoly fp_scale(FPoly p, const Coeff& c) {
    if (c == 0) return FPoly{p.nvars, {}};
    for (FTerm& t : p.terms) t.c *= c;
    return p;
}

inline FPoly fp_mul_mono(const FPoly& p, const Coeff& c, const std::vector<int>& e) {
    FPoly out{p.nvars, {}};
    if (c == 0) return out;
    out.terms.reserve(p.terms.size());
    for (const FTerm& t : p.terms) {
        FTerm nt{t.c * c, t.e};
        for (int k = 0; k < p.nvars; ++k) nt.e[k] += e[k];
        out.terms.push_back(std::move(nt));
    }
    return out; // monomial shifts preserve graded-lex order
}

inline int fp_degree(const FPoly& p, int var) {
    int d = -1;
    for (const FTerm& t : p.terms) d = std::max(d, t.e[var]);
    return d;
}

// quotient of an exact division, or nullopt when the division is not exact
inline std::optional<FPoly> fp_divide(const FPoly& a, const FPoly& b) {
    if (b.is_zero()) throw EngineError("internal: flat division by zero");
    FPoly rem = a;
    FPoly quo{a.nvars, {}};
    const FTerm& lb = b.terms.front();
    while (!rem.is_zero()) {
        const FTerm& lr = rem.terms.front();
        std::vector<int> e(a.nvars);
        for (int k = 0; k < a.nvars; ++k) {
            e[k] = lr.e[k] - lb.e[k];
            if (e[k] < 0) return std::nullopt;
        }
        Coeff c = lr.c / lb.c;
        quo.terms.push_back(FTerm{c, e});
        rem = fp_sub(rem, fp_mul_mono(b, c, e));
    }
    fp_sort(quo);
    return quo;
}

inline FPoly fp_divide_exact(const FPoly& a, const FPoly& b) {
    auto q = fp_divide(a, b);
    if (!q) throw EngineError("internal: inexact flat division");
    return *q;
}

// rational content: positive c with p/c integer-coefficient and content-free
inline Coeff fp_rational_content(const FPoly& p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (p.is_zero()) return Coeff(1);
    Int g = 0, l = 1;
    for (const FTerm& t : p.terms) {
        g = boost::multiprecision::gcd(g, numerator(t.c) < 0 ? Int(-numerator(t.c)) : numerator(t.c));
        l = boost::multiprecision::lcm(l, denominator(t.c));
    }
    if (g == 0) g = 1;
    return Coeff(g, l);
}

inline std::vector<int> fp_monomial_content(const FPoly& p) {
    std::vector<int> m(p.nvars, 0);
    if (p.is_zero()) return m;
    m = p.terms.front().e;
    for (const FTerm& t : p.terms)
        for (int k = 0; k < p.nvars; ++k) m[k] = std::min(m[k], t.e[k]);
    return m;
}

inline FPoly fp_divide_mono(const FPoly& p, const std::vector<int>& m) {
    FPoly out{p.nvars, {}};
    out.terms.reserve(p.terms.size());
    for (const FTerm& t : p.terms) {
        FTerm nt{t.c, t.e};
        for (int k = 0; k < p.nvars; ++k) {
            nt.e[k] -= m[k];
            if (nt.e[k] < 0) throw EngineError("internal: monomial content underflow");
        }
        out.terms.push_back(std::move(nt));
    }
    return out;
}

FPoly fp_gcd(const FPoly& A, const FPoly& B);

namespace detail {

// univariate view in one variable with FPoly coefficients
inline std::vector<FPoly> fp_univariate(const FPoly& p, int var) {
    std::vector<FPoly> coef(static_cast<std::size_t>(fp_degree(p, var) + 1),
                            FPoly{p.nvars, {}});
    for (const FTerm& t : p.terms) {
        FTerm nt{t.c, t.e};
        int d = nt.e[var];
        nt.e[var] = 0;
        coef[static_cast<std::size_t>(d)].terms.push_back(std::move(nt));
    }
    for (FPoly& c : coef) fp_sort(c);
    return coef;
}

inline FPoly fp_from_univariate(const std::vector<FPoly>& coef, int var, int nvars) {
    FPoly out{nvars, {}};
    for (std::size_t d = 0; d < coef.size(); ++d)
        for (const FTerm& t : coef[d].terms) {
            FTerm nt{t.c, t.e};
            nt.e[var] = static_cast<int>(d);
            out.terms.push_back(std::move(nt));
        }
    fp_sort(out);
    return out;
}

inline int uv_deg(const std::vector<FPoly>& a) {
    for (std::size_t d = a.size(); d-- > 0;)
        if (!a[d].is_zero()) return static_cast<int>(d);
    return -1;
}

inline void uv_trim(std::vector<FPoly>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// pseudo-remainder of a by b in the main variable: lc(b)^(da-db+1) * a mod b
inline std::vector<FPoly> uv_prem(std::vector<FPoly> a, const std::vector<FPoly>& b) {
    int da = uv_deg(a), db = uv_deg(b);
    const FPoly& lb = b[static_cast<std::size_t>(db)];
    int steps = da - db + 1;
    while (true) {
        uv_trim(a);
        da = uv_deg(a);
        if (da < db) break;
        const FPoly la = a[static_cast<std::size_t>(da)];
        for (int k = 0; k <= da; ++k) a[static_cast<std::size_t>(k)] = fp_mul(a[static_cast<std::size_t>(k)], lb);
        for (int k = 0; k <= db; ++k) {
            auto& slot = a[static_cast<std::size_t>(da - db + k)];
            slot = fp_sub(slot, fp_mul(la, b[static_cast<std::size_t>(k)]));
        }
        --steps;
    }
    // apply the remaining lc(b) powers so the subresultant divisions stay exact
    for (; steps > 0; --steps)
        for (FPoly& c : a) c = fp_mul(c, lb);
    return a;
}

// gcd of the coefficient list (content w.r.t. the main variable)
inline FPoly uv_content(const std::vector<FPoly>& a, int nvars) {
    FPoly g{nvars, {}};
    for (const FPoly& c : a) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : fp_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

inline FPoly fp_pow(const FPoly& p, int n) {
    FPoly r = fp_const(p.nvars, 1);
    for (int i = 0; i < n; ++i) r = fp_mul(r, p);
    return r;
}

} // namespace detail

// Multivariate gcd, positive rational-content-free with positive leading
// coefficient. Subresultant PRS with recursive contents.
inline FPoly fp_gcd(const FPoly& A, const FPoly& B) {
    using namespace detail;
    if (A.is_zero() && B.is_zero()) return FPoly{A.nvars, {}};
    auto normalize = [](FPoly p) {
        Coeff c = fp_rational_content(p);
        if (!p.is_zero() && p.terms.front().c < 0) c = -c;
        return fp_scale(std::move(p), Coeff(1) / c);
    };
    if (A.is_zero()) return normalize(B);
    if (B.is_zero()) return normalize(A);

    std::vector<int> ma = fp_monomial_content(A), mb = fp_monomial_content(B), mg(A.nvars);
    for (int k = 0; k < A.nvars; ++k) mg[k] = std::min(ma[k], mb[k]);
    FPoly a = normalize(fp_divide_mono(A, ma));
    FPoly b = normalize(fp_divide_mono(B, mb));

    FPoly g;
    if (a.is_constant() || b.is_constant()) {
        g = fp_const(A.nvars, 1);
    } else {
        // pick the main variable minimizing the larger degree
        int var = -1, best = 0;
        for (int v = 0; v < A.nvars; ++v) {
            int da = fp_degree(a, v), db = fp_degree(b, v);
            if (da <= 0 || db <= 0) continue;
            int m = std::max(da, db);
            if (var < 0 || m < best) var = v, best = m;
        }
        if (var < 0) {
            g = fp_const(A.nvars, 1); // no shared variable
        } else {
            auto ua = fp_univariate(a, var);
            auto ub = fp_univariate(b, var);
            FPoly ca = uv_content(ua, A.nvars);
            FPoly cb = uv_content(ub, A.nvars);
            FPoly gamma = fp_gcd(ca, cb);
            for (FPoly& c : ua) c = fp_divide_exact(c, ca);
            for (FPoly& c : ub) c = fp_divide_exact(c, cb);
            if (uv_deg(ua) < uv_deg(ub)) std::swap(ua, ub);

            FPoly gg = fp_const(A.nvars, 1), hh = fp_const(A.nvars, 1);
            while (true) {
                int da = uv_deg(ua), db = uv_deg(ub);
                int delta = da - db;
                auto r = uv_prem(ua, ub);
                uv_trim(r);
                if (r.empty()) break;
                if (uv_deg(r) == 0) {
                    ub = {fp_const(A.nvars, 1)};
                    break;
                }
                FPoly divisor = fp_mul(gg, fp_pow(hh, delta));
                ua = std::move(ub);
                ub = std::move(r);
                for (FPoly& c : ub) c = fp_divide_exact(c, divisor);
                gg = ua[static_cast<std::size_t>(uv_deg(ua))];
                hh = delta == 0 ? hh
                                : fp_divide_exact(fp_pow(gg, delta), fp_pow(hh, delta - 1));
            }
            FPoly cand = fp_from_univariate(ub, var, A.nvars);
            FPoly cc = uv_content(fp_univariate(cand, var), A.nvars);
            cand = fp_divide_exact(cand, cc); // primitive part in the main variable
            g = normalize(fp_mul(gamma, cand));
        }
    }
    g = fp_mul_mono(g, Coeff(1), mg);
    return normalize(g);
}

// ---------------------------------------------------------------------------
// Hermite basis of the lattice spanned by integer rows: used to rewrite the
// multiplicative group of exp-atoms as Laurent variables.

struct HermiteBasis {
    std::vector<std::vector<Int>> rows; // echelon, positive pivots
    std::vector<std::size_t> pivots;

    // integer coordinates of v in the basis (v must lie in the lattice)
    std::vector<Int> express(std::vector<Int> v) const {
        std::vector<Int> coords(rows.size(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Int& piv = rows[i][pivots[i]];
            Int q = v[pivots[i]] / piv;
            if (q * piv != v[pivots[i]])
                throw EngineError("internal: vector outside the exp lattice");
            coords[i] = q;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= q * rows[i][k];
        }
        for (const Int& x : v)
            if (x != 0) throw EngineError("internal: vector outside the exp lattice");
        return coords;
    }
};

inline HermiteBasis hermite_basis(std::vector<std::vector<Int>> gens) {
    HermiteBasis hb;
    auto insert_row = [&](std::vector<Int> v) {
        while (true) {
            std::size_t lead = v.size();
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k] != 0) {
                    lead = k;
                    break;
                }
            if (lead == v.size()) return;
            std::size_t pos = 0;
            while (pos < hb.pivots.size() && hb.pivots[pos] < lead) ++pos;
            if (pos == hb.pivots.size() || hb.pivots[pos] != lead) {
                if (v[lead] < 0)
                    for (Int& x : v) x = -x;
                hb.rows.insert(hb.rows.begin() + static_cast<std::ptrdiff_t>(pos), v);
                hb.pivots.insert(hb.pivots.begin() + static_cast<std::ptrdiff_t>(pos), lead);
                return;
            }
            // combine with the existing row using the extended gcd
            std::vector<Int>& r = hb.rows[pos];
            Int a = r[lead], b = v[lead];
            Int old_r = a, old_v = b;
            // extended gcd(a, b)
            Int s0 = 1, s1 = 0, t0 = 0, t1 = 1, x = a, y = b;
            while (y != 0) {
                Int q = x / y;
                Int tmp = x - q * y; x = y; y = tmp;
                tmp = s0 - q * s1; s0 = s1; s1 = tmp;
                tmp = t0 - q * t1; t0 = t1; t1 = tmp;
            }
            const Int g = x; // s0*a + t0*b == g
            std::vector<Int> comb(v.size()), rest(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) {
                comb[k] = s0 * r[k] + t0 * v[k];
                rest[k] = (old_r / g) * v[k] - (old_v / g) * r[k];
            }
            r = std::move(comb);
            v = std::move(rest);
        }
    };
    for (auto& g : gens) insert_row(std::move(g));
    // reduce entries above pivots for a canonical echelon form
    for (std::size_t i = hb.rows.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            Int& entry = hb.rows[j][hb.pivots[i]];
            if (entry == 0) continue;
            Int piv = hb.rows[i][hb.pivots[i]];
            Int q = entry / piv;
            Int rem = entry - q * piv;
            if (rem < 0) q -= 1;
            if (q == 0) continue;
            for (std::size_t k = 0; k < hb.rows[j].size(); ++k)
                hb.rows[j][k] -= q * hb.rows[i][k];
        }
    }
    return hb;
}

} // namespace symcurv
