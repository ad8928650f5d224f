#pragma once

#include <functional>
#include <optional>
#include <sstream>

#include "symcurv/catalog.hpp"
#include "symcurv/linear.hpp"
#include "symcurv/operators.hpp"

namespace symcurv {

enum class Status { Holds, Fails, HoldsUnderAssumptions, Vacuous };

inline std::string status_name(Status s) {
    switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::HoldsUnderAssumptions: return "holds-under-assumptions";
    case Status::Vacuous: return "vacuous";
    }
    return "?";
}

struct PropertyVerdict {
    std::string property;
    Status status = Status::Fails;
    std::vector<std::string> assumptions;              // nonzero side conditions used
    std::vector<std::pair<std::string, std::string>> witness; // named scalars / 1-forms
    std::string certificate;                           // a nonzero residual when it fails
    std::vector<std::string> notes;
    std::optional<SolutionSpace> space;
};

struct ClassificationReport {
    std::string metric;
    std::vector<std::string> ambient_assumptions;
    std::vector<PropertyVerdict> verdicts;

    const PropertyVerdict* find(const std::string& name) const {
        for (const auto& v : verdicts)
            if (v.property == name) return &v;
        return nullptr;
    }
};

// All derived geometry of one (possibly specialized) metric. Ambient
// substitutions are re-applied to every derived tensor: differentiation
// regenerates derivative symbols, and relations like w_xx -> -w_yy must
// reduce them again (the substitution cascade keeps them differentially
// consistent).
struct GeometryCache {
    const MetricBundle* bundle = nullptr;
    MetricField metric; // reduced copy
    CurvatureData cd;
    TensorField C, W, K, P, Gauss, T;
    TensorField nablaR, nablaS, nablaC, nablaT;

    const MetricField& m() const { return metric; }
    const Context& ctx() const { return *bundle->ctx; }
    const AssumptionSet& ambient() const { return bundle->assumptions; }

    TensorField reduce(TensorField t) const {
        if (ambient().substitutions().empty()) return t;
        return tensor_substitute(t, ambient());
    }
    TensorField nabla(const TensorField& t) const { return reduce(covariant_derivative(t, m())); }
};

inline GeometryCache make_cache(const MetricBundle& b) {
    GeometryCache g;
    g.bundle = &b;
    g.metric = b.metric;
    const bool subs = !b.assumptions.substitutions().empty();
    if (subs) {
        g.metric.g = tensor_substitute(g.metric.g, b.assumptions);
        g.metric.ginv = tensor_substitute(g.metric.ginv, b.assumptions);
        g.metric.gamma = tensor_substitute(g.metric.gamma, b.assumptions);
        g.metric.det = substitute(g.metric.det, b.assumptions);
    }
    g.cd = curvature_data(g.metric);
    if (subs) {
        g.cd.op = g.reduce(std::move(g.cd.op));
        g.cd.riemann = g.reduce(std::move(g.cd.riemann));
        g.cd.ricci = g.reduce(std::move(g.cd.ricci));
        g.cd.kappa = substitute(g.cd.kappa, b.assumptions);
    }
    g.C = g.reduce(derived_tensor(DerivedTensorKind::Conformal, g.metric, g.cd));
    g.W = g.reduce(derived_tensor(DerivedTensorKind::Concircular, g.metric, g.cd));
    g.K = g.reduce(derived_tensor(DerivedTensorKind::Conharmonic, g.metric, g.cd));
    g.P = g.reduce(derived_tensor(DerivedTensorKind::Projective, g.metric, g.cd));
    g.Gauss = g.reduce(derived_tensor(DerivedTensorKind::Gaussian, g.metric, g.cd));
    g.T = g.reduce(energy_momentum(g.metric, g.cd));
    g.nablaR = g.nabla(g.cd.riemann);
    g.nablaS = g.nabla(g.cd.ricci);
    g.nablaC = g.nabla(g.C);
    g.nablaT = g.nabla(g.T);
    return g;
}

namespace detail {

inline std::string index_string(const std::vector<int>& idx) {
    std::string s = "[";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "]";
}

// first structurally nonzero component, as a refutation certificate
inline std::optional<std::pair<std::vector<int>, Expr>> first_nonzero(const TensorField& t) {
    std::optional<std::pair<std::vector<int>, Expr>> out;
    for_each_index(t.rank(), t.n(), [&](const std::vector<int>& idx) {
        if (out) return;
        const Expr& e = t.at(idx);
        if (!e.is_zero()) out = std::make_pair(idx, e);
    });
    return out;
}

inline PropertyVerdict zero_tensor_verdict(std::string name, const TensorField& t) {
    PropertyVerdict v;
    v.property = std::move(name);
    auto nz = first_nonzero(t);
    if (!nz) {
        v.status = Status::Holds;
    } else {
        v.status = Status::Fails;
        v.certificate = index_string(nz->first) + " = " + to_string(nz->second);
    }
    return v;
}

inline void attach_solution(PropertyVerdict& v, SolutionSpace s,
                            const std::vector<std::string>& unknown_groups = {}) {
    if (!s.consistent) {
        v.status = Status::Fails;
        v.certificate = "inconsistent: 0 = " + to_string(s.certificate);
    } else {
        v.status = s.pivot_assumptions.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
        for (const Expr& a : s.pivot_assumptions) v.assumptions.push_back(to_string(a));
        for (std::size_t i = 0; i < s.unknowns.size(); ++i)
            v.witness.push_back({s.unknowns[i], to_string(s.particular[i])});
        v.witness.push_back({"free_parameters", std::to_string(s.dimension())});
    }
    (void)unknown_groups;
    v.space = std::move(s);
}

inline std::vector<std::string> indexed_names(const std::string& base, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(base + "_" + std::to_string(i));
    return out;
}

} // namespace detail

// --- Def 2.1 / 2.2: parallel, Codazzi, cyclic parallel, recurrent ----------

// Z: symmetric (0,2); nablaZ stored as Z_{ij,d}. Standard meanings:
// Codazzi = vanishing antisymmetrized derivative, cyclic parallel = vanishing
// cyclic sum.
inline std::vector<PropertyVerdict> derivative_class(const std::string& prefix,
                                                     const TensorField& Z,
                                                     const TensorField& nablaZ,
                                                     const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const int n = Z.n();
    std::vector<PropertyVerdict> out;

    out.push_back(detail::zero_tensor_verdict(prefix + "_parallel", nablaZ));

    TensorField cod(ctx, {Slot::Cov, Slot::Cov, Slot::Cov});
    for_each_index(3, n, [&](const std::vector<int>& idx) {
        int x = idx[0], y = idx[1], z = idx[2];
        cod.at(idx) = nablaZ.at({y, z, x}) - nablaZ.at({x, z, y});
    });
    out.push_back(detail::zero_tensor_verdict(prefix + "_codazzi", cod));

    out.push_back(detail::zero_tensor_verdict(prefix + "_cyclic_parallel",
                                              cyclic_sum(nablaZ, 3, 1, 2)));

    PropertyVerdict rec;
    rec.property = prefix + "_recurrent";
    if (Z.is_zero()) {
        rec.status = Status::Vacuous;
    } else {
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for_each_index(3, n, [&](const std::vector<int>& idx) {
            std::vector<Expr> row(static_cast<std::size_t>(n), Expr::zero(ctx));
            row[static_cast<std::size_t>(idx[2] - 1)] = Z.at({idx[0], idx[1]});
            rows.push_back(std::move(row));
            rhs.push_back(nablaZ.at(idx));
        });
        detail::attach_solution(rec, solve_linear(ctx, std::move(rows), std::move(rhs),
                                                  detail::indexed_names("Pi", n), &g.ambient()));
    }
    out.push_back(std::move(rec));
    return out;
}

// --- Def 2.3: semisymmetric / pseudosymmetric type --------------------------

inline PropertyVerdict semisymmetry_check(const std::string& name, const TensorField& D,
                                          const TensorField& H, const GeometryCache& g) {
    return detail::zero_tensor_verdict(name, dot_action(D, H, g.m()));
}

// nullspace of (c_1,...,c_k) -> sum c_i t_i over the function field, with a
// note whether rational-constant relations exist
inline PropertyVerdict find_linear_relation(const std::string& name,
                                            const std::vector<const TensorField*>& tensors,
                                            const GeometryCache& g) {
    PropertyVerdict v;
    v.property = name;
    const Context& ctx = g.ctx();
    bool all_zero = true;
    for (const TensorField* t : tensors)
        if (!t->is_zero()) all_zero = false;
    if (all_zero) {
        v.status = Status::Vacuous;
        v.notes.push_back("all input tensors vanish");
        return v;
    }
    const std::size_t k = tensors.size();
    std::vector<std::vector<Expr>> rows;
    std::vector<Expr> rhs;
    for_each_index(tensors[0]->rank(), tensors[0]->n(), [&](const std::vector<int>& idx) {
        std::vector<Expr> row;
        bool nz = false;
        for (const TensorField* t : tensors) {
            row.push_back(t->at(idx));
            nz = nz || !t->at(idx).is_zero();
        }
        if (nz) {
            rows.push_back(std::move(row));
            rhs.push_back(Expr::zero(ctx));
        }
    });
    SolutionSpace s = solve_linear(ctx, rows, rhs, detail::indexed_names("c", static_cast<int>(k)),
                                   &g.ambient());
    if (s.dimension() == 0) {
        v.status = Status::Fails;
        v.certificate = "only the trivial relation exists";
        v.space = std::move(s);
        return v;
    }
    v.status = s.pivot_assumptions.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
    for (const Expr& a : s.pivot_assumptions) v.assumptions.push_back(to_string(a));
    // present the basis of relations
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
        std::string rel;
        for (std::size_t i = 0; i < k; ++i) {
            if (i) rel += ", ";
            rel += to_string(s.basis[b][i]);
        }
        v.witness.push_back({"relation_" + std::to_string(b + 1), "(" + rel + ")"});
    }
    std::vector<std::vector<Expr>> vecs;
    for (const TensorField* t : tensors) vecs.push_back(t->comp);
    auto rat = rational_nullspace(ctx, vecs);
    if (!rat.empty()) {
        std::string rel;
        for (std::size_t i = 0; i < k; ++i) {
            if (i) rel += ", ";
            std::ostringstream os;
            os << rat[0][i];
            rel += os.str();
        }
        v.witness.push_back({"constant_relation", "(" + rel + ")"});
    } else {
        v.notes.push_back("no constant-coefficient relation");
    }
    v.space = std::move(s);
    return v;
}

// --- rank machinery ---------------------------------------------------------

inline std::pair<int, std::vector<Expr>> generic_rank(const Context& ctx,
                                                      std::vector<std::vector<Expr>> mat,
                                                      const AssumptionSet* ambient) {
    return generic_rank_rows(ctx, std::move(mat), ambient);
}

inline std::vector<std::vector<Expr>> matrix_of(const TensorField& t) {
    const int n = t.n();
    std::vector<std::vector<Expr>> m(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m[static_cast<std::size_t>(i - 1)].push_back(t.at({i, j}));
    return m;
}

// --- Def 2.4: quasi-Einstein level ------------------------------------------

// candidate alpha values come from the 1x1 and 2x2 minors of S - alpha g that
// are linear in alpha
inline std::vector<Expr> quasi_einstein_candidates(const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const TensorField& S = g.cd.ricci;
    const TensorField& gm = g.m().g;
    const int n = S.n();
    std::vector<Expr> cands{Expr::zero(ctx)};
    auto push = [&](const Expr& e) {
        for (const Expr& c : cands)
            if (c == e) return;
        cands.push_back(e);
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            if (!gm.at({i, j}).is_zero()) push(S.at({i, j}) / gm.at({i, j}));
    // 2x2 minors: det of rows (i1,i2), cols (j1,j2) of (S - alpha g) is
    // quadratic in alpha; keep roots of the degenerate linear cases
    for (int i1 = 1; i1 <= n; ++i1)
        for (int i2 = i1 + 1; i2 <= n; ++i2)
            for (int j1 = 1; j1 <= n; ++j1)
                for (int j2 = j1 + 1; j2 <= n; ++j2) {
                    const Expr &sa = S.at({i1, j1}), &sb = S.at({i1, j2});
                    const Expr &sc = S.at({i2, j1}), &sd = S.at({i2, j2});
                    const Expr &ga = gm.at({i1, j1}), &gb = gm.at({i1, j2});
                    const Expr &gc = gm.at({i2, j1}), &gd = gm.at({i2, j2});
                    Expr c2 = ga * gd - gb * gc;
                    if (!c2.is_zero()) continue;
                    Expr c1 = ga * sd + gd * sa - gb * sc - gc * sb; // -coefficient of alpha
                    Expr c0 = sa * sd - sb * sc;
                    if (!c1.is_zero()) push(c0 / c1);
                }
    return cands;
}

inline PropertyVerdict quasi_einstein_level(const GeometryCache& g) {
    PropertyVerdict v;
    v.property = "quasi_einstein_level";
    const Context& ctx = g.ctx();
    int best_rank = -1;
    Expr best_alpha = Expr::zero(ctx);
    std::vector<Expr> best_assumptions;
    const int n = g.cd.ricci.n();
    for (const Expr& alpha : quasi_einstein_candidates(g)) {
        TensorField d = tensor_sub(g.cd.ricci, tensor_scale(g.m().g, alpha));
        auto mat = matrix_of(d);
        // a full-rank probe settles the candidate without symbolic elimination
        auto probe = numeric_rank_probe(ctx, mat);
        if (probe && *probe == n) {
            if (best_rank < 0) {
                best_rank = n;
                best_alpha = alpha;
                best_assumptions.clear();
            }
            continue;
        }
        auto [rank, assume] = generic_rank(ctx, std::move(mat), &g.ambient());
        if (best_rank < 0 || rank < best_rank) {
            best_rank = rank;
            best_alpha = alpha;
            best_assumptions = std::move(assume);
        }
    }
    v.status = best_assumptions.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
    for (const Expr& a : best_assumptions) v.assumptions.push_back(to_string(a));
    v.witness.push_back({"level", std::to_string(best_rank)});
    v.witness.push_back({"alpha", to_string(best_alpha)});
    return v;
}

// Ricci simple: rank(S) <= 1 (alpha = 0) with the factorization S = beta eta x eta
inline PropertyVerdict ricci_simple(const GeometryCache& g) {
    PropertyVerdict v;
    v.property = "ricci_simple";
    const Context& ctx = g.ctx();
    const TensorField& S = g.cd.ricci;
    auto [rank, assume] = generic_rank(ctx, matrix_of(S), &g.ambient());
    if (rank > 1) {
        v.status = Status::Fails;
        v.certificate = "rank(S) = " + std::to_string(rank);
        return v;
    }
    v.status = assume.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
    for (const Expr& a : assume) v.assumptions.push_back(to_string(a));
    if (rank == 0) {
        v.notes.push_back("Ricci tensor vanishes");
        return v;
    }
    const int n = S.n();
    int k = 0;
    for (int i = 1; i <= n && !k; ++i)
        if (!S.at({i, i}).is_zero()) k = i;
    if (k) {
        Expr beta = S.at({k, k});
        std::vector<std::string> eta;
        std::vector<Expr> eta_e;
        for (int i = 1; i <= n; ++i) eta_e.push_back(S.at({i, k}) / beta);
        std::string etas = "{";
        for (int i = 0; i < n; ++i) etas += (i ? ", " : "") + to_string(eta_e[static_cast<std::size_t>(i)]);
        etas += "}";
        // g-norm of eta
        Expr norm = Expr::zero(ctx);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                norm = norm + g.m().ginv.at({i, j}) * eta_e[static_cast<std::size_t>(i - 1)] *
                           eta_e[static_cast<std::size_t>(j - 1)];
        v.witness.push_back({"beta", to_string(beta)});
        v.witness.push_back({"eta", etas});
        v.witness.push_back({"eta_norm", to_string(norm)});
    }
    return v;
}

// --- Def 2.5: Ein(k) ---------------------------------------------------------

// minimal monic polynomial of the Ricci endomorphism; Ein(degree)
inline PropertyVerdict ein_level(const GeometryCache& g) {
    PropertyVerdict v;
    v.property = "ein_level";
    const Context& ctx = g.ctx();
    const int n = g.cd.ricci.n();
    TensorField endo = endomorphism_of(g.cd.ricci, g.m());
    std::vector<TensorField> powers; // endo^0 = I, endo^1, ...
    TensorField id(ctx, {Slot::Con, Slot::Cov});
    for (int i = 1; i <= n; ++i) id.at({i, i}) = Expr::one(ctx);
    powers.push_back(id);
    for (int k = 1; k <= n; ++k) {
        TensorField next(ctx, {Slot::Con, Slot::Cov});
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Expr sum = Expr::zero(ctx);
                for (int l = 1; l <= n; ++l)
                    if (!endo.at({i, l}).is_zero() && !powers.back().at({l, j}).is_zero())
                        sum = sum + endo.at({i, l}) * powers.back().at({l, j});
                next.at({i, j}) = sum;
            }
        powers.push_back(std::move(next));
    }
    for (int d = 1; d <= n; ++d) {
        // S^d = sum_{k<d} mu_k S^k ?
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::vector<Expr> row;
                for (int k = 0; k < d; ++k) row.push_back(powers[static_cast<std::size_t>(k)].at({i, j}));
                rows.push_back(std::move(row));
                rhs.push_back(powers[static_cast<std::size_t>(d)].at({i, j}));
            }
        SolutionSpace s = solve_linear(ctx, std::move(rows), std::move(rhs),
                                       detail::indexed_names("mu", d), &g.ambient());
        if (s.consistent) {
            v.status = s.pivot_assumptions.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
            for (const Expr& a : s.pivot_assumptions) v.assumptions.push_back(to_string(a));
            v.witness.push_back({"minimal_degree", std::to_string(d)});
            // lambda_i are the negated mu in decreasing power order
            for (int k = d - 1; k >= 0; --k)
                v.witness.push_back({"lambda_for_S^" + std::to_string(k),
                                     to_string(-s.particular[static_cast<std::size_t>(k)])});
            if (n == 4) {
                if (d <= 3)
                    v.notes.push_back("a degree-3 relation exists (Ein(3))");
                else
                    v.notes.push_back("no degree-3 relation over the function field; minimal degree is 4 (Ein(4) only)");
            }
            v.space = std::move(s);
            return v;
        }
    }
    v.status = Status::Fails;
    v.certificate = "no monic relation up to degree n (unexpected for n x n endomorphisms)";
    return v;
}

// --- Def 2.11: recurrence of tensors, 1-forms, 2-forms ------------------------

enum class RecurrenceTarget {
    Riemann,
    Ricci,
    Conformal,
    RicciOneForms,
    CurvatureTwoForms,
    ConformalTwoForms,
    SuperGeneralized
};

inline PropertyVerdict solve_recurrence(RecurrenceTarget target, const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const int n = g.cd.ricci.n();
    PropertyVerdict v;
    auto vac = [&](const TensorField& t) {
        if (!t.is_zero()) return false;
        v.status = Status::Vacuous;
        v.notes.push_back("target tensor vanishes");
        return true;
    };
    switch (target) {
    case RecurrenceTarget::Riemann:
    case RecurrenceTarget::Ricci:
    case RecurrenceTarget::Conformal: {
        const TensorField& Z = target == RecurrenceTarget::Riemann
                                   ? g.cd.riemann
                                   : (target == RecurrenceTarget::Ricci ? g.cd.ricci : g.C);
        const TensorField& nZ = target == RecurrenceTarget::Riemann
                                    ? g.nablaR
                                    : (target == RecurrenceTarget::Ricci ? g.nablaS : g.nablaC);
        v.property = target == RecurrenceTarget::Riemann
                         ? "riemann_recurrent"
                         : (target == RecurrenceTarget::Ricci ? "ricci_recurrent"
                                                              : "conformal_recurrent");
        if (vac(Z)) return v;
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for_each_index(nZ.rank(), n, [&](const std::vector<int>& idx) {
            std::vector<Expr> row(static_cast<std::size_t>(n), Expr::zero(ctx));
            std::vector<int> zi(idx.begin(), idx.end() - 1);
            row[static_cast<std::size_t>(idx.back() - 1)] = Z.at(zi);
            rows.push_back(std::move(row));
            rhs.push_back(nZ.at(idx));
        });
        detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs),
                                                detail::indexed_names("Pi", n), &g.ambient()));
        return v;
    }
    case RecurrenceTarget::RicciOneForms: {
        v.property = "ricci_1forms_recurrent";
        const TensorField& S = g.cd.ricci;
        if (vac(S)) return v;
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for (int x1 = 1; x1 <= n; ++x1)
            for (int x2 = x1 + 1; x2 <= n; ++x2)
                for (int x = 1; x <= n; ++x) {
                    std::vector<Expr> row(static_cast<std::size_t>(n), Expr::zero(ctx));
                    row[static_cast<std::size_t>(x1 - 1)] =
                        row[static_cast<std::size_t>(x1 - 1)] + S.at({x2, x});
                    row[static_cast<std::size_t>(x2 - 1)] =
                        row[static_cast<std::size_t>(x2 - 1)] - S.at({x1, x});
                    rows.push_back(std::move(row));
                    rhs.push_back(g.nablaS.at({x2, x, x1}) - g.nablaS.at({x1, x, x2}));
                }
        detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs),
                                                detail::indexed_names("Pi", n), &g.ambient()));
        return v;
    }
    case RecurrenceTarget::CurvatureTwoForms:
    case RecurrenceTarget::ConformalTwoForms: {
        const bool conf = target == RecurrenceTarget::ConformalTwoForms;
        v.property = conf ? "conformal_2forms_recurrent" : "curvature_2forms_recurrent";
        const TensorField& D = conf ? g.C : g.cd.riemann;
        const TensorField& nD = conf ? g.nablaC : g.nablaR;
        if (vac(D)) return v;
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for_each_index(5, n, [&](const std::vector<int>& idx) {
            int x1 = idx[0], x2 = idx[1], x3 = idx[2], x = idx[3], y = idx[4];
            if (x1 > x2 || x1 > x3) return; // cyclic rotations give the same equation
            std::vector<Expr> row(static_cast<std::size_t>(n), Expr::zero(ctx));
            row[static_cast<std::size_t>(x1 - 1)] =
                row[static_cast<std::size_t>(x1 - 1)] + D.at({x2, x3, x, y});
            row[static_cast<std::size_t>(x2 - 1)] =
                row[static_cast<std::size_t>(x2 - 1)] + D.at({x3, x1, x, y});
            row[static_cast<std::size_t>(x3 - 1)] =
                row[static_cast<std::size_t>(x3 - 1)] + D.at({x1, x2, x, y});
            rows.push_back(std::move(row));
            rhs.push_back(nD.at({x2, x3, x, y, x1}) + nD.at({x3, x1, x, y, x2}) +
                          nD.at({x1, x2, x, y, x3}));
        });
        detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs),
                                                detail::indexed_names("Pi", n), &g.ambient()));
        return v;
    }
    case RecurrenceTarget::SuperGeneralized: {
        v.property = "super_generalized_recurrent";
        if (vac(g.cd.riemann)) return v;
        TensorField SS = kulkarni_nomizu(g.cd.ricci, g.cd.ricci);
        TensorField gS = kulkarni_nomizu(g.m().g, g.cd.ricci);
        TensorField gg = kulkarni_nomizu(g.m().g, g.m().g);
        std::vector<std::vector<Expr>> rows;
        std::vector<Expr> rhs;
        for_each_index(5, n, [&](const std::vector<int>& idx) {
            std::vector<int> zi(idx.begin(), idx.end() - 1);
            int m = idx.back();
            std::vector<Expr> row(static_cast<std::size_t>(4 * n), Expr::zero(ctx));
            row[static_cast<std::size_t>(m - 1)] = g.cd.riemann.at(zi);
            row[static_cast<std::size_t>(n + m - 1)] = SS.at(zi);
            row[static_cast<std::size_t>(2 * n + m - 1)] = gS.at(zi);
            row[static_cast<std::size_t>(3 * n + m - 1)] = gg.at(zi);
            rows.push_back(std::move(row));
            rhs.push_back(g.nablaR.at(idx));
        });
        std::vector<std::string> names;
        for (const char* base : {"Pi", "Omega", "Theta", "omega"})
            for (int i = 1; i <= n; ++i) names.push_back(std::string(base) + "_" + std::to_string(i));
        detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs), names,
                                                &g.ambient()));
        return v;
    }
    }
    throw EngineError("unreachable");
}

// --- Def 2.8 / 2.9 / 2.10: weak symmetry -------------------------------------

enum class WeakSymmetryTarget { ZTensor, DTensor, CyclicRicci };

inline PropertyVerdict solve_weak_symmetry(const std::string& name, WeakSymmetryTarget kind,
                                           const TensorField& Z, const TensorField& nablaZ,
                                           const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const int n = Z.n();
    PropertyVerdict v;
    v.property = name;
    if (Z.is_zero()) {
        v.status = Status::Vacuous;
        v.notes.push_back("target tensor vanishes");
        return v;
    }
    std::vector<std::vector<Expr>> rows;
    std::vector<Expr> rhs;
    std::vector<std::string> names;
    if (kind == WeakSymmetryTarget::ZTensor || kind == WeakSymmetryTarget::CyclicRicci) {
        for (const char* base : {"Pi", "Omega", "Theta"})
            for (int i = 1; i <= n; ++i) names.push_back(std::string(base) + "_" + std::to_string(i));
        for_each_index(3, n, [&](const std::vector<int>& idx) {
            int x = idx[0], x1 = idx[1], x2 = idx[2];
            std::vector<Expr> row(static_cast<std::size_t>(3 * n), Expr::zero(ctx));
            row[static_cast<std::size_t>(x - 1)] = row[static_cast<std::size_t>(x - 1)] + Z.at({x1, x2});
            row[static_cast<std::size_t>(n + x1 - 1)] =
                row[static_cast<std::size_t>(n + x1 - 1)] + Z.at({x, x2});
            row[static_cast<std::size_t>(2 * n + x2 - 1)] =
                row[static_cast<std::size_t>(2 * n + x2 - 1)] + Z.at({x1, x});
            rows.push_back(std::move(row));
            if (kind == WeakSymmetryTarget::ZTensor)
                rhs.push_back(nablaZ.at({x1, x2, x}));
            else
                rhs.push_back(nablaZ.at({x1, x2, x}) + nablaZ.at({x, x2, x1}) +
                              nablaZ.at({x1, x, x2}));
        });
    } else {
        for (const char* base : {"Pi", "Omega", "OmegaBar", "Theta", "ThetaBar"})
            for (int i = 1; i <= n; ++i) names.push_back(std::string(base) + "_" + std::to_string(i));
        for_each_index(5, n, [&](const std::vector<int>& idx) {
            int x = idx[0], x1 = idx[1], x2 = idx[2], x3 = idx[3], x4 = idx[4];
            std::vector<Expr> row(static_cast<std::size_t>(5 * n), Expr::zero(ctx));
            auto add = [&](int group, int which, const Expr& val) {
                auto& slot = row[static_cast<std::size_t>(group * n + which - 1)];
                slot = slot + val;
            };
            add(0, x, Z.at({x1, x2, x3, x4}));
            add(1, x1, Z.at({x, x2, x3, x4}));
            add(2, x2, Z.at({x1, x, x3, x4}));
            add(3, x3, Z.at({x1, x2, x, x4}));
            add(4, x4, Z.at({x1, x2, x3, x}));
            rows.push_back(std::move(row));
            rhs.push_back(nablaZ.at({x1, x2, x3, x4, x}));
        });
    }
    detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs), names,
                                            &g.ambient()));
    if (v.status == Status::Holds || v.status == Status::HoldsUnderAssumptions) {
        // Chaki pseudosymmetry: a member of the (2 Pi, Pi, ..., Pi) shape?
        int groups = kind == WeakSymmetryTarget::DTensor ? 5 : 3;
        std::vector<std::vector<Expr>> rws;
        std::vector<Expr> rh;
        const SolutionSpace& s = *v.space;
        // unknowns: Pi (n) and the free parameters t of the affine family;
        // equations: member(t) == pattern(Pi)
        std::size_t nt = s.basis.size();
        for (std::size_t compi = 0; compi < s.unknowns.size(); ++compi) {
            std::vector<Expr> row(static_cast<std::size_t>(n) + nt, Expr::zero(ctx));
            int group = static_cast<int>(compi) / n;
            int which = static_cast<int>(compi) % n;
            Expr patc = group == 0 ? Expr::rational(ctx, 2) : Expr::one(ctx);
            row[static_cast<std::size_t>(which)] = patc;
            for (std::size_t t = 0; t < nt; ++t)
                row[static_cast<std::size_t>(n) + t] = -s.basis[t][compi];
            rws.push_back(std::move(row));
            rh.push_back(s.particular[compi]);
        }
        (void)groups;
        std::vector<std::string> nm = detail::indexed_names("Pi", n);
        for (std::size_t t = 0; t < nt; ++t) nm.push_back("t" + std::to_string(t + 1));
        SolutionSpace chaki = solve_linear(ctx, std::move(rws), std::move(rh), nm, &g.ambient());
        v.witness.push_back({"chaki_pseudosymmetric", chaki.consistent ? "yes" : "no"});
    }
    return v;
}

// --- Def 2.6: D-compatibility --------------------------------------------------

inline PropertyVerdict solve_compatibility(const std::string& name, const TensorField& D,
                                           const GeometryCache& g, bool symmetric_unknown = false) {
    const Context& ctx = g.ctx();
    const int n = D.n();
    PropertyVerdict v;
    v.property = name;
    if (D.is_zero()) {
        v.status = Status::Vacuous;
        v.notes.push_back("curvature tensor vanishes");
        return v;
    }
    // The compatibility layout that reproduces the reference families for the
    // pair-asymmetric projective tensor as well: the endomorphism contracts
    // the final slot,
    //   E_{X1}{}^m D(X2, X3, X, e_m) + E_{X2}{}^m D(X3, X1, X, e_m)
    //     + E_{X3}{}^m D(X1, X2, X, e_m) = 0.
    // For riemann-type D this coincides (up to sign) with the displayed form
    // D(curly-E X1, X, X2, X3) + cyclic.
    // draised^j_{a b c} = g^{jm} D_{a b c m}
    TensorField draised(ctx, {Slot::Con, Slot::Cov, Slot::Cov, Slot::Cov});
    for_each_index(4, n, [&](const std::vector<int>& idx) {
        Expr sum = Expr::zero(ctx);
        for (int m = 1; m <= n; ++m) {
            const Expr& dv = D.at({idx[1], idx[2], idx[3], m});
            if (dv.is_zero()) continue;
            const Expr& gi = g.m().ginv.at({idx[0], m});
            if (gi.is_zero()) continue;
            sum = sum + gi * dv;
        }
        draised.at(idx) = sum;
    });
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> unknown_ij;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (symmetric_unknown && b < a) continue;
            unknown_ij.push_back({a, b});
            names.push_back("E_" + std::to_string(a) + std::to_string(b));
        }
    auto col_of = [&](int a, int b) -> std::size_t {
        if (symmetric_unknown && b < a) std::swap(a, b);
        for (std::size_t i = 0; i < unknown_ij.size(); ++i)
            if (unknown_ij[i] == std::make_pair(a, b)) return i;
        throw EngineError("internal: unknown index");
    };
    std::vector<std::vector<Expr>> rows;
    std::vector<Expr> rhs;
    for_each_index(4, n, [&](const std::vector<int>& idx) {
        int x = idx[0], x1 = idx[1], x2 = idx[2], x3 = idx[3];
        std::vector<Expr> row(unknown_ij.size(), Expr::zero(ctx));
        bool nz = false;
        auto add = [&](int a, int j, const Expr& c) {
            if (c.is_zero()) return;
            auto& slot = row[col_of(a, j)];
            slot = slot + c;
            nz = true;
        };
        for (int j = 1; j <= n; ++j) {
            add(x1, j, draised.at({j, x2, x3, x}));
            add(x2, j, draised.at({j, x3, x1, x}));
            add(x3, j, draised.at({j, x1, x2, x}));
        }
        if (nz) {
            rows.push_back(std::move(row));
            rhs.push_back(Expr::zero(ctx));
        }
    });
    detail::attach_solution(v, solve_linear(ctx, std::move(rows), std::move(rhs), names,
                                            &g.ambient()));
    if (v.space && v.space->consistent) {
        // is the Ricci tensor a member?
        std::vector<Expr> svec;
        for (const auto& [a, b] : unknown_ij) svec.push_back(g.cd.ricci.at({a, b}));
        bool member = solution_space_contains(ctx, *v.space, svec);
        v.witness.push_back({"ricci_compatible", member ? "yes" : "no"});
        v.witness.push_back({"dimension", std::to_string(v.space->dimension())});
        v.status = v.space->pivot_assumptions.empty() ? Status::Holds
                                                      : Status::HoldsUnderAssumptions;
    }
    return v;
}

// --- Def 2.12: Venzi space -----------------------------------------------------

inline PropertyVerdict solve_venzi(const std::string& name, const TensorField& D,
                                   const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const int n = D.n();
    PropertyVerdict v;
    v.property = name;
    if (D.is_zero()) {
        v.status = Status::Vacuous;
        v.notes.push_back("curvature tensor vanishes");
        return v;
    }
    std::vector<std::vector<Expr>> rows;
    std::vector<Expr> rhs;
    for_each_index(5, n, [&](const std::vector<int>& idx) {
        int x1 = idx[0], x2 = idx[1], x3 = idx[2], x4 = idx[3], x5 = idx[4];
        std::vector<Expr> row(static_cast<std::size_t>(n), Expr::zero(ctx));
        auto add = [&](int which, const Expr& c) {
            auto& slot = row[static_cast<std::size_t>(which - 1)];
            slot = slot + c;
        };
        add(x1, D.at({x2, x3, x4, x5}));
        add(x2, D.at({x3, x1, x4, x5}));
        add(x3, D.at({x1, x2, x4, x5}));
        bool nz = false;
        for (const Expr& e : row) nz = nz || !e.is_zero();
        if (nz) {
            rows.push_back(std::move(row));
            rhs.push_back(Expr::zero(ctx));
        }
    });
    SolutionSpace s = solve_linear(ctx, std::move(rows), std::move(rhs),
                                   detail::indexed_names("Theta", n), &g.ambient());
    if (!s.consistent || s.dimension() == 0) {
        v.status = Status::Fails;
        v.certificate = "only the zero 1-form satisfies the cyclic condition";
        return v;
    }
    v.status = s.pivot_assumptions.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
    for (const Expr& a : s.pivot_assumptions) v.assumptions.push_back(to_string(a));
    v.witness.push_back({"dimension", std::to_string(s.dimension())});
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
        std::string span = "{";
        for (int i = 0; i < n; ++i)
            span += (i ? ", " : "") + to_string(s.basis[b][static_cast<std::size_t>(i)]);
        span += "}";
        v.witness.push_back({"span_" + std::to_string(b + 1), span});
    }
    v.space = std::move(s);
    return v;
}

// --- stress-energy classification ---------------------------------------------

inline PropertyVerdict classify_stress_energy(const GeometryCache& g) {
    PropertyVerdict v;
    v.property = "stress_energy";
    const Context& ctx = g.ctx();
    const TensorField& T = g.T;
    const int n = T.n();
    if (T.is_zero()) {
        v.status = Status::Holds;
        v.witness.push_back({"class", "vacuum"});
        return v;
    }
    auto rank1_factor = [&](const TensorField& A)
        -> std::optional<std::tuple<Expr, std::vector<Expr>, std::vector<Expr>>> {
        auto mat = matrix_of(A);
        auto probe = numeric_rank_probe(ctx, mat);
        if (probe && *probe > 1) return std::nullopt; // rank is at least the probe
        auto [rank, assume] = generic_rank(ctx, std::move(mat), &g.ambient());
        if (rank > 1) return std::nullopt;
        int k = 0;
        for (int i = 1; i <= n && !k; ++i)
            if (!A.at({i, i}).is_zero()) k = i;
        if (!k) return std::nullopt;
        Expr rho = A.at({k, k});
        std::vector<Expr> eta;
        for (int i = 1; i <= n; ++i) eta.push_back(A.at({i, k}) / rho);
        return std::make_tuple(rho, eta, assume);
    };
    auto norm_of = [&](const std::vector<Expr>& eta) {
        Expr s = Expr::zero(ctx);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                s = s + g.m().ginv.at({i, j}) * eta[static_cast<std::size_t>(i - 1)] *
                        eta[static_cast<std::size_t>(j - 1)];
        return s;
    };
    auto covector_string = [&](const std::vector<Expr>& eta) {
        std::string s = "{";
        for (int i = 0; i < n; ++i) s += (i ? ", " : "") + to_string(eta[static_cast<std::size_t>(i)]);
        return s + "}";
    };
    // (a) pure radiation: T = rho eta (x) eta with null eta
    if (auto r1 = rank1_factor(T)) {
        auto& [rho, eta, assume] = *r1;
        Expr norm = norm_of(eta);
        if (norm.is_zero()) {
            v.status = assume.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
            for (const Expr& a : assume) v.assumptions.push_back(to_string(a));
            v.witness.push_back({"class", "pure_radiation"});
            v.witness.push_back({"rho", to_string(rho)});
            v.witness.push_back({"eta", covector_string(eta)});
            return v;
        }
    }
    // (b) perfect fluid: T - p g of rank <= 1
    {
        std::vector<Expr> cands;
        auto push = [&](const Expr& e) {
            for (const Expr& c : cands)
                if (c == e) return;
            cands.push_back(e);
        };
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                if (!g.m().g.at({i, j}).is_zero()) push(T.at({i, j}) / g.m().g.at({i, j}));
        for (const Expr& p : cands) {
            TensorField d = tensor_sub(T, tensor_scale(g.m().g, p));
            if (auto r1 = rank1_factor(d)) {
                auto& [rp, eta, assume] = *r1;
                v.status = assume.empty() ? Status::Holds : Status::HoldsUnderAssumptions;
                for (const Expr& a : assume) v.assumptions.push_back(to_string(a));
                v.witness.push_back({"class", "perfect_fluid"});
                v.witness.push_back({"pressure", to_string(p)});
                v.witness.push_back({"rho_plus_p", to_string(rp)});
                v.witness.push_back({"eta", covector_string(eta)});
                v.witness.push_back({"eta_norm", to_string(norm_of(eta))});
                return v;
            }
            if (d.is_zero()) {
                v.status = Status::Holds;
                v.witness.push_back({"class", "perfect_fluid"});
                v.witness.push_back({"pressure", to_string(p)});
                v.witness.push_back({"rho_plus_p", "0"});
                return v;
            }
        }
    }
    // (c) decomposition over the covector frame {e1=du, e3=dx, e4=dy}
    {
        Expr alpha = Expr::zero(ctx);
        if (!g.m().g.at({1, 2}).is_zero()) alpha = T.at({1, 2}) / g.m().g.at({1, 2});
        TensorField d = tensor_sub(T, tensor_scale(g.m().g, alpha));
        bool ok = true;
        for (int i = 1; i <= n; ++i)
            if (!d.at({i, 2}).is_zero() || !d.at({2, i}).is_zero()) ok = false;
        if (ok) {
            v.status = Status::Holds;
            v.witness.push_back({"class", "frame_decomposition"});
            v.witness.push_back({"alpha", to_string(alpha)});
            v.witness.push_back({"beta_1", to_string(d.at({1, 1}))});
            v.witness.push_back({"beta_3", to_string(d.at({3, 3}))});
            v.witness.push_back({"beta_4", to_string(d.at({4, 4}))});
            v.witness.push_back({"sigma_1", to_string(d.at({1, 3}))});
            v.witness.push_back({"sigma_2", to_string(d.at({3, 4}))});
            return v;
        }
    }
    v.status = Status::Fails;
    v.certificate = "no catalog decomposition applies";
    return v;
}

// --- covariantly constant null covectors ----------------------------------------

inline PropertyVerdict constant_null_covector_check(const GeometryCache& g,
                                                    std::vector<std::pair<std::string, TensorField>>
                                                        candidates = {}) {
    const Context& ctx = g.ctx();
    const int n = g.cd.ricci.n();
    PropertyVerdict v;
    v.property = "parallel_null_covector";
    if (candidates.empty()) {
        for (int i = 1; i <= n; ++i) {
            TensorField xi(ctx, {Slot::Cov});
            xi.at({i}) = Expr::one(ctx);
            std::string nm = "d" + ctx.info(ctx.coordinate(i)).name;
            candidates.push_back({nm, std::move(xi)});
        }
        for (int i = 1; i <= n; ++i) {
            TensorField xi(ctx, {Slot::Cov});
            for (int a = 1; a <= n; ++a) xi.at({a}) = g.m().g.at({i, a});
            candidates.push_back({"lowered_partial_" + ctx.info(ctx.coordinate(i)).name,
                                  std::move(xi)});
        }
    }
    bool found = false;
    for (auto& [nm, xi] : candidates) {
        if (xi.is_zero()) continue;
        Expr norm = Expr::zero(ctx);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                norm = norm + g.m().ginv.at({a, b}) * xi.at({a}) * xi.at({b});
        TensorField nabla = g.nabla(xi);
        bool is_null = norm.is_zero();
        bool parallel = nabla.is_zero();
        std::string summary = std::string("norm=") + (is_null ? "0" : to_string(norm)) +
                              ", parallel=" + (parallel ? "yes" : "no");
        if (!parallel) {
            auto nz = detail::first_nonzero(nabla);
            summary += ", nabla" + detail::index_string(nz->first) + "=" + to_string(nz->second);
        }
        v.witness.push_back({nm, summary});
        if (is_null && parallel) found = true;
    }
    v.status = found ? Status::Holds : Status::Fails;
    if (!found) v.certificate = "no candidate covector is both null and parallel";
    return v;
}

// --- batteries ------------------------------------------------------------------

inline PropertyVerdict scalar_flat_check(const GeometryCache& g) {
    PropertyVerdict v;
    v.property = "scalar_flat";
    if (g.cd.kappa.is_zero()) {
        v.status = Status::Holds;
    } else {
        v.status = Status::Fails;
        v.certificate = "kappa = " + to_string(g.cd.kappa);
    }
    return v;
}

inline PropertyVerdict einstein_check(const GeometryCache& g) {
    const Context& ctx = g.ctx();
    const int n = g.cd.ricci.n();
    TensorField resid = tensor_sub(
        g.cd.ricci, tensor_scale(g.m().g, g.cd.kappa / Expr::rational(ctx, n)));
    return detail::zero_tensor_verdict("einstein", resid);
}

// the full property battery; names are stable identifiers used by the CLI
inline ClassificationReport full_battery(const GeometryCache& g,
                                         const std::vector<std::string>& only = {}) {
    ClassificationReport rep;
    rep.metric = g.bundle->name;
    for (const Expr& nz : g.ambient().nonzero())
        if (!nz.is_rational()) rep.ambient_assumptions.push_back(to_string(nz));
    auto want = [&](const std::string& name) {
        if (only.empty()) return true;
        for (const auto& o : only)
            if (o == name) return true;
        return false;
    };
    auto push = [&](PropertyVerdict v) { rep.verdicts.push_back(std::move(v)); };
    auto push_if = [&](const std::string& name, const std::function<PropertyVerdict()>& fn) {
        if (want(name)) push(fn());
    };

    push_if("scalar_flat", [&] { return scalar_flat_check(g); });
    push_if("einstein", [&] { return einstein_check(g); });
    push_if("ricci_simple", [&] { return ricci_simple(g); });
    push_if("quasi_einstein_level", [&] { return quasi_einstein_level(g); });
    push_if("ein_level", [&] { return ein_level(g); });

    bool want_ricci_classes = want("ricci_parallel") || want("ricci_codazzi") ||
                              want("ricci_cyclic_parallel") || want("ricci_recurrent");
    if (want_ricci_classes)
        for (auto& v : derivative_class("ricci", g.cd.ricci, g.nablaS, g))
            if (want(v.property)) push(std::move(v));
    push_if("locally_symmetric",
            [&] { return detail::zero_tensor_verdict("locally_symmetric", g.nablaR); });
    push_if("conformally_symmetric",
            [&] { return detail::zero_tensor_verdict("conformally_symmetric", g.nablaC); });

    push_if("semisymmetric", [&] { return semisymmetry_check("semisymmetric", g.cd.riemann, g.cd.riemann, g); });
    push_if("ricci_semisymmetric", [&] { return semisymmetry_check("ricci_semisymmetric", g.cd.riemann, g.cd.ricci, g); });
    push_if("conformal_semisymmetric", [&] { return semisymmetry_check("conformal_semisymmetric", g.cd.riemann, g.C, g); });
    push_if("projective_semisymmetric", [&] { return semisymmetry_check("projective_semisymmetric", g.cd.riemann, g.P, g); });
    push_if("c_dot_r", [&] { return semisymmetry_check("c_dot_r", g.C, g.cd.riemann, g); });
    push_if("c_dot_s", [&] { return semisymmetry_check("c_dot_s", g.C, g.cd.ricci, g); });
    push_if("c_dot_c", [&] { return semisymmetry_check("c_dot_c", g.C, g.C, g); });
    push_if("c_dot_p", [&] { return semisymmetry_check("c_dot_p", g.C, g.P, g); });
    push_if("p_dot_s", [&] { return semisymmetry_check("p_dot_s", g.P, g.cd.ricci, g); });
    push_if("p_dot_r", [&] { return semisymmetry_check("p_dot_r", g.P, g.cd.riemann, g); });
    push_if("p_dot_c", [&] { return semisymmetry_check("p_dot_c", g.P, g.C, g); });
    push_if("p_dot_p", [&] { return semisymmetry_check("p_dot_p", g.P, g.P, g); });
    push_if("p_dot_riemann_op", [&] {
        return detail::zero_tensor_verdict("p_dot_riemann_op",
                                           dot_action_mixed(g.P, g.cd.op, g.m()));
    });
    push_if("p_dot_ricci_op", [&] {
        TensorField sop = endomorphism_of(g.cd.ricci, g.m());
        return detail::zero_tensor_verdict("p_dot_ricci_op", dot_action_mixed(g.P, sop, g.m()));
    });
    push_if("q_s_r", [&] { return detail::zero_tensor_verdict("q_s_r", q_operator(g.cd.ricci, g.cd.riemann)); });
    push_if("q_s_c", [&] { return detail::zero_tensor_verdict("q_s_c", q_operator(g.cd.ricci, g.C)); });

    push_if("pseudosymmetric", [&] {
        TensorField RR = dot_action(g.cd.riemann, g.cd.riemann, g.m());
        TensorField QgR = q_operator(g.m().g, g.cd.riemann);
        return find_linear_relation("pseudosymmetric", {&RR, &QgR}, g);
    });
    push_if("ricci_generalized_pseudosymmetric", [&] {
        TensorField RR = dot_action(g.cd.riemann, g.cd.riemann, g.m());
        TensorField QSR = q_operator(g.cd.ricci, g.cd.riemann);
        return find_linear_relation("ricci_generalized_pseudosymmetric", {&RR, &QSR}, g);
    });
    push_if("projective_pseudosymmetric", [&] {
        TensorField PP = dot_action(g.P, g.P, g.m());
        TensorField QSP = q_operator(g.cd.ricci, g.P);
        return find_linear_relation("projective_pseudosymmetric", {&PP, &QSP}, g);
    });

    push_if("venzi_R", [&] { return solve_venzi("venzi_R", g.cd.riemann, g); });
    push_if("venzi_C", [&] { return solve_venzi("venzi_C", g.C, g); });
    push_if("venzi_P", [&] { return solve_venzi("venzi_P", g.P, g); });

    push_if("riemann_recurrent", [&] { return solve_recurrence(RecurrenceTarget::Riemann, g); });
    push_if("conformal_recurrent", [&] { return solve_recurrence(RecurrenceTarget::Conformal, g); });
    push_if("ricci_1forms_recurrent", [&] { return solve_recurrence(RecurrenceTarget::RicciOneForms, g); });
    push_if("curvature_2forms_recurrent", [&] { return solve_recurrence(RecurrenceTarget::CurvatureTwoForms, g); });
    push_if("conformal_2forms_recurrent", [&] { return solve_recurrence(RecurrenceTarget::ConformalTwoForms, g); });
    push_if("super_generalized_recurrent", [&] { return solve_recurrence(RecurrenceTarget::SuperGeneralized, g); });

    push_if("weakly_ricci_symmetric", [&] {
        return solve_weak_symmetry("weakly_ricci_symmetric", WeakSymmetryTarget::ZTensor,
                                   g.cd.ricci, g.nablaS, g);
    });
    push_if("weakly_cyclic_ricci_symmetric", [&] {
        return solve_weak_symmetry("weakly_cyclic_ricci_symmetric", WeakSymmetryTarget::CyclicRicci,
                                   g.cd.ricci, g.nablaS, g);
    });
    push_if("weakly_symmetric_R", [&] {
        return solve_weak_symmetry("weakly_symmetric_R", WeakSymmetryTarget::DTensor, g.cd.riemann,
                                   g.nablaR, g);
    });
    push_if("weakly_symmetric_C", [&] {
        return solve_weak_symmetry("weakly_symmetric_C", WeakSymmetryTarget::DTensor, g.C, g.nablaC, g);
    });
    push_if("weakly_symmetric_P", [&] {
        return solve_weak_symmetry("weakly_symmetric_P", WeakSymmetryTarget::DTensor, g.P,
                                   g.nabla(g.P), g);
    });
    push_if("weakly_symmetric_W", [&] {
        return solve_weak_symmetry("weakly_symmetric_W", WeakSymmetryTarget::DTensor, g.W,
                                   g.nabla(g.W), g);
    });
    push_if("weakly_symmetric_K", [&] {
        return solve_weak_symmetry("weakly_symmetric_K", WeakSymmetryTarget::DTensor, g.K,
                                   g.nabla(g.K), g);
    });

    push_if("compatible_R", [&] { return solve_compatibility("compatible_R", g.cd.riemann, g); });
    push_if("compatible_C", [&] { return solve_compatibility("compatible_C", g.C, g); });
    push_if("compatible_P", [&] { return solve_compatibility("compatible_P", g.P, g); });

    push_if("stress_energy", [&] { return classify_stress_energy(g); });
    push_if("t_semisymmetric", [&] { return semisymmetry_check("t_semisymmetric", g.cd.riemann, g.T, g); });
    bool want_t_classes = want("t_parallel") || want("t_codazzi") || want("t_cyclic_parallel") ||
                          want("t_recurrent");
    if (want_t_classes)
        for (auto& v : derivative_class("t", g.T, g.nablaT, g))
            if (want(v.property)) push(std::move(v));
    push_if("harmonic_curvature", [&] {
        return detail::zero_tensor_verdict("harmonic_curvature",
                                           g.reduce(divergence(g.cd.riemann, 1, g.m())));
    });
    push_if("parallel_null_covector", [&] { return constant_null_covector_check(g); });
    return rep;
}

// properties compared between two metrics (the similarity / dissimilarity table)
inline std::vector<std::string> comparison_properties() {
    return {"scalar_flat",
            "venzi_R",
            "venzi_C",
            "semisymmetric",
            "conformal_semisymmetric",
            "q_s_r",
            "q_s_c",
            "ricci_simple",
            "compatible_R",
            "compatible_C",
            "ricci_1forms_recurrent",
            "conformal_2forms_recurrent",
            "p_dot_r",
            "p_dot_riemann_op",
            "weakly_ricci_symmetric",
            "weakly_cyclic_ricci_symmetric",
            "projective_pseudosymmetric",
            "t_semisymmetric",
            "stress_energy",
            "parallel_null_covector",
            "ricci_recurrent",
            "t_cyclic_parallel",
            "t_parallel"};
}

} // namespace symcurv
