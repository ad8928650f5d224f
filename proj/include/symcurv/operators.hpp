#pragma once

#include "symcurv/curvature.hpp"

namespace symcurv {

// (A wedge E)(X1,X2,X3,X4) = A(X1,X4)E(X2,X3) + A(X2,X3)E(X1,X4)
//                          - A(X1,X3)E(X2,X4) - A(X2,X4)E(X1,X3)
inline TensorField kulkarni_nomizu(const TensorField& A, const TensorField& E) {
    if (A.slots != std::vector<Slot>{Slot::Cov, Slot::Cov} || E.slots != A.slots)
        throw ShapeError("kulkarni_nomizu: expects two (0,2) tensors");
    const Context& ctx = *A.ctx;
    TensorField out(ctx, {Slot::Cov, Slot::Cov, Slot::Cov, Slot::Cov});
    const int n = A.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l)
                    out.at({i, j, k, l}) = A.at({i, l}) * E.at({j, k}) + A.at({j, k}) * E.at({i, l}) -
                                           A.at({i, k}) * E.at({j, l}) - A.at({j, l}) * E.at({i, k});
    return out;
}

// The derived curvature tensors of the catalog, all built from R, S, kappa.
enum class DerivedTensorKind { Conformal, Concircular, Conharmonic, Projective, Gaussian };

struct CurvatureData {
    TensorField op;     // (1,3) curvature operator
    TensorField riemann; // (0,4)
    TensorField ricci;   // (0,2)
    Expr kappa;
};

inline CurvatureData curvature_data(const MetricField& m) {
    CurvatureData cd;
    cd.op = riemann_operator(m);
    cd.riemann = riemann_tensor(m, cd.op);
    cd.ricci = ricci_tensor(m, cd.op);
    cd.kappa = scalar_curvature(m, cd.ricci);
    return cd;
}

inline TensorField derived_tensor(DerivedTensorKind kind, const MetricField& m,
                                  const CurvatureData& cd) {
    const Context& ctx = *m.ctx;
    const int n = m.g.n();
    const Expr nn = Expr::rational(ctx, n);
    switch (kind) {
    case DerivedTensorKind::Conformal: {
        TensorField gS = kulkarni_nomizu(m.g, cd.ricci);
        TensorField gg = kulkarni_nomizu(m.g, m.g);
        Expr c1 = Expr::rational(ctx, 1) / Expr::rational(ctx, n - 2);
        Expr c2 = cd.kappa / Expr::rational(ctx, 2 * (n - 2) * (n - 1));
        return tensor_add(tensor_sub(cd.riemann, tensor_scale(gS, c1)), tensor_scale(gg, c2));
    }
    case DerivedTensorKind::Concircular: {
        TensorField gg = kulkarni_nomizu(m.g, m.g);
        Expr c = cd.kappa / Expr::rational(ctx, 2 * n * (n - 1));
        return tensor_sub(cd.riemann, tensor_scale(gg, c));
    }
    case DerivedTensorKind::Conharmonic: {
        TensorField gS = kulkarni_nomizu(m.g, cd.ricci);
        Expr c1 = Expr::rational(ctx, 1) / Expr::rational(ctx, n - 2);
        return tensor_sub(cd.riemann, tensor_scale(gS, c1));
    }
    case DerivedTensorKind::Gaussian: {
        TensorField gg = kulkarni_nomizu(m.g, m.g);
        return tensor_scale(gg, Expr::rational(ctx, 1, 2));
    }
    case DerivedTensorKind::Projective: {
        TensorField out(ctx, {Slot::Cov, Slot::Cov, Slot::Cov, Slot::Cov});
        Expr c = Expr::rational(ctx, 1) / Expr::rational(ctx, n - 1);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l)
                        out.at({i, j, k, l}) =
                            cd.riemann.at({i, j, k, l}) -
                            c * (m.g.at({i, l}) * cd.ricci.at({j, k}) -
                                 m.g.at({j, l}) * cd.ricci.at({i, k}));
        return out;
    }
    }
    throw EngineError("unreachable");
}

// endomorphism of a symmetric (0,2) tensor: A^m_j = g^{mn} A_{jn}
inline TensorField endomorphism_of(const TensorField& A, const MetricField& m) {
    const Context& ctx = *A.ctx;
    const int n = A.n();
    TensorField out(ctx, {Slot::Con, Slot::Cov});
    for (int mm = 1; mm <= n; ++mm)
        for (int j = 1; j <= n; ++j) {
            Expr sum = Expr::zero(ctx);
            for (int k = 1; k <= n; ++k) {
                const Expr& gmk = m.ginv.at({mm, k});
                if (!gmk.is_zero() && !A.at({j, k}).is_zero()) sum = sum + gmk * A.at({j, k});
            }
            out.at({mm, j}) = sum;
        }
    return out;
}

// k-th level tensor: A^k(X,Y) = A(curly-A^{k-1} X, Y)
inline TensorField ricci_power(const TensorField& A, int k, const MetricField& m) {
    if (k < 1) throw EngineError("ricci_power: k must be >= 1");
    const Context& ctx = *A.ctx;
    const int n = A.n();
    TensorField endo = endomorphism_of(A, m);
    // endo_pow = curly-A^{k-1}
    TensorField ep(ctx, {Slot::Con, Slot::Cov});
    for (int i = 1; i <= n; ++i) ep.at({i, i}) = Expr::one(ctx);
    for (int t = 1; t < k; ++t) {
        TensorField next(ctx, {Slot::Con, Slot::Cov});
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Expr sum = Expr::zero(ctx);
                for (int l = 1; l <= n; ++l)
                    if (!endo.at({i, l}).is_zero() && !ep.at({l, j}).is_zero())
                        sum = sum + endo.at({i, l}) * ep.at({l, j});
                next.at({i, j}) = sum;
            }
        ep = std::move(next);
    }
    TensorField out(ctx, {Slot::Cov, Slot::Cov});
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            Expr sum = Expr::zero(ctx);
            for (int l = 1; l <= n; ++l)
                if (!ep.at({l, x}).is_zero() && !A.at({l, y}).is_zero())
                    sum = sum + A.at({l, y}) * ep.at({l, x});
            out.at({x, y}) = sum;
        }
    return out;
}

namespace detail {

// nonzero entries of the endomorphism-valued 2-form D^m_{xya} obtained from a
// (0,4) tensor by raising its 4th slot
struct EndoForm {
    struct Entry {
        int x, y, a, m;
        Expr v;
    };
    std::vector<Entry> entries;
};

inline EndoForm endo_form(const TensorField& D, const MetricField& g) {
    const Context& ctx = *D.ctx;
    const int n = D.n();
    EndoForm ef;
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            for (int a = 1; a <= n; ++a)
                for (int mm = 1; mm <= n; ++mm) {
                    Expr sum = Expr::zero(ctx);
                    for (int l = 1; l <= n; ++l) {
                        const Expr& d = D.at({x, y, a, l});
                        if (d.is_zero()) continue;
                        const Expr& gi = g.ginv.at({l, mm});
                        if (gi.is_zero()) continue;
                        sum = sum + d * gi;
                    }
                    if (!sum.is_zero()) ef.entries.push_back({x, y, a, mm, std::move(sum)});
                }
    return ef;
}

} // namespace detail

// D . H for an all-covariant H of valence (0,k):
//   (D.H)(X1..Xk, X, Y) = -sum_s H(X1, .., D(X,Y)Xs, .., Xk)
inline TensorField dot_action(const TensorField& D, const TensorField& H, const MetricField& g) {
    if (D.slots != std::vector<Slot>(4, Slot::Cov))
        throw ShapeError("dot_action: acting tensor must be (0,4)");
    for (Slot s : H.slots)
        if (s != Slot::Cov) throw ShapeError("dot_action: H must be fully covariant");
    const Context& ctx = *D.ctx;
    const int k = H.rank();
    detail::EndoForm ef = detail::endo_form(D, g);
    std::vector<Slot> slots(static_cast<std::size_t>(k + 2), Slot::Cov);
    TensorField out(ctx, slots);
    for_each_index(k, H.n(), [&](const std::vector<int>& hidx) {
        const Expr& hv = H.at(hidx);
        if (hv.is_zero()) return;
        for (const auto& e : ef.entries) {
            for (int s = 0; s < k; ++s) {
                if (hidx[static_cast<std::size_t>(s)] != e.m) continue;
                std::vector<int> oidx = hidx;
                oidx[static_cast<std::size_t>(s)] = e.a;
                oidx.push_back(e.x);
                oidx.push_back(e.y);
                out.at(oidx) = out.at(oidx) - hv * e.v;
            }
        }
    });
    return out;
}

// commutator action on a (1,k-1)-valued H (e.g. the (1,3) curvature operator
// or the (1,1) Ricci operator): the contravariant slot transforms with the
// opposite sign.
inline TensorField dot_action_mixed(const TensorField& D, const TensorField& H,
                                    const MetricField& g) {
    if (D.slots != std::vector<Slot>(4, Slot::Cov))
        throw ShapeError("dot_action_mixed: acting tensor must be (0,4)");
    if (H.slots.empty() || H.slots[0] != Slot::Con)
        throw ShapeError("dot_action_mixed: H must have a leading contravariant slot");
    for (std::size_t i = 1; i < H.slots.size(); ++i)
        if (H.slots[i] != Slot::Cov) throw ShapeError("dot_action_mixed: trailing slots must be covariant");
    const Context& ctx = *D.ctx;
    const int k = H.rank();
    detail::EndoForm ef = detail::endo_form(D, g);
    std::vector<Slot> slots = H.slots;
    slots.push_back(Slot::Cov);
    slots.push_back(Slot::Cov);
    TensorField out(ctx, slots);
    for_each_index(k, H.n(), [&](const std::vector<int>& hidx) {
        const Expr& hv = H.at(hidx);
        if (hv.is_zero()) return;
        for (const auto& e : ef.entries) {
            // contravariant slot: (D(X,Y) o H)^m = D^m_{xy a} H^a
            if (hidx[0] == e.a) {
                std::vector<int> oidx = hidx;
                oidx[0] = e.m;
                oidx.push_back(e.x);
                oidx.push_back(e.y);
                out.at(oidx) = out.at(oidx) + hv * e.v;
            }
            // covariant slots: -H(..., D(X,Y)Xs, ...)
            for (int s = 1; s < k; ++s) {
                if (hidx[static_cast<std::size_t>(s)] != e.m) continue;
                std::vector<int> oidx = hidx;
                oidx[static_cast<std::size_t>(s)] = e.a;
                oidx.push_back(e.x);
                oidx.push_back(e.y);
                out.at(oidx) = out.at(oidx) - hv * e.v;
            }
        }
    });
    return out;
}

// Tachibana operator Q(A,H) for symmetric (0,2) A and (0,k) H:
//   Q(A,H)(X1..Xk, X, Y) = sum_s [ A(X,Xs) H(..Y..) - A(Y,Xs) H(..X..) ]
inline TensorField q_operator(const TensorField& A, const TensorField& H) {
    if (A.slots != std::vector<Slot>{Slot::Cov, Slot::Cov})
        throw ShapeError("q_operator: A must be (0,2)");
    for (Slot s : H.slots)
        if (s != Slot::Cov) throw ShapeError("q_operator: H must be fully covariant");
    const Context& ctx = *A.ctx;
    const int k = H.rank();
    const int n = H.n();
    std::vector<Slot> slots(static_cast<std::size_t>(k + 2), Slot::Cov);
    TensorField out(ctx, slots);
    // for a fixed output tuple (a1..ak, x, y):
    //   sum_s A(x,as) H(a1..y..ak) - A(y,as) H(a1..x..ak)
    for_each_index(k + 2, n, [&](const std::vector<int>& oidx) {
        int x = oidx[static_cast<std::size_t>(k)];
        int y = oidx[static_cast<std::size_t>(k + 1)];
        if (x == y) return;
        Expr sum = Expr::zero(ctx);
        std::vector<int> h(oidx.begin(), oidx.begin() + k);
        for (int s = 0; s < k; ++s) {
            int as = h[static_cast<std::size_t>(s)];
            const Expr& ax = A.at({x, as});
            const Expr& ay = A.at({y, as});
            if (!ax.is_zero()) {
                h[static_cast<std::size_t>(s)] = y;
                const Expr& hv = H.at(h);
                if (!hv.is_zero()) sum = sum + ax * hv;
            }
            if (!ay.is_zero()) {
                h[static_cast<std::size_t>(s)] = x;
                const Expr& hv = H.at(h);
                if (!hv.is_zero()) sum = sum - ay * hv;
            }
            h[static_cast<std::size_t>(s)] = as;
        }
        out.at(oidx) = sum;
    });
    return out;
}

// Einstein field equations with zero cosmological constant:
//   T = (c^4 / 8 pi G) [ S - (kappa/2) g ]
inline TensorField energy_momentum(const MetricField& m, const CurvatureData& cd) {
    const Context& ctx = *m.ctx;
    auto cc = ctx.find("c");
    auto gg = ctx.find("G");
    auto pp = ctx.find("pi");
    if (!cc || !gg || !pp)
        throw EngineError("energy_momentum: context must declare constants c, G, pi");
    Expr front = Expr::atom(ctx, *cc).pow(4) /
                 (Expr::rational(ctx, 8) * Expr::atom(ctx, *pp) * Expr::atom(ctx, *gg));
    TensorField inner = tensor_sub(cd.ricci, tensor_scale(m.g, cd.kappa / Expr::rational(ctx, 2)));
    return tensor_scale(inner, front);
}

} // namespace symcurv
