#pragma once

#include <array>
#include <memory>
#include <string>

#include "symcurv/tensor.hpp"

namespace symcurv {

// Curvature sign conventions, frozen against the pure-radiation fixture
// R_1313 = -(1/2) w_xx x, S_11 = -(1/2) p^2 (w_xx + w_yy) x. See README.
inline constexpr int kRiemannSign = -1;
inline constexpr bool kRicciTraceFirstSlot = true;

// Symmetric nondegenerate (0,2) metric with eagerly computed inverse,
// Christoffel symbols (second kind) and determinant.
struct MetricField {
    const Context* ctx = nullptr;
    TensorField g;     // (0,2)
    TensorField ginv;  // (2,0)
    TensorField gamma; // (1,2): Gamma^k_{ij} at {k,i,j}, symmetric in (i,j)
    Expr det;
};

namespace detail {

// Gauss-Jordan over the function field; pivots are chosen small and
// recorded nowhere (a symbolically nonzero pivot is a field element).
inline std::pair<std::vector<std::vector<Expr>>, Expr>
invert_matrix(const Context& ctx, std::vector<std::vector<Expr>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n, Expr::zero(ctx)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr::one(ctx);
    Expr det = Expr::one(ctx);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        for (std::size_t row = col; row < n; ++row) {
            if (a[row][col].is_zero()) continue;
            if (best == n) {
                best = row;
                continue;
            }
            bool brat = a[best][col].is_rational();
            bool rrat = a[row][col].is_rational();
            if ((rrat && !brat) || (rrat == brat && a[row][col].size() < a[best][col].size()))
                best = row;
        }
        if (best == n) throw SingularMetric("metric is symbolically singular");
        if (best != col) {
            std::swap(a[best], a[col]);
            std::swap(inv[best], inv[col]);
            det = -det;
        }
        Expr pivot = a[col][col];
        det = det * pivot;
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / pivot;
            inv[col][j] = inv[col][j] / pivot;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Expr f = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] = a[row][j] - f * a[col][j];
                inv[row][j] = inv[row][j] - f * inv[col][j];
            }
        }
    }
    return {std::move(inv), std::move(det)};
}

} // namespace detail

inline TensorField inverse_metric(const Context& ctx, const TensorField& g, Expr* det_out = nullptr) {
    const int n = g.n();
    std::vector<std::vector<Expr>> m(static_cast<std::size_t>(n),
                                     std::vector<Expr>(static_cast<std::size_t>(n), Expr::zero(ctx)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m[i - 1][j - 1] = g.at({i, j});
    auto [inv, det] = detail::invert_matrix(ctx, std::move(m));
    TensorField out(ctx, {Slot::Con, Slot::Con});
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) out.at({i, j}) = inv[i - 1][j - 1];
    if (det_out) *det_out = det;
    return out;
}

inline TensorField christoffel_symbols(const Context& ctx, const TensorField& g,
                                       const TensorField& ginv) {
    const int n = g.n();
    // dg[l][i][j] = d_l g_ij
    std::vector<Expr> dg(static_cast<std::size_t>(n * n * n), Expr::zero(ctx));
    auto dgo = [n](int l, int i, int j) {
        return static_cast<std::size_t>(((l - 1) * n + (i - 1)) * n + (j - 1));
    };
    for (int l = 1; l <= n; ++l)
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                Expr d = g.at({i, j}).derivative(l);
                dg[dgo(l, i, j)] = d;
                dg[dgo(l, j, i)] = d;
            }
    TensorField gamma(ctx, {Slot::Con, Slot::Cov, Slot::Cov});
    Expr half = Expr::rational(ctx, 1, 2);
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                Expr sum = Expr::zero(ctx);
                for (int l = 1; l <= n; ++l) {
                    const Expr& gkl = ginv.at({k, l});
                    if (gkl.is_zero()) continue;
                    sum = sum + gkl * (dg[dgo(i, j, l)] + dg[dgo(j, i, l)] - dg[dgo(l, i, j)]);
                }
                Expr v = half * sum;
                gamma.at({k, i, j}) = v;
                gamma.at({k, j, i}) = v;
            }
    return gamma;
}

inline MetricField make_metric(const Context& ctx, TensorField g) {
    if (g.slots != std::vector<Slot>{Slot::Cov, Slot::Cov})
        throw ShapeError("metric must be a (0,2) tensor");
    for (int i = 1; i <= g.n(); ++i)
        for (int j = i + 1; j <= g.n(); ++j)
            if (!(g.at({i, j}) == g.at({j, i}))) throw ShapeError("metric must be symmetric");
    MetricField m;
    m.ctx = &ctx;
    m.det = Expr::zero(ctx);
    m.ginv = inverse_metric(ctx, g, &m.det);
    m.gamma = christoffel_symbols(ctx, g, m.ginv);
    m.g = std::move(g);
    return m;
}

// (1,3) curvature operator D^m_{ijk} at {m,i,j,k}: the endomorphism-valued
// 2-form of the Levi-Civita connection, D(d_i, d_j) d_k = D^m_{ijk} d_m.
inline TensorField riemann_operator(const MetricField& m) {
    const Context& ctx = *m.ctx;
    const int n = m.g.n();
    TensorField out(ctx, {Slot::Con, Slot::Cov, Slot::Cov, Slot::Cov});
    // precompute derivatives of Gamma
    std::vector<Expr> dG(static_cast<std::size_t>(n * n * n * n), Expr::zero(ctx));
    auto off = [n](int d, int k, int i, int j) {
        return static_cast<std::size_t>((((d - 1) * n + (k - 1)) * n + (i - 1)) * n + (j - 1));
    };
    for (int d = 1; d <= n; ++d)
        for (int k = 1; k <= n; ++k)
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    Expr v = m.gamma.at({k, i, j}).derivative(d);
                    dG[off(d, k, i, j)] = v;
                    dG[off(d, k, j, i)] = v;
                }
    Expr sign = Expr::rational(ctx, kRiemannSign);
    for (int mm = 1; mm <= n; ++mm)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= i; ++j) {
                if (i == j) continue; // antisymmetric in (i,j)
                for (int k = 1; k <= n; ++k) {
                    Expr sum = dG[off(i, mm, j, k)] - dG[off(j, mm, i, k)];
                    for (int l = 1; l <= n; ++l) {
                        const Expr& gil = m.gamma.at({mm, i, l});
                        const Expr& gjl = m.gamma.at({mm, j, l});
                        if (!gil.is_zero()) sum = sum + gil * m.gamma.at({l, j, k});
                        if (!gjl.is_zero()) sum = sum - gjl * m.gamma.at({l, i, k});
                    }
                    Expr v = sign * sum;
                    out.at({mm, i, j, k}) = v;
                    out.at({mm, j, i, k}) = -v;
                }
            }
    return out;
}

// (0,4) curvature: R(X1,X2,X3,X4) = g(D(X1,X2)X3, X4)
inline TensorField riemann_tensor(const MetricField& m, const TensorField& op) {
    const Context& ctx = *m.ctx;
    const int n = m.g.n();
    TensorField out(ctx, {Slot::Cov, Slot::Cov, Slot::Cov, Slot::Cov});
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    Expr sum = Expr::zero(ctx);
                    for (int mm = 1; mm <= n; ++mm) {
                        const Expr& d = op.at({mm, i, j, k});
                        if (d.is_zero()) continue;
                        const Expr& gml = m.g.at({mm, l});
                        if (gml.is_zero()) continue;
                        sum = sum + d * gml;
                    }
                    out.at({i, j, k, l}) = sum;
                }
        }
    return out;
}

inline TensorField ricci_tensor(const MetricField& m, const TensorField& op) {
    const Context& ctx = *m.ctx;
    const int n = m.g.n();
    TensorField out(ctx, {Slot::Cov, Slot::Cov});
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            Expr sum = Expr::zero(ctx);
            for (int mm = 1; mm <= n; ++mm)
                sum = sum + (kRicciTraceFirstSlot ? op.at({mm, mm, j, k}) : op.at({mm, j, mm, k}));
            out.at({j, k}) = sum;
        }
    return out;
}

inline Expr scalar_curvature(const MetricField& m, const TensorField& ricci) {
    const Context& ctx = *m.ctx;
    Expr sum = Expr::zero(ctx);
    const int n = m.g.n();
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            const Expr& gjk = m.ginv.at({j, k});
            if (gjk.is_zero()) continue;
            sum = sum + gjk * ricci.at({j, k});
        }
    return sum;
}

// covariant derivative; the derivative index becomes the LAST slot, so
// out.at({i,j,...,d}) is the component T_{ij...,d}
inline TensorField covariant_derivative(const TensorField& t, const MetricField& m) {
    const Context& ctx = *t.ctx;
    const int n = t.n();
    std::vector<Slot> slots = t.slots;
    slots.push_back(Slot::Cov);
    TensorField out(ctx, slots);
    for_each_index(t.rank(), n, [&](const std::vector<int>& idx) {
        const Expr& base = t.at(idx);
        for (int d = 1; d <= n; ++d) {
            Expr v = base.derivative(d);
            std::vector<int> jdx = idx;
            for (int a = 0; a < t.rank(); ++a) {
                int ia = idx[static_cast<std::size_t>(a)];
                for (int k = 1; k <= n; ++k) {
                    jdx[static_cast<std::size_t>(a)] = k;
                    const Expr& tk = t.at(jdx);
                    if (!tk.is_zero()) {
                        if (t.slots[static_cast<std::size_t>(a)] == Slot::Cov) {
                            const Expr& gk = m.gamma.at({k, d, ia});
                            if (!gk.is_zero()) v = v - gk * tk;
                        } else {
                            const Expr& gk = m.gamma.at({ia, d, k});
                            if (!gk.is_zero()) v = v + gk * tk;
                        }
                    }
                }
                jdx[static_cast<std::size_t>(a)] = ia;
            }
            std::vector<int> odx = idx;
            odx.push_back(d);
            out.at(odx) = v;
        }
    });
    return out;
}

inline TensorField raise_slot(const TensorField& t, int slot_1based, const MetricField& m) {
    int s = slot_1based - 1;
    if (s < 0 || s >= t.rank() || t.slots[static_cast<std::size_t>(s)] != Slot::Cov)
        throw ShapeError("raise_slot: invalid slot");
    const Context& ctx = *t.ctx;
    std::vector<Slot> slots = t.slots;
    slots[static_cast<std::size_t>(s)] = Slot::Con;
    TensorField out(ctx, slots);
    const int n = t.n();
    for_each_index(t.rank(), n, [&](const std::vector<int>& idx) {
        Expr sum = Expr::zero(ctx);
        std::vector<int> jdx = idx;
        for (int k = 1; k <= n; ++k) {
            const Expr& gik = m.ginv.at({idx[static_cast<std::size_t>(s)], k});
            if (gik.is_zero()) continue;
            jdx[static_cast<std::size_t>(s)] = k;
            const Expr& tv = t.at(jdx);
            if (!tv.is_zero()) sum = sum + gik * tv;
        }
        TensorField& o = out;
        o.at(idx) = sum;
    });
    return out;
}

inline TensorField lower_slot(const TensorField& t, int slot_1based, const MetricField& m) {
    int s = slot_1based - 1;
    if (s < 0 || s >= t.rank() || t.slots[static_cast<std::size_t>(s)] != Slot::Con)
        throw ShapeError("lower_slot: invalid slot");
    const Context& ctx = *t.ctx;
    std::vector<Slot> slots = t.slots;
    slots[static_cast<std::size_t>(s)] = Slot::Cov;
    TensorField out(ctx, slots);
    const int n = t.n();
    for_each_index(t.rank(), n, [&](const std::vector<int>& idx) {
        Expr sum = Expr::zero(ctx);
        std::vector<int> jdx = idx;
        for (int k = 1; k <= n; ++k) {
            const Expr& gik = m.g.at({idx[static_cast<std::size_t>(s)], k});
            if (gik.is_zero()) continue;
            jdx[static_cast<std::size_t>(s)] = k;
            const Expr& tv = t.at(jdx);
            if (!tv.is_zero()) sum = sum + gik * tv;
        }
        out.at(idx) = sum;
    });
    return out;
}

// cyclic sum over three slot positions (1-based): t + two cyclic rotations
inline TensorField cyclic_sum(const TensorField& t, int s1, int s2, int s3) {
    for (int s : {s1, s2, s3})
        if (s < 1 || s > t.rank()) throw ShapeError("cyclic_sum: invalid slot");
    if (s1 == s2 || s2 == s3 || s1 == s3) throw ShapeError("cyclic_sum: slots must be distinct");
    const Context& ctx = *t.ctx;
    TensorField out(ctx, t.slots);
    for_each_index(t.rank(), t.n(), [&](const std::vector<int>& idx) {
        std::vector<int> r1 = idx, r2 = idx;
        r1[static_cast<std::size_t>(s1 - 1)] = idx[static_cast<std::size_t>(s2 - 1)];
        r1[static_cast<std::size_t>(s2 - 1)] = idx[static_cast<std::size_t>(s3 - 1)];
        r1[static_cast<std::size_t>(s3 - 1)] = idx[static_cast<std::size_t>(s1 - 1)];
        r2[static_cast<std::size_t>(s1 - 1)] = idx[static_cast<std::size_t>(s3 - 1)];
        r2[static_cast<std::size_t>(s2 - 1)] = idx[static_cast<std::size_t>(s1 - 1)];
        r2[static_cast<std::size_t>(s3 - 1)] = idx[static_cast<std::size_t>(s2 - 1)];
        out.at(idx) = t.at(idx) + t.at(r1) + t.at(r2);
    });
    return out;
}

// g-trace of the covariant derivative over (derivative slot, chosen slot)
inline TensorField divergence(const TensorField& t, int slot_1based, const MetricField& m) {
    if (slot_1based < 1 || slot_1based > t.rank() ||
        t.slots[static_cast<std::size_t>(slot_1based - 1)] != Slot::Cov)
        throw ShapeError("divergence: invalid slot");
    const Context& ctx = *t.ctx;
    TensorField nabla = covariant_derivative(t, m);
    std::vector<Slot> slots;
    for (int a = 0; a < t.rank(); ++a)
        if (a != slot_1based - 1) slots.push_back(t.slots[static_cast<std::size_t>(a)]);
    TensorField out(ctx, slots);
    const int n = t.n();
    for_each_index(out.rank(), n, [&](const std::vector<int>& idx) {
        Expr sum = Expr::zero(ctx);
        for (int d = 1; d <= n; ++d)
            for (int k = 1; k <= n; ++k) {
                const Expr& gdk = m.ginv.at({d, k});
                if (gdk.is_zero()) continue;
                std::vector<int> full;
                full.reserve(static_cast<std::size_t>(t.rank() + 1));
                std::size_t src = 0;
                for (int a = 0; a < t.rank(); ++a) {
                    if (a == slot_1based - 1)
                        full.push_back(k);
                    else
                        full.push_back(idx[src++]);
                }
                full.push_back(d);
                const Expr& v = nabla.at(full);
                if (!v.is_zero()) sum = sum + gdk * v;
            }
        out.at(idx) = sum;
    });
    return out;
}

} // namespace symcurv
