#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

#include "symcurv/assumptions.hpp"
#include "symcurv/expression.hpp"

namespace symcurv {

enum class Slot : std::uint8_t { Cov, Con };

// Dense component array of expressions over a chart, 1-based indices.
// Symmetries of the catalog tensors are structural facts about the stored
// components, not a compressed layout.
struct TensorField {
    const Context* ctx = nullptr;
    std::vector<Slot> slots;
    std::vector<Expr> comp;

    TensorField() = default;
    TensorField(const Context& c, std::vector<Slot> s) : ctx(&c), slots(std::move(s)) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < slots.size(); ++i) total *= static_cast<std::size_t>(n());
        comp.assign(total, Expr::zero(c));
    }

    int n() const { return ctx->dimension(); }
    int rank() const { return static_cast<int>(slots.size()); }

    std::size_t offset(const std::vector<int>& idx) const {
        std::size_t o = 0;
        for (std::size_t k = 0; k < slots.size(); ++k)
            o = o * static_cast<std::size_t>(n()) + static_cast<std::size_t>(idx[k] - 1);
        return o;
    }

    Expr& at(const std::vector<int>& idx) { return comp[offset(idx)]; }
    const Expr& at(const std::vector<int>& idx) const { return comp[offset(idx)]; }
    Expr& at(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }
    const Expr& at(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }

    bool is_zero() const {
        for (const Expr& e : comp)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const TensorField& a, const TensorField& b) {
        if (a.slots != b.slots) return false;
        for (std::size_t i = 0; i < a.comp.size(); ++i)
            if (!(a.comp[i] == b.comp[i])) return false;
        return true;
    }
};

// iterate all 1-based index tuples of a rank-k tensor
inline void for_each_index(int rank, int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(rank), 1);
    if (rank == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        int k = rank - 1;
        while (k >= 0) {
            if (++idx[static_cast<std::size_t>(k)] <= n) break;
            idx[static_cast<std::size_t>(k)] = 1;
            --k;
        }
        if (k < 0) break;
    }
}

inline TensorField tensor_add(const TensorField& a, const TensorField& b) {
    if (a.slots != b.slots) throw ShapeError("tensor addition: shape mismatch");
    TensorField out(*a.ctx, a.slots);
    for (std::size_t i = 0; i < a.comp.size(); ++i) out.comp[i] = a.comp[i] + b.comp[i];
    return out;
}

inline TensorField tensor_sub(const TensorField& a, const TensorField& b) {
    if (a.slots != b.slots) throw ShapeError("tensor subtraction: shape mismatch");
    TensorField out(*a.ctx, a.slots);
    for (std::size_t i = 0; i < a.comp.size(); ++i) out.comp[i] = a.comp[i] - b.comp[i];
    return out;
}

inline TensorField tensor_scale(const TensorField& a, const Expr& s) {
    TensorField out(*a.ctx, a.slots);
    for (std::size_t i = 0; i < a.comp.size(); ++i) out.comp[i] = a.comp[i] * s;
    return out;
}

inline TensorField tensor_substitute(const TensorField& a, const AssumptionSet& s) {
    TensorField out(*a.ctx, a.slots);
    for (std::size_t i = 0; i < a.comp.size(); ++i) out.comp[i] = substitute(a.comp[i], s);
    return out;
}

// symmetric (0,2) outer product of two covectors
inline TensorField covector_outer(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    const Context& ctx = *a.front().context();
    TensorField out(ctx, {Slot::Cov, Slot::Cov});
    int n = out.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            out.at({i, j}) = a[static_cast<std::size_t>(i - 1)] * b[static_cast<std::size_t>(j - 1)];
    return out;
}

// ---------------------------------------------------------------------------
// symmetry orbits (for printing "upto symmetry" representatives)

struct TensorSymmetry {
    // each generator: a permutation of the slots (0-based) and a sign
    std::vector<std::pair<std::vector<int>, int>> generators;

    static TensorSymmetry none() { return {}; }
    static TensorSymmetry symmetric_pair(int a, int b, int rank) {
        TensorSymmetry s;
        std::vector<int> p(static_cast<std::size_t>(rank));
        for (int i = 0; i < rank; ++i) p[static_cast<std::size_t>(i)] = i;
        std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
        s.generators.push_back({p, +1});
        return s;
    }
    static TensorSymmetry antisymmetric_pair(int a, int b, int rank) {
        TensorSymmetry s = symmetric_pair(a, b, rank);
        s.generators.back().second = -1;
        return s;
    }
    // antisymmetric in (0,1) and (2,3), symmetric under pair swap
    static TensorSymmetry riemann(int rank) {
        TensorSymmetry s;
        auto idp = [&] {
            std::vector<int> p(static_cast<std::size_t>(rank));
            for (int i = 0; i < rank; ++i) p[static_cast<std::size_t>(i)] = i;
            return p;
        };
        auto p1 = idp();
        std::swap(p1[0], p1[1]);
        s.generators.push_back({p1, -1});
        auto p2 = idp();
        std::swap(p2[2], p2[3]);
        s.generators.push_back({p2, -1});
        auto p3 = idp();
        std::swap(p3[0], p3[2]);
        std::swap(p3[1], p3[3]);
        s.generators.push_back({p3, +1});
        return s;
    }

    // orbit of an index tuple: list of (tuple, sign)
    std::vector<std::pair<std::vector<int>, int>> orbit(const std::vector<int>& idx) const {
        std::vector<std::pair<std::vector<int>, int>> out{{idx, +1}};
        bool grown = true;
        while (grown) {
            grown = false;
            for (std::size_t i = 0; i < out.size(); ++i)
                for (const auto& [perm, sign] : generators) {
                    std::vector<int> t(idx.size());
                    for (std::size_t k = 0; k < idx.size(); ++k)
                        t[k] = out[i].first[static_cast<std::size_t>(perm[k])];
                    int sg = out[i].second * sign;
                    bool seen = false;
                    for (auto& [u, us] : out)
                        if (u == t) {
                            seen = true;
                            break;
                        }
                    if (!seen) {
                        out.push_back({std::move(t), sg});
                        grown = true;
                    }
                }
        }
        return out;
    }

    bool is_representative(const std::vector<int>& idx) const {
        for (const auto& [t, sign] : orbit(idx))
            if (t < idx) return false;
        return true;
    }
};

} // namespace symcurv
