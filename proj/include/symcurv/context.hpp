#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symcurv/errors.hpp"

namespace symcurv {

using AtomId = std::uint32_t;

enum class AtomKind : std::uint8_t { Coordinate = 0, Constant = 1, Function = 2 };

// A generator of the expression algebra: a chart coordinate, a named abstract
// constant, or a function symbol (the base function or one of its partial
// derivatives, identified by a sorted multi-index of coordinate indices).
struct AtomInfo {
    AtomKind kind;
    std::string name;       // coordinate / constant / base function name
    int coord_index = 0;    // 1-based, coordinates only
    bool positive = false;  // coordinates declared positive admit rational powers
    AtomId base = 0;        // functions: atom of the underlying base function
    std::vector<int> deriv; // functions: sorted derivative multi-index
    std::vector<int> deps;  // functions: sorted dependency set (coordinate indices)
};

// Symbol registry for one chart. Append-only: atoms are never removed or
// altered, so expressions may hold AtomIds across later declarations.
class Context {
public:
    Context() = default;
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    int dimension() const { return static_cast<int>(coords_.size()); }

    const std::vector<AtomId>& coordinates() const { return coords_; }

    AtomId declare_coordinate(const std::string& name, bool positive = false) {
        std::lock_guard<std::mutex> lock(mu_);
        require_fresh(name);
        AtomInfo info;
        info.kind = AtomKind::Coordinate;
        info.name = name;
        info.coord_index = static_cast<int>(coords_.size()) + 1;
        info.positive = positive;
        AtomId id = push(std::move(info));
        coords_.push_back(id);
        by_name_[name] = id;
        return id;
    }

    AtomId declare_constant(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) {
            if (atoms_[it->second].kind == AtomKind::Constant) return it->second;
            throw EngineError("symbol '" + name + "' already declared with a different role");
        }
        AtomInfo info;
        info.kind = AtomKind::Constant;
        info.name = name;
        AtomId id = push(std::move(info));
        by_name_[name] = id;
        return id;
    }

    // deps: 1-based coordinate indices the function may depend on.
    AtomId declare_function(const std::string& name, std::vector<int> deps) {
        std::lock_guard<std::mutex> lock(mu_);
        require_fresh(name);
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        for (int d : deps)
            if (d < 1 || d > static_cast<int>(coords_.size()))
                throw EngineError("function '" + name + "' depends on unknown coordinate index " +
                                  std::to_string(d));
        AtomInfo info;
        info.kind = AtomKind::Function;
        info.name = name;
        info.deps = std::move(deps);
        AtomId id = push(std::move(info));
        atoms_[id].base = id;
        by_name_[name] = id;
        return id;
    }

    // Interns the partial-derivative symbol of a base function. The
    // multi-index is stored sorted (partials commute); every index must lie
    // in the dependency set.
    AtomId function_atom(AtomId base_fn, std::vector<int> multi_index) const {
        std::lock_guard<std::mutex> lock(mu_);
        const AtomInfo& b = atoms_.at(base_fn);
        if (b.kind != AtomKind::Function || b.base != base_fn)
            throw EngineError("function_atom: not a base function symbol");
        std::sort(multi_index.begin(), multi_index.end());
        if (multi_index.empty()) return base_fn;
        for (int ix : multi_index)
            if (!std::binary_search(b.deps.begin(), b.deps.end(), ix))
                throw EngineError("derivative of '" + b.name +
                                  "' taken w.r.t. coordinate outside its dependency set");
        auto key = std::make_pair(base_fn, multi_index);
        auto it = deriv_atoms_.find(key);
        if (it != deriv_atoms_.end()) return it->second;
        AtomInfo info;
        info.kind = AtomKind::Function;
        info.name = b.name;
        info.base = base_fn;
        info.deriv = multi_index;
        info.deps = b.deps;
        AtomId id = push(std::move(info));
        deriv_atoms_.emplace(std::move(key), id);
        return id;
    }

    const AtomInfo& info(AtomId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return atoms_.at(id);
    }

    std::optional<AtomId> find(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    AtomId coordinate(int index_1based) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (index_1based < 1 || index_1based > static_cast<int>(coords_.size()))
            throw EngineError("coordinate index out of range");
        return coords_[static_cast<std::size_t>(index_1based) - 1];
    }

    std::optional<int> coordinate_index(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        const AtomInfo& a = atoms_[it->second];
        if (a.kind != AtomKind::Coordinate) return std::nullopt;
        return a.coord_index;
    }

    // Fixed global symbol order: coordinates < constants < function symbols
    // (by name, then derivative multi-index). Intrinsic to the symbols, so it
    // is stable under later declarations.
    bool atom_less(AtomId a, AtomId b) const {
        if (a == b) return false;
        std::lock_guard<std::mutex> lock(mu_);
        const AtomInfo& x = atoms_.at(a);
        const AtomInfo& y = atoms_.at(b);
        if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
        switch (x.kind) {
        case AtomKind::Coordinate: return x.coord_index < y.coord_index;
        case AtomKind::Constant: return x.name < y.name;
        case AtomKind::Function:
            if (x.name != y.name) return x.name < y.name;
            return x.deriv < y.deriv;
        }
        return false;
    }

    std::size_t atom_count() const {
        std::lock_guard<std::mutex> lock(mu_);
        return atoms_.size();
    }

private:
    void require_fresh(const std::string& name) {
        if (by_name_.count(name))
            throw EngineError("symbol '" + name + "' already declared");
    }

    AtomId push(AtomInfo info) const {
        atoms_.push_back(std::move(info));
        return static_cast<AtomId>(atoms_.size() - 1);
    }

    mutable std::mutex mu_;
    mutable std::deque<AtomInfo> atoms_; // deque: stable addresses, append-only
    std::vector<AtomId> coords_;
    std::map<std::string, AtomId> by_name_;
    mutable std::map<std::pair<AtomId, std::vector<int>>, AtomId> deriv_atoms_;
};

} // namespace symcurv
