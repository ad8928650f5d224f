#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "symcurv/catalog.hpp"

namespace symcurv {

// Line-oriented metric document:
//
//   [meta]            (optional)
//   name = example
//   description = ...
//   [coords]
//   u
//   x : positive
//   [constants]
//   p
//   [functions]
//   w : u x y
//   [components]
//   g[1][1] = x*w - p^2*r^2/x^2
//   [assumptions]
//   nonzero: w_xx + w_yy
//   set: a = -p^2
//   bind: f = exp(x^3/3)*x^(-2/3)
//
// Components are completed symmetrically; assigning both g[i][j] and g[j][i]
// is a duplicate-assignment error. set/bind substitutions are applied to the
// metric on load and recorded in the bundle assumptions.
struct MetricDocument {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, bool>> coords; // name, positive
    std::vector<std::string> constants;
    std::vector<std::pair<std::string, std::vector<std::string>>> functions;
    std::vector<std::tuple<int, int, std::string>> components;
    std::vector<std::string> nonzero;
    std::vector<std::pair<std::string, std::string>> sets;  // constant-valued
    std::vector<std::pair<std::string, std::string>> binds; // function-valued
};

namespace detail {

struct DocError : EngineError {
    DocError(const std::string& msg, int line)
        : EngineError("line " + std::to_string(line) + ": " + msg) {}
};

inline std::string doc_trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> doc_split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace detail

inline MetricDocument parse_metric_document(const std::string& text) {
    using detail::DocError;
    MetricDocument doc;
    enum class Section { None, Meta, Coords, Constants, Functions, Components, Assumptions };
    Section sec = Section::None;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::doc_trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line == "[meta]") sec = Section::Meta;
            else if (line == "[coords]") sec = Section::Coords;
            else if (line == "[constants]") sec = Section::Constants;
            else if (line == "[functions]") sec = Section::Functions;
            else if (line == "[components]") sec = Section::Components;
            else if (line == "[assumptions]") sec = Section::Assumptions;
            else throw DocError("unknown section '" + line + "'", lineno);
            continue;
        }
        switch (sec) {
        case Section::None:
            throw DocError("content before the first section header", lineno);
        case Section::Meta: {
            auto eq = line.find('=');
            if (eq == std::string::npos) throw DocError("expected key = value", lineno);
            std::string key = detail::doc_trim(line.substr(0, eq));
            std::string val = detail::doc_trim(line.substr(eq + 1));
            if (key == "name") doc.name = val;
            else if (key == "description") doc.description = val;
            else throw DocError("unknown meta key '" + key + "'", lineno);
            break;
        }
        case Section::Coords: {
            auto colon = line.find(':');
            std::string nm = detail::doc_trim(colon == std::string::npos ? line : line.substr(0, colon));
            bool positive = false;
            if (colon != std::string::npos) {
                std::string attr = detail::doc_trim(line.substr(colon + 1));
                if (attr != "positive") throw DocError("unknown coordinate attribute '" + attr + "'", lineno);
                positive = true;
            }
            if (nm.empty()) throw DocError("empty coordinate name", lineno);
            doc.coords.push_back({nm, positive});
            break;
        }
        case Section::Constants:
            doc.constants.push_back(line);
            break;
        case Section::Functions: {
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw DocError("expected 'name : dep1 dep2 ...'", lineno);
            std::string nm = detail::doc_trim(line.substr(0, colon));
            auto deps = detail::doc_split_ws(line.substr(colon + 1));
            if (nm.empty() || deps.empty())
                throw DocError("function needs a name and a dependency list", lineno);
            doc.functions.push_back({nm, deps});
            break;
        }
        case Section::Components: {
            int i = 0, j = 0;
            char g = 0;
            std::size_t pos = 0;
            if (std::sscanf(line.c_str(), "%c[%d][%d]", &g, &i, &j) != 3 || g != 'g')
                throw DocError("expected 'g[i][j] = expression'", lineno);
            pos = line.find('=');
            if (pos == std::string::npos) throw DocError("expected '=' in component line", lineno);
            doc.components.push_back({i, j, detail::doc_trim(line.substr(pos + 1))});
            break;
        }
        case Section::Assumptions: {
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw DocError("expected 'nonzero:', 'set:' or 'bind:'", lineno);
            std::string kind = detail::doc_trim(line.substr(0, colon));
            std::string rest = detail::doc_trim(line.substr(colon + 1));
            if (kind == "nonzero") {
                doc.nonzero.push_back(rest);
            } else if (kind == "set" || kind == "bind") {
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw DocError("expected 'name = expression'", lineno);
                auto& list = kind == "set" ? doc.sets : doc.binds;
                list.push_back({detail::doc_trim(rest.substr(0, eq)),
                                detail::doc_trim(rest.substr(eq + 1))});
            } else {
                throw DocError("unknown assumption kind '" + kind + "'", lineno);
            }
            break;
        }
        }
    }
    return doc;
}

inline std::string serialize_metric_document(const MetricDocument& doc) {
    std::ostringstream os;
    if (!doc.name.empty() || !doc.description.empty()) {
        os << "[meta]\n";
        if (!doc.name.empty()) os << "name = " << doc.name << "\n";
        if (!doc.description.empty()) os << "description = " << doc.description << "\n";
        os << "\n";
    }
    os << "[coords]\n";
    for (const auto& [nm, pos] : doc.coords) os << nm << (pos ? " : positive" : "") << "\n";
    if (!doc.constants.empty()) {
        os << "\n[constants]\n";
        for (const auto& c : doc.constants) os << c << "\n";
    }
    if (!doc.functions.empty()) {
        os << "\n[functions]\n";
        for (const auto& [nm, deps] : doc.functions) {
            os << nm << " :";
            for (const auto& d : deps) os << " " << d;
            os << "\n";
        }
    }
    os << "\n[components]\n";
    for (const auto& [i, j, expr] : doc.components)
        os << "g[" << i << "][" << j << "] = " << expr << "\n";
    if (!doc.nonzero.empty() || !doc.sets.empty() || !doc.binds.empty()) {
        os << "\n[assumptions]\n";
        for (const auto& nz : doc.nonzero) os << "nonzero: " << nz << "\n";
        for (const auto& [k, v] : doc.sets) os << "set: " << k << " = " << v << "\n";
        for (const auto& [k, v] : doc.binds) os << "bind: " << k << " = " << v << "\n";
    }
    return os.str();
}

// resolve a --set/--bind style target: a plain symbol or a derivative alias
inline AtomId resolve_substitution_target(const Context& ctx, const std::string& name) {
    auto underscore = name.find('_');
    std::string base = underscore == std::string::npos ? name : name.substr(0, underscore);
    auto id = ctx.find(base);
    if (!id) throw UndeclaredSymbol("unknown substitution target '" + name + "'");
    if (underscore == std::string::npos) return *id;
    if (ctx.info(*id).kind != AtomKind::Function)
        throw SubstitutionError("subscripted target '" + name + "' is not a function");
    // reuse the parser's subscript handling
    Expr e = parse_expression(name, ctx);
    if (e.num().terms.size() != 1 || e.num().terms[0].mono.factors.size() != 1)
        throw SubstitutionError("bad substitution target '" + name + "'");
    return e.num().terms[0].mono.factors[0].atom;
}

inline MetricBundle load_metric_document(const std::string& text, const std::string& fallback_name) {
    MetricDocument doc = parse_metric_document(text);
    if (doc.coords.size() < 3) throw EngineError("a chart needs at least 3 coordinates");
    auto ctx = std::make_shared<Context>();
    for (const auto& [nm, pos] : doc.coords) ctx->declare_coordinate(nm, pos);
    declare_physical_constants(*ctx);
    for (const auto& c : doc.constants)
        ctx->declare_constant(c);
    for (const auto& [nm, deps] : doc.functions) {
        std::vector<int> dix;
        for (const auto& d : deps) {
            auto ix = ctx->coordinate_index(d);
            if (!ix) throw EngineError("function '" + nm + "' depends on unknown coordinate '" + d + "'");
            dix.push_back(*ix);
        }
        ctx->declare_function(nm, std::move(dix));
    }
    const int n = ctx->dimension();
    TensorField g(*ctx, {Slot::Cov, Slot::Cov});
    std::vector<bool> assigned(static_cast<std::size_t>(n * n), false);
    for (const auto& [i, j, exprs] : doc.components) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw EngineError("component index g[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] outside the chart dimension");
        std::size_t o1 = static_cast<std::size_t>((i - 1) * n + (j - 1));
        std::size_t o2 = static_cast<std::size_t>((j - 1) * n + (i - 1));
        if (assigned[o1] || assigned[o2])
            throw EngineError("duplicate assignment of g[" + std::to_string(i) + "][" +
                              std::to_string(j) + "] after symmetrization");
        assigned[o1] = assigned[o2] = true;
        Expr e = parse_expression(exprs, *ctx);
        g.at({i, j}) = e;
        g.at({j, i}) = e;
    }
    MetricBundle base;
    base.ctx = ctx;
    base.metric = make_metric(*ctx, std::move(g));
    base.assumptions = AssumptionSet(*ctx);
    for (const char* pc : {"c", "G", "pi"})
        if (auto id = ctx->find(pc)) base.assumptions.declare_nonzero(Expr::atom(*ctx, *id));
    for (const auto& nz : doc.nonzero) base.assumptions.declare_nonzero(parse_expression(nz, *ctx));
    base.assumptions.declare_nonzero(base.metric.det);
    base.assumptions.close();
    base.name = !doc.name.empty() ? doc.name : fallback_name;
    if (doc.sets.empty() && doc.binds.empty()) return base;
    AssumptionSet bindings(*ctx);
    for (const auto& [k, v] : doc.sets) {
        AtomId target = resolve_substitution_target(*ctx, k);
        Expr image = parse_expression(v, *ctx);
        bindings.set(target, image);
    }
    for (const auto& [k, v] : doc.binds) {
        AtomId target = resolve_substitution_target(*ctx, k);
        if (ctx->info(target).kind != AtomKind::Function)
            throw SubstitutionError("bind target '" + k + "' is not a function");
        bindings.set(target, parse_expression(v, *ctx));
    }
    bindings.close();
    return apply_specialization(base, bindings, base.name);
}

} // namespace symcurv
