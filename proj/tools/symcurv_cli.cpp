// Command-line front end: print tensor components, run the structure
// classifier, check curvature identities, and compare two metrics.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symcurv/report_json.hpp"
#include "symcurv/symcurv.hpp"

using namespace symcurv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

struct SelectorOptions {
    std::string metric;
    std::string metric_file;
    std::vector<std::string> sets;
    std::vector<std::string> binds;
};

MetricBundle load_selector_base(const SelectorOptions& sel) {
    if (!sel.metric.empty() && !sel.metric_file.empty())
        throw EngineError("--metric and --metric-file are mutually exclusive");
    if (!sel.metric.empty()) return builtin_metric(sel.metric);
    if (!sel.metric_file.empty()) {
        std::ifstream in(sel.metric_file);
        if (!in) throw EngineError("cannot open metric file '" + sel.metric_file + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string stem = sel.metric_file;
        auto slash = stem.find_last_of('/');
        if (slash != std::string::npos) stem = stem.substr(slash + 1);
        auto dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        return load_metric_document(ss.str(), stem);
    }
    throw EngineError("a metric selector is required (--metric or --metric-file)");
}

// identifiers in substitution images that are not yet declared become fresh
// abstract constants (e.g. --bind f=f0 for "f constant")
void declare_unknown_identifiers(Context& ctx, const std::string& text) {
    for (std::size_t i = 0; i < text.size();) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
        std::string name = text.substr(i, j - i);
        if (j < text.size() && text[j] == '_') {
            // a derivative alias; the base must already exist
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            i = j;
            continue;
        }
        if (name != "exp" && name != "d" && !ctx.find(name)) ctx.declare_constant(name);
        i = j;
    }
}

MetricBundle load_selector(const SelectorOptions& sel) {
    MetricBundle base = load_selector_base(sel);
    if (sel.sets.empty() && sel.binds.empty()) return base;
    AssumptionSet bindings(*base.ctx);
    auto add = [&](const std::string& item, bool is_bind) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw EngineError("expected name=expression in '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        declare_unknown_identifiers(*base.ctx, val);
        AtomId target = resolve_substitution_target(*base.ctx, key);
        if (is_bind && base.ctx->info(target).kind != AtomKind::Function)
            throw EngineError("--bind target '" + key + "' is not a function");
        Expr image = parse_expression(val, *base.ctx);
        if (!is_bind && base.ctx->info(target).kind == AtomKind::Function) {
            // --set on a function demands a coordinate-free image
            for (AtomId a : image.atoms())
                if (base.ctx->info(a).kind == AtomKind::Coordinate)
                    throw EngineError("--set image for function '" + key +
                                      "' must not depend on coordinates; use --bind");
        }
        bindings.set(target, image);
    };
    for (const auto& s : sel.sets) add(s, false);
    for (const auto& s : sel.binds) add(s, true);
    bindings.close();
    return apply_specialization(base, bindings, base.name);
}

struct NamedTensor {
    std::string label;            // component prefix
    TensorField tensor;
    TensorSymmetry sym;
    int deriv_slots = 0;          // trailing derivative slots printed after a comma
    std::optional<Expr> scalar;   // scalar "tensors" (kappa)
};

NamedTensor named_tensor(const std::string& name, const GeometryCache& g) {
    auto riemann_like = [&](const TensorField& t, std::string label, int deriv = 0) {
        TensorSymmetry s = TensorSymmetry::riemann(t.rank());
        return NamedTensor{std::move(label), t, s, deriv, std::nullopt};
    };
    auto sym_pair = [&](const TensorField& t, std::string label, int deriv = 0) {
        return NamedTensor{std::move(label), t, TensorSymmetry::symmetric_pair(0, 1, t.rank()),
                           deriv, std::nullopt};
    };
    if (name == "g") return sym_pair(g.m().g, "g");
    if (name == "inverse") return sym_pair(g.m().ginv, "ginv");
    if (name == "christoffel")
        return NamedTensor{"Gamma", g.m().gamma, TensorSymmetry::symmetric_pair(1, 2, 3), 0,
                           std::nullopt};
    if (name == "riemann") return riemann_like(g.cd.riemann, "R");
    if (name == "ricci") return sym_pair(g.cd.ricci, "S");
    if (name == "scalar")
        return NamedTensor{"kappa", TensorField(), TensorSymmetry::none(), 0, g.cd.kappa};
    if (name == "conformal") return riemann_like(g.C, "C");
    if (name == "concircular") return riemann_like(g.W, "W");
    if (name == "conharmonic") return riemann_like(g.K, "K");
    if (name == "projective")
        return NamedTensor{"P", g.P, TensorSymmetry::antisymmetric_pair(0, 1, 4), 0, std::nullopt};
    if (name == "stress-energy") return sym_pair(g.T, "T");
    if (name == "nabla-riemann") return riemann_like(g.nablaR, "R", 1);
    if (name == "nabla-ricci")
        return NamedTensor{"S", g.nablaS, TensorSymmetry::symmetric_pair(0, 1, 3), 1, std::nullopt};
    if (name == "nabla-conformal") return riemann_like(g.nablaC, "C", 1);
    if (name == "nabla-stress-energy")
        return NamedTensor{"T", g.nablaT, TensorSymmetry::symmetric_pair(0, 1, 3), 1, std::nullopt};
    throw EngineError("unknown tensor '" + name + "'");
}

std::string component_label(const NamedTensor& nt, const std::vector<int>& idx) {
    std::string s = nt.label;
    int main_rank = static_cast<int>(idx.size()) - nt.deriv_slots;
    for (int k = 0; k < main_rank; ++k) s += "[" + std::to_string(idx[static_cast<std::size_t>(k)]) + "]";
    if (nt.deriv_slots > 0) {
        s += ",";
        for (int k = main_rank; k < static_cast<int>(idx.size()); ++k)
            s += "[" + std::to_string(idx[static_cast<std::size_t>(k)]) + "]";
    }
    return s;
}

// nonzero orbit representatives in lexicographic order
std::vector<std::pair<std::vector<int>, Expr>> representatives(const NamedTensor& nt) {
    std::vector<std::pair<std::vector<int>, Expr>> out;
    if (nt.scalar) return out;
    for_each_index(nt.tensor.rank(), nt.tensor.n(), [&](const std::vector<int>& idx) {
        const Expr& e = nt.tensor.at(idx);
        if (e.is_zero()) return;
        if (!nt.sym.is_representative(idx)) return;
        out.push_back({idx, e});
    });
    return out;
}

// ------------------------------------------------------------------ check ---

// tiny grammar over tensor names: . (dot action), Q(,), wedge(,), nabla(),
// div(), rational scalar multiples, + -, and == between the two sides.
class IdentityParser {
public:
    IdentityParser(std::string_view text, const GeometryCache& g) : text_(text), g_(g) {}

    std::pair<TensorField, TensorField> parse_identity() {
        TensorField lhs = parse_sum();
        skip_ws();
        if (!(peek('=') && peek_at(1, '='))) throw SyntaxError("expected '=='", pos_);
        pos_ += 2;
        TensorField rhs = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        if (lhs.slots.empty() && !rhs.slots.empty()) lhs = zero_like(rhs);
        if (rhs.slots.empty() && !lhs.slots.empty()) rhs = zero_like(lhs);
        if (lhs.slots != rhs.slots) throw ShapeError("identity sides have different shapes");
        return {std::move(lhs), std::move(rhs)};
    }

private:
    TensorField zero_like(const TensorField& t) { return TensorField(*t.ctx, t.slots); }

    TensorField parse_sum() {
        TensorField t = parse_term();
        while (true) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                t = tensor_add(t, parse_term());
            } else if (peek('-') && !peek_at(1, '=')) {
                ++pos_;
                t = tensor_sub(t, parse_term());
            } else {
                return t;
            }
        }
    }

    TensorField parse_term() {
        skip_ws();
        // optional rational scalar prefix: 2*..., 1/3*..., -1/3*...
        bool neg = false;
        while (peek('-') || peek('+')) {
            if (peek('-')) neg = !neg;
            ++pos_;
            skip_ws();
        }
        Coeff scale = 1;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            long long num = parse_int();
            long long den = 1;
            skip_ws();
            if (peek('/')) {
                ++pos_;
                den = parse_int();
            }
            skip_ws();
            if (peek('*')) {
                ++pos_;
                scale = Coeff(num, den);
            } else if (num == 0 && den == 1) {
                // a literal zero: a rank-0 placeholder resolved at '=='
                TensorField z;
                z.ctx = &g_.ctx();
                return z;
            } else {
                throw SyntaxError("a scalar must multiply a tensor", pos_);
            }
        }
        TensorField t = parse_factor();
        if (neg || scale != 1) {
            Expr s = Expr::rational(g_.ctx(), neg ? -scale : scale);
            t = tensor_scale(t, s);
        }
        return t;
    }

    TensorField parse_factor() {
        TensorField t = parse_atom();
        while (true) {
            skip_ws();
            if (peek('.')) {
                ++pos_;
                TensorField h = parse_atom();
                t = dot_action(require04(t), h, g_.m());
            } else {
                return t;
            }
        }
    }

    TensorField require04(TensorField t) {
        if (t.slots != std::vector<Slot>(4, Slot::Cov))
            throw ShapeError("the acting tensor of '.' must be a (0,4) tensor");
        return t;
    }

    TensorField parse_atom() {
        skip_ws();
        if (peek('(')) {
            ++pos_;
            TensorField t = parse_sum();
            skip_ws();
            expect(')');
            return t;
        }
        std::size_t start = pos_;
        std::string name = lex_name();
        if (name.empty()) throw SyntaxError("expected a tensor name", pos_);
        if (name == "Q") {
            expect('(');
            TensorField a = parse_sum();
            skip_ws();
            expect(',');
            TensorField h = parse_sum();
            skip_ws();
            expect(')');
            return q_operator(a, h);
        }
        if (name == "wedge") {
            expect('(');
            TensorField a = parse_sum();
            skip_ws();
            expect(',');
            TensorField e = parse_sum();
            skip_ws();
            expect(')');
            return kulkarni_nomizu(a, e);
        }
        if (name == "nabla") {
            expect('(');
            TensorField t = parse_sum();
            skip_ws();
            expect(')');
            return covariant_derivative(t, g_.m());
        }
        if (name == "div") {
            expect('(');
            TensorField t = parse_sum();
            skip_ws();
            expect(')');
            return divergence(t, 1, g_.m());
        }
        if (name == "R") return g_.cd.riemann;
        if (name == "S") return g_.cd.ricci;
        if (name == "C") return g_.C;
        if (name == "W") return g_.W;
        if (name == "K") return g_.K;
        if (name == "P") return g_.P;
        if (name == "G") return g_.m().g;
        if (name == "Grot") return g_.Gauss;
        if (name == "T") return g_.T;
        throw SyntaxError("unknown tensor name '" + name + "'", start);
    }

    std::string lex_name() {
        std::string s;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            s += text_[pos_++];
        return s;
    }
    long long parse_int() {
        long long v = 0;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError("expected a number", pos_);
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return v;
    }
    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    bool peek_at(std::size_t off, char c) const {
        return pos_ + off < text_.size() && text_[pos_ + off] == c;
    }
    void expect(char c) {
        skip_ws();
        if (!peek(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    const GeometryCache& g_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------------- text ---

void print_verdict_text(std::ostream& os, const PropertyVerdict& v) {
    os << v.property << ": " << status_name(v.status);
    if (!v.assumptions.empty()) {
        os << "  [nonzero:";
        for (const auto& a : v.assumptions) os << " " << a << ";";
        os << "]";
    }
    os << "\n";
    for (const auto& [k, val] : v.witness) os << "    " << k << " = " << val << "\n";
    if (!v.certificate.empty()) os << "    certificate: " << v.certificate << "\n";
    for (const auto& n : v.notes) os << "    note: " << n << "\n";
}

int run_components(const SelectorOptions& sel, const std::string& tensor,
                   const std::string& format) {
    MetricBundle b = load_selector(sel);
    GeometryCache g = make_cache(b);
    NamedTensor nt = named_tensor(tensor, g);
    if (format == "machine") {
        Json j = report_header(b);
        Json comps = Json::array();
        if (nt.scalar) {
            Json e;
            e["indices"] = Json::array();
            e["value"] = to_string(*nt.scalar);
            comps.push_back(e);
        } else {
            for (auto& [idx, val] : representatives(nt)) {
                Json e;
                e["indices"] = idx;
                e["value"] = to_string(val);
                comps.push_back(e);
            }
        }
        Json block;
        block["tensor"] = tensor;
        block["entries"] = comps;
        j["components"] = Json::array({block});
        std::cout << j.dump(2) << "\n";
    } else {
        if (nt.scalar) {
            std::cout << nt.label << " = " << to_string(*nt.scalar) << "\n";
        } else {
            auto reps = representatives(nt);
            if (reps.empty()) std::cout << "(all components are zero)\n";
            for (auto& [idx, val] : reps)
                std::cout << component_label(nt, idx) << " = " << to_string(val) << "\n";
        }
    }
    return kExitOk;
}

int run_classify(const SelectorOptions& sel, const std::string& properties,
                 const std::string& format) {
    auto t0 = std::chrono::steady_clock::now();
    MetricBundle b = load_selector(sel);
    GeometryCache g = make_cache(b);
    std::vector<std::string> only;
    if (!properties.empty() && properties != "all") {
        std::istringstream ss(properties);
        std::string tok;
        while (std::getline(ss, tok, ',')) only.push_back(tok);
    }
    ClassificationReport rep = full_battery(g, only);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (format == "machine") {
        Json j = report_header(b);
        Json vs = Json::array();
        for (const auto& v : rep.verdicts) vs.push_back(verdict_to_json(v));
        j["verdicts"] = vs;
        j["timing_ms"] = ms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "metric: " << rep.metric << "\n";
        if (!rep.ambient_assumptions.empty()) {
            std::cout << "ambient nonzero:";
            for (const auto& a : rep.ambient_assumptions) std::cout << " " << a << ";";
            std::cout << "\n";
        }
        for (const auto& v : rep.verdicts) print_verdict_text(std::cout, v);
        std::cout << "elapsed: " << ms << " ms\n";
    }
    return kExitOk;
}

int run_check(const SelectorOptions& sel, const std::string& identity, const std::string& format) {
    MetricBundle b = load_selector(sel);
    GeometryCache g = make_cache(b);
    IdentityParser ip(identity, g);
    std::pair<TensorField, TensorField> sides = [&] {
        try {
            return ip.parse_identity();
        } catch (const ShapeError& e) {
            // a malformed identity is a usage error, like a grammar error
            throw SyntaxError(e.what(), 0);
        }
    }();
    auto& [lhs, rhs] = sides;
    TensorField resid = tensor_sub(lhs, rhs);
    auto nz = detail::first_nonzero(resid);
    bool holds = !nz.has_value();
    if (format == "machine") {
        Json j = report_header(b);
        Json id;
        id["identity"] = identity;
        id["holds"] = holds;
        if (!holds) {
            id["residual_index"] = nz->first;
            id["residual"] = to_string(nz->second);
        }
        j["check"] = id;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << identity << " : " << (holds ? "holds" : "fails") << "\n";
        if (!holds)
            std::cout << "residual" << detail::index_string(nz->first) << " = "
                      << to_string(nz->second) << "\n";
    }
    return holds ? kExitOk : kExitIdentityFailed;
}

int run_compare(const SelectorOptions& left, const SelectorOptions& right,
                const std::string& format) {
    MetricBundle lb = load_selector(left);
    MetricBundle rb = load_selector(right);
    GeometryCache lg = make_cache(lb);
    GeometryCache rg = make_cache(rb);
    auto props = comparison_properties();
    ClassificationReport lrep = full_battery(lg, props);
    ClassificationReport rrep = full_battery(rg, props);
    auto key = [](const PropertyVerdict& v) {
        if (v.property == "stress_energy")
            for (const auto& [k, val] : v.witness)
                if (k == "class") return std::string("holds:") + val;
        return status_name(v.status) == "holds-under-assumptions" ? std::string("holds")
                                                                  : status_name(v.status);
    };
    if (format == "machine") {
        Json j;
        j["version"] = kToolVersion;
        j["left"] = lb.name;
        j["left_assumptions"] = assumptions_to_json(lb.assumptions);
        j["right"] = rb.name;
        j["right_assumptions"] = assumptions_to_json(rb.assumptions);
        Json rows = Json::array();
        for (const auto& p : props) {
            const PropertyVerdict* lv = lrep.find(p);
            const PropertyVerdict* rv = rrep.find(p);
            if (!lv || !rv) continue;
            Json row;
            row["property"] = p;
            row["left"] = verdict_to_json(*lv);
            row["right"] = verdict_to_json(*rv);
            row["agreement"] = key(*lv) == key(*rv);
            rows.push_back(row);
        }
        j["comparison"] = rows;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "comparison: " << lb.name << " vs " << rb.name << "\n\n";
        std::cout << "-- similarities --\n";
        for (const auto& p : props) {
            const PropertyVerdict* lv = lrep.find(p);
            const PropertyVerdict* rv = rrep.find(p);
            if (!lv || !rv || key(*lv) != key(*rv)) continue;
            std::cout << p << ": both " << key(*lv) << "\n";
        }
        std::cout << "\n-- dissimilarities --\n";
        for (const auto& p : props) {
            const PropertyVerdict* lv = lrep.find(p);
            const PropertyVerdict* rv = rrep.find(p);
            if (!lv || !rv || key(*lv) == key(*rv)) continue;
            std::cout << p << ": " << lb.name << " " << key(*lv) << ", " << rb.name << " "
                      << key(*rv) << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic curvature calculator for chart metrics"};
    app.require_subcommand(1);

    SelectorOptions sel;
    std::string tensor, format = "text", properties = "all", identity;
    std::string cmp_left, cmp_right;

    auto add_selector = [&](CLI::App* cmd) {
        cmd->add_option("--metric", sel.metric, "builtin metric name (prm, gprm, gppw, ppw)");
        cmd->add_option("--metric-file", sel.metric_file, "path to a metric document");
        cmd->add_option("--set", sel.sets, "constant substitution k=v")->take_all();
        cmd->add_option("--bind", sel.binds, "function binding f=expr")->take_all();
        cmd->add_option("--format", format, "text|machine")
            ->check(CLI::IsMember({"text", "machine"}));
    };

    CLI::App* c_comp = app.add_subcommand("components", "print nonzero tensor components");
    add_selector(c_comp);
    c_comp->add_option("--tensor", tensor, "tensor name")->required();

    CLI::App* c_cls = app.add_subcommand("classify", "run the structure classifier");
    add_selector(c_cls);
    c_cls->add_option("--properties", properties, "comma-separated property list or 'all'");

    CLI::App* c_chk = app.add_subcommand("check", "check a curvature identity");
    add_selector(c_chk);
    c_chk->add_option("identity", identity, "identity such as \"P.P + 1/3*Q(S,P) == 0\"")
        ->required();

    CLI::App* c_cmp = app.add_subcommand("compare", "compare two metrics");
    c_cmp->add_option("left", cmp_left, "metric name or document path")->required();
    c_cmp->add_option("right", cmp_right, "metric name or document path")->required();
    c_cmp->add_option("--format", format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_comp->parsed()) return run_components(sel, tensor, format);
        if (c_cls->parsed()) return run_classify(sel, properties, format);
        if (c_chk->parsed()) return run_check(sel, identity, format);
        if (c_cmp->parsed()) {
            auto to_sel = [](const std::string& s) {
                SelectorOptions o;
                if (s.find('/') != std::string::npos || s.find(".metric") != std::string::npos)
                    o.metric_file = s;
                else
                    o.metric = s;
                return o;
            };
            return run_compare(to_sel(cmp_left), to_sel(cmp_right), format);
        }
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UndeclaredSymbol& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
