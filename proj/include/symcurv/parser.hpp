#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "symcurv/expression.hpp"
#include "symcurv/printing.hpp"

namespace symcurv {

// Recursive-descent parser for the expression grammar:
//   identifiers [A-Za-z][A-Za-z0-9]*, rational literals 12 and 3/4,
//   + - * / ^ with the usual precedence, parentheses, exp(...),
//   derivatives d(w, x, y) with the subscript alias w_x, w_xy.
class ExprParser {
public:
    ExprParser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    Expr parse_sum() {
        Expr e = parse_product();
        while (true) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                e = e + parse_product();
            } else if (peek('-')) {
                ++pos_;
                e = e - parse_product();
            } else {
                return e;
            }
        }
    }

    Expr parse_product() {
        Expr e = parse_unary();
        while (true) {
            skip_ws();
            if (peek('*')) {
                ++pos_;
                e = e * parse_unary();
            } else if (peek('/')) {
                std::size_t at = pos_++;
                Expr rhs = parse_unary();
                if (rhs.is_zero()) throw SyntaxError("division by zero", at);
                e = e / rhs;
            } else {
                return e;
            }
        }
    }

    Expr parse_unary() {
        skip_ws();
        bool negate = false;
        while (peek('-') || peek('+')) {
            if (peek('-')) negate = !negate;
            ++pos_;
            skip_ws();
        }
        Expr e = parse_power();
        return negate ? -e : e;
    }

    Expr parse_power() {
        skip_ws();
        std::size_t base_at = pos_;
        Expr base = parse_primary();
        skip_ws();
        if (!peek('^')) return base;
        ++pos_;
        Exp e = parse_rational_exponent();
        if (e.denominator() == 1) return base.pow(e.numerator());
        // fractional powers: only a bare positive coordinate qualifies
        std::optional<AtomId> coord = bare_positive_coordinate(base);
        if (!coord)
            throw SyntaxError("rational powers are only admitted on positive coordinates", base_at);
        return Expr::atom(*base.context(), *coord, e);
    }

    std::optional<AtomId> bare_positive_coordinate(const Expr& e) const {
        if (!e.den().is_rational() || e.num().terms.size() != 1) return std::nullopt;
        const Term& t = e.num().terms[0];
        if (t.coeff != 1 || t.mono.exp_arg || t.mono.factors.size() != 1) return std::nullopt;
        const Factor& f = t.mono.factors[0];
        if (f.exp != Exp(1)) return std::nullopt;
        const AtomInfo& a = ctx_.info(f.atom);
        if (a.kind != AtomKind::Coordinate || !a.positive) return std::nullopt;
        return f.atom;
    }

    Exp parse_rational_exponent() {
        skip_ws();
        bool parens = peek('(');
        if (parens) {
            ++pos_;
            skip_ws();
        }
        bool neg = false;
        while (peek('-') || peek('+')) {
            if (peek('-')) neg = !neg;
            ++pos_;
            skip_ws();
        }
        long long num = parse_integer();
        long long den = 1;
        if (parens) {
            // a fraction bar binds into the exponent only inside parentheses:
            // r^2/x^2 is (r^2)/(x^2) while x^(2/3) is a rational power
            skip_ws();
            if (peek('/')) {
                ++pos_;
                skip_ws();
                den = parse_integer();
                if (den == 0) throw SyntaxError("zero denominator in exponent", pos_);
            }
            skip_ws();
            expect(')');
        }
        return Exp(neg ? -num : num, den);
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = parse_integer();
            return Expr::rational(ctx_, Coeff(v));
        }
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_identifier() {
        std::size_t start = pos_;
        std::string name = lex_name();
        if (name == "exp") {
            skip_ws();
            expect('(');
            Expr arg = parse_sum();
            skip_ws();
            expect(')');
            if (!(arg.den().terms.size() == 1 && arg.den().terms[0].coeff == 1 &&
                  arg.den().terms[0].mono.is_unit()))
                throw SyntaxError("exp argument must be a polynomial in the coordinates", start);
            try {
                return Expr::exp_of(ctx_, arg.num()); // poly_exp validates the shape
            } catch (const EngineError& err) {
                throw SyntaxError(err.what(), start);
            }
        }
        if (name == "d") {
            skip_ws();
            expect('(');
            std::size_t fn_at = pos_;
            skip_ws();
            std::string fn = lex_name();
            AtomId base = resolve(fn, fn_at);
            if (ctx_.info(base).kind != AtomKind::Function)
                throw SyntaxError("d(...) expects a declared function", fn_at);
            std::vector<int> multi;
            while (true) {
                skip_ws();
                if (peek(')')) {
                    ++pos_;
                    break;
                }
                expect(',');
                skip_ws();
                std::size_t at = pos_;
                std::string cn = lex_name();
                auto ix = ctx_.coordinate_index(cn);
                if (!ix) throw SyntaxError("'" + cn + "' is not a coordinate", at);
                multi.push_back(*ix);
            }
            if (multi.empty()) throw SyntaxError("d(...) needs at least one coordinate", start);
            return Expr::atom(ctx_, deriv_atom(base, std::move(multi), start));
        }
        // subscript alias w_xy
        if (pos_ < text_.size() && text_[pos_] == '_') {
            AtomId base = resolve(name, start);
            if (ctx_.info(base).kind != AtomKind::Function)
                throw SyntaxError("subscript derivative of a non-function '" + name + "'", start);
            ++pos_;
            std::size_t sub_at = pos_;
            std::string sub;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                sub += text_[pos_++];
            if (sub.empty()) throw SyntaxError("empty derivative subscript", sub_at);
            std::vector<int> multi = split_subscript(sub, sub_at);
            return Expr::atom(ctx_, deriv_atom(base, std::move(multi), start));
        }
        return Expr::atom(ctx_, resolve(name, start));
    }

    AtomId deriv_atom(AtomId base, std::vector<int> multi, std::size_t at) {
        try {
            return ctx_.function_atom(base, std::move(multi));
        } catch (const EngineError& err) {
            throw SyntaxError(err.what(), at);
        }
    }

    // greedy longest-match split of a subscript into coordinate names
    std::vector<int> split_subscript(const std::string& sub, std::size_t at) {
        std::vector<std::string> names;
        for (int i = 1; i <= ctx_.dimension(); ++i)
            names.push_back(ctx_.info(ctx_.coordinate(i)).name);
        std::vector<int> multi;
        std::size_t i = 0;
        while (i < sub.size()) {
            int found = -1;
            std::size_t best = 0;
            for (int k = 0; k < static_cast<int>(names.size()); ++k) {
                const std::string& n = names[static_cast<std::size_t>(k)];
                if (n.size() > best && sub.compare(i, n.size(), n) == 0) {
                    best = n.size();
                    found = k + 1;
                }
            }
            if (found < 0)
                throw SyntaxError("subscript '" + sub + "' does not name coordinates", at);
            multi.push_back(found);
            i += best;
        }
        return multi;
    }

    AtomId resolve(const std::string& name, std::size_t at) {
        auto id = ctx_.find(name);
        if (!id)
            throw UndeclaredSymbol("undeclared identifier '" + name + "' (at offset " +
                                   std::to_string(at) + ")");
        return *id;
    }

    std::string lex_name() {
        std::string s;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
            s += text_[pos_++];
        return s;
    }

    long long parse_integer() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError("expected a number", pos_);
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    void expect(char c) {
        if (!peek(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    const Context& ctx_;
    std::size_t pos_ = 0;
};

inline Expr parse_expression(std::string_view text, const Context& ctx) {
    return ExprParser(text, ctx).parse();
}

} // namespace symcurv
