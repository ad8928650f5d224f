#pragma once

#include <sstream>
#include <string>

#include "symcurv/expression.hpp"

namespace symcurv {

std::string print_poly_sum(const Poly& p);

namespace detail {

inline std::string print_coeff_abs(const Coeff& c) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int n = numerator(c) < 0 ? Int(-numerator(c)) : Int(numerator(c));
    std::ostringstream os;
    if (denominator(c) == 1)
        os << n;
    else
        os << "(" << n << "/" << denominator(c) << ")";
    return os.str();
}

inline std::string atom_display_name(const Context& ctx, AtomId id) {
    const AtomInfo& a = ctx.info(id);
    if (a.kind != AtomKind::Function || a.deriv.empty()) return a.name;
    bool single_letter = true;
    for (int ix : a.deriv)
        if (ctx.info(ctx.coordinate(ix)).name.size() != 1) single_letter = false;
    if (single_letter) {
        std::string s = a.name + "_";
        for (int ix : a.deriv) s += ctx.info(ctx.coordinate(ix)).name;
        return s;
    }
    std::string s = "d(" + a.name;
    for (int ix : a.deriv) s += ", " + ctx.info(ctx.coordinate(ix)).name;
    return s + ")";
}

inline std::string print_exponent(const Exp& e) {
    std::ostringstream os;
    if (e.denominator() == 1)
        os << e.numerator();
    else
        os << "(" << e.numerator() << "/" << e.denominator() << ")";
    return os.str();
}

// |coeff| * factors, "1*" suppressed
inline std::string print_term_abs(const Context& ctx, const Term& t) {
    std::vector<std::string> parts;
    Coeff c = t.coeff < 0 ? Coeff(-t.coeff) : t.coeff;
    if (c != 1 || t.mono.is_unit()) parts.push_back(print_coeff_abs(c));
    for (const Factor& f : t.mono.factors) {
        std::string s = atom_display_name(ctx, f.atom);
        if (f.exp != Exp(1)) s += "^" + print_exponent(f.exp);
        parts.push_back(std::move(s));
    }
    if (t.mono.exp_arg) parts.push_back("exp(" + print_poly_sum(*t.mono.exp_arg) + ")");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

} // namespace detail

// canonical sum form, terms in the canonical monomial order
inline std::string print_poly_sum(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        const Term& t = p.terms[i];
        if (i == 0)
            out += t.coeff < 0 ? "-" : "";
        else
            out += t.coeff < 0 ? " - " : " + ";
        out += detail::print_term_abs(*p.ctx, t);
    }
    return out;
}

// Canonical printed form: a fully parenthesized fraction of integer-coefficient
// sums. Parsing the result reproduces the expression exactly.
inline std::string to_string(const Expr& e) {
    if (!e.valid()) return "<invalid>";
    if (e.is_zero()) return "0";
    using boost::multiprecision::denominator;
    Int scale = 1;
    for (const Term& t : e.num().terms)
        scale = boost::multiprecision::lcm(scale, denominator(t.coeff));
    Poly num = poly_scale(e.num(), Coeff(scale));
    bool den_trivial = e.den().is_rational() && scale == 1;
    if (den_trivial) return print_poly_sum(num);
    Poly den = poly_scale(e.den(), Coeff(scale));
    std::string ns = print_poly_sum(num);
    if (num.terms.size() > 1 || num.terms.front().coeff < 0) ns = "(" + ns + ")";
    return ns + "/(" + print_poly_sum(den) + ")";
}

} // namespace symcurv
