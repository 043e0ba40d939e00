#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "famheight/exactalg/multipoly.hpp"

namespace famheight {

// Text format: sums of terms in x0..xN and t, e.g. "x0^2 + 3*t*x1^2 - 1/2*x0*x1".
// Whitespace is ignored. x, y, z are accepted as aliases of x0, x1, x2.

namespace detail {

inline std::string monomial_text(const Monomial& m, std::size_t t_power) {
    std::string s;
    auto append = [&s](const std::string& v, std::size_t e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += v;
        if (e > 1) s += "^" + std::to_string(e);
    };
    append("t", t_power);
    for (std::size_t i = 0; i < m.size(); ++i) append("x" + std::to_string(i), m[i]);
    return s;
}

inline void append_term(std::string& out, const BigRat& c, const std::string& mono) {
    const bool neg = c < 0;
    const BigRat mag = neg ? BigRat(-c) : c;
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (mono.empty()) {
        out += to_string(mag);
    } else {
        if (mag != 1) out += to_string(mag) + "*";
        out += mono;
    }
}

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t nvars) : nvars_(nvars) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    }

    QtMultiPoly parse() {
        if (s_.empty()) throw InputError("empty polynomial text");
        QtMultiPoly p = expr();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    std::size_t nvars_;

    [[noreturn]] void fail(const std::string& why) const {
        throw InputError("polynomial parse error at offset " + std::to_string(pos_) + " in '" + s_ + "': " + why);
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

    BigInt integer() {
        const std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        if (start == pos_) fail("expected a number");
        return BigInt(s_.substr(start, pos_ - start));
    }

    QtMultiPoly expr() {
        QtMultiPoly acc = term();
        while (pos_ < s_.size()) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    QtMultiPoly term() {
        QtMultiPoly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    QtMultiPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        QtMultiPoly b = base();
        if (eat('^')) {
            const BigInt e = integer();
            if (e > 4096) fail("exponent too large");
            b = pow(b, static_cast<unsigned>(e.get_ui()));
        }
        return b;
    }

    QtMultiPoly base() {
        if (eat('(')) {
            QtMultiPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (peek_digit()) {
            BigInt num = integer();
            BigRat q(num);
            if (eat('/')) {
                BigInt den = integer();
                if (den == 0) fail("zero denominator");
                q = make_rat(num, den);
            }
            return QtMultiPoly::constant(nvars_, QtPoly(q));
        }
        if (eat('t')) return QtMultiPoly::constant(nvars_, QtPoly::t());
        std::size_t var = 0;
        if (eat('x')) {
            if (peek_digit()) {
                const BigInt idx = integer();
                if (idx >= static_cast<long>(nvars_)) fail("variable index out of range");
                var = idx.get_ui();
            } else {
                var = 0;
            }
        } else if (eat('y')) {
            var = 1;
        } else if (eat('z')) {
            var = 2;
        } else {
            fail("unexpected character");
        }
        if (var >= nvars_) fail("variable index out of range");
        return QtMultiPoly::variable(nvars_, var);
    }
};

}  // namespace detail

/// Parses a polynomial over Q[t] in nvars variables.
inline QtMultiPoly parse_qt_poly(std::string_view text, std::size_t nvars) {
    return detail::PolyParser(text, nvars).parse();
}

/// Parses a polynomial over Q; rejects any occurrence of t.
inline QPoly parse_q_poly(std::string_view text, std::size_t nvars) {
    QtMultiPoly p = parse_qt_poly(text, nvars);
    QPoly r(nvars);
    for (const auto& [m, c] : p) {
        if (c.degree() > 0) throw InputError("parameter t not allowed in '" + std::string(text) + "'");
        r.add_term(m, c.coeff(0));
    }
    return r;
}

inline std::string to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p) detail::append_term(out, c, detail::monomial_text(m, 0));
    return out;
}

inline std::string to_string(const QtMultiPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p) {
        const auto& cs = c.coeffs();
        for (std::size_t k = cs.size(); k-- > 0;)
            if (cs[k] != 0) detail::append_term(out, cs[k], detail::monomial_text(m, k));
    }
    return out;
}

}  // namespace famheight
