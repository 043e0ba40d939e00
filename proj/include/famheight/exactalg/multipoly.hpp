#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "famheight/exactalg/bigrat.hpp"
#include "famheight/exactalg/qtpoly.hpp"

namespace famheight {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

inline unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0U); }

/// Graded-lexicographic order, largest first: higher total degree wins, ties broken
/// lexicographically with x0 most significant.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

inline bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool is_zero(const BigRat& c) { return c == 0; }
inline bool is_zero(const QtPoly& c) { return c.is_zero(); }

/// Sparse multivariate polynomial with coefficients in C (BigRat for Q, QtPoly for Q[t]).
/// Terms iterate in graded-lex order, leading term first; zero coefficients are never stored.
template <class C>
class MultiPoly {
public:
    using Coeff = C;
    using Terms = std::map<Monomial, C, GrlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const C& c) {
        MultiPoly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t i) {
        Monomial m(nvars, 0);
        m.at(i) = 1;
        return monomial(nvars, std::move(m), C(1));
    }
    static MultiPoly monomial(std::size_t nvars, Monomial m, const C& c) {
        MultiPoly p(nvars);
        p.add_term(std::move(m), c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    const Monomial& lead_monomial() const { return terms_.begin()->first; }
    const C& lead_coeff() const { return terms_.begin()->second; }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C() : it->second;
    }

    void add_term(Monomial m, const C& c) {
        if (m.size() != nvars_) throw InputError("monomial arity mismatch");
        if (famheight::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (famheight::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// -1 for the zero polynomial.
    int total_degree() const {
        return terms_.empty() ? -1 : static_cast<int>(famheight::total_degree(terms_.begin()->first));
    }
    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const unsigned d = famheight::total_degree(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return famheight::total_degree(t.first) == d; });
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        Monomial m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator*(const C& s, const MultiPoly& a) {
        MultiPoly r(a.nvars_);
        if (famheight::is_zero(s)) return r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, s * c);
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Coefficient-wise transform into another coefficient ring.
    template <class F>
    auto map_coeffs(F&& fn) const {
        using D = std::decay_t<decltype(fn(std::declval<const C&>()))>;
        MultiPoly<D> r(nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
        return r;
    }

private:
    std::size_t nvars_ = 0;
    Terms terms_;

    void check_arity(const MultiPoly& o) const {
        if (o.nvars_ != nvars_) throw InputError("polynomial arity mismatch");
    }
};

template <class C>
bool is_zero(const MultiPoly<C>& p) {
    return p.is_zero();
}

using QPoly = MultiPoly<BigRat>;
using QtMultiPoly = MultiPoly<QtPoly>;

template <class C>
MultiPoly<C> pow(const MultiPoly<C>& base, unsigned e) {
    MultiPoly<C> r = MultiPoly<C>::constant(base.nvars(), C(1)), b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

/// Exact evaluation at coordinates of type V (V must be constructible from C).
template <class C, class V>
V evaluate(const MultiPoly<C>& p, std::span<const V> coords) {
    if (coords.size() != p.nvars()) throw InputError("evaluation arity mismatch");
    std::vector<std::vector<V>> powers(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const int deg = std::max(p.degree_in(i), 0);
        powers[i].reserve(deg + 1);
        powers[i].push_back(V(1));
        for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * coords[i]);
    }
    V acc{};
    for (const auto& [m, c] : p) {
        V term = V(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) term = term * powers[i][m[i]];
        acc = acc + term;
    }
    return acc;
}

template <class C, class V>
std::vector<V> evaluate_forms(std::span<const MultiPoly<C>> forms, std::span<const V> coords) {
    std::vector<V> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(evaluate(f, coords));
    return out;
}

/// Substitutes G_j for the j-th variable of every F_i. All G_j share one arity.
template <class C>
std::vector<MultiPoly<C>> compose_forms(std::span<const MultiPoly<C>> outer, std::span<const MultiPoly<C>> inner) {
    if (inner.empty()) throw InputError("compose_forms: empty inner map");
    const std::size_t k = inner.front().nvars();
    for (const auto& g : inner)
        if (g.nvars() != k || !g.is_homogeneous()) throw InputError("compose_forms: inner forms must be homogeneous of one arity");
    for (const auto& f : outer)
        if (f.nvars() != inner.size() || !f.is_homogeneous())
            throw InputError("compose_forms: arity mismatch between outer forms and inner map");

    std::vector<std::vector<MultiPoly<C>>> powers(inner.size());
    std::vector<MultiPoly<C>> out;
    for (const auto& f : outer) {
        MultiPoly<C> acc(k);
        for (const auto& [m, c] : f) {
            MultiPoly<C> term = MultiPoly<C>::constant(k, c);
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (!m[j]) continue;
                auto& pw = powers[j];
                if (pw.empty()) pw.push_back(MultiPoly<C>::constant(k, C(1)));
                while (pw.size() <= m[j]) pw.push_back(pw.back() * inner[j]);
                term *= pw[m[j]];
            }
            acc += term;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

inline QPoly substitute_t(const QtMultiPoly& p, const BigRat& tau) {
    return p.map_coeffs([&](const QtPoly& c) { return c(tau); });
}

inline QtMultiPoly lift_to_qt(const QPoly& p) {
    return p.map_coeffs([](const BigRat& c) { return QtPoly(c); });
}

/// Q[t][x0..xn-1] -> Q[x0..xn-1, t] with t as the last variable.
inline QPoly flatten_t(const QtMultiPoly& p) {
    QPoly r(p.nvars() + 1);
    for (const auto& [m, c] : p) {
        Monomial mm = m;
        mm.push_back(0);
        for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
            if (c.coeffs()[k] == 0) continue;
            mm.back() = static_cast<Exponent>(k);
            r.add_term(mm, c.coeffs()[k]);
        }
    }
    return r;
}

inline QtMultiPoly unflatten_t(const QPoly& p) {
    if (p.nvars() == 0) throw InputError("unflatten_t: no variables");
    QtMultiPoly r(p.nvars() - 1);
    for (const auto& [m, c] : p) {
        Monomial mm(m.begin(), m.end() - 1);
        r.add_term(std::move(mm), QtPoly::monomial(c, m.back()));
    }
    return r;
}

/// Multivariate division by a single divisor in graded-lex order over Q.
/// Returns (quotient, remainder); the remainder is zero iff the divisor divides p.
inline std::pair<QPoly, QPoly> divmod(const QPoly& p, const QPoly& divisor) {
    if (divisor.is_zero()) throw ComputationError("division by zero polynomial");
    if (p.nvars() != divisor.nvars()) throw InputError("polynomial arity mismatch");
    const std::size_t n = p.nvars();
    QPoly quo(n), rem(n), work = p;
    const Monomial& lm = divisor.lead_monomial();
    const BigRat inv = 1 / divisor.lead_coeff();
    Monomial shift(n);
    while (!work.is_zero()) {
        const Monomial m = work.lead_monomial();
        const BigRat c = work.lead_coeff();
        if (divides(lm, m)) {
            for (std::size_t i = 0; i < n; ++i) shift[i] = m[i] - lm[i];
            const BigRat q = c * inv;
            quo.add_term(shift, q);
            work -= QPoly::monomial(n, shift, q) * divisor;
        } else {
            rem.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return {std::move(quo), std::move(rem)};
}

}  // namespace famheight
