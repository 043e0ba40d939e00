#pragma once

#include <span>
#include <utility>
#include <vector>

#include "famheight/exactalg/multipoly.hpp"

namespace famheight {

/// Integer (or Z[t]) form with trivial content whose leading graded-lex coefficient is positive.
/// Only normalize_primitive and normalize_joint produce these.
template <class C>
struct PrimitiveForm {
    MultiPoly<C> form;
    unsigned degree = 0;

    friend bool operator==(const PrimitiveForm& a, const PrimitiveForm& b) { return a.form == b.form; }
};

namespace detail {

// Positive rational c such that every coefficient divided by c is an integer and
// the integers are jointly coprime.
inline void accumulate_content(BigInt& g, BigInt& l, const BigRat& q) {
    if (q == 0) return;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
}

inline BigRat joint_content(std::span<const QPoly> ps) {
    BigInt g = 0, l = 1;
    for (const auto& p : ps)
        for (const auto& [m, c] : p) accumulate_content(g, l, c);
    if (g == 0) throw InputError("zero input");
    return make_rat(g, l);
}

inline QtPoly joint_content(std::span<const QtMultiPoly> ps) {
    QtPoly g;
    for (const auto& p : ps)
        for (const auto& [m, c] : p) {
            g = gcd(g, c);
            if (g.degree() == 0) break;
        }
    if (g.is_zero()) throw InputError("zero input");
    // divide out the t-part first, then the rational content of what remains
    BigInt gi = 0, l = 1;
    for (const auto& p : ps)
        for (const auto& [m, c] : p) {
            const QtPoly q = g.degree() > 0 ? exact_div(c, g) : c;
            for (const auto& k : q.coeffs()) accumulate_content(gi, l, k);
        }
    if (g.degree() <= 0) g = QtPoly(1);
    return make_rat(gi, l) * g;
}

inline int lead_sign(const BigRat& c) { return sgn(c); }
inline int lead_sign(const QtPoly& c) { return sgn(c.lead()); }

template <class C>
const C* first_nonzero_lead(std::span<const MultiPoly<C>> ps) {
    for (const auto& p : ps)
        if (!p.is_zero()) return &p.lead_coeff();
    return nullptr;
}

template <class C>
MultiPoly<C> divide_by(const MultiPoly<C>& p, const C& scale) {
    MultiPoly<C> r(p.nvars());
    for (const auto& [m, c] : p) {
        if constexpr (std::is_same_v<C, BigRat>)
            r.add_term(m, c / scale);
        else
            r.add_term(m, exact_div(c, scale));
    }
    return r;
}

}  // namespace detail

/// Splits p = scale * primitive with primitive having coprime integer coefficients
/// (and, over Q[t], trivial Q[t]-content) and a positive leading coefficient.
template <class C>
std::pair<C, PrimitiveForm<C>> normalize_primitive(const MultiPoly<C>& p) {
    if (p.is_zero()) throw InputError("zero input");
    C scale = detail::joint_content(std::span<const MultiPoly<C>>(&p, 1));
    if (detail::lead_sign(p.lead_coeff()) < 0) scale = -scale;
    PrimitiveForm<C> out{detail::divide_by(p, scale), static_cast<unsigned>(p.total_degree())};
    return {std::move(scale), std::move(out)};
}

/// Divides a list of forms by their joint content, fixing the sign of the first
/// nonzero leading coefficient. Individual forms need not be primitive.
template <class C>
std::pair<C, std::vector<MultiPoly<C>>> normalize_joint(std::span<const MultiPoly<C>> ps) {
    C scale = detail::joint_content(ps);
    const C* lead = detail::first_nonzero_lead(ps);
    if (detail::lead_sign(*lead) < 0) scale = -scale;
    std::vector<MultiPoly<C>> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(detail::divide_by(p, scale));
    return {std::move(scale), std::move(out)};
}

/// max |coefficient| of an integral polynomial.
inline BigInt sup_norm(const QPoly& p) {
    BigInt best = 0;
    for (const auto& [m, c] : p) {
        BigInt a = abs(c.get_num());
        if (a > best) best = a;
    }
    return best;
}

/// Sum of |coefficient| of an integral polynomial.
inline BigInt l1_norm(const QPoly& p) {
    BigInt s = 0;
    for (const auto& [m, c] : p) s += abs(c.get_num());
    return s;
}

/// max over coefficients of deg_t.
inline int t_degree(const QtMultiPoly& p) {
    int d = p.is_zero() ? -1 : 0;
    for (const auto& [m, c] : p) d = std::max(d, c.degree());
    return d;
}

inline bool is_integral(const QPoly& p) {
    for (const auto& [m, c] : p)
        if (!is_integer(c)) return false;
    return true;
}

}  // namespace famheight
