#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "famheight/errors.hpp"
#include "famheight/exactalg/linalg.hpp"
#include "famheight/exactalg/multipoly.hpp"
#include "famheight/exactalg/primitive.hpp"

namespace famheight {

namespace detail {

template <class C>
unsigned form_degree(const MultiPoly<C>& p, const char* who) {
    if (!p.is_homogeneous()) throw InputError(std::string(who) + ": input is not homogeneous");
    return static_cast<unsigned>(std::max(p.total_degree(), 0));
}

// Coefficients of a binary form of degree deg, x0-descending: entry k belongs to x0^(deg-k) x1^k.
template <class C>
std::vector<C> binary_coeffs(const MultiPoly<C>& g, unsigned deg) {
    std::vector<C> out(deg + 1);
    for (const auto& [m, c] : g) out.at(m[1]) = c;
    return out;
}

}  // namespace detail

/// Sylvester matrix of two coefficient lists (highest power first): deg(b) rows of a, then deg(a) rows of b.
template <class C>
Matrix<C> sylvester_matrix(const std::vector<C>& a, const std::vector<C>& b) {
    const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
    Matrix<C> s(size, size);
    const C zero = a.front() - a.front();
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) s(i, j) = zero;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = a[k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = b[k];
    return s;
}

/// Resultant of two binary forms g(x0,x1), h(x0,x1), normalized so Res(x0^m, x1^n) = 1.
template <class C>
C sylvester_resultant(const MultiPoly<C>& g, const MultiPoly<C>& h) {
    if (g.nvars() != 2 || h.nvars() != 2) throw InputError("sylvester_resultant: binary forms expected");
    if (g.is_zero() || h.is_zero()) return C(0L);
    const unsigned m = detail::form_degree(g, "sylvester_resultant");
    const unsigned n = detail::form_degree(h, "sylvester_resultant");
    if (m + n == 0) return C(1L);
    auto s = sylvester_matrix(detail::binary_coeffs(g, m), detail::binary_coeffs(h, n));
    if constexpr (std::is_same_v<C, BigRat>)
        return det(s);
    else
        return det_bareiss_generic(std::move(s));
}

namespace detail {

// Index data of the classical Macaulay matrix for forms of the given degrees.
struct MacaulayLayout {
    std::vector<unsigned> degrees;
    unsigned D = 0;
    std::vector<Monomial> monomials;          // all monomials of degree D
    std::map<Monomial, std::size_t> column;   // monomial -> index
    std::vector<std::size_t> row_form;        // smallest i with x_i^{d_i} | x^alpha
    std::vector<std::size_t> extraneous;      // indices of non-reduced monomials
    std::size_t b_bound = 0;                  // degree bound of Res(F + eps x^d) in eps
};

inline void all_monomials(std::size_t n, unsigned deg, std::vector<Monomial>& out) {
    Monomial m(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            m[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, deg);
}

inline std::shared_ptr<const MacaulayLayout> macaulay_layout(const std::vector<unsigned>& degrees) {
    static std::mutex mu;
    static std::map<std::vector<unsigned>, std::shared_ptr<const MacaulayLayout>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(degrees); it != cache.end()) return it->second;
    }
    auto lay = std::make_shared<MacaulayLayout>();
    lay->degrees = degrees;
    const std::size_t n = degrees.size();
    lay->D = 1;
    for (unsigned d : degrees) lay->D += d - 1;
    all_monomials(n, lay->D, lay->monomials);
    for (std::size_t k = 0; k < lay->monomials.size(); ++k) {
        const Monomial& a = lay->monomials[k];
        lay->column[a] = k;
        std::size_t first = n, count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] >= degrees[i]) {
                if (first == n) first = i;
                ++count;
            }
        lay->row_form.push_back(first);
        if (count > 1) lay->extraneous.push_back(k);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t prod = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) prod *= degrees[j];
        lay->b_bound += prod;
    }
    std::lock_guard lock(mu);
    return cache.emplace(degrees, std::move(lay)).first->second;
}

inline Matrix<BigRat> macaulay_matrix(const MacaulayLayout& lay, std::span<const QPoly> forms) {
    const std::size_t size = lay.monomials.size();
    Matrix<BigRat> mat(size, size);
    Monomial shift;
    for (std::size_t r = 0; r < size; ++r) {
        const std::size_t i = lay.row_form[r];
        shift = lay.monomials[r];
        shift[i] -= lay.degrees[i];
        for (const auto& [m, c] : forms[i]) {
            Monomial col = shift;
            for (std::size_t v = 0; v < col.size(); ++v) col[v] += m[v];
            mat(r, lay.column.at(col)) = c;
        }
    }
    return mat;
}

inline Matrix<BigRat> principal_submatrix(const Matrix<BigRat>& mat, const std::vector<std::size_t>& idx) {
    Matrix<BigRat> sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = mat(idx[a], idx[b]);
    return sub;
}

inline Matrix<BigRat> shifted(Matrix<BigRat> m, const BigRat& eps) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += eps;
    return m;
}

}  // namespace detail

/// Classical Macaulay resultant of n homogeneous forms in n variables over Q,
/// normalized so Res(x0^d0, ..., x_{n-1}^d_{n-1}) = 1. Two forms reduce to the Sylvester resultant.
inline BigRat macaulay_resultant(std::span<const QPoly> forms) {
    const std::size_t n = forms.size();
    if (n < 2) throw InputError("macaulay_resultant: need at least two forms");
    for (const auto& f : forms)
        if (f.nvars() != n) throw InputError("macaulay_resultant: need as many forms as variables");
    for (const auto& f : forms)
        if (f.is_zero()) return 0;
    if (n == 2) return sylvester_resultant(forms[0], forms[1]);
    std::vector<unsigned> degrees;
    for (const auto& f : forms) degrees.push_back(detail::form_degree(f, "macaulay_resultant"));
    for (std::size_t i = 0; i < n; ++i)
        if (degrees[i] == 0) {
            // a nonzero constant among the forms: Res = c^(product of the other degrees)
            unsigned long e = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) e *= degrees[j];
            return pow(forms[i].lead_coeff(), e);
        }
    const auto lay = detail::macaulay_layout(degrees);
    const Matrix<BigRat> mat = detail::macaulay_matrix(*lay, forms);
    const Matrix<BigRat> sub = detail::principal_submatrix(mat, lay->extraneous);
    const BigRat den = det(sub);
    if (den != 0) return det(mat) / den;

    // Singular minor: Res(F_i + eps x_i^{d_i}) has matrices M + eps I and M' + eps I,
    // is a polynomial of degree <= b_bound in eps, and equals Res(F) at eps = 0.
    std::vector<BigInt> nodes;
    std::vector<BigRat> values;
    for (long eps = 1; nodes.size() < lay->b_bound + 1; ++eps) {
        const BigRat e(eps);
        const BigRat d_sub = det(detail::shifted(sub, e));
        if (d_sub == 0) continue;
        nodes.emplace_back(eps);
        values.push_back(det(detail::shifted(mat, e)) / d_sub);
    }
    return newton_interpolate(nodes, values).front();
}

/// Macaulay resultant over Q[t], recovered by interpolation in t.
inline QtPoly macaulay_resultant(std::span<const QtMultiPoly> forms) {
    const std::size_t n = forms.size();
    if (n < 2) throw InputError("macaulay_resultant: need at least two forms");
    std::vector<unsigned> degrees;
    for (const auto& f : forms) {
        if (f.nvars() != n) throw InputError("macaulay_resultant: need as many forms as variables");
        degrees.push_back(detail::form_degree(f, "macaulay_resultant"));
    }
    unsigned bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        unsigned prod = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) prod *= degrees[j];
        bound += prod * static_cast<unsigned>(std::max(t_degree(forms[i]), 0));
    }
    const auto nodes = centered_nodes(bound + 1);
    std::vector<BigRat> values;
    std::vector<QPoly> fiber(n);
    for (const auto& tau : nodes) {
        for (std::size_t i = 0; i < n; ++i) fiber[i] = substitute_t(forms[i], BigRat(tau));
        values.push_back(macaulay_resultant(std::span<const QPoly>(fiber)));
    }
    std::vector<BigRat> c = newton_interpolate(nodes, values);
    QtPoly out;
    for (std::size_t k = 0; k < c.size(); ++k) out += QtPoly::monomial(c[k], k);
    return out;
}

inline BigRat macaulay_resultant(const std::vector<QPoly>& forms) {
    return macaulay_resultant(std::span<const QPoly>(forms));
}
inline QtPoly macaulay_resultant(const std::vector<QtMultiPoly>& forms) {
    return macaulay_resultant(std::span<const QtMultiPoly>(forms));
}

}  // namespace famheight
