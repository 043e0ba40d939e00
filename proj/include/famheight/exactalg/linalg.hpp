#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "famheight/exactalg/multipoly.hpp"

namespace famheight {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

inline BigRat exact_div(const BigRat& a, const BigRat& b) { return a / b; }

inline QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ComputationError("inexact multivariate division");
    return q;
}

/// Fraction-free (Bareiss) determinant over Z, done in place on a copy.
inline BigInt det_bareiss(Matrix<BigInt> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw InputError("determinant of a non-square matrix");
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        mpz_srcptr akk = m(k, k).get_mpz_t();
        for (std::size_t i = k + 1; i < n; ++i) {
            mpz_srcptr aik = m(i, k).get_mpz_t();
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_ptr aij = m(i, j).get_mpz_t();
                mpz_mul(aij, aij, akk);
                mpz_submul(aij, aik, m(k, j).get_mpz_t());
                mpz_divexact(aij, aij, prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    BigInt d = m(n - 1, n - 1);
    return sign > 0 ? d : BigInt(-d);
}

/// Bareiss determinant over any integral domain R with exact_div(R, R). Needs n >= 1.
template <class R>
R det_bareiss_generic(Matrix<R> m) {
    const std::size_t n = m.rows();
    if (n != m.cols() || n == 0) throw InputError("determinant needs a non-empty square matrix");
    bool negate = false;
    std::optional<R> prev;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t piv = k + 1;
            while (piv < n && is_zero(m(piv, k))) ++piv;
            if (piv == n) return m(k, k);
            m.swap_rows(k, piv);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                R v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = prev ? exact_div(v, *prev) : std::move(v);
            }
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return negate ? R(-d) : d;
}

/// Rational determinant: scale rows to integers, then Bareiss.
inline BigRat det(const Matrix<BigRat>& a) {
    const std::size_t n = a.rows();
    Matrix<BigInt> m(n, a.cols());
    BigRat scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
        scale *= l;
    }
    return BigRat(det_bareiss(std::move(m))) / scale;
}

/// One solution of A x = b over Q (free variables set to zero), or nullopt if inconsistent.
inline std::optional<std::vector<BigRat>> solve_rational(Matrix<BigRat> a, std::vector<BigRat> b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        std::swap(b[r], b[piv]);
        const BigRat inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const BigRat f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (a(r, j) != 0) a(i, j) -= f * a(r, j);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<BigRat> x(cols);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

/// Coefficients (low to high) of the unique polynomial of degree < nodes.size() through the data.
inline std::vector<BigRat> newton_interpolate(std::span<const BigInt> nodes, std::span<const BigRat> values) {
    const std::size_t n = nodes.size();
    std::vector<BigRat> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / BigRat(nodes[i] - nodes[i - level]);
    // expand the Newton form into the monomial basis
    std::vector<BigRat> coeffs(n);
    for (std::size_t i = n; i-- > 0;) {
        // coeffs <- coeffs * (x - nodes[i]) + dd[i]
        for (std::size_t j = n - 1; j > 0; --j) coeffs[j] = coeffs[j - 1] - BigRat(nodes[i]) * coeffs[j];
        coeffs[0] = -BigRat(nodes[i]) * coeffs[0];
        coeffs[0] += dd[i];
    }
    return coeffs;
}

/// Interpolation nodes 0, 1, -1, 2, -2, ...
inline std::vector<BigInt> centered_nodes(std::size_t count) {
    std::vector<BigInt> nodes;
    nodes.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const long k = static_cast<long>((i + 1) / 2);
        nodes.emplace_back(i % 2 == 1 ? k : -k);
    }
    return nodes;
}

/// Recovers a polynomial in bounds.size() variables with deg_i <= bounds[i] from an exact oracle.
inline QPoly interpolate_dense(std::span<const unsigned> bounds,
                               const std::function<BigRat(std::span<const BigInt>)>& oracle) {
    const std::size_t n = bounds.size();
    std::vector<BigInt> point(n);
    std::function<QPoly(std::size_t)> rec = [&](std::size_t level) -> QPoly {
        if (level == n) return QPoly::constant(n, oracle(point));
        const auto nodes = centered_nodes(bounds[level] + 1);
        std::vector<QPoly> slices;
        slices.reserve(nodes.size());
        for (const auto& a : nodes) {
            point[level] = a;
            slices.push_back(rec(level + 1));
        }
        std::map<Monomial, std::vector<BigRat>, GrlexGreater> by_monomial;
        for (std::size_t j = 0; j < slices.size(); ++j)
            for (const auto& [m, c] : slices[j]) {
                auto& vals = by_monomial[m];
                if (vals.empty()) vals.resize(nodes.size());
                vals[j] = c;
            }
        QPoly out(n);
        for (auto& [m, vals] : by_monomial) {
            const auto coeffs = newton_interpolate(nodes, vals);
            Monomial mm = m;
            for (std::size_t e = 0; e < coeffs.size(); ++e) {
                mm[level] = static_cast<Exponent>(e);
                out.add_term(mm, coeffs[e]);
            }
        }
        return out;
    };
    return rec(0);
}

}  // namespace famheight
