#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "famheight/exactalg/bigrat.hpp"

namespace famheight {

namespace detail {

// Arithmetic modulo a word-size prime, used only for fast coprimality screens.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline std::uint64_t reduce_mod(const BigInt& z, std::uint64_t p) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

// Degree of gcd(a, b) over F_p; inputs are low-to-high coefficient vectors, trimmed.
inline int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a <- a mod b
        const std::uint64_t inv = invmod(b.back(), p);
        while (a.size() >= b.size()) {
            const std::uint64_t q = mulmod(a.back(), inv, p);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                const std::uint64_t s = mulmod(q, b[i], p);
                a[shift + i] = (a[shift + i] + p - s) % p;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

/// Dense univariate polynomial over Q in the family parameter t.
/// Coefficients are stored low-to-high with no trailing zeros.
class QtPoly {
public:
    QtPoly() = default;
    QtPoly(const BigRat& c) {  // NOLINT: constants embed implicitly
        if (c != 0) c_.push_back(c);
    }
    QtPoly(const BigInt& c) : QtPoly(BigRat(c)) {}  // NOLINT
    QtPoly(long c) : QtPoly(BigRat(c)) {}            // NOLINT
    explicit QtPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QtPoly t() { return monomial(BigRat(1), 1); }
    static QtPoly monomial(const BigRat& c, std::size_t k) {
        if (c == 0) return {};
        std::vector<BigRat> v(k + 1);
        v[k] = c;
        return QtPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<BigRat>& coeffs() const { return c_; }
    BigRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigRat(0); }
    const BigRat& lead() const { return c_.back(); }

    BigRat operator()(const BigRat& tau) const {
        BigRat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * tau + *it;
        return acc;
    }

    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const BigRat& q) { return is_integer(q); });
    }

    QtPoly operator-() const {
        QtPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    QtPoly& operator+=(const QtPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    QtPoly& operator-=(const QtPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    QtPoly& operator*=(const QtPoly& o) { return *this = *this * o; }

    friend QtPoly operator+(QtPoly a, const QtPoly& b) { return a += b; }
    friend QtPoly operator-(QtPoly a, const QtPoly& b) { return a -= b; }

    friend QtPoly operator*(const QtPoly& a, const QtPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_integral() && b.is_integral()) return mul_integral(a, b);
        std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return QtPoly(std::move(r));
    }

    friend QtPoly operator*(const BigRat& s, const QtPoly& a) {
        if (s == 0) return {};
        QtPoly r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    friend bool operator==(const QtPoly& a, const QtPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division over Q; b must be nonzero.
    friend std::pair<QtPoly, QtPoly> divmod(const QtPoly& a, const QtPoly& b) {
        if (b.is_zero()) throw ComputationError("division by zero polynomial");
        if (a.degree() < b.degree()) return {QtPoly{}, a};
        std::vector<BigRat> rem = a.c_;
        std::vector<BigRat> quo(a.c_.size() - b.c_.size() + 1);
        const BigRat inv = 1 / b.lead();
        for (std::size_t k = quo.size(); k-- > 0;) {
            const BigRat q = rem[k + b.c_.size() - 1] * inv;
            quo[k] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {QtPoly(std::move(quo)), QtPoly(std::move(rem))};
    }

    /// Quotient of an exact division; throws when b does not divide a.
    friend QtPoly exact_div(const QtPoly& a, const QtPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw ComputationError("inexact polynomial division in Q[t]");
        return q;
    }

    /// Rational content: positive c with a/c having coprime integer coefficients.
    BigRat content() const {
        BigInt g = 0, l = 1;
        for (const auto& q : c_) {
            if (q == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
        if (g == 0) return 0;
        return make_rat(g, l);
    }

    /// Integer-coefficient primitive part with positive leading coefficient.
    QtPoly primitive_part() const {
        if (is_zero()) return {};
        BigRat c = content();
        if (lead() < 0) c = -c;
        return (1 / c) * *this;
    }

    QtPoly monic() const {
        if (is_zero()) return {};
        return (1 / lead()) * *this;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const BigRat& c = c_[k];
            if (c == 0) continue;
            const bool neg = c < 0;
            const BigRat mag = neg ? BigRat(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            const bool unit = mag == 1;
            if (k == 0) {
                out += famheight::to_string(mag);
            } else {
                if (!unit) out += famheight::to_string(mag) + "*";
                out += "t";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    std::vector<BigRat> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static QtPoly mul_integral(const QtPoly& a, const QtPoly& b) {
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            mpz_srcptr ai = a.c_[i].get_num_mpz_t();
            if (mpz_sgn(ai) == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                mpz_addmul(r[i + j].get_mpz_t(), ai, b.c_[j].get_num_mpz_t());
        }
        std::vector<BigRat> out(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) out[i] = BigRat(r[i]);
        return QtPoly(std::move(out));
    }
};

inline QtPoly pow(const QtPoly& base, unsigned e) {
    QtPoly r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

namespace detail {

// Primes below 2^62 used for modular screens.
inline constexpr std::uint64_t kScreenPrimes[] = {4611686018427387847ULL, 4611686018427387817ULL,
                                                  4611686018427387787ULL};

inline std::vector<std::uint64_t> reduce_poly_mod(const QtPoly& a, std::uint64_t p) {
    // a must be integral
    std::vector<std::uint64_t> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce_mod(BigInt(a.coeffs()[i].get_num()), p);
    return v;
}

// Integer primitive remainder sequence gcd; inputs nonzero, integral.
inline QtPoly primitive_prs_gcd(QtPoly a, QtPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo-remainder of a by b, then primitive part
        std::vector<BigInt> r(a.coeffs().size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeffs()[i].get_num();
        const std::size_t nb = b.coeffs().size();
        std::vector<BigInt> bv(nb);
        for (std::size_t i = 0; i < nb; ++i) bv[i] = b.coeffs()[i].get_num();
        const BigInt& lb = bv.back();
        while (r.size() >= nb) {
            const BigInt lr = r.back();
            const std::size_t shift = r.size() - nb;
            for (auto& c : r) c *= lb;
            for (std::size_t j = 0; j < nb; ++j) r[shift + j] -= lr * bv[j];
            while (!r.empty() && r.back() == 0) r.pop_back();
            // strip integer content to keep sizes in check
            BigInt g = 0;
            for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g > 1)
                for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
        std::vector<BigRat> rq(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) rq[i] = BigRat(r[i]);
        a = std::move(b);
        b = QtPoly(std::move(rq)).primitive_part();
    }
    return a;
}

}  // namespace detail

/// Monic gcd over Q[t]; gcd(0, 0) = 0.
inline QtPoly gcd(const QtPoly& a, const QtPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return QtPoly(1);
    const QtPoly pa = a.primitive_part(), pb = b.primitive_part();
    // A prime not dividing either leading coefficient can only overestimate the gcd degree.
    for (std::uint64_t p : detail::kScreenPrimes) {
        if (detail::reduce_mod(BigInt(pa.lead().get_num()), p) == 0 ||
            detail::reduce_mod(BigInt(pb.lead().get_num()), p) == 0)
            continue;
        if (detail::gcd_degree_mod(detail::reduce_poly_mod(pa, p), detail::reduce_poly_mod(pb, p), p) == 0)
            return QtPoly(1);
        break;
    }
    return detail::primitive_prs_gcd(pa, pb).monic();
}

}  // namespace famheight
