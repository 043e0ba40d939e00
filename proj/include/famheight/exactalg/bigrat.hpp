#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "famheight/errors.hpp"

namespace famheight {

using BigInt = mpz_class;
/// Always canonical: gcd(|num|, den) = 1, den >= 1.
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InputError("zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

/// Natural log of |z|, accurate to double precision for arbitrarily large z.
inline double log_abs(const BigInt& z) {
    if (z == 0) throw ComputationError("log of zero");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

inline std::size_t bit_size(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

/// Exact k-th root of an integer, if one exists (negative values only for odd k).
inline std::optional<BigInt> exact_root(const BigInt& a, unsigned k) {
    if (k == 0) return std::nullopt;
    if (k == 1) return a;
    if (a < 0 && k % 2 == 0) return std::nullopt;
    BigInt r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) == 0) return std::nullopt;
    return r;
}

inline std::optional<BigRat> exact_root(const BigRat& a, unsigned k) {
    auto n = exact_root(BigInt(a.get_num()), k);
    if (!n) return std::nullopt;
    auto d = exact_root(BigInt(a.get_den()), k);
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const BigRat& q) { return q.get_str(); }

inline BigRat parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(s));
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw InputError("not a rational number: '" + s + "'");
    }
}

inline BigRat pow(const BigRat& base, unsigned long e) {
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    BigRat r(n, d);
    return r;  // already canonical: powers of coprime integers stay coprime
}

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

struct BigIntHash {
    std::size_t operator()(const BigInt& z) const noexcept {
        const mpz_srcptr p = z.get_mpz_t();
        std::size_t h = static_cast<std::size_t>(p->_mp_size);
        const int n = std::abs(p->_mp_size);
        for (int i = 0; i < n; ++i)
            h ^= std::hash<mp_limb_t>{}(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace famheight
