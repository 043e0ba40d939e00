#pragma once

#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "famheight/exactalg/multipoly.hpp"
#include "famheight/exactalg/primitive.hpp"

namespace famheight {

namespace detail {

// Degree of gcd(P|_L, d/ds P|_L) over F_p for a pseudo-random line L through affine space.
// Zero means the restriction is square-free, which rules out P being a proper power.
inline int line_restriction_repeated_degree(const QPoly& p, std::uint64_t prime, std::uint64_t seed) {
    const std::size_t n = p.nvars();
    const int deg = std::max(p.total_degree(), 0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
    // x_i(s) = a_i + b_i s
    std::vector<std::uint64_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = dist(rng);
        b[i] = dist(rng);
    }
    auto mul = [prime](const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
        std::vector<std::uint64_t> r(u.size() + v.size() - 1, 0);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) r[i + j] = (r[i + j] + mulmod(u[i], v[j], prime)) % prime;
        return r;
    };
    std::vector<std::vector<std::vector<std::uint64_t>>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].push_back({1});
        for (int e = 1; e <= std::max(p.degree_in(i), 0); ++e) powers[i].push_back(mul(powers[i].back(), {a[i], b[i]}));
    }
    std::vector<std::uint64_t> acc(deg + 1, 0);
    for (const auto& [m, c] : p) {
        BigInt num = c.get_num();
        std::uint64_t cm = reduce_mod(num, prime);
        if (c.get_den() != 1) cm = mulmod(cm, invmod(reduce_mod(BigInt(c.get_den()), prime), prime), prime);
        std::vector<std::uint64_t> term{cm};
        for (std::size_t i = 0; i < n; ++i)
            if (m[i]) term = mul(term, powers[i][m[i]]);
        for (std::size_t j = 0; j < term.size(); ++j) acc[j] = (acc[j] + term[j]) % prime;
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    if (acc.size() <= 1) return static_cast<int>(acc.size()) - 1;
    std::vector<std::uint64_t> der(acc.size() - 1);
    for (std::size_t j = 1; j < acc.size(); ++j) der[j - 1] = mulmod(acc[j], j % prime, prime);
    return gcd_degree_mod(acc, der, prime);
}

// k-th root of a univariate series with nonzero constant term, truncated at degree `len-1`.
// Uses q' P = (1/k) q P' rewritten as the classical power-of-series recurrence.
inline std::optional<std::vector<BigRat>> series_root(const std::vector<std::pair<std::size_t, BigRat>>& p_sparse,
                                                      unsigned k, std::size_t len) {
    const BigRat& p0 = p_sparse.front().second;
    auto q0 = exact_root(p0, k);
    if (!q0) return std::nullopt;
    std::vector<BigRat> q(len);
    q[0] = *q0;
    const BigRat alpha_plus_one = BigRat(1, k) + 1;
    for (std::size_t j = 1; j < len; ++j) {
        BigRat acc = 0;
        for (std::size_t s = 1; s < p_sparse.size(); ++s) {
            const auto& [i, pi] = p_sparse[s];
            if (i > j) break;
            if (q[j - i] == 0) continue;
            acc += (alpha_plus_one * static_cast<long>(i) - static_cast<long>(j)) * pi * q[j - i];
        }
        q[j] = acc / (BigRat(static_cast<long>(j)) * p0);
    }
    return q;
}

}  // namespace detail

/// Returns Q with Q^k == p exactly, if such Q exists over Q.
inline std::optional<QPoly> exact_root(const QPoly& p, unsigned k) {
    if (k == 0) return std::nullopt;
    if (k == 1 || p.is_zero()) return p;
    const std::size_t n = p.nvars();
    Monomial low(n, ~Exponent{0});
    for (const auto& [m, c] : p)
        for (std::size_t i = 0; i < n; ++i) low[i] = std::min(low[i], m[i]);
    std::vector<std::size_t> radix(n), weight(n);
    std::size_t w = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (low[i] % k != 0) return std::nullopt;
        const unsigned span = static_cast<unsigned>(p.degree_in(i)) - low[i];
        if (span % k != 0) return std::nullopt;
        radix[i] = span / k + 1;
        weight[i] = w;
        w *= radix[i];
    }
    // Kronecker substitution x_i -> z^weight_i is a ring map, injective on the root's support.
    std::map<std::size_t, BigRat> uni;
    for (const auto& [m, c] : p) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) idx += (m[i] - low[i]) * weight[i];
        uni[idx] += c;
    }
    const std::size_t shift = uni.begin()->first;
    const std::size_t top = uni.rbegin()->first;
    if (shift % k != 0 || (top - shift) % k != 0) return std::nullopt;
    std::vector<std::pair<std::size_t, BigRat>> sparse;
    for (const auto& [i, c] : uni)
        if (c != 0) sparse.emplace_back(i - shift, c);
    const std::size_t len = (top - shift) / k + 1;
    auto q = detail::series_root(sparse, k, len);
    if (!q) return std::nullopt;

    QPoly root(n);
    Monomial m(n);
    for (std::size_t j = 0; j < len; ++j) {
        if ((*q)[j] == 0) continue;
        std::size_t idx = j + shift / k;
        for (std::size_t i = n; i-- > 0;) {
            m[i] = static_cast<Exponent>(idx / weight[i]);
            idx %= weight[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] >= radix[i]) return std::nullopt;
            m[i] += low[i] / k;
        }
        root.add_term(m, (*q)[j]);
    }
    if (!(pow(root, k) == p)) {
        const QPoly neg = -root;
        if (k % 2 == 1 && pow(neg, k) == p) return neg;
        return std::nullopt;
    }
    return root;
}

/// Writes a primitive p as root^k with k maximal; k = 1 when p is not a proper power.
inline std::pair<QPoly, unsigned> perfect_power_decompose(const QPoly& p) {
    if (p.total_degree() <= 0) return {p, 1};
    if (detail::line_restriction_repeated_degree(p, detail::kScreenPrimes[0], 0x5eedULL) == 0) return {p, 1};
    unsigned g = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) g = std::gcd(g, static_cast<unsigned>(std::max(p.degree_in(i), 0)));
    for (unsigned k = g; k >= 2; --k) {
        if (g % k != 0) continue;
        if (auto r = exact_root(p, k)) {
            auto [inner, kk] = perfect_power_decompose(*r);
            return {std::move(inner), k * kk};
        }
    }
    return {p, 1};
}

/// Same over Q[t], treating t as an extra variable.
inline std::pair<QtMultiPoly, unsigned> perfect_power_decompose(const QtMultiPoly& p) {
    auto [root, k] = perfect_power_decompose(flatten_t(p));
    return {unflatten_t(root), k};
}

}  // namespace famheight
