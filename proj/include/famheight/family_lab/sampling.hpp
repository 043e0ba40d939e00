#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "famheight/family_lab/config.hpp"
#include "famheight/heights_ff/family.hpp"

namespace famheight {

/// A sampled parameter with the bucket it came from.
struct SampledParameter {
    BigRat tau;
    std::size_t bucket = 0;
};

namespace detail {

inline long naive_height_int(const BigRat& tau) {
    BigInt a = abs(tau.get_num());
    return std::max(a, BigInt(tau.get_den())).get_si();
}

inline bool sample_less(const BigRat& x, const BigRat& y) {
    const long hx = naive_height_int(x), hy = naive_height_int(y);
    if (hx != hy) return hx < hy;
    if (x.get_num() != y.get_num()) return x.get_num() < y.get_num();
    return x.get_den() < y.get_den();
}

// Reduced fractions a/b, b >= 1, with lo < max(|a|, b) <= hi.
inline std::vector<std::pair<long, long>> enumerate_shell(long lo, long hi) {
    std::vector<std::pair<long, long>> out;
    for (long b = 1; b <= hi; ++b)
        for (long a = -hi; a <= hi; ++a) {
            if (std::max(std::labs(a), b) <= lo) continue;
            if (std::gcd(a, b) != 1) continue;
            out.emplace_back(a, b);
        }
    return out;
}

constexpr long kEnumerateLimit = 64;  // shells up to this bound are listed in full

}  // namespace detail

/// Bucket i draws from the shell B_{i-1} < h(tau) <= B_i (B_{-1} = 0), h(a/b) = max(|a|, b).
/// Only parameters certified good by the locus are kept, without repetition. A shell holding at
/// most `count` good parameters is taken whole. Otherwise every bucket reads the same stream of
/// uniform pairs (u, v), scaled to its bound: a = round((2u - 1) B), b = ceil(v B), then reduced.
/// Buckets therefore see nearly the same values of tau up to scale, so differences between bucket
/// statistics reflect the growth of h_S rather than sampling noise.
/// The result is sorted by (h_S, numerator, denominator).
inline std::vector<SampledParameter> sample_parameters(const ExperimentConfig& cfg, const GoodLocus& gl) {
    std::vector<SampledParameter> out;
    if (!cfg.taus.empty()) {
        for (const auto& t : cfg.taus) out.push_back({t, 0});
    } else {
        for (std::size_t k = 0; k < cfg.buckets.size(); ++k) {
            const long lo = k ? cfg.buckets[k - 1] : 0;
            const long hi = cfg.buckets[k];
            std::vector<BigRat> picked;
            if (hi <= detail::kEnumerateLimit) {
                for (const auto& [a, b] : detail::enumerate_shell(lo, hi)) {
                    BigRat t = make_rat(BigInt(a), BigInt(b));
                    if (gl.is_good(t)) picked.push_back(t);
                }
                if (picked.size() > cfg.count) picked.clear();
            }
            if (picked.empty()) {
                std::seed_seq ss{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32)};
                std::mt19937_64 rng(ss);
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                std::set<BigRat> seen;
                const double B = static_cast<double>(hi);
                const std::size_t max_draws = 1000 * static_cast<std::size_t>(cfg.count);
                for (std::size_t draw = 0; draw < max_draws && picked.size() < cfg.count; ++draw) {
                    const double u = unit(rng), v = unit(rng);
                    const long a = std::clamp(std::lround((2 * u - 1) * B), -hi, hi);
                    const long b = std::clamp(static_cast<long>(std::ceil(v * B)), 1L, hi);
                    BigRat t = make_rat(BigInt(a), BigInt(b));
                    const long h = detail::naive_height_int(t);
                    if (h <= lo || h > hi || !gl.is_good(t)) continue;
                    if (!seen.insert(t).second) continue;
                    picked.push_back(t);
                }
            }
            if (picked.empty())
                throw ComputationError("bucket " + std::to_string(hi) + " yields no good parameters");
            for (auto& t : picked) out.push_back({std::move(t), k});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.bucket != y.bucket) return x.bucket < y.bucket;
        return detail::sample_less(x.tau, y.tau);
    });
    return out;
}

}  // namespace famheight
