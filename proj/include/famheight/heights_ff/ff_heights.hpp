#pragma once

#include <vector>

#include "famheight/elimination/pushforward.hpp"
#include "famheight/heights_ff/family.hpp"
#include "famheight/heights_nf/height_value.hpp"
#include "famheight/heights_nf/hypersurface.hpp"

namespace famheight {

/// Height over Q(t): max_i deg_t of the normalized coordinates.
inline BigRat ff_height_point(const FFPoint& p) {
    int best = 0;
    for (const auto& c : p.coords()) best = std::max(best, c.degree());
    return BigRat(best);
}

struct FFHeightOptions {
    unsigned n_max = 10;
    double tol = 1e-9;
    int max_degree = 1 << 13;  // coordinate degree guard
    ElimBudget budget{};
};

namespace detail {

// Shared stopping logic for exact rational sequences a_0, a_1, ...
// Returns true once the sequence is settled: two consecutive zero increments (rigorous, exact)
// or a heuristic tail within tol.
inline bool ff_settled(const std::vector<BigRat>& a, double d, double tol, HeightValue& out) {
    const std::size_t n = a.size();
    out.value = a.back().get_d();
    if (n >= 3 && a[n - 1] == a[n - 2] && a[n - 2] == a[n - 3]) {
        out.radius = 0;
        out.mode = HeightMode::rigorous;
        out.exact = a.back();
        out.converged = true;
        return true;
    }
    auto hr = tail_radius(out.sequence, d);
    out.mode = HeightMode::heuristic;
    out.radius = hr ? *hr + rounding_radius(out.value) : std::numeric_limits<double>::infinity();
    out.converged = hr && out.radius <= tol;
    return out.converged;
}

inline void ff_preperiodic(HeightValue& out) {
    out.value = 0;
    out.radius = 0;
    out.exact = BigRat(0);
    out.mode = HeightMode::rigorous;
    out.converged = true;
}

}  // namespace detail

/// Generic-fiber canonical height lim d^-n deg_t f^n(P), by exact iteration over Z[t].
/// The degree guard stops early with converged = false and the best available radius.
inline HeightValue ff_canonical_height_point(const FamilyMorphism& f, const FFPoint& P, const FFHeightOptions& opt = {}) {
    if (opt.n_max < 3) throw InputError("n_max must be at least 3");
    if (P.coords().size() != f.N() + 1) throw InputError("point and morphism dimensions differ");
    const unsigned d = f.degree();
    HeightValue out;
    std::vector<BigRat> a{ff_height_point(P)};
    std::vector<FFPoint> seen{P};
    out.sequence.push_back(a.back().get_d());
    FFPoint cur = P;
    BigInt scale = 1;
    for (unsigned n = 0;; ++n) {
        out.iterations = n;
        if (detail::ff_settled(a, d, opt.tol, out)) return out;
        if (n >= opt.n_max) return out;
        if (ff_height_point(cur) * d > opt.max_degree) return out;
        cur = apply(f.base(), cur);
        scale *= d;
        a.push_back(ff_height_point(cur) / scale);
        out.sequence.push_back(a.back().get_d());
        for (const auto& s : seen)
            if (s == cur) {
                detail::ff_preperiodic(out);
                out.iterations = n + 1;
                return out;
            }
        seen.push_back(cur);
    }
}

inline HeightValue ff_canonical_height_point(const FamilyMorphism& f, const FFPoint& P, unsigned n_max) {
    FFHeightOptions opt;
    opt.n_max = n_max;
    return ff_canonical_height_point(f, P, opt);
}

namespace detail {

// sum_c mult_c deg_t(G_c) / ((q+1) m), with q+1 = N for hypersurfaces of P^N.
inline BigRat ff_cycle_degree_height(const QtCycle& Y) {
    BigInt acc = 0;
    for (const auto& c : Y.components()) acc += BigInt(c.multiplicity) * t_degree(c.form.form);
    return make_rat(acc, BigInt(Y.N()) * Y.degree());
}

}  // namespace detail

/// Generic-fiber canonical height of a hypersurface cycle from the t-degrees of its pushforwards.
inline HeightValue ff_canonical_height_hypersurface(const FamilyMorphism& f, const QtCycle& Y,
                                                    const FFHeightOptions& opt = {}) {
    if (opt.n_max < 1) throw InputError("n_max must be positive");
    if (f.N() != Y.N()) throw InputError("cycle and morphism ambient dimensions differ");
    const unsigned d = f.degree();
    HeightValue out;
    std::vector<BigRat> a{detail::ff_cycle_degree_height(Y)};
    out.sequence.push_back(a.back().get_d());
    std::vector<std::set<std::string>> supports{detail::support_key(Y)};
    QtCycle cur = Y;
    BigInt scale = 1;
    for (unsigned n = 0;; ++n) {
        out.iterations = n;
        if (detail::ff_settled(a, d, opt.tol, out) || n >= opt.n_max) return out;
        try {
            cur = pushforward_divisor(f.base(), cur, opt.budget);
        } catch (const BudgetExceeded&) {
            throw BudgetExceeded("function-field hypersurface iteration at step " + std::to_string(n + 1), out.sequence);
        }
        scale *= d;
        a.push_back(detail::ff_cycle_degree_height(cur) / scale);
        out.sequence.push_back(a.back().get_d());
        auto key = detail::support_key(cur);
        for (const auto& s : supports)
            if (s == key) {
                detail::ff_preperiodic(out);
                out.iterations = n + 1;
                return out;
            }
        supports.push_back(std::move(key));
    }
}

inline HeightValue ff_canonical_height_hypersurface(const FamilyMorphism& f, const QtCycle& Y, unsigned n_max) {
    FFHeightOptions opt;
    opt.n_max = n_max;
    opt.tol = 1e-6;
    return ff_canonical_height_hypersurface(f, Y, opt);
}

}  // namespace famheight
