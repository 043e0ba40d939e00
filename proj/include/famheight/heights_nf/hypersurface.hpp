#pragma once

#include <set>
#include <vector>

#include "famheight/elimination/pushforward.hpp"
#include "famheight/heights_nf/height_value.hpp"

namespace famheight {

/// Coefficient proxy for the normalized height of a cycle in P^N (dimension q = N-1):
/// sum_c mult_c log ||G_c||_inf / ((q+1) m).
inline HeightValue hypersurface_height(const QCycle& Y) {
    double acc = 0;
    for (const auto& c : Y.components()) acc += c.multiplicity * log_abs(sup_norm(c.form.form));
    HeightValue h;
    h.value = acc / (static_cast<double>(Y.N()) * Y.degree());
    h.radius = detail::rounding_radius(h.value);
    h.mode = HeightMode::heuristic;
    return h;
}

struct HypersurfaceHeightOptions {
    unsigned n_max = 0;  // 0 selects 16 for N = 1 and 6 for N = 2
    double tol = 1e-4;
    ElimBudget budget{};
};

namespace detail {

template <class C>
std::set<std::string> support_key(const HypersurfaceCycle<C>& Y) {
    std::set<std::string> s;
    for (const auto& c : Y.components()) s.insert(famheight::to_string(c.form.form));
    return s;
}

}  // namespace detail

/// lim d^-n h(f^n_* Y) with the proxy height. A repeated support means every component is
/// preperiodic, so the value is exactly 0. Otherwise the limit is extrapolated (heuristic).
/// Work beyond the elimination budget throws BudgetExceeded with a_0..a_k.
inline HeightValue canonical_height_hypersurface(const QMorphism& f, const QCycle& Y,
                                                 const HypersurfaceHeightOptions& opt = {}) {
    if (f.N() != Y.N()) throw InputError("cycle and morphism ambient dimensions differ");
    const unsigned n_max = opt.n_max ? opt.n_max : (Y.N() == 1 ? 16 : 6);
    const double d = f.degree();
    HeightValue out;
    out.mode = HeightMode::heuristic;
    std::vector<std::set<std::string>> supports{detail::support_key(Y)};
    QCycle cur = Y;
    double scale = 1;
    out.sequence.push_back(hypersurface_height(Y).value);
    for (unsigned n = 0;; ++n) {
        auto hr = detail::tail_radius(out.sequence, d);
        if (hr) *hr += detail::rounding_radius(out.sequence.back());
        if ((hr && *hr <= opt.tol) || n >= n_max) {
            out.value = out.sequence.back();
            out.radius = hr ? *hr : std::numeric_limits<double>::infinity();
            out.converged = hr && *hr <= opt.tol;
            out.iterations = n;
            return out;
        }
        try {
            cur = pushforward_divisor(f, cur, opt.budget);
        } catch (const BudgetExceeded&) {
            throw BudgetExceeded("hypersurface iteration at step " + std::to_string(n + 1), out.sequence);
        }
        scale /= d;
        out.sequence.push_back(hypersurface_height(cur).value * scale);
        auto key = detail::support_key(cur);
        for (const auto& s : supports)
            if (s == key) {
                out.value = 0;
                out.radius = 0;
                out.exact = BigRat(0);
                out.mode = HeightMode::rigorous;
                out.converged = true;
                out.iterations = n + 1;
                return out;
            }
        supports.push_back(std::move(key));
    }
}

}  // namespace famheight
