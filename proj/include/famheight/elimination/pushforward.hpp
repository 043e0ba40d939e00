#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "famheight/elimination/morphism.hpp"
#include "famheight/elimination/resultant.hpp"
#include "famheight/exactalg/linalg.hpp"
#include "famheight/exactalg/perfect_power.hpp"

namespace famheight {

/// Work guard for eliminations: (number of evaluations) x (matrix size)^3.
struct ElimBudget {
    double max_work = 4e10;
};

namespace detail {

inline QPoly specialize_coeffs(const QPoly& p, const std::optional<BigRat>&) { return p; }
inline QPoly specialize_coeffs(const QtMultiPoly& p, const std::optional<BigRat>& tau) { return substitute_t(p, *tau); }

inline BigRat coeff_from(const BigRat& c, unsigned, BigRat*) { return c; }
inline QtPoly coeff_from(const BigRat& c, unsigned t_exp, QtPoly*) { return QtPoly::monomial(c, t_exp); }

inline std::size_t binom2(std::size_t n) { return (n + 2) * (n + 1) / 2; }

}  // namespace detail

/// Image of one primitive component: returns (P, k) with f_* div(G) = k * div(P).
///
/// The affine norm form H(1, x1, ..., xN) = Res_u(G, x1 F0 - F1, ..., xN F0 - FN) is
/// recovered by dense interpolation over integer values of (t,) x1, ..., xN and then
/// homogenized to degree e = deg(G) d^(N-1). Working on x0 = 1 drops the extraneous
/// x0-power of the homogeneous elimination.
template <class C>
std::pair<PrimitiveForm<C>, unsigned> pushforward_form(const ProjMorphism<C>& f, const PrimitiveForm<C>& G,
                                                       const ElimBudget& budget = {}) {
    constexpr bool qt = std::is_same_v<C, QtPoly>;
    const unsigned N = f.N(), d = f.degree(), m = G.degree;
    if (G.form.nvars() != N + 1) throw InputError("pushforward: cycle and morphism ambient dimensions differ");
    const unsigned e = N == 1 ? m : m * d;
    const auto& F = f.forms();

    std::vector<unsigned> bounds;
    if constexpr (qt) {
        auto td = [](const QtMultiPoly& p) { return static_cast<unsigned>(std::max(t_degree(p), 0)); };
        const unsigned dG = td(G.form), d0 = td(F[0]);
        unsigned tb = (N == 1 ? d : d * d) * dG;
        for (unsigned j = 1; j <= N; ++j) tb += (N == 1 ? m : m * d) * std::max(d0, td(F[j]));
        bounds.push_back(tb);
    }
    for (unsigned j = 1; j <= N; ++j) bounds.push_back(e);

    const double size = N == 1 ? double(m + d) : double(detail::binom2(m + 2 * d - 2));
    double evals = 1;
    for (unsigned b : bounds) evals *= b + 1;
    if (evals * size * size * size > budget.max_work)
        throw BudgetExceeded("pushforward of a degree-" + std::to_string(m) + " component", {});

    std::optional<BigRat> cached_tau;
    QPoly g_fiber;
    std::vector<QPoly> f_fiber;
    if constexpr (!qt) {
        g_fiber = G.form;
        f_fiber = F;
    }
    const std::size_t off = qt ? 1 : 0;
    auto oracle = [&](std::span<const BigInt> pt) -> BigRat {
        if constexpr (qt) {
            const BigRat tau(pt[0]);
            if (!cached_tau || *cached_tau != tau) {
                cached_tau = tau;
                g_fiber = detail::specialize_coeffs(G.form, cached_tau);
                f_fiber.clear();
                for (const auto& fi : F) f_fiber.push_back(detail::specialize_coeffs(fi, cached_tau));
            }
        }
        std::vector<QPoly> sys{g_fiber};
        for (unsigned j = 1; j <= N; ++j) sys.push_back(BigRat(pt[off + j - 1]) * f_fiber[0] - f_fiber[j]);
        if (N == 1) return sylvester_resultant(sys[0], sys[1]);
        return macaulay_resultant(sys);
    };
    const QPoly affine = interpolate_dense(bounds, oracle);
    if (affine.is_zero()) throw ComputationError("degenerate elimination");

    MultiPoly<C> H(N + 1);
    for (const auto& [mono, c] : affine) {
        Monomial hm(N + 1);
        unsigned s = 0;
        for (unsigned j = 1; j <= N; ++j) {
            hm[j] = mono[off + j - 1];
            s += hm[j];
        }
        if (s > e) throw ComputationError("degenerate elimination: degree contract violated");
        hm[0] = e - s;
        H.add_term(std::move(hm), detail::coeff_from(c, qt ? mono[0] : 0, static_cast<C*>(nullptr)));
    }
    // over Q[t] this also strips t-content, i.e. vertical components
    auto prim = normalize_primitive(H).second;
    if (prim.degree != e) throw ComputationError("degenerate elimination: image is vertical");
    auto [root, k] = perfect_power_decompose(prim.form);
    auto out = normalize_primitive(root).second;
    if (k * out.degree != e) throw ComputationError("degenerate elimination: degree contract violated");
    return {std::move(out), k};
}

/// Cycle-level pushforward f_* Y; the total degree is deg(Y) d^(N-1).
template <class C>
HypersurfaceCycle<C> pushforward_divisor(const ProjMorphism<C>& f, const HypersurfaceCycle<C>& Y,
                                         const ElimBudget& budget = {}) {
    if (f.N() != Y.N()) throw InputError("pushforward: cycle and morphism ambient dimensions differ");
    HypersurfaceCycle<C> out(Y.N());
    for (const auto& c : Y.components()) {
        auto [form, k] = pushforward_form(f, c.form, budget);
        out.add(std::move(form), k * c.multiplicity);
    }
    const unsigned expected = Y.N() == 1 ? Y.degree() : Y.degree() * f.degree();
    if (out.degree() != expected) throw ComputationError("degenerate elimination: degree contract violated");
    return out;
}

}  // namespace famheight
