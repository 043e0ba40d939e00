#pragma once

#include <string>
#include <utility>
#include <vector>

#include "famheight/elimination/resultant.hpp"
#include "famheight/exactalg/polytext.hpp"
#include "famheight/exactalg/primitive.hpp"

namespace famheight {

namespace detail {

inline bool resultant_vanishes(const std::vector<QPoly>& forms) { return macaulay_resultant(forms) == 0; }

// Nonvanishing at a single parameter already proves the Q[t] resultant is nonzero.
inline bool resultant_vanishes(const std::vector<QtMultiPoly>& forms) {
    for (long tau : {3L, -5L, 7L}) {
        std::vector<QPoly> fiber;
        for (const auto& f : forms) fiber.push_back(substitute_t(f, BigRat(tau)));
        if (macaulay_resultant(fiber) != 0) return false;
    }
    return macaulay_resultant(forms).is_zero();
}

inline MultiPoly<BigRat> parse_form(const std::string& s, std::size_t n, BigRat*) { return parse_q_poly(s, n); }
inline MultiPoly<QtPoly> parse_form(const std::string& s, std::size_t n, QtPoly*) { return parse_qt_poly(s, n); }

}  // namespace detail

/// Endomorphism of P^N (N = 1 or 2) given by N+1 forms of a common degree d >= 2.
/// The forms are divided by their joint content; individual forms need not be primitive.
template <class C>
class ProjMorphism {
public:
    using Form = MultiPoly<C>;

    ProjMorphism() = default;

    /// Validates shape and degree; with check_morphism the resultant must be nonzero.
    static ProjMorphism make(std::vector<Form> forms, bool check_morphism = true) {
        if (forms.size() != 2 && forms.size() != 3) throw InputError("morphism needs 2 or 3 forms (N = 1 or 2)");
        const std::size_t n = forms.size();
        int deg = -1;
        for (const auto& f : forms) {
            if (f.nvars() != n) throw InputError("morphism forms must be in N+1 variables");
            if (f.is_zero()) continue;
            if (!f.is_homogeneous()) throw InputError("morphism forms must be homogeneous");
            if (deg < 0) deg = f.total_degree();
            if (f.total_degree() != deg) throw InputError("morphism forms must share one degree");
        }
        if (deg < 0) throw InputError("zero input");
        if (deg < 2) throw InputError("morphism degree must be at least 2");
        ProjMorphism out;
        out.forms_ = normalize_joint<C>(forms).second;
        out.degree_ = static_cast<unsigned>(deg);
        if (check_morphism && detail::resultant_vanishes(out.forms_))
            throw InputError("forms share a common zero: not a morphism");
        return out;
    }

    static ProjMorphism parse(const std::vector<std::string>& texts, bool check_morphism = true) {
        std::vector<Form> forms;
        for (const auto& s : texts) forms.push_back(detail::parse_form(s, texts.size(), static_cast<C*>(nullptr)));
        return make(std::move(forms), check_morphism);
    }

    unsigned N() const { return static_cast<unsigned>(forms_.size()) - 1; }
    unsigned degree() const { return degree_; }
    const std::vector<Form>& forms() const { return forms_; }

    /// this o inner.
    ProjMorphism compose(const ProjMorphism& inner) const {
        if (inner.N() != N()) throw InputError("compose: dimension mismatch");
        return make(compose_forms<C>(forms_, inner.forms_), false);
    }

    ProjMorphism iterate(unsigned n) const {
        if (n == 0) throw InputError("iterate: n must be positive");
        ProjMorphism r = *this;
        for (unsigned k = 1; k < n; ++k) r = compose(r);
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < forms_.size(); ++i) s += (i ? ", " : "") + famheight::to_string(forms_[i]);
        return s + "]";
    }

    friend bool operator==(const ProjMorphism& a, const ProjMorphism& b) { return a.forms_ == b.forms_; }

private:
    std::vector<Form> forms_;
    unsigned degree_ = 0;
};

using QMorphism = ProjMorphism<BigRat>;
using QtMorphism = ProjMorphism<QtPoly>;

/// Formal sum of primitive hypersurfaces in P^N with positive multiplicities.
template <class C>
class HypersurfaceCycle {
public:
    struct Component {
        PrimitiveForm<C> form;
        unsigned multiplicity = 1;
    };

    HypersurfaceCycle() = default;
    /// Empty cycle in P^N, to be filled with add().
    explicit HypersurfaceCycle(unsigned N) : N_(N) {}

    /// Normalizes each form to its primitive representative and merges proportional ones.
    static HypersurfaceCycle make(unsigned N, const std::vector<std::pair<MultiPoly<C>, unsigned>>& parts) {
        if (N != 1 && N != 2) throw InputError("cycle ambient dimension must be 1 or 2");
        HypersurfaceCycle y(N);
        for (const auto& [p, mult] : parts) {
            if (p.nvars() != N + 1) throw InputError("cycle component has the wrong number of variables");
            if (!p.is_homogeneous()) throw InputError("cycle component is not homogeneous");
            if (mult == 0) continue;
            auto prim = normalize_primitive(p).second;
            if (prim.degree == 0) throw InputError("cycle component of degree 0");
            y.add(std::move(prim), mult);
        }
        if (y.components_.empty()) throw InputError("cycle has total degree 0");
        return y;
    }

    static HypersurfaceCycle parse(unsigned N, const std::vector<std::pair<std::string, unsigned>>& parts) {
        std::vector<std::pair<MultiPoly<C>, unsigned>> forms;
        for (const auto& [s, m] : parts) forms.emplace_back(detail::parse_form(s, N + 1, static_cast<C*>(nullptr)), m);
        return make(N, forms);
    }

    /// Adds mult * div(form), merging with an equal (hence proportional) component.
    void add(PrimitiveForm<C> form, unsigned mult) {
        for (auto& c : components_)
            if (c.form.form == form.form) {
                c.multiplicity += mult;
                return;
            }
        components_.push_back({std::move(form), mult});
    }

    unsigned N() const { return N_; }
    const std::vector<Component>& components() const { return components_; }

    /// Total degree m = sum of multiplicity * degree.
    unsigned degree() const {
        unsigned m = 0;
        for (const auto& c : components_) m += c.multiplicity * c.form.degree;
        return m;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& c : components_) {
            if (!s.empty()) s += " + ";
            if (c.multiplicity != 1) s += std::to_string(c.multiplicity) + "*";
            s += "div(" + famheight::to_string(c.form.form) + ")";
        }
        return s;
    }

    /// Order-insensitive equality of cycles.
    friend bool operator==(const HypersurfaceCycle& a, const HypersurfaceCycle& b) {
        if (a.N_ != b.N_ || a.components_.size() != b.components_.size()) return false;
        for (const auto& c : a.components_) {
            bool found = false;
            for (const auto& o : b.components_)
                if (o.form.form == c.form.form && o.multiplicity == c.multiplicity) found = true;
            if (!found) return false;
        }
        return true;
    }

private:
    unsigned N_ = 0;
    std::vector<Component> components_;
};

using QCycle = HypersurfaceCycle<BigRat>;
using QtCycle = HypersurfaceCycle<QtPoly>;

}  // namespace famheight
