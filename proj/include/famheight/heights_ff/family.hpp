#pragma once

#include <string>
#include <utility>
#include <vector>

#include "famheight/elimination/morphism.hpp"
#include "famheight/elimination/resultant.hpp"
#include "famheight/heights_nf/point.hpp"

namespace famheight {

/// Family of endomorphisms over the t-line with its resultant, nonzero in Z[t].
class FamilyMorphism {
public:
    FamilyMorphism() = default;

    static FamilyMorphism make(QtMorphism base) {
        FamilyMorphism f;
        f.resultant_ = macaulay_resultant(base.forms());
        if (f.resultant_.is_zero()) throw InputError("forms share a common zero over Q(t): not a morphism");
        f.base_ = std::move(base);
        return f;
    }

    static FamilyMorphism parse(const std::vector<std::string>& forms) { return make(QtMorphism::parse(forms, false)); }

    const QtMorphism& base() const { return base_; }
    const QtPoly& resultant() const { return resultant_; }
    unsigned N() const { return base_.N(); }
    unsigned degree() const { return base_.degree(); }

private:
    QtMorphism base_;
    QtPoly resultant_;
};

/// Point of P^N(Q(t)) as coordinates in Z[t], coprime over Q[t], with integer content 1
/// and a positive leading coefficient on the first nonzero coordinate.
class FFPoint {
public:
    FFPoint() = default;

    static FFPoint make(std::vector<QtPoly> coords) {
        if (coords.size() < 2) throw InputError("a point needs at least two coordinates");
        QtPoly g;
        for (const auto& c : coords) g = gcd(g, c);
        if (g.is_zero()) throw InputError("zero input");
        if (g.degree() > 0)
            for (auto& c : coords) c = exact_div(c, g);
        BigInt gn = 0, l = 1;
        for (const auto& c : coords)
            for (const auto& k : c.coeffs()) detail::accumulate_content(gn, l, k);
        BigRat scale = make_rat(gn, l);
        for (const auto& c : coords)
            if (!c.is_zero()) {
                if (c.lead() < 0) scale = -scale;
                break;
            }
        const BigRat inv = 1 / scale;
        for (auto& c : coords) c = inv * c;
        FFPoint p;
        p.coords_ = std::move(coords);
        return p;
    }

    /// "t^3+1 : t" style text.
    static FFPoint parse(const std::string& text) {
        std::vector<QtPoly> coords;
        std::string cur;
        auto flush = [&] {
            QtMultiPoly p = parse_qt_poly(cur, 1);
            if (p.degree_in(0) > 0) throw InputError("point coordinates may only involve t");
            coords.push_back(p.coeff(Monomial{0}));
            cur.clear();
        };
        for (char ch : text) {
            if (ch == '[' || ch == ']') continue;
            if (ch == ':' || ch == ',')
                flush();
            else
                cur += ch;
        }
        flush();
        return make(std::move(coords));
    }

    const std::vector<QtPoly>& coords() const { return coords_; }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? " : " : "") + coords_[i].to_string();
        return s + "]";
    }

    friend bool operator==(const FFPoint& a, const FFPoint& b) { return a.coords_ == b.coords_; }

private:
    std::vector<QtPoly> coords_;
};

inline FFPoint apply(const QtMorphism& f, const FFPoint& p) {
    if (p.coords().size() != f.forms().size()) throw InputError("point and morphism dimensions differ");
    return FFPoint::make(evaluate_forms<QtPoly, QtPoly>(f.forms(), p.coords()));
}

/// Naive height of a parameter on P^1: log max(|a|, |b|) for tau = a/b in lowest terms.
inline HeightValue parameter_height(const BigRat& tau) {
    BigInt a = abs(tau.get_num());
    HeightValue h;
    h.value = log_abs(std::max(a, BigInt(tau.get_den())));
    h.radius = detail::rounding_radius(h.value);
    h.mode = HeightMode::rigorous;
    return h;
}

/// Named polynomial in Z[t]; parameters where it vanishes are rejected.
struct Guard {
    std::string name;
    QtPoly poly;
};

/// Certified subset of good parameters: tau is good when every guard is nonzero at tau.
struct GoodLocus {
    std::vector<Guard> guards;
    QtPoly rho;  // product of the guards

    bool is_good(const BigRat& tau) const {
        for (const auto& g : guards)
            if (g.poly(tau) == 0) return false;
        return true;
    }
    /// Throws BadParameter naming the first vanishing guard.
    void check(const BigRat& tau) const {
        for (const auto& g : guards)
            if (g.poly(tau) == 0) throw BadParameter(g.name, to_string(tau));
    }
};

namespace detail {

// A nonzero 2x2 coefficient minor of two forms of equal degree; nonvanishing keeps them non-proportional.
inline QtPoly non_proportionality_minor(const QtMultiPoly& a, const QtMultiPoly& b) {
    std::vector<Monomial> monos;
    for (const auto& [m, c] : a) monos.push_back(m);
    for (const auto& [m, c] : b)
        if (a.coeff(m).is_zero()) monos.push_back(m);
    for (std::size_t i = 0; i < monos.size(); ++i)
        for (std::size_t j = i + 1; j < monos.size(); ++j) {
            QtPoly minor = a.coeff(monos[i]) * b.coeff(monos[j]) - a.coeff(monos[j]) * b.coeff(monos[i]);
            if (!minor.is_zero()) return minor;
        }
    throw InputError("cycle components are proportional");
}

inline QtPoly integral_primitive(const QtPoly& p) {
    if (p.is_zero()) return p;
    QtPoly q = p.primitive_part();
    return q.lead() < 0 ? BigRat(-1) * q : q;
}

}  // namespace detail

/// Guards: the resultant of the family; for each component of Y its graded-lex leading
/// coefficient (degree and nonvanishing are kept); for pairs of components, their Sylvester
/// resultant on P^1, or a nonzero coefficient minor on P^2 when the degrees agree.
inline GoodLocus good_locus(const FamilyMorphism& f, const QtCycle* Y = nullptr) {
    GoodLocus gl;
    gl.guards.push_back({"resultant", detail::integral_primitive(f.resultant())});
    if (Y) {
        if (Y->N() != f.N()) throw InputError("cycle and family ambient dimensions differ");
        const auto& comps = Y->components();
        for (std::size_t i = 0; i < comps.size(); ++i)
            gl.guards.push_back({"lead[" + std::to_string(i) + "]", detail::integral_primitive(comps[i].form.form.lead_coeff())});
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (std::size_t j = i + 1; j < comps.size(); ++j) {
                const auto& a = comps[i].form;
                const auto& b = comps[j].form;
                QtPoly g(1L);
                if (Y->N() == 1)
                    g = sylvester_resultant(a.form, b.form);
                else if (a.degree == b.degree)
                    g = detail::non_proportionality_minor(a.form, b.form);
                gl.guards.push_back({"pair[" + std::to_string(i) + "," + std::to_string(j) + "]", detail::integral_primitive(g)});
            }
    }
    // constant guards are normalized to 1 (they never vanish)
    for (auto& g : gl.guards)
        if (g.poly.degree() == 0) g.poly = QtPoly(1L);
    gl.rho = QtPoly(1L);
    for (const auto& g : gl.guards) gl.rho = gl.rho * g.poly;
    return gl;
}

/// f_tau over Q; rejects tau where the resultant vanishes.
inline QMorphism specialize(const FamilyMorphism& f, const BigRat& tau) {
    if (f.resultant()(tau) == 0) throw BadParameter("resultant", to_string(tau));
    std::vector<QPoly> forms;
    for (const auto& p : f.base().forms()) forms.push_back(substitute_t(p, tau));
    return QMorphism::make(std::move(forms), false);
}

inline RatPoint specialize(const FFPoint& p, const BigRat& tau) {
    std::vector<BigRat> c;
    for (const auto& x : p.coords()) c.push_back(x(tau));
    return RatPoint::make(c);
}

/// Y_tau; a component vanishing or dropping degree at tau is reported through its lead guard.
inline QCycle specialize(const QtCycle& Y, const BigRat& tau) {
    std::vector<std::pair<QPoly, unsigned>> parts;
    for (std::size_t i = 0; i < Y.components().size(); ++i) {
        const auto& c = Y.components()[i];
        if (c.form.form.lead_coeff()(tau) == 0) throw BadParameter("lead[" + std::to_string(i) + "]", to_string(tau));
        parts.emplace_back(substitute_t(c.form.form, tau), c.multiplicity);
    }
    return QCycle::make(Y.N(), parts);
}

}  // namespace famheight
