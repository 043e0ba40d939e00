#pragma once

#include <set>
#include <string>
#include <vector>

#include "famheight/elimination/certificate.hpp"
#include "famheight/elimination/morphism.hpp"
#include "famheight/heights_nf/height_value.hpp"

namespace famheight {

/// Point of P^N(Q) as coprime integer coordinates, first nonzero coordinate positive.
class RatPoint {
public:
    RatPoint() = default;

    /// Clears denominators and normalizes. Throws on the zero vector.
    static RatPoint make(const std::vector<BigRat>& coords) {
        if (coords.size() < 2) throw InputError("a point needs at least two coordinates");
        BigInt l = 1;
        for (const auto& c : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        std::vector<BigInt> ints;
        for (const auto& c : coords) ints.push_back(c.get_num() * (l / c.get_den()));
        return from_integers(std::move(ints));
    }

    static RatPoint from_integers(std::vector<BigInt> coords) {
        BigInt g = 0;
        for (const auto& c : coords) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 0) throw InputError("zero input");
        int sign = 0;
        for (const auto& c : coords)
            if (c != 0) {
                sign = sgn(c);
                break;
            }
        if (sign < 0) g = -g;
        if (g != 1)
            for (auto& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        RatPoint p;
        p.coords_ = std::move(coords);
        return p;
    }

    /// "3:4", "[3/4 : 1]" or "3/4, 1".
    static RatPoint parse(std::string text) {
        std::vector<BigRat> coords;
        std::string cur;
        for (char ch : text) {
            if (ch == '[' || ch == ']') continue;
            if (ch == ':' || ch == ',') {
                coords.push_back(parse_rational(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        coords.push_back(parse_rational(cur));
        return make(coords);
    }

    const std::vector<BigInt>& coords() const { return coords_; }
    std::size_t N() const { return coords_.size() - 1; }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].get_str();
        return s + "]";
    }

    friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const RatPoint& a, const RatPoint& b) { return a.coords_ < b.coords_; }

private:
    std::vector<BigInt> coords_;
};

/// Naive height log max |x_i| of the normalized representative.
inline HeightValue naive_height(const RatPoint& p) {
    BigInt best = 0;
    for (const auto& c : p.coords()) {
        BigInt a = abs(c);
        if (a > best) best = a;
    }
    HeightValue h;
    h.value = log_abs(best);
    h.radius = detail::rounding_radius(h.value);
    h.mode = HeightMode::rigorous;
    return h;
}

/// f(P), renormalized. Morphisms over Q carry integer coefficients, so this stays in Z.
inline RatPoint apply(const QMorphism& f, const RatPoint& p) {
    const auto& x = p.coords();
    if (x.size() != f.forms().size()) throw InputError("point and morphism dimensions differ");
    const std::size_t n = x.size();
    const unsigned d = f.degree();
    std::vector<std::vector<BigInt>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].reserve(d + 1);
        powers[i].emplace_back(1);
        for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * x[i]);
    }
    std::vector<BigInt> y;
    BigInt term;
    for (const auto& F : f.forms()) {
        BigInt acc = 0;
        for (const auto& [m, c] : F) {
            if (c.get_den() != 1) throw InputError("morphism over Q must have integer coefficients");
            term = c.get_num();
            for (std::size_t i = 0; i < n; ++i)
                if (m[i]) term *= powers[i][m[i]];
            acc += term;
        }
        y.push_back(std::move(acc));
    }
    return RatPoint::from_integers(std::move(y));
}

/// Bounds |h(f(x)) - d h(x)| <= C for all x in P^N(Q).
struct HeightConstants {
    double C_plus = 0;
    double C_minus = 0;
    double C = 0;
    bool has_certificate = false;  // false: C_minus unavailable, only heuristic stopping downstream
};

/// C_plus = log max_i ||F_i||_1 (triangle inequality). C_minus = log max_i sum_j ||G_ij||_1 from the
/// certificate x_i^M R = sum_j G_ij F_j: any common factor of F(x) divides R, which cancels.
inline HeightConstants height_constants(const QMorphism& f) {
    HeightConstants hc;
    BigInt best = 0;
    for (const auto& F : f.forms()) best = std::max(best, l1_norm(F));
    // round logs up by a few ulps so the bounds stay valid in floating point
    auto up = [](double v) { return v == 0 ? v : v + detail::rounding_radius(v); };
    hc.C_plus = up(log_abs(best));
    try {
        auto cert = CertificateCache::global().get(f);
        BigInt worst = 0;
        for (const auto& row : cert->cofactors) {
            BigInt s = 0;
            for (const auto& g : row) s += l1_norm(g);
            worst = std::max(worst, s);
        }
        hc.C_minus = up(log_abs(worst));
        hc.has_certificate = true;
    } catch (const ComputationError&) {
        hc.has_certificate = false;
    }
    hc.C = hc.has_certificate ? std::max(hc.C_plus, hc.C_minus) : hc.C_plus;
    return hc;
}

struct PointHeightOptions {
    double tol = 1e-9;
    unsigned n_max = 16;
    StopRule rule = StopRule::automatic;
    std::size_t max_bits = std::size_t{1} << 22;  // coordinate size guard
};

/// Canonical height lim d^-n h(f^n P) by exact iteration with coprime renormalization.
///
/// Stops when (a) the orbit revisits a point (preperiodic: exactly 0), (b) C/(d^n (d-1)) <= tol
/// with C from height_constants (rigorous), or (c) the geometric tail estimate is <= tol
/// (heuristic). At n_max or the bit guard the tighter available radius is returned with
/// converged = false.
inline HeightValue canonical_height_point(const QMorphism& f, const RatPoint& P, const PointHeightOptions& opt = {}) {
    if (!(opt.tol > 0)) throw InputError("tol must be positive");
    const HeightConstants hc = height_constants(f);
    const double d = f.degree();
    HeightValue out;
    std::set<RatPoint> seen{P};
    RatPoint cur = P;
    double scale = 1;  // d^-n
    out.sequence.push_back(naive_height(P).value);
    const bool allow_heuristic = opt.rule != StopRule::rigorous;

    auto rigorous_radius = [&](unsigned n) {
        if (!hc.has_certificate) return std::numeric_limits<double>::infinity();
        return hc.C * std::pow(d, -static_cast<double>(n)) / (d - 1) + detail::rounding_radius(out.sequence.back());
    };
    auto finish = [&](unsigned n, double radius, HeightMode mode, bool converged) {
        out.value = out.sequence.back();
        out.radius = radius;
        out.mode = mode;
        out.converged = converged;
        out.iterations = n;
        return out;
    };

    for (unsigned n = 0;; ++n) {
        const double rr = rigorous_radius(n);
        if (rr <= opt.tol) return finish(n, rr, HeightMode::rigorous, true);
        std::optional<double> hr;
        if (allow_heuristic) {
            hr = detail::tail_radius(out.sequence, d);
            if (hr) *hr += detail::rounding_radius(out.sequence.back());
            if (hr && *hr <= opt.tol) return finish(n, *hr, HeightMode::heuristic, true);
        }
        std::size_t bits = 0;
        for (const auto& c : cur.coords()) bits = std::max(bits, bit_size(c));
        if (n >= opt.n_max || bits * static_cast<std::size_t>(d) > opt.max_bits) {
            if (hr && *hr < rr) return finish(n, *hr, HeightMode::heuristic, false);
            return finish(n, rr, HeightMode::rigorous, false);
        }
        cur = apply(f, cur);
        scale /= d;
        if (!seen.insert(cur).second) {
            // preperiodic orbit
            out.sequence.push_back(naive_height(cur).value * scale);
            out.value = 0;
            out.radius = 0;
            out.exact = BigRat(0);
            out.mode = HeightMode::rigorous;
            out.converged = true;
            out.iterations = n + 1;
            return out;
        }
        out.sequence.push_back(naive_height(cur).value * scale);
    }
}

}  // namespace famheight
