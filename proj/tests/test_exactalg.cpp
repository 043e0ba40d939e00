#include <gtest/gtest.h>

#include <random>

#include "famheight/exactalg/linalg.hpp"
#include "famheight/exactalg/perfect_power.hpp"
#include "famheight/exactalg/polytext.hpp"
#include "famheight/exactalg/primitive.hpp"

using namespace famheight;

namespace {

QPoly q(const char* s, std::size_t n) { return parse_q_poly(s, n); }
QtMultiPoly qt(const char* s, std::size_t n) { return parse_qt_poly(s, n); }

// random homogeneous form of degree d in n vars with small integer coefficients
QPoly random_form(std::mt19937_64& rng, std::size_t n, unsigned d, int range = 3) {
    std::uniform_int_distribution<int> coef(-range, range);
    QPoly p(n);
    Monomial m(n);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            m[i] = left;
            p.add_term(m, BigRat(coef(rng)));
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, d);
    if (p.is_zero()) p.add_term(Monomial(n, 0), 1);
    return p;
}

QPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned maxdeg) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<unsigned> e(0, maxdeg);
    QPoly p(n);
    for (int k = 0; k < 6; ++k) {
        Monomial m(n);
        for (auto& x : m) x = e(rng);
        p.add_term(m, make_rat(coef(rng), 1 + (k % 3)));
    }
    return p;
}

}  // namespace

TEST(BigRat, Normalized) {
    BigRat r = make_rat(6, -4);
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(parse_rational(" -10/4"), make_rat(-5, 2));
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_NEAR(log_abs(BigInt(1000)), std::log(1000.0), 1e-15);
    BigInt big = pow(BigInt(3), 4000);
    EXPECT_NEAR(log_abs(big), 4000 * std::log(3.0), 1e-9);
}

TEST(Text, RoundTrip) {
    auto p = qt("x0^2 + 3*t*x1^2 - 1/2*x0*x1", 2);
    EXPECT_EQ(to_string(p), "x0^2 - 1/2*x0*x1 + 3*t*x1^2");
    EXPECT_EQ(parse_qt_poly(to_string(p), 2), p);
    EXPECT_EQ(q("x + y", 2), q("x0+x1", 2));
    EXPECT_EQ(q(" ( x - y ) ^ 2", 2), q("x^2 - 2*x*y + y^2", 2));
    EXPECT_THROW(parse_q_poly("t*x", 2), InputError);
    EXPECT_THROW(parse_q_poly("x2", 2), InputError);
    EXPECT_THROW(parse_q_poly("x +", 2), InputError);
}

TEST(NormalizePrimitive, Examples) {
    auto [s1, p1] = normalize_primitive(q("2*x + 4*y + 6*z", 3));
    EXPECT_EQ(s1, 2);
    EXPECT_EQ(p1.form, q("x + 2*y + 3*z", 3));
    auto [s2, p2] = normalize_primitive(q("x - y", 2));
    EXPECT_EQ(s2, 1);
    EXPECT_EQ(p2.form, q("x - y", 2));
    auto [s3, p3] = normalize_primitive(q("-3/2*x^2", 2));
    EXPECT_EQ(s3, make_rat(-3, 2));
    EXPECT_EQ(p3.form, q("x^2", 2));
    EXPECT_EQ(p3.degree, 2u);
    EXPECT_THROW(normalize_primitive(QPoly(2)), InputError);
}

TEST(NormalizePrimitive, OverQt) {
    auto [s, p] = normalize_primitive(qt("2*t*x^2 + 2*t^2*y^2", 2));
    EXPECT_EQ(s, QtPoly(BigRat(2)) * QtPoly::t());
    EXPECT_EQ(p.form, qt("x^2 + t*y^2", 2));
    auto [s2, p2] = normalize_primitive(qt("-(t+1)*x + 1/3*(t+1)*y", 2));
    EXPECT_EQ(p2.form, qt("3*x - y", 2));
    EXPECT_EQ(s2 * QtPoly(BigRat(3)), -(QtPoly::t() + QtPoly(BigRat(1))));
}

TEST(NormalizePrimitive, Idempotent) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        QPoly p = random_poly(rng, 3, 3);
        if (p.is_zero()) continue;
        auto [s, f] = normalize_primitive(p);
        EXPECT_EQ(s * f.form, p);
        auto [s2, f2] = normalize_primitive(f.form);
        EXPECT_EQ(s2, 1);
        EXPECT_EQ(f2.form, f.form);
        EXPECT_TRUE(is_integral(f.form));
        EXPECT_GT(f.form.lead_coeff(), 0);
    }
}

TEST(Compose, Examples) {
    std::vector<QPoly> F{q("x^2", 2), q("y^2", 2)};
    auto c = compose_forms<BigRat>(F, F);
    EXPECT_EQ(c[0], q("x^4", 2));
    EXPECT_EQ(c[1], q("y^4", 2));

    std::vector<QtMultiPoly> G{qt("x^2 + t*y^2", 2), qt("y^2", 2)};
    auto gg = compose_forms<QtPoly>(G, G);
    EXPECT_EQ(gg[0], qt("(x^2 + t*y^2)^2 + t*y^4", 2));
    EXPECT_EQ(gg[1], qt("y^4", 2));

    std::vector<QPoly> id{q("x", 3), q("y", 3), q("z", 3)};
    std::vector<QPoly> H{q("x^2+y*z", 3), q("3*y^2", 3), q("z^2 - x*y", 3)};
    EXPECT_EQ(compose_forms<BigRat>(id, H), H);

    std::vector<QPoly> bad{q("x^2 + y", 2), q("y^2", 2)};
    EXPECT_THROW(compose_forms<BigRat>(F, bad), InputError);
    std::vector<QPoly> three{q("x", 3), q("y", 3), q("z", 3)};
    EXPECT_THROW(compose_forms<BigRat>(three, F), InputError);
}

TEST(Compose, AssociativeAndDegree) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<QPoly> F, G, H;
        for (int i = 0; i < 3; ++i) {
            F.push_back(random_form(rng, 3, 2));
            G.push_back(random_form(rng, 3, 2));
            H.push_back(random_form(rng, 3, 1));
        }
        auto left = compose_forms<BigRat>(F, compose_forms<BigRat>(G, H));
        auto right = compose_forms<BigRat>(compose_forms<BigRat>(F, G), H);
        EXPECT_EQ(left, right);
        for (const auto& p : left) {
            EXPECT_TRUE(p.is_homogeneous());
            if (!p.is_zero()) {
                EXPECT_EQ(p.total_degree(), 4);
            }
        }
    }
}

TEST(Evaluate, Examples) {
    std::vector<QPoly> F{q("x^2 + y^2", 2), q("x*y", 2)};
    std::vector<BigRat> pt{1, 2};
    auto v = evaluate_forms<BigRat, BigRat>(F, pt);
    EXPECT_EQ(v[0], 5);
    EXPECT_EQ(v[1], 2);

    std::vector<QtMultiPoly> G{qt("x^2 + t*y^2", 2), qt("y^2", 2)};
    std::vector<QtPoly> c{QtPoly(0L), QtPoly(1L)};
    auto w = evaluate_forms<QtPoly, QtPoly>(G, c);
    EXPECT_EQ(w[0], QtPoly::t());
    EXPECT_EQ(w[1], QtPoly(1L));

    std::vector<BigRat> zero{0, 0};
    for (const auto& z : evaluate_forms<BigRat, BigRat>(F, zero)) EXPECT_EQ(z, 0);
    std::vector<BigRat> wrong{1};
    EXPECT_THROW(evaluate(F[0], std::span<const BigRat>(wrong)), InputError);
}

TEST(Arithmetic, ExactRandomized) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        QPoly p = random_poly(rng, 3, 3), r = random_poly(rng, 3, 2);
        EXPECT_EQ((p + r) - r, p);
        if (r.is_zero()) continue;
        auto [quo, rem] = divmod(p * r, r);
        EXPECT_TRUE(rem.is_zero());
        EXPECT_EQ(quo, p);
    }
}

TEST(QtPolyOps, GcdAndDivision) {
    QtPoly t = QtPoly::t(), one(1L);
    QtPoly a = (t + one) * (t - one) * (t * t + QtPoly(3L));
    QtPoly b = (t + one) * (t * t + QtPoly(3L)) * (t + QtPoly(5L));
    EXPECT_EQ(gcd(a, b), ((t + one) * (t * t + QtPoly(3L))).monic());
    EXPECT_EQ(gcd(a, QtPoly(7L)), one);
    auto [qq, rr] = divmod(a, t + one);
    EXPECT_TRUE(rr.is_zero());
    EXPECT_EQ(qq * (t + one), a);
    EXPECT_EQ(a(BigRat(1)), 0);
}

TEST(PerfectPower, Decompose) {
    QPoly base = q("x^2 + 3*x*y - y^2", 2);
    auto [r, k] = perfect_power_decompose(pow(base, 6));
    EXPECT_EQ(k, 6u);
    EXPECT_TRUE(r == base || r == -base);
    auto [r2, k2] = perfect_power_decompose(base);
    EXPECT_EQ(k2, 1u);
    EXPECT_EQ(r2, base);
    QPoly notpow = pow(q("x+y", 2), 2) * q("x-y", 2);
    EXPECT_EQ(perfect_power_decompose(notpow).second, 1u);

    QtMultiPoly c = qt("x^2 - t*y*z + 2*z^2", 3);
    auto [rc, kc] = perfect_power_decompose(pow(c, 4));
    EXPECT_EQ(kc, 4u);
    EXPECT_TRUE(rc == c || rc == -c);
}

TEST(Linalg, DeterminantAndSolve) {
    Matrix<BigInt> m(3, 3);
    int vals[9] = {2, -1, 0, 1, 3, 4, 0, 5, -2};
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
    // 2*(3*-2 - 20) - (-1)*(1*-2 - 0) = -52 - 2 = -54
    EXPECT_EQ(det_bareiss(m), -54);
    Matrix<BigInt> z(2, 2);
    z(0, 1) = 1;
    z(1, 0) = 1;
    EXPECT_EQ(det_bareiss(z), -1);

    Matrix<QPoly> sym(2, 2);
    sym(0, 0) = q("x", 2);
    sym(0, 1) = q("y", 2);
    sym(1, 0) = q("y", 2);
    sym(1, 1) = q("x", 2);
    EXPECT_EQ(det_bareiss_generic(sym), q("x^2 - y^2", 2));

    Matrix<BigRat> a(2, 3);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    a(1, 2) = 1;
    auto x = solve_rational(a, {3, 7});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0] + 2 * (*x)[1], 3);
    EXPECT_EQ(2 * (*x)[0] + 4 * (*x)[1] + (*x)[2], 7);
    Matrix<BigRat> inc(2, 1);
    inc(0, 0) = 1;
    inc(1, 0) = 1;
    EXPECT_FALSE(solve_rational(inc, {1, 2}).has_value());
}

TEST(Linalg, Interpolation) {
    QPoly target = q("3*x^2*y - y^3 + 7*x + 1/2", 2);
    unsigned bounds[2] = {2, 3};
    auto rec = interpolate_dense(bounds, [&](std::span<const BigInt> pt) {
        std::vector<BigRat> v(pt.begin(), pt.end());
        return evaluate(target, std::span<const BigRat>(v));
    });
    EXPECT_EQ(rec, target);
}
