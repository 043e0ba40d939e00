#include <gtest/gtest.h>

#include <cmath>

#include "famheight/heights_ff/ff_heights.hpp"
#include "famheight/heights_nf/point.hpp"

using namespace famheight;

namespace {

FamilyMorphism mandelbrot() { return FamilyMorphism::parse({"x^2 + t*y^2", "y^2"}); }

}  // namespace

TEST(FFHeight, PointExamples) {
    EXPECT_EQ(ff_height_point(FFPoint::parse("t^3 + 1 : t")), 3);
    EXPECT_EQ(ff_height_point(FFPoint::parse("1 : 1")), 0);
    FFPoint p = FFPoint::parse("t : t^2");
    EXPECT_EQ(p, FFPoint::parse("1 : t"));
    EXPECT_EQ(ff_height_point(p), 1);
    // integer content and sign are normalized away
    EXPECT_EQ(FFPoint::parse("-4*t : 6"), FFPoint::parse("2*t : -3"));
    EXPECT_EQ(FFPoint::parse("-4*t : 6").coords()[0], QtPoly::t() * BigRat(2));
    EXPECT_THROW(FFPoint::parse("0 : 0"), InputError);
}

TEST(FFHeight, MandelbrotCriticalPoint) {
    // oracle: c_0 = 0, c_{n+1} = c_n^2 + t has degree 2^{n-1}
    QtPoly c;
    for (int n = 1; n <= 10; ++n) {
        c = c * c + QtPoly::t();
        EXPECT_EQ(c.degree(), 1 << (n - 1));
    }
    auto h = ff_canonical_height_point(mandelbrot(), FFPoint::parse("0 : 1"), 10);
    ASSERT_TRUE(h.exact.has_value());
    EXPECT_EQ(*h.exact, BigRat(1, 2));
    EXPECT_EQ(h.radius, 0);
    EXPECT_EQ(h.mode, HeightMode::rigorous);
    EXPECT_TRUE(h.converged);
}

TEST(FFHeight, PowerMapAndConstantFamily) {
    auto sq = FamilyMorphism::parse({"x^2", "y^2"});
    auto h = ff_canonical_height_point(sq, FFPoint::parse("t : 1"), 10);
    ASSERT_TRUE(h.exact.has_value());
    EXPECT_EQ(*h.exact, 1);
    auto c = FamilyMorphism::parse({"x^2 - 2*y^2", "x*y + 3*y^2"});
    auto z = ff_canonical_height_point(c, FFPoint::parse("5 : 7"), 10);
    ASSERT_TRUE(z.exact.has_value());
    EXPECT_EQ(*z.exact, 0);
}

TEST(FFHeight, FunctionalEquationExact) {
    auto f = FamilyMorphism::parse({"x^2 + t*y^2", "y^2"});
    for (const char* p : {"t : 1", "1 : t", "t^2 - 1 : t + 2", "0 : 1"}) {
        FFPoint P = FFPoint::parse(p);
        auto h = ff_canonical_height_point(f, P, 10);
        auto hf = ff_canonical_height_point(f, apply(f.base(), P), 10);
        ASSERT_TRUE(h.exact && hf.exact) << p;
        EXPECT_EQ(*hf.exact, 2 * *h.exact) << p;
    }
}

TEST(FFHypersurface, CriticalValueSection) {
    auto h = ff_canonical_height_hypersurface(mandelbrot(), QtCycle::parse(1, {{"x", 1}}), 10);
    EXPECT_NEAR(h.value, 0.5, 1e-6);
    auto hp = ff_canonical_height_point(mandelbrot(), FFPoint::parse("0 : 1"), 10);
    EXPECT_NEAR(h.value, hp.value, 1e-6);
}

TEST(FFHypersurface, ConstantFamilyIsZero) {
    auto f = FamilyMorphism::parse({"x^2", "y^2", "z^2"});
    auto h = ff_canonical_height_hypersurface(f, QtCycle::parse(2, {{"x + 2*y + 3*z", 1}}), 4);
    EXPECT_EQ(h.value, 0);
    EXPECT_EQ(h.mode, HeightMode::rigorous);
}

TEST(FFHypersurface, PlaneCurveInvariance) {
    auto f = FamilyMorphism::parse({"x^2 + t*z^2", "y^2", "z^2"});
    auto Y = QtCycle::parse(2, {{"x + y + z", 1}});
    auto h = ff_canonical_height_hypersurface(f, Y, 4);
    auto hf = ff_canonical_height_hypersurface(f, pushforward_divisor(f.base(), Y), 3);
    EXPECT_GE(h.value, -h.radius);
    EXPECT_LE(std::fabs(hf.value - 2 * h.value), 1e-4) << h.value << " " << hf.value;
}

TEST(GoodLocus, Examples) {
    auto gl = good_locus(mandelbrot());
    EXPECT_EQ(gl.rho, QtPoly(1L));
    auto Y = QtCycle::parse(1, {{"x - t*y", 1}});
    EXPECT_EQ(good_locus(mandelbrot(), &Y).rho, QtPoly(1L));
    auto deg = FamilyMorphism::parse({"t*x^2", "y^2"});
    auto bad = good_locus(deg);
    EXPECT_EQ(bad.rho(BigRat(0)), 0);
    EXPECT_FALSE(bad.is_good(BigRat(0)));
    EXPECT_TRUE(bad.is_good(BigRat(1)));
    try {
        bad.check(BigRat(0));
        FAIL();
    } catch (const BadParameter& e) {
        EXPECT_EQ(e.guard(), "resultant");
    }
}

TEST(GoodLocus, CycleGuards) {
    auto f = mandelbrot();
    // components collide at t = 1 and the first drops degree at t = 0
    auto Y = QtCycle::parse(1, {{"t*x - y", 1}, {"x - y", 2}});
    auto gl = good_locus(f, &Y);
    EXPECT_FALSE(gl.is_good(BigRat(1)));
    EXPECT_FALSE(gl.is_good(BigRat(0)));
    EXPECT_TRUE(gl.is_good(BigRat(2)));
    EXPECT_THROW(specialize(Y, BigRat(0)), BadParameter);
    auto Yt = specialize(Y, BigRat(2));
    EXPECT_EQ(Yt, QCycle::parse(1, {{"2*x - y", 1}, {"x - y", 2}}));
}

TEST(Specialize, Examples) {
    EXPECT_EQ(specialize(mandelbrot(), BigRat(-1)), QMorphism::parse({"x^2 - y^2", "y^2"}));
    EXPECT_EQ(specialize(FFPoint::parse("t : 1"), BigRat(3, 2)), RatPoint::parse("3:2"));
    EXPECT_THROW(specialize(FamilyMorphism::parse({"t*x^2", "y^2"}), BigRat(0)), BadParameter);
}

TEST(Specialize, CommutesWithIteration) {
    auto f = FamilyMorphism::parse({"x^2 + t*y^2 + x*y", "y^2 - t*x*y"});
    auto gl = good_locus(f);
    FFPoint P = FFPoint::parse("t + 1 : 2");
    for (int num = -6; num <= 6; ++num)
        for (int den : {1, 2, 5}) {
            BigRat tau = make_rat(num, den);
            if (!gl.is_good(tau)) continue;
            EXPECT_EQ(specialize(apply(f.base(), P), tau), apply(specialize(f, tau), specialize(P, tau)))
                << to_string(tau);
        }
}

TEST(ParameterHeight, Examples) {
    EXPECT_NEAR(parameter_height(BigRat(3, 4)).value, std::log(4.0), 1e-15);
    EXPECT_NEAR(parameter_height(BigRat(-7, 2)).value, std::log(7.0), 1e-15);
    EXPECT_EQ(parameter_height(BigRat(0)).value, 0);
}

TEST(Specialize, HeightTracksGenericValue) {
    // hhat(f_tau, 0) = hhat_eta * h(tau) + O(1): the ratio approaches 1/2 as h(tau) grows
    auto f = mandelbrot();
    double prev_gap = 1e9;
    for (const char* s : {"100", "1000000", "1000000000000"}) {
        BigRat tau = parse_rational(s);
        auto h = canonical_height_point(specialize(f, tau), RatPoint::parse("0:1"), {1e-9, 30});
        double gap = std::fabs(h.value / parameter_height(tau).value - 0.5);
        EXPECT_LT(gap, prev_gap + 1e-12) << s;
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 0.05);
}
