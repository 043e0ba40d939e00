#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "famheight/heights_nf/hypersurface.hpp"
#include "famheight/heights_nf/point.hpp"

using namespace famheight;

namespace {

RatPoint random_point(std::mt19937_64& rng, std::size_t n, long range) {
    std::uniform_int_distribution<long> c(-range, range);
    while (true) {
        std::vector<BigInt> v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(c(rng));
        bool nz = false;
        for (const auto& x : v) nz = nz || x != 0;
        if (nz) return RatPoint::from_integers(v);
    }
}

double combined(const HeightValue& image, const HeightValue& base, double d) { return image.radius + d * base.radius; }

const std::vector<std::vector<std::string>>& pool() {
    static const std::vector<std::vector<std::string>> p{
        {"x^2 + y^2", "y^2"},          {"x^2 - 2*y^2", "x*y + 3*y^2"}, {"2*x^3 - y^3", "x*y^2 + y^3"},
        {"x^2 + y*z", "y^2", "z^2"},   {"x^2 - z^2", "y^2 + x*z", "z^2"}};
    return p;
}

}  // namespace

TEST(NaiveHeight, Examples) {
    EXPECT_NEAR(naive_height(RatPoint::parse("3:4")).value, std::log(4.0), 1e-15);
    EXPECT_EQ(naive_height(RatPoint::parse("1:1")).value, 0);
    EXPECT_NEAR(naive_height(RatPoint::parse("3/4:1")).value, std::log(4.0), 1e-15);
    EXPECT_EQ(RatPoint::parse("-6:4").to_string(), "[3:-2]");
    EXPECT_THROW(RatPoint::parse("0:0"), InputError);
}

TEST(HeightConstants, Examples) {
    auto pw = height_constants(QMorphism::parse({"x^2", "y^2"}));
    EXPECT_NEAR(pw.C_plus, 0, 1e-15);
    EXPECT_NEAR(pw.C_minus, 0, 1e-15);
    EXPECT_NEAR(pw.C, 0, 1e-15);
    auto lin = height_constants(QMorphism::parse({"2*x^2", "3*y^2"}));
    EXPECT_NEAR(lin.C_plus, std::log(3.0), 1e-12);
    EXPECT_TRUE(lin.has_certificate);
}

TEST(HeightConstants, SamplingBound) {
    // |h(f(x)) - d h(x)| <= C over 10^4 random points
    for (const auto& forms : {std::vector<std::string>{"x^2 + y^2", "y^2"}, std::vector<std::string>{"2*x^2", "3*y^2"},
                              std::vector<std::string>{"x^2 - 2*y^2", "x*y + 3*y^2"}}) {
        auto f = QMorphism::parse(forms);
        auto hc = height_constants(f);
        std::mt19937_64 rng(2024);
        double worst = 0;
        for (int i = 0; i < 10000; ++i) {
            RatPoint p = random_point(rng, 2, i % 2 ? 1000 : 30);
            double gap = naive_height(apply(f, p)).value - f.degree() * naive_height(p).value;
            worst = std::max(worst, std::fabs(gap));
            ASSERT_LE(gap, hc.C_plus + 1e-12) << f.to_string() << " " << p.to_string();
            ASSERT_GE(gap, -hc.C_minus - 1e-12) << f.to_string() << " " << p.to_string();
        }
        EXPECT_LE(worst, hc.C + 1e-12);
    }
}

TEST(CanonicalPoint, PowerMapEqualsNaive) {
    auto f = QMorphism::parse({"x^2", "y^2"});
    auto h = canonical_height_point(f, RatPoint::parse("2:1"));
    EXPECT_NEAR(h.value, std::log(2.0), 1e-12);
    EXPECT_EQ(h.mode, HeightMode::rigorous);
    auto g = QMorphism::parse({"x^3", "y^3", "z^3"});
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        RatPoint p = random_point(rng, 3, 1000000);
        EXPECT_NEAR(canonical_height_point(g, p).value, naive_height(p).value, 1e-9);
    }
}

TEST(CanonicalPoint, Preperiodic) {
    auto c1 = QMorphism::parse({"x^2 - y^2", "y^2"});
    auto h = canonical_height_point(c1, RatPoint::parse("0:1"));
    EXPECT_EQ(h.value, 0);
    EXPECT_EQ(h.radius, 0);
    EXPECT_EQ(h.mode, HeightMode::rigorous);
    // enumerated preperiodic points of the pool-style maps
    auto cheb = QMorphism::parse({"x^2 - 2*y^2", "y^2"});
    for (const char* p : {"0:1", "1:1", "-1:1", "2:1", "-2:1", "1:0"})
        EXPECT_LE(canonical_height_point(cheb, RatPoint::parse(p)).value, 1e-12) << p;
    for (const char* p : {"1:1", "-1:1", "1:0"}) {
        auto v = canonical_height_point(c1, RatPoint::parse(p));
        EXPECT_LE(v.value, v.radius + 1e-12) << p;
    }
}

TEST(CanonicalPoint, MatchesIterationOracle) {
    // independent iteration of z -> z^2 + 1 on coprime pairs (a, b)
    auto f = QMorphism::parse({"x^2 + y^2", "y^2"});
    BigInt a = 0, b = 1;
    for (int n = 0; n < 12; ++n) {
        BigInt na = a * a + b * b, nb = b * b;
        BigInt g = gcd(na, nb);
        a = na / g;
        b = nb / g;
    }
    const double oracle = log_abs(std::max(abs(a), abs(b))) / std::pow(2.0, 12);
    const auto hc = height_constants(f);
    auto h = canonical_height_point(f, RatPoint::parse("0:1"));
    EXPECT_GT(h.value, 0);
    EXPECT_NEAR(h.value, oracle, 2 * hc.C * std::pow(2.0, -12));
    // the orbit escapes very fast, so the tail estimate converges to the tolerance
    EXPECT_TRUE(h.converged);
    EXPECT_LE(h.radius, 1e-9);
}

TEST(CanonicalPoint, FunctionalEquation) {
    std::mt19937_64 rng(42);
    for (const auto& forms : pool()) {
        auto f = QMorphism::parse(forms);
        for (int i = 0; i < 10; ++i) {
            RatPoint p = random_point(rng, forms.size(), 50);
            auto hp = canonical_height_point(f, p);
            auto hfp = canonical_height_point(f, apply(f, p));
            EXPECT_LE(std::fabs(hfp.value - f.degree() * hp.value), 2 * combined(hfp, hp, f.degree()) + 1e-12)
                << f.to_string() << " at " << p.to_string();
            EXPECT_GE(hp.value, -hp.radius);
        }
    }
}

TEST(CanonicalPoint, RigorousModeRadius) {
    auto f = QMorphism::parse({"x^2 + y^2", "y^2"});
    PointHeightOptions opt;
    opt.rule = StopRule::rigorous;
    opt.tol = 1e-3;
    auto h = canonical_height_point(f, RatPoint::parse("1:3"), opt);
    EXPECT_EQ(h.mode, HeightMode::rigorous);
    const auto hc = height_constants(f);
    EXPECT_LE(h.radius, 1e-3);
    EXPECT_GE(h.radius, hc.C / std::pow(2.0, h.iterations));
    // the exact limit lies within the reported radius of a much later partial value
    opt.tol = 1e-7;
    auto finer = canonical_height_point(f, RatPoint::parse("1:3"), opt);
    EXPECT_LE(std::fabs(finer.value - h.value), h.radius + finer.radius);
}

TEST(CanonicalPoint, TelescopingIsExact) {
    auto f = QMorphism::parse({"x^2 - 2*y^2", "x*y + 3*y^2"});
    RatPoint p = RatPoint::parse("5:7");
    PointHeightOptions opt;
    opt.tol = 1e-300;
    opt.n_max = 8;
    auto h = canonical_height_point(f, p, opt);
    // a_n = a_0 + sum of increments, increments from the naive heights along the orbit
    RatPoint cur = p;
    double sum = naive_height(p).value;
    double scale = 1;
    for (std::size_t n = 1; n < h.sequence.size(); ++n) {
        RatPoint next = apply(f, cur);
        sum += scale / f.degree() * naive_height(next).value - scale * naive_height(cur).value;
        scale /= f.degree();
        cur = next;
        EXPECT_NEAR(sum, h.sequence[n], 1e-12);
    }
    EXPECT_FALSE(h.converged);
}

TEST(Hypersurface, ProxyExamples) {
    EXPECT_NEAR(hypersurface_height(QCycle::parse(2, {{"x + 2*y + 3*z", 1}})).value, std::log(3.0) / 2, 1e-15);
    EXPECT_EQ(hypersurface_height(QCycle::parse(1, {{"x - y", 1}})).value, 0);
    EXPECT_EQ(hypersurface_height(QCycle::parse(1, {{"x", 2}, {"x - y", 1}})).value, 0);
    // representative independence
    EXPECT_EQ(hypersurface_height(QCycle::parse(1, {{"6*x - 4*y", 1}})).value,
              hypersurface_height(QCycle::parse(1, {{"-3/5*x + 2/5*y", 1}})).value);
}

TEST(Hypersurface, CanonicalExamples) {
    auto sq = QMorphism::parse({"x^2", "y^2"});
    auto fixed = canonical_height_hypersurface(sq, QCycle::parse(1, {{"x - y", 1}}));
    EXPECT_EQ(fixed.value, 0);
    auto two = canonical_height_hypersurface(sq, QCycle::parse(1, {{"x - 2*y", 1}}));
    EXPECT_NEAR(two.value, std::log(2.0), 1e-12);
    for (double a : two.sequence) EXPECT_NEAR(a, std::log(2.0), 1e-12);
}

TEST(Hypersurface, PlaneCurveInvariance) {
    auto sq = QMorphism::parse({"x^2", "y^2", "z^2"});
    auto Y = QCycle::parse(2, {{"x + y + z", 1}});
    // both sides run through the same pushforwards f_*Y, ..., f^4_*Y
    HypersurfaceHeightOptions opt;
    opt.n_max = 4;
    auto h = canonical_height_hypersurface(sq, Y, opt);
    opt.n_max = 3;
    auto hf = canonical_height_hypersurface(sq, pushforward_divisor(sq, Y), opt);
    EXPECT_GE(h.value, -h.radius);
    EXPECT_LE(std::fabs(hf.value - 2 * h.value), 2 * (hf.radius + 2 * h.radius));
}

TEST(Hypersurface, PointCycleMatchesPointHeight) {
    // on P^1 the cycle div(b x - a y) is the point [a:b]
    auto f = QMorphism::parse({"x^2 - 2*y^2", "x*y + 3*y^2"});
    auto hp = canonical_height_point(f, RatPoint::parse("3:5"), {1e-6, 16});
    auto hy = canonical_height_hypersurface(f, QCycle::parse(1, {{"5*x - 3*y", 1}}), {16, 1e-6});
    EXPECT_NEAR(hp.value, hy.value, hp.radius + hy.radius + 1e-9);
}

TEST(Hypersurface, BudgetCarriesPartialSequence) {
    auto sq = QMorphism::parse({"x^2 + y*z", "y^2", "z^2"});
    HypersurfaceHeightOptions opt;
    opt.n_max = 6;
    opt.tol = 1e-300;
    opt.budget.max_work = 1e6;
    try {
        canonical_height_hypersurface(sq, QCycle::parse(2, {{"x + 2*y + 3*z", 1}}), opt);
        FAIL() << "expected budget exceeded";
    } catch (const BudgetExceeded& e) {
        EXPECT_FALSE(e.partial_sequence().empty());
        EXPECT_NE(std::string(e.what()).find("budget exceeded"), std::string::npos);
    }
}
