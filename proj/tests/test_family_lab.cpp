#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "famheight/family_lab/experiments.hpp"

using namespace famheight;
using nlohmann::json;

namespace {

json base_config(std::vector<std::string> forms, json cycle, std::vector<long> buckets, unsigned count = 10) {
    return json{{"family", {{"N", forms.size() - 1}, {"d", 2}, {"forms", forms}}},
                {"cycle", cycle},
                {"buckets", buckets},
                {"count", count},
                {"seed", 11},
                {"tol", 1e-9}};
}

json mandelbrot_config(std::vector<long> buckets, unsigned count = 10) {
    return base_config({"x^2 + t*y^2", "y^2"}, {{"kind", "point"}, {"data", "0:1"}}, buckets, count);
}

std::vector<BigRat> taus(const std::vector<SampledParameter>& s) {
    std::vector<BigRat> out;
    for (const auto& p : s) out.push_back(p.tau);
    return out;
}

}  // namespace

TEST(Config, ParsesAndValidates) {
    auto cfg = config_from_json(mandelbrot_config({10, 100}));
    EXPECT_TRUE(cfg.is_point());
    EXPECT_EQ(cfg.family.degree(), 2u);
    EXPECT_EQ(cfg.buckets.size(), 2u);
    EXPECT_DOUBLE_EQ(cfg.trend_tol, 0.1);

    auto bad = mandelbrot_config({100, 10});
    EXPECT_THROW(config_from_json(bad), InputError);
    bad = mandelbrot_config({10});
    bad["family"]["d"] = 3;
    EXPECT_THROW(config_from_json(bad), InputError);
    bad = mandelbrot_config({10});
    bad.erase("cycle");
    EXPECT_THROW(config_from_json(bad), InputError);
    bad = mandelbrot_config({10});
    bad["cycle"]["kind"] = "curve";
    EXPECT_THROW(config_from_json(bad), InputError);
    bad = mandelbrot_config({10});
    bad["mode"] = "fast";
    EXPECT_THROW(config_from_json(bad), InputError);

    auto hyp = base_config({"x^2 + t*z^2", "y^2", "z^2"}, {{"kind", "hypersurface"}, {"data", {"x + y + z"}}}, {10});
    EXPECT_FALSE(config_from_json(hyp).is_point());
    hyp["cycle"]["data"] = json::array({json{{"form", "x - t*z"}, {"mult", 2}}});
    EXPECT_EQ(config_from_json(hyp).hypersurface().degree(), 2u);
}

TEST(Sampling, SmallShellIsEnumerated) {
    auto cfg = config_from_json(mandelbrot_config({3}, 100));
    auto s = taus(sample_parameters(cfg, experiment_locus(cfg)));
    // oracle: reduced a/b with max(|a|, b) <= 3, listed by hand
    std::set<BigRat> expected;
    for (const char* t : {"0", "1", "-1", "2", "-2", "3", "-3", "1/2", "-1/2", "3/2", "-3/2", "1/3", "-1/3", "2/3", "-2/3"})
        expected.insert(parse_rational(t));
    EXPECT_EQ(std::set<BigRat>(s.begin(), s.end()), expected);
    EXPECT_EQ(s.size(), expected.size());
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_TRUE(detail::sample_less(s[i - 1], s[i]));
}

TEST(Sampling, GuardExcludesBadParameters) {
    auto j = base_config({"t*x^2", "y^2"}, {{"kind", "point"}, {"data", "1:1"}}, {3}, 100);
    auto cfg = config_from_json(j);
    auto s = taus(sample_parameters(cfg, experiment_locus(cfg)));
    EXPECT_EQ(s.size(), 14u);
    for (const auto& t : s) EXPECT_NE(t, 0);
}

TEST(Sampling, EmptyBucketIsAnError) {
    auto j = base_config({"t^3*x^2 - t*x^2", "y^2"}, {{"kind", "point"}, {"data", "1:1"}}, {1, 5});
    auto cfg = config_from_json(j);
    try {
        sample_parameters(cfg, experiment_locus(cfg));
        FAIL();
    } catch (const ComputationError& e) {
        EXPECT_NE(std::string(e.what()).find("bucket 1 "), std::string::npos) << e.what();
    }
}

TEST(Sampling, DeterministicAndShellBounded) {
    auto cfg = config_from_json(mandelbrot_config({10, 1000, 100000}, 25));
    const auto gl = experiment_locus(cfg);
    auto a = sample_parameters(cfg, gl), b = sample_parameters(cfg, gl);
    EXPECT_EQ(taus(a), taus(b));
    for (const auto& p : a) {
        const long h = detail::naive_height_int(p.tau);
        EXPECT_LE(h, cfg.buckets[p.bucket]);
        if (p.bucket) EXPECT_GT(h, cfg.buckets[p.bucket - 1]);
    }
    EXPECT_EQ(a.size(), 75u);
    cfg.seed = 12;
    EXPECT_NE(taus(sample_parameters(cfg, gl)), taus(a));
}

TEST(Experiments, RecordConsistency) {
    auto cfg = config_from_json(mandelbrot_config({10, 100}, 8));
    auto res = ratio_convergence(cfg);
    ASSERT_TRUE(res.generic.exact.has_value());
    EXPECT_EQ(*res.generic.exact, BigRat(1, 2));
    for (const auto& r : res.records) {
        if (r.h_S > 0) {
            ASSERT_TRUE(r.ratio.has_value());
            EXPECT_NEAR(*r.ratio * r.h_S, r.hhat_fiber, 1e-12 * std::max(1.0, r.hhat_fiber));
        } else {
            EXPECT_FALSE(r.ratio.has_value());
        }
        EXPECT_DOUBLE_EQ(r.abs_gap, std::fabs(r.h_naive_fiber - r.hhat_fiber));
        EXPECT_DOUBLE_EQ(r.gap_ratio, r.abs_gap / (r.h_S + 1));
        EXPECT_TRUE(std::isfinite(r.hhat_fiber));
    }
}

TEST(Experiments, RatioMandelbrotIsConsistent) {
    auto cfg = config_from_json(mandelbrot_config({10, 100, 1000, 10000}, 20));
    auto res = ratio_convergence(cfg);
    EXPECT_EQ(res.verdict, "consistent");
    EXPECT_LT(res.buckets.back().mean_abs_dev, 0.1);
}

TEST(Experiments, ConstantFamilyAndDegenerateRatio) {
    auto j = base_config({"x^2 - y^2", "y^2"}, {{"kind", "point"}, {"data", "0:1"}}, {10, 100});
    auto res = ratio_convergence(config_from_json(j));
    EXPECT_EQ(res.generic.value, 0);
    EXPECT_EQ(res.verdict, "consistent");

    auto one = mandelbrot_config({10});
    one.erase("buckets");
    one["taus"] = {"7/3"};
    EXPECT_EQ(ratio_convergence(config_from_json(one)).verdict, "insufficient data");
}

TEST(Experiments, CsBound) {
    auto pw = base_config({"x^2", "y^2"}, {{"kind", "point"}, {"data", "t:1"}}, {10, 100});
    auto res = cs_bound_fit(config_from_json(pw));
    EXPECT_EQ(res.C, 0);
    auto mb = cs_bound_fit(config_from_json(mandelbrot_config({10, 100, 1000}, 10)));
    EXPECT_GT(mb.C, 0);
    EXPECT_TRUE(std::isfinite(mb.C));
    EXPECT_EQ(mb.verdict, "bounded");

    auto bad = base_config({"t*x^2", "y^2"}, {{"kind", "point"}, {"data", "1:1"}}, {10});
    bad.erase("buckets");
    bad["taus"] = {"2", "0"};
    try {
        cs_bound_fit(config_from_json(bad));
        FAIL();
    } catch (const BadParameter& e) {
        EXPECT_NE(std::string(e.what()).find("t=0"), std::string::npos);
    }
}

TEST(Experiments, TwoSided) {
    auto pw = base_config({"x^2", "y^2"}, {{"kind", "point"}, {"data", "t:1"}}, {10, 100});
    auto p = two_sided_check(config_from_json(pw));
    ASSERT_EQ(p.C_eps.size(), 1u);
    EXPECT_NEAR(p.C_eps[0].second, 0, 1e-9);

    auto m = two_sided_check(config_from_json(mandelbrot_config({10, 100}, 10)));
    EXPECT_TRUE(std::isfinite(m.C_eps[0].second));
    EXPECT_EQ(m.verdict, "unstable");

    auto c = base_config({"x^2 - 2*y^2", "x*y + 3*y^2"}, {{"kind", "point"}, {"data", "5:7"}}, {10}, 3);
    EXPECT_EQ(two_sided_check(config_from_json(c)).verdict, "stable");
}

TEST(Experiments, HypersurfaceCycle) {
    auto j = base_config({"x^2 + t*y^2", "y^2"}, {{"kind", "hypersurface"}, {"data", {"x"}}}, {10, 100}, 6);
    j["tol"] = 1e-6;
    auto res = ratio_convergence(config_from_json(j));
    EXPECT_NEAR(res.generic.value, 0.5, 1e-6);
    EXPECT_EQ(res.records.size(), 12u);
}

TEST(Experiments, OutputIndependentOfWorkers) {
    auto j = mandelbrot_config({10, 1000}, 12);
    auto cfg = config_from_json(j);
    cfg.workers = 1;
    const std::string one = records_csv(ratio_convergence(cfg).records);
    cfg.workers = 3;
    const std::string three = records_csv(ratio_convergence(cfg).records);
    EXPECT_EQ(one, three);
    std::istringstream in(one);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "tau_num,tau_den,h_S,hhat_fiber,hhat_radius,h_naive_fiber,ratio,gap_ratio");
}

TEST(Experiments, CsvFormatting) {
    EXPECT_EQ(format_g12(0.5), "0.5");
    EXPECT_EQ(format_g12(std::log(2.0)), "0.69314718056");
    EXPECT_EQ(format_g12(std::nan("")), "nan");
    auto j = mandelbrot_config({10});
    j.erase("buckets");
    j["taus"] = {"0", "-1"};
    auto csv = records_csv(ratio_convergence(config_from_json(j)).records);
    EXPECT_NE(csv.find("-1,1,0,0,0,0,nan,0\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("\n0,1,0,0,"), std::string::npos) << csv;
}
