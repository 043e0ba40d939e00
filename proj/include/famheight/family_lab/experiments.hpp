#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "famheight/family_lab/config.hpp"
#include "famheight/family_lab/sampling.hpp"
#include "famheight/heights_ff/ff_heights.hpp"
#include "famheight/heights_nf/hypersurface.hpp"
#include "famheight/heights_nf/point.hpp"

namespace famheight {

/// Fiber data at one parameter.
struct ExperimentRecord {
    BigRat tau;
    std::size_t bucket = 0;
    double h_S = 0;
    double hhat_fiber = 0;
    double hhat_radius = 0;
    HeightMode mode = HeightMode::rigorous;
    bool converged = true;
    double h_naive_fiber = 0;
    std::optional<double> ratio;  // only when h_S > 0
    double hhat_generic = 0;
    double abs_gap = 0;
    double gap_ratio = 0;
    std::vector<double> sequence;
};

/// Generic-fiber value of the configured cycle.
inline HeightValue generic_height(const ExperimentConfig& cfg) {
    if (cfg.is_point()) return ff_canonical_height_point(cfg.family, cfg.point());
    FFHeightOptions opt;
    opt.n_max = cfg.family.N() == 1 ? 10 : 4;
    opt.tol = 1e-6;
    return ff_canonical_height_hypersurface(cfg.family, cfg.hypersurface(), opt);
}

inline GoodLocus experiment_locus(const ExperimentConfig& cfg) {
    return cfg.is_point() ? good_locus(cfg.family) : good_locus(cfg.family, &cfg.hypersurface());
}

inline ExperimentRecord fiber_record(const ExperimentConfig& cfg, const GoodLocus& gl, const SampledParameter& s,
                                     double generic) {
    gl.check(s.tau);
    ExperimentRecord r;
    r.tau = s.tau;
    r.bucket = s.bucket;
    r.h_S = parameter_height(s.tau).value;
    r.hhat_generic = generic;
    const QMorphism f = specialize(cfg.family, s.tau);
    HeightValue h;
    if (cfg.is_point()) {
        const RatPoint P = specialize(cfg.point(), s.tau);
        PointHeightOptions opt;
        opt.tol = cfg.tol;
        if (cfg.n_max) opt.n_max = cfg.n_max;
        opt.rule = cfg.mode;
        h = canonical_height_point(f, P, opt);
        r.h_naive_fiber = naive_height(P).value;
    } else {
        const QCycle Y = specialize(cfg.hypersurface(), s.tau);
        HypersurfaceHeightOptions opt;
        opt.tol = cfg.tol;
        opt.n_max = cfg.n_max;
        h = canonical_height_hypersurface(f, Y, opt);
        r.h_naive_fiber = hypersurface_height(Y).value;
    }
    r.hhat_fiber = h.value;
    r.hhat_radius = h.radius;
    r.mode = h.mode;
    r.converged = h.converged;
    r.sequence = std::move(h.sequence);
    if (r.h_S > 0) r.ratio = r.hhat_fiber / r.h_S;
    r.abs_gap = std::fabs(r.h_naive_fiber - r.hhat_fiber);
    r.gap_ratio = r.abs_gap / (r.h_S + 1);
    return r;
}

/// Evaluates every parameter, up to `workers` at a time. Output order is the sample order.
/// On failure the error of the first failing parameter (in sample order) is raised.
inline std::vector<ExperimentRecord> run_records(const ExperimentConfig& cfg, const std::vector<SampledParameter>& taus,
                                                 const GoodLocus& gl, double generic) {
    std::vector<ExperimentRecord> out(taus.size());
    std::vector<std::exception_ptr> errors(taus.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < taus.size();) {
            try {
                out[i] = fiber_record(cfg, gl, taus[i], generic);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(taus.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const BadParameter&) {
            throw;
        } catch (const std::exception& e) {
            throw ComputationError("at t=" + to_string(taus[i].tau) + ": " + e.what());
        }
    }
    return out;
}

/// Per-bucket statistics.
struct BucketSummary {
    long bound = 0;
    std::size_t samples = 0;
    std::size_t ratio_samples = 0;
    double mean_abs_dev = 0;  // mean |ratio - generic|
    double max_abs_dev = 0;
    double max_gap_ratio = 0;
};

struct ExperimentResult {
    std::string kind;  // ratio | cs-bound | two-sided
    HeightValue generic;
    std::vector<ExperimentRecord> records;
    std::vector<BucketSummary> buckets;
    std::string verdict;
    double C = 0;                                 // cs-bound fit
    std::vector<std::pair<double, double>> C_eps;  // two-sided table
    bool unstable = false;
};

namespace detail {

inline std::vector<BucketSummary> summarize_buckets(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& recs,
                                                    double generic) {
    const std::size_t nb = cfg.taus.empty() ? cfg.buckets.size() : 1;
    std::vector<BucketSummary> b(nb);
    for (std::size_t k = 0; k < nb; ++k) b[k].bound = cfg.taus.empty() ? cfg.buckets[k] : 0;
    for (const auto& r : recs) {
        auto& s = b[r.bucket];
        ++s.samples;
        s.max_gap_ratio = std::max(s.max_gap_ratio, r.gap_ratio);
        if (!r.ratio) continue;
        const double dev = std::fabs(*r.ratio - generic);
        ++s.ratio_samples;
        s.mean_abs_dev += dev;
        s.max_abs_dev = std::max(s.max_abs_dev, dev);
    }
    for (auto& s : b)
        if (s.ratio_samples) s.mean_abs_dev /= static_cast<double>(s.ratio_samples);
    return b;
}

// consistent: means non-increasing from the second bucket on and the top mean below trend_tol
inline std::string ratio_verdict(const std::vector<BucketSummary>& b, double trend_tol) {
    std::vector<const BucketSummary*> used;
    for (const auto& s : b)
        if (s.ratio_samples) used.push_back(&s);
    std::size_t total = 0;
    for (const auto* s : used) total += s->ratio_samples;
    if (used.size() < 2 || total < 2) return "insufficient data";
    for (std::size_t i = 2; i < used.size(); ++i)
        if (used[i]->mean_abs_dev > used[i - 1]->mean_abs_dev) return "inconsistent";
    return used.back()->mean_abs_dev < trend_tol ? "consistent" : "inconsistent";
}

}  // namespace detail

/// Shared front half of the three experiments.
inline ExperimentResult run_experiment_records(const ExperimentConfig& cfg, const std::string& kind) {
    ExperimentResult res;
    res.kind = kind;
    res.generic = generic_height(cfg);
    const GoodLocus gl = experiment_locus(cfg);
    const auto taus = sample_parameters(cfg, gl);
    res.records = run_records(cfg, taus, gl, res.generic.value);
    res.buckets = detail::summarize_buckets(cfg, res.records, res.generic.value);
    return res;
}

/// Ratio h_hat(f_t, Y_t) / h_S(t) against the generic value, bucket by bucket.
inline ExperimentResult ratio_convergence(const ExperimentConfig& cfg) {
    ExperimentResult res = run_experiment_records(cfg, "ratio");
    res.verdict = detail::ratio_verdict(res.buckets, cfg.trend_tol);
    return res;
}

/// C := max gap_ratio = |h(Y_t) - h_hat(Y_t)| / (h_S(t) + 1) over the sample.
inline ExperimentResult cs_bound_fit(const ExperimentConfig& cfg) {
    ExperimentResult res = run_experiment_records(cfg, "cs-bound");
    for (const auto& r : res.records) res.C = std::max(res.C, r.gap_ratio);
    const auto& b = res.buckets;
    const double top = b.back().max_gap_ratio, mid = b[(b.size() - 1) / 2].max_gap_ratio;
    res.verdict = top <= 2 * mid || top == 0 ? "bounded" : "growing";
    return res;
}

/// C(eps) := max(0, max_t |h_hat(Y_t) - g h_S(t)| - eps h_S(t)) for each eps; unstable iff g exceeds its radius.
inline ExperimentResult two_sided_check(const ExperimentConfig& cfg) {
    ExperimentResult res = run_experiment_records(cfg, "two-sided");
    const double g = res.generic.value;
    for (double eps : cfg.epsilons) {
        double C = 0;
        for (const auto& r : res.records) C = std::max(C, std::fabs(r.hhat_fiber - g * r.h_S) - eps * r.h_S);
        res.C_eps.emplace_back(eps, C);
    }
    res.unstable = g > res.generic.radius;
    res.verdict = res.unstable ? "unstable" : "stable";
    return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& kind) {
    if (kind == "ratio") return ratio_convergence(cfg);
    if (kind == "cs-bound") return cs_bound_fit(cfg);
    if (kind == "two-sided") return two_sided_check(cfg);
    throw InputError("unknown experiment '" + kind + "' (ratio|cs-bound|two-sided)");
}

inline std::string format_g12(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string records_csv(const std::vector<ExperimentRecord>& recs) {
    std::string s = "tau_num,tau_den,h_S,hhat_fiber,hhat_radius,h_naive_fiber,ratio,gap_ratio\n";
    for (const auto& r : recs) {
        s += r.tau.get_num().get_str() + "," + r.tau.get_den().get_str() + "," + format_g12(r.h_S) + "," +
             format_g12(r.hhat_fiber) + "," + format_g12(r.hhat_radius) + "," + format_g12(r.h_naive_fiber) + "," +
             format_g12(r.ratio ? *r.ratio : std::numeric_limits<double>::quiet_NaN()) + "," + format_g12(r.gap_ratio) +
             "\n";
    }
    return s;
}

inline nlohmann::json height_json(const HeightValue& h) {
    nlohmann::json j{{"value", h.value}, {"radius", h.radius}, {"mode", to_string(h.mode)},
                     {"converged", h.converged}, {"iterations", h.iterations}, {"sequence", h.sequence}};
    if (h.exact) j["exact"] = to_string(*h.exact);
    return j;
}

inline nlohmann::json summary_json(const ExperimentResult& res) {
    nlohmann::json j;
    j["experiment"] = res.kind;
    j["hhat_generic"] = height_json(res.generic);
    j["verdict"] = res.verdict;
    for (const auto& b : res.buckets)
        j["buckets"].push_back({{"bound", b.bound},
                                {"samples", b.samples},
                                {"ratio_samples", b.ratio_samples},
                                {"mean_abs_dev", b.mean_abs_dev},
                                {"max_abs_dev", b.max_abs_dev},
                                {"max_gap_ratio", b.max_gap_ratio}});
    if (res.kind == "cs-bound") j["C"] = res.C;
    if (res.kind == "two-sided") {
        for (const auto& [eps, C] : res.C_eps) j["C_eps"].push_back({{"eps", eps}, {"C", C}});
        j["unstable"] = res.unstable;
    }
    for (const auto& r : res.records)
        j["records"].push_back({{"tau", to_string(r.tau)},
                                {"abs_gap", r.abs_gap},
                                {"mode", to_string(r.mode)},
                                {"converged", r.converged},
                                {"sequence", r.sequence}});
    return j;
}

/// Writes `<out>` (CSV) and `<out>.summary.json`.
inline void write_outputs(const ExperimentResult& res, const std::string& out) {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw InputError("cannot write '" + out + "'");
    csv << records_csv(res.records);
    std::ofstream js(out + ".summary.json", std::ios::binary);
    if (!js) throw InputError("cannot write '" + out + ".summary.json'");
    js << summary_json(res).dump(2) << "\n";
}

}  // namespace famheight
