// Acceptance run: each criterion prints one PASS/FAIL line with its timing.
// Exit status is the number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "famheight/famheight.hpp"
#include "famheight/family_lab/experiments.hpp"

using namespace famheight;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

RatPoint random_point(std::mt19937_64& rng, std::size_t n, long range) {
    std::uniform_int_distribution<long> c(-range, range);
    while (true) {
        std::vector<BigInt> v;
        bool nz = false;
        for (std::size_t i = 0; i < n; ++i) {
            v.emplace_back(c(rng));
            nz = nz || v.back() != 0;
        }
        if (nz) return RatPoint::from_integers(v);
    }
}

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

json mandelbrot_config(std::vector<long> buckets, unsigned count) {
    return json{{"family", {{"N", 1}, {"d", 2}, {"forms", {"x^2 + t*y^2", "y^2"}}}},
                {"cycle", {{"kind", "point"}, {"data", "0:1"}}},
                {"buckets", buckets},
                {"count", count},
                {"seed", 20240601},
                {"tol", 1e-9}};
}

Outcome power_map_identity() {
    std::mt19937_64 rng(1);
    double worst = 0;
    for (unsigned d : {2u, 3u}) {
        const std::string e = std::to_string(d);
        auto f = QMorphism::parse({"x^" + e, "y^" + e});
        for (int i = 0; i < 100; ++i) {
            RatPoint p = random_point(rng, 2, 1000000);
            worst = std::max(worst, std::fabs(canonical_height_point(f, p).value - naive_height(p).value));
        }
    }
    return {worst <= 1e-9, "max |hhat - h| = " + fmt("%.3g", worst)};
}

Outcome preperiodic_zero() {
    auto h = canonical_height_point(QMorphism::parse({"x^2 - y^2", "y^2"}), RatPoint::parse("0:1"));
    return {h.value <= 1e-9 && h.value >= -1e-9, "hhat = " + fmt("%.3g", h.value) + ", mode " + to_string(h.mode)};
}

Outcome functional_equation() {
    const std::vector<std::vector<std::string>> pool{{"x^2 + y^2", "y^2"},
                                                     {"x^2 - 2*y^2", "x*y + 3*y^2"},
                                                     {"2*x^3 - y^3", "x*y^2 + y^3"},
                                                     {"x^2 + y*z", "y^2", "z^2"},
                                                     {"x^2 - z^2", "y^2 + x*z", "z^2"}};
    std::mt19937_64 rng(3);
    int bad = 0, total = 0;
    double worst_excess = 0;
    for (const auto& forms : pool) {
        auto f = QMorphism::parse(forms);
        const double d = f.degree();
        for (int i = 0; i < 50; ++i) {
            RatPoint p = random_point(rng, forms.size(), 50);
            auto hp = canonical_height_point(f, p);
            auto hfp = canonical_height_point(f, apply(f, p));
            const double lhs = std::fabs(hfp.value - d * hp.value);
            const double rhs = 2 * (hfp.radius + d * hp.radius);
            ++total;
            if (!(lhs <= rhs + 1e-12)) {
                ++bad;
                worst_excess = std::max(worst_excess, lhs - rhs);
            }
        }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " within 2x radii" +
                          (bad ? ", worst excess " + fmt("%.3g", worst_excess) : "")};
}

Outcome generic_mandelbrot() {
    auto f = FamilyMorphism::parse({"x^2 + t*y^2", "y^2"});
    auto h = ff_canonical_height_point(f, FFPoint::parse("0 : 1"), 10);
    const bool ok = h.exact && *h.exact == BigRat(1, 2) && h.radius == 0 && h.mode == HeightMode::rigorous;
    return {ok, "value " + (h.exact ? to_string(*h.exact) : fmt("%.12g", h.value)) + ", radius " + fmt("%g", h.radius) +
                    ", " + to_string(h.mode)};
}

Outcome ratio_trend() {
    auto res = ratio_convergence(config_from_json(mandelbrot_config({10, 100, 1000, 10000, 100000}, 40)));
    bool mono = true;
    for (std::size_t i = 2; i < res.buckets.size(); ++i)
        mono = mono && res.buckets[i].mean_abs_dev <= res.buckets[i - 1].mean_abs_dev;
    const double top = res.buckets.back().mean_abs_dev;
    std::string means;
    for (const auto& b : res.buckets) means += (means.empty() ? "" : ", ") + fmt("%.4g", b.mean_abs_dev);
    return {mono && top < 0.1, "bucket means [" + means + "], verdict " + res.verdict};
}

Outcome plane_curve_invariance() {
    auto f = FamilyMorphism::parse({"x^2 + t*z^2", "y^2", "z^2"});
    auto Y = QtCycle::parse(2, {{"x + y + z", 1}});
    auto h = ff_canonical_height_hypersurface(f, Y, 4);
    auto hf = ff_canonical_height_hypersurface(f, pushforward_divisor(f.base(), Y), 4);
    const double gap = std::fabs(hf.value - 2 * h.value);
    return {gap <= 1e-4, "hhat(Y) = " + fmt("%.10g", h.value) + ", hhat(f_*Y) = " + fmt("%.10g", hf.value) +
                             ", gap " + fmt("%.3g", gap)};
}

QPoly random_form(std::mt19937_64& rng, std::size_t nvars, unsigned deg, long range) {
    std::uniform_int_distribution<long> c(-range, range);
    std::vector<Monomial> monos;
    std::function<void(std::size_t, unsigned, Monomial&)> gen = [&](std::size_t i, unsigned left, Monomial& m) {
        if (i + 1 == nvars) {
            m[i] = left;
            monos.push_back(m);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            m[i] = left - k;
            gen(i + 1, k, m);
        }
    };
    Monomial m(nvars, 0);
    gen(0, deg, m);
    while (true) {
        QPoly p(nvars);
        for (const auto& mono : monos) p.add_term(mono, BigRat(c(rng)));
        if (!p.is_zero() && p.total_degree() == deg) return p;
    }
}

Outcome degree_contract() {
    std::mt19937_64 rng(7);
    int ok = 0, total = 0;
    std::string first_failure;
    while (total < 50) {
        const unsigned N = total % 2 ? 2 : 1;
        const unsigned d = N == 1 && total % 4 == 0 ? 3 : 2;
        std::vector<QPoly> forms;
        for (unsigned i = 0; i <= N; ++i) forms.push_back(random_form(rng, N + 1, d, 3));
        QMorphism f;
        try {
            f = QMorphism::make(forms);
        } catch (const InputError&) {
            continue;  // not a morphism; draw again
        }
        std::vector<std::pair<QPoly, unsigned>> parts;
        const unsigned comps = 1 + rng() % 2;
        for (unsigned c = 0; c < comps; ++c) parts.emplace_back(random_form(rng, N + 1, 1 + rng() % 2, 4), 1 + rng() % 2);
        QCycle Y = QCycle::make(N, parts);
        ++total;
        try {
            const QCycle img = pushforward_divisor(f, Y);
            unsigned expect = Y.degree();
            for (unsigned k = 1; k < N; ++k) expect *= d;
            if (img.degree() == expect)
                ++ok;
            else if (first_failure.empty())
                first_failure = f.to_string();
        } catch (const std::exception& e) {
            if (first_failure.empty()) first_failure = f.to_string() + ": " + e.what();
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " exact" +
                             (first_failure.empty() ? "" : ", first failure " + first_failure)};
}

Outcome resultant_oracle() {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> coef(-20, 20), degd(1, 4);
    int ok = 0;
    std::string first;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = static_cast<int>(degd(rng)), n = static_cast<int>(degd(rng));
        auto draw = [&](int deg) {
            std::vector<long> c(deg + 1);  // x0-descending
            for (auto& x : c) x = coef(rng);
            while (c[0] == 0) c[0] = coef(rng);
            return c;
        };
        const auto a = draw(m), b = draw(n);
        QPoly g(2), h(2);
        for (int k = 0; k <= m; ++k) g.add_term({Exponent(m - k), Exponent(k)}, BigRat(a[k]));
        for (int k = 0; k <= n; ++k) h.add_term({Exponent(n - k), Exponent(k)}, BigRat(b[k]));
        const BigRat exact = sylvester_resultant(g, h);

        // numerical oracle: Res = a0^n * prod_i h(alpha_i) over the roots of g(z, 1)
        using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        Mat comp = Mat::Zero(m, m);
        for (int k = 0; k < m; ++k) comp(0, k) = -static_cast<long double>(a[k + 1]) / a[0];
        for (int k = 1; k < m; ++k) comp(k, k - 1) = 1;
        Eigen::EigenSolver<Mat> es(comp, false);
        std::complex<long double> prod = std::pow(static_cast<long double>(a[0]), n);
        for (int i = 0; i < m; ++i) {
            const std::complex<long double> z = es.eigenvalues()[i];
            std::complex<long double> v = 0;
            for (int k = 0; k <= n; ++k) v = v * z + static_cast<long double>(b[k]);
            prod *= v;
        }
        const long long rounded = std::llroundl(prod.real());
        if (exact == BigRat(BigInt(std::to_string(rounded))))
            ++ok;
        else if (first.empty())
            first = to_string(exact) + " vs " + std::to_string(rounded);
    }
    return {ok == 50, std::to_string(ok) + "/50 exact" + (first.empty() ? "" : ", first mismatch " + first)};
}

Outcome cs_fit() {
    auto res = cs_bound_fit(config_from_json(mandelbrot_config({10, 100, 1000, 10000, 100000}, 40)));
    const auto& b = res.buckets;
    const double top = b.back().max_gap_ratio, mid = b[(b.size() - 1) / 2].max_gap_ratio;
    return {top <= 2 * mid, "top max gap_ratio " + fmt("%.4g", top) + ", median bucket " + fmt("%.4g", mid) + ", C " +
                                fmt("%.4g", res.C)};
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("famheight_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto cfg = config_from_json(mandelbrot_config({10, 100, 1000}, 20));
    std::vector<std::string> files;
    for (unsigned w : {1u, 4u, 1u, 3u}) {
        cfg.workers = w;
        const std::string out = (dir / ("run_w" + std::to_string(w) + "_" + std::to_string(files.size()) + ".csv")).string();
        write_outputs(two_sided_check(cfg), out);
        files.push_back(out);
    }
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::string ref = slurp(files[0]);
    bool same = !ref.empty();
    for (const auto& f : files) same = same && slurp(f) == ref && slurp(f + ".summary.json") == slurp(files[0] + ".summary.json");
    fs::remove_all(dir);
    return {same, std::to_string(files.size()) + " runs with workers 1,4,1,3"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {"power-map identity", 10, power_map_identity},
        {"preperiodic zero", 1, preperiodic_zero},
        {"functional equation", 120, functional_equation},
        {"generic Mandelbrot value", 1, generic_mandelbrot},
        {"ratio trend", 300, ratio_trend},
        {"plane-curve invariance", 300, plane_curve_invariance},
        {"pushforward degree contract", 120, degree_contract},
        {"resultant oracle", 10, resultant_oracle},
        {"bound fit", 300, cs_fit},
        {"determinism", 60, determinism},
    };
    int failed = 0;
    double total = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += s;
        const bool in_time = s <= c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %2zu %-28s %8.2f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, s, c.limit_s,
                    o.detail.c_str(), in_time ? "" : "  [over time limit]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed, %.2f s total\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
    return failed;
}
