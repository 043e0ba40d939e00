// famheight: command-line front end.
//
//   famheight height-point --point 3:4
//   famheight height-canonical --forms "x^2 - 2*y^2" "x*y + 3*y^2" --point 5:7
//   famheight pushforward --forms "x^2 + t*z^2" "y^2" "z^2" --cycle "x + y + z"
//   famheight generic-height --forms "x^2 + t*y^2" "y^2" --point "0:1"
//   famheight good-locus --forms "t*x^2" "y^2"
//   famheight experiment ratio --config configs/mandelbrot_ratio.json --out ratio.csv
//
// Exit codes: 0 success, 2 bad input or config, 3 computation error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "famheight/famheight.hpp"
#include "famheight/family_lab/experiments.hpp"

using namespace famheight;
using nlohmann::json;

namespace {

bool mentions_t(const std::vector<std::string>& texts) {
    for (const auto& s : texts)
        if (s.find('t') != std::string::npos) return true;
    return false;
}

std::vector<std::pair<std::string, unsigned>> cycle_parts(const std::vector<std::string>& forms,
                                                          const std::vector<unsigned>& mults) {
    if (!mults.empty() && mults.size() != forms.size()) throw InputError("--mult needs one entry per --cycle");
    std::vector<std::pair<std::string, unsigned>> parts;
    for (std::size_t i = 0; i < forms.size(); ++i) parts.emplace_back(forms[i], mults.empty() ? 1 : mults[i]);
    return parts;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heights in families of polarized endomorphisms"};
    app.require_subcommand(1);

    std::vector<std::string> forms, cycle;
    std::vector<unsigned> mults;
    std::string point, mode = "automatic", config, out;
    double tol = 0;
    unsigned n_max = 0, workers = 0;

    auto add_cycle = [&](CLI::App* sub) {
        sub->add_option("--point", point, "point, e.g. 3:4 or \"t : 1\"");
        sub->add_option("--cycle", cycle, "hypersurface component (repeatable)");
        sub->add_option("--mult", mults, "multiplicities, one per --cycle");
    };

    auto* hp = app.add_subcommand("height-point", "naive height of a point over Q or Q(t)");
    hp->add_option("--point", point)->required();

    auto* hc = app.add_subcommand("height-canonical", "canonical height over Q");
    hc->add_option("--forms", forms)->required();
    add_cycle(hc);
    hc->add_option("--tol", tol);
    hc->add_option("--n-max", n_max);
    hc->add_option("--mode", mode)->check(CLI::IsMember({"rigorous", "heuristic", "automatic"}));

    auto* pf = app.add_subcommand("pushforward", "f_* Y for a divisor Y, over Q or Z[t]");
    pf->add_option("--forms", forms)->required();
    pf->add_option("--cycle", cycle)->required();
    pf->add_option("--mult", mults);

    auto* gh = app.add_subcommand("generic-height", "canonical height on the generic fiber");
    gh->add_option("--forms", forms)->required();
    add_cycle(gh);
    gh->add_option("--n-max", n_max);

    auto* gl = app.add_subcommand("good-locus", "guards certifying good parameters");
    gl->add_option("--forms", forms)->required();
    gl->add_option("--cycle", cycle);
    gl->add_option("--mult", mults);

    auto* ex = app.add_subcommand("experiment", "ratio | cs-bound | two-sided");
    std::string kind;
    ex->add_option("kind", kind)->required()->check(CLI::IsMember({"ratio", "cs-bound", "two-sided"}));
    ex->add_option("--config", config)->required();
    ex->add_option("--out", out)->required();
    ex->add_option("--workers", workers);
    ex->add_option("--mode", mode)->check(CLI::IsMember({"rigorous", "heuristic", "automatic"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*hp) {
            json j;
            if (mentions_t({point})) {
                j["height"] = to_string(ff_height_point(FFPoint::parse(point)));
            } else {
                auto h = naive_height(RatPoint::parse(point));
                j["point"] = RatPoint::parse(point).to_string();
                j["height"] = h.value;
            }
            print(j);
        } else if (*hc) {
            if (point.empty() == cycle.empty()) throw InputError("give exactly one of --point or --cycle");
            auto f = QMorphism::parse(forms);
            HeightValue h;
            if (!point.empty()) {
                PointHeightOptions opt;
                if (tol > 0) opt.tol = tol;
                if (n_max) opt.n_max = n_max;
                opt.rule = parse_stop_rule(mode);
                h = canonical_height_point(f, RatPoint::parse(point), opt);
            } else {
                HypersurfaceHeightOptions opt;
                if (tol > 0) opt.tol = tol;
                opt.n_max = n_max;
                h = canonical_height_hypersurface(f, QCycle::parse(f.N(), cycle_parts(cycle, mults)), opt);
            }
            print(height_json(h));
        } else if (*pf) {
            json j;
            if (mentions_t(forms) || mentions_t(cycle)) {
                auto f = QtMorphism::parse(forms, false);
                j["pushforward"] = pushforward_divisor(f, QtCycle::parse(f.N(), cycle_parts(cycle, mults))).to_string();
            } else {
                auto f = QMorphism::parse(forms);
                j["pushforward"] = pushforward_divisor(f, QCycle::parse(f.N(), cycle_parts(cycle, mults))).to_string();
            }
            print(j);
        } else if (*gh) {
            if (point.empty() == cycle.empty()) throw InputError("give exactly one of --point or --cycle");
            auto f = FamilyMorphism::parse(forms);
            FFHeightOptions opt;
            if (n_max) opt.n_max = n_max;
            if (point.empty()) opt.tol = 1e-6;
            auto h = point.empty()
                         ? ff_canonical_height_hypersurface(f, QtCycle::parse(f.N(), cycle_parts(cycle, mults)), opt)
                         : ff_canonical_height_point(f, FFPoint::parse(point), opt);
            print(height_json(h));
        } else if (*gl) {
            auto f = FamilyMorphism::parse(forms);
            std::optional<QtCycle> Y;
            if (!cycle.empty()) Y = QtCycle::parse(f.N(), cycle_parts(cycle, mults));
            auto locus = good_locus(f, Y ? &*Y : nullptr);
            json j;
            for (const auto& g : locus.guards) j["guards"].push_back({{"name", g.name}, {"poly", g.poly.to_string()}});
            j["rho"] = locus.rho.to_string();
            print(j);
        } else if (*ex) {
            ExperimentConfig cfg = load_config(config);
            if (workers) cfg.workers = workers;
            if (ex->count("--mode")) cfg.mode = parse_stop_rule(mode);
            auto res = run_experiment(cfg, kind);
            write_outputs(res, out);
            std::cout << kind << ": " << res.records.size() << " records, verdict " << res.verdict << "\n";
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
