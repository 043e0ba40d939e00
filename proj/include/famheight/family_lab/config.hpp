#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "famheight/heights_ff/family.hpp"
#include "famheight/heights_nf/height_value.hpp"

namespace famheight {

/// One experiment: a family, a section or hypersurface cycle over Z[t], and how to sample t.
struct ExperimentConfig {
    FamilyMorphism family;
    std::variant<FFPoint, QtCycle> cycle{FFPoint{}};
    std::vector<long> buckets;          // strictly increasing height bounds
    unsigned count = 40;                // samples per bucket
    std::uint64_t seed = 0;
    double tol = 1e-9;                  // fiber canonical-height tolerance
    unsigned n_max = 0;                 // 0: per-routine default
    double trend_tol = 0.1;             // top-bucket mean |ratio - generic| for a "consistent" verdict
    std::vector<double> epsilons{0.1};  // two-sided grid
    unsigned workers = 1;
    StopRule mode = StopRule::automatic;
    std::vector<BigRat> taus;           // explicit parameters; replaces sampling when non-empty

    bool is_point() const { return std::holds_alternative<FFPoint>(cycle); }
    const FFPoint& point() const { return std::get<FFPoint>(cycle); }
    const QtCycle& hypersurface() const { return std::get<QtCycle>(cycle); }
};

inline StopRule parse_stop_rule(const std::string& s) {
    if (s == "rigorous") return StopRule::rigorous;
    if (s == "heuristic") return StopRule::heuristic;
    if (s == "automatic" || s == "auto") return StopRule::automatic;
    throw InputError("unknown mode '" + s + "' (rigorous|heuristic)");
}

namespace detail {

inline std::string json_text(const nlohmann::json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InputError(std::string(what) + ": expected a string or integer");
}

template <class T>
T json_get(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("config key '") + key + "' has the wrong type");
    }
}

inline FFPoint parse_point_data(const nlohmann::json& data) {
    if (data.is_string()) return FFPoint::parse(data.get<std::string>());
    if (!data.is_array()) throw InputError("cycle.data for a point: expected \"a : b\" or a list of coordinates");
    std::string text;
    for (std::size_t i = 0; i < data.size(); ++i) text += (i ? ":" : "") + json_text(data[i], "point coordinate");
    return FFPoint::parse(text);
}

// ["x - t*y", ...] or [{"form": "...", "mult": 2}, ...] or [["...", 2], ...]
inline QtCycle parse_cycle_data(unsigned N, const nlohmann::json& data) {
    std::vector<std::pair<std::string, unsigned>> parts;
    auto one = [&](const nlohmann::json& c) {
        if (c.is_string())
            parts.emplace_back(c.get<std::string>(), 1);
        else if (c.is_object())
            parts.emplace_back(json_text(c.at("form"), "cycle form"), json_get<unsigned>(c, "mult", 1));
        else if (c.is_array() && c.size() == 2)
            parts.emplace_back(json_text(c[0], "cycle form"), c[1].get<unsigned>());
        else
            throw InputError("cycle.data: unrecognized component");
    };
    if (data.is_array())
        for (const auto& c : data) one(c);
    else
        one(data);
    return QtCycle::parse(N, parts);
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (!j.is_object()) throw InputError("config must be a JSON object");
        const auto& fam = j.at("family");
        std::vector<std::string> forms;
        for (const auto& f : fam.at("forms")) forms.push_back(detail::json_text(f, "family form"));
        cfg.family = FamilyMorphism::parse(forms);
        if (fam.contains("N") && fam.at("N").get<unsigned>() != cfg.family.N())
            throw InputError("family.N does not match the number of forms");
        if (fam.contains("d") && fam.at("d").get<unsigned>() != cfg.family.degree())
            throw InputError("family.d does not match the degree of the forms");

        const auto& cyc = j.at("cycle");
        const std::string kind = cyc.at("kind").get<std::string>();
        if (kind == "point") {
            cfg.cycle = detail::parse_point_data(cyc.at("data"));
            if (cfg.point().coords().size() != cfg.family.N() + 1) throw InputError("cycle point has the wrong number of coordinates");
        } else if (kind == "hypersurface") {
            cfg.cycle = detail::parse_cycle_data(cfg.family.N(), cyc.at("data"));
        } else {
            throw InputError("cycle.kind must be point or hypersurface");
        }

        cfg.buckets = detail::json_get<std::vector<long>>(j, "buckets", {});
        cfg.count = detail::json_get<unsigned>(j, "count", cfg.count);
        cfg.seed = detail::json_get<std::uint64_t>(j, "seed", cfg.seed);
        cfg.tol = detail::json_get<double>(j, "tol", cfg.tol);
        cfg.n_max = detail::json_get<unsigned>(j, "n_max", cfg.n_max);
        cfg.trend_tol = detail::json_get<double>(j, "trend_tol", cfg.trend_tol);
        cfg.epsilons = detail::json_get<std::vector<double>>(j, "epsilons", cfg.epsilons);
        cfg.workers = detail::json_get<unsigned>(j, "workers", cfg.workers);
        cfg.mode = parse_stop_rule(detail::json_get<std::string>(j, "mode", "automatic"));
        if (j.contains("taus"))
            for (const auto& t : j.at("taus")) cfg.taus.push_back(parse_rational(detail::json_text(t, "taus entry")));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }

    if (cfg.taus.empty()) {
        if (cfg.buckets.empty()) throw InputError("config: buckets must be non-empty");
        for (std::size_t i = 0; i < cfg.buckets.size(); ++i) {
            if (cfg.buckets[i] < 1) throw InputError("config: bucket bounds must be positive");
            if (i && cfg.buckets[i] <= cfg.buckets[i - 1]) throw InputError("config: buckets must be strictly increasing");
        }
    }
    if (cfg.count < 1) throw InputError("config: count must be at least 1");
    if (!(cfg.tol > 0)) throw InputError("config: tol must be positive");
    if (cfg.workers < 1) cfg.workers = 1;
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace famheight
