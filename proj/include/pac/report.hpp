#pragma once

#include <string>
#include <vector>

#include "pac/certify.hpp"
#include "pac/io.hpp"
#include "pac/search.hpp"

namespace pac {

inline json to_json(const Rect& r) {
    return {{"x0", json_real(r.x0)}, {"y0", json_real(r.y0)}, {"x1", json_real(r.x1)}, {"y1", json_real(r.y1)}};
}

inline json to_json(const StripCertificate& c) {
    json sums = json::array();
    for (double s : c.direction_sums) sums.push_back(json_real(s));
    return {{"pass", c.passes()},
            {"direction_sums", std::move(sums)},
            {"averaged_sum", json_real(c.averaged_sum)},
            {"perimeter", json_real(c.perimeter)},
            {"area", json_real(c.area)},
            {"averaged_matches_perimeter", c.averaged_matches_perimeter()},
            {"averaged_within_area", c.averaged_within_area()}};
}

inline json to_json(const BumpStep& s) {
    json rects = json::array();
    for (const Rect& r : s.bump_rectangles) rects.push_back(to_json(r));
    const auto sr = s.step_ratio();
    return {{"pass", s.passes()},
            {"case_id", s.case_id},
            {"route", to_string(s.route)},
            {"delta_p", json_real(s.delta_p)},
            {"delta_a", json_real(s.delta_a)},
            {"step_ratio", sr ? json_real(*sr) : json(nullptr)},
            {"no_op", s.no_op()},
            {"chain_bound", s.chain_bound ? json_real(*s.chain_bound) : json(nullptr)},
            {"ratio_ok", s.ratio_ok},
            {"chain_ok", s.chain_ok},
            {"bump_rectangles", std::move(rects)}};
}

inline json to_json(const StripClassification& c) {
    json segs = json::array();
    for (const auto& seg : c.segments) {
        segs.push_back({{"a", {json_real(seg.a.x), json_real(seg.a.y)}},
                        {"b", {json_real(seg.b.x), json_real(seg.b.y)}},
                        {"class", seg.strip_class ? to_string(*seg.strip_class) : "?"}});
    }
    return {{"pass", c.passes()},
            {"h", json_real(c.h)},
            {"v", json_real(c.v)},
            {"delta_p", json_real(c.delta_p)},
            {"delta_a", json_real(c.delta_a)},
            {"perimeter_ok", c.perimeter_ok()},
            {"area_ok", c.area_ok()},
            {"segments", std::move(segs)}};
}

inline json to_json(const SearchSettings& s) {
    return {{"n", s.n_squares},         {"oriented", s.oriented},
            {"box", json_real(s.box)},  {"seed", s.seed},
            {"max_evals", s.max_evals}, {"restarts", s.restarts},
            {"filter", s.filter_enabled}, {"penalty_weight", json_real(s.penalty_weight)}};
}

/// Thread count is left out on purpose: the report does not depend on it.
inline json to_json(const SearchReport& r) {
    json history = json::array();
    for (const auto& [idx, value] : r.history) history.push_back({idx, json_real(value)});
    json restarts = json::array();
    for (double v : r.restart_best) restarts.push_back(json_real(v));
    return {{"settings", to_json(r.settings)},
            {"best", to_json(r.best)},
            {"best_ratio", json_real(r.best_ratio)},
            {"evals", r.evals},
            {"filter_prunes", r.filter_prunes},
            {"geometry_failures", r.geometry_failures},
            {"bound_violations", r.bound_violations},
            {"max_evaluated_ratio", json_real(r.max_evaluated_ratio)},
            {"best_passes_filter", r.best_passes_filter},
            {"filter_witness", r.filter_witness ? json(*r.filter_witness) : json(nullptr)},
            {"restart_best", std::move(restarts)},
            {"history", std::move(history)}};
}

struct RunManifest {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::uint64_t seed = 1;
    std::string version;
    double wall_time_s = 0.0;
    std::vector<std::string> outputs;
};

inline json to_json(const RunManifest& m) {
    return {{"subcommand", m.subcommand}, {"inputs", m.inputs},
            {"seed", m.seed},             {"version", m.version},
            {"wall_time_s", json_real(m.wall_time_s)}, {"outputs", m.outputs}};
}

/// Pretty-printed with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pac
