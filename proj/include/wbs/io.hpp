#pragma once

// JSON forms of the library types. Big integers travel as decimal strings and
// rationals as "p/q" strings.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wbs/bignum.hpp"
#include "wbs/classify.hpp"
#include "wbs/embed.hpp"
#include "wbs/errors.hpp"
#include "wbs/holder.hpp"
#include "wbs/metric.hpp"
#include "wbs/schreier.hpp"
#include "wbs/weaknull.hpp"

namespace wbs::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
    std::ifstream in{path};
    if (!in) throw invalid_input("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw invalid_input("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out{path};
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

// --- Schreier ---------------------------------------------------------------

inline json to_json(const SchreierSet& s) { return json(std::vector<std::uint64_t>(s.elements().begin(), s.elements().end())); }

inline SchreierSet schreier_set_from_json(const json& j) {
    if (!j.is_array()) throw invalid_input("Schreier set must be a JSON array");
    std::vector<std::uint64_t> el;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
            throw invalid_input("Schreier set elements must be positive integers");
        el.push_back(v.get<std::uint64_t>());
    }
    return SchreierSet{std::move(el)};
}

inline json to_json(const CesaroCertificate& c) {
    return json{{"N", c.N},
                {"A_N", to_json(c.witness_set)},
                {"i0", c.witness_coordinate.to_string()},
                {"mean", to_fraction(c.mean)},
                {"prefix_len", c.prefix_len},
                {"prefix", c.prefix},
                {"enumeration", c.enumeration}};
}

// --- Subsequences -------------------------------------------------------------

inline std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss{s};
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw invalid_input("expected a comma-separated list of integers, got '" + s + "'");
        }
    }
    return out;
}

/**
 * identity | affine:SLOPE,OFFSET | geometric:FIRST,RATIO |
 * random:SEED,LENGTH,MAXGAP | path to a JSON array of indices.
 */
inline Subsequence parse_subsequence(const std::string& spec) {
    auto args = [&](std::size_t prefix_len, std::size_t count) {
        auto v = parse_u64_list(spec.substr(prefix_len));
        if (v.size() != count) throw invalid_input("subsequence rule '" + spec + "' has the wrong number of arguments");
        return v;
    };
    if (spec == "identity") return Subsequence::identity();
    if (spec.rfind("affine:", 0) == 0) {
        auto v = args(7, 2);
        return Subsequence::affine(v[0], v[1]);
    }
    if (spec.rfind("geometric:", 0) == 0) {
        auto v = args(10, 2);
        return Subsequence::geometric(v[0], v[1]);
    }
    if (spec.rfind("random:", 0) == 0) {
        auto v = args(7, 3);
        return Subsequence::random(v[0], v[1], v[2]);
    }
    const json j = read_json_file(spec);
    if (!j.is_array()) throw invalid_input("subsequence file must hold a JSON array");
    return Subsequence::from_prefix(j.get<std::vector<std::uint64_t>>());
}

// --- Metric spaces --------------------------------------------------------------

inline PointMetric parse_point_metric(const std::string& name) {
    if (name == "euclidean") return PointMetric::euclidean;
    if (name == "l1") return PointMetric::l1;
    if (name == "linf") return PointMetric::linf;
    throw invalid_input("unknown metric '" + name + "'");
}

inline std::vector<std::string> labels_from_json(const json& j) {
    std::vector<std::string> labels;
    if (!j.contains("labels")) return labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    return labels;
}

/// {"points": [[...]], "metric": "euclidean"|"l1"|"linf"} or {"matrix": [[...]], "labels": [...]}.
inline FiniteMetricSpace space_from_json(const json& j) {
    try {
        if (j.contains("matrix"))
            return FiniteMetricSpace::from_matrix(labels_from_json(j), j.at("matrix").get<std::vector<std::vector<double>>>());
        if (j.contains("points")) {
            const auto metric = parse_point_metric(j.value("metric", std::string{"euclidean"}));
            return FiniteMetricSpace::from_points(j.at("points").get<std::vector<std::vector<double>>>(), metric,
                                                  labels_from_json(j));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed metric space: ") + e.what());
    }
    throw invalid_input("metric space JSON needs a 'matrix' or 'points' field");
}

inline FiniteMetricSpace load_space(const std::string& path) { return space_from_json(read_json_file(path)); }

inline json to_json(const FiniteMetricSpace& s) {
    std::vector<std::vector<double>> m(s.size(), std::vector<double>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s(i, j);
    return json{{"labels", s.labels()}, {"matrix", m}};
}

inline json to_json(const MetricReport& r, const FiniteMetricSpace& s) {
    json v = json::array();
    for (const auto& x : r.violations) {
        json e{{"kind", MetricViolation::kind_name(x.kind)}, {"excess", x.excess}};
        if (x.kind == MetricViolation::Kind::triangle)
            e["points"] = {s.label(x.a), s.label(x.b), s.label(x.c)};
        else
            e["points"] = {s.label(x.a), s.label(x.b)};
        v.push_back(std::move(e));
    }
    return json{{"valid", r.valid()}, {"violation_count", r.total}, {"violations", v}};
}

// --- Pair families ----------------------------------------------------------------

inline json to_json(const SeparatedPairFamily& f, const FiniteMetricSpace& s) {
    json pairs = json::array();
    for (const auto& p : f.pairs) pairs.push_back({s.label(p.x), s.label(p.y)});
    return json{{"K", f.K}, {"pairs", pairs}};
}

inline SeparatedPairFamily family_from_json(const json& j, const FiniteMetricSpace& s) {
    SeparatedPairFamily f;
    try {
        f.K = j.at("K").get<double>();
        for (const auto& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) throw invalid_input("each pair must be [x_label, y_label]");
            f.pairs.push_back({s.index_of(p[0].get<std::string>()), s.index_of(p[1].get<std::string>())});
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed pair family: ") + e.what());
    }
    return f;
}

inline json to_json(const PairFamilyReport& r, const FiniteMetricSpace& s) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back(x.describe(s));
    return json{{"ok", r.ok()}, {"violations", v}};
}

// --- Fields and embeddings -----------------------------------------------------------

inline json to_json(const ScalarField& f, const std::string& space_ref) {
    return json{{"space_ref", space_ref}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

inline ScalarField field_from_json(const json& j, SpacePtr space) {
    try {
        return ScalarField{std::move(space), j.at("values").get<std::vector<double>>()};
    } catch (const json::exception& e) {
        throw invalid_input(std::string("malformed scalar field: ") + e.what());
    }
}

inline json to_json(const FiniteSequence& a) {
    return json(std::vector<double>(a.entries().begin(), a.entries().end()));
}

inline json to_json(const SandwichMeasurement& m) {
    return json{{"norm_a", m.norm_a},         {"sup_norm", m.sup},           {"seminorm", m.seminorm},
                {"holder_norm", m.holder},    {"bound_upper", m.bound_upper}, {"ratio", m.ratio},
                {"lower_ok", m.lower_ok},     {"upper_ok", m.upper_ok},       {"seminorm_ok", m.seminorm_ok},
                {"sup_ok", m.sup_ok}};
}

inline json to_json(const EmbeddingReport& r) {
    json lf = json::array(), uf = json::array();
    for (const auto& a : r.lower_failures) lf.push_back(to_json(a));
    for (const auto& a : r.upper_failures) uf.push_back(to_json(a));
    return json{{"lower", r.lower},
                {"upper", r.upper},
                {"bound_upper", r.bound_upper},
                {"samples", r.samples},
                {"worst_vector", to_json(r.worst_vector)},
                {"lower_failures", lf},
                {"upper_failures", uf},
                {"ok", r.ok()}};
}

// --- Verdicts ---------------------------------------------------------------------

inline json to_json(const Verdict& v) {
    json j{{"space_family", family_name(v.space_family)},
           {"wbs", v.wbs},
           {"theorem", v.theorem},
           {"reason", v.reason}};
    if (!v.assumption.empty()) j["assumption"] = v.assumption;
    return j;
}

} // namespace wbs::io
