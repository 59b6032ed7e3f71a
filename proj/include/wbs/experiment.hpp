#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wbs/embed.hpp"
#include "wbs/holder.hpp"
#include "wbs/io.hpp"
#include "wbs/metric.hpp"
#include "wbs/samples.hpp"
#include "wbs/schreier.hpp"
#include "wbs/tolerances.hpp"
#include "wbs/weaknull.hpp"

namespace wbs::experiment {

struct ExperimentConfig {
    std::uint64_t seed = 1;
    Tolerances tolerances{};
    std::string enumeration = "canonical";  // or "alt"
    std::string out_dir = ".";
};

struct ExperimentResult {
    std::string name;
    bool ok = true;
    nlohmann::json report;  // written as <name>.json
    std::string csv;        // written as <name>.csv
    std::size_t checks = 0;
    std::size_t failures = 0;
};

// --- Cesàro suite ---------------------------------------------------------------

inline const std::vector<std::uint64_t>& cesaro_suite_Ns() {
    static const std::vector<std::uint64_t> Ns{1, 2, 4, 8, 16, 32};
    return Ns;
}

struct NamedSubsequence {
    std::string rule;
    Subsequence sub;
};

/// `count` subsequences: even slots affine, odd slots random-gap prefixes.
/// Random prefixes are long enough for every N in the suite.
inline std::vector<NamedSubsequence> cesaro_suite_subsequences(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng{seed};
    std::vector<NamedSubsequence> out;
    for (std::size_t s = 0; s < count; ++s) {
        if (s % 2 == 0) {
            const std::uint64_t slope = 1 + rng() % 6, offset = rng() % 10;
            out.push_back({"affine:" + std::to_string(slope) + "," + std::to_string(offset),
                           Subsequence::affine(slope, offset)});
        } else {
            const std::uint64_t sub_seed = rng(), max_gap = 1 + rng() % 8;
            // k_33 <= 33 * max_gap, and the witness needs 32 + k_33 entries
            const std::size_t length = 33 + 33 * max_gap;
            out.push_back({"random:" + std::to_string(sub_seed) + "," + std::to_string(length) + "," +
                               std::to_string(max_gap),
                           Subsequence::random(sub_seed, length, max_gap)});
        }
    }
    return out;
}

template <SchreierEnumeration E>
ExperimentResult run_cesaro_suite_with(const ExperimentConfig& cfg, std::size_t count = 100) {
    ExperimentResult res;
    res.name = "cesaro-suite";
    nlohmann::json certs = nlohmann::json::array();
    std::ostringstream csv;
    csv << "rule,N,witness_size,i0_digits,mean,status\n";
    for (const auto& [rule, sub] : cesaro_suite_subsequences(cfg.seed, count)) {
        for (auto N : cesaro_suite_Ns()) {
            ++res.checks;
            try {
                auto cert = certify_not_cesaro_null<E>(sub, N);
                auto j = io::to_json(cert);
                j["rule"] = rule;
                certs.push_back(std::move(j));
                csv << rule << ',' << N << ',' << cert.witness_set.size() << ','
                    << cert.witness_coordinate.to_string().size() << ',' << to_fraction(cert.mean) << ",ok\n";
            } catch (const std::exception& e) {
                ++res.failures;
                res.ok = false;
                certs.push_back({{"rule", rule}, {"N", N}, {"error", e.what()}});
                csv << rule << ',' << N << ",,,," << "fail\n";
            }
        }
    }
    res.report = {{"experiment", res.name},       {"seed", cfg.seed},          {"enumeration", std::string(E::name)},
                  {"checks", res.checks},          {"failures", res.failures}, {"certificates", certs}};
    res.csv = csv.str();
    return res;
}

inline ExperimentResult run_cesaro_suite(const ExperimentConfig& cfg, std::size_t count = 100) {
    if (cfg.enumeration == "alt") return run_cesaro_suite_with<ReverseGradeEnumeration>(cfg, count);
    if (cfg.enumeration == "canonical") return run_cesaro_suite_with<CanonicalEnumeration>(cfg, count);
    throw invalid_input("unknown enumeration '" + cfg.enumeration + "'");
}

// --- Sandwich suite ----------------------------------------------------------------

struct SandwichInstance {
    std::string space_name;
    SpacePtr space;
    SeparatedPairFamily family;
    double alpha;
};

inline std::vector<std::pair<std::string, SpacePtr>> bundled_spaces(std::uint64_t seed) {
    return {
        {"line_grid_16", share(samples::line_grid(16))},
        {"zero_reciprocals_24", share(samples::zero_and_reciprocals(24))},
        {"cloud2d_40", share(samples::random_cloud(seed, 40, 2))},
        {"cloud3d_40", share(samples::random_cloud(seed + 1, 40, 3))},
        {"cloud2d_l1_30", share(samples::random_cloud(seed + 2, 30, 2, 3.0, PointMetric::l1))},
        {"graph_24", share(samples::random_graph_metric(seed + 3, 24, 0.15))},
    };
}

inline const std::vector<double>& sandwich_Ks() {
    static const std::vector<double> Ks{0.25, 0.5, 1.0};
    return Ks;
}

inline const std::vector<double>& sandwich_alphas() {
    static const std::vector<double> as{0.3, 0.7, 1.0};
    return as;
}

/// Spaces x K x alpha, each with a greedily found pair family of up to 10 pairs.
inline std::vector<SandwichInstance> sandwich_instances(std::uint64_t seed) {
    std::vector<SandwichInstance> out;
    for (const auto& [name, space] : bundled_spaces(seed))
        for (double K : sandwich_Ks()) {
            auto found = find_pair_family(*space, K, 10);
            if (found.family.pairs.empty()) continue;
            for (double alpha : sandwich_alphas()) out.push_back({name, space, found.family, alpha});
        }
    return out;
}

inline ExperimentResult run_sandwich_suite(const ExperimentConfig& cfg, std::size_t random_vectors = 20) {
    ExperimentResult res;
    res.name = "sandwich-suite";
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "space,K,alpha,pairs,family_ok,max_bump_seminorm,bump_bound,min_ratio,max_ratio,ratio_bound,status\n";
    std::uint64_t inst_seed = cfg.seed;
    for (const auto& inst : sandwich_instances(cfg.seed)) {
        ++res.checks;
        const HolderExponent alpha{inst.alpha};
        const bool family_ok = verify_pair_family(*inst.space, inst.family).ok();
        const double bump_bound = 1.0 / std::pow(inst.family.K, inst.alpha);
        double max_semi = 0.0;
        bool bumps_ok = true;
        for (const auto& pair : inst.family.pairs) {
            auto f = bump_f(inst.space, pair, inst.family.K, alpha);
            const double s = holder_seminorm(f, alpha);
            max_semi = std::max(max_semi, s);
            if (s > bump_bound + cfg.tolerances.float_slack || sup_norm(f) > 1.0) bumps_ok = false;
        }
        auto rep = distortion_report(inst.space, inst.family, alpha, inst_seed++, random_vectors, cfg.tolerances);
        const bool ok = family_ok && bumps_ok && rep.ok();
        if (!ok) {
            ++res.failures;
            res.ok = false;
        }
        rows.push_back({{"space", inst.space_name},
                        {"K", inst.family.K},
                        {"alpha", inst.alpha},
                        {"family", io::to_json(inst.family, *inst.space)},
                        {"family_ok", family_ok},
                        {"max_bump_seminorm", max_semi},
                        {"bump_bound", bump_bound},
                        {"distortion", io::to_json(rep)},
                        {"ok", ok}});
        csv << inst.space_name << ',' << inst.family.K << ',' << inst.alpha << ',' << inst.family.pairs.size() << ','
            << family_ok << ',' << max_semi << ',' << bump_bound << ',' << rep.lower << ',' << rep.upper << ','
            << rep.bound_upper << ',' << (ok ? "ok" : "fail") << '\n';
    }
    res.report = {{"experiment", res.name}, {"seed", cfg.seed},         {"checks", res.checks},
                  {"failures", res.failures}, {"random_vectors", random_vectors}, {"instances", rows}};
    res.csv = csv.str();
    return res;
}

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"cesaro-suite", "sandwich-suite"};
    return names;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& name) {
    if (name == "cesaro-suite") return run_cesaro_suite(cfg);
    if (name == "sandwich-suite") return run_sandwich_suite(cfg);
    throw invalid_input("unknown experiment '" + name + "'");
}

/// Writes <out_dir>/<name>.json and <out_dir>/<name>.csv.
inline void write_result(const ExperimentConfig& cfg, const ExperimentResult& res) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto base = std::filesystem::path{cfg.out_dir} / res.name;
    io::write_json_file(base.string() + ".json", res.report);
    std::ofstream csv{base.string() + ".csv"};
    if (!csv) throw invalid_input("cannot write '" + base.string() + ".csv'");
    csv << res.csv;
}

} // namespace wbs::experiment
