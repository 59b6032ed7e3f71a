// wbs: command-line front end for the library.
//
// Exit codes: 0 success, 1 a check or certificate failed, 2 invalid input,
// 3 a finite prefix was too short. CLI11 reports usage errors with its own codes.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wbs/classify.hpp"
#include "wbs/embed.hpp"
#include "wbs/experiment.hpp"
#include "wbs/holder.hpp"
#include "wbs/io.hpp"
#include "wbs/metric.hpp"
#include "wbs/ordinal.hpp"
#include "wbs/schreier.hpp"
#include "wbs/weaknull.hpp"

using namespace wbs;
using nlohmann::json;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNeedsData = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<double> tolerance;
    std::string enumeration = "canonical";
    std::string out;

    Tolerances tolerances() const {
        Tolerances t;
        if (tolerance) {
            if (!(*tolerance >= 0.0)) throw invalid_input("--tolerance must be nonnegative");
            t.metric_relative = t.sandwich_relative = *tolerance;
        }
        return t;
    }
};

std::uint64_t g_seed = 1;

// Every emitted object records the seed it was produced under.
void emit(json j, const std::string& path = {}) {
    if (j.is_object()) j["seed"] = g_seed;
    if (!path.empty()) io::write_json_file(path, j);
    std::cout << j.dump(2) << '\n';
}

// Runs f with the enumeration named on the command line.
template <class F>
auto with_enumeration(const std::string& name, F&& f) {
    if (name == "canonical") return f(CanonicalEnumeration{});
    if (name == "alt") return f(ReverseGradeEnumeration{});
    throw invalid_input("unknown enumeration '" + name + "' (expected canonical or alt)");
}

// A JSON array literal, a path to a file holding one, or a comma-separated list.
std::vector<double> parse_vector(const std::string& text) {
    json j;
    if (!text.empty() && text.front() == '[') {
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw invalid_input(std::string("malformed vector: ") + e.what());
        }
    } else if (text.find(',') != std::string::npos || text.find_first_not_of("0123456789.-+eE") == std::string::npos) {
        j = json::array();
        std::stringstream ss{text};
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                j.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw invalid_input("not a number: '" + item + "'");
            }
        }
    } else {
        j = io::read_json_file(text);
    }
    if (!j.is_array()) throw invalid_input("vector must be a JSON array of numbers");
    try {
        return j.get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw invalid_input(std::string("vector must be a JSON array of numbers: ") + e.what());
    }
}

std::vector<std::size_t> label_indices(const FiniteMetricSpace& space, const std::vector<std::string>& labels) {
    std::vector<std::size_t> out;
    for (const auto& l : labels) out.push_back(space.index_of(l));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schreier combinatorics, Hölder bump embeddings and weak Banach-Saks verdicts"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for every randomized step");
    app.add_option("--tolerance", g.tolerance, "Relative tolerance for metric validation and embedding bounds");
    app.add_option("--enumeration", g.enumeration, "Schreier enumeration: canonical or alt");
    app.add_option("--out", g.out, "Output file (or directory for experiments)");

    std::function<int()> action;

    // --- schreier ---------------------------------------------------------------
    auto* schreier = app.add_subcommand("schreier", "Rank, unrank and count maximal Schreier sets");
    schreier->require_subcommand(1);
    std::string rank_text;
    auto* s_unrank = schreier->add_subcommand("unrank", "Set at a 1-based rank");
    s_unrank->add_option("rank", rank_text, "Rank (decimal, any size)")->required();
    s_unrank->callback([&] {
        action = [&] {
            const SchreierRank r{parse_decimal(rank_text)};
            return with_enumeration(g.enumeration, [&](auto e) {
                const auto s = decltype(e)::unrank(r);
                emit({{"rank", r.to_string()}, {"set", io::to_json(s)}, {"enumeration", g.enumeration}}, g.out);
                return 0;
            });
        };
    });
    std::vector<std::uint64_t> rank_elems;
    auto* s_rank = schreier->add_subcommand("rank", "Rank of a set given as its elements");
    s_rank->add_option("elements", rank_elems, "Elements, space or comma separated")->required()->delimiter(',');
    s_rank->callback([&] {
        action = [&] {
            const SchreierSet s{rank_elems};
            return with_enumeration(g.enumeration, [&](auto e) {
                const auto r = decltype(e)::rank_of(s);
                emit({{"set", io::to_json(s)}, {"rank", r.to_string()}, {"enumeration", g.enumeration}}, g.out);
                return 0;
            });
        };
    });
    std::uint64_t count_n = 0;
    auto* s_count = schreier->add_subcommand("count", "Number of sets with max <= n");
    s_count->add_option("n", count_n, "Upper bound on max(A)")->required();
    s_count->callback([&] {
        action = [&] {
            emit({{"n", count_n}, {"count", to_decimal(count_max_at_most(count_n))}}, g.out);
            return 0;
        };
    });

    // --- cesaro -----------------------------------------------------------------
    auto* cesaro = app.add_subcommand("cesaro", "Certificates against Cesàro nullity");
    cesaro->require_subcommand(1);
    std::string sub_spec;
    std::uint64_t cert_N = 0;
    auto* c_certify = cesaro->add_subcommand("certify", "Certify that a subsequence is not Cesàro null at N");
    c_certify
        ->add_option("--subsequence", sub_spec,
                     "identity | affine:A,B | geometric:C,R | random:SEED,LEN,MAXGAP | JSON file of indices")
        ->required();
    c_certify->add_option("--N", cert_N, "Half the averaging window")->required();
    c_certify->callback([&] {
        action = [&] {
            const auto sub = io::parse_subsequence(sub_spec);
            return with_enumeration(g.enumeration, [&](auto e) {
                const auto cert = certify_not_cesaro_null<decltype(e)>(sub, cert_N);
                emit(io::to_json(cert), g.out);
                return 0;
            });
        };
    });

    // --- metric / pairs ------------------------------------------------------------
    std::string space_path, family_path, field_path;
    auto* metric = app.add_subcommand("metric", "Finite metric spaces");
    metric->require_subcommand(1);
    auto* m_validate = metric->add_subcommand("validate", "Check the metric axioms");
    m_validate->add_option("space", space_path, "Space JSON")->required();
    m_validate->callback([&] {
        action = [&] {
            const auto space = io::load_space(space_path);
            const auto rep = validate_metric(space, g.tolerances());
            auto j = io::to_json(rep, space);
            j["points"] = space.size();
            emit(j, g.out);
            return rep.valid() ? 0 : kExitFailed;
        };
    });

    auto* pairs = app.add_subcommand("pairs", "Separated pair families");
    pairs->require_subcommand(1);
    double pair_K = 0.5;
    std::size_t pair_count = 1;
    auto* p_find = pairs->add_subcommand("find", "Greedy search for a separated pair family");
    p_find->add_option("space", space_path, "Space JSON")->required();
    p_find->add_option("--K", pair_K, "Separation constant in (0, 1]")->required();
    p_find->add_option("--count", pair_count, "Number of pairs wanted")->required();
    p_find->callback([&] {
        action = [&] {
            const auto space = io::load_space(space_path);
            const auto res = find_pair_family(space, pair_K, pair_count);
            auto j = io::to_json(res.family, space);
            j["seed"] = g_seed;
            if (!g.out.empty()) io::write_json_file(g.out, j);
            j["success"] = res.success;
            j["found"] = res.family.pairs.size();
            j["requested"] = pair_count;
            std::cout << j.dump(2) << '\n';
            return res.success ? 0 : kExitFailed;
        };
    });
    auto* p_verify = pairs->add_subcommand("verify", "Check the separation conditions");
    p_verify->add_option("space", space_path, "Space JSON")->required();
    p_verify->add_option("family", family_path, "Family JSON {K, pairs: [[x, y], ...]}")->required();
    p_verify->callback([&] {
        action = [&] {
            const auto space = io::load_space(space_path);
            const auto fam = io::family_from_json(io::read_json_file(family_path), space);
            const auto rep = verify_pair_family(space, fam);
            emit(io::to_json(rep, space), g.out);
            return rep.ok() ? 0 : kExitFailed;
        };
    });

    // --- holder ---------------------------------------------------------------------
    auto* holder = app.add_subcommand("holder", "Hölder norms and bump functions");
    holder->require_subcommand(1);
    double alpha = 1.0;
    auto* h_semi = holder->add_subcommand("seminorm", "Hölder seminorm and norm of a field");
    h_semi->add_option("space", space_path, "Space JSON")->required();
    h_semi->add_option("field", field_path, "Field JSON {space_ref, values}")->required();
    h_semi->add_option("--alpha", alpha, "Exponent in (0, 1]")->required();
    h_semi->callback([&] {
        action = [&] {
            auto space = share(io::load_space(space_path));
            const auto f = io::field_from_json(io::read_json_file(field_path), space);
            const HolderExponent a{alpha};
            const auto w = holder_seminorm_witness(f, a);
            json j{{"alpha", alpha}, {"seminorm", w.value}, {"sup_norm", sup_norm(f)}, {"holder_norm", holder_norm(f, a)}};
            if (f.size() > 1) j["witness"] = {space->label(w.x), space->label(w.y)};
            emit(j, g.out);
            return 0;
        };
    });
    std::string bump_kind = "f", bump_x, bump_y, bump_center;
    double bump_K = 1.0, bump_eps = 1.0;
    auto* h_bump = holder->add_subcommand("bump", "Evaluate f_n (pair bump) or phi_n (tent) on a space");
    h_bump->add_option("space", space_path, "Space JSON")->required();
    h_bump->add_option("--kind", bump_kind, "f or phi")->check(CLI::IsMember({"f", "phi"}));
    h_bump->add_option("--x", bump_x, "Label of x_n (kind f)");
    h_bump->add_option("--y", bump_y, "Label of y_n (kind f)");
    h_bump->add_option("--K", bump_K, "Separation constant (kind f)");
    h_bump->add_option("--alpha", alpha, "Exponent (kind f)");
    h_bump->add_option("--center", bump_center, "Label of the tent center (kind phi)");
    h_bump->add_option("--epsilon", bump_eps, "Tent radius (kind phi)");
    h_bump->callback([&] {
        action = [&] {
            auto space = share(io::load_space(space_path));
            std::optional<ScalarField> f;
            if (bump_kind == "f") {
                if (bump_x.empty() || bump_y.empty()) throw invalid_input("bump f needs --x and --y");
                f = bump_f(space, {space->index_of(bump_x), space->index_of(bump_y)}, bump_K, HolderExponent{alpha});
            } else {
                if (bump_center.empty()) throw invalid_input("bump phi needs --center");
                f = bump_phi(space, space->index_of(bump_center), bump_eps);
            }
            emit(io::to_json(*f, space_path), g.out);
            return 0;
        };
    });

    // --- embed ------------------------------------------------------------------------
    auto* embed = app.add_subcommand("embed", "Embeddings of l_inf and their norm bounds");
    embed->require_subcommand(1);
    std::string vector_spec, report_path;
    auto* e_holder = embed->add_subcommand("holder", "T(a) = a(n(x)) f_n(x) with the two-sided bound");
    e_holder->add_option("space", space_path, "Space JSON")->required();
    e_holder->add_option("family", family_path, "Family JSON")->required();
    e_holder->add_option("--alpha", alpha, "Exponent in (0, 1]")->required();
    e_holder->add_option("--vector", vector_spec, "JSON array, file, or random:SEED (probe set)")->required();
    e_holder->add_option("--report", report_path, "Write the EmbeddingReport here");
    e_holder->callback([&] {
        action = [&] {
            auto space = share(io::load_space(space_path));
            const auto fam = io::family_from_json(io::read_json_file(family_path), *space);
            const HolderExponent a{alpha};
            EmbeddingReport rep;
            if (vector_spec.rfind("random:", 0) == 0) {
                const auto seed = io::parse_u64_list(vector_spec.substr(7));
                if (seed.size() != 1) throw invalid_input("expected random:SEED");
                rep = distortion_report(space, fam, a, seed[0], 20, g.tolerances());
            } else {
                const FiniteSequence v{parse_vector(vector_spec)};
                const auto m = measure_sandwich(v, space, fam, a, g.tolerances());
                rep.bound_upper = m.bound_upper;
                rep.lower = rep.upper = m.ratio;
                rep.samples = 1;
                rep.worst_vector = v;
                if (!m.lower_ok) rep.lower_failures.push_back(v);
                if (!m.upper_ok || !m.seminorm_ok || !m.sup_ok) rep.upper_failures.push_back(v);
            }
            auto j = io::to_json(rep);
            j["K"] = fam.K;
            j["alpha"] = alpha;
            emit(j, report_path.empty() ? g.out : report_path);
            return rep.ok() ? 0 : kExitFailed;
        };
    });
    std::vector<std::string> centers;
    std::vector<double> radii, masses;
    auto* e_cb = embed->add_subcommand("cb", "T(a) = sum a(n) phi_n into C_b(M)");
    e_cb->add_option("space", space_path, "Space JSON")->required();
    e_cb->add_option("--centers", centers, "Center labels")->required()->delimiter(',');
    e_cb->add_option("--radii", radii, "Tent radii")->required()->delimiter(',');
    e_cb->add_option("--vector", vector_spec, "JSON array, comma list, or file")->required();
    e_cb->callback([&] {
        action = [&] {
            auto space = share(io::load_space(space_path));
            const FiniteSequence v{parse_vector(vector_spec)};
            const auto idx = label_indices(*space, centers);
            const auto t = embed_cb(v, space, idx, radii);
            const bool iso = sup_norm(t) == v.sup_value();
            auto j = io::to_json(t, space_path);
            j["norm_a"] = v.sup_value();
            j["sup_norm"] = sup_norm(t);
            j["isometric"] = iso;
            emit(j, g.out);
            return iso ? 0 : kExitFailed;
        };
    });
    auto* e_linf = embed->add_subcommand("linf", "T(a) = sum a(n) chi_{A_n} into L_inf");
    e_linf->add_option("--masses", masses, "Cell masses")->required()->delimiter(',');
    e_linf->add_option("--vector", vector_spec, "JSON array, comma list, or file")->required();
    e_linf->callback([&] {
        action = [&] {
            const FiniteSequence v{parse_vector(vector_spec)};
            const auto t = embed_linf(v, masses);
            const bool iso = t.ess_sup() == v.sup_value();
            emit({{"masses", t.masses},
                  {"values", t.values},
                  {"norm_a", v.sup_value()},
                  {"ess_sup", t.ess_sup()},
                  {"isometric", iso}},
                 g.out);
            return iso ? 0 : kExitFailed;
        };
    });

    // --- classify -------------------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "Weak Banach-Saks verdicts");
    classify->require_subcommand(1);
    std::string assume, ordinal_text;
    std::optional<std::uint64_t> point_count;
    bool non_terminal = false;
    auto resolve_points = [&]() -> std::optional<std::uint64_t> {
        if (point_count) return point_count;
        if (!space_path.empty()) return io::load_space(space_path).size();
        return std::nullopt;
    };
    auto* k_calpha = classify->add_subcommand("calpha", "C^alpha(M)");
    k_calpha->add_option("space", space_path, "Space JSON (its point count is used when finite)");
    k_calpha->add_option("--assume", assume, "finite or infinite")->required()->check(CLI::IsMember({"finite", "infinite"}));
    k_calpha->add_option("--points", point_count, "Number of points when finite");
    k_calpha->callback([&] {
        action = [&] {
            Verdict v;
            if (assume == "infinite") {
                v = classify_calpha(std::nullopt);
            } else {
                const auto n = resolve_points();
                if (!n) throw invalid_input("--assume finite needs a space file or --points");
                v = classify_calpha(*n);
            }
            emit(io::to_json(v), g.out);
            return 0;
        };
    });
    auto* k_cb = classify->add_subcommand("cb", "C_b(M)");
    k_cb->add_option("space", space_path, "Space JSON (its point count is used when finite)");
    k_cb->add_option("--assume", assume, "finite, compact or noncompact")
        ->required()
        ->check(CLI::IsMember({"finite", "compact", "noncompact"}));
    k_cb->add_option("--points", point_count, "Number of points when finite");
    k_cb->add_option("--ordinal", ordinal_text, "CNF of the ordinal interval M is homeomorphic to (compact)");
    k_cb->callback([&] {
        action = [&] {
            CbTopology topo = NonCompact{};
            if (assume == "finite") {
                const auto n = resolve_points();
                if (!n) throw invalid_input("--assume finite needs a space file or --points");
                topo = FiniteSpace{*n};
            } else if (assume == "compact") {
                if (ordinal_text.empty()) throw invalid_input("--assume compact needs --ordinal");
                topo = CompactCountable{Ordinal::parse(ordinal_text)};
            }
            emit(io::to_json(classify_cb(topo)), g.out);
            return 0;
        };
    });
    auto* k_linf = classify->add_subcommand("linf", "L_inf(mu)");
    k_linf->add_option("--masses", masses, "Masses of the cells")->required()->delimiter(',');
    k_linf->add_flag("--non-terminal", non_terminal, "Infinitely many disjoint positive-measure sets exist");
    k_linf->callback([&] {
        action = [&] {
            emit(io::to_json(classify_linf({masses, !non_terminal})), g.out);
            return 0;
        };
    });
    auto* k_ord = classify->add_subcommand("ordinal", "C(M) for M an ordinal interval, given in CNF");
    k_ord->add_option("cnf", ordinal_text, "e.g. \"w^2*3 + w*2 + 5\"")->required();
    k_ord->callback([&] {
        action = [&] {
            const auto o = Ordinal::parse(ordinal_text);
            auto j = io::to_json(classify_c_of_ordinal(o));
            j["ordinal"] = o.to_string();
            j["derived_set"] = derived_set(o).to_string();
            j["cb_rank"] = cb_rank(o).to_string();
            emit(j, g.out);
            return 0;
        };
    });

    // --- experiment -------------------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "Seeded experiment suites");
    experiment->require_subcommand(1);
    std::string exp_name;
    auto* x_run = experiment->add_subcommand("run", "Run a suite and write <out>/<name>.json and .csv");
    x_run->add_option("name", exp_name, "cesaro-suite or sandwich-suite")
        ->required()
        ->check(CLI::IsMember(experiment::experiment_names()));
    x_run->callback([&] {
        action = [&] {
            experiment::ExperimentConfig cfg;
            cfg.seed = g.seed;
            cfg.tolerances = g.tolerances();
            cfg.enumeration = g.enumeration;
            cfg.out_dir = g.out.empty() ? "." : g.out;
            const auto res = experiment::run_experiment(cfg, exp_name);
            experiment::write_result(cfg, res);
            std::cout << res.csv;
            std::cout << res.name << ": " << res.checks << " checks, " << res.failures << " failures\n";
            if (!res.ok) std::cerr << "failing entries are marked in " << cfg.out_dir << "/" << res.name << ".json\n";
            return res.ok ? 0 : kExitFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    g_seed = g.seed;
    try {
        return action ? action() : kExitInvalid;
    } catch (const needs_more_data& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNeedsData;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const certificate_violation& e) {
        std::cerr << "certificate violation: " << e.what() << '\n';
        return kExitFailed;
    } catch (const inconsistent_family& e) {
        std::cerr << "inconsistent family: " << e.what() << '\n';
        return kExitFailed;
    }
}
