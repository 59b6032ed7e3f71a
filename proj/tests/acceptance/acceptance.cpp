// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wbs/classify.hpp"
#include "wbs/embed.hpp"
#include "wbs/experiment.hpp"
#include "wbs/holder.hpp"
#include "wbs/ordinal.hpp"
#include "wbs/samples.hpp"
#include "wbs/schreier.hpp"
#include "wbs/weaknull.hpp"

using namespace wbs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr std::uint64_t kSeed = 20241016;

Outcome cesaro_certificates() {
    const auto t0 = Clock::now();
    const auto subs = experiment::cesaro_suite_subsequences(kSeed, 100);
    std::size_t certs = 0, bad = 0, affine = 0, random = 0;
    Rational worst{1};
    for (const auto& [rule, sub] : subs) {
        (rule.rfind("affine:", 0) == 0 ? affine : random) += 1;
        for (auto N : experiment::cesaro_suite_Ns()) {
            try {
                const auto c = certify_not_cesaro_null(sub, N);
                ++certs;
                if (c.mean < Rational(1, 2)) ++bad;
                if (c.mean < worst) worst = c.mean;
            } catch (const std::exception&) {
                ++bad;
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << certs << " certificates (" << affine << " affine, " << random << " random rules), " << bad
       << " violations, smallest mean " << to_fraction(worst) << ", " << secs << " s";
    return {bad == 0 && certs == 600 && affine > 0 && random > 0 && secs < 10.0, os.str()};
}

Outcome schreier_bijection() {
    std::size_t errors = 0;
    for (std::uint64_t r = 1; r <= 10000; ++r)
        if (!(rank_of(unrank(SchreierRank{r})) == SchreierRank{r})) ++errors;
    gmp_randclass rng{gmp_randinit_default};
    rng.seed(kSeed);
    for (int t = 0; t < 100; ++t) {
        const SchreierRank r{BigInt(rng.get_z_bits(64 + 8 * t) + 1)};
        if (!(rank_of(unrank(r)) == r)) ++errors;
    }
    const auto family = oracle::brute_force_family(15);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const SchreierSet s{family[i]};
        if (!(unrank(rank_of(s)) == s) || !(rank_of(s) == SchreierRank{static_cast<std::uint64_t>(i + 1)})) ++errors;
    }
    for (unsigned n = 1; n <= 15; ++n)
        if (count_max_at_most(n) != BigInt(static_cast<unsigned long>(oracle::brute_force_family(n).size()))) ++errors;
    for (std::uint64_t n = 3; n <= 500; ++n)
        if (count_max_at_most(n) != count_max_at_most(n - 1) + count_max_at_most(n - 2)) ++errors;
    std::ostringstream os;
    os << "10000 small + 100 big ranks, " << family.size() << " brute-force sets, counts to 500; " << errors
       << " mismatches";
    return {errors == 0, os.str()};
}

Outcome seminorm_bound() {
    const auto instances = experiment::sandwich_instances(kSeed);
    const double slack = default_tolerances().float_slack;
    std::size_t bumps = 0, bad = 0;
    double worst_excess = -INFINITY;
    for (const auto& inst : instances) {
        const HolderExponent alpha{inst.alpha};
        const double bound = 1.0 / std::pow(inst.family.K, inst.alpha);
        for (const auto& pair : inst.family.pairs) {
            const auto f = bump_f(inst.space, pair, inst.family.K, alpha);
            const double s = holder_seminorm(f, alpha);
            worst_excess = std::max(worst_excess, s - bound);
            ++bumps;
            if (s > bound + slack || sup_norm(f) > 1.0) ++bad;
        }
    }
    std::ostringstream os;
    os << instances.size() << " instances, " << bumps << " bumps, " << bad
       << " violations, max(rho - 1/K^a) = " << worst_excess;
    return {instances.size() >= 50 && bad == 0, os.str()};
}

Outcome sandwich() {
    const auto instances = experiment::sandwich_instances(kSeed);
    std::size_t samples = 0, lower_fail = 0, upper_fail = 0;
    double min_ratio = INFINITY, max_rel = 0.0;
    std::uint64_t seed = kSeed;
    for (const auto& inst : instances) {
        const auto rep = distortion_report(inst.space, inst.family, HolderExponent{inst.alpha}, seed++, 20);
        samples += rep.samples;
        lower_fail += rep.lower_failures.size();
        upper_fail += rep.upper_failures.size();
        min_ratio = std::min(min_ratio, rep.lower);
        max_rel = std::max(max_rel, rep.upper / rep.bound_upper);
        for (const auto& a : rep.lower_failures) {
            std::fprintf(stderr, "lower-bound failure on %s (K=%g, alpha=%g):", inst.space_name.c_str(),
                         inst.family.K, inst.alpha);
            for (double v : a.entries()) std::fprintf(stderr, " %.17g", v);
            std::fprintf(stderr, "\n");
        }
    }
    std::ostringstream os;
    os << instances.size() << " instances, " << samples << " vectors, min ||Ta||/||a|| = " << min_ratio
       << ", max ratio / (2/K^a + 1) = " << max_rel << ", lower failures " << lower_fail << ", upper failures "
       << upper_fail;
    return {instances.size() >= 50 && lower_fail == 0 && upper_fail == 0, os.str()};
}

Outcome isometries() {
    std::mt19937_64 rng{kSeed};
    auto dyadic = [&] { return std::ldexp(static_cast<double>(static_cast<std::int64_t>(rng() % 8193) - 4096), -8); };
    auto space = share(samples::line_grid(64));
    std::vector<std::size_t> centers;
    std::vector<double> radii;
    for (std::size_t c = 2; c < 64; c += 8) {
        centers.push_back(c);
        radii.push_back(3.0);
    }
    std::size_t cb_bad = 0, linf_bad = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> a(centers.size());
        double expect = 0.0;
        for (auto& x : a) {
            x = dyadic();
            expect = std::max(expect, std::abs(x));
        }
        if (sup_norm(embed_cb(FiniteSequence{a}, space, centers, radii)) != expect) ++cb_bad;
    }
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + rng() % 32;
        std::vector<double> a(m), masses(m);
        double expect = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = dyadic();
            masses[i] = std::ldexp(static_cast<double>(1 + rng() % 1024), -10);
            expect = std::max(expect, std::abs(a[i]));
        }
        if (embed_linf(FiniteSequence{a}, masses).ess_sup() != expect) ++linf_bad;
    }
    std::ostringstream os;
    os << "C_b: 1000 vectors, " << cb_bad << " mismatches; L_inf: 1000 vectors, " << linf_bad << " mismatches";
    return {cb_bad == 0 && linf_bad == 0, os.str()};
}

Outcome scalar_inequality() {
    std::mt19937_64 rng{kSeed};
    std::size_t bad = 0;
    for (int t = 0; t < 100000; ++t) {
        const double a = std::ldexp(samples::unit_uniform(rng), static_cast<int>(rng() % 41) - 20);
        const double b = std::ldexp(samples::unit_uniform(rng), static_cast<int>(rng() % 41) - 20);
        const double alpha = 1.0 - samples::unit_uniform(rng);
        if (!power_diff_check(a, b, HolderExponent{alpha})) ++bad;
    }
    return {bad == 0, "100000 triples, " + std::to_string(bad) + " failures"};
}

Outcome cantor_bendixson() {
    std::size_t derived_bad = 0;
    const auto ordinals = oracle::small_ordinals();
    for (const auto& o : ordinals)
        if (!(derived_set(o) == oracle::derived(o))) ++derived_bad;
    const bool rank_ok = cb_rank(Ordinal::parse("w^2*3 + w*2 + 5")) == CbRank{false, 3};

    struct Row {
        Verdict v;
        bool wbs;
        const char* theorem;
    };
    const std::vector<Row> table{
        {classify_calpha(10), true, kTheoremCalpha},
        {classify_calpha(1), true, kTheoremCalpha},
        {classify_calpha(std::nullopt), false, kTheoremCalpha},
        {classify_cb(FiniteSpace{5}), true, kTheoremFarnum},
        {classify_cb(CompactCountable{Ordinal::parse("w^2 + 1")}), true, kTheoremFarnum},
        {classify_cb(CompactCountable{Ordinal::parse("w^w")}), false, kTheoremFarnum},
        {classify_cb(NonCompact{}), false, kTheoremCbNoncompact},
        {classify_c_of_ordinal(Ordinal::parse("w^2*3 + w*2 + 5")), true, kTheoremFarnum},
        {classify_c_of_ordinal(Ordinal::parse("w^(w+1)")), false, kTheoremFarnum},
        {classify_linf({{0.2, 0.3, 0.5}, true}), true, kTheoremLinf},
        {classify_linf({{1.0}, true}), true, kTheoremLinf},
        {classify_linf({{0.5, 0.25}, false}), false, kTheoremLinf},
    };
    std::size_t table_bad = 0;
    for (const auto& r : table)
        if (r.v.wbs != r.wbs || r.v.theorem != r.theorem) ++table_bad;
    std::ostringstream os;
    os << ordinals.size() << " ordinals vs point-set oracle, " << derived_bad << " mismatches; cb_rank(w^2*3+w*2+5) "
       << (rank_ok ? "= 3" : "!= 3") << "; verdict table " << table.size() - table_bad << "/" << table.size();
    return {derived_bad == 0 && rank_ok && table_bad == 0 && table.size() == 12, os.str()};
}

Outcome coordinatewise_nullity() {
    std::size_t bad = 0;
    for (std::uint64_t i = 1; i <= 10000; ++i) {
        const std::uint64_t threshold = coordinatewise_null_check(i);
        for (std::uint64_t k = threshold + 1; k <= threshold + 1000; ++k)
            if (entry(k, i) != 0) ++bad;
        if (entry(threshold, i) != 1) ++bad;
    }
    return {bad == 0, "i <= 10000, 1000 indices past each threshold; " + std::to_string(bad) + " nonzero entries"};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 cesaro-certificates", cesaro_certificates},
        {"2 schreier-bijection", schreier_bijection},
        {"3 seminorm-bound", seminorm_bound},
        {"4 sandwich", sandwich},
        {"5 isometries", isometries},
        {"6 scalar-inequality", scalar_inequality},
        {"7 cantor-bendixson", cantor_bendixson},
        {"8 coordinatewise-nullity", coordinatewise_nullity},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str());
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
