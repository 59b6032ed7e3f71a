#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wbs/errors.hpp"
#include "wbs/holder.hpp"
#include "wbs/metric.hpp"
#include "wbs/samples.hpp"
#include "wbs/tolerances.hpp"

namespace wbs {

/// A truncation a(1..m) of a bounded sequence.
class FiniteSequence {
  public:
    explicit FiniteSequence(std::vector<double> entries) : entries_{std::move(entries)} {
        for (double v : entries_) {
            if (!std::isfinite(v)) throw invalid_input("sequence entry is not finite");
            sup_ = std::max(sup_, std::abs(v));
        }
    }

    static FiniteSequence unit(std::size_t m, std::size_t k) {
        std::vector<double> e(m, 0.0);
        e.at(k) = 1.0;
        return FiniteSequence{std::move(e)};
    }

    std::span<const double> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double operator[](std::size_t n) const { return entries_[n]; }
    double sup_value() const noexcept { return sup_; }

  private:
    std::vector<double> entries_;
    double sup_ = 0.0;
};

/// For each point, the unique pair index n with the point inside B_n, if any.
struct SupportIndexMap {
    std::vector<std::optional<std::size_t>> assignment;

    std::optional<std::size_t> operator[](std::size_t p) const { return assignment[p]; }
};

inline SupportIndexMap build_support_map(const FiniteMetricSpace& space, const SeparatedPairFamily& family,
                                         HolderExponent alpha) {
    SupportIndexMap map;
    map.assignment.assign(space.size(), std::nullopt);
    for (std::size_t n = 0; n < family.pairs.size(); ++n) {
        detail::check_bump_args(space, family.pairs[n], family.K);
        for (std::size_t p = 0; p < space.size(); ++p) {
            if (detail::bump_f_value(space, family.pairs[n], family.K, alpha.value(), p) == 0.0) continue;
            if (map.assignment[p])
                throw inconsistent_family("point '" + space.label(p) + "' lies in the supports of bumps " +
                                          std::to_string(*map.assignment[p]) + " and " + std::to_string(n));
            map.assignment[p] = n;
        }
    }
    return map;
}

/// T(a)(x) = a(n(x)) f_{n(x)}(x), and 0 where no bump is supported.
inline ScalarField embed_holder(const FiniteSequence& a, SpacePtr space, const SeparatedPairFamily& family,
                                HolderExponent alpha) {
    if (a.size() != family.pairs.size())
        throw invalid_input("sequence length " + std::to_string(a.size()) + " != pair count " +
                            std::to_string(family.pairs.size()));
    const auto map = build_support_map(*space, family, alpha);
    std::vector<double> vals(space->size(), 0.0);
    for (std::size_t p = 0; p < vals.size(); ++p) {
        if (auto n = map[p])
            vals[p] = a[*n] * detail::bump_f_value(*space, family.pairs[*n], family.K, alpha.value(), p);
    }
    return ScalarField{std::move(space), std::move(vals)};
}

/// Upper constant 2/K^alpha + 1 of the two-sided bound.
inline double holder_embedding_bound(double K, HolderExponent alpha) {
    return 2.0 / std::pow(K, alpha.value()) + 1.0;
}

struct SandwichMeasurement {
    double norm_a = 0.0;       // ||a||_inf
    double sup = 0.0;          // ||T a||_C
    double seminorm = 0.0;     // rho_alpha(T a)
    double holder = 0.0;       // ||T a||_{C^alpha}
    double bound_upper = 0.0;  // 2/K^alpha + 1
    double ratio = 0.0;        // holder / norm_a (1 when a = 0)
    bool lower_ok = true;      // ||a|| <= ||T a||
    bool upper_ok = true;      // ||T a|| <= bound ||a||
    bool seminorm_ok = true;   // rho(T a) <= 2/K^alpha ||a||
    bool sup_ok = true;        // ||T a||_C <= ||a||

    bool ok() const noexcept { return lower_ok && upper_ok && seminorm_ok && sup_ok; }
};

inline SandwichMeasurement measure_sandwich(const FiniteSequence& a, SpacePtr space, const SeparatedPairFamily& family,
                                            HolderExponent alpha, const Tolerances& tol = default_tolerances()) {
    const ScalarField t = embed_holder(a, std::move(space), family, alpha);
    SandwichMeasurement m;
    m.norm_a = a.sup_value();
    m.sup = sup_norm(t);
    m.seminorm = holder_seminorm(t, alpha);
    m.holder = m.sup + m.seminorm;
    m.bound_upper = holder_embedding_bound(family.K, alpha);
    m.ratio = m.norm_a > 0.0 ? m.holder / m.norm_a : 1.0;
    const double rel = tol.sandwich_relative;
    m.lower_ok = m.norm_a <= m.holder * (1.0 + rel) + tol.float_slack;
    m.upper_ok = m.holder <= m.bound_upper * m.norm_a * (1.0 + rel) + tol.float_slack;
    m.seminorm_ok = m.seminorm <= (m.bound_upper - 1.0) * m.norm_a * (1.0 + rel) + tol.float_slack;
    m.sup_ok = m.sup <= m.norm_a * (1.0 + rel) + tol.float_slack;
    return m;
}

/// measure_sandwich, throwing certificate_violation when any bound fails.
inline SandwichMeasurement verify_sandwich(const FiniteSequence& a, SpacePtr space, const SeparatedPairFamily& family,
                                           HolderExponent alpha, const Tolerances& tol = default_tolerances()) {
    auto m = measure_sandwich(a, std::move(space), family, alpha, tol);
    if (!m.ok())
        throw certificate_violation("embedding bounds fail: ||a|| = " + std::to_string(m.norm_a) +
                                    ", ||T a|| = " + std::to_string(m.holder) + ", bound = " +
                                    std::to_string(m.bound_upper));
    return m;
}

struct EmbeddingReport {
    double lower = 0.0;  // smallest ||T a|| / ||a|| seen
    double upper = 0.0;  // largest ratio seen
    double bound_upper = 0.0;
    std::size_t samples = 0;
    FiniteSequence worst_vector{{}};  // attains `upper`
    std::vector<FiniteSequence> lower_failures;
    std::vector<FiniteSequence> upper_failures;

    bool ok() const noexcept { return lower_failures.empty() && upper_failures.empty(); }
};

/// Test vectors: every e_k, the alternating +-1 vector, the all-ones vector,
/// and `random_count` seeded vectors with random signs and magnitudes.
inline std::vector<FiniteSequence> distortion_probes(std::size_t m, std::uint64_t seed, std::size_t random_count) {
    std::vector<FiniteSequence> out;
    for (std::size_t k = 0; k < m; ++k) out.push_back(FiniteSequence::unit(m, k));
    std::vector<double> alt(m), ones(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) alt[k] = (k % 2 == 0) ? 1.0 : -1.0;
    out.emplace_back(std::move(alt));
    out.emplace_back(std::move(ones));
    std::mt19937_64 rng{seed};
    for (std::size_t r = 0; r < random_count; ++r) {
        const double scale = std::ldexp(1.0, static_cast<int>(rng() % 21) - 10);
        std::vector<double> v(m);
        for (auto& x : v) x = scale * (2.0 * samples::unit_uniform(rng) - 1.0);
        out.emplace_back(std::move(v));
    }
    return out;
}

inline EmbeddingReport distortion_report(SpacePtr space, const SeparatedPairFamily& family, HolderExponent alpha,
                                         std::uint64_t seed, std::size_t random_count,
                                         const Tolerances& tol = default_tolerances()) {
    EmbeddingReport report;
    report.bound_upper = holder_embedding_bound(family.K, alpha);
    bool first = true;
    for (auto& a : distortion_probes(family.pairs.size(), seed, random_count)) {
        if (a.sup_value() == 0.0) continue;
        const auto m = measure_sandwich(a, space, family, alpha, tol);
        ++report.samples;
        if (first || m.ratio < report.lower) report.lower = m.ratio;
        if (first || m.ratio > report.upper) {
            report.upper = m.ratio;
            report.worst_vector = a;
        }
        first = false;
        if (!m.lower_ok) report.lower_failures.push_back(a);
        if (!m.upper_ok || !m.seminorm_ok || !m.sup_ok) report.upper_failures.push_back(a);
    }
    return report;
}

/// T(a) = sum_n a(n) phi_n with phi_n the tent of radius eps_n at x_n. The open
/// balls B(x_n, eps_n) must be pairwise disjoint over the space.
inline ScalarField embed_cb(const FiniteSequence& a, SpacePtr space, std::span<const std::size_t> centers,
                            std::span<const double> radii) {
    if (centers.size() != radii.size() || centers.size() != a.size())
        throw invalid_input("embed_cb needs one center and one radius per sequence entry");
    std::vector<ScalarField> bumps;
    bumps.reserve(centers.size());
    for (std::size_t n = 0; n < centers.size(); ++n) bumps.push_back(bump_phi(space, centers[n], radii[n]));

    std::vector<double> vals(space->size(), 0.0);
    for (std::size_t p = 0; p < vals.size(); ++p) {
        int hits = 0;
        for (std::size_t n = 0; n < centers.size(); ++n) {
            if ((*space)(p, centers[n]) < radii[n]) ++hits;
            vals[p] += a[n] * bumps[n][p];
        }
        if (hits > 1) throw invalid_input("balls overlap at point '" + space->label(p) + "'");
    }
    return ScalarField{std::move(space), std::move(vals)};
}

/// a(n) on cell A_n of a finite partition with positive masses.
struct StepFunction {
    std::vector<double> masses;
    std::vector<double> values;

    double ess_sup() const {
        double m = 0.0;
        for (std::size_t n = 0; n < values.size(); ++n)
            if (masses[n] > 0.0) m = std::max(m, std::abs(values[n]));
        return m;
    }
};

inline StepFunction embed_linf(const FiniteSequence& a, std::span<const double> masses) {
    if (masses.size() != a.size()) throw invalid_input("embed_linf needs one mass per sequence entry");
    for (double mu : masses)
        if (!(mu > 0.0) || !std::isfinite(mu)) throw invalid_input("partition cells must have positive mass");
    return StepFunction{{masses.begin(), masses.end()}, {a.entries().begin(), a.entries().end()}};
}

} // namespace wbs
