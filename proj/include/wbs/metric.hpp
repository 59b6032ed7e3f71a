#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "wbs/errors.hpp"
#include "wbs/tolerances.hpp"

namespace wbs {

enum class PointMetric { euclidean, l1, linf };

/**
 * Labeled points with a dense distance matrix.
 *
 * Construction only checks shape, finiteness and label uniqueness; the metric
 * axioms are checked separately by validate_metric so that a bad file can be
 * loaded and diagnosed.
 */
class FiniteMetricSpace {
  public:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> row_major)
      : labels_{std::move(labels)}, dist_{std::move(row_major)} {
        const std::size_t n = labels_.size();
        if (n == 0) throw invalid_input("metric space must have at least one point");
        if (dist_.size() != n * n)
            throw invalid_input("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                                std::to_string(n * n));
        for (double d : dist_)
            if (!std::isfinite(d)) throw invalid_input("distance matrix contains a non-finite entry");
        for (std::size_t i = 0; i < n; ++i) {
            if (!index_.emplace(labels_[i], i).second) throw invalid_input("duplicate label '" + labels_[i] + "'");
        }
    }

    static FiniteMetricSpace from_matrix(std::vector<std::string> labels, const std::vector<std::vector<double>>& m) {
        const std::size_t n = m.size();
        if (labels.empty()) {
            for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        }
        if (labels.size() != n) throw invalid_input("label count does not match matrix size");
        std::vector<double> flat;
        flat.reserve(n * n);
        for (const auto& row : m) {
            if (row.size() != n) throw invalid_input("distance matrix is not square");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return FiniteMetricSpace{std::move(labels), std::move(flat)};
    }

    static FiniteMetricSpace from_points(const std::vector<std::vector<double>>& points, PointMetric metric,
                                         std::vector<std::string> labels = {}) {
        const std::size_t n = points.size();
        if (n == 0) throw invalid_input("point cloud is empty");
        const std::size_t dim = points.front().size();
        for (const auto& p : points) {
            if (p.size() != dim) throw invalid_input("points have inconsistent dimensions");
            for (double c : p)
                if (!std::isfinite(c)) throw invalid_input("point coordinate is not finite");
        }
        if (labels.empty())
            for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        if (labels.size() != n) throw invalid_input("label count does not match point count");

        std::vector<double> flat(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t c = 0; c < dim; ++c) {
                    const double diff = std::abs(points[i][c] - points[j][c]);
                    switch (metric) {
                    case PointMetric::euclidean: acc += diff * diff; break;
                    case PointMetric::l1: acc += diff; break;
                    case PointMetric::linf: acc = std::max(acc, diff); break;
                    }
                }
                if (metric == PointMetric::euclidean) acc = std::sqrt(acc);
                flat[i * n + j] = flat[j * n + i] = acc;
            }
        }
        return FiniteMetricSpace{std::move(labels), std::move(flat)};
    }

    std::size_t size() const noexcept { return labels_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::span<const double> row_major() const noexcept { return dist_; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw invalid_input("unknown point label '" + label + "'");
        return it->second;
    }

    void check_index(std::size_t i) const {
        if (i >= size()) throw invalid_input("point index " + std::to_string(i) + " out of range");
    }

  private:
    std::vector<std::string> labels_;
    std::vector<double> dist_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct MetricViolation {
    enum class Kind { nonzero_diagonal, asymmetric, nonpositive, triangle };
    Kind kind;
    std::size_t a, b, c;  // triangle: d(a,c) > d(a,b) + d(b,c); otherwise c == b
    double excess;

    static const char* kind_name(Kind k) {
        switch (k) {
        case Kind::nonzero_diagonal: return "nonzero_diagonal";
        case Kind::asymmetric: return "asymmetric";
        case Kind::nonpositive: return "nonpositive";
        case Kind::triangle: return "triangle";
        }
        return "?";
    }
};

struct MetricReport {
    std::vector<MetricViolation> violations;  // first max_listed only
    std::size_t total = 0;

    bool valid() const noexcept { return total == 0; }
};

inline MetricReport validate_metric(const FiniteMetricSpace& space, const Tolerances& tol = default_tolerances(),
                                    std::size_t max_listed = 1000) {
    MetricReport report;
    auto add = [&](MetricViolation v) {
        ++report.total;
        if (report.violations.size() < max_listed) report.violations.push_back(v);
    };
    const std::size_t n = space.size();
    const double rel = tol.metric_relative;
    for (std::size_t i = 0; i < n; ++i) {
        if (space(i, i) != 0.0) add({MetricViolation::Kind::nonzero_diagonal, i, i, i, std::abs(space(i, i))});
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = space(i, j), dji = space(j, i);
            if (std::abs(dij - dji) > rel * std::max({1.0, std::abs(dij), std::abs(dji)}))
                add({MetricViolation::Kind::asymmetric, i, j, j, std::abs(dij - dji)});
            if (dij <= 0.0 || dji <= 0.0)
                add({MetricViolation::Kind::nonpositive, i, j, j, -std::min(dij, dji)});
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            if (a == c) continue;
            const double dac = space(a, c);
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                const double bound = space(a, b) + space(b, c);
                if (dac - bound > rel * std::max(1.0, dac))
                    add({MetricViolation::Kind::triangle, a, b, c, dac - bound});
            }
        }
    return report;
}

/// Induced subspace on the given point indices (kept in the given order).
inline FiniteMetricSpace restrict(const FiniteMetricSpace& space, std::span<const std::size_t> subset) {
    if (subset.empty()) throw invalid_input("restriction to an empty subset");
    std::vector<std::string> labels;
    std::vector<char> seen(space.size(), 0);
    for (auto i : subset) {
        space.check_index(i);
        if (seen[i]++) throw invalid_input("duplicate point in restriction subset");
        labels.push_back(space.label(i));
    }
    const std::size_t m = subset.size();
    std::vector<double> flat(m * m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) flat[r * m + c] = space(subset[r], subset[c]);
    return FiniteMetricSpace{std::move(labels), std::move(flat)};
}

inline FiniteMetricSpace restrict(const FiniteMetricSpace& space, const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx;
    idx.reserve(labels.size());
    for (const auto& l : labels) idx.push_back(space.index_of(l));
    return restrict(space, std::span<const std::size_t>{idx});
}

// ---------------------------------------------------------------------------
// Separated pair families

struct PointPair {
    std::size_t x;
    std::size_t y;

    friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// Pairs (x_n, y_n) with a constant K. B_n is the open ball B(y_n, K d(x_n, y_n)).
struct SeparatedPairFamily {
    std::vector<PointPair> pairs;
    double K = 1.0;

    double radius(const FiniteMetricSpace& space, std::size_t n) const {
        return K * space(pairs[n].x, pairs[n].y);
    }

    bool in_ball(const FiniteMetricSpace& space, std::size_t n, std::size_t p) const {
        return space(p, pairs[n].y) < radius(space, n);
    }
};

struct PairViolation {
    enum class Condition { distinct_points, x_outside_balls, disjoint_balls, k_range };
    Condition condition;
    std::size_t n = 0, m = 0;  // pair indices (0-based)
    std::size_t point = 0;     // offending point, where meaningful

    std::string describe(const FiniteMetricSpace& space) const {
        switch (condition) {
        case Condition::distinct_points: return "pair " + std::to_string(n) + ": x == y";
        case Condition::x_outside_balls:
            return "x of pair " + std::to_string(m) + " ('" + space.label(point) + "') lies in ball " +
                   std::to_string(n);
        case Condition::disjoint_balls:
            return "balls " + std::to_string(n) + " and " + std::to_string(m) + " share point '" +
                   space.label(point) + "'";
        case Condition::k_range: return "K > 1";
        }
        return "?";
    }
};

struct PairFamilyReport {
    std::vector<PairViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

inline void check_k(double K) {
    if (!(K > 0.0) || !std::isfinite(K)) throw invalid_input("K must be a positive finite number");
}

/// Checks x_n != y_n, x_m outside every B_n, and pairwise disjointness of the
/// balls over the points of the space.
inline PairFamilyReport verify_pair_family(const FiniteMetricSpace& space, const SeparatedPairFamily& family) {
    check_k(family.K);
    for (const auto& p : family.pairs) {
        space.check_index(p.x);
        space.check_index(p.y);
    }
    PairFamilyReport report;
    using C = PairViolation::Condition;
    if (family.K > 1.0) report.violations.push_back({C::k_range});

    const std::size_t count = family.pairs.size();
    for (std::size_t n = 0; n < count; ++n)
        if (family.pairs[n].x == family.pairs[n].y) report.violations.push_back({C::distinct_points, n, n, family.pairs[n].x});

    for (std::size_t n = 0; n < count; ++n)
        for (std::size_t m = 0; m < count; ++m)
            if (family.in_ball(space, n, family.pairs[m].x))
                report.violations.push_back({C::x_outside_balls, n, m, family.pairs[m].x});

    // owner[p] = first ball containing p
    std::vector<std::size_t> owner(space.size(), count);
    for (std::size_t n = 0; n < count; ++n)
        for (std::size_t p = 0; p < space.size(); ++p) {
            if (!family.in_ball(space, n, p)) continue;
            if (owner[p] != count) report.violations.push_back({C::disjoint_balls, owner[p], n, p});
            else owner[p] = n;
        }
    return report;
}

struct PairSearchResult {
    SeparatedPairFamily family;  // best family found (target_count pairs on success)
    bool success = false;
};

/**
 * Greedy construction: all ordered pairs sorted by distance ascending (ties by
 * x index, then y index); a pair is accepted when its points are unused and
 * the enlarged family still satisfies every separation condition. Stops as
 * soon as target_count pairs are accepted.
 */
inline PairSearchResult find_pair_family(const FiniteMetricSpace& space, double K, std::size_t target_count) {
    check_k(K);
    if (K > 1.0) throw invalid_input("K must be <= 1");
    const std::size_t n = space.size();

    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    candidates.reserve(n * (n - 1));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y) candidates.emplace_back(space(x, y), x, y);
    std::sort(candidates.begin(), candidates.end());

    PairSearchResult result;
    result.family.K = K;
    std::vector<char> used(n, 0), covered(n, 0);
    std::vector<std::size_t> xs;

    for (const auto& [d, x, y] : candidates) {
        if (result.family.pairs.size() >= target_count) break;
        if (used[x] || used[y] || covered[x]) continue;
        const double r = K * d;
        bool ok = !(space(x, y) < r);
        for (std::size_t p = 0; ok && p < n; ++p)
            if (space(p, y) < r && covered[p]) ok = false;
        for (std::size_t i = 0; ok && i < xs.size(); ++i)
            if (space(xs[i], y) < r) ok = false;
        if (!ok) continue;

        result.family.pairs.push_back({x, y});
        used[x] = used[y] = 1;
        xs.push_back(x);
        for (std::size_t p = 0; p < n; ++p)
            if (space(p, y) < r) covered[p] = 1;
    }
    result.success = result.family.pairs.size() >= target_count;
    return result;
}

} // namespace wbs
