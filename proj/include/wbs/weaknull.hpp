#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "wbs/bignum.hpp"
#include "wbs/errors.hpp"
#include "wbs/schreier.hpp"

namespace wbs {

// u_k(i) = 1 iff k belongs to the i-th set of the enumeration.
template <SchreierEnumeration E = CanonicalEnumeration>
int entry(std::uint64_t k, const SchreierRank& i) {
    if (k == 0) throw invalid_input("sequence index k must be >= 1");
    return E::unrank(i).contains(k) ? 1 : 0;
}

template <SchreierEnumeration E = CanonicalEnumeration>
int entry(std::uint64_t k, std::uint64_t i) {
    return entry<E>(k, SchreierRank{i});
}

/// Largest k with u_k(i) = 1; every k above it has u_k(i) = 0.
template <SchreierEnumeration E = CanonicalEnumeration>
std::uint64_t coordinatewise_null_check(const SchreierRank& i) {
    return E::unrank(i).max();
}

template <SchreierEnumeration E = CanonicalEnumeration>
std::uint64_t coordinatewise_null_check(std::uint64_t i) {
    return coordinatewise_null_check<E>(SchreierRank{i});
}

/**
 * Strictly increasing k_1 < k_2 < ... given by an explicit prefix, optionally
 * continued by a closed-form rule. Indices are 1-based. Reading past the
 * known part throws needs_more_data.
 */
class Subsequence {
  public:
    struct Affine {  // k_j = slope * j + offset
        std::uint64_t slope;
        std::uint64_t offset;
    };
    struct Geometric {  // k_j = first * ratio^(j-1)
        std::uint64_t first;
        std::uint64_t ratio;
    };
    using Rule = std::variant<Affine, Geometric>;

    static Subsequence from_prefix(std::vector<std::uint64_t> prefix) {
        return Subsequence{std::move(prefix), std::nullopt};
    }

    static Subsequence affine(std::uint64_t slope, std::uint64_t offset) {
        if (slope == 0) throw invalid_input("affine subsequence needs slope >= 1");
        return Subsequence{{}, Affine{slope, offset}};
    }

    static Subsequence identity() { return affine(1, 0); }

    static Subsequence geometric(std::uint64_t first, std::uint64_t ratio) {
        if (first == 0 || ratio < 2) throw invalid_input("geometric subsequence needs first >= 1, ratio >= 2");
        return Subsequence{{}, Geometric{first, ratio}};
    }

    /// Explicit prefix whose gaps are drawn uniformly from [1, max_gap].
    static Subsequence random(std::uint64_t seed, std::size_t length, std::uint64_t max_gap) {
        if (max_gap == 0) throw invalid_input("random subsequence needs max_gap >= 1");
        std::mt19937_64 rng{seed};
        std::vector<std::uint64_t> prefix;
        prefix.reserve(length);
        std::uint64_t cur = 0;
        for (std::size_t j = 0; j < length; ++j) {
            cur += 1 + rng() % max_gap;
            prefix.push_back(cur);
        }
        return from_prefix(std::move(prefix));
    }

    Subsequence(std::vector<std::uint64_t> prefix, std::optional<Rule> rule)
      : prefix_{std::move(prefix)}, rule_{rule} {
        for (std::size_t j = 0; j < prefix_.size(); ++j) {
            if (prefix_[j] == 0) throw invalid_input("subsequence entries must be >= 1");
            if (j > 0 && prefix_[j] <= prefix_[j - 1])
                throw invalid_input("subsequence must be strictly increasing at index " + std::to_string(j + 1));
        }
        if (rule_) {
            const std::size_t first_ruled = prefix_.size() + 1;
            auto v = rule_value(first_ruled);
            if (!v || *v == 0 || (!prefix_.empty() && *v <= prefix_.back()))
                throw invalid_input("rule does not continue the prefix strictly increasingly");
        }
    }

    /// k_j, or nullopt when j is beyond the known part (or overflows 64 bits).
    std::optional<std::uint64_t> try_at(std::size_t j) const {
        if (j == 0) throw invalid_input("subsequence indices are 1-based");
        if (j <= prefix_.size()) return prefix_[j - 1];
        if (!rule_) return std::nullopt;
        return rule_value(j);
    }

    std::uint64_t at(std::size_t j) const {
        if (auto v = try_at(j)) return *v;
        throw needs_more_data("subsequence index " + std::to_string(j) + " is not available", j);
    }

    /// Number of known entries, or nullopt when a rule makes it unbounded.
    std::optional<std::size_t> known_length() const {
        if (rule_) return std::nullopt;
        return prefix_.size();
    }

    const std::vector<std::uint64_t>& prefix() const noexcept { return prefix_; }
    const std::optional<Rule>& rule() const noexcept { return rule_; }

  private:
    std::optional<std::uint64_t> rule_value(std::size_t j) const {
        constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
        if (const auto* a = std::get_if<Affine>(&*rule_)) {
            if (j > (kMax - a->offset) / a->slope) return std::nullopt;
            return a->slope * j + a->offset;
        }
        const auto& g = std::get<Geometric>(*rule_);
        std::uint64_t v = g.first;
        for (std::size_t e = 1; e < j; ++e) {
            if (v > kMax / g.ratio) return std::nullopt;
            v *= g.ratio;
        }
        return v;
    }

    std::vector<std::uint64_t> prefix_;
    std::optional<Rule> rule_;
};

/**
 * Witness that the Cesàro mean of u_{k_1}, ..., u_{k_{2N}} has sup-norm >= 1/2.
 *
 * witness_set = {k_{N+1}, ..., k_{N+k_{N+1}}} has k_{N+1} elements and minimum
 * k_{N+1}, so it is a maximal Schreier set; witness_coordinate is its rank i0
 * and mean is the exact value of the Cesàro mean at coordinate i0.
 */
struct CesaroCertificate {
    std::uint64_t N;
    SchreierSet witness_set;
    SchreierRank witness_coordinate;
    Rational mean;
    std::vector<std::uint64_t> prefix;  // k_1 .. k_{2N}
    std::size_t prefix_len;             // N + k_{N+1}: subsequence entries consumed
    std::string enumeration;
};

struct CertifyLimits {
    std::uint64_t max_witness_size = 2'000'000;
};

template <SchreierEnumeration E = CanonicalEnumeration>
CesaroCertificate certify_not_cesaro_null(const Subsequence& sub, std::uint64_t N, CertifyLimits limits = {}) {
    if (N == 0) throw invalid_input("N must be >= 1");
    const std::uint64_t head = sub.at(N + 1);
    if (head > limits.max_witness_size)
        throw invalid_input("witness set would have " + std::to_string(head) + " elements, above the limit " +
                            std::to_string(limits.max_witness_size));
    const std::size_t required = N + head;
    if (!sub.try_at(required))
        throw needs_more_data("witness set needs k_" + std::to_string(required), required);

    std::vector<std::uint64_t> witness;
    witness.reserve(head);
    for (std::size_t j = N + 1; j <= required; ++j) witness.push_back(sub.at(j));

    CesaroCertificate cert{N,
                           SchreierSet{std::move(witness)},
                           SchreierRank{1u},
                           Rational{0},
                           {},
                           required,
                           std::string{E::name}};
    cert.witness_coordinate = E::rank_of(cert.witness_set);

    // Evaluate u_{k_j}(i0) through the enumeration itself.
    const SchreierSet at_i0 = E::unrank(cert.witness_coordinate);
    if (!(at_i0 == cert.witness_set))
        throw certificate_violation("enumeration is not a bijection at rank " + cert.witness_coordinate.to_string());

    std::uint64_t hits = 0;
    for (std::size_t j = 1; j <= 2 * N; ++j) {
        const std::uint64_t k = sub.at(j);
        cert.prefix.push_back(k);
        const bool in = at_i0.contains(k);
        if (j > N && !in)
            throw certificate_violation("u_{k_" + std::to_string(j) + "}(i0) = 0 for j in (N, 2N]");
        hits += in ? 1 : 0;
    }
    cert.mean = Rational{from_u64(hits), from_u64(2 * N)};
    cert.mean.canonicalize();
    if (cert.mean < Rational{1, 2})
        throw certificate_violation("Cesàro mean " + to_fraction(cert.mean) + " < 1/2 at N = " + std::to_string(N));
    return cert;
}

/// Certified lower bound on the sup-norm of (1/2N) sum_{j<=2N} u_{k_j}.
template <SchreierEnumeration E = CanonicalEnumeration>
Rational sup_cesaro_norm_lower_bound(const Subsequence& sub, std::uint64_t N, CertifyLimits limits = {}) {
    return certify_not_cesaro_null<E>(sub, N, limits).mean;
}

/// One finite round of the weak-nullity criterion: given alpha and strictly
/// increasing prefixes (k_j), (i_n), (J_n), exhibit n and j <= J_n with
/// |u_{k_j}(i_n)| <= alpha.
struct WeakConvergenceChallenge {
    Rational alpha;
    std::vector<std::uint64_t> k_seq;
    std::vector<std::uint64_t> i_seq;
    std::vector<std::uint64_t> J_seq;

    void validate() const {
        if (alpha <= 0) throw invalid_input("alpha must be positive");
        auto check = [](const std::vector<std::uint64_t>& s, const char* name) {
            for (std::size_t t = 0; t < s.size(); ++t) {
                if (s[t] == 0) throw invalid_input(std::string(name) + " entries must be >= 1");
                if (t > 0 && s[t] <= s[t - 1])
                    throw invalid_input(std::string(name) + " must be strictly increasing");
            }
        };
        check(k_seq, "k_seq");
        check(i_seq, "i_seq");
        check(J_seq, "J_seq");
        if (k_seq.empty()) throw needs_more_data("k_seq is empty", 1);
    }
};

struct WeakWitness {
    std::size_t n;  // 1-based into i_seq / J_seq
    std::size_t j;  // 1-based into k_seq, j <= J_n
    int value;      // u_{k_j}(i_n)
};

template <SchreierEnumeration E = CanonicalEnumeration>
WeakWitness find_weak_witness(const WeakConvergenceChallenge& ch) {
    ch.validate();
    const std::uint64_t k1 = ch.k_seq.front();
    const std::size_t n = k1 + 1;  // any n > k_1 works; take the first
    if (ch.i_seq.size() < n || ch.J_seq.size() < n)
        throw needs_more_data("i_seq and J_seq must reach index " + std::to_string(n), n);

    const SchreierSet t = E::unrank(SchreierRank{ch.i_seq[n - 1]});
    const std::uint64_t Jn = ch.J_seq[n - 1];
    // If k_1 is in T(i_n) then |T(i_n)| = min T(i_n) <= k_1 < n <= J_n, so some
    // k_j with j <= |T(i_n)| + 1 escapes.
    for (std::size_t j = 1; j <= Jn; ++j) {
        if (j > ch.k_seq.size())
            throw needs_more_data("k_seq must reach index " + std::to_string(j), j);
        if (!t.contains(ch.k_seq[j - 1])) {
            WeakWitness w{n, j, 0};
            if (Rational{w.value} > ch.alpha) throw certificate_violation("witness entry exceeds alpha");
            return w;
        }
    }
    throw certificate_violation("no escaping index j <= J_n for i_n = " + std::to_string(ch.i_seq[n - 1]));
}

} // namespace wbs
