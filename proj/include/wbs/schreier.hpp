#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wbs/bignum.hpp"
#include "wbs/errors.hpp"

namespace wbs {

/**
 * A maximal Schreier set: a finite A ⊂ {1,2,...} with |A| = min(A).
 *
 * Elements are stored sorted ascending; the invariant is checked on
 * construction, so every live SchreierSet is a member of the family.
 */
class SchreierSet {
  public:
    explicit SchreierSet(std::vector<std::uint64_t> elements) : elements_{std::move(elements)} {
        if (elements_.empty()) throw invalid_input("Schreier set must be nonempty");
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (elements_[i] == 0) throw invalid_input("Schreier set elements must be positive");
            if (i > 0 && elements_[i] <= elements_[i - 1])
                throw invalid_input("Schreier set elements must be strictly increasing");
        }
        if (elements_.size() != elements_.front())
            throw invalid_input("not a maximal Schreier set: |A| = " + std::to_string(elements_.size()) +
                                " but min(A) = " + std::to_string(elements_.front()));
    }

    std::span<const std::uint64_t> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::uint64_t min() const noexcept { return elements_.front(); }
    std::uint64_t max() const noexcept { return elements_.back(); }

    bool contains(std::uint64_t k) const {
        return std::binary_search(elements_.begin(), elements_.end(), k);
    }

    // Lexicographic on the sorted tuple.
    friend auto operator<=>(const SchreierSet&, const SchreierSet&) = default;

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(elements_[i]);
        }
        return out + "}";
    }

  private:
    std::vector<std::uint64_t> elements_;
};

/// 1-based position in an enumeration of the family. Values outgrow 64 bits quickly.
class SchreierRank {
  public:
    explicit SchreierRank(BigInt value) : value_{std::move(value)} {
        if (value_ < 1) throw invalid_input("Schreier rank must be >= 1, got " + value_.get_str());
    }
    explicit SchreierRank(std::uint64_t value) : SchreierRank(from_u64(value)) {}

    const BigInt& value() const noexcept { return value_; }
    std::string to_string() const { return to_decimal(value_); }

    friend bool operator==(const SchreierRank& a, const SchreierRank& b) { return a.value_ == b.value_; }
    friend bool operator<(const SchreierRank& a, const SchreierRank& b) { return a.value_ < b.value_; }

  private:
    BigInt value_;
};

inline std::ostream& operator<<(std::ostream& os, const SchreierSet& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SchreierRank& r) { return os << r.to_string(); }

/// True iff the candidate (read as a set; duplicates collapse) is nonempty with |A| = min(A).
inline bool is_maximal_schreier(std::span<const std::int64_t> candidate) {
    std::set<std::int64_t> s(candidate.begin(), candidate.end());
    for (auto v : s)
        if (v <= 0) throw invalid_input("Schreier candidates must contain positive integers only");
    if (s.empty()) return false;
    return static_cast<std::int64_t>(s.size()) == *s.begin();
}

/// |{A in family : max(A) <= n}|. Equals sum_{m=1}^{n} C(n-m, m-1), which is the
/// Fibonacci number F(n) with F(1) = F(2) = 1.
inline BigInt count_max_at_most(std::uint64_t n) {
    if (n == 0) throw invalid_input("count_max_at_most requires n >= 1");
    BigInt out;
    mpz_fib_ui(out.get_mpz_t(), n);
    return out;
}

namespace detail {

inline BigInt fib(std::uint64_t n) {
    BigInt out;
    mpz_fib_ui(out.get_mpz_t(), n);
    return out;
}

// Number of family members with max(A) exactly n.
inline BigInt grade_size(std::uint64_t n) {
    if (n == 1) return BigInt{1};
    if (n == 2) return BigInt{0};
    return fib(n - 2);
}

// Members with max n and min m (n >= 3, m >= 2): choose m-2 interior elements
// strictly between m and n.
inline BigInt block_size(std::uint64_t n, std::uint64_t m) {
    if (m < 2 || n <= m) return BigInt{0};
    return binomial(n - m - 1, m - 2);
}

// Smallest n with F(n) >= r (so that r falls in grade n).
inline std::uint64_t grade_of_rank(const BigInt& r) {
    const double bits = static_cast<double>(mpz_sizeinbase(r.get_mpz_t(), 2));
    const double log2_phi = std::log2((1.0 + std::sqrt(5.0)) / 2.0);
    auto n = static_cast<std::int64_t>(1.0 + (bits - 1.0) / log2_phi) - 3;
    if (n < 1) n = 1;
    BigInt prev, cur;  // F(n-1), F(n)
    mpz_fib2_ui(cur.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(n));
    while (cur < r) {
        BigInt next = cur + prev;
        prev = cur;
        cur = next;
        ++n;
    }
    return static_cast<std::uint64_t>(n);
}

// Lexicographic rank (0-based) of a k-combination of {0..p-1}, given sorted.
// Uses the hockey-stick identity to sum skipped blocks in closed form.
inline BigInt combination_rank(std::uint64_t p, std::span<const std::uint64_t> chosen) {
    const std::uint64_t k = chosen.size();
    BigInt r;
    std::uint64_t next_free = 0;  // c_{i-1} + 1
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t c = chosen[i];
        const std::uint64_t t1 = k - i;  // (k - (i+1)) + 1
        r += binomial(p - next_free, t1) - binomial(p - c, t1);
        next_free = c + 1;
    }
    return r;
}

inline std::vector<std::uint64_t> combination_unrank(std::uint64_t p, std::uint64_t k, BigInt r) {
    std::vector<std::uint64_t> out;
    out.reserve(k);
    std::uint64_t next_free = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t t1 = k - i;
        // Number of combinations whose i-th element lies in [next_free, v] is
        // C(p - next_free, t1) - C(p - 1 - v, t1). Find smallest v exceeding r.
        const BigInt head = binomial(p - next_free, t1);
        std::uint64_t lo = next_free, hi = p - t1;  // the element must leave room for the rest
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (head - binomial(p - 1 - mid, t1) > r) hi = mid;
            else lo = mid + 1;
        }
        if (lo > next_free) r -= head - binomial(p - lo, t1);
        out.push_back(lo);
        next_free = lo + 1;
    }
    return out;
}

// 0-based offset of `a` inside its grade (max(a)) under lexicographic order.
inline BigInt offset_in_grade(const SchreierSet& a) {
    const std::uint64_t n = a.max();
    const std::uint64_t m = a.min();
    if (n == 1) return BigInt{0};
    BigInt off;
    for (std::uint64_t mm = 2; mm < m; ++mm) off += block_size(n, mm);
    // interior elements drawn from {m+1, ..., n-1}
    std::vector<std::uint64_t> interior;
    auto el = a.elements();
    for (std::size_t i = 1; i + 1 < el.size(); ++i) interior.push_back(el[i] - (m + 1));
    off += combination_rank(n - m - 1, interior);
    return off;
}

inline SchreierSet set_at_offset(std::uint64_t n, BigInt off) {
    if (n == 1) return SchreierSet{{1}};
    for (std::uint64_t m = 2; 2 * m <= n + 1; ++m) {
        BigInt block = block_size(n, m);
        if (off < block) {
            std::vector<std::uint64_t> el{m};
            for (auto c : combination_unrank(n - m - 1, m - 2, off)) el.push_back(c + m + 1);
            el.push_back(n);
            return SchreierSet{std::move(el)};
        }
        off -= block;
    }
    throw std::logic_error("offset outside grade " + std::to_string(n));
}

} // namespace detail

/// A bijection between ranks 1,2,3,... and the family.
template <class E>
concept SchreierEnumeration = requires(const SchreierSet& s, const SchreierRank& r) {
    { E::name } -> std::convertible_to<std::string_view>;
    { E::unrank(r) } -> std::same_as<SchreierSet>;
    { E::rank_of(s) } -> std::same_as<SchreierRank>;
};

/**
 * Sets graded by max(A) ascending; within a grade, lexicographic on the sorted
 * tuple. Starts {1}, {2,3}, {2,4}, {2,5}, {3,4,5}, {2,6}, {3,4,6}, {3,5,6}, ...
 */
struct CanonicalEnumeration {
    static constexpr std::string_view name = "canonical";

    static SchreierSet unrank(const SchreierRank& index) {
        const std::uint64_t n = detail::grade_of_rank(index.value());
        BigInt off = index.value() - 1;
        if (n > 1) off -= detail::fib(n - 1);
        return detail::set_at_offset(n, std::move(off));
    }

    static SchreierRank rank_of(const SchreierSet& a) {
        const std::uint64_t n = a.max();
        BigInt r = detail::offset_in_grade(a) + 1;
        if (n > 1) r += detail::fib(n - 1);
        return SchreierRank{std::move(r)};
    }
};

/// Same grading by max(A), but each grade is listed in reverse lexicographic order.
struct ReverseGradeEnumeration {
    static constexpr std::string_view name = "alt";

    static SchreierSet unrank(const SchreierRank& index) {
        const std::uint64_t n = detail::grade_of_rank(index.value());
        BigInt off = index.value() - 1;
        if (n > 1) off -= detail::fib(n - 1);
        return detail::set_at_offset(n, detail::grade_size(n) - 1 - off);
    }

    static SchreierRank rank_of(const SchreierSet& a) {
        const std::uint64_t n = a.max();
        BigInt r = detail::grade_size(n) - detail::offset_in_grade(a);
        if (n > 1) r += detail::fib(n - 1);
        return SchreierRank{std::move(r)};
    }
};

static_assert(SchreierEnumeration<CanonicalEnumeration>);
static_assert(SchreierEnumeration<ReverseGradeEnumeration>);

inline SchreierSet unrank(const SchreierRank& index) { return CanonicalEnumeration::unrank(index); }
inline SchreierRank rank_of(const SchreierSet& a) { return CanonicalEnumeration::rank_of(a); }

} // namespace wbs
