#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wbs/errors.hpp"

namespace wbs {

struct OrdinalTerm;

/**
 * An ordinal below epsilon_0 in Cantor normal form,
 *   omega^{e_1} c_1 + ... + omega^{e_r} c_r,  e_1 > ... > e_r,  c_i >= 1,
 * where the exponents are ordinals themselves. Zero has no terms.
 *
 * As a topological space, omega^e c stands for c disjoint copies of the
 * compact interval [1, omega^e]; a natural number n is n isolated points.
 */
class Ordinal {
  public:
    Ordinal() = default;  // zero

    static Ordinal natural(std::uint64_t n);
    static Ordinal omega_power(Ordinal exponent, std::uint64_t coefficient = 1);
    static Ordinal omega() { return omega_power(natural(1)); }
    /// Validates strict decrease of exponents and positive coefficients.
    static Ordinal from_terms(std::vector<OrdinalTerm> terms);
    static Ordinal parse(std::string_view text);

    const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// The value when this is a natural number.
    std::optional<std::uint64_t> as_natural() const;
    bool is_finite() const { return as_natural().has_value(); }

    /// Ordinal sum (left-absorbing: n + omega = omega).
    Ordinal operator+(const Ordinal& rhs) const;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

  private:
    std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    std::uint64_t coefficient = 1;
};

inline Ordinal Ordinal::natural(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back({Ordinal{}, n});
    return o;
}

inline Ordinal Ordinal::omega_power(Ordinal exponent, std::uint64_t coefficient) {
    if (coefficient == 0) throw invalid_input("CNF coefficients must be positive");
    Ordinal o;
    o.terms_.push_back({std::move(exponent), coefficient});
    return o;
}

inline Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient == 0) throw invalid_input("CNF coefficients must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw invalid_input("CNF exponents must be strictly decreasing");
    }
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
}

inline std::optional<std::uint64_t> Ordinal::as_natural() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exponent.is_zero()) return terms_[0].coefficient;
    return std::nullopt;
}

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
        if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
    }
    return x.size() <=> y.size();
}

inline Ordinal Ordinal::operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    const Ordinal& lead = rhs.terms_.front().exponent;
    Ordinal out;
    for (const auto& t : terms_) {
        if (t.exponent < lead) break;
        out.terms_.push_back(t);
    }
    auto it = rhs.terms_.begin();
    if (!out.terms_.empty() && out.terms_.back().exponent == lead) {
        out.terms_.back().coefficient += it->coefficient;
        ++it;
    }
    out.terms_.insert(out.terms_.end(), it, rhs.terms_.end());
    return out;
}

inline std::string Ordinal::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        const auto& t = terms_[i];
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (t.exponent != natural(1)) {
            const auto e = t.exponent.as_natural();
            const bool simple = e || t.exponent == omega();
            out += "^" + (simple ? t.exponent.to_string() : "(" + t.exponent.to_string() + ")");
        }
        if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

namespace detail {

// sum := term ('+' term)* ; term := base ('*' nat)? ; base := nat | w ('^' atom)?
// atom := nat | w ('^' atom)? | '(' sum ')'.  "ω" is accepted for w.
class OrdinalParser {
  public:
    explicit OrdinalParser(std::string_view s) : s_{s} {}

    Ordinal parse() {
        Ordinal o = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return o;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw invalid_input("cannot parse ordinal '" + std::string(s_) + "' at offset " + std::to_string(pos_) +
                            ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool eat_omega() { return eat("w") || eat("\xCF\x89"); }

    std::optional<std::uint64_t> nat() {
        skip();
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v > (UINT64_MAX - d) / 10) fail("number too large");
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start) return std::nullopt;
        return v;
    }

    Ordinal sum() {
        Ordinal o = term();
        while (eat("+")) o = o + term();
        return o;
    }

    Ordinal term() {
        Ordinal base;
        if (auto n = nat()) {
            base = Ordinal::natural(*n);
        } else if (eat_omega()) {
            Ordinal e = Ordinal::natural(1);
            if (eat("^")) e = atom();
            base = Ordinal::omega_power(std::move(e));
        } else {
            fail("expected a number or w");
        }
        if (eat("*")) {
            auto c = nat();
            if (!c) fail("expected a coefficient after '*'");
            if (*c == 0) return Ordinal{};
            if (base.is_zero()) return base;
            auto terms = base.terms();
            terms.front().coefficient *= *c;
            base = Ordinal::from_terms(std::move(terms));
        }
        return base;
    }

    Ordinal atom() {
        if (auto n = nat()) return Ordinal::natural(*n);
        if (eat_omega()) {
            Ordinal e = Ordinal::natural(1);
            if (eat("^")) e = atom();
            return Ordinal::omega_power(std::move(e));
        }
        if (eat("(")) {
            Ordinal o = sum();
            if (!eat(")")) fail("expected ')'");
            return o;
        }
        fail("expected an exponent");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Ordinal Ordinal::parse(std::string_view text) { return detail::OrdinalParser{text}.parse(); }

/// Derived set (limit points) of the space. Each copy of [1, omega^e] with
/// e = n + 1 finite becomes a copy of [1, omega^n]; isolated points vanish;
/// copies with an infinite exponent are their own derived set.
inline Ordinal derived_set(const Ordinal& o) {
    std::vector<OrdinalTerm> out;
    for (const auto& t : o.terms()) {
        if (auto e = t.exponent.as_natural()) {
            if (*e == 0) continue;
            out.push_back({Ordinal::natural(*e - 1), t.coefficient});
        } else {
            out.push_back(t);
        }
    }
    return Ordinal::from_terms(std::move(out));
}

/// Cantor–Bendixson rank: least n with the n-th derived set empty.
struct CbRank {
    bool infinite = false;
    std::uint64_t value = 0;  // meaningful when !infinite

    std::string to_string() const { return infinite ? "infinite" : std::to_string(value); }
    friend bool operator==(const CbRank&, const CbRank&) = default;
};

inline CbRank cb_rank(const Ordinal& o) {
    if (o.is_zero()) return {false, 0};
    const auto& lead = o.terms().front().exponent;  // exponents are decreasing
    if (auto e = lead.as_natural()) return {false, *e + 1};
    return {true, 0};
}

} // namespace wbs
