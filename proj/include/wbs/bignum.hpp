#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "wbs/errors.hpp"

namespace wbs {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline BigInt parse_decimal(const std::string& s) {
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0)
        throw invalid_input("not a decimal integer: '" + s + "'");
    return out;
}

/// "p/q" in lowest terms; integers keep the "/1" so the format is uniform.
inline std::string to_fraction(Rational q) {
    q.canonicalize();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction(const std::string& s) {
    Rational out;
    if (s.empty() || out.set_str(s, 10) != 0 || out.get_den() == 0)
        throw invalid_input("not a rational p/q: '" + s + "'");
    out.canonicalize();
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
    if (!fits_u64(v)) throw invalid_input("integer does not fit in 64 bits: " + v.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

/// C(n, k) for machine-sized arguments; zero when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt out;
    if (k > n) return out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

} // namespace wbs
