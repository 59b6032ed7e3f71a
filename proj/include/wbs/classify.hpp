#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wbs/errors.hpp"
#include "wbs/ordinal.hpp"

namespace wbs {

enum class SpaceFamily { Calpha, Cb, Linf, C_of_ordinal };

inline const char* family_name(SpaceFamily f) {
    switch (f) {
    case SpaceFamily::Calpha: return "Calpha";
    case SpaceFamily::Cb: return "Cb";
    case SpaceFamily::Linf: return "Linf";
    case SpaceFamily::C_of_ordinal: return "C_of_ordinal";
    }
    return "?";
}

/// Weak Banach–Saks verdict with the statement that decides it.
struct Verdict {
    SpaceFamily space_family;
    bool wbs;
    std::string theorem;     // the characterization applied
    std::string reason;      // how the input meets it
    std::string assumption;  // caller-supplied facts not checkable from finite data; empty if none
};

/// Masses of the cells A_1..A_m. `terminal` means these cells are atoms that
/// exhaust the space; otherwise an infinite disjoint family of positive-measure
/// sets is asserted to exist.
struct FiniteMeasurePartition {
    std::vector<double> masses;
    bool terminal = true;

    void validate() const {
        for (double m : masses)
            if (!(m > 0.0) || !std::isfinite(m)) throw invalid_input("partition masses must be positive");
    }
};

/// Cardinality of M: a point count, or nullopt for an infinite space.
using SpaceSize = std::optional<std::uint64_t>;

inline constexpr const char* kTheoremCalpha = "C^alpha(M), 0 < alpha <= 1, is weakly Banach-Saks iff M is finite";
inline constexpr const char* kTheoremFarnum =
    "for compact M, C(M) is weakly Banach-Saks iff the omega-th derived set M^(omega) is empty (Farnum)";
inline constexpr const char* kTheoremCbNoncompact = "for non-compact M, C_b(M) is not weakly Banach-Saks";
inline constexpr const char* kTheoremLinf =
    "L_inf(mu) fails the weak Banach-Saks property iff there is a sequence of pairwise disjoint measurable sets "
    "of positive measure";

inline Verdict classify_c_of_ordinal(const Ordinal& o) {
    const CbRank r = cb_rank(o);
    Verdict v{SpaceFamily::C_of_ordinal, !r.infinite, kTheoremFarnum, {}, {}};
    v.reason = "space " + o.to_string() + " has Cantor-Bendixson rank " + r.to_string() +
               (r.infinite ? ", so M^(omega) is nonempty" : ", so M^(omega) is empty");
    return v;
}

inline Verdict classify_linf(const FiniteMeasurePartition& p) {
    p.validate();
    Verdict v{SpaceFamily::Linf, p.terminal, kTheoremLinf, {}, {}};
    if (p.terminal) {
        v.reason = std::to_string(p.masses.size()) + " atoms exhaust the space, so L_inf is " +
                   std::to_string(p.masses.size()) + "-dimensional";
    } else {
        v.reason = "infinitely many disjoint sets of positive measure exist; l_inf embeds isometrically";
        v.assumption = "partition is non-terminal";
    }
    return v;
}

inline Verdict classify_calpha(SpaceSize m_size) {
    Verdict v{SpaceFamily::Calpha, m_size.has_value(), kTheoremCalpha, {}, {}};
    if (m_size) {
        if (*m_size == 0) throw invalid_input("a metric space needs at least one point");
        v.reason = "M has " + std::to_string(*m_size) + " points, so C^alpha(M) is finite-dimensional";
    } else {
        v.reason = "M is infinite; l_inf embeds into C^alpha(M) through Hölder bumps on a separated pair family";
        v.assumption = "M is infinite";
    }
    return v;
}

/// What is known about M for C_b(M).
struct FiniteSpace {
    std::uint64_t points;
};
struct CompactCountable {
    Ordinal shape;
};
struct NonCompact {};
using CbTopology = std::variant<FiniteSpace, CompactCountable, NonCompact>;

inline Verdict classify_cb(const CbTopology& topology) {
    if (const auto* f = std::get_if<FiniteSpace>(&topology)) {
        if (f->points == 0) throw invalid_input("a metric space needs at least one point");
        Verdict v = classify_c_of_ordinal(Ordinal::natural(f->points));
        v.space_family = SpaceFamily::Cb;
        v.reason = "M is finite (" + std::to_string(f->points) + " points), so C_b(M) is finite-dimensional";
        return v;
    }
    if (const auto* c = std::get_if<CompactCountable>(&topology)) {
        Verdict v = classify_c_of_ordinal(c->shape);
        v.space_family = SpaceFamily::Cb;
        v.assumption = "M is compact and homeomorphic to the ordinal space " + c->shape.to_string();
        return v;
    }
    return {SpaceFamily::Cb, false, kTheoremCbNoncompact,
            "l_inf embeds isometrically via disjoint tent functions around a sequence without convergent subsequence",
            "M is not compact"};
}

} // namespace wbs
