#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wbs/errors.hpp"
#include "wbs/metric.hpp"
#include "wbs/tolerances.hpp"

namespace wbs {

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace space) { return std::make_shared<const FiniteMetricSpace>(std::move(space)); }

/// Exponent alpha in (0, 1].
class HolderExponent {
  public:
    explicit HolderExponent(double alpha) : alpha_{alpha} {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw invalid_input("Hölder exponent must lie in (0, 1]");
    }
    double value() const noexcept { return alpha_; }

  private:
    double alpha_;
};

/// A real value at every point of a finite metric space.
class ScalarField {
  public:
    ScalarField(SpacePtr space, std::vector<double> values) : space_{std::move(space)}, values_{std::move(values)} {
        if (!space_) throw invalid_input("scalar field needs a space");
        if (values_.size() != space_->size())
            throw invalid_input("scalar field has " + std::to_string(values_.size()) + " values for " +
                                std::to_string(space_->size()) + " points");
        for (double v : values_)
            if (!std::isfinite(v)) throw invalid_input("scalar field value is not finite");
    }

    static ScalarField zero(SpacePtr space) {
        const std::size_t n = space->size();
        return ScalarField{std::move(space), std::vector<double>(n, 0.0)};
    }

    const FiniteMetricSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Points where the field is nonzero.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] != 0.0) out.push_back(i);
        return out;
    }

  private:
    SpacePtr space_;
    std::vector<double> values_;
};

inline double sup_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

struct SeminormWitness {
    double value = 0.0;
    std::size_t x = 0, y = 0;  // maximizing pair, x < y (both 0 on singletons)
};

/// Exhaustive scan over unordered pairs in (i, j) lexicographic order.
inline SeminormWitness holder_seminorm_witness(const ScalarField& f, HolderExponent alpha) {
    const auto& space = f.space();
    const std::size_t n = f.size();
    const double a = alpha.value();
    SeminormWitness best;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double q = std::abs(f[i] - f[j]) / std::pow(space(i, j), a);
            if (q > best.value) best = {q, i, j};
        }
    return best;
}

inline double holder_seminorm(const ScalarField& f, HolderExponent alpha) {
    return holder_seminorm_witness(f, alpha).value;
}

inline double holder_norm(const ScalarField& f, HolderExponent alpha) {
    return sup_norm(f) + holder_seminorm(f, alpha);
}

/// The field restricted to a subset of points, on the induced subspace.
inline ScalarField restrict(const ScalarField& f, std::span<const std::size_t> subset) {
    auto sub = share(restrict(f.space(), subset));
    std::vector<double> vals;
    vals.reserve(subset.size());
    for (auto i : subset) vals.push_back(f[i]);
    return ScalarField{std::move(sub), std::move(vals)};
}

namespace detail {

// f_n at a single point; the outer max makes the value exactly 0 off B_n.
inline double bump_f_value(const FiniteMetricSpace& space, PointPair pair, double K, double alpha, std::size_t p) {
    const double reach = std::pow(space(pair.x, pair.y), alpha);
    const double inner = reach - std::pow(space(p, pair.y), alpha) / std::pow(K, alpha);
    return std::max(std::min(1.0, inner), 0.0);
}

inline void check_bump_args(const FiniteMetricSpace& space, PointPair pair, double K) {
    space.check_index(pair.x);
    space.check_index(pair.y);
    if (pair.x == pair.y) throw invalid_input("bump needs x_n != y_n");
    if (!(K > 0.0 && K <= 1.0)) throw invalid_input("K must lie in (0, 1]");
}

} // namespace detail

/// f_n(x) = max{ min{1, d^a(x_n, y_n) - d^a(x, y_n) / K^a}, 0 }.
inline ScalarField bump_f(SpacePtr space, PointPair pair, double K, HolderExponent alpha) {
    detail::check_bump_args(*space, pair, K);
    std::vector<double> vals(space->size());
    for (std::size_t p = 0; p < vals.size(); ++p)
        vals[p] = detail::bump_f_value(*space, pair, K, alpha.value(), p);
    return ScalarField{std::move(space), std::move(vals)};
}

/// phi_n(x) = max{ 1 - d(x, x_n) / eps, 0 }.
inline ScalarField bump_phi(SpacePtr space, std::size_t center, double epsilon) {
    space->check_index(center);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw invalid_input("epsilon must be positive");
    std::vector<double> vals(space->size());
    for (std::size_t p = 0; p < vals.size(); ++p) vals[p] = std::max(1.0 - (*space)(p, center) / epsilon, 0.0);
    return ScalarField{std::move(space), std::move(vals)};
}

/// |a^alpha - b^alpha| <= |a - b|^alpha, with slack float_slack * max(1, a^alpha, b^alpha).
inline bool power_diff_check(double a, double b, HolderExponent alpha, const Tolerances& tol = default_tolerances()) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw invalid_input("power_diff_check needs a, b >= 0");
    const double al = alpha.value();
    const double pa = std::pow(a, al), pb = std::pow(b, al);
    return std::abs(pa - pb) <= std::pow(std::abs(a - b), al) + tol.float_slack * std::max({1.0, pa, pb});
}

} // namespace wbs
