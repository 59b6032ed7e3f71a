#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wbs/embed.hpp"
#include "wbs/samples.hpp"

using namespace wbs;

namespace {

struct Setup {
    SpacePtr space;
    SeparatedPairFamily family;
};

Setup reciprocal_setup() {
    auto s = share(samples::zero_and_reciprocals(20));
    SeparatedPairFamily fam;
    fam.K = 0.25;
    for (unsigned n = 1; n <= 10; ++n)
        fam.pairs.push_back({s->index_of("1/" + std::to_string(2 * n)), s->index_of("1/" + std::to_string(2 * n - 1))});
    return {s, fam};
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t m) {
    std::vector<double> v(m);
    for (auto& x : v) x = 2.0 * samples::unit_uniform(rng) - 1.0;
    return v;
}

} // namespace

TEST(FiniteSequence, SupValue) {
    EXPECT_EQ(FiniteSequence({1.0, -3.0, 2.0}).sup_value(), 3.0);
    EXPECT_EQ(FiniteSequence({}).sup_value(), 0.0);
    EXPECT_THROW(FiniteSequence({NAN}), invalid_input);
    EXPECT_EQ(FiniteSequence::unit(3, 1)[1], 1.0);
}

TEST(SupportMap, PairPointsMapAsExpected) {
    const auto [s, fam] = reciprocal_setup();
    const auto map = build_support_map(*s, fam, HolderExponent{0.5});
    for (std::size_t k = 0; k < fam.pairs.size(); ++k) {
        EXPECT_EQ(map[fam.pairs[k].y], k);
        EXPECT_FALSE(map[fam.pairs[k].x].has_value());
    }
    EXPECT_FALSE(map[s->index_of("0")].has_value());
}

TEST(SupportMap, OverlapIsInconsistent) {
    auto s = share(samples::line_grid(6));
    SeparatedPairFamily fam{{{0, 1}, {4, 2}}, 1.0};
    EXPECT_THROW(build_support_map(*s, fam, HolderExponent{1.0}), inconsistent_family);
}

TEST(EmbedHolder, ZeroAndUnitVectors) {
    const auto [s, fam] = reciprocal_setup();
    const HolderExponent alpha{0.7};
    const auto zero = embed_holder(FiniteSequence(std::vector<double>(10, 0.0)), s, fam, alpha);
    EXPECT_EQ(sup_norm(zero), 0.0);
    for (std::size_t k = 0; k < 10; ++k) {
        const auto t = embed_holder(FiniteSequence::unit(10, k), s, fam, alpha);
        const auto f = bump_f(s, fam.pairs[k], fam.K, alpha);
        for (std::size_t p = 0; p < s->size(); ++p) EXPECT_EQ(t[p], f[p]);
    }
    EXPECT_THROW(embed_holder(FiniteSequence({1.0}), s, fam, alpha), invalid_input);
}

TEST(EmbedHolder, ValueAtYk) {
    const auto [s, fam] = reciprocal_setup();
    std::mt19937_64 rng{21};
    for (double a : {0.2, 0.5, 1.0}) {
        const FiniteSequence v{random_vector(rng, 10)};
        const auto t = embed_holder(v, s, fam, HolderExponent{a});
        for (std::size_t k = 0; k < 10; ++k) {
            const double d = (*s)(fam.pairs[k].x, fam.pairs[k].y);
            EXPECT_DOUBLE_EQ(t[fam.pairs[k].y], v[k] * std::min(1.0, std::pow(d, a)));
        }
    }
}

TEST(EmbedHolder, Linearity) {
    std::mt19937_64 rng{22};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto s = share(samples::random_cloud(seed, 30, 2));
        const auto fam = find_pair_family(*s, 0.5, 8).family;
        const std::size_t m = fam.pairs.size();
        const HolderExponent alpha{0.6};
        const auto a = random_vector(rng, m), b = random_vector(rng, m);
        const double lambda = 3.0 * samples::unit_uniform(rng) - 1.5;
        std::vector<double> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = a[i] + lambda * b[i];
        const auto ta = embed_holder(FiniteSequence{a}, s, fam, alpha);
        const auto tb = embed_holder(FiniteSequence{b}, s, fam, alpha);
        const auto tc = embed_holder(FiniteSequence{c}, s, fam, alpha);
        for (std::size_t p = 0; p < s->size(); ++p) EXPECT_NEAR(tc[p], ta[p] + lambda * tb[p], 1e-12);
    }
}

TEST(Sandwich, ZeroVector) {
    const auto [s, fam] = reciprocal_setup();
    const auto m = verify_sandwich(FiniteSequence(std::vector<double>(10, 0.0)), s, fam, HolderExponent{0.5});
    EXPECT_EQ(m.norm_a, 0.0);
    EXPECT_EQ(m.holder, 0.0);
    EXPECT_TRUE(m.ok());
}

TEST(Sandwich, BoundConstant) {
    EXPECT_DOUBLE_EQ(holder_embedding_bound(0.25, HolderExponent{0.5}), 5.0);
    EXPECT_DOUBLE_EQ(holder_embedding_bound(1.0, HolderExponent{0.3}), 3.0);
}

TEST(Sandwich, UnitVectorsOnSmallDistances) {
    // d(x_k, y_k) < 1 everywhere here, so the lower bound relies on the seminorm term.
    const auto [s, fam] = reciprocal_setup();
    for (double a : {0.1, 0.5, 1.0}) {
        const HolderExponent alpha{a};
        for (std::size_t k = 0; k < 10; ++k) {
            const auto m = verify_sandwich(FiniteSequence::unit(10, k), s, fam, alpha);
            EXPECT_LT(m.sup, 1.0);
            EXPECT_GE(m.holder, 1.0);
        }
    }
}

TEST(Sandwich, RandomFamiliesAndVectors) {
    std::mt19937_64 rng{23};
    int trials = 0;
    for (std::uint64_t seed = 1; trials < 1000; ++seed) {
        auto s = share(samples::random_cloud(seed, 25, 1 + seed % 3, 0.5 + seed % 4));
        const double K = 0.1 + 0.9 * samples::unit_uniform(rng);
        const auto fam = find_pair_family(*s, K, 6).family;
        ASSERT_TRUE(verify_pair_family(*s, fam).ok());
        const HolderExponent alpha{0.1 + 0.9 * samples::unit_uniform(rng)};
        for (int r = 0; r < 20; ++r, ++trials) {
            auto v = random_vector(rng, fam.pairs.size());
            const auto m = measure_sandwich(FiniteSequence{v}, s, fam, alpha);
            ASSERT_TRUE(m.ok()) << "seed " << seed << " ratio " << m.ratio << " bound " << m.bound_upper;
        }
    }
}

TEST(Sandwich, ReportCoversProbes) {
    const auto [s, fam] = reciprocal_setup();
    const auto rep = distortion_report(s, fam, HolderExponent{0.5}, 5, 20);
    EXPECT_EQ(rep.samples, 10u + 2u + 20u);
    EXPECT_TRUE(rep.ok());
    EXPECT_GE(rep.lower, 1.0 - 1e-9);
    EXPECT_LE(rep.lower, rep.upper);
    EXPECT_LE(rep.upper, rep.bound_upper * (1.0 + 1e-9));
    EXPECT_EQ(rep.worst_vector.size(), 10u);
}

TEST(Sandwich, ThrowsWhenBoundsFail) {
    auto s = share(samples::line_grid(3));
    SeparatedPairFamily fam{{{0, 1}}, 1.0};
    EXPECT_NO_THROW(verify_sandwich(FiniteSequence({1.0}), s, fam, HolderExponent{1.0}));
    // A negative relative slack makes the upper bound unattainable.
    Tolerances impossible;
    impossible.sandwich_relative = -0.9;
    impossible.float_slack = 0.0;
    EXPECT_THROW(verify_sandwich(FiniteSequence({1.0}), s, fam, HolderExponent{1.0}, impossible),
                 certificate_violation);
}

TEST(EmbedCb, IsometryAndTents) {
    auto s = share(samples::line_grid(12));
    const std::vector<std::size_t> centers{1, 5, 9};
    const std::vector<double> radii{1.5, 2.0, 1.0};
    for (std::size_t n = 0; n < 3; ++n) {
        const auto t = embed_cb(FiniteSequence::unit(3, n), s, centers, radii);
        const auto phi = bump_phi(s, centers[n], radii[n]);
        for (std::size_t p = 0; p < s->size(); ++p) EXPECT_EQ(t[p], phi[p]);
    }
    EXPECT_EQ(sup_norm(embed_cb(FiniteSequence({0.0, 0.0, 0.0}), s, centers, radii)), 0.0);
    std::mt19937_64 rng{24};
    for (int t = 0; t < 200; ++t) {
        std::vector<double> v(3);
        for (auto& x : v) x = std::ldexp(static_cast<double>(static_cast<std::int64_t>(rng() % 2049) - 1024), -7);
        const FiniteSequence a{v};
        EXPECT_EQ(sup_norm(embed_cb(a, s, centers, radii)), a.sup_value());
    }
}

TEST(EmbedCb, Errors) {
    auto s = share(samples::line_grid(6));
    const std::vector<std::size_t> centers{1, 2};
    const std::vector<double> overlap{1.5, 1.5}, ok{1.0, 1.0}, one{1.0};
    EXPECT_THROW(embed_cb(FiniteSequence({1.0, 1.0}), s, centers, overlap), invalid_input);
    EXPECT_NO_THROW(embed_cb(FiniteSequence({1.0, 1.0}), s, centers, ok));
    EXPECT_THROW(embed_cb(FiniteSequence({1.0, 1.0}), s, centers, one), invalid_input);
}

TEST(EmbedLinf, IsometryAndErrors) {
    const std::vector<double> masses{0.5, 0.25, 0.25};
    const auto e1 = embed_linf(FiniteSequence::unit(3, 0), masses);
    EXPECT_EQ(e1.values, (std::vector<double>{1.0, 0.0, 0.0}));
    EXPECT_EQ(embed_linf(FiniteSequence({-4.0, 2.0, 1.0}), masses).ess_sup(), 4.0);
    const std::vector<double> zero_mass{0.5, 0.0, 0.5}, short_masses{1.0};
    EXPECT_THROW(embed_linf(FiniteSequence({1.0, 1.0, 1.0}), zero_mass), invalid_input);
    EXPECT_THROW(embed_linf(FiniteSequence({1.0, 1.0, 1.0}), short_masses), invalid_input);
}
