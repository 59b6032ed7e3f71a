#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wbs/io.hpp"
#include "wbs/samples.hpp"

using namespace wbs;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("wbs_test_io_" + name)).string();
}

} // namespace

TEST(BigNum, DecimalAndFractionForms) {
    EXPECT_EQ(to_decimal(parse_decimal("123456789012345678901234567890")), "123456789012345678901234567890");
    EXPECT_THROW(parse_decimal("12a"), invalid_input);
    EXPECT_THROW(parse_decimal(""), invalid_input);
    EXPECT_EQ(to_fraction(Rational{6, 4}), "3/2");
    EXPECT_EQ(to_fraction(Rational{2}), "2/1");
    EXPECT_EQ(parse_fraction("10/4"), Rational(5, 2));
    EXPECT_THROW(parse_fraction("1/0"), invalid_input);
    EXPECT_THROW(parse_fraction("x"), invalid_input);
    const std::uint64_t big = 0xFFFFFFFFFFFFFFFFull;
    EXPECT_EQ(to_u64(from_u64(big)), big);
    EXPECT_FALSE(fits_u64(from_u64(big) + 1));
    EXPECT_THROW(to_u64(BigInt{-1}), invalid_input);
    EXPECT_EQ(binomial(5, 2), 10);
    EXPECT_EQ(binomial(2, 5), 0);
}

TEST(Json, SchreierSetRoundTrip) {
    const SchreierSet s{{3, 7, 9}};
    EXPECT_EQ(io::to_json(s).dump(), "[3,7,9]");
    EXPECT_EQ(io::schreier_set_from_json(io::to_json(s)), s);
    EXPECT_THROW(io::schreier_set_from_json(json::parse("[2,3,4]")), invalid_input);
    EXPECT_THROW(io::schreier_set_from_json(json::parse("[0]")), invalid_input);
    EXPECT_THROW(io::schreier_set_from_json(json::parse("{}")), invalid_input);
}

TEST(Json, CertificateFields) {
    const auto cert = certify_not_cesaro_null(Subsequence::identity(), 2);
    const auto j = io::to_json(cert);
    EXPECT_EQ(j.at("N"), 2);
    EXPECT_EQ(j.at("A_N").dump(), "[3,4,5]");
    EXPECT_EQ(j.at("i0"), "5");
    EXPECT_EQ(j.at("mean"), "1/2");
    EXPECT_EQ(j.at("prefix_len"), 5);
    EXPECT_EQ(j.at("enumeration"), "canonical");
}

TEST(Json, SubsequenceRules) {
    EXPECT_EQ(io::parse_subsequence("identity").at(7), 7u);
    EXPECT_EQ(io::parse_subsequence("affine:3,2").at(4), 14u);
    EXPECT_EQ(io::parse_subsequence("geometric:2,3").at(3), 18u);
    const auto r = io::parse_subsequence("random:5,40,3");
    EXPECT_EQ(r.known_length(), 40u);
    EXPECT_EQ(r.prefix(), Subsequence::random(5, 40, 3).prefix());
    EXPECT_THROW(io::parse_subsequence("affine:1"), invalid_input);
    EXPECT_THROW(io::parse_subsequence("affine:1,x"), invalid_input);
    EXPECT_THROW(io::parse_subsequence("/nonexistent/file.json"), invalid_input);

    const auto path = temp_path("prefix.json");
    io::write_json_file(path, json::array({2, 5, 9, 10}));
    const auto f = io::parse_subsequence(path);
    EXPECT_EQ(f.known_length(), 4u);
    EXPECT_EQ(f.at(3), 9u);
    std::remove(path.c_str());
}

TEST(Json, SpaceForms) {
    const auto m = io::space_from_json(json::parse(R"({"matrix": [[0,1],[1,0]], "labels": ["a","b"]})"));
    EXPECT_EQ(m.index_of("b"), 1u);
    EXPECT_EQ(m(0, 1), 1.0);
    const auto p = io::space_from_json(json::parse(R"({"points": [[0,0],[3,4]], "metric": "l1"})"));
    EXPECT_EQ(p(0, 1), 7.0);
    const auto e = io::space_from_json(json::parse(R"({"points": [[0,0],[3,4]]})"));
    EXPECT_EQ(e(0, 1), 5.0);
    const auto l = io::space_from_json(json::parse(R"({"points": [[0,0],[3,4]], "metric": "linf"})"));
    EXPECT_EQ(l(0, 1), 4.0);
    EXPECT_THROW(io::space_from_json(json::parse(R"({"points": [[0]], "metric": "cosine"})")), invalid_input);
    EXPECT_THROW(io::space_from_json(json::parse(R"({"matrix": "no"})")), invalid_input);
    EXPECT_THROW(io::space_from_json(json::parse(R"({"other": 1})")), invalid_input);

    const auto s = samples::zero_and_reciprocals(4);
    const auto back = io::space_from_json(io::to_json(s));
    EXPECT_EQ(back.labels(), s.labels());
    EXPECT_TRUE(std::equal(back.row_major().begin(), back.row_major().end(), s.row_major().begin()));
}

TEST(Json, FamilyRoundTrip) {
    const auto s = samples::zero_and_reciprocals(6);
    SeparatedPairFamily f{{{s.index_of("1/2"), s.index_of("1/1")}, {s.index_of("1/4"), s.index_of("1/3")}}, 0.25};
    const auto j = io::to_json(f, s);
    EXPECT_EQ(j.at("pairs").dump(), R"([["1/2","1/1"],["1/4","1/3"]])");
    const auto back = io::family_from_json(j, s);
    EXPECT_EQ(back.pairs, f.pairs);
    EXPECT_EQ(back.K, 0.25);
    EXPECT_THROW(io::family_from_json(json::parse(R"({"K": 0.5, "pairs": [["1/2", "zz"]]})"), s), invalid_input);
    EXPECT_THROW(io::family_from_json(json::parse(R"({"pairs": []})"), s), invalid_input);
    EXPECT_THROW(io::family_from_json(json::parse(R"({"K": 0.5, "pairs": [["1/2"]]})"), s), invalid_input);
}

TEST(Json, ReportsAndVerdicts) {
    const auto bad = FiniteMetricSpace::from_matrix({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    const auto rep = io::to_json(validate_metric(bad), bad);
    EXPECT_FALSE(rep.at("valid").get<bool>());
    EXPECT_EQ(rep.at("violations")[0].at("kind"), "triangle");
    EXPECT_EQ(rep.at("violations")[0].at("points").dump(), R"(["a","b","c"])");

    const auto v = io::to_json(classify_calpha(std::nullopt));
    EXPECT_EQ(v.at("space_family"), "Calpha");
    EXPECT_FALSE(v.at("wbs").get<bool>());
    EXPECT_TRUE(v.contains("assumption"));
    EXPECT_FALSE(io::to_json(classify_calpha(3)).contains("assumption"));
}

TEST(Json, FieldRoundTrip) {
    auto s = share(samples::line_grid(3));
    const ScalarField f{s, {0.5, -1.0, 2.0}};
    const auto j = io::to_json(f, "grid.json");
    EXPECT_EQ(j.at("space_ref"), "grid.json");
    const auto back = io::field_from_json(j, s);
    EXPECT_EQ(back[2], 2.0);
    EXPECT_THROW(io::field_from_json(json::parse(R"({"values": [1]})"), s), invalid_input);
    EXPECT_THROW(io::field_from_json(json::parse(R"({"nope": 1})"), s), invalid_input);
}

TEST(Json, FileErrors) {
    EXPECT_THROW(io::read_json_file("/nonexistent/x.json"), invalid_input);
    const auto path = temp_path("broken.json");
    {
        std::ofstream out{path};
        out << "{ not json";
    }
    EXPECT_THROW(io::read_json_file(path), invalid_input);
    std::remove(path.c_str());
}
