#include <gtest/gtest.h>

#include <filesystem>

#include "corpus.hpp"
#include "noisestab/errors.hpp"
#include "noisestab/families.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/table_function.hpp"
#include "oracles.hpp"

namespace noisestab {
namespace {

TEST(TableFunction, IndexRoundTrip) {
    for (std::size_t idx = 0; idx < 81; ++idx) {
        const auto x = decode_index(idx, 3, 4);
        EXPECT_EQ(encode_index(x, 3), idx);
    }
    // Coordinate 0 is the lowest digit.
    EXPECT_EQ(decode_index(1, 3, 2), (std::vector<int>{1, 0}));
    EXPECT_EQ(decode_index(3, 3, 2), (std::vector<int>{0, 1}));
}

TEST(TableFunction, MeanAndVarianceMatchDirectSums) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int q = corpus::uniform_int(rng, 2, 4);
        const int n = corpus::uniform_int(rng, 1, 4);
        const auto f = corpus::random_function(rng, q, n, false, true);
        const double mu = oracle::mean(f);
        double second = 0.0;
        for (const auto& x : oracle::all_points(q, n)) second += oracle::point_weight(f, x) * f.at(x) * f.at(x);
        EXPECT_NEAR(f.mean(), mu, 1e-12);
        EXPECT_NEAR(f.variance(), second - mu * mu, 1e-12);
    }
}

TEST(TableFunction, RejectsBadInput) {
    EXPECT_THROW(TableFunction(1, 2, {1.0}), InvalidArgument);
    EXPECT_THROW(TableFunction(2, 2, {1.0, 2.0}), InvalidArgument);
    EXPECT_THROW(TableFunction(2, 1, {0.0, 1.0}, {0.7, 0.7}), InvalidArgument);
    EXPECT_THROW(TableFunction(2, 1, {0.0, 1.0}, {1.2, -0.2}), InvalidArgument);
    EXPECT_THROW(TableFunction(2, 1, {0.0, 2.0}, {}, RangeTag::unit_interval), InvalidArgument);
    EXPECT_THROW(TableFunction(2, 1, {0.0, 0.5}, {}, RangeTag::pm_one), InvalidArgument);
}

TEST(TableFunction, RangeConversionsRoundTrip) {
    const auto maj = families::majority(5);
    EXPECT_EQ(maj.range(), RangeTag::pm_one);
    const auto unit = to_unit_interval(maj);
    EXPECT_DOUBLE_EQ(unit.mean(), 0.5);
    const auto back = to_pm_one(unit);
    for (std::size_t i = 0; i < maj.size(); ++i) EXPECT_EQ(back[i], maj[i]);
    EXPECT_THROW(to_pm_one(TableFunction(2, 1, {0.0, 0.5})), InvalidArgument);
}

TEST(TableFunction, NegateInputsFlipsEveryCoordinate) {
    const auto d = families::dictator(3, 1);
    const auto nd = negate_inputs(d);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(nd[i], -d[i]);
    EXPECT_THROW(negate_inputs(TableFunction::constant(3, 2, 0.0)), UnsupportedDomain);
}

TEST(Families, Conventions) {
    // Symbol 0 is +1.
    EXPECT_EQ(families::dictator(2, 0).at(std::vector<int>{0, 1}), 1.0);
    EXPECT_EQ(families::dictator(2, 0).at(std::vector<int>{1, 0}), -1.0);
    EXPECT_EQ(families::majority(4).at(std::vector<int>{0, 0, 1, 1}), 1.0);  // ties to +1
    EXPECT_EQ(families::parity(3, 0b101).at(std::vector<int>{1, 0, 1}), 1.0);
    EXPECT_EQ(families::threshold(3, 2).range(), RangeTag::unit_interval);
    // ±1 sum ≥ 2 needs all three coordinates at +1.
    EXPECT_DOUBLE_EQ(families::threshold(3, 2).mean(), 0.125);
    // Tribes of width 2, count 2: 1 − (3/4)^2.
    EXPECT_DOUBLE_EQ(families::tribes(2, 2).mean(), 1.0 - 0.5625);
    EXPECT_THROW(families::by_name("nope", 3, {}), InvalidArgument);
}

TEST(FunctionIo, RoundTripAndErrorPaths) {
    Rng rng(5);
    const auto f = corpus::random_function(rng, 3, 2, false, true);
    const auto g = function_from_json(function_to_json(f));
    ASSERT_EQ(g.size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g[i], f[i]);
    EXPECT_EQ(g.measure(), f.measure());

    nlohmann::json bad = function_to_json(f);
    bad["values"][3] = "x";
    try {
        function_from_json(bad);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.path(), "$.values[3]");
    }
    bad = function_to_json(f);
    bad.erase("q");
    EXPECT_THROW(function_from_json(bad), ParseError);

    const auto dir = std::filesystem::temp_directory_path() / "noisestab_io_test";
    std::filesystem::create_directories(dir);
    write_text_atomically(dir / "f.json", function_to_json(f).dump());
    EXPECT_EQ(load_function(dir / "f.json").size(), f.size());
    write_text_atomically(dir / "broken.json", "{ not json");
    EXPECT_THROW(load_function(dir / "broken.json"), ParseError);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace noisestab
