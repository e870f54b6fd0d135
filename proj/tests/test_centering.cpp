#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "excir/centering.hpp"

#include "oracle.hpp"

using excir::center_method;
using excir::center_source;
using excir::center_table;
using excir::centering_spec;
using excir::robust_center;

namespace {
centering_spec midmean_spec() { return {}; }
}  // namespace

TEST_CASE("robust_center worked examples", "[centering]") {
    CHECK(robust_center(std::vector<double>{5, 5, 5}, midmean_spec()) == 5.0);
    CHECK(robust_center(std::vector<double>{1, 2, 3, 4}, midmean_spec()) == 2.5);
    CHECK(robust_center(std::vector<double>{0, 1, 2, 10}, midmean_spec()) == 2.375);

    centering_spec median{center_method::median, center_source::exact, 0.01};
    CHECK(robust_center(std::vector<double>{1, 2, 3, 4}, median) == 2.5);
    CHECK(robust_center(std::vector<double>{0, 1, 2, 10}, median) == 1.5);

    centering_spec mean{center_method::mean, center_source::exact, 0.01};
    CHECK(robust_center(std::vector<double>{0, 1, 2, 10}, mean) == 3.25);
}

TEST_CASE("robust_center input validation", "[centering]") {
    CHECK_THROWS_AS(robust_center(std::vector<double>{}, midmean_spec()), excir::error);
    CHECK_THROWS_AS(
        robust_center(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()},
                      midmean_spec()),
        excir::error);
    CHECK_THROWS_AS(
        robust_center(std::vector<double>{1.0, std::numeric_limits<double>::infinity()},
                      midmean_spec()),
        excir::error);
    centering_spec bad{center_method::midmean, center_source::sketch, 0.7};
    CHECK_THROWS_AS(robust_center(std::vector<double>{1.0, 2.0}, bad), excir::error);
}

TEST_CASE("robust_center agrees with the sort-based oracle", "[centering]") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> len(1, 80);
    for (int rep = 0; rep < 100; ++rep) {
        auto col = oracle::mixed_column(rng, len(rng));
        CHECK(robust_center(col, midmean_spec()) ==
              Catch::Approx(oracle::center(col, oracle::method::midmean)).margin(1e-12));
        centering_spec median{center_method::median, center_source::exact, 0.01};
        CHECK(robust_center(col, median) ==
              Catch::Approx(oracle::center(col, oracle::method::median)).margin(1e-12));
        centering_spec mean{center_method::mean, center_source::exact, 0.01};
        CHECK(robust_center(col, mean) ==
              Catch::Approx(oracle::center(col, oracle::method::mean)).margin(1e-10));
    }
}

TEST_CASE("centers are exactly antisymmetric and exact on constants", "[centering]") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 100; ++rep) {
        auto col = oracle::mixed_column(rng, 1 + rep % 37);
        std::vector<double> neg(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) neg[i] = -col[i];
        for (auto m : {center_method::midmean, center_method::median}) {
            centering_spec spec{m, center_source::exact, 0.01};
            REQUIRE(robust_center(neg, spec) == -robust_center(col, spec));
        }
    }
    // off-by-an-ulp centers would leave residue here
    const double awkward = 1.0 + std::ldexp(1.0, -52);
    std::vector<double> constant(7, awkward);
    for (auto m : {center_method::midmean, center_method::median, center_method::mean}) {
        centering_spec spec{m, center_source::exact, 0.01};
        REQUIRE(robust_center(constant, spec) == awkward);
    }
}

TEST_CASE("center_table centers features and the chosen output", "[centering]") {
    excir::data_table t({"a", "b"}, {{0, 1, 2, 10}, {5, 5, 5, 5}}, {"y"}, {{1, 2, 3, 4}});
    const auto c = center_table(t, "y", midmean_spec());
    REQUIRE(c.centers_x.size() == 2);
    CHECK(c.centers_x[0] == 2.375);
    CHECK(c.centers_x[1] == 5.0);
    CHECK(c.center_y == 2.5);

    CHECK(c.tilde_x(t, 3, 0) == 7.625);
    CHECK(c.tilde_x(t, 0, 1) == 0.0);

    CHECK_THROWS_AS(center_table(t, "nope", midmean_spec()), excir::error);
}

TEST_CASE("shifting a column does not move the centered values", "[centering]") {
    std::mt19937_64 rng(31);
    auto col = oracle::mixed_column(rng, 50);
    const double c0 = robust_center(col, midmean_spec());
    std::vector<double> shifted(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) shifted[i] = col[i] + 13.25;
    const double c1 = robust_center(shifted, midmean_spec());
    for (std::size_t i = 0; i < col.size(); ++i)
        CHECK(shifted[i] - c1 == Catch::Approx(col[i] - c0).margin(1e-12));
}

TEST_CASE("constant output column centers to itself", "[centering]") {
    excir::data_table t({"a"}, {{1, 2, 3}}, {"y"}, {{4, 4, 4}});
    const auto c = center_table(t, "y", midmean_spec());
    CHECK(c.center_y == 4.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.tilde_y(t.output("y"), i) == 0.0);
}

TEST_CASE("sketch-sourced centers track exact centers", "[centering]") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> normal(2.0, 3.0);
    std::vector<double> col(20000);
    for (auto& v : col) v = normal(rng);

    centering_spec sk{center_method::midmean, center_source::sketch, 0.01};
    const double approx = robust_center(col, sk);
    const double exact = robust_center(col, midmean_spec());

    // sketch center must sit within the value band spanned by +-eps*n ranks
    std::vector<double> sorted = col;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    const auto e = static_cast<std::size_t>(0.01 * static_cast<double>(n));
    auto band = [&](double alpha) {
        const auto r = static_cast<std::size_t>(alpha * static_cast<double>(n));
        return std::pair{sorted[r - e - 1], sorted[r + e + 1]};
    };
    const auto [lo25, hi25] = band(0.25);
    const auto [lo75, hi75] = band(0.75);
    CHECK(approx >= 0.5 * (lo25 + lo75));
    CHECK(approx <= 0.5 * (hi25 + hi75));
    CHECK(std::abs(approx - exact) < 0.5 * ((hi25 - lo25) + (hi75 - lo75)));
}
