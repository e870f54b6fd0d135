#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "excir/quantiles.hpp"

#include "oracle.hpp"

using excir::quantile_inplace;
using excir::quantile_of_sorted;

TEST_CASE("interpolated quantiles match the worked examples", "[quantiles]") {
    std::vector<double> v{1, 2, 3, 4};
    CHECK(quantile_of_sorted(v, 0.25) == 1.75);
    CHECK(quantile_of_sorted(v, 0.75) == 3.25);

    std::vector<double> w{0, 1, 2, 10};
    CHECK(quantile_of_sorted(w, 0.25) == 0.75);
    CHECK(quantile_of_sorted(w, 0.75) == 4.0);
    CHECK(quantile_of_sorted(w, 0.0) == 0.0);
    CHECK(quantile_of_sorted(w, 1.0) == 10.0);
}

TEST_CASE("selection-based quantile equals the sorted formula", "[quantiles]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    std::uniform_int_distribution<std::size_t> len(1, 60);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = unif(rng);
        for (double alpha : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
            std::vector<double> buf = v;
            const double got = quantile_inplace(buf, alpha);
            const double want = oracle::quantile(v, alpha);
            CHECK(got == Catch::Approx(want).margin(1e-12));
        }
    }
}

TEST_CASE("small n needs no special casing", "[quantiles]") {
    std::vector<double> one{3.5};
    CHECK(quantile_of_sorted(one, 0.25) == 3.5);
    CHECK(quantile_of_sorted(one, 0.75) == 3.5);
    std::vector<double> two{1.0, 2.0};
    CHECK(quantile_of_sorted(two, 0.25) == 1.25);
    CHECK(quantile_of_sorted(two, 0.5) == 1.5);
    std::vector<double> three{1.0, 2.0, 4.0};
    CHECK(quantile_of_sorted(three, 0.25) == 1.5);
    CHECK(quantile_of_sorted(three, 0.75) == 3.0);
}

TEST_CASE("quartiles are exactly antisymmetric under negation", "[quantiles]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    std::uniform_int_distribution<std::size_t> len(1, 40);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = unif(rng);
        std::vector<double> s = v;
        std::sort(s.begin(), s.end());
        std::vector<double> neg;
        for (auto it = s.rbegin(); it != s.rend(); ++it) neg.push_back(-*it);
        for (double alpha : {0.25, 0.5, 0.75}) {
            const double q = quantile_of_sorted(s, alpha);
            const double qn = quantile_of_sorted(neg, 1.0 - alpha);
            REQUIRE(qn == -q);  // bit-exact, not approximate
        }
    }
}

TEST_CASE("empty input is rejected", "[quantiles]") {
    std::vector<double> empty;
    CHECK_THROWS_AS(quantile_of_sorted(empty, 0.5), excir::error);
}
