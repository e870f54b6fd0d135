#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "excir/agreement.hpp"
#include "excir/data_table.hpp"
#include "excir/errors.hpp"
#include "excir/scores.hpp"

namespace excir {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Small counter-based generator so subsampling does not depend on the
// standard library's distribution implementations.
class mix_rng {
public:
    explicit mix_rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased-enough bounded draw (Lemire's multiply-shift).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t point_seed(std::uint64_t base, std::size_t fraction_index,
                                std::size_t repeat) {
    return splitmix64(base + 0x9E3779B97F4A7C15ull *
                                 (static_cast<std::uint64_t>(fraction_index) * 1000003ull +
                                  static_cast<std::uint64_t>(repeat) + 1ull));
}

}  // namespace detail

// max(1, round(f*n)) distinct row indices, drawn without replacement by a
// seeded partial Fisher-Yates shuffle; returned sorted. Same (n, f, seed)
// always yields the same set.
inline std::vector<std::size_t> subsample_rows(std::size_t n, double f, std::uint64_t seed) {
    if (!(f > 0.0) || !(f <= 1.0)) raise(errc::invalid_fraction, "fraction must lie in (0, 1]");
    if (n == 0) raise(errc::invalid_input, "cannot sample from an empty table");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (f == 1.0) return idx;
    auto k = static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n);
    detail::mix_rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct transfer_config {
    std::vector<double> fractions = {0.2, 0.3, 0.4, 0.5, 0.75, 1.0};
    std::uint64_t seed = 0;
    std::size_t k = 8;
    std::size_t repeats = 1;

    // Sorted ascending, deduplicated, each in (0,1]; 1.0 (the reference run)
    // is appended when missing.
    void normalize() {
        if (fractions.empty()) raise(errc::invalid_fraction, "fraction list is empty");
        for (double f : fractions)
            if (!(f > 0.0) || !(f <= 1.0))
                raise(errc::invalid_fraction, "fraction must lie in (0, 1]");
        std::sort(fractions.begin(), fractions.end());
        fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());
        if (fractions.back() != 1.0) fractions.push_back(1.0);
        if (repeats == 0) raise(errc::invalid_input, "repeats must be >= 1");
        if (k == 0) raise(errc::invalid_k, "k must be >= 1");
    }
};

struct transfer_point {
    double fraction = 1.0;
    std::size_t repeat = 0;
    std::size_t rows_kept = 0;
    double seconds = 0.0;  // centering + accumulation only
    agreement_report agreement;
    score_report scores;
};

struct transfer_curve {
    transfer_config config;
    score_report reference;  // the f = 1.0 scores
    std::vector<transfer_point> points;
};

// Reruns scoring on seeded row subsamples per fraction/repeat and compares
// each run against the full-data reference with the full agreement suite.
// Subsets are drawn independently per (fraction, repeat), not nested, and
// subset centers are recomputed on the subset. Runs execute one at a time
// so the recorded timings are valid.
inline transfer_curve run_transfer(const data_table& t, std::string_view output_name,
                                   const group_family& groups, const centering_spec& spec,
                                   transfer_config config) {
    config.normalize();
    if (config.k > t.d())
        raise(errc::invalid_k,
              "k = " + std::to_string(config.k) + " exceeds feature count " + std::to_string(t.d()));

    transfer_curve curve;
    curve.config = config;
    curve.reference = cir_scores(t, output_name, groups, spec);
    const std::vector<double> ref_vec = curve.reference.feature_scores_by_name();

    using clock = std::chrono::steady_clock;
    for (std::size_t fi = 0; fi < config.fractions.size(); ++fi) {
        const double f = config.fractions[fi];
        for (std::size_t rep = 0; rep < config.repeats; ++rep) {
            transfer_point pt;
            pt.fraction = f;
            pt.repeat = rep;
            std::vector<std::size_t> rows;
            if (f < 1.0) rows = subsample_rows(t.n(), f, detail::point_seed(config.seed, fi, rep));
            const auto t0 = clock::now();
            pt.scores = cir_scores(t, output_name, groups, spec, nullptr, rows);
            const auto t1 = clock::now();
            pt.seconds = std::chrono::duration<double>(t1 - t0).count();
            pt.rows_kept = pt.scores.rows_used;
            pt.agreement = compare_scores(pt.scores.feature_scores_by_name(), ref_vec, config.k);
            curve.points.push_back(std::move(pt));
        }
    }
    return curve;
}

// Median top-k Jaccard across the repeats recorded at one fraction.
inline double median_jaccard_at(const transfer_curve& curve, double fraction) {
    std::vector<double> vals;
    for (const auto& pt : curve.points)
        if (pt.fraction == fraction) vals.push_back(pt.agreement.jaccard);
    if (vals.empty()) raise(errc::invalid_input, "no curve points at requested fraction");
    std::sort(vals.begin(), vals.end());
    const std::size_t m = vals.size();
    return (m % 2 == 1) ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
}

struct knee_result {
    double fraction = 1.0;
    bool no_knee = false;
};

// Smallest fraction whose median top-k Jaccard meets the target; 1.0 with
// the no-knee flag when nothing qualifies.
inline knee_result pareto_knee(const transfer_curve& curve, double target_jaccard) {
    if (curve.points.empty()) raise(errc::invalid_input, "empty transfer curve");
    for (double f : curve.config.fractions)
        if (median_jaccard_at(curve, f) >= target_jaccard) return {f, false};
    return {1.0, true};
}

}  // namespace excir
