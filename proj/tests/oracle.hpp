// Independent naive reference for the scoring pipeline, used as the test
// oracle: full sorts for the quantiles, plain double loops for Eq-style
// accumulation, no shared code with the library's centering/accumulation
// path beyond the input container.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "excir/data_table.hpp"

namespace oracle {

inline double quantile(std::vector<double> v, double alpha) {
    std::sort(v.begin(), v.end());
    const double h = alpha * static_cast<double>(v.size() - 1);
    const auto k = static_cast<std::size_t>(std::floor(h));
    const double g = h - std::floor(h);
    if (k + 1 >= v.size()) return v[k];
    return v[k] + g * (v[k + 1] - v[k]);
}

enum class method { midmean, median, mean };

inline double center(const std::vector<double>& v, method m) {
    switch (m) {
        case method::median: return quantile(v, 0.5);
        case method::mean: {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        }
        case method::midmean:
        default: return 0.5 * (quantile(v, 0.25) + quantile(v, 0.75));
    }
}

struct scores {
    std::map<std::string, double> features;
    std::map<std::string, double> groups;
};

// Direct evaluation: center each column, then double loops over rows and
// features/sets.
inline scores score_table(const excir::data_table& t, const std::string& output_name,
                          const std::vector<excir::group>& groups = {},
                          const std::vector<double>& weights = {},
                          method m = method::midmean) {
    const auto& y = t.output(output_name);
    const std::size_t n = t.n();
    const double cy = center(y, m);

    std::vector<double> cx(t.d());
    for (std::size_t j = 0; j < t.d(); ++j) cx[j] = center(t.feature(j), m);

    scores out;
    for (std::size_t j = 0; j < t.d(); ++j) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = weights.empty() ? 1.0 : weights[i];
            const double p = (t.feature(j)[i] - cx[j]) * (y[i] - cy);
            num += w * p;
            den += w * std::abs(p);
        }
        out.features[t.feature_names()[j]] = den > 0.0 ? 0.5 * (1.0 + num / den) : 0.5;
    }
    for (const auto& g : groups) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double p = 0.0, u = 0.0;
            for (std::size_t j : g.members) {
                const double term = (t.feature(j)[i] - cx[j]) * (y[i] - cy);
                p += term;
                u += std::abs(term);
            }
            const double w = weights.empty() ? 1.0 : weights[i];
            num += w * p;
            den += w * u;
        }
        out.groups[g.name] = den > 0.0 ? 0.5 * (1.0 + num / den) : 0.5;
    }
    return out;
}

// --- deterministic synthetic data -----------------------------------------

// Mixed draws: mostly normal with occasional heavy-tailed spikes.
inline std::vector<double> mixed_column(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::cauchy_distribution<double> heavy(0.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> col(n);
    for (auto& v : col) {
        v = coin(rng) < 0.15 ? std::clamp(heavy(rng), -50.0, 50.0) : normal(rng);
    }
    return col;
}

inline excir::data_table random_table(std::uint64_t seed, std::size_t n, std::size_t d) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < d; ++j) {
        names.push_back("x" + std::to_string(j));
        cols.push_back(mixed_column(rng, n));
    }
    std::vector<double> y = mixed_column(rng, n);
    // fold in some signal so scores are not all near neutral
    std::uniform_real_distribution<double> beta(-2.0, 2.0);
    for (std::size_t j = 0; j < d; ++j) {
        const double b = beta(rng);
        for (std::size_t i = 0; i < n; ++i) y[i] += b * cols[j][i] * 0.2;
    }
    return excir::data_table(std::move(names), std::move(cols), {"y"}, {std::move(y)});
}

// Sparse linear regression table: `informative` leading features carry
// coefficients of magnitude >= strength, the rest are noise-only.
inline excir::data_table regression_table(std::uint64_t seed, std::size_t n, std::size_t d,
                                          std::size_t informative, double strength) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> mag(strength, 2.0 * strength);
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols(d, std::vector<double>(n));
    for (std::size_t j = 0; j < d; ++j) {
        names.push_back("x" + std::to_string(j));
        for (auto& v : cols[j]) v = normal(rng);
    }
    std::vector<double> beta(d, 0.0);
    for (std::size_t j = 0; j < informative; ++j)
        beta[j] = (rng() & 1 ? 1.0 : -1.0) * mag(rng);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = normal(rng);  // unit noise
        for (std::size_t j = 0; j < d; ++j) s += beta[j] * cols[j][i];
        y[i] = s;
    }
    return excir::data_table(std::move(names), std::move(cols), {"y"}, {std::move(y)});
}

}  // namespace oracle
