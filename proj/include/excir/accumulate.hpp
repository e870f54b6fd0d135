#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "excir/data_table.hpp"
#include "excir/summation.hpp"

namespace excir {

// Sufficient statistics of one feature or feature set: N = signed sum of
// co-movement terms, D = sum of their magnitudes. Additive under disjoint
// row partitions, so partial accumulators built against the same centers
// can be merged. Invariant: D >= |N| and D >= 0.
struct accumulator {
    double signed_sum = 0.0;  // N
    double abs_sum = 0.0;     // D

    void add_term(double p) {
        signed_sum += p;
        abs_sum += std::abs(p);
    }

    accumulator& operator+=(const accumulator& o) {
        signed_sum += o.signed_sum;
        abs_sum += o.abs_sum;
        return *this;
    }
};

inline accumulator merge_accumulators(accumulator a, const accumulator& b) {
    a += b;
    return a;
}

struct cir_value {
    double cir = 0.5;
    double ratio = 0.0;  // N/D, 0 when neutral
    bool neutral = true;
};

// CIR(G) = (1 + N/D)/2; D == 0 yields the neutral 0.5.
inline cir_value finalize(const accumulator& a) {
    if (!(a.abs_sum > 0.0)) return {0.5, 0.0, true};
    const double r = a.signed_sum / a.abs_sum;
    return {0.5 * (1.0 + r), r, false};
}

namespace detail {

// Per-feature kernel: terms t_i = (x_i - cx)(y_i - cy), N += w*t, D += w*|t|.
// rows empty = all rows; weights empty = unweighted. Zero-weight rows are
// skipped so they contribute exactly as if removed.
inline accumulator accumulate_feature(std::span<const double> x, std::span<const double> y,
                                      double cx, double cy,
                                      std::span<const std::size_t> rows = {},
                                      std::span<const double> weights = {}) {
    pairwise_sum n_sum;
    pairwise_sum d_sum;
    auto consume = [&](std::size_t i) {
        const double t = (x[i] - cx) * (y[i] - cy);
        if (weights.empty()) {
            n_sum.add(t);
            d_sum.add(std::abs(t));
        } else {
            const double w = weights[i];
            if (w == 0.0) return;
            const double wt = w * t;
            n_sum.add(wt);
            d_sum.add(std::abs(wt));
        }
    };
    if (rows.empty()) {
        for (std::size_t i = 0; i < x.size(); ++i) consume(i);
    } else {
        for (std::size_t i : rows) consume(i);
    }
    return accumulator{n_sum.value(), d_sum.value()};
}

// Set kernel: member terms are summed per sample before the sign split,
// p_i = sum_j t_ij, u_i = sum_j |t_ij|; then N += w*p, D += w*u.
inline accumulator accumulate_group(const data_table& t, std::span<const std::size_t> members,
                                    std::span<const double> y,
                                    std::span<const double> feature_centers, double cy,
                                    std::span<const std::size_t> rows = {},
                                    std::span<const double> weights = {}) {
    pairwise_sum n_sum;
    pairwise_sum d_sum;
    auto consume = [&](std::size_t i) {
        const double yt = y[i] - cy;
        double p = 0.0;
        double u = 0.0;
        for (std::size_t j : members) {
            const double term = (t.feature(j)[i] - feature_centers[j]) * yt;
            p += term;
            u += std::abs(term);
        }
        if (weights.empty()) {
            n_sum.add(p);
            d_sum.add(u);
        } else {
            const double w = weights[i];
            if (w == 0.0) return;
            n_sum.add(w * p);
            d_sum.add(w * u);
        }
    };
    if (rows.empty()) {
        for (std::size_t i = 0; i < y.size(); ++i) consume(i);
    } else {
        for (std::size_t i : rows) consume(i);
    }
    return accumulator{n_sum.value(), d_sum.value()};
}

}  // namespace detail

}  // namespace excir
