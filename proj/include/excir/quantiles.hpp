#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "excir/errors.hpp"

namespace excir {

// Empirical quantiles use linear interpolation between closest order
// statistics at position h = (n-1)*alpha. The (1-g)*lo + g*hi product form
// (with an lo == hi shortcut) keeps Q_a(-x) == -Q_{1-a}(x) bit-exact, which
// the scoring layer relies on for exact sign symmetry.
inline double interpolate_order_stats(double lo, double hi, double frac) {
    if (lo == hi) return lo;
    return (1.0 - frac) * lo + frac * hi;
}

inline double quantile_of_sorted(std::span<const double> sorted, double alpha) {
    if (sorted.empty()) raise(errc::invalid_input, "quantile of empty vector");
    alpha = std::clamp(alpha, 0.0, 1.0);
    const double h = static_cast<double>(sorted.size() - 1) * alpha;
    const auto k = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(k);
    if (frac == 0.0) return sorted[k];
    return interpolate_order_stats(sorted[k], sorted[k + 1], frac);
}

// Selects the needed order statistics in O(n); mutates buf.
inline double quantile_inplace(std::vector<double>& buf, double alpha) {
    if (buf.empty()) raise(errc::invalid_input, "quantile of empty vector");
    alpha = std::clamp(alpha, 0.0, 1.0);
    const double h = static_cast<double>(buf.size() - 1) * alpha;
    const auto k = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(k);
    const auto kth = buf.begin() + static_cast<std::ptrdiff_t>(k);
    std::nth_element(buf.begin(), kth, buf.end());
    const double lo = *kth;
    if (frac == 0.0) return lo;
    const double hi = *std::min_element(kth + 1, buf.end());
    return interpolate_order_stats(lo, hi, frac);
}

}  // namespace excir
