#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "excir/errors.hpp"
#include "excir/quantiles.hpp"

namespace excir {

// Agreement between two score vectors. Rank metrics can be undefined
// (degenerate inputs: too short, constant, zero rank variance); those slots
// stay empty rather than reporting 0.
struct agreement_report {
    double jaccard = 0.0;
    std::size_t k = 8;
    std::optional<double> spearman;
    std::optional<double> kendall;
    std::optional<double> procrustes;
    std::optional<double> sym_kl;
};

// Indices of the k largest scores; ties broken by ascending index.
inline std::vector<std::size_t> top_k_indices(std::span<const double> scores, std::size_t k) {
    if (k == 0 || k > scores.size())
        raise(errc::invalid_k, "k must lie in [1, " + std::to_string(scores.size()) + "]");
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    idx.resize(k);
    return idx;
}

inline double jaccard_at_k(std::span<const double> a, std::span<const double> b, std::size_t k) {
    if (a.size() != b.size()) raise(errc::invalid_input, "score vectors differ in length");
    auto ta = top_k_indices(a, k);
    auto tb = top_k_indices(b, k);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    std::vector<std::size_t> common;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
    const double inter = static_cast<double>(common.size());
    const double uni = static_cast<double>(2 * k) - inter;
    return inter / uni;
}

namespace detail {

// Fractional ranks (1-based), average rank over tied runs.
inline std::vector<double> fractional_ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
        raise(errc::degenerate_input, "zero variance in correlation input");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace detail

// Spearman's rho: Pearson correlation of fractional ranks.
inline double spearman_rho(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) raise(errc::invalid_input, "score vectors differ in length");
    if (a.size() < 2) raise(errc::degenerate_input, "need at least 2 values");
    const auto ra = detail::fractional_ranks(a);
    const auto rb = detail::fractional_ranks(b);
    return detail::pearson(ra, rb);
}

// Kendall's tau-b (tie corrected), by direct pair enumeration.
inline double kendall_tau(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) raise(errc::invalid_input, "score vectors differ in length");
    const std::size_t n = a.size();
    if (n < 2) raise(errc::degenerate_input, "need at least 2 values");
    double concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) {
                ties_a += 1;
                ties_b += 1;
            } else if (da == 0.0) {
                ties_a += 1;
            } else if (db == 0.0) {
                ties_b += 1;
            } else if ((da > 0.0) == (db > 0.0)) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double denom = std::sqrt((n0 - ties_a) * (n0 - ties_b));
    if (!(denom > 0.0)) raise(errc::degenerate_input, "all pairs tied");
    return (concordant - discordant) / denom;
}

// Best sign+scale alignment residual of the mean-centered vectors,
// normalized by ||a_centered||. Equals sqrt(1 - rho^2); 0 for any exact
// affine relation b = alpha*a + c (alpha != 0), 1 for orthogonal vectors.
inline double procrustes_residual(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) raise(errc::invalid_input, "score vectors differ in length");
    if (a.empty()) raise(errc::degenerate_input, "empty input");
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cab = 0.0, caa = 0.0, cbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cab += da * db;
        caa += da * da;
        cbb += db * db;
    }
    if (!(caa > 0.0) || !(cbb > 0.0)) raise(errc::degenerate_input, "constant input");
    const double rho2 = (cab * cab) / (caa * cbb);
    return std::sqrt(std::max(0.0, 1.0 - rho2));
}

namespace detail {

// Silverman's rule; falls back to the sigma-only form when the IQR
// collapses but the sample is not constant.
inline double silverman_bandwidth(std::span<const double> v) {
    const auto n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    std::vector<double> buf(v.begin(), v.end());
    std::sort(buf.begin(), buf.end());
    const double iqr = quantile_of_sorted(buf, 0.75) - quantile_of_sorted(buf, 0.25);
    double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(n, -0.2);
    if (!(h > 0.0)) h = 0.9 * sd * std::pow(n, -0.2);
    if (!(h > 0.0)) raise(errc::degenerate_input, "constant sample has no density scale");
    return h;
}

}  // namespace detail

// Jeffreys divergence between Gaussian KDEs of the two samples, evaluated on
// a shared 512-point grid spanning the joint range padded by 3 bandwidths,
// with grid densities renormalized and floored at 1e-12.
inline double symmetric_kl(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) raise(errc::degenerate_input, "need at least 2 values");
    const double ha = detail::silverman_bandwidth(a);
    const double hb = detail::silverman_bandwidth(b);
    const double pad = 3.0 * std::max(ha, hb);
    const double lo = std::min(*std::min_element(a.begin(), a.end()),
                               *std::min_element(b.begin(), b.end())) -
                      pad;
    const double hi = std::max(*std::max_element(a.begin(), a.end()),
                               *std::max_element(b.begin(), b.end())) +
                      pad;
    constexpr std::size_t grid_points = 512;
    constexpr double density_floor = 1e-12;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);

    auto density = [&](std::span<const double> sample, double h) {
        std::vector<double> dens(grid_points, 0.0);
        double total = 0.0;
        for (std::size_t g = 0; g < grid_points; ++g) {
            const double x = lo + step * static_cast<double>(g);
            double s = 0.0;
            for (double v : sample) {
                const double z = (x - v) / h;
                s += std::exp(-0.5 * z * z);
            }
            dens[g] = s;
            total += s;
        }
        for (double& dv : dens) dv /= total;
        return dens;
    };

    const auto p = density(a, ha);
    const auto q = density(b, hb);
    double kl_pq = 0.0, kl_qp = 0.0;
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double pg = std::max(p[g], density_floor);
        const double qg = std::max(q[g], density_floor);
        kl_pq += pg * std::log(pg / qg);
        kl_qp += qg * std::log(qg / pg);
    }
    return kl_pq + kl_qp;
}

// Full metric suite; degenerate rank/shape/distribution metrics are left
// unset instead of failing the comparison.
inline agreement_report compare_scores(std::span<const double> a, std::span<const double> b,
                                       std::size_t k) {
    agreement_report r;
    r.k = k;
    r.jaccard = jaccard_at_k(a, b, k);
    auto guard = [](auto&& fn) -> std::optional<double> {
        try {
            return fn();
        } catch (const error& e) {
            if (e.code() == errc::degenerate_input) return std::nullopt;
            throw;
        }
    };
    r.spearman = guard([&] { return spearman_rho(a, b); });
    r.kendall = guard([&] { return kendall_tau(a, b); });
    r.procrustes = guard([&] { return procrustes_residual(a, b); });
    r.sym_kl = guard([&] { return symmetric_kl(a, b); });
    return r;
}

}  // namespace excir
