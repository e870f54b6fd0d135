#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "excir/data_table.hpp"
#include "excir/errors.hpp"
#include "excir/gk_sketch.hpp"
#include "excir/parallel.hpp"
#include "excir/quantiles.hpp"
#include "excir/summation.hpp"

namespace excir {

enum class center_method { midmean, median, mean };
enum class center_source { exact, sketch };

inline const char* to_string(center_method m) {
    switch (m) {
        case center_method::midmean: return "midmean";
        case center_method::median: return "median";
        case center_method::mean: return "mean";
    }
    return "?";
}

struct centering_spec {
    center_method method = center_method::midmean;
    center_source source = center_source::exact;
    double epsilon = 0.01;  // sketch rank-error bound

    void validate() const {
        if (source == center_source::sketch && (!(epsilon > 0.0) || !(epsilon < 0.5)))
            raise(errc::invalid_input, "sketch epsilon must lie in (0, 0.5)");
    }
};

namespace detail {

// rows empty = all rows.
inline std::vector<double> gather(std::span<const double> col, std::span<const std::size_t> rows) {
    std::vector<double> out;
    if (rows.empty()) {
        out.assign(col.begin(), col.end());
    } else {
        out.reserve(rows.size());
        for (std::size_t i : rows) out.push_back(col[i]);
    }
    return out;
}

inline double mean_of(std::span<const double> col, std::span<const std::size_t> rows) {
    pairwise_sum s;
    if (rows.empty()) {
        for (double v : col) s.add(v);
        return s.value() / static_cast<double>(col.size());
    }
    for (std::size_t i : rows) s.add(col[i]);
    return s.value() / static_cast<double>(rows.size());
}

// Centers one column over the selected rows. Values are assumed finite.
inline double center_column(std::span<const double> col, const centering_spec& spec,
                            std::span<const std::size_t> rows) {
    if (spec.source == center_source::sketch && spec.method != center_method::mean) {
        gk_sketch sk(spec.epsilon);
        if (rows.empty()) {
            for (double v : col) sk.insert(v);
        } else {
            for (std::size_t i : rows) sk.insert(col[i]);
        }
        return spec.method == center_method::midmean ? sk.midmean() : sk.quantile(0.5);
    }
    if (spec.method == center_method::mean) return mean_of(col, rows);
    std::vector<double> buf = gather(col, rows);
    // A constant column must center to exactly its value so the centered
    // vector is exactly zero.
    const auto [mn, mx] = std::minmax_element(buf.begin(), buf.end());
    if (*mn == *mx) return *mn;
    if (spec.method == center_method::median) return quantile_inplace(buf, 0.5);
    const double q1 = quantile_inplace(buf, 0.25);
    const double q3 = quantile_inplace(buf, 0.75);
    return 0.5 * (q1 + q3);
}

}  // namespace detail

// Robust location estimate of one column per the spec'd method.
inline double robust_center(std::span<const double> col, const centering_spec& spec) {
    spec.validate();
    if (col.empty()) raise(errc::invalid_input, "center of empty vector");
    for (double v : col)
        if (!std::isfinite(v)) raise(errc::invalid_input, "center of non-finite value");
    return detail::center_column(col, spec, {});
}

// Centers for every feature column and one output column. Centered values
// are formed on read: tilde_x(i,j) = x_ij - centers_x[j].
struct centered_data {
    std::vector<double> centers_x;
    double center_y = 0.0;

    double tilde_x(const data_table& t, std::size_t i, std::size_t j) const {
        return t.feature(j)[i] - centers_x[j];
    }
    double tilde_y(std::span<const double> y, std::size_t i) const { return y[i] - center_y; }
};

inline centered_data center_table(const data_table& t, std::string_view output_name,
                                  const centering_spec& spec,
                                  std::span<const std::size_t> rows = {}) {
    spec.validate();
    const auto& y = t.output(output_name);
    const std::size_t n_used = rows.empty() ? t.n() : rows.size();
    centered_data out;
    out.centers_x.resize(t.d());
    parallel_for(t.d(), t.d() * n_used, [&](std::size_t j) {
        out.centers_x[j] = detail::center_column(t.feature(j), spec, rows);
    });
    out.center_y = detail::center_column(y, spec, rows);
    return out;
}

}  // namespace excir
