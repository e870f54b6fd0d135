#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excir/accumulate.hpp"
#include "excir/centering.hpp"
#include "excir/data_table.hpp"
#include "excir/errors.hpp"
#include "excir/parallel.hpp"

namespace excir {

struct score_entry {
    std::string name;
    double cir = 0.5;
    double ratio = 0.0;
    bool neutral = true;
};

// Scores for one (table, output) pair. Features are stored in rank order
// (descending cir, ties by ascending name), so rank j is position j+1;
// groups use the same ordering without rank semantics.
struct score_report {
    std::vector<score_entry> features;
    std::vector<score_entry> groups;
    centering_spec centering;
    std::size_t rows_used = 0;
    std::optional<std::string> class_label;

    const score_entry* find_feature(std::string_view name) const {
        for (const auto& e : features)
            if (e.name == name) return &e;
        return nullptr;
    }

    const score_entry* find_group(std::string_view name) const {
        for (const auto& e : groups)
            if (e.name == name) return &e;
        return nullptr;
    }

    // Per-feature scores aligned by ascending feature name; the canonical
    // vector layout for agreement comparisons.
    std::vector<double> feature_scores_by_name() const {
        std::vector<const score_entry*> ptrs;
        ptrs.reserve(features.size());
        for (const auto& e : features) ptrs.push_back(&e);
        std::sort(ptrs.begin(), ptrs.end(),
                  [](const score_entry* a, const score_entry* b) { return a->name < b->name; });
        std::vector<double> out;
        out.reserve(ptrs.size());
        for (const auto* p : ptrs) out.push_back(p->cir);
        return out;
    }
};

namespace detail {

inline void sort_by_rank(std::vector<score_entry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const score_entry& a, const score_entry& b) {
        if (a.cir != b.cir) return a.cir > b.cir;
        return a.name < b.name;
    });
}

struct engine_options {
    bool want_features = true;
    const group_family* groups = nullptr;
    const weight_vector* weights = nullptr;
    std::span<const std::size_t> rows;
    std::optional<std::string> class_label;
    const std::vector<double>* reuse_feature_centers = nullptr;
};

// Shared scoring path: centers (unweighted, over the selected rows), then
// one accumulation sweep, then finalize + rank.
inline score_report run_engine(const data_table& t, std::string_view output_name,
                               const centering_spec& spec, const engine_options& opt) {
    spec.validate();
    const auto& y = t.output(output_name);
    if (opt.groups) opt.groups->validate_against(t.d());
    if (opt.weights && opt.weights->size() != t.n())
        raise(errc::invalid_weight, "weight vector has length " +
                                        std::to_string(opt.weights->size()) + ", expected " +
                                        std::to_string(t.n()));
    for (std::size_t i : opt.rows)
        if (i >= t.n()) raise(errc::invalid_input, "row index out of range");

    const std::size_t n_used = opt.rows.empty() ? t.n() : opt.rows.size();
    std::span<const double> w =
        opt.weights ? std::span<const double>(opt.weights->values()) : std::span<const double>();

    std::vector<double> centers_x;
    if (opt.reuse_feature_centers) {
        centers_x = *opt.reuse_feature_centers;
    } else {
        centers_x.resize(t.d());
        parallel_for(t.d(), t.d() * n_used, [&](std::size_t j) {
            centers_x[j] = detail::center_column(t.feature(j), spec, opt.rows);
        });
    }
    const double center_y = detail::center_column(y, spec, opt.rows);

    score_report report;
    report.centering = spec;
    report.rows_used = n_used;
    report.class_label = opt.class_label;

    if (opt.want_features) {
        std::vector<accumulator> acc(t.d());
        parallel_for(t.d(), t.d() * n_used, [&](std::size_t j) {
            acc[j] = accumulate_feature(t.feature(j), y, centers_x[j], center_y, opt.rows, w);
        });
        report.features.reserve(t.d());
        for (std::size_t j = 0; j < t.d(); ++j) {
            const cir_value v = finalize(acc[j]);
            report.features.push_back({t.feature_names()[j], v.cir, v.ratio, v.neutral});
        }
        sort_by_rank(report.features);
    }

    if (opt.groups && !opt.groups->empty()) {
        const auto& gs = opt.groups->groups();
        std::size_t member_total = 0;
        for (const auto& g : gs) member_total += g.members.size();
        std::vector<accumulator> acc(gs.size());
        parallel_for(gs.size(), member_total * n_used, [&](std::size_t gi) {
            acc[gi] = accumulate_group(t, gs[gi].members, y, centers_x, center_y, opt.rows, w);
        });
        report.groups.reserve(gs.size());
        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
            const cir_value v = finalize(acc[gi]);
            report.groups.push_back({gs[gi].name, v.cir, v.ratio, v.neutral});
        }
        sort_by_rank(report.groups);
    }
    return report;
}

}  // namespace detail

// Per-feature CIR scores, plus per-group scores when a group family is given.
inline score_report cir_scores(const data_table& t, std::string_view output_name,
                               const group_family& groups, const centering_spec& spec,
                               const weight_vector* weights = nullptr,
                               std::span<const std::size_t> rows = {}) {
    detail::engine_options opt;
    opt.groups = groups.empty() ? nullptr : &groups;
    opt.weights = weights;
    opt.rows = rows;
    return detail::run_engine(t, output_name, spec, opt);
}

// Set scores only.
inline score_report block_cir(const data_table& t, std::string_view output_name,
                              const group_family& groups, const centering_spec& spec,
                              const weight_vector* weights = nullptr,
                              std::span<const std::size_t> rows = {}) {
    if (groups.empty()) raise(errc::invalid_group, "block scoring needs at least one group");
    detail::engine_options opt;
    opt.want_features = false;
    opt.groups = &groups;
    opt.weights = weights;
    opt.rows = rows;
    return detail::run_engine(t, output_name, spec, opt);
}

// One report per class score column, tagged with the class label. Feature
// centers do not depend on the output, so they are computed once.
inline std::vector<score_report> class_conditioned_cir(const data_table& t,
                                                       std::span<const std::string> class_columns,
                                                       const group_family& groups,
                                                       const centering_spec& spec) {
    if (class_columns.empty()) raise(errc::invalid_input, "no class columns given");
    spec.validate();
    for (const auto& c : class_columns) (void)t.output(c);

    std::vector<double> centers_x(t.d());
    parallel_for(t.d(), t.d() * t.n(), [&](std::size_t j) {
        centers_x[j] = detail::center_column(t.feature(j), spec, {});
    });

    std::vector<score_report> reports;
    reports.reserve(class_columns.size());
    for (const auto& c : class_columns) {
        detail::engine_options opt;
        opt.groups = groups.empty() ? nullptr : &groups;
        opt.class_label = c;
        opt.reuse_feature_centers = &centers_x;
        reports.push_back(detail::run_engine(t, c, spec, opt));
    }
    return reports;
}

}  // namespace excir
