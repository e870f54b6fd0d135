#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "excir/errors.hpp"

namespace excir {

// Columnar numeric table: d named feature columns plus one or more named
// output columns (a scalar prediction, or one score column per class).
// All vectors share length n >= 1 and hold finite values only; both are
// enforced at construction so the scoring kernels can skip checks.
class data_table {
public:
    data_table(std::vector<std::string> feature_names,
               std::vector<std::vector<double>> feature_columns,
               std::vector<std::string> output_names,
               std::vector<std::vector<double>> output_columns)
        : feature_names_(std::move(feature_names)),
          features_(std::move(feature_columns)),
          output_names_(std::move(output_names)),
          outputs_(std::move(output_columns)) {
        if (feature_names_.size() != features_.size())
            raise(errc::invalid_input, "feature name/column count mismatch");
        if (output_names_.size() != outputs_.size())
            raise(errc::invalid_input, "output name/column count mismatch");
        if (outputs_.empty()) raise(errc::invalid_input, "table needs at least one output column");
        n_ = outputs_.front().size();
        if (n_ == 0) raise(errc::invalid_input, "table needs at least one row");
        check_names(feature_names_, "feature");
        check_names(output_names_, "output");
        for (std::size_t j = 0; j < features_.size(); ++j)
            check_column(feature_names_[j], features_[j]);
        for (std::size_t j = 0; j < outputs_.size(); ++j)
            check_column(output_names_[j], outputs_[j]);
        for (std::size_t j = 0; j < outputs_.size(); ++j)
            output_index_[output_names_[j]] = j;
    }

    std::size_t n() const { return n_; }
    std::size_t d() const { return features_.size(); }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::vector<double>& feature(std::size_t j) const { return features_[j]; }

    const std::vector<std::string>& output_names() const { return output_names_; }

    bool has_output(std::string_view name) const {
        return output_index_.find(std::string(name)) != output_index_.end();
    }

    const std::vector<double>& output(std::string_view name) const {
        auto it = output_index_.find(std::string(name));
        if (it == output_index_.end())
            raise(errc::unknown_column, "no output column named '" + std::string(name) + "'");
        return outputs_[it->second];
    }

private:
    void check_names(const std::vector<std::string>& names, const char* kind) const {
        std::set<std::string_view> seen;
        for (const auto& name : names) {
            if (name.empty()) raise(errc::invalid_input, std::string(kind) + " name is empty");
            if (!seen.insert(name).second)
                raise(errc::invalid_input, std::string("duplicate ") + kind + " name '" + name + "'");
        }
    }

    void check_column(const std::string& name, const std::vector<double>& col) const {
        if (col.size() != n_)
            raise(errc::invalid_input, "column '" + name + "' has length " +
                                           std::to_string(col.size()) + ", expected " +
                                           std::to_string(n_));
        for (double v : col)
            if (!std::isfinite(v))
                raise(errc::invalid_input, "column '" + name + "' contains a non-finite value");
    }

    std::vector<std::string> feature_names_;
    std::vector<std::vector<double>> features_;
    std::vector<std::string> output_names_;
    std::vector<std::vector<double>> outputs_;
    std::unordered_map<std::string, std::size_t> output_index_;
    std::size_t n_ = 0;
};

// A named feature set. Members are kept sorted and unique (set semantics);
// groups may overlap.
struct group {
    std::string name;
    std::vector<std::size_t> members;
};

class group_family {
public:
    group_family() = default;

    explicit group_family(std::vector<group> groups) : groups_(std::move(groups)) {
        std::set<std::string_view> seen;
        for (auto& g : groups_) {
            if (g.name.empty()) raise(errc::invalid_group, "group name is empty");
            if (!seen.insert(g.name).second)
                raise(errc::invalid_group, "duplicate group name '" + g.name + "'");
            std::sort(g.members.begin(), g.members.end());
            g.members.erase(std::unique(g.members.begin(), g.members.end()), g.members.end());
            if (g.members.empty())
                raise(errc::invalid_group, "group '" + g.name + "' is empty");
        }
    }

    bool empty() const { return groups_.empty(); }
    std::size_t size() const { return groups_.size(); }
    const std::vector<group>& groups() const { return groups_; }

    void validate_against(std::size_t d) const {
        for (const auto& g : groups_)
            for (std::size_t j : g.members)
                if (j >= d)
                    raise(errc::invalid_group, "group '" + g.name + "' references feature index " +
                                                   std::to_string(j) + " but table has " +
                                                   std::to_string(d) + " features");
    }

private:
    std::vector<group> groups_;
};

// Nonnegative per-row accumulation weights.
class weight_vector {
public:
    explicit weight_vector(std::vector<double> w) : w_(std::move(w)) {
        for (double v : w_) {
            if (!std::isfinite(v)) raise(errc::invalid_weight, "weight is non-finite");
            if (v < 0.0) raise(errc::invalid_weight, "weight is negative");
        }
    }

    std::size_t size() const { return w_.size(); }
    const std::vector<double>& values() const { return w_; }

private:
    std::vector<double> w_;
};

}  // namespace excir
