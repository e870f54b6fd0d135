#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "excir/data_table.hpp"
#include "excir/errors.hpp"

namespace excir {

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) raise(errc::io_error, "cannot read '" + path.string() + "'");
    return std::move(ss).str();
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

// Locale-independent decimal parse; the whole field must be consumed.
inline double parse_cell(std::string_view cell, std::size_t line_no, const std::string& col_name) {
    const auto where = [&] {
        return "line " + std::to_string(line_no) + ", column '" + col_name + "'";
    };
    if (cell.empty()) raise(errc::parse_error, "blank cell at " + where());
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        raise(errc::parse_error, "non-numeric cell '" + std::string(cell) + "' at " + where());
    if (!std::isfinite(v))
        raise(errc::parse_error, "non-finite cell '" + std::string(cell) + "' at " + where());
    return v;
}

// Splits into lines; a trailing newline does not produce an empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

}  // namespace detail

// Loads a comma-separated numeric table with a header row. Exactly one of
// target / class_columns selects the output column(s); every other header
// column becomes a feature.
inline data_table load_table(const std::filesystem::path& path, std::string_view target,
                             std::span<const std::string> class_columns = {}) {
    const bool class_mode = !class_columns.empty();
    if (class_mode == !target.empty())
        raise(errc::invalid_input, "exactly one of target / class columns must be given");

    const std::string text = detail::read_file(path);
    const auto lines = detail::split_lines(text);
    if (lines.empty()) raise(errc::invalid_input, "'" + path.string() + "' is empty");

    const auto header = detail::split_fields(lines[0]);
    std::vector<std::string> names;
    names.reserve(header.size());
    for (const auto& h : header) {
        if (h.empty()) raise(errc::schema_error, "empty column name in header");
        names.emplace_back(h);
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                raise(errc::schema_error, "duplicate header name '" + names[i] + "'");

    std::vector<std::string> outputs;
    if (class_mode) {
        outputs.assign(class_columns.begin(), class_columns.end());
    } else {
        outputs.emplace_back(target);
    }
    std::vector<bool> is_output(names.size(), false);
    for (const auto& o : outputs) {
        const auto it = std::find(names.begin(), names.end(), o);
        if (it == names.end())
            raise(errc::unknown_column, "output column '" + o + "' not in header");
        is_output[static_cast<std::size_t>(it - names.begin())] = true;
    }

    std::vector<std::vector<double>> cols(names.size());
    const std::size_t width = names.size();
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (detail::trim(lines[li]).empty() && li + 1 == lines.size()) break;
        const auto fields = detail::split_fields(lines[li]);
        if (fields.size() != width)
            raise(errc::parse_error, "line " + std::to_string(li + 1) + ": expected " +
                                         std::to_string(width) + " fields, got " +
                                         std::to_string(fields.size()));
        for (std::size_t c = 0; c < width; ++c)
            cols[c].push_back(detail::parse_cell(fields[c], li + 1, names[c]));
    }

    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> feature_cols;
    std::vector<std::vector<double>> output_cols(outputs.size());
    for (std::size_t c = 0; c < width; ++c) {
        if (is_output[c]) continue;
        feature_names.push_back(names[c]);
        feature_cols.push_back(std::move(cols[c]));
    }
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        const auto it = std::find(names.begin(), names.end(), outputs[o]);
        output_cols[o] = std::move(cols[static_cast<std::size_t>(it - names.begin())]);
    }
    if (feature_names.empty()) raise(errc::invalid_input, "no feature columns left in table");

    return data_table(std::move(feature_names), std::move(feature_cols), std::move(outputs),
                      std::move(output_cols));
}

// Group spec: {"groups": {"name": ["feature", ...], ...}}. Feature names are
// resolved against the table header; overlap between groups is legal.
inline group_family load_groups(const std::filesystem::path& path,
                                std::span<const std::string> feature_names) {
    const std::string text = detail::read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(errc::parse_error, "'" + path.string() + "': " + e.what());
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_object())
        raise(errc::schema_error, "'" + path.string() + "' must be {\"groups\": {...}}");

    std::vector<group> groups;
    for (const auto& [name, members] : doc["groups"].items()) {
        if (!members.is_array())
            raise(errc::schema_error, "group '" + name + "' must be a list of feature names");
        group g;
        g.name = name;
        for (const auto& m : members) {
            if (!m.is_string())
                raise(errc::schema_error, "group '" + name + "' has a non-string member");
            const auto fname = m.get<std::string>();
            const auto it = std::find(feature_names.begin(), feature_names.end(), fname);
            if (it == feature_names.end())
                raise(errc::unknown_feature, "group '" + name + "' references unknown feature '" +
                                                 fname + "'");
            g.members.push_back(static_cast<std::size_t>(it - feature_names.begin()));
        }
        if (g.members.empty()) raise(errc::invalid_group, "group '" + name + "' is empty");
        groups.push_back(std::move(g));
    }
    return group_family(std::move(groups));
}

// Weights: one nonnegative number per line; a single non-numeric first line
// is tolerated as a header.
inline weight_vector load_weights(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    const auto lines = detail::split_lines(text);
    std::vector<double> w;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto cell = detail::trim(lines[li]);
        if (cell.empty() && li + 1 == lines.size()) break;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        const bool ok = ec == std::errc() && ptr == cell.data() + cell.size();
        if (!ok) {
            if (li == 0) continue;  // header line
            raise(errc::parse_error,
                  "non-numeric weight '" + std::string(cell) + "' at line " + std::to_string(li + 1));
        }
        if (!std::isfinite(v))
            raise(errc::invalid_weight, "non-finite weight at line " + std::to_string(li + 1));
        w.push_back(v);
    }
    if (w.empty()) raise(errc::invalid_input, "'" + path.string() + "' holds no weights");
    return weight_vector(std::move(w));
}

}  // namespace excir
