#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "excir/agreement.hpp"
#include "excir/errors.hpp"
#include "excir/scores.hpp"
#include "excir/transfer.hpp"

namespace excir {

// Numbers are printed with 12 significant digits via to_chars: locale
// independent and byte-deterministic, and reparsed reports reproduce
// agreement metrics to 1e-9.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x",
                                  static_cast<unsigned>(static_cast<unsigned char>(c)));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_quote(std::string_view s) { return "\"" + json_escape(s) + "\""; }

inline std::string optional_json(const std::optional<double>& v) {
    return v ? format_double(*v) : "null";
}

inline std::string optional_csv(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

inline void append_meta(std::string& out, const score_report& r, std::uint64_t seed) {
    out += "\"meta\":{\"centering\":{\"method\":";
    out += json_quote(to_string(r.centering.method));
    out += ",\"source\":";
    out += r.centering.source == center_source::sketch ? json_quote("gk") : json_quote("exact");
    if (r.centering.source == center_source::sketch) {
        out += ",\"epsilon\":";
        out += format_double(r.centering.epsilon);
    }
    out += "},\"rows_used\":";
    out += std::to_string(r.rows_used);
    out += ",\"seed\":";
    out += std::to_string(seed);
    if (r.class_label) {
        out += ",\"class\":";
        out += json_quote(*r.class_label);
    }
    out += "}";
}

inline void append_entries(std::string& out, const std::vector<score_entry>& entries,
                           bool with_rank) {
    out += "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (i > 0) out += ",";
        out += "{\"name\":";
        out += json_quote(e.name);
        out += ",\"cir\":";
        out += format_double(e.cir);
        out += ",\"ratio_nd\":";
        out += format_double(e.ratio);
        out += ",\"neutral\":";
        out += e.neutral ? "true" : "false";
        if (with_rank) {
            out += ",\"rank\":";
            out += std::to_string(i + 1);
        }
        out += "}";
    }
    out += "]";
}

inline void append_report_body(std::string& out, const score_report& r, std::uint64_t seed) {
    out += "{";
    append_meta(out, r, seed);
    out += ",\"features\":";
    append_entries(out, r.features, true);
    out += ",\"groups\":";
    append_entries(out, r.groups, false);
    out += "}";
}

inline void append_agreement_fields(std::string& out, const agreement_report& a) {
    out += "\"jaccard_at_k\":";
    out += format_double(a.jaccard);
    out += ",\"k\":";
    out += std::to_string(a.k);
    out += ",\"spearman\":";
    out += optional_json(a.spearman);
    out += ",\"kendall\":";
    out += optional_json(a.kendall);
    out += ",\"procrustes_residual\":";
    out += optional_json(a.procrustes);
    out += ",\"sym_kl\":";
    out += optional_json(a.sym_kl);
}

}  // namespace detail

inline std::string score_report_json(const score_report& r, std::uint64_t seed = 0) {
    std::string out;
    detail::append_report_body(out, r, seed);
    out += "\n";
    return out;
}

inline std::string class_reports_json(const std::vector<score_report>& reports,
                                      std::uint64_t seed = 0) {
    std::string out = "{\"reports\":[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) out += ",";
        detail::append_report_body(out, reports[i], seed);
    }
    out += "]}\n";
    return out;
}

inline std::string score_report_csv(const score_report& r) {
    std::string out = "kind,name,cir,ratio_nd,neutral,rank";
    if (r.class_label) out = "class," + out;
    out += "\n";
    auto row = [&](const char* kind, const score_entry& e, std::size_t rank) {
        if (r.class_label) out += *r.class_label + ",";
        out += kind;
        out += ",";
        out += e.name;
        out += ",";
        out += format_double(e.cir);
        out += ",";
        out += format_double(e.ratio);
        out += ",";
        out += e.neutral ? "true" : "false";
        out += ",";
        if (rank > 0) out += std::to_string(rank);
        out += "\n";
    };
    for (std::size_t i = 0; i < r.features.size(); ++i) row("feature", r.features[i], i + 1);
    for (const auto& g : r.groups) row("group", g, 0);
    return out;
}

inline std::string class_reports_csv(const std::vector<score_report>& reports) {
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string block = score_report_csv(reports[i]);
        if (i > 0) block.erase(0, block.find('\n') + 1);  // keep one header
        out += block;
    }
    return out;
}

inline std::string agreement_json(const agreement_report& a) {
    std::string out = "{";
    detail::append_agreement_fields(out, a);
    out += "}\n";
    return out;
}

inline std::string agreement_csv(const agreement_report& a) {
    std::string out = "jaccard_at_k,k,spearman,kendall,procrustes_residual,sym_kl\n";
    out += format_double(a.jaccard);
    out += "," + std::to_string(a.k);
    out += "," + detail::optional_csv(a.spearman);
    out += "," + detail::optional_csv(a.kendall);
    out += "," + detail::optional_csv(a.procrustes);
    out += "," + detail::optional_csv(a.sym_kl);
    out += "\n";
    return out;
}

// Plot-ready per-run table; one row per (fraction, repeat).
inline std::string transfer_curve_csv(const transfer_curve& c) {
    std::string out =
        "fraction,repeat,rows,seconds,jaccard_at_k,spearman,kendall,procrustes_residual,sym_kl\n";
    for (const auto& pt : c.points) {
        out += format_double(pt.fraction);
        out += "," + std::to_string(pt.repeat);
        out += "," + std::to_string(pt.rows_kept);
        out += "," + format_double(pt.seconds);
        out += "," + format_double(pt.agreement.jaccard);
        out += "," + detail::optional_csv(pt.agreement.spearman);
        out += "," + detail::optional_csv(pt.agreement.kendall);
        out += "," + detail::optional_csv(pt.agreement.procrustes);
        out += "," + detail::optional_csv(pt.agreement.sym_kl);
        out += "\n";
    }
    return out;
}

inline std::string transfer_curve_json(const transfer_curve& c, const knee_result& knee,
                                       double target_jaccard) {
    std::string out = "{\"meta\":{\"fractions\":[";
    for (std::size_t i = 0; i < c.config.fractions.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(c.config.fractions[i]);
    }
    out += "],\"seed\":";
    out += std::to_string(c.config.seed);
    out += ",\"k\":";
    out += std::to_string(c.config.k);
    out += ",\"repeats\":";
    out += std::to_string(c.config.repeats);
    out += "},\"reference\":";
    detail::append_report_body(out, c.reference, c.config.seed);
    out += ",\"curve\":[";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& pt = c.points[i];
        if (i > 0) out += ",";
        out += "{\"fraction\":";
        out += format_double(pt.fraction);
        out += ",\"repeat\":";
        out += std::to_string(pt.repeat);
        out += ",\"rows\":";
        out += std::to_string(pt.rows_kept);
        out += ",\"seconds\":";
        out += format_double(pt.seconds);
        out += ",\"agreement\":{";
        detail::append_agreement_fields(out, pt.agreement);
        out += "},\"scores\":";
        detail::append_report_body(out, pt.scores, c.config.seed);
        out += "}";
    }
    out += "],\"knee\":{\"fraction\":";
    out += format_double(knee.fraction);
    out += ",\"no_knee\":";
    out += knee.no_knee ? "true" : "false";
    out += ",\"target_jaccard\":";
    out += format_double(target_jaccard);
    out += "}}\n";
    return out;
}

// Reads back the per-feature scores of an emitted JSON report (the `agree`
// input format).
struct parsed_scores {
    std::vector<std::pair<std::string, double>> features;  // ascending name
};

inline parsed_scores parse_score_report(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(errc::parse_error, origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("features") || !doc["features"].is_array())
        raise(errc::schema_error, origin + ": missing \"features\" array");
    parsed_scores out;
    for (const auto& f : doc["features"]) {
        if (!f.contains("name") || !f.contains("cir"))
            raise(errc::schema_error, origin + ": feature entry lacks name/cir");
        out.features.emplace_back(f["name"].get<std::string>(), f["cir"].get<double>());
    }
    std::sort(out.features.begin(), out.features.end());
    for (std::size_t i = 1; i < out.features.size(); ++i)
        if (out.features[i].first == out.features[i - 1].first)
            raise(errc::schema_error, origin + ": duplicate feature name");
    return out;
}

}  // namespace excir
