#pragma once

// CSV and JSON serialization of evaluation records and summary reports.

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "colortune/evaluation.hpp"

#include <json.hpp>

namespace colortune {

enum class ReportFormat { Csv, Json };

inline std::string_view compliance_label(Compliance c) {
    switch (c) {
        case Compliance::TargetMet: return "target_met";
        case Compliance::MinimumMet: return "minimum_met";
        case Compliance::Improved: return "improved";
        case Compliance::Unchanged: return "unchanged";
    }
    return "unchanged";
}

inline std::string_view phase_label(Phase p) {
    switch (p) {
        case Phase::BinarySearch: return "binary_search";
        case Phase::GradientDescent: return "gradient_descent";
        case Phase::None: return "none";
    }
    return "none";
}

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline constexpr std::string_view kRecordCsvHeader =
    "category,text,bg,initial_contrast,final_text,final_contrast,delta_e,compliance,elapsed_ms";

inline void append_record_csv(std::string& out, const EvaluationRecord& r) {
    out += r.category;
    out += ',';
    out += format_hex(r.text);
    out += ',';
    out += format_hex(r.bg);
    out += ',';
    out += format_double(r.initial_contrast);
    out += ',';
    out += format_hex(r.result.color);
    out += ',';
    out += format_double(r.result.contrast);
    out += ',';
    out += format_double(r.result.delta_e);
    out += ',';
    out += compliance_label(r.result.compliance);
    out += ',';
    out += format_double(r.elapsed_seconds * 1000.0);
    out += '\n';
}

inline nlohmann::json record_to_json(const EvaluationRecord& r) {
    return {{"category", r.category},
            {"text", format_hex(r.text)},
            {"bg", format_hex(r.bg)},
            {"initial_contrast", r.initial_contrast},
            {"final_text", format_hex(r.result.color)},
            {"final_contrast", r.result.contrast},
            {"delta_e", r.result.delta_e},
            {"compliance", std::string(compliance_label(r.result.compliance))},
            {"elapsed_ms", r.elapsed_seconds * 1000.0}};
}

inline nlohmann::json summary_to_json(const SummaryReport& rep) {
    nlohmann::json cats = nlohmann::json::array();
    for (const auto& c : rep.categories) {
        cats.push_back({{"name", c.name},
                        {"count", c.count},
                        {"success_rate", c.success_rate},
                        {"median_initial_contrast", c.median_initial_contrast},
                        {"median_delta_e", c.median_delta_e}});
    }
    return {{"generator_version", rep.generator_version},
            {"seed", rep.seed},
            {"n", rep.n},
            {"total_pairs", rep.total_pairs},
            {"success_rate", rep.success_rate},
            {"high_fidelity_rate", rep.high_fidelity_rate},
            {"median_delta_e", rep.median_delta_e},
            {"median_elapsed_seconds", rep.median_elapsed_seconds},
            {"throughput_pairs_per_second", rep.throughput_pairs_per_second},
            {"categories", std::move(cats)}};
}

// CSV carries the records table only; JSON mirrors the summary field names
// and embeds the records array.
inline std::string export_report(const SummaryReport& report,
                                 const std::vector<EvaluationRecord>& records,
                                 ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::string out{kRecordCsvHeader};
        out += '\n';
        for (const auto& r : records) append_record_csv(out, r);
        return out;
    }
    nlohmann::json doc = summary_to_json(report);
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) recs.push_back(record_to_json(r));
    doc["records"] = std::move(recs);
    return doc.dump(2) + "\n";
}

}  // namespace colortune
