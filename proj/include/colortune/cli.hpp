#pragma once

// Command implementations behind the CLI front end. Each command writes to
// the supplied streams and returns the process exit code:
//   0  compliant outcome
//   1  non-compliant outcome
//   2  usage or I/O error

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "colortune/color.hpp"
#include "colortune/metrics.hpp"
#include "colortune/optimizer.hpp"
#include "colortune/report.hpp"

namespace colortune::cli {

enum class OutputFormat { Plain, Csv, Json };

struct TuneOptions {
    std::string text;
    std::string bg;
    bool large_text = false;
    OutputFormat format = OutputFormat::Plain;
};

struct CheckOptions {
    std::string text;
    std::string bg;
    bool large_text = false;
    std::string level = "aa";  // exit code keyed to this level
};

struct BatchOptions {
    std::string input_path;
    std::string output_path;  // empty: stdout
    std::optional<OutputFormat> format;
    bool large_text = false;
};

struct EvalOptions {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string output_path;  // empty: no report file
    std::optional<OutputFormat> format;
};

namespace detail {

inline std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// .json / .csv extension picks the machine format unless --format overrides.
inline OutputFormat format_for_path(const std::string& path, std::optional<OutputFormat> override,
                                    OutputFormat fallback) {
    if (override) return *override;
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        return OutputFormat::Json;
    }
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
        return OutputFormat::Csv;
    }
    return fallback;
}

inline int parse_color_or_fail(const std::string& token, RgbColor& out, std::ostream& err) {
    try {
        out = parse_hex(token);
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace detail

inline int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err) {
    RgbColor text, bg;
    if (detail::parse_color_or_fail(opt.text, text, err) != 0) return 2;
    if (detail::parse_color_or_fail(opt.bg, bg, err) != 0) return 2;

    const TuneResult result = generate_accessible_color(text, bg, opt.large_text);

    if (opt.format == OutputFormat::Json) {
        nlohmann::json doc = {{"text", format_hex(text)},
                              {"bg", format_hex(bg)},
                              {"tuned", format_hex(result.color)},
                              {"contrast", result.contrast},
                              {"delta_e", result.delta_e},
                              {"compliance", std::string(compliance_label(result.compliance))},
                              {"phase", std::string(phase_label(result.phase))}};
        out << doc.dump(2) << "\n";
    } else {
        out << "text: " << format_hex(text) << "\n";
        out << "bg: " << format_hex(bg) << "\n";
        out << "tuned: " << format_hex(result.color) << "\n";
        out << "contrast: " << detail::two_decimals(result.contrast) << "\n";
        out << "delta_e: " << detail::two_decimals(result.delta_e) << "\n";
        out << "compliance: " << compliance_label(result.compliance) << "\n";
    }
    const bool ok = result.compliance == Compliance::TargetMet
                 || result.compliance == Compliance::MinimumMet;
    return ok ? 0 : 1;
}

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    RgbColor text, bg;
    if (detail::parse_color_or_fail(opt.text, text, err) != 0) return 2;
    if (detail::parse_color_or_fail(opt.bg, bg, err) != 0) return 2;
    if (opt.level != "aa" && opt.level != "aaa") {
        err << "error: --level must be 'aa' or 'aaa', got '" << opt.level << "'\n";
        return 2;
    }

    const double ratio = contrast_ratio(text, bg);
    const double aa = opt.large_text ? 3.0 : 4.5;
    const double aaa = opt.large_text ? 4.5 : 7.0;
    const bool aa_pass = ratio >= aa;
    const bool aaa_pass = ratio >= aaa;

    out << "contrast: " << detail::two_decimals(ratio) << "\n";
    out << "aa: " << (aa_pass ? "pass" : "fail") << "\n";
    out << "aaa: " << (aaa_pass ? "pass" : "fail") << "\n";
    return (opt.level == "aaa" ? aaa_pass : aa_pass) ? 0 : 1;
}

namespace detail {

struct BatchRow {
    RgbColor text;
    RgbColor bg;
    bool large_text = false;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline bool parse_bool_flag(const std::string& s) {
    return s == "1" || s == "true" || s == "TRUE" || s == "True";
}

// Parses `text,bg[,large]` CSV or a JSON array of {text, bg, large?}.
// Unparseable rows are reported on err and skipped.
inline std::vector<BatchRow> parse_batch_input(const std::string& content, OutputFormat format,
                                               bool default_large, std::ostream& err,
                                               std::size_t& error_count) {
    std::vector<BatchRow> rows;
    error_count = 0;

    if (format == OutputFormat::Json) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(content);
        } catch (const nlohmann::json::parse_error& e) {
            err << "error: invalid JSON input: " << e.what() << "\n";
            error_count = 1;
            return rows;
        }
        if (!doc.is_array()) {
            err << "error: JSON input must be an array of {text, bg, large?} objects\n";
            error_count = 1;
            return rows;
        }
        std::size_t index = 0;
        for (const auto& item : doc) {
            ++index;
            try {
                BatchRow row;
                row.text = parse_hex(item.at("text").get<std::string>());
                row.bg = parse_hex(item.at("bg").get<std::string>());
                row.large_text = item.value("large", default_large);
                rows.push_back(row);
            } catch (const std::exception& e) {
                err << "row " << index << ": " << e.what() << "\n";
                ++error_count;
            }
        }
        return rows;
    }

    std::istringstream in(content);
    std::string line;
    std::size_t index = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        if (!header_seen) {
            header_seen = true;
            continue;  // text,bg[,large]
        }
        ++index;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2 || fields.size() > 3) {
            err << "row " << index << ": expected 2 or 3 fields, got " << fields.size() << "\n";
            ++error_count;
            continue;
        }
        try {
            BatchRow row;
            row.text = parse_hex(fields[0]);
            row.bg = parse_hex(fields[1]);
            row.large_text = fields.size() == 3 ? parse_bool_flag(fields[2]) : default_large;
            rows.push_back(row);
        } catch (const std::exception& e) {
            err << "row " << index << ": " << e.what() << "\n";
            ++error_count;
        }
    }
    return rows;
}

}  // namespace detail

inline int cmd_batch(const BatchOptions& opt, std::ostream& out, std::ostream& err) {
    std::ifstream in(opt.input_path, std::ios::binary);
    if (!in) {
        err << "error: cannot read input file '" << opt.input_path << "'\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    const OutputFormat in_format =
        detail::format_for_path(opt.input_path, opt.format, OutputFormat::Csv);
    std::size_t parse_errors = 0;
    const auto rows = detail::parse_batch_input(buffer.str(), in_format, opt.large_text, err,
                                                parse_errors);

    std::vector<EvaluationRecord> records;
    records.reserve(rows.size());
    bool all_compliant = true;
    for (const auto& row : rows) {
        EvaluationRecord rec = evaluate_pair(row.text, row.bg, row.large_text);
        rec.category = "batch";
        const Compliance c = rec.result.compliance;
        all_compliant &= (c == Compliance::TargetMet || c == Compliance::MinimumMet);
        records.push_back(std::move(rec));
    }

    const OutputFormat out_format =
        detail::format_for_path(opt.output_path, opt.format, in_format);
    std::string payload;
    if (out_format == OutputFormat::Json) {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : records) recs.push_back(record_to_json(r));
        payload = recs.dump(2) + "\n";
    } else {
        payload = std::string(kRecordCsvHeader) + "\n";
        for (const auto& r : records) append_record_csv(payload, r);
    }

    if (opt.output_path.empty()) {
        out << payload;
    } else {
        std::ofstream of(opt.output_path, std::ios::binary);
        if (!of) {
            err << "error: cannot write output file '" << opt.output_path << "'\n";
            return 2;
        }
        of << payload;
    }
    return (parse_errors == 0 && all_compliant) ? 0 : 1;
}

inline int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.n == 0) {
        err << "error: --n must be >= 1\n";
        return 2;
    }

    const auto dataset = generate_dataset(opt.seed, opt.n);
    std::vector<EvaluationRecord> records;
    records.reserve(dataset.size());
    for (const auto& entry : dataset) {
        EvaluationRecord rec = evaluate_pair(entry.text, entry.bg, false);
        rec.category = entry.category;
        records.push_back(std::move(rec));
    }

    SummaryReport report = summarize(records);
    report.seed = opt.seed;
    report.n = opt.n;
    report.generator_version = kGeneratorVersion;

    if (!opt.output_path.empty()) {
        const OutputFormat fmt =
            detail::format_for_path(opt.output_path, opt.format, OutputFormat::Csv);
        std::ofstream of(opt.output_path, std::ios::binary);
        if (!of) {
            err << "error: cannot write report file '" << opt.output_path << "'\n";
            return 2;
        }
        of << export_report(report, records,
                            fmt == OutputFormat::Json ? ReportFormat::Json : ReportFormat::Csv);
    }

    out << "generator: " << report.generator_version << "  seed: " << report.seed
        << "  n: " << report.n << "\n";
    out << "pairs: " << report.total_pairs << "\n";
    out << "success_rate: " << detail::two_decimals(100.0 * report.success_rate) << "%\n";
    out << "high_fidelity_rate: " << detail::two_decimals(100.0 * report.high_fidelity_rate)
        << "%\n";
    out << "median_delta_e: " << detail::two_decimals(report.median_delta_e) << "\n";
    out << "median_elapsed_ms: "
        << detail::two_decimals(report.median_elapsed_seconds * 1000.0) << "\n";
    out << "throughput_pairs_per_second: "
        << detail::two_decimals(report.throughput_pairs_per_second) << "\n";
    return 0;
}

}  // namespace colortune::cli
