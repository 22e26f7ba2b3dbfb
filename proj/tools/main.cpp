// colortune: tune text colors to WCAG contrast with minimal perceptual
// change, check ratios, batch-process files, and run the benchmark.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "colortune/cli.hpp"

namespace {

using colortune::cli::OutputFormat;

std::optional<OutputFormat> parse_format(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "plain") return OutputFormat::Plain;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw CLI::ValidationError("--format", "expected plain, csv or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WCAG contrast tuning with minimal perceptual change"};
    app.require_subcommand(1);

    std::string text, bg, level = "aa", input, output, format;
    bool large_text = false;
    std::uint64_t seed = 0;
    long long n = 0;

    auto* tune = app.add_subcommand("tune", "Tune a text color against a background");
    tune->add_option("--text", text, "Text color (#RRGGBB)")->required();
    tune->add_option("--bg", bg, "Background color (#RRGGBB)")->required();
    tune->add_flag("--large-text", large_text, "Use large-text thresholds");
    tune->add_option("--format", format, "Output format: plain or json");

    auto* check = app.add_subcommand("check", "Check the contrast ratio of a pair");
    check->add_option("--text", text, "Text color (#RRGGBB)")->required();
    check->add_option("--bg", bg, "Background color (#RRGGBB)")->required();
    check->add_flag("--large-text", large_text, "Use large-text thresholds");
    check->add_option("--level", level, "Level the exit code reports: aa or aaa");

    auto* batch = app.add_subcommand("batch", "Tune every pair in a CSV or JSON file");
    batch->add_option("--input", input, "Input file (CSV: text,bg[,large]; or JSON array)")
        ->required();
    batch->add_option("--output", output, "Output file (default: stdout)");
    batch->add_option("--format", format, "Force csv or json");
    batch->add_flag("--large-text", large_text, "Default text-size flag for rows without one");

    auto* eval = app.add_subcommand("eval", "Generate a benchmark dataset and evaluate it");
    eval->add_option("--n", n, "Base dataset size")->required();
    eval->add_option("--seed", seed, "Dataset seed");
    eval->add_option("--output", output, "Report file (.csv or .json)");
    eval->add_option("--format", format, "Force csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (tune->parsed()) {
            const auto fmt = parse_format(format);
            return colortune::cli::cmd_tune(
                {text, bg, large_text, fmt.value_or(OutputFormat::Plain)}, std::cout, std::cerr);
        }
        if (check->parsed()) {
            return colortune::cli::cmd_check({text, bg, large_text, level}, std::cout, std::cerr);
        }
        if (batch->parsed()) {
            return colortune::cli::cmd_batch({input, output, parse_format(format), large_text},
                                             std::cout, std::cerr);
        }
        if (n < 1) {
            std::cerr << "error: --n must be >= 1\n";
            return 2;
        }
        return colortune::cli::cmd_eval(
            {seed, static_cast<std::size_t>(n), output, parse_format(format)}, std::cout,
            std::cerr);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
