// Command-line front end: solve / analyze / scan / variants / explain, plus a
// debug partition dump. Results go to stdout, diagnostics to stderr; exit 0
// on success or a certified solve, 2 when a solve/scan budget ran out without
// a certificate, 1 on any error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wizards/analysis.hpp"
#include "wizards/cache.hpp"
#include "wizards/partition.hpp"
#include "wizards/report.hpp"
#include "wizards/variant.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Args {
    std::string variant_name;
    std::string variant_file;
    int bus = 0;
    int max_bus = 200;
    std::optional<int> count_min;
    std::optional<int> count_max;
    std::string format = "text";
    std::string cache_path;
    int jobs = 1;
    std::optional<std::size_t> max_classes_shown;
};

void add_variant_flags(CLI::App& cmd, Args& args) {
    cmd.add_option("--variant", args.variant_name, "Builtin variant name");
    cmd.add_option("--variant-file", args.variant_file, "JSON file with a custom variant");
    cmd.add_option("--count-min", args.count_min, "Override: minimum number of children");
    cmd.add_option("--count-max", args.count_max, "Override: maximum number of children");
}

void add_format_flag(CLI::App& cmd, Args& args) {
    cmd.add_option("--format", args.format, "Output format: text, json, or csv")
        ->capture_default_str();
}

wizards::VariantSpec resolve_variant(const Args& args) {
    if (!args.variant_name.empty() && !args.variant_file.empty())
        throw std::invalid_argument("--variant and --variant-file are mutually exclusive");
    wizards::VariantSpec v;
    if (!args.variant_file.empty()) {
        v = wizards::load_variant_file(args.variant_file);
    } else if (!args.variant_name.empty()) {
        v = wizards::builtin_variant(args.variant_name);
    } else {
        throw std::invalid_argument("a variant is required: pass --variant or --variant-file");
    }
    if (args.count_min || args.count_max) {
        const auto min_count = args.count_min ? args.count_min : v.min_count;
        const auto max_count = args.count_max ? args.count_max : v.max_count;
        v = wizards::custom_variant(v.name, v.key, v.target_index, min_count, max_count);
    }
    return v;
}

wizards::RenderOptions render_options(const Args& args) {
    return wizards::RenderOptions{args.max_classes_shown};
}

int run_solve_or_scan(const Args& args, bool full_scan) {
    const wizards::VariantSpec variant = resolve_variant(args);
    const wizards::Format format = wizards::parse_format(args.format);

    wizards::ScanCache cache;
    if (!args.cache_path.empty()) {
        wizards::CacheLoadResult loaded = wizards::load_cache(args.cache_path);
        for (const auto& warning : loaded.warnings)
            std::cerr << "warning: " << warning << "\n";
        cache = std::move(loaded.cache);
    }

    wizards::SolveOptions options;
    options.jobs = args.jobs;
    if (!args.cache_path.empty())
        options = wizards::with_cache(std::move(options), cache, variant);

    const wizards::SolveOutcome outcome = full_scan
                                              ? wizards::scan(variant, args.max_bus, options)
                                              : wizards::solve(variant, args.max_bus, options);
    if (!args.cache_path.empty()) wizards::save_cache(cache, args.cache_path);

    std::cout << wizards::render_report(outcome, format, render_options(args));
    return outcome.termination.kind == wizards::Termination::Kind::Certified
               ? kExitOk
               : kExitInconclusive;
}

int run_analyze(const Args& args, bool prose) {
    const wizards::VariantSpec variant = resolve_variant(args);
    const wizards::BusAnalysis analysis = wizards::analyze_bus(args.bus, variant);
    if (prose)
        std::cout << wizards::explain_bus(analysis);
    else
        std::cout << wizards::render_analysis(analysis, wizards::parse_format(args.format),
                                              render_options(args));
    return kExitOk;
}

int run_variants(const Args& args) {
    const wizards::Format format = wizards::parse_format(args.format);
    if (format == wizards::Format::Json) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& name : wizards::builtin_variant_names())
            list.push_back(wizards::builtin_variant(name).to_json());
        std::cout << list.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& name : wizards::builtin_variant_names()) {
        const wizards::VariantSpec v = wizards::builtin_variant(name);
        std::cout << v.name << ": key (";
        for (std::size_t i = 0; i < v.key.size(); ++i)
            std::cout << (i ? ", " : "") << v.key[i].to_string();
        std::cout << "), target " << v.target().to_string();
        if (v.min_count || v.max_count) {
            std::cout << ", children " << (v.min_count ? std::to_string(*v.min_count) : "1")
                      << ".." << (v.max_count ? std::to_string(*v.max_count) : "*");
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_partitions(const Args& args) {
    wizards::PartitionStream stream(
        wizards::PartitionConstraints{args.bus, args.count_min, args.count_max, std::nullopt});
    while (auto p = stream.next()) {
        const auto& parts = p->parts();
        for (std::size_t i = 0; i < parts.size(); ++i)
            std::cout << (i ? "," : "") << parts[i];
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and explorer for the wizards-on-a-bus family of puzzles"};
    app.require_subcommand(1);
    Args args;

    CLI::App* solve = app.add_subcommand(
        "solve", "Find every valid bus and the termination certificate");
    add_variant_flags(*solve, args);
    add_format_flag(*solve, args);
    solve->add_option("--max-bus", args.max_bus, "Bus budget")->capture_default_str();
    solve->add_option("--cache", args.cache_path, "Cache file for per-bus results");
    solve->add_option("--jobs", args.jobs, "Parallel bus analyses")->capture_default_str();
    solve->add_option("--max-classes-shown", args.max_classes_shown,
                      "Cap the classes listed per bus in text output");

    CLI::App* analyze = app.add_subcommand("analyze", "Full ambiguity report for one bus");
    add_variant_flags(*analyze, args);
    add_format_flag(*analyze, args);
    analyze->add_option("--bus", args.bus, "Bus number")->required();
    analyze->add_option("--max-classes-shown", args.max_classes_shown,
                        "Cap the classes listed in text output");

    CLI::App* scan = app.add_subcommand(
        "scan", "Analyze every bus in [1, max-bus] with no early stop (conjecture evidence)");
    add_variant_flags(*scan, args);
    add_format_flag(*scan, args);
    scan->add_option("--max-bus", args.max_bus, "Bus budget")->capture_default_str();
    scan->add_option("--cache", args.cache_path, "Cache file for resumable scans");
    scan->add_option("--jobs", args.jobs, "Parallel bus analyses")->capture_default_str();
    scan->add_option("--max-classes-shown", args.max_classes_shown,
                     "Cap the classes listed per bus in text output");

    CLI::App* variants = app.add_subcommand("variants", "List the builtin puzzle variants");
    add_format_flag(*variants, args);

    CLI::App* explain = app.add_subcommand("explain", "Prose walk-through of one bus");
    add_variant_flags(*explain, args);
    explain->add_option("--bus", args.bus, "Bus number")->required();

    CLI::App* partitions =
        app.add_subcommand("partitions", "Debug dump: canonical partitions, one per line");
    partitions->add_option("--bus", args.bus, "Sum to partition")->required();
    partitions->add_option("--count-min", args.count_min, "Minimum number of parts");
    partitions->add_option("--count-max", args.count_max, "Maximum number of parts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (solve->parsed()) return run_solve_or_scan(args, /*full_scan=*/false);
        if (scan->parsed()) return run_solve_or_scan(args, /*full_scan=*/true);
        if (analyze->parsed()) return run_analyze(args, /*prose=*/false);
        if (explain->parsed()) return run_analyze(args, /*prose=*/true);
        if (variants->parsed()) return run_variants(args);
        if (partitions->parsed()) return run_partitions(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitError;
}
