#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wizards/analysis.hpp"

namespace wizards {

/// Bumped whenever an engine change could alter any persisted result;
/// gates every cache hit.
inline constexpr int kSchemaVersion = 1;

enum class Format { Text, Json, Csv };

inline Format parse_format(const std::string& text) {
    if (text == "text") return Format::Text;
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + text + "' (expected text, json, or csv)");
}

/// Exact nonnegative integer from its decimal serialization.
inline Natural parse_natural(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer string");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad integer string '" + text + "'");
    return Natural(text);
}

/**
 * The persisted form of one BusAnalysis. Statistic values are decimal
 * strings (products outgrow 64 bits); buses, counts, and parts stay native
 * integers. parse(render(r)) == r.
 */
struct ResultRecord {
    struct ClassRecord {
        std::vector<std::string> key;
        std::string target;
        std::vector<std::vector<int>> partitions;

        friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
    };

    int schema_version = kSchemaVersion;
    VariantSpec variant;
    int bus = 0;
    std::uint64_t partition_total = 0;
    std::vector<ClassRecord> classes;
    int ambiguous_target_count = 0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;

    nlohmann::json to_json() const {
        nlohmann::json cls_array = nlohmann::json::array();
        for (const auto& cls : classes)
            cls_array.push_back(nlohmann::json{
                {"key", cls.key}, {"target", cls.target}, {"partitions", cls.partitions}});
        return nlohmann::json{{"schema_version", schema_version},
                              {"variant", variant.to_json()},
                              {"bus", bus},
                              {"partition_total", partition_total},
                              {"classes", cls_array},
                              {"ambiguous_target_count", ambiguous_target_count}};
    }

    static ResultRecord from_json(const nlohmann::json& j) {
        ResultRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        r.variant = VariantSpec::from_json(j.at("variant"));
        r.bus = j.at("bus").get<int>();
        r.partition_total = j.at("partition_total").get<std::uint64_t>();
        for (const auto& cls : j.at("classes")) {
            ClassRecord c;
            c.key = cls.at("key").get<std::vector<std::string>>();
            c.target = cls.at("target").get<std::string>();
            c.partitions = cls.at("partitions").get<std::vector<std::vector<int>>>();
            r.classes.push_back(std::move(c));
        }
        r.ambiguous_target_count = j.at("ambiguous_target_count").get<int>();
        return r;
    }
};

inline ResultRecord to_record(const BusAnalysis& analysis) {
    ResultRecord r;
    r.variant = analysis.variant;
    r.bus = analysis.bus;
    r.partition_total = analysis.partition_total;
    for (const auto& cls : analysis.classes) {
        ResultRecord::ClassRecord c;
        for (const auto& value : cls.key) c.key.push_back(value.str());
        c.target = cls.target.str();
        for (const auto& member : cls.members) c.partitions.push_back(member.parts());
        r.classes.push_back(std::move(c));
    }
    r.ambiguous_target_count = static_cast<int>(analysis.ambiguous_targets.size());
    return r;
}

/// Inverse of to_record. Throws on internally inconsistent records.
inline BusAnalysis to_analysis(const ResultRecord& record) {
    BusAnalysis analysis;
    analysis.bus = record.bus;
    analysis.variant = record.variant;
    analysis.partition_total = record.partition_total;
    for (const auto& cls : record.classes) {
        AmbiguityClass c;
        for (const auto& value : cls.key) c.key.push_back(parse_natural(value));
        c.target = parse_natural(cls.target);
        if (c.key.size() != record.variant.key.size())
            throw std::invalid_argument("class key arity does not match the variant");
        if (c.key[record.variant.target_index] != c.target)
            throw std::invalid_argument("class target does not match its key");
        for (const auto& parts : cls.partitions) c.members.push_back(Partition(parts));
        if (c.members.size() < 2)
            throw std::invalid_argument("ambiguity class with fewer than two partitions");
        analysis.classes.push_back(std::move(c));
    }
    for (const auto& cls : analysis.classes) {
        auto& targets = analysis.ambiguous_targets;
        if (std::find(targets.begin(), targets.end(), cls.target) == targets.end())
            targets.push_back(cls.target);
    }
    std::sort(analysis.ambiguous_targets.begin(), analysis.ambiguous_targets.end());
    if (static_cast<int>(analysis.ambiguous_targets.size()) != record.ambiguous_target_count)
        throw std::invalid_argument("ambiguous_target_count does not match the classes");
    return analysis;
}

struct RenderOptions {
    /// Text mode may truncate the class listing, never any count.
    std::optional<std::size_t> max_classes_shown;
};

namespace detail {

inline std::string key_signature(const VariantSpec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.key.size(); ++i) {
        if (i) s += ", ";
        s += v.key[i].to_string();
    }
    return s + ")";
}

inline std::string variant_headline(const VariantSpec& v) {
    std::string s = "variant " + v.name + ": key " + key_signature(v) + ", target " +
                    v.target().to_string();
    if (v.min_count || v.max_count) {
        s += ", children ";
        s += v.min_count ? std::to_string(*v.min_count) : "1";
        s += "..";
        s += v.max_count ? std::to_string(*v.max_count) : "*";
    }
    return s;
}

inline std::string class_label(const AmbiguityClass& cls, const VariantSpec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < cls.key.size(); ++i) {
        if (i) s += ", ";
        s += v.key[i].to_string() + "=" + cls.key[i].str();
    }
    return s + ")";
}

inline std::vector<Natural> candidate_ages(const AmbiguityClass& cls) {
    std::vector<Natural> ages;
    for (const auto& member : cls.members) {
        const Natural age = evaluate_one(member, StatDescriptor::product());
        if (std::find(ages.begin(), ages.end(), age) == ages.end()) ages.push_back(age);
    }
    std::sort(ages.begin(), ages.end());
    return ages;
}

inline std::string join_naturals(const std::vector<Natural>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += values[i].str();
    }
    return s;
}

inline void write_classes(std::ostringstream& out, const BusAnalysis& analysis,
                          const RenderOptions& options, const std::string& indent) {
    const std::size_t shown =
        options.max_classes_shown
            ? std::min(*options.max_classes_shown, analysis.classes.size())
            : analysis.classes.size();
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& cls = analysis.classes[i];
        out << indent << "class " << class_label(cls, analysis.variant) << ":";
        for (const auto& member : cls.members) out << " " << member.to_string();
        out << "\n" << indent << "  candidate wizard ages: " << join_naturals(candidate_ages(cls))
            << "\n";
    }
    if (shown < analysis.classes.size())
        out << indent << "... " << (analysis.classes.size() - shown)
            << " more classes not shown (" << analysis.classes.size() << " total)\n";
}

inline nlohmann::json termination_json(const Termination& t) {
    if (t.kind == Termination::Kind::Certified)
        return nlohmann::json{{"kind", "certified"}, {"stop_bus", t.bound}};
    return nlohmann::json{{"kind", "budget_exhausted"}, {"max_bus", t.bound}};
}

inline std::string csv_header() { return "bus,partition_total,ambiguous_target_count,valid\n"; }

inline std::string csv_row(const BusAnalysis& a) {
    return std::to_string(a.bus) + "," + std::to_string(a.partition_total) + "," +
           std::to_string(a.ambiguous_targets.size()) + "," +
           (is_valid_bus(a) ? "true" : "false") + "\n";
}

}  // namespace detail

/// Single-bus report, the `analyze` subcommand's payload.
inline std::string render_analysis(const BusAnalysis& analysis, Format format,
                                   const RenderOptions& options = {}) {
    switch (format) {
        case Format::Json:
            return to_record(analysis).to_json().dump(2) + "\n";
        case Format::Csv:
            return detail::csv_header() + detail::csv_row(analysis);
        case Format::Text:
            break;
    }
    std::ostringstream out;
    const VariantSpec& v = analysis.variant;
    out << detail::variant_headline(v) << "\n";
    out << "bus " << analysis.bus << ": " << analysis.partition_total << " partitions, "
        << analysis.classes.size() << (analysis.classes.size() == 1 ? " ambiguity class, "
                                                                    : " ambiguity classes, ")
        << analysis.ambiguous_targets.size()
        << (analysis.ambiguous_targets.size() == 1 ? " ambiguous target" : " ambiguous targets")
        << "\n";
    detail::write_classes(out, analysis, options, "  ");
    if (!analysis.ambiguous_targets.empty())
        out << "ambiguous targets (" << v.target().to_string()
            << "): " << detail::join_naturals(analysis.ambiguous_targets) << "\n";
    if (is_valid_bus(analysis)) {
        out << "verdict: VALID - B deduces " << v.target().to_string() << " = "
            << analysis.ambiguous_targets.front().str() << "\n";
    } else if (analysis.ambiguous_targets.empty()) {
        out << "verdict: INVALID - no key is ambiguous, A could not have said \"No\"\n";
    } else {
        out << "verdict: INVALID - B cannot deduce the " << v.target().to_string() << " ("
            << analysis.ambiguous_targets.size() << " candidates)\n";
    }
    return out.str();
}

/**
 * Full solve/scan report. Text lists every analyzed bus, details the valid
 * ones, and states the termination; json emits the outcome as ResultRecords
 * plus the termination marker; csv emits one row per analyzed bus.
 */
inline std::string render_report(const SolveOutcome& outcome, Format format,
                                 const RenderOptions& options = {}) {
    if (format == Format::Json) {
        nlohmann::json buses = nlohmann::json::array();
        for (const auto& analysis : outcome.analyses)
            buses.push_back(to_record(analysis).to_json());
        nlohmann::json valid = nlohmann::json::array();
        for (int bus : outcome.valid_buses)
            valid.push_back(nlohmann::json{
                {"bus", bus},
                {"target", outcome.analysis_for(bus).ambiguous_targets.front().str()}});
        const nlohmann::json doc{{"schema_version", kSchemaVersion},
                                 {"variant", outcome.variant.to_json()},
                                 {"termination", detail::termination_json(outcome.termination)},
                                 {"valid_buses", valid},
                                 {"buses", buses}};
        return doc.dump(2) + "\n";
    }
    if (format == Format::Csv) {
        std::string out = detail::csv_header();
        for (const auto& analysis : outcome.analyses) out += detail::csv_row(analysis);
        return out;
    }

    std::ostringstream out;
    out << detail::variant_headline(outcome.variant) << "\n";
    out << "buses analyzed: 1.." << outcome.analyses.size() << "\n\n";
    for (const auto& analysis : outcome.analyses) {
        out << "bus " << analysis.bus << ": " << analysis.ambiguous_targets.size()
            << " ambiguous targets (" << analysis.classes.size() << " classes, "
            << analysis.partition_total << " partitions)";
        if (is_valid_bus(analysis)) out << "  <- VALID";
        out << "\n";
    }
    out << "\n";
    if (outcome.valid_buses.empty()) {
        out << "valid buses: none\n";
    } else {
        for (int bus : outcome.valid_buses) {
            const BusAnalysis& analysis = outcome.analysis_for(bus);
            out << "bus " << bus << ": VALID, " << outcome.variant.target().to_string() << " = "
                << analysis.ambiguous_targets.front().str() << "\n";
            detail::write_classes(out, analysis, options, "  ");
        }
    }
    if (outcome.termination.kind == Termination::Kind::Certified) {
        out << "termination: certified at bus " << outcome.termination.bound
            << " - the first bus with two or more ambiguous targets; appending a child of "
               "age 1 carries them to every larger bus, so no bus beyond "
            << outcome.termination.bound - 1 << " can be valid\n";
    } else {
        out << "termination: budget exhausted at max bus " << outcome.termination.bound
            << " - no bus with two or more ambiguous targets found; inconclusive\n";
    }
    return out.str();
}

/// Prose walk-through of one bus, naming each ambiguity class and whether B
/// can deduce the target.
inline std::string explain_bus(const BusAnalysis& analysis) {
    const VariantSpec& v = analysis.variant;
    const std::string target_name = v.target().to_string();
    std::ostringstream out;
    out << "Bus " << analysis.bus << ", variant " << v.name << ".\n";
    out << "The bus number is common knowledge; B would additionally be told the key "
        << detail::key_signature(v) << " and claims to deduce the " << target_name << ".\n";
    out << "Partitions of " << analysis.bus << " considered: " << analysis.partition_total
        << ".\n";
    if (analysis.classes.empty()) {
        out << "Every key determines the ages uniquely, so A could not have said \"No\".\n";
        out << "Bus " << analysis.bus << " does not admit the dialogue.\n";
        return out.str();
    }
    out << "Keys shared by more than one partition: " << analysis.classes.size() << ".\n";
    for (const auto& cls : analysis.classes) {
        out << "  " << detail::class_label(cls, v) << ": the ages could be ";
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            if (i) out << " or ";
            out << cls.members[i].to_string();
        }
        const bool age_in_key =
            std::find(v.key.begin(), v.key.end(), StatDescriptor::product()) != v.key.end();
        if (!age_in_key)
            out << " (wizard ages " << detail::join_naturals(detail::candidate_ages(cls)) << ")";
        out << ".\n";
    }
    if (is_valid_bus(analysis)) {
        out << "A's \"No\" is possible, and every ambiguous key carries the same "
            << target_name << ", " << analysis.ambiguous_targets.front().str()
            << ", so B can announce it.\n";
        out << "Bus " << analysis.bus << " admits the dialogue; the " << target_name << " is "
            << analysis.ambiguous_targets.front().str() << ".\n";
    } else {
        out << "A's \"No\" is possible, but the ambiguous keys carry "
            << analysis.ambiguous_targets.size() << " distinct " << target_name << " values ("
            << detail::join_naturals(analysis.ambiguous_targets)
            << "), so B cannot tell which one is A's.\n";
        out << "Bus " << analysis.bus << " does not admit the dialogue.\n";
    }
    return out.str();
}

}  // namespace wizards
