#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wizards/report.hpp"

namespace wizards {

/**
 * Per-bus result store keyed by (variant fingerprint, bus). A hit is only
 * served for an identical fingerprint; entries from other variants coexist
 * untouched. Persisted one JSON record per line, so an interrupted scan
 * loses at most the unwritten tail and a resumed scan replays the rest.
 */
class ScanCache {
public:
    std::optional<ResultRecord> lookup(const std::string& fingerprint, int bus) const {
        const auto it = entries_.find({fingerprint, bus});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void put(const std::string& fingerprint, ResultRecord record) {
        entries_.insert_or_assign({fingerprint, record.bus}, std::move(record));
    }

    std::size_t size() const { return entries_.size(); }

    const std::map<std::pair<std::string, int>, ResultRecord>& entries() const {
        return entries_;
    }

    friend bool operator==(const ScanCache&, const ScanCache&) = default;

private:
    std::map<std::pair<std::string, int>, ResultRecord> entries_;
};

struct CacheLoadResult {
    ScanCache cache;
    std::vector<std::string> warnings;  // one per skipped line
};

/// Atomic persist: the file is written next to `location` and swapped in
/// with a rename, so a crash mid-save never corrupts prior results.
inline void save_cache(const ScanCache& cache, const std::filesystem::path& location) {
    const std::filesystem::path tmp = location.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file '" + tmp.string() + "'");
        for (const auto& [key, record] : cache.entries()) {
            out << nlohmann::json{{"fingerprint", key.first}, {"record", record.to_json()}}
                       .dump()
                << "\n";
        }
        if (!out)
            throw std::runtime_error("write failed for cache file '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, location, ec);
    if (ec)
        throw std::runtime_error("cannot replace cache file '" + location.string() +
                                 "': " + ec.message());
}

/**
 * Loads a line-per-record cache. A missing file is an empty cache (the
 * first run of a scan creates it). Malformed lines, schema-version
 * mismatches, and records inconsistent with their fingerprint are skipped
 * with a warning, never trusted.
 */
inline CacheLoadResult load_cache(const std::filesystem::path& location) {
    CacheLoadResult result;
    if (!std::filesystem::exists(location)) return result;
    if (!std::filesystem::is_regular_file(location))
        throw std::runtime_error("cannot read cache file '" + location.string() +
                                 "': not a regular file");
    std::ifstream in(location);
    if (!in)
        throw std::runtime_error("cannot read cache file '" + location.string() + "'");

    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (line.empty()) continue;
        const std::string where =
            location.string() + ":" + std::to_string(line_no);
        try {
            const nlohmann::json j = nlohmann::json::parse(line);
            const std::string fingerprint = j.at("fingerprint").get<std::string>();
            ResultRecord record = ResultRecord::from_json(j.at("record"));
            if (record.schema_version != kSchemaVersion) {
                result.warnings.push_back(where + ": schema version " +
                                          std::to_string(record.schema_version) +
                                          " does not match engine version " +
                                          std::to_string(kSchemaVersion) + ", entry skipped");
                continue;
            }
            if (record.variant.fingerprint() != fingerprint) {
                result.warnings.push_back(where +
                                          ": fingerprint does not match the stored variant, "
                                          "entry skipped");
                continue;
            }
            to_analysis(record);  // full consistency check, result discarded
            result.cache.put(fingerprint, std::move(record));
        } catch (const std::exception& e) {
            result.warnings.push_back(where + ": malformed cache line skipped (" + e.what() +
                                      ")");
        }
    }
    return result;
}

/// Wires a cache into solve/scan. Lookups are served only for this exact
/// variant; stores go through the single merge thread of the engine.
inline SolveOptions with_cache(SolveOptions options, ScanCache& cache,
                               const VariantSpec& variant) {
    const std::string fingerprint = variant.fingerprint();
    options.lookup = [&cache, fingerprint, variant](int bus) -> std::optional<BusAnalysis> {
        const auto record = cache.lookup(fingerprint, bus);
        if (!record || record->variant != variant) return std::nullopt;
        try {
            return to_analysis(*record);
        } catch (const std::exception&) {
            return std::nullopt;  // recompute rather than trust a corrupt entry
        }
    };
    options.store = [&cache, fingerprint](const BusAnalysis& analysis) {
        cache.put(fingerprint, to_record(analysis));
    };
    return options;
}

}  // namespace wizards
