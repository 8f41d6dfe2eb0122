#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wizards/statistics.hpp"

namespace wizards {

/**
 * A puzzle variant: which statistics wizard B would be told (the key, in a
 * fixed order) and which single component B finally announces knowledge of
 * (the target). Count bounds reproduce the "exactly three children" style
 * of misreading; the sum is supplied per analysis, never stored here.
 *
 * PowerSum(1) is banned from the key: the bus is already common knowledge,
 * and keying on it would only manufacture degenerate classes.
 */
struct VariantSpec {
    std::string name;
    std::vector<StatDescriptor> key;
    std::size_t target_index = 0;
    std::optional<int> min_count;
    std::optional<int> max_count;

    const StatDescriptor& target() const { return key.at(target_index); }

    PartitionConstraints constraints_for(int bus) const {
        return PartitionConstraints{bus, min_count, max_count, std::nullopt};
    }

    friend bool operator==(const VariantSpec&, const VariantSpec&) = default;

    /// {name, key: [descriptor strings], target_index, constraints}
    nlohmann::json to_json() const {
        nlohmann::json constraints = nlohmann::json::object();
        if (min_count) constraints["min_count"] = *min_count;
        if (max_count) constraints["max_count"] = *max_count;
        nlohmann::json keys = nlohmann::json::array();
        for (const auto& d : key) keys.push_back(d.to_string());
        return nlohmann::json{{"name", name},
                              {"key", keys},
                              {"target_index", target_index},
                              {"constraints", constraints}};
    }

    static VariantSpec from_json(const nlohmann::json& j);

    /// Canonical compact serialization (sorted keys), the basis of the
    /// cache fingerprint.
    std::string canonical_string() const { return to_json().dump(); }

    /// FNV-1a 64-bit over the canonical serialization, as lowercase hex.
    std::string fingerprint() const {
        std::uint64_t hash = 0xcbf29ce484222325ULL;
        for (unsigned char c : canonical_string()) {
            hash ^= c;
            hash *= 0x100000001b3ULL;
        }
        std::ostringstream out;
        out << std::hex << hash;
        return out.str();
    }
};

namespace detail {

inline void collect_variant_violations(const VariantSpec& v, std::vector<std::string>& out) {
    if (v.name.empty()) out.push_back("variant name must be nonempty");
    if (v.key.empty()) out.push_back("key must contain at least one statistic");
    for (std::size_t i = 0; i < v.key.size(); ++i) {
        for (std::size_t j = i + 1; j < v.key.size(); ++j)
            if (v.key[i] == v.key[j])
                out.push_back("duplicate key statistic '" + v.key[i].to_string() + "'");
        if (v.key[i].kind == StatDescriptor::Kind::PowerSum && v.key[i].power == 1)
            out.push_back("power_sum:1 is the bus number, already common knowledge; "
                          "it may not appear in the key");
    }
    if (!v.key.empty() && v.target_index >= v.key.size())
        out.push_back("target_index " + std::to_string(v.target_index) +
                      " out of range for key of arity " + std::to_string(v.key.size()));
    if (v.min_count && *v.min_count < 1) out.push_back("min_count must be >= 1");
    if (v.max_count && *v.max_count < 1) out.push_back("max_count must be >= 1");
    if (v.min_count && v.max_count && *v.min_count > *v.max_count)
        out.push_back("min_count " + std::to_string(*v.min_count) + " exceeds max_count " +
                      std::to_string(*v.max_count));
}

}  // namespace detail

/// Validates every VariantSpec invariant, reporting all violations at once.
inline VariantSpec custom_variant(std::string name, std::vector<StatDescriptor> key,
                                  std::size_t target_index,
                                  std::optional<int> min_count = std::nullopt,
                                  std::optional<int> max_count = std::nullopt) {
    VariantSpec v{std::move(name), std::move(key), target_index, min_count, max_count};
    std::vector<std::string> violations;
    detail::collect_variant_violations(v, violations);
    if (!violations.empty()) {
        std::string message = "invalid variant";
        if (!v.name.empty()) message += " '" + v.name + "'";
        message += ":";
        for (const auto& violation : violations) message += "\n  - " + violation;
        throw std::invalid_argument(message);
    }
    return v;
}

inline std::vector<std::string> builtin_variant_names() {
    return {"original", "simplified", "generalized", "cubes", "original_c3"};
}

/**
 * The named variants:
 *   original     key (product, count),                          target product
 *   simplified   key (count),                                   target count
 *   generalized  key (product, count, power_sum:2),             target product
 *   cubes        key (product, count, power_sum:2, power_sum:3),target product
 *   original_c3  original restricted to exactly three children
 */
inline VariantSpec builtin_variant(const std::string& name) {
    const auto product = StatDescriptor::product();
    const auto count = StatDescriptor::count();
    if (name == "original")
        return custom_variant("original", {product, count}, 0);
    if (name == "simplified")
        return custom_variant("simplified", {count}, 0);
    if (name == "generalized")
        return custom_variant("generalized", {product, count, StatDescriptor::power_sum(2)}, 0);
    if (name == "cubes")
        return custom_variant(
            "cubes", {product, count, StatDescriptor::power_sum(2), StatDescriptor::power_sum(3)},
            0);
    if (name == "original_c3")
        return custom_variant("original_c3", {product, count}, 0, 3, 3);
    std::string available;
    for (const auto& n : builtin_variant_names()) {
        if (!available.empty()) available += ", ";
        available += n;
    }
    throw std::invalid_argument("unknown variant '" + name + "'; available: " + available);
}

inline VariantSpec VariantSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("variant JSON must be an object");
    for (const char* field : {"name", "key", "target_index"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("variant JSON missing field '") + field +
                                        "'");
    std::vector<StatDescriptor> key;
    for (const auto& entry : j.at("key"))
        key.push_back(StatDescriptor::parse(entry.get<std::string>()));
    std::optional<int> min_count, max_count;
    if (j.contains("constraints")) {
        const auto& c = j.at("constraints");
        if (c.contains("min_count")) min_count = c.at("min_count").get<int>();
        if (c.contains("max_count")) max_count = c.at("max_count").get<int>();
    }
    return custom_variant(j.at("name").get<std::string>(), std::move(key),
                          j.at("target_index").get<std::size_t>(), min_count, max_count);
}

/// Loads a custom variant from a JSON config file in the to_json schema.
inline VariantSpec load_variant_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read variant file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("variant file '" + path.string() + "' is not valid JSON: " +
                                 e.what());
    }
    return VariantSpec::from_json(j);
}

}  // namespace wizards
