#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "wizards/partition.hpp"

namespace wizards {

/**
 * One disclosed statistic of a partition: the number of parts, their product
 * (the wizard's age), or the k-th power sum. PowerSum(1) is the partition
 * sum itself — the bus number.
 */
struct StatDescriptor {
    enum class Kind { Count, Product, PowerSum };

    Kind kind = Kind::Count;
    int power = 0;  // meaningful only for PowerSum, always >= 1 there

    static StatDescriptor count() { return {Kind::Count, 0}; }
    static StatDescriptor product() { return {Kind::Product, 0}; }
    static StatDescriptor power_sum(int k) {
        if (k < 1)
            throw std::invalid_argument("power sum exponent must be >= 1, got " +
                                        std::to_string(k));
        return {Kind::PowerSum, k};
    }

    friend bool operator==(const StatDescriptor&, const StatDescriptor&) = default;
    friend auto operator<=>(const StatDescriptor&, const StatDescriptor&) = default;

    /// "count", "product", or "power_sum:k" — the wire spelling.
    std::string to_string() const {
        switch (kind) {
            case Kind::Count: return "count";
            case Kind::Product: return "product";
            case Kind::PowerSum: return "power_sum:" + std::to_string(power);
        }
        throw std::logic_error("unreachable descriptor kind");
    }

    static StatDescriptor parse(const std::string& text) {
        if (text == "count") return count();
        if (text == "product") return product();
        const std::string prefix = "power_sum:";
        if (text.rfind(prefix, 0) == 0) {
            const std::string arg = text.substr(prefix.size());
            std::size_t used = 0;
            int k = 0;
            try {
                k = std::stoi(arg, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad power sum exponent in '" + text + "'");
            }
            if (used != arg.size() || k < 1)
                throw std::invalid_argument("bad power sum exponent in '" + text + "'");
            return power_sum(k);
        }
        throw std::invalid_argument("unknown statistic '" + text +
                                    "' (expected count, product, or power_sum:k)");
    }
};

/// Ordered tuple of exact statistic values, one per descriptor of a
/// variant's key. Compares lexicographically.
using KeyValue = std::vector<Natural>;

inline Natural evaluate_one(const Partition& p, const StatDescriptor& d) {
    switch (d.kind) {
        case StatDescriptor::Kind::Count:
            return Natural(p.count());
        case StatDescriptor::Kind::Product: {
            Natural product = 1;
            for (int part : p.parts()) product *= part;
            return product;
        }
        case StatDescriptor::Kind::PowerSum: {
            Natural total = 0;
            for (int part : p.parts()) {
                Natural term = 1;
                for (int i = 0; i < d.power; ++i) term *= part;
                total += term;
            }
            return total;
        }
    }
    throw std::logic_error("unreachable descriptor kind");
}

/// The key wizard B would be told: statistic values in descriptor order.
/// Pure, exact at any magnitude.
inline KeyValue evaluate(const Partition& p, const std::vector<StatDescriptor>& descriptors) {
    if (descriptors.empty())
        throw std::invalid_argument("descriptor list must be nonempty");
    KeyValue key;
    key.reserve(descriptors.size());
    for (const auto& d : descriptors) key.push_back(evaluate_one(p, d));
    return key;
}

}  // namespace wizards
