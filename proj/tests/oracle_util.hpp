#pragma once

// Independent oracles the engine is tested against. Nothing in this file may
// call into the library's enumeration or grouping paths: generation is a
// plain recursion, statistics are naive loops, and grouping is a quadratic
// pairwise comparison with no map.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Parts = std::vector<int>;

inline void gen_rec(int n, int lo, Parts& current, std::vector<Parts>& out) {
    if (n == 0) {
        out.push_back(current);
        return;
    }
    for (int p = lo; p <= n; ++p) {
        if (n - p != 0 && n - p < p) continue;
        current.push_back(p);
        gen_rec(n - p, p, current, out);
        current.pop_back();
    }
}

/// All partitions of n as nondecreasing tuples, lexicographic order.
inline std::vector<Parts> partitions(int n) {
    std::vector<Parts> out;
    Parts current;
    gen_rec(n, 1, current, out);
    return out;
}

/// Statistic by wire spelling: "count", "product", "power_sum:k".
inline Int stat(const Parts& parts, const std::string& descriptor) {
    if (descriptor == "count") return Int(parts.size());
    if (descriptor == "product") {
        Int r = 1;
        for (int p : parts) r *= p;
        return r;
    }
    const int k = std::stoi(descriptor.substr(std::string("power_sum:").size()));
    Int total = 0;
    for (int p : parts) {
        Int term = 1;
        for (int i = 0; i < k; ++i) term *= p;
        total += term;
    }
    return total;
}

inline std::vector<Int> key_of(const Parts& parts, const std::vector<std::string>& key) {
    std::vector<Int> out;
    for (const auto& d : key) out.push_back(stat(parts, d));
    return out;
}

struct OracleClass {
    std::vector<Int> key;
    std::vector<Parts> members;
};

struct OracleAnalysis {
    int total = 0;
    std::vector<OracleClass> classes;       // sorted by key
    std::vector<Int> ambiguous_targets;     // sorted distinct
};

/// Quadratic brute force: every partition's key is compared against every
/// class representative seen so far.
inline OracleAnalysis analyze(int bus, const std::vector<std::string>& key,
                              std::size_t target_index, int min_count = 0,
                              int max_count = 0) {
    OracleAnalysis result;
    std::vector<OracleClass> groups;
    for (const auto& parts : partitions(bus)) {
        const int c = static_cast<int>(parts.size());
        if (min_count && c < min_count) continue;
        if (max_count && c > max_count) continue;
        ++result.total;
        const std::vector<Int> k = key_of(parts, key);
        bool placed = false;
        for (auto& group : groups) {
            if (group.key == k) {
                group.members.push_back(parts);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back(OracleClass{k, {parts}});
    }
    for (auto& group : groups)
        if (group.members.size() >= 2) result.classes.push_back(std::move(group));
    std::sort(result.classes.begin(), result.classes.end(),
              [](const OracleClass& a, const OracleClass& b) { return a.key < b.key; });
    for (const auto& cls : result.classes) {
        const Int& t = cls.key[target_index];
        auto& targets = result.ambiguous_targets;
        if (std::find(targets.begin(), targets.end(), t) == targets.end())
            targets.push_back(t);
    }
    std::sort(result.ambiguous_targets.begin(), result.ambiguous_targets.end());
    return result;
}

}  // namespace oracle
