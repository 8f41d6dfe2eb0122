#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wizards {

/// Exact integer used for every disclosed statistic (products of a partition
/// of n grow like 3^(n/3), past any fixed width).
using Natural = boost::multiprecision::cpp_int;

/**
 * Canonical multiset of children's ages: positive parts, nondecreasing,
 * nonempty. Two partitions are equal iff their canonical sequences are.
 */
class Partition {
public:
    /// Canonicalizes (sorts) and validates. Throws std::invalid_argument on
    /// an empty sequence or a nonpositive part.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw std::invalid_argument("partition must have at least one part");
        for (int p : parts_)
            if (p < 1)
                throw std::invalid_argument("partition parts must be positive, got " +
                                            std::to_string(p));
        if (!std::is_sorted(parts_.begin(), parts_.end()))
            std::sort(parts_.begin(), parts_.end());
    }

    const std::vector<int>& parts() const { return parts_; }
    int count() const { return static_cast<int>(parts_.size()); }
    long long sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0LL); }

    /// "{1,3,4,4}"
    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        s += '}';
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) {
        return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(),
                                                      b.parts_.begin(), b.parts_.end());
    }

private:
    std::vector<int> parts_;
};

/// p with one extra part of age 1. Sum and count grow by 1, the product is
/// unchanged, and every k-th power sum grows by exactly 1; the map is
/// injective on canonical partitions.
inline Partition append_one(const Partition& p) {
    std::vector<int> parts;
    parts.reserve(p.parts().size() + 1);
    parts.push_back(1);
    parts.insert(parts.end(), p.parts().begin(), p.parts().end());
    return Partition(std::move(parts));
}

/**
 * Restriction of the partition set of `sum`. Constraints only filter, never
 * transform: the admissible set is exactly the canonical partitions of `sum`
 * whose count lies in [min_count, max_count] and whose parts are <= max_part.
 */
struct PartitionConstraints {
    int sum = 0;
    std::optional<int> min_count;
    std::optional<int> max_count;
    std::optional<int> max_part;

    void validate() const {
        if (sum < 1)
            throw std::invalid_argument("partition sum must be >= 1, got " +
                                        std::to_string(sum));
        if (min_count && *min_count < 1)
            throw std::invalid_argument("min_count must be >= 1");
        if (max_count && *max_count < 1)
            throw std::invalid_argument("max_count must be >= 1");
        if (min_count && max_count && *min_count > *max_count)
            throw std::invalid_argument("min_count " + std::to_string(*min_count) +
                                        " exceeds max_count " + std::to_string(*max_count));
        if (max_part && *max_part < 1)
            throw std::invalid_argument("max_part must be >= 1");
    }
};

/**
 * Streams the admissible partitions in lexicographic order of the
 * nondecreasing part sequences ({1,1,3} < {1,2,2} < {1,4} < {2,3} < {5}),
 * each exactly once, with constant memory per partition. Restart by
 * constructing a fresh stream; the order is identical on every run.
 *
 * Count bounds and max_part are pushed into generation: a part is only
 * placed when the remainder is still completable under every constraint,
 * so the stream never visits a dead branch more than one level deep.
 */
class PartitionStream {
public:
    explicit PartitionStream(PartitionConstraints constraints)
        : constraints_(constraints) {
        constraints_.validate();
    }

    /// Next partition in order, or nullopt once exhausted.
    std::optional<Partition> next() {
        if (done_) return std::nullopt;
        if (!started_) {
            started_ = true;
            remaining_ = constraints_.sum;
            if (descend(1)) return Partition(parts_);
        } else {
            while (!parts_.empty()) {
                const int popped = parts_.back();
                parts_.pop_back();
                remaining_ += popped;
                if (descend(popped + 1)) return Partition(parts_);
            }
        }
        done_ = true;
        return std::nullopt;
    }

    const PartitionConstraints& constraints() const { return constraints_; }

private:
    // True iff placing `part` next still allows a constrained completion.
    bool viable(int part) const {
        const long long count_after = static_cast<long long>(parts_.size()) + 1;
        const long long rem_after = remaining_ - part;
        const long long min_c = constraints_.min_count.value_or(1);
        const long long max_c =
            constraints_.max_count.value_or(std::numeric_limits<int>::max());
        if (rem_after == 0) return count_after >= min_c && count_after <= max_c;
        if (count_after >= max_c) return false;
        if (rem_after < part) return false;  // later parts must be >= part
        // m further parts, each in [part, cap], must sum to rem_after.
        const long long cap =
            std::min<long long>(constraints_.max_part.value_or(remaining_), rem_after);
        const long long m_lo = std::max<long long>(1, (rem_after + cap - 1) / cap);
        const long long m_hi = rem_after / part;
        const long long need_lo = std::max<long long>(1, min_c - count_after);
        const long long need_hi = max_c - count_after;
        return std::max(m_lo, need_lo) <= std::min(m_hi, need_hi);
    }

    // Extends the current prefix greedily with the smallest viable parts,
    // the first of them >= min_candidate. True once remaining_ hits zero.
    bool descend(int min_candidate) {
        int lo = min_candidate;
        while (remaining_ > 0) {
            const int prev = parts_.empty() ? 1 : parts_.back();
            const long long part_cap =
                constraints_.max_part ? *constraints_.max_part : remaining_;
            const int hi = static_cast<int>(std::min(remaining_, part_cap));
            int chosen = 0;
            for (int p = std::max(lo, prev); p <= hi; ++p) {
                if (viable(p)) {
                    chosen = p;
                    break;
                }
            }
            if (chosen == 0) return false;
            parts_.push_back(chosen);
            remaining_ -= chosen;
            lo = 1;
        }
        return true;
    }

    PartitionConstraints constraints_;
    std::vector<int> parts_;
    long long remaining_ = 0;
    bool started_ = false;
    bool done_ = false;
};

/// Visits every admissible partition in stream order. The visitor returns
/// false to stop early.
template <typename Visitor>
void enumerate_partitions(const PartitionConstraints& constraints, Visitor&& visit) {
    PartitionStream stream(constraints);
    while (auto p = stream.next())
        if (!visit(*p)) return;
}

/// Materialized enumeration, for small sums and tests.
inline std::vector<Partition> all_partitions(const PartitionConstraints& constraints) {
    std::vector<Partition> out;
    enumerate_partitions(constraints, [&](const Partition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

/// Number of unconstrained partitions of `sum`, by the Euler
/// pentagonal-number recurrence. Deliberately shares nothing with
/// PartitionStream; tests pit the two against each other.
inline Natural count_partitions(int sum) {
    if (sum < 1)
        throw std::invalid_argument("partition sum must be >= 1, got " +
                                    std::to_string(sum));
    std::vector<Natural> p(static_cast<std::size_t>(sum) + 1);
    p[0] = 1;
    for (int n = 1; n <= sum; ++n) {
        Natural total = 0;
        for (int k = 1;; ++k) {
            const long long g1 = static_cast<long long>(k) * (3LL * k - 1) / 2;
            const long long g2 = static_cast<long long>(k) * (3LL * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= n) total += sign * p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) total += sign * p[static_cast<std::size_t>(n - g2)];
        }
        p[static_cast<std::size_t>(n)] = total;
    }
    return p[static_cast<std::size_t>(sum)];
}

}  // namespace wizards
