#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wizards/partition.hpp"
#include "wizards/statistics.hpp"
#include "wizards/variant.hpp"

namespace wizards {

/// Optional post-filter over the admissible partitions: a floor on the
/// wizard's age (the product) and/or the requirement that every child is
/// strictly younger than the wizard. Off by default; the puzzles are solved
/// without it.
struct RealismFilter {
    std::optional<Natural> min_wizard_age;
    bool children_younger_than_wizard = false;

    bool enabled() const {
        return min_wizard_age.has_value() || children_younger_than_wizard;
    }

    bool admits(const Partition& p) const {
        if (!enabled()) return true;
        const Natural age = evaluate_one(p, StatDescriptor::product());
        if (min_wizard_age && age < *min_wizard_age) return false;
        if (children_younger_than_wizard)
            for (int part : p.parts())
                if (age <= part) return false;
        return true;
    }
};

struct AnalyzeOptions {
    /// Hard cap on partitions enumerated for one bus. Exceeding it raises
    /// BudgetExceededError; a truncated analysis is never returned.
    std::optional<std::uint64_t> max_partitions;
    RealismFilter realism;
};

class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(int bus, std::uint64_t budget)
        : std::runtime_error("bus " + std::to_string(bus) + ": partition budget of " +
                             std::to_string(budget) +
                             " exceeded, analysis would be incomplete"),
          bus_(bus) {}
    int bus() const { return bus_; }

private:
    int bus_;
};

/// A key shared by two or more admissible partitions — the formal content of
/// wizard A's "No". Members are in canonical lexicographic order.
struct AmbiguityClass {
    KeyValue key;
    Natural target;  // key[variant.target_index]
    std::vector<Partition> members;

    friend bool operator==(const AmbiguityClass&, const AmbiguityClass&) = default;
};

/// Everything wizard B's deduction depends on for one bus.
struct BusAnalysis {
    int bus = 0;
    VariantSpec variant;
    std::uint64_t partition_total = 0;       // admissible partitions of `bus`
    std::vector<AmbiguityClass> classes;     // sorted by key
    std::vector<Natural> ambiguous_targets;  // distinct targets over classes, sorted

    friend bool operator==(const BusAnalysis&, const BusAnalysis&) = default;
};

/// B can announce the target iff exactly one ambiguous target value exists.
/// Zero classes means A could not have said "No" — also invalid.
inline bool is_valid_bus(const BusAnalysis& analysis) {
    return analysis.ambiguous_targets.size() == 1;
}

/**
 * Groups every admissible partition of `bus` by its key and keeps the keys
 * shared by at least two. Deterministic: classes sorted by key tuple,
 * members in canonical lexicographic order, independent of scheduling.
 */
inline BusAnalysis analyze_bus(int bus, const VariantSpec& variant,
                               const AnalyzeOptions& options = {}) {
    if (bus < 1)
        throw std::invalid_argument("bus number must be >= 1, got " + std::to_string(bus));
    BusAnalysis analysis;
    analysis.bus = bus;
    analysis.variant = variant;

    std::map<KeyValue, std::vector<Partition>> groups;
    std::uint64_t enumerated = 0;
    PartitionStream stream(variant.constraints_for(bus));
    while (auto p = stream.next()) {
        if (options.max_partitions && ++enumerated > *options.max_partitions)
            throw BudgetExceededError(bus, *options.max_partitions);
        if (!options.realism.admits(*p)) continue;
        ++analysis.partition_total;
        groups[evaluate(*p, variant.key)].push_back(std::move(*p));
    }

    for (auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        AmbiguityClass cls;
        cls.key = key;
        cls.target = key[variant.target_index];
        cls.members = std::move(members);
        analysis.classes.push_back(std::move(cls));
    }
    for (const auto& cls : analysis.classes) {
        auto& targets = analysis.ambiguous_targets;
        if (std::find(targets.begin(), targets.end(), cls.target) == targets.end())
            targets.push_back(cls.target);
    }
    std::sort(analysis.ambiguous_targets.begin(), analysis.ambiguous_targets.end());
    return analysis;
}

struct Termination {
    enum class Kind { Certified, BudgetExhausted };
    Kind kind = Kind::BudgetExhausted;
    /// Certified: the first bus with >= 2 ambiguous targets (no larger bus
    /// can be valid, by the append-one lemma). BudgetExhausted: the max_bus
    /// that was reached without such a bus.
    int bound = 0;

    friend bool operator==(const Termination&, const Termination&) = default;
};

struct SolveOutcome {
    VariantSpec variant;
    std::vector<BusAnalysis> analyses;  // buses 1..analyses.size(), in order
    std::vector<int> valid_buses;       // |ambiguous_targets| == 1, below any stop
    Termination termination;

    const BusAnalysis& analysis_for(int bus) const { return analyses.at(bus - 1); }
};

struct SolveOptions {
    int jobs = 1;
    AnalyzeOptions analyze;
    /// Cache hooks. `lookup` may serve a previously stored analysis;
    /// `store` is invoked from the merge thread only, in bus order, for
    /// freshly computed analyses that the outcome retains.
    std::function<std::optional<BusAnalysis>(int bus)> lookup;
    std::function<void(const BusAnalysis&)> store;
};

namespace detail {

/**
 * Chunked driver shared by solve and scan. Buses are analyzed `jobs` at a
 * time in worker threads and merged strictly in bus order, so the outcome
 * (and every cache store) is identical for every parallelism degree.
 */
inline SolveOutcome run_buses(const VariantSpec& variant, int max_bus,
                              const SolveOptions& options, bool stop_at_certificate) {
    if (max_bus < 1)
        throw std::invalid_argument("max_bus must be >= 1, got " + std::to_string(max_bus));
    const int jobs = std::max(1, options.jobs);

    SolveOutcome outcome;
    outcome.variant = variant;
    outcome.termination = {Termination::Kind::BudgetExhausted, max_bus};

    std::optional<int> stop_bus;
    for (int lo = 1; lo <= max_bus; lo += jobs) {
        const int hi = std::min(lo + jobs - 1, max_bus);
        const int width = hi - lo + 1;
        std::vector<std::optional<BusAnalysis>> slot(width);
        std::vector<bool> from_cache(width, false);
        std::vector<std::exception_ptr> failure(width);

        for (int b = lo; b <= hi; ++b) {
            if (!options.lookup) continue;
            if (auto hit = options.lookup(b)) {
                slot[b - lo] = std::move(*hit);
                from_cache[b - lo] = true;
            }
        }

        auto work = [&](int bus) {
            const int i = bus - lo;
            if (slot[i]) return;
            try {
                slot[i] = analyze_bus(bus, variant, options.analyze);
            } catch (...) {
                failure[i] = std::current_exception();
            }
        };
        if (jobs == 1 || width == 1) {
            work(lo);
        } else {
            std::vector<std::thread> workers;
            workers.reserve(width);
            for (int b = lo; b <= hi; ++b) workers.emplace_back(work, b);
            for (auto& w : workers) w.join();
        }

        for (int b = lo; b <= hi; ++b) {
            const int i = b - lo;
            if (failure[i]) {
                try {
                    std::rethrow_exception(failure[i]);
                } catch (const BudgetExceededError&) {
                    throw;  // already names the bus
                } catch (const std::exception& e) {
                    throw std::runtime_error("bus " + std::to_string(b) + ": " + e.what());
                }
            }
            BusAnalysis& analysis = *slot[i];
            const std::size_t target_count = analysis.ambiguous_targets.size();
            outcome.analyses.push_back(analysis);
            if (options.store && !from_cache[i]) options.store(analysis);
            if (target_count >= 2 && !stop_bus) {
                stop_bus = b;
                if (stop_at_certificate) break;
            }
            if (target_count == 1 && !stop_bus) outcome.valid_buses.push_back(b);
        }
        if (stop_at_certificate && stop_bus) break;
    }

    if (stop_bus) outcome.termination = {Termination::Kind::Certified, *stop_bus};
    return outcome;
}

}  // namespace detail

/**
 * Analyzes buses 1, 2, ... in order, collecting valid buses, and stops with
 * Certified(b) at the first b carrying two or more ambiguous targets: the
 * append-one lemma makes ambiguous target sets nondecreasing in the bus, so
 * no later bus can be valid. Returns BudgetExhausted(max_bus) if no such bus
 * appears within the budget. All analyses up to the stop are retained.
 */
inline SolveOutcome solve(const VariantSpec& variant, int max_bus,
                          const SolveOptions& options = {}) {
    return detail::run_buses(variant, max_bus, options, /*stop_at_certificate=*/true);
}

/**
 * Like solve but never stops early: every bus in [1, max_bus] is analyzed,
 * for conjecture evidence past the first certificate point. The termination
 * field still reports the first bus with >= 2 ambiguous targets when one
 * exists in range.
 */
inline SolveOutcome scan(const VariantSpec& variant, int max_bus,
                         const SolveOptions& options = {}) {
    return detail::run_buses(variant, max_bus, options, /*stop_at_certificate=*/false);
}

/// One ambiguity class at `bus` pushed forward by append_one.
struct AppendOneWitness {
    KeyValue source_key;
    Natural source_target;
    KeyValue image_key;
    Natural image_target;
    std::vector<Partition> images;
    bool witnessed = false;
    std::string note;
};

struct MonotonicityReport {
    int bus = 0;
    bool valid = false;
    std::vector<AppendOneWitness> witnesses;   // one per class at `bus`
    std::vector<std::string> defects;          // nonempty iff !valid
    /// source ambiguous target -> image ambiguous target at bus+1
    std::vector<std::pair<Natural, Natural>> target_injection;
};

namespace detail {

inline Natural shift_target(const Natural& t, const StatDescriptor& target) {
    // Appending a child of age 1 leaves the product alone and raises the
    // count and every power sum by exactly 1.
    return target.kind == StatDescriptor::Kind::Product ? t : t + 1;
}

}  // namespace detail

/**
 * Checks the termination lemma concretely at one bus: the append-one images
 * of every ambiguity class at `bus` must land inside an ambiguity class at
 * bus+1 with the predicted key and target, and the induced map on ambiguous
 * target values must be an injection. A failed witness is reported as a
 * defect (it would mean an engine bug), never thrown.
 */
inline MonotonicityReport verify_append_one_monotonicity(int bus, const VariantSpec& variant,
                                                         const AnalyzeOptions& options = {}) {
    MonotonicityReport report;
    report.bus = bus;
    const BusAnalysis here = analyze_bus(bus, variant, options);
    const BusAnalysis there = analyze_bus(bus + 1, variant, options);

    for (const auto& cls : here.classes) {
        AppendOneWitness w;
        w.source_key = cls.key;
        w.source_target = cls.target;
        w.image_target = detail::shift_target(cls.target, variant.target());
        for (const auto& member : cls.members) w.images.push_back(append_one(member));

        w.image_key = evaluate(w.images.front(), variant.key);
        bool keys_agree = true;
        for (const auto& image : w.images)
            if (evaluate(image, variant.key) != w.image_key) keys_agree = false;

        const AmbiguityClass* image_class = nullptr;
        for (const auto& candidate : there.classes)
            if (candidate.key == w.image_key) image_class = &candidate;

        if (!keys_agree) {
            w.note = "append-one images disagree on the key";
        } else if (image_class == nullptr) {
            w.note = "image key is not an ambiguity class at bus " + std::to_string(bus + 1);
        } else if (image_class->target != w.image_target) {
            w.note = "image class target differs from the predicted shift";
        } else {
            auto contains = [&](const Partition& p) {
                return std::find(image_class->members.begin(), image_class->members.end(), p) !=
                       image_class->members.end();
            };
            w.witnessed = std::all_of(w.images.begin(), w.images.end(), contains);
            if (!w.witnessed) w.note = "an image partition is missing from the image class";
        }
        if (!w.witnessed)
            report.defects.push_back("class with target " + w.source_target.str() + ": " +
                                     w.note);
        report.witnesses.push_back(std::move(w));
    }

    for (const auto& t : here.ambiguous_targets) {
        const Natural image = detail::shift_target(t, variant.target());
        report.target_injection.emplace_back(t, image);
        const auto& targets = there.ambiguous_targets;
        if (std::find(targets.begin(), targets.end(), image) == targets.end())
            report.defects.push_back("shifted target " + image.str() +
                                     " is not ambiguous at bus " + std::to_string(bus + 1));
    }
    for (std::size_t i = 0; i < report.target_injection.size(); ++i)
        for (std::size_t j = i + 1; j < report.target_injection.size(); ++j)
            if (report.target_injection[i].second == report.target_injection[j].second)
                report.defects.push_back("target map is not injective");

    report.valid = report.defects.empty();
    return report;
}

}  // namespace wizards
