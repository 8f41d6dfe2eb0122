// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only if all
// pass. Expected values come from the independent oracles in
// oracle_util.hpp and from hand-checked enumerations frozen before the
// engine was built.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <wizards/analysis.hpp>
#include <wizards/cache.hpp>
#include <wizards/report.hpp>

#include "cli_harness.hpp"
#include "oracle_util.hpp"

using wizards::KeyValue;
using wizards::Natural;
using wizards::Partition;
using wizards::VariantSpec;

namespace {

struct Checker {
    std::vector<std::string> problems;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int g_failures = 0;

void criterion(int id, const std::string& label, const std::function<void(Checker&)>& body) {
    Checker c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.problems.push_back(std::string("unexpected exception: ") + e.what());
    }
    if (c.problems.empty()) {
        const std::string note = c.note.empty() ? "" : " [" + c.note + "]";
        std::printf("criterion %2d: PASS - %s%s\n", id, label.c_str(), note.c_str());
    } else {
        ++g_failures;
        std::string joined;
        for (const auto& p : c.problems) joined += "\n    " + p;
        std::printf("criterion %2d: FAIL - %s%s\n", id, label.c_str(), joined.c_str());
    }
    std::fflush(stdout);
}

const VariantSpec kOriginal = wizards::builtin_variant("original");
const VariantSpec kSimplified = wizards::builtin_variant("simplified");
const VariantSpec kGeneralized = wizards::builtin_variant("generalized");
const VariantSpec kCubes = wizards::builtin_variant("cubes");
const VariantSpec kOriginalC3 = wizards::builtin_variant("original_c3");

const wizards::AmbiguityClass* find_class(const wizards::BusAnalysis& analysis,
                                          const KeyValue& key) {
    for (const auto& cls : analysis.classes)
        if (cls.key == key) return &cls;
    return nullptr;
}

std::vector<std::string> key_spellings(const VariantSpec& v) {
    std::vector<std::string> out;
    for (const auto& d : v.key) out.push_back(d.to_string());
    return out;
}

bool classes_match_oracle(Checker& c, const VariantSpec& variant, int bus, int min_count,
                          int max_count) {
    const auto engine = wizards::analyze_bus(bus, variant);
    const auto expected =
        oracle::analyze(bus, key_spellings(variant), variant.target_index, min_count, max_count);
    bool ok = engine.partition_total == static_cast<std::uint64_t>(expected.total) &&
              engine.classes.size() == expected.classes.size() &&
              engine.ambiguous_targets == expected.ambiguous_targets;
    if (ok) {
        for (std::size_t i = 0; i < engine.classes.size(); ++i) {
            if (engine.classes[i].key != expected.classes[i].key ||
                engine.classes[i].members.size() != expected.classes[i].members.size()) {
                ok = false;
                break;
            }
            for (std::size_t m = 0; m < engine.classes[i].members.size(); ++m)
                if (engine.classes[i].members[m].parts() != expected.classes[i].members[m])
                    ok = false;
        }
    }
    c.require(ok, "variant " + variant.name + ", bus " + std::to_string(bus) +
                      ": engine classes differ from the quadratic oracle");
    return ok;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace

int main() {
    std::printf("acceptance suite: wizards-on-a-bus search engine\n\n");

    criterion(1, "original puzzle: unique valid bus 12, age 48, certified stop at 13, < 1 s",
              [](Checker& c) {
                  Timer t;
                  const auto outcome = wizards::solve(kOriginal, 200);
                  const double lib_secs = t.seconds();
                  c.require(outcome.valid_buses == std::vector<int>{12},
                            "valid buses are not exactly {12}");
                  c.require(outcome.termination ==
                                wizards::Termination{wizards::Termination::Kind::Certified, 13},
                            "termination is not Certified(13)");
                  const auto& bus12 = outcome.analysis_for(12);
                  c.require(bus12.ambiguous_targets == std::vector<Natural>{48},
                            "deduced age is not 48");
                  c.require(bus12.classes.size() == 1, "bus 12 should carry exactly one class");
                  c.require(!bus12.classes.empty() &&
                                bus12.classes[0].members ==
                                    std::vector<Partition>{Partition({1, 3, 4, 4}),
                                                           Partition({2, 2, 2, 6})},
                            "bus 12 class is not {1,3,4,4}/{2,2,2,6}");
                  c.require(lib_secs < 1.0, "library solve exceeded 1 s");

                  const auto run = harness::run_command(harness::cli() + " solve --variant original");
                  c.require(run.exit_code == 0, "CLI solve exited nonzero");
                  c.require(run.out.find("bus 12: VALID, product = 48") != std::string::npos,
                            "CLI report does not announce bus 12 with product 48");
                  std::ostringstream note;
                  note.precision(2);
                  note << std::fixed << "solve in " << lib_secs << " s";
                  c.note = note.str();
              });

    criterion(2, "original puzzle: buses 1-11 carry no ambiguity class, < 1 s total",
              [](Checker& c) {
                  Timer t;
                  for (int bus = 1; bus <= 11; ++bus) {
                      const auto analysis = wizards::analyze_bus(bus, kOriginal);
                      c.require(analysis.classes.empty(),
                                "bus " + std::to_string(bus) + " unexpectedly has a class");
                  }
                  c.require(t.seconds() < 1.0, "buses 1-11 took 1 s or more");
              });

    criterion(3, "original puzzle, bus 13: ambiguous ages exactly {36, 48} with the two "
                 "known classes",
              [](Checker& c) {
                  const auto analysis = wizards::analyze_bus(13, kOriginal);
                  c.require(analysis.ambiguous_targets == std::vector<Natural>{36, 48},
                            "ambiguous ages are not {36, 48}");
                  const auto* at36 = find_class(analysis, {36, 3});
                  c.require(at36 != nullptr &&
                                at36->members == std::vector<Partition>{Partition({1, 6, 6}),
                                                                        Partition({2, 2, 9})},
                            "class at age 36 is not {1,6,6}/{2,2,9}");
                  const auto* at48 = find_class(analysis, {48, 5});
                  c.require(at48 != nullptr &&
                                at48->members ==
                                    std::vector<Partition>{Partition({1, 1, 3, 4, 4}),
                                                           Partition({1, 2, 2, 2, 6})},
                            "class at age 48 is not {1,1,3,4,4}/{1,2,2,2,6}");
              });

    criterion(4, "three-children mode: bus 13 gives ages {36}; bus 14 gives {40, 72} with "
                 "the two known classes",
              [](Checker& c) {
                  const auto bus13 = wizards::analyze_bus(13, kOriginalC3);
                  c.require(bus13.ambiguous_targets == std::vector<Natural>{36},
                            "bus 13 ages are not exactly {36}");
                  const auto bus14 = wizards::analyze_bus(14, kOriginalC3);
                  c.require(bus14.ambiguous_targets == std::vector<Natural>{40, 72},
                            "bus 14 ages are not {40, 72}");
                  const auto* at40 = find_class(bus14, {40, 3});
                  c.require(at40 != nullptr &&
                                at40->members == std::vector<Partition>{Partition({1, 5, 8}),
                                                                        Partition({2, 2, 10})},
                            "class at age 40 is not {1,5,8}/{2,2,10}");
                  const auto* at72 = find_class(bus14, {72, 3});
                  c.require(at72 != nullptr &&
                                at72->members == std::vector<Partition>{Partition({2, 6, 6}),
                                                                        Partition({3, 3, 8})},
                            "class at age 72 is not {2,6,6}/{3,3,8}");
              });

    criterion(5, "original puzzle, bus 21: ambiguous ages include 96 and 240 with their "
                 "witness pairs",
              [](Checker& c) {
                  const auto analysis = wizards::analyze_bus(21, kOriginal);
                  const auto& targets = analysis.ambiguous_targets;
                  c.require(std::find(targets.begin(), targets.end(), Natural(96)) !=
                                targets.end(),
                            "96 is not an ambiguous age at bus 21");
                  c.require(std::find(targets.begin(), targets.end(), Natural(240)) !=
                                targets.end(),
                            "240 is not an ambiguous age at bus 21");
                  const auto* at96 = find_class(analysis, {96, 3});
                  c.require(at96 != nullptr &&
                                at96->members == std::vector<Partition>{Partition({1, 8, 12}),
                                                                        Partition({2, 3, 16})},
                            "class at age 96 is not {1,8,12}/{2,3,16}");
                  const auto* at240 = find_class(analysis, {240, 3});
                  c.require(at240 != nullptr &&
                                at240->members == std::vector<Partition>{Partition({3, 8, 10}),
                                                                         Partition({4, 5, 12})},
                            "class at age 240 is not {3,8,10}/{4,5,12}");
              });

    criterion(6, "generalized puzzle: bus 26, age 3456, key (3456, 7, 124); certified stop "
                 "at 27 with the 2560 coincidence, < 30 s",
              [](Checker& c) {
                  Timer t;
                  const auto outcome = wizards::solve(kGeneralized, 200);
                  c.require(outcome.valid_buses == std::vector<int>{26},
                            "valid buses are not exactly {26}");
                  c.require(outcome.termination ==
                                wizards::Termination{wizards::Termination::Kind::Certified, 27},
                            "termination is not Certified(27)");
                  const auto& bus26 = outcome.analysis_for(26);
                  c.require(bus26.ambiguous_targets == std::vector<Natural>{3456},
                            "deduced age is not 3456");
                  const auto* cls = find_class(bus26, {3456, 7, 124});
                  c.require(cls != nullptr &&
                                cls->members ==
                                    std::vector<Partition>{Partition({1, 3, 3, 3, 4, 4, 8}),
                                                           Partition({2, 2, 2, 2, 6, 6, 6})},
                            "bus 26 class is not {1,3,3,3,4,4,8}/{2,2,2,2,6,6,6} at "
                            "(3456, 7, 124)");

                  const auto bus27 = wizards::analyze_bus(27, kGeneralized);
                  const auto& targets = bus27.ambiguous_targets;
                  c.require(std::find(targets.begin(), targets.end(), Natural(3456)) !=
                                    targets.end() &&
                                std::find(targets.begin(), targets.end(), Natural(2560)) !=
                                    targets.end(),
                            "bus 27 ambiguous ages do not include 3456 and 2560");
                  const auto* at2560 = find_class(bus27, {2560, 6, 165});
                  c.require(at2560 != nullptr &&
                                at2560->members ==
                                    std::vector<Partition>{Partition({1, 4, 4, 4, 4, 10}),
                                                           Partition({2, 2, 2, 5, 8, 8})},
                            "bus 27 class at (2560, 6, 165) is not "
                            "{1,4,4,4,4,10}/{2,2,2,5,8,8}");
                  const double secs = t.seconds();
                  c.require(secs < 30.0, "generalized solve exceeded 30 s");

                  const auto run =
                      harness::run_command(harness::cli() + " solve --variant generalized");
                  c.require(run.exit_code == 0, "CLI solve exited nonzero");
                  c.require(run.out.find("bus 26: VALID, product = 3456") != std::string::npos,
                            "CLI report does not announce bus 26 with product 3456");
                  std::ostringstream note;
                  note.precision(2);
                  note << std::fixed << "solve in " << secs << " s";
                  c.note = note.str();
              });

    criterion(7, "generalized puzzle: buses 1-24 carry no class; bus 25 status computed "
                 "and checked against the quadratic oracle",
              [](Checker& c) {
                  for (int bus = 1; bus <= 24; ++bus)
                      c.require(wizards::analyze_bus(bus, kGeneralized).classes.empty(),
                                "bus " + std::to_string(bus) + " unexpectedly has a class");
                  const auto bus25 = wizards::analyze_bus(25, kGeneralized);
                  const auto expected = oracle::analyze(25, key_spellings(kGeneralized), 0);
                  c.require(bus25.classes.size() == expected.classes.size(),
                            "bus 25 class count disagrees with the oracle");
                  c.require(bus25.classes.empty(),
                            "bus 25 was frozen as class-free before the engine was built");
                  c.require(bus25.partition_total == 1958,
                            "bus 25 admissible partition count is not 1958");
                  c.note = "bus 25: zero ambiguity classes over " +
                           std::to_string(bus25.partition_total) + " partitions";
              });

    criterion(8, "simplified puzzle: solve matches the brute-force oracle (bus 4, count 2, "
                 "class {1,3}/{2,2}, certified stop at 5) and lists the candidate ages",
              [](Checker& c) {
                  int oracle_valid = 0, oracle_stop = 0;
                  std::vector<oracle::Parts> oracle_members;
                  oracle::Int oracle_count = 0;
                  for (int bus = 1; bus <= 20 && !oracle_stop; ++bus) {
                      const auto o = oracle::analyze(bus, {"count"}, 0);
                      if (o.ambiguous_targets.size() == 1 && !oracle_valid) {
                          oracle_valid = bus;
                          oracle_count = o.ambiguous_targets[0];
                          oracle_members = o.classes[0].members;
                      }
                      if (o.ambiguous_targets.size() >= 2) oracle_stop = bus;
                  }
                  c.require(oracle_valid == 4 && oracle_stop == 5 && oracle_count == 2,
                            "hand derivation (bus 4, count 2, stop 5) no longer matches the "
                            "oracle");

                  const auto outcome = wizards::solve(kSimplified, 200);
                  c.require(outcome.valid_buses == std::vector<int>{oracle_valid},
                            "valid buses differ from the oracle");
                  c.require(outcome.termination.bound == oracle_stop,
                            "certified stop differs from the oracle");
                  const auto& bus4 = outcome.analysis_for(4);
                  c.require(bus4.ambiguous_targets == std::vector<Natural>{2},
                            "deduced count is not 2");
                  c.require(bus4.classes.size() == 1 &&
                                bus4.classes[0].members ==
                                    std::vector<Partition>{Partition({1, 3}), Partition({2, 2})},
                            "bus 4 class is not {1,3}/{2,2}");

                  const auto run =
                      harness::run_command(harness::cli() + " solve --variant simplified");
                  c.require(run.exit_code == 0, "CLI solve exited nonzero");
                  c.require(run.out.find("candidate wizard ages: 3, 4") != std::string::npos,
                            "report does not list both candidate ages 3 and 4");
              });

    criterion(9, "monotonicity: ambiguous target sets never shrink for b in [1, 30] across "
                 "original, simplified, generalized; append-one witnesses valid, < 10 s",
              [](Checker& c) {
                  Timer t;
                  for (const auto* variant : {&kOriginal, &kSimplified, &kGeneralized}) {
                      std::vector<std::size_t> sizes;
                      for (int bus = 1; bus <= 31; ++bus)
                          sizes.push_back(
                              wizards::analyze_bus(bus, *variant).ambiguous_targets.size());
                      for (int bus = 1; bus <= 30; ++bus)
                          c.require(sizes[bus - 1] <= sizes[bus],
                                    "variant " + variant->name + ": target count shrinks from "
                                        "bus " + std::to_string(bus));
                      for (int bus = 1; bus <= 30; ++bus) {
                          if (sizes[bus - 1] == 0) continue;
                          const auto report =
                              wizards::verify_append_one_monotonicity(bus, *variant);
                          c.require(report.valid,
                                    "variant " + variant->name + ", bus " +
                                        std::to_string(bus) + ": witness verification failed");
                      }
                  }
                  const double secs = t.seconds();
                  c.require(secs < 10.0, "monotonicity suite exceeded 10 s");
                  std::ostringstream note;
                  note.precision(2);
                  note << std::fixed << "3 variants x 30 buses in " << secs << " s";
                  c.note = note.str();
              });

    criterion(10, "enumeration counts match the pentagonal-number recurrence for n <= 40 "
                  "(p(5)=7, p(12)=77, p(20)=627)",
              [](Checker& c) {
                  c.require(wizards::count_partitions(5) == 7, "p(5) != 7");
                  c.require(wizards::count_partitions(12) == 77, "p(12) != 77");
                  c.require(wizards::count_partitions(20) == 627, "p(20) != 627");
                  for (int n = 1; n <= 40; ++n) {
                      Natural streamed = 0;
                      wizards::enumerate_partitions({.sum = n}, [&](const Partition&) {
                          ++streamed;
                          return true;
                      });
                      c.require(streamed == wizards::count_partitions(n),
                                "enumerated count differs from the recurrence at n = " +
                                    std::to_string(n));
                  }
              });

    criterion(11, "engine classes equal the quadratic pairwise oracle for b <= 15 on "
                  "original and generalized",
              [](Checker& c) {
                  for (int bus = 1; bus <= 15; ++bus) {
                      classes_match_oracle(c, kOriginal, bus, 0, 0);
                      classes_match_oracle(c, kGeneralized, bus, 0, 0);
                  }
              });

    criterion(12, "determinism: generalized solve JSON is byte-identical across parallelism "
                  "1, 4, and 8",
              [](Checker& c) {
                  const std::string base =
                      harness::cli() + " solve --variant generalized --format json --jobs ";
                  const auto sequential = harness::run_command(base + "1");
                  c.require(sequential.exit_code == 0, "sequential solve exited nonzero");
                  for (const char* jobs : {"4", "8"}) {
                      const auto parallel = harness::run_command(base + jobs);
                      c.require(parallel.exit_code == 0,
                                std::string("solve with --jobs ") + jobs + " exited nonzero");
                      c.require(parallel.out == sequential.out,
                                std::string("output with --jobs ") + jobs +
                                    " differs from --jobs 1");
                  }
              });

    criterion(13, "cubes conjecture scan to bus 40: per-bus counts, resumable from cache "
                  "with byte-identical output, < 10 min",
              [](Checker& c) {
                  Timer t;
                  const auto dir = harness::scratch_dir("acceptance_cubes");
                  const std::string cache = (dir / "cubes.cache").string();
                  const std::string base = harness::cli() + " scan --variant cubes --format csv";

                  const auto cold = harness::run_command(base + " --max-bus 40");
                  const auto rows = lines_of(cold.out);
                  c.require(rows.size() == 41, "expected a header plus 40 per-bus rows");
                  for (std::size_t i = 1; i < rows.size(); ++i)
                      c.require(rows[i].rfind(std::to_string(i) + ",", 0) == 0,
                                "row " + std::to_string(i) + " does not start with its bus");

                  const auto partial =
                      harness::run_command(base + " --max-bus 25 --cache " + cache);
                  c.require(partial.exit_code == 2,
                            "partial scan should be inconclusive (exit 2)");
                  const auto resumed =
                      harness::run_command(base + " --max-bus 40 --cache " + cache);
                  c.require(resumed.out == cold.out,
                            "resumed scan output differs from the cold scan");
                  c.require(resumed.exit_code == cold.exit_code,
                            "resumed scan exit code differs from the cold scan");
                  c.require(cold.exit_code == 2,
                            "scan to 40 found an ambiguity class; the conjecture status "
                            "changed");
                  const double secs = t.seconds();
                  c.require(secs < 600.0, "cubes scan exceeded 10 minutes");
                  std::filesystem::remove_all(dir);
                  std::ostringstream note;
                  note.precision(2);
                  note << std::fixed << "no ambiguity through bus 40; scans in " << secs
                       << " s";
                  c.note = note.str();
              });

    std::printf("\n%d/13 criteria passed\n", 13 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
