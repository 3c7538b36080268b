#pragma once

// Executable equational laws of the calculus and its models, checked exactly
// on generated or exhaustively enumerated instances.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "llmk/syntax.hpp"

namespace llmk {

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 10;
  /// Instances per generated law. Exhaustive laws run their full case list
  /// unless this is zero.
  std::size_t instances = 200;
  /// Test hook: builds copy on a product without the middle braid.
  bool mutate_drop_braid = false;
};

struct LawResult {
  std::string name;
  std::string anchor;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Pretty-printed counterexamples, at most a few per law.
  std::vector<std::string> counterexamples;

  [[nodiscard]] bool pass() const { return failures == 0; }
  [[nodiscard]] bool vacuous() const { return instances == 0; }
};

struct LawReport {
  std::vector<LawResult> laws;
  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const LawResult* find(const std::string& name) const;
};

struct LawInfo {
  std::string name;
  std::string anchor;
  std::string summary;
};

/// Every law in report order.
const std::vector<LawInfo>& law_catalog();

/// Runs one law by name. Throws std::invalid_argument for an unknown name.
LawResult run_law(const std::string& name, const GenConfig& config);

/// Runs the named laws, or all of them when `only` is empty.
LawReport run_laws(const GenConfig& config, const std::vector<std::string>& only = {});

/// `LAW <name> <anchor> <pass|fail> <instances>` lines with indented
/// counterexample blocks.
std::string format_report(const LawReport& report);

/// `key=value` lines for machines: law.<name>.{anchor,status,instances,
/// failures,vacuous} and a final all_pass.
std::string format_report_kv(const LawReport& report);

/// Greedy shrinking: repeatedly replaces a subterm by one of its own
/// subterms (or a sample body by a sub-body) while `still_fails` holds. The
/// predicate is responsible for rejecting ill-typed candidates.
LlTermPtr shrink_ll(const LlTermPtr& term, const std::function<bool(const LlTermPtr&)>& still_fails,
                    int max_rounds = 64);

}  // namespace llmk
