#pragma once

// Operational ground truth, independent of the matrix semantics: big-step
// evaluation that enumerates every primitive branch with its weight, and a
// seeded sampler.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "llmk/program.hpp"
#include "llmk/rational.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

inline constexpr std::size_t kDefaultBranchCap = 1'000'000;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcomes in canonical point order, weights positive, summing to one.
struct TraceDist {
  std::vector<std::pair<std::string, Rational>> outcomes;

  [[nodiscard]] Rational weight(const std::string& point) const;
  friend bool operator==(const TraceDist& a, const TraceDist& b) {
    return a.outcomes == b.outcomes;
  }
};

/// Draw counts in canonical point order; points never drawn are omitted.
struct Tally {
  std::size_t draws = 0;
  std::vector<std::pair<std::string, std::size_t>> counts;
};

/// Closed LL term of type M t, evaluated with the primitives of `program`.
TraceDist enumerate_term(const Program& program, const LlTermPtr& term,
                         std::size_t branch_cap = kDefaultBranchCap);
/// Closed MK term.
TraceDist enumerate_term(const Program& program, const MkTermPtr& term,
                         std::size_t branch_cap = kDefaultBranchCap);
/// A closed definition: LL of measure type, or MK without parameters.
TraceDist enumerate(const Program& program, const std::string& def_name,
                    std::size_t branch_cap = kDefaultBranchCap);

/// n independent runs driven by mt19937_64 seeded with `seed`.
Tally mc_sample_term(const Program& program, const LlTermPtr& term, std::uint64_t seed,
                     std::size_t n);
Tally mc_sample(const Program& program, const std::string& def_name, std::uint64_t seed,
                std::size_t n);

/// Total variation distance between exact weights and empirical frequencies.
Rational total_variation(const TraceDist& exact, const Tally& tally);

/// `point : p/q` lines.
std::string format_trace(const TraceDist& dist);
/// `point : count/draws` lines with reduced fractions.
std::string format_tally(const Tally& tally);

}  // namespace llmk
