#pragma once

// Seeded, type-directed generation of well-typed MK and LL terms.
//
// LL contexts are split explicitly before descending into multiplicative
// nodes. Context entries and generated intermediate types are drawn from a
// pool in which every type can be both consumed and produced:
//   P ::= M t | P (*) P | P -o P
// so any context over P can be absorbed by any target in P. The unit type is
// only ever requested with an empty context.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "llmk/program.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bases Bool = {tt, ff} and Three = {a, b, c} with a small kernel pool.
const Program& law_pool();

class Generator {
 public:
  /// `max_size` bounds the construction budget of each generated term.
  Generator(const Program& pool, std::uint64_t seed, std::size_t max_size = 10);

  MkTermPtr gen_mk(const MkContext& ctx, const MkTypePtr& type);
  LlTermPtr gen_ll(const LlContext& ctx, const LlTypePtr& type);

  /// Regenerates until term_size(t) <= limit. Throws GenerationError after
  /// `attempts` failures.
  LlTermPtr gen_ll_within(const LlContext& ctx, const LlTypePtr& type, std::size_t limit,
                          int attempts = 64);

  /// A small MK type with at most four points.
  MkTypePtr random_mk_type();
  /// A type from the pool P, at most `depth` connectives deep.
  LlTypePtr random_pool_type(int depth = 2);

  /// Uniform in [0, n).
  std::size_t below(std::size_t n);
  bool chance(int num, int den);

  /// A variable name not produced before by this generator.
  Var fresh(const std::string& prefix = "v");

  void set_max_size(std::size_t n) { max_size_ = n; }
  [[nodiscard]] std::size_t max_size() const { return max_size_; }

 private:
  using MkEntries = std::vector<std::pair<Var, MkTypePtr>>;
  using LlEntries = std::vector<std::pair<Var, LlTypePtr>>;

  MkTermPtr mk(const MkEntries& ctx, const MkTypePtr& type, int budget);
  MkTermPtr mk_finish(const MkEntries& ctx, const MkTypePtr& type);
  LlTermPtr ll(const LlEntries& ctx, const LlTypePtr& type, int budget);
  LlTermPtr ll_finish(const LlEntries& ctx, const LlTypePtr& type);
  LlTermPtr ll_sample(const LlEntries& ctx, const MkTypePtr& result, int budget, bool minimal);
  LlTermPtr eliminate(const LlEntries& ctx, std::size_t slot, const LlTypePtr& type,
                      int budget);
  std::pair<LlEntries, LlEntries> split(const LlEntries& ctx);

  const Program& pool_;
  Signature sig_;
  std::mt19937_64 rng_;
  std::size_t max_size_;
  std::size_t counter_ = 0;
};

}  // namespace llmk
