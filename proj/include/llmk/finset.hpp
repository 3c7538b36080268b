#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "llmk/syntax.hpp"

namespace llmk {

/// Raised when an index set would exceed the configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxIndex = 4096;

/// A finite, ordered index set. Point labels are distinct and printable; the
/// position of a label is its index in every matrix built over the set.
///
/// Canonical enumeration:
///   unit      -> ["()"]
///   base B    -> the labels of B in declaration order
///   A x B     -> lexicographic: (a0,b0), (a0,b1), ..., (a1,b0), ...
/// Index of (i, j) in A x B is i * |B| + j.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> labels);

  static FinSet singleton();
  static FinSet product(const FinSet& a, const FinSet& b,
                        std::size_t max_index = kDefaultMaxIndex);
  /// Flat product in the given order; the empty product is the singleton.
  static FinSet product(const std::vector<FinSet>& factors,
                        std::size_t max_index = kDefaultMaxIndex);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const;

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
};

using BaseTable = std::map<std::string, std::vector<std::string>>;

/// Canonical enumeration of an MK type's points. Throws std::out_of_range
/// for an undeclared base.
FinSet points(const MkTypePtr& type, const BaseTable& bases,
              std::size_t max_index = kDefaultMaxIndex);

/// Index set of an LL type: |1| = {()}, |M t| = points(t), and both
/// |A -o B| and |A (*) B| are |A| x |B|.
FinSet web_index(const LlTypePtr& type, const BaseTable& bases,
                 std::size_t max_index = kDefaultMaxIndex);

}  // namespace llmk
