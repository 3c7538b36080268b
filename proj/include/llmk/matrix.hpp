#pragma once

// Semiring-valued matrices over finite index sets and the combinators of a
// symmetric monoidal closed Markov category built from them.
//
// A matrix f : X -> Y has one row per point of X and one column per point of
// Y. Composition is diagrammatic: compose(f, g) = f ; g.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "llmk/finset.hpp"
#include "llmk/rational.hpp"

namespace llmk {

/// prob: nonnegative rationals with + and *.
/// bool: {0, 1} with saturating + and *; realises relations.
enum class Semiring { Prob, Bool };

const char* to_string(Semiring s);

Rational semiring_add(Semiring s, const Rational& a, const Rational& b);
Rational semiring_mul(Semiring s, const Rational& a, const Rational& b);
inline Rational semiring_zero() { return 0; }
inline Rational semiring_one() { return 1; }

/// Thrown when combinator arguments have non-conforming index sets.
class DimensionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(FinSet rows, FinSet cols, Semiring semiring = Semiring::Prob);

  [[nodiscard]] const FinSet& rows() const { return rows_; }
  [[nodiscard]] const FinSet& cols() const { return cols_; }
  [[nodiscard]] Semiring semiring() const { return semiring_; }

  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_.size() + j];
  }
  /// Sets an entry. Negative values are rejected; in the bool semiring any
  /// positive value is stored as 1.
  void set(std::size_t i, std::size_t j, const Rational& v);

  [[nodiscard]] Rational row_sum(std::size_t i) const;
  [[nodiscard]] bool is_row_stochastic() const;
  [[nodiscard]] bool is_zero() const;

  /// Same entries over new index sets of the same sizes.
  [[nodiscard]] Matrix relabeled(FinSet rows, FinSet cols) const;
  /// Entries reinterpreted in another semiring (support when going to bool).
  [[nodiscard]] Matrix in_semiring(Semiring s) const;

  /// Row vector times matrix: (v f)_b = sum_a v_a f(a, b).
  [[nodiscard]] std::vector<Rational> apply(const std::vector<Rational>& v) const;

  /// Labels and entries agree.
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  FinSet rows_;
  FinSet cols_;
  Semiring semiring_ = Semiring::Prob;
  std::vector<Rational> data_;
};

/// Entry-wise equality ignoring labels; sizes must match.
bool same_entries(const Matrix& a, const Matrix& b);

/// First (row, col) where two same-shaped matrices differ, if any.
struct Difference {
  std::size_t row;
  std::size_t col;
};
bool first_difference(const Matrix& a, const Matrix& b, Difference& out);

Matrix identity(const FinSet& x, Semiring s = Semiring::Prob);
Matrix compose(const Matrix& f, const Matrix& g);
Matrix tensor(const Matrix& f, const Matrix& g, std::size_t max_index = kDefaultMaxIndex);

/// X x Y -> Y x X.
Matrix braid(const FinSet& x, const FinSet& y, Semiring s = Semiring::Prob);
/// X -> X x X, the diagonal.
Matrix copy(const FinSet& x, Semiring s = Semiring::Prob);
/// X -> 1.
Matrix discard(const FinSet& x, Semiring s = Semiring::Prob);

/// fork(f, g) = copy ; (f x g), computed without the intermediate square.
Matrix fork(const Matrix& f, const Matrix& g, std::size_t max_index = kDefaultMaxIndex);

/// factors[0] x ... x factors[n-1] -> factors[k]: the tensor of discards with
/// an identity in slot k, computed directly.
Matrix projection(const std::vector<FinSet>& factors, std::size_t k,
                  Semiring s = Semiring::Prob, std::size_t max_index = kDefaultMaxIndex);

/// (X x Y) x Z -> X x (Y x Z) and the unitors, moving entries by label.
Matrix associator(const FinSet& x, const FinSet& y, const FinSet& z,
                  Semiring s = Semiring::Prob);
Matrix left_unitor(const FinSet& x, Semiring s = Semiring::Prob);   // 1 x X -> X
Matrix right_unitor(const FinSet& x, Semiring s = Semiring::Prob);  // X x 1 -> X

/// Currying: for f : X x Y -> Z, cur(f) : X -> Y -o Z where |Y -o Z| = Y x Z.
Matrix cur(const Matrix& f, const FinSet& x, const FinSet& y, const FinSet& z);
/// Evaluation (Y -o Z) x Y -> Z.
Matrix ev(const FinSet& y, const FinSet& z, Semiring s = Semiring::Prob);

/// Reorders a flat product. Rows enumerate factors[0] x ... x factors[n-1];
/// column k of the result carries factor order[k].
Matrix exchange(const std::vector<FinSet>& factors, const std::vector<std::size_t>& order,
                Semiring s = Semiring::Prob, std::size_t max_index = kDefaultMaxIndex);

/// A bijection that is the identity on indices between two sets of equal size.
Matrix index_bijection(const FinSet& from, const FinSet& to, Semiring s = Semiring::Prob);

}  // namespace llmk
