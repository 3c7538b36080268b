#include "llmk/matrix.hpp"

namespace llmk {

const char* to_string(Semiring s) { return s == Semiring::Prob ? "prob" : "bool"; }

Rational semiring_add(Semiring s, const Rational& a, const Rational& b) {
  if (s == Semiring::Bool) return (sgn(a) > 0 || sgn(b) > 0) ? 1 : 0;
  return a + b;
}

Rational semiring_mul(Semiring s, const Rational& a, const Rational& b) {
  if (s == Semiring::Bool) return (sgn(a) > 0 && sgn(b) > 0) ? 1 : 0;
  return a * b;
}

Matrix::Matrix(FinSet rows, FinSet cols, Semiring semiring)
    : rows_(std::move(rows)), cols_(std::move(cols)), semiring_(semiring) {
  data_.assign(rows_.size() * cols_.size(), Rational(0));
}

void Matrix::set(std::size_t i, std::size_t j, const Rational& v) {
  if (sgn(v) < 0) throw std::invalid_argument("matrix entries must be nonnegative");
  auto& cell = data_.at(i * cols_.size() + j);
  if (semiring_ == Semiring::Bool) {
    cell = sgn(v) > 0 ? 1 : 0;
  } else {
    cell = v;
  }
}

Rational Matrix::row_sum(std::size_t i) const {
  Rational s = 0;
  for (std::size_t j = 0; j < cols_.size(); ++j) s = semiring_add(semiring_, s, at(i, j));
  return s;
}

bool Matrix::is_row_stochastic() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (row_sum(i) != 1) return false;
  }
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

Matrix Matrix::relabeled(FinSet rows, FinSet cols) const {
  if (rows.size() != rows_.size() || cols.size() != cols_.size()) {
    throw DimensionError("relabel changes the matrix shape");
  }
  Matrix out = *this;
  out.rows_ = std::move(rows);
  out.cols_ = std::move(cols);
  return out;
}

Matrix Matrix::in_semiring(Semiring s) const {
  Matrix out(rows_, cols_, s);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (s == Semiring::Bool) {
      out.data_[k] = sgn(data_[k]) > 0 ? 1 : 0;
    } else {
      out.data_[k] = data_[k];
    }
  }
  return out;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != rows_.size()) throw DimensionError("vector length does not match rows");
  std::vector<Rational> out(cols_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      const auto& e = at(i, j);
      if (sgn(e) == 0) continue;
      out[j] = semiring_add(semiring_, out[j], semiring_mul(semiring_, v[i], e));
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool same_entries(const Matrix& a, const Matrix& b) {
  if (a.rows().size() != b.rows().size() || a.cols().size() != b.cols().size()) return false;
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    for (std::size_t j = 0; j < a.cols().size(); ++j) {
      if (a.at(i, j) != b.at(i, j)) return false;
    }
  }
  return true;
}

bool first_difference(const Matrix& a, const Matrix& b, Difference& out) {
  if (a.rows().size() != b.rows().size() || a.cols().size() != b.cols().size()) {
    throw DimensionError("matrices have different shapes");
  }
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    for (std::size_t j = 0; j < a.cols().size(); ++j) {
      if (a.at(i, j) != b.at(i, j)) {
        out = {i, j};
        return true;
      }
    }
  }
  return false;
}

Matrix identity(const FinSet& x, Semiring s) {
  Matrix m(x, x, s);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(i, i, 1);
  return m;
}

Matrix compose(const Matrix& f, const Matrix& g) {
  if (f.cols().size() != g.rows().size()) {
    throw DimensionError("compose: " + std::to_string(f.cols().size()) + " columns vs " +
                         std::to_string(g.rows().size()) + " rows");
  }
  if (f.semiring() != g.semiring()) throw DimensionError("compose: semiring mismatch");
  const Semiring s = f.semiring();
  Matrix out(f.rows(), g.cols(), s);
  std::vector<Rational> acc(g.cols().size());
  for (std::size_t i = 0; i < f.rows().size(); ++i) {
    for (auto& a : acc) a = 0;
    for (std::size_t k = 0; k < f.cols().size(); ++k) {
      const auto& a = f.at(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < g.cols().size(); ++j) {
        const auto& b = g.at(k, j);
        if (sgn(b) == 0) continue;
        if (s == Semiring::Bool) {
          acc[j] = 1;
        } else {
          acc[j] += a * b;
        }
      }
    }
    for (std::size_t j = 0; j < acc.size(); ++j) {
      if (sgn(acc[j]) != 0) out.set(i, j, acc[j]);
    }
  }
  return out;
}

Matrix tensor(const Matrix& f, const Matrix& g, std::size_t max_index) {
  if (f.semiring() != g.semiring()) throw DimensionError("tensor: semiring mismatch");
  Matrix out(FinSet::product(f.rows(), g.rows(), max_index),
             FinSet::product(f.cols(), g.cols(), max_index), f.semiring());
  const std::size_t gr = g.rows().size();
  const std::size_t gc = g.cols().size();
  for (std::size_t i = 0; i < f.rows().size(); ++i) {
    for (std::size_t j = 0; j < f.cols().size(); ++j) {
      const auto& a = f.at(i, j);
      if (sgn(a) == 0) continue;
      for (std::size_t k = 0; k < gr; ++k) {
        for (std::size_t l = 0; l < gc; ++l) {
          const auto& b = g.at(k, l);
          if (sgn(b) == 0) continue;
          out.set(i * gr + k, j * gc + l, semiring_mul(f.semiring(), a, b));
        }
      }
    }
  }
  return out;
}

Matrix braid(const FinSet& x, const FinSet& y, Semiring s) {
  Matrix m(FinSet::product(x, y), FinSet::product(y, x), s);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m.set(i * y.size() + j, j * x.size() + i, 1);
  }
  return m;
}

Matrix copy(const FinSet& x, Semiring s) {
  Matrix m(x, FinSet::product(x, x), s);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(i, i * x.size() + i, 1);
  return m;
}

Matrix discard(const FinSet& x, Semiring s) {
  Matrix m(x, FinSet::singleton(), s);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(i, 0, 1);
  return m;
}

Matrix fork(const Matrix& f, const Matrix& g, std::size_t max_index) {
  if (f.rows().size() != g.rows().size()) throw DimensionError("fork: row sets differ");
  if (f.semiring() != g.semiring()) throw DimensionError("fork: semiring mismatch");
  Matrix out(f.rows(), FinSet::product(f.cols(), g.cols(), max_index), f.semiring());
  const std::size_t gc = g.cols().size();
  for (std::size_t i = 0; i < f.rows().size(); ++i) {
    for (std::size_t j = 0; j < f.cols().size(); ++j) {
      const auto& a = f.at(i, j);
      if (sgn(a) == 0) continue;
      for (std::size_t k = 0; k < gc; ++k) {
        const auto& b = g.at(i, k);
        if (sgn(b) != 0) out.set(i, j * gc + k, semiring_mul(f.semiring(), a, b));
      }
    }
  }
  return out;
}

Matrix projection(const std::vector<FinSet>& factors, std::size_t k, Semiring s,
                  std::size_t max_index) {
  FinSet from = FinSet::product(factors, max_index);
  const FinSet& to = factors.at(k);
  std::size_t stride = 1;
  for (std::size_t i = k + 1; i < factors.size(); ++i) stride *= factors[i].size();
  Matrix m(from, to, s);
  for (std::size_t r = 0; r < from.size(); ++r) m.set(r, (r / stride) % to.size(), 1);
  return m;
}

Matrix associator(const FinSet& x, const FinSet& y, const FinSet& z, Semiring s) {
  FinSet from = FinSet::product(FinSet::product(x, y), z);
  FinSet to = FinSet::product(x, FinSet::product(y, z));
  Matrix m(from, to, s);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      for (std::size_t k = 0; k < z.size(); ++k) {
        std::string a = x.label(i), b = y.label(j), c = z.label(k);
        auto r = from.index_of("((" + a + "," + b + ")," + c + ")");
        auto q = to.index_of("(" + a + ",(" + b + "," + c + "))");
        m.set(*r, *q, 1);
      }
    }
  }
  return m;
}

Matrix left_unitor(const FinSet& x, Semiring s) {
  FinSet from = FinSet::product(FinSet::singleton(), x);
  Matrix m(from, x, s);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(*from.index_of("((),"+ x.label(i) + ")"), i, 1);
  return m;
}

Matrix right_unitor(const FinSet& x, Semiring s) {
  FinSet from = FinSet::product(x, FinSet::singleton());
  Matrix m(from, x, s);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(*from.index_of("(" + x.label(i) + ",())"), i, 1);
  return m;
}

Matrix cur(const Matrix& f, const FinSet& x, const FinSet& y, const FinSet& z) {
  if (f.rows().size() != x.size() * y.size() || f.cols().size() != z.size()) {
    throw DimensionError("cur: matrix does not have shape X x Y -> Z");
  }
  Matrix out(x, FinSet::product(y, z), f.semiring());
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < y.size(); ++b) {
      for (std::size_t c = 0; c < z.size(); ++c) {
        const auto& e = f.at(a * y.size() + b, c);
        if (sgn(e) != 0) out.set(a, b * z.size() + c, e);
      }
    }
  }
  return out;
}

Matrix ev(const FinSet& y, const FinSet& z, Semiring s) {
  FinSet yz = FinSet::product(y, z);
  Matrix m(FinSet::product(yz, y), z, s);
  for (std::size_t b = 0; b < y.size(); ++b) {
    for (std::size_t c = 0; c < z.size(); ++c) {
      m.set((b * z.size() + c) * y.size() + b, c, 1);
    }
  }
  return m;
}

Matrix exchange(const std::vector<FinSet>& factors, const std::vector<std::size_t>& order,
                Semiring s, std::size_t max_index) {
  if (order.size() != factors.size()) throw DimensionError("exchange: order has wrong length");
  std::vector<FinSet> target;
  for (auto k : order) target.push_back(factors.at(k));
  FinSet from = FinSet::product(factors, max_index);
  FinSet to = FinSet::product(target, max_index);
  Matrix m(from, to, s);
  const std::size_t n = factors.size();
  std::vector<std::size_t> digits(n);
  for (std::size_t r = 0; r < from.size(); ++r) {
    std::size_t rest = r;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = rest % factors[k].size();
      rest /= factors[k].size();
    }
    std::size_t c = 0;
    for (std::size_t k = 0; k < n; ++k) c = c * target[k].size() + digits[order[k]];
    m.set(r, c, 1);
  }
  return m;
}

Matrix index_bijection(const FinSet& from, const FinSet& to, Semiring s) {
  if (from.size() != to.size()) throw DimensionError("index_bijection: sizes differ");
  Matrix m(from, to, s);
  for (std::size_t i = 0; i < from.size(); ++i) m.set(i, i, 1);
  return m;
}

}  // namespace llmk
