#include <doctest.h>

#include <random>

#include "llmk/matrix.hpp"

using namespace llmk;

namespace {

FinSet set_of(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return FinSet(labels);
}

// Row-stochastic with small denominators, or arbitrary nonnegative.
Matrix random_matrix(std::mt19937_64& rng, const FinSet& rows, const FinSet& cols,
                     bool stochastic, Semiring s = Semiring::Prob) {
  Matrix m(rows, cols, s);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<unsigned> w(cols.size());
    unsigned total = 0;
    for (auto& x : w) total += (x = static_cast<unsigned>(rng() % 4));
    if (stochastic && total == 0 && !w.empty()) total = w[0] = 1;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Rational den = stochastic ? Rational(total) : Rational(1 + rng() % 3);
      m.set(i, j, Rational(w[j]) / den);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("semiring arithmetic") {
  CHECK(semiring_add(Semiring::Prob, Rational(1, 2), Rational(1, 3)) == Rational(5, 6));
  CHECK(semiring_add(Semiring::Bool, 1, 1) == 1);
  CHECK(semiring_mul(Semiring::Bool, 1, 0) == 0);
  CHECK(semiring_mul(Semiring::Prob, Rational(2, 3), Rational(3, 4)) == Rational(1, 2));
}

TEST_CASE("entries") {
  Matrix m(set_of(1, "a"), set_of(2, "b"));
  CHECK_THROWS(m.set(0, 0, Rational(-1)));
  m.set(0, 1, Rational(1, 2));
  CHECK(m.row_sum(0) == Rational(1, 2));
  CHECK_FALSE(m.is_row_stochastic());
  Matrix b = m.in_semiring(Semiring::Bool);
  CHECK(b.at(0, 1) == 1);
  CHECK(b.at(0, 0) == 0);
}

TEST_CASE("category laws on random matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    FinSet a = set_of(1 + rng() % 3, "a"), b = set_of(1 + rng() % 3, "b");
    FinSet c = set_of(1 + rng() % 3, "c"), d = set_of(1 + rng() % 3, "d");
    Matrix f = random_matrix(rng, a, b, trial % 2 == 0);
    Matrix g = random_matrix(rng, b, c, trial % 2 == 0);
    Matrix h = random_matrix(rng, c, d, trial % 2 == 0);
    CHECK(compose(identity(a), f) == f);
    CHECK(compose(f, identity(b)) == f);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));

    Matrix k = random_matrix(rng, d, a, true);
    Matrix l = random_matrix(rng, a, c, false);
    CHECK(compose(tensor(f, k), tensor(g, l)) == tensor(compose(f, g), compose(k, l)));
    if (trial % 2 == 0) CHECK(compose(f, g).is_row_stochastic());
  }
}

TEST_CASE("copy, discard and fork") {
  FinSet bool_set({"tt", "ff"});
  Matrix c = copy(bool_set);
  CHECK(c.rows().size() == 2);
  CHECK(c.cols().size() == 4);
  CHECK(c.at(0, *c.cols().index_of("(tt,tt)")) == 1);
  CHECK(c.at(1, *c.cols().index_of("(ff,ff)")) == 1);
  CHECK(c.row_sum(0) == 1);
  CHECK(discard(bool_set).cols() == FinSet::singleton());

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    FinSet x = set_of(1 + rng() % 3, "x");
    Matrix f = random_matrix(rng, x, set_of(1 + rng() % 3, "y"), true);
    Matrix g = random_matrix(rng, x, set_of(1 + rng() % 3, "z"), true);
    CHECK(fork(f, g) == compose(copy(x), tensor(f, g)));
  }
}

TEST_CASE("projection is a tensor of discards around an identity") {
  std::vector<FinSet> factors{set_of(2, "a"), set_of(3, "b"), set_of(2, "c")};
  Matrix left = tensor(tensor(discard(factors[0]), identity(factors[1])), discard(factors[2]));
  Matrix via_unitors =
      compose(compose(left, right_unitor(FinSet::product(FinSet::singleton(), factors[1]))),
              left_unitor(factors[1]));
  Matrix direct = projection(factors, 1);
  CHECK(same_entries(direct, via_unitors));
  CHECK(direct.cols() == factors[1]);
  CHECK(direct.rows() == FinSet::product(factors));
  CHECK(projection({factors[0]}, 0) == identity(factors[0]));
}

TEST_CASE("currying") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    FinSet x = set_of(1 + rng() % 2, "x"), y = set_of(1 + rng() % 3, "y"), z = set_of(1 + rng() % 3, "z");
    Matrix f = random_matrix(rng, FinSet::product(x, y), z, trial % 2 == 0);
    Matrix lhs = compose(tensor(cur(f, x, y, z), identity(y)), ev(y, z));
    CHECK(same_entries(lhs, f));
  }
  FinSet b({"tt", "ff"});
  Matrix named = cur(left_unitor(b), FinSet::singleton(), b, b);
  CHECK(named.rows().size() == 1);
  CHECK(named.at(0, 0) == 1);
  CHECK(named.at(0, 1) == 0);
  CHECK(named.at(0, 2) == 0);
  CHECK(named.at(0, 3) == 1);
}

TEST_CASE("symmetric monoidal structure") {
  FinSet x = set_of(2, "x"), y = set_of(3, "y"), z = set_of(2, "z");
  CHECK(compose(braid(x, y), braid(y, x)) == identity(FinSet::product(x, y)));
  Matrix a = associator(x, y, z);
  CHECK(a.rows() == FinSet::product(FinSet::product(x, y), z));
  CHECK(a.cols() == FinSet::product(x, FinSet::product(y, z)));
  CHECK(a.is_row_stochastic());
  CHECK(same_entries(a, identity(FinSet::product({x, y, z}))));
  // Hexagon: (X Y) Z -> X (Y Z) -> (Y Z) X -> Y (Z X)
  FinSet yz = FinSet::product(y, z);
  Matrix lhs = compose(compose(a, braid(x, yz)), associator(y, z, x));
  Matrix rhs = compose(compose(tensor(braid(x, y), identity(z)), associator(y, x, z)),
                       tensor(identity(y), braid(x, z)));
  CHECK(lhs == rhs);
}

TEST_CASE("exchange agrees with index arithmetic") {
  std::vector<FinSet> factors{set_of(2, "a"), set_of(3, "b"), set_of(2, "c")};
  std::vector<std::size_t> order{2, 0, 1};
  Matrix e = llmk::exchange(factors, order);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        std::size_t row = (i * 3 + j) * 2 + k;
        std::size_t col = (k * 2 + i) * 3 + j;
        CHECK(e.at(row, col) == 1);
        CHECK(e.row_sum(row) == 1);
      }
    }
  }
}

TEST_CASE("bool semiring composition is relational composition") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    FinSet a = set_of(1 + rng() % 3, "a"), b = set_of(1 + rng() % 3, "b"), c = set_of(1 + rng() % 3, "c");
    Matrix f = random_matrix(rng, a, b, false);
    Matrix g = random_matrix(rng, b, c, false);
    Matrix fb = f.in_semiring(Semiring::Bool), gb = g.in_semiring(Semiring::Bool);
    Matrix r = compose(fb, gb);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        bool related = false;
        for (std::size_t j = 0; j < b.size(); ++j) related |= fb.at(i, j) == 1 && gb.at(j, k) == 1;
        CHECK((r.at(i, k) == 1) == related);
      }
    }
    CHECK(r == compose(f, g).in_semiring(Semiring::Bool));
  }
}

TEST_CASE("errors") {
  FinSet x = set_of(2, "x"), y = set_of(3, "y");
  CHECK_THROWS_AS(compose(identity(x), identity(y)), DimensionError);
  CHECK_THROWS_AS(compose(identity(x), identity(x, Semiring::Bool)), DimensionError);
  FinSet big = set_of(64, "p");
  CHECK_THROWS_AS(tensor(identity(big), identity(big), 1000), ResourceError);
  Difference d{};
  Matrix a = identity(x), b = identity(x);
  CHECK_FALSE(first_difference(a, b, d));
  b.set(1, 0, 1);
  REQUIRE(first_difference(a, b, d));
  CHECK(d.row == 1);
  CHECK(d.col == 0);
}
