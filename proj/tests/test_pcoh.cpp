#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>

#include "llmk/denote.hpp"
#include "llmk/generate.hpp"
#include "llmk/parser.hpp"
#include "llmk/pcoh.hpp"

using namespace llmk;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

// Solves a square system exactly; nullopt when singular.
std::optional<Vec> solve(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Vertices of { x >= 0 : A x <= b } by trying every choice of d tight
// constraints among the rows of A and the coordinate hyperplanes.
std::vector<Vec> brute_vertices(const std::vector<Vec>& a, const Vec& b, std::size_t d) {
  std::vector<Vec> rows = a;
  Vec rhs = b;
  for (std::size_t i = 0; i < d; ++i) {
    Vec e(d, 0);
    e[i] = -1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  std::vector<Vec> out;
  std::vector<bool> pick(rows.size(), false);
  std::fill(pick.end() - static_cast<long>(d), pick.end(), true);
  do {
    std::vector<Vec> sa;
    Vec sb;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (pick[i]) {
        sa.push_back(rows[i]);
        sb.push_back(rhs[i]);
      }
    }
    auto x = solve(sa, sb);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < rows.size() && feasible; ++i) feasible = dot(rows[i], *x) <= rhs[i];
    if (feasible && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

Vec random_point(std::mt19937_64& rng, std::size_t d) {
  Vec v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(q(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)));
  return v;
}

BaseTable bases() {
  return {{"Bool", {"tt", "ff"}}, {"Three", {"a", "b", "c"}}};
}

Web meas(const std::string& t) { return web_meas(parse_mk_type(t), bases()); }

}  // namespace

TEST_CASE("simplex on small problems") {
  LpProblem p{{1, 1}, {{1, 2}, {3, 1}}, {4, 6}};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == q(14, 5));
  CHECK(r.solution == Vec{q(8, 5), q(6, 5)});

  CHECK(solve_lp({{1}, {{1}}, {-1}}).status == LpStatus::Infeasible);
  CHECK(solve_lp({{1}, {{-1}}, {1}}).status == LpStatus::Unbounded);

  LpResult cover = solve_lp({{-1, -1}, {{-1, -1}, {1, 0}, {0, 1}}, {-2, 3, 3}});
  REQUIRE(cover.status == LpStatus::Optimal);
  CHECK(cover.value == -2);

  // Degenerate: many constraints tight at the optimum.
  LpResult deg = solve_lp({{1, 1, 1}, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}}, {1, 1, 1, 1, 1}});
  REQUIRE(deg.status == LpStatus::Optimal);
  CHECK(deg.value == 1);
}

TEST_CASE("simplex agrees with vertex enumeration") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t d = 1 + rng() % 3;
    std::size_t m = 1 + rng() % 4;
    std::vector<Vec> a;
    Vec b;
    for (std::size_t i = 0; i < m; ++i) {
      Vec row;
      for (std::size_t j = 0; j < d; ++j) row.push_back(q(static_cast<long>(rng() % 5) - 1, 1 + static_cast<long>(rng() % 2)));
      a.push_back(row);
      b.push_back(q(static_cast<long>(rng() % 5) - 1));
    }
    // A box keeps the feasible region bounded.
    for (std::size_t j = 0; j < d; ++j) {
      Vec row(d, 0);
      row[j] = 1;
      a.push_back(row);
      b.push_back(3);
    }
    Vec c;
    for (std::size_t j = 0; j < d; ++j) c.push_back(q(static_cast<long>(rng() % 7) - 3));
    auto verts = brute_vertices(a, b, d);
    LpResult r = solve_lp({c, a, b});
    if (verts.empty()) {
      CHECK(r.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == LpStatus::Optimal);
    Rational best = dot(c, verts[0]);
    for (const auto& v : verts) best = std::max(best, dot(c, v));
    CHECK(r.value == best);
  }
}

TEST_CASE("polar on named examples") {
  auto bool_polar = polar(2, {{1, 0}, {0, 1}});
  CHECK(bool_polar.points == std::vector<Vec>{{1, 1}});
  CHECK(bool_polar.rays.empty());
  auto back = polar(2, {{1, 1}});
  CHECK(back.points == canonical_points({{1, 0}, {0, 1}}));
  CHECK(polar(1, {{1}}).points == std::vector<Vec>{{1}});
  CHECK(polar(2, {{2, 0}}).points == std::vector<Vec>{{q(1, 2), 0}});
  CHECK(polar(2, {{2, 0}}).rays == std::vector<Vec>{{0, 1}});
  CHECK_THROWS_AS(polar(7, {}), ResourceError);
}

TEST_CASE("polar agrees with brute-force vertex enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t d = 1 + rng() % 3;
    std::vector<Vec> s;
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) s.push_back(random_point(rng, d));
    bool covered = true;
    for (std::size_t j = 0; j < d; ++j) {
      covered = covered && std::any_of(s.begin(), s.end(), [&](const Vec& v) { return v[j] > 0; });
    }
    if (!covered) continue;
    Vec ones(s.size(), 1);
    auto expected = canonical_points(brute_vertices(s, ones, d));
    auto got = polar(d, s);
    CHECK(got.rays.empty());
    CHECK(got.points == expected);
  }
}

TEST_CASE("measure webs") {
  CHECK(meas("1").gens == std::vector<Vec>{{1}});
  CHECK(meas("1").polar_gens == std::vector<Vec>{{1}});
  Web b = meas("Bool");
  CHECK(canonical_points(b.gens) == canonical_points({{1, 0}, {0, 1}}));
  CHECK(b.polar_gens == std::vector<Vec>{{1, 1}});
  Web bb = meas("Bool * Bool");
  CHECK(bb.gens.size() == 4);
  CHECK(bb.polar_gens == std::vector<Vec>{{1, 1, 1, 1}});

  CHECK(member(b, {q(1, 2), q(1, 2)}));
  CHECK_FALSE(member(b, {1, 1}));
  CHECK(member(b, {0, 0}));
  CHECK(member(b, {q(1, 3), q(1, 3)}));
  CHECK_FALSE(member(b, {q(2, 3), q(1, 2)}));
  CHECK(check_bipolar_closed(b));
  CHECK(check_bipolar_closed(Web{b.index, {{2, 0}}, polar(2, {{2, 0}}).points, polar(2, {{2, 0}}).rays}));
}

TEST_CASE("tensor and lolli webs") {
  Web b = meas("Bool");
  Web t = web_tensor(b, b);
  CHECK(check_bipolar_closed(t));
  Web joint = meas("Bool * Bool");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Vec v;
    for (int k = 0; k < 4; ++k) v.push_back(q(static_cast<long>(rng() % 5), 4));
    CHECK(member(t, v) == member(joint, v));
    CHECK(member(t, v) == member_via_gens(t, v));
  }

  Web unit = meas("1");
  Web l = web_lolli(unit, b);
  for (int i = 0; i < 100; ++i) {
    Vec v{q(static_cast<long>(rng() % 5), 4), q(static_cast<long>(rng() % 5), 4)};
    CHECK(member(l, v) == (v[0] + v[1] <= 1));
  }

  Web three = meas("Three");
  Web tu = web_tensor(three, unit);
  for (int i = 0; i < 100; ++i) {
    Vec v{q(static_cast<long>(rng() % 4), 4), q(static_cast<long>(rng() % 4), 4), q(static_cast<long>(rng() % 4), 4)};
    CHECK(member(tu, v) == member(three, v));
  }

  // M Bool -o M Bool: exactly the substochastic 2x2 matrices, flattened.
  Web bl = web_lolli(b, b);
  CHECK(member(bl, {1, 0, 0, 1}));
  CHECK(member(bl, {q(1, 2), q(1, 2), 0, 1}));
  CHECK_FALSE(member(bl, {1, q(1, 4), 0, 0}));
}

TEST_CASE("morphisms") {
  Web b = meas("Bool");
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    Matrix f(FinSet({"tt", "ff"}), FinSet({"tt", "ff"}));
    for (std::size_t r = 0; r < 2; ++r) {
      Rational p = q(static_cast<long>(rng() % 5), 4);
      f.set(r, 0, p);
      f.set(r, 1, 1 - p);
    }
    CHECK(check_pcoh_morphism(f, b, b));
  }
  Matrix two(FinSet::singleton(), FinSet({"tt", "ff"}));
  two.set(0, 0, 1);
  two.set(0, 1, 1);
  CHECK_FALSE(check_pcoh_morphism(two, meas("1"), b));
}

TEST_CASE("kernel reification") {
  const Program& pool = law_pool();
  auto interp = Interpretation::from_program(pool);
  const PrimDecl* coin = pool.find_prim("coin");
  Matrix c = kernel_matrix(*coin, interp.bases);
  CHECK(reify_kernel(c, coin->dom, coin->cod, interp.bases) == c);

  Matrix half = c;
  half.set(0, 0, q(1, 4));
  half.set(0, 1, q(1, 4));
  CHECK_THROWS_AS(reify_kernel(half, coin->dom, coin->cod, interp.bases), NotAKernel);

  const PrimDecl* noisy = pool.find_prim("noisy");
  auto term = parse_ll_term("\\m:M Bool. sample m as x in noisy(x)", pool.signature());
  Matrix row = denote_ll(interp, {}, term);
  Matrix reshaped(FinSet({"tt", "ff"}), FinSet({"tt", "ff"}));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) reshaped.set(a, b, row.at(0, a * 2 + b));
  }
  CHECK(reify_kernel(reshaped, noisy->dom, noisy->cod, interp.bases) ==
        kernel_matrix(*noisy, interp.bases));
}

TEST_CASE("webs of LL types") {
  auto w = web_of_type(parse_ll_type("M Bool (*) M Bool"), bases());
  CHECK(w.index.size() == 4);
  CHECK(check_bipolar_closed(w));
  auto f = web_of_type(parse_ll_type("M Bool -o M Bool"), bases());
  CHECK(f.index.size() == 4);
  CHECK_THROWS_AS(web_of_type(parse_ll_type("M Three -o M Three"), bases()), ResourceError);
}
