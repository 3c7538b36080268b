#include "llmk/pcoh.hpp"

#include <algorithm>

namespace llmk {

namespace {

bool dominated_by(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Vec unit_vector(std::size_t dim, std::size_t i) {
  Vec v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// Scales a nonzero nonnegative vector so its largest coordinate is one.
Vec normalised(Vec v) {
  Rational m = 0;
  for (const auto& e : v) {
    if (e > m) m = e;
  }
  if (sgn(m) == 0) return v;
  for (auto& e : v) e /= m;
  return v;
}

struct Ray {
  Vec x;
  std::vector<bool> tight;  // constraints satisfied with equality
};

}  // namespace

std::vector<Vec> canonical_points(std::vector<Vec> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Vec> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j) {
      if (i != j && dominated_by(points[i], points[j])) drop = true;
    }
    if (!drop) out.push_back(points[i]);
  }
  return out;
}

GeneratorSet polar(std::size_t dim, const std::vector<Vec>& points, const std::vector<Vec>& rays,
                   std::size_t max_dim) {
  if (dim > max_dim) {
    throw ResourceError("vertex enumeration in dimension " + std::to_string(dim) +
                        " exceeds the cap of " + std::to_string(max_dim));
  }
  // Cone over (w, t): -x_j <= 0 for every coordinate, then <g, w> - t <= 0
  // for each point and <r, w> <= 0 for each ray.
  const std::size_t d = dim + 1;
  std::vector<Vec> constraints;
  for (std::size_t j = 0; j < d; ++j) {
    Vec a(d, Rational(0));
    a[j] = -1;
    constraints.push_back(a);
  }
  for (const auto& g : points) {
    if (g.size() != dim) throw std::invalid_argument("polar: generator has wrong dimension");
    Vec a = g;
    a.push_back(-1);
    constraints.push_back(a);
  }
  for (const auto& r : rays) {
    if (r.size() != dim) throw std::invalid_argument("polar: ray has wrong dimension");
    Vec a = r;
    a.push_back(0);
    constraints.push_back(a);
  }
  const std::size_t total = constraints.size();

  // The orthant is generated by the unit vectors.
  std::vector<Ray> cone;
  for (std::size_t j = 0; j < d; ++j) {
    Ray r{unit_vector(d, j), std::vector<bool>(total, false)};
    for (std::size_t i = 0; i < d; ++i) r.tight[i] = i != j;
    cone.push_back(std::move(r));
  }

  for (std::size_t c = d; c < total; ++c) {
    const Vec& a = constraints[c];
    std::vector<Rational> value;
    std::vector<std::size_t> plus, zero, minus;
    for (std::size_t k = 0; k < cone.size(); ++k) {
      value.push_back(dot(a, cone[k].x));
      int s = sgn(value.back());
      (s > 0 ? plus : s == 0 ? zero : minus).push_back(k);
    }
    if (plus.empty()) {
      for (auto k : zero) cone[k].tight[c] = true;
      continue;
    }
    std::vector<Ray> next;
    for (auto k : minus) next.push_back(cone[k]);
    for (auto k : zero) {
      next.push_back(cone[k]);
      next.back().tight[c] = true;
    }
    for (auto p : plus) {
      for (auto q : minus) {
        std::vector<bool> common(total, false);
        std::size_t count = 0;
        for (std::size_t i = 0; i < c; ++i) {
          common[i] = cone[p].tight[i] && cone[q].tight[i];
          count += common[i];
        }
        if (count + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < cone.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          bool covers = true;
          for (std::size_t i = 0; i < c && covers; ++i) {
            if (common[i] && !cone[k].tight[i]) covers = false;
          }
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        Vec x(d, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
          x[i] = value[p] * cone[q].x[i] - value[q] * cone[p].x[i];
        }
        common[c] = true;
        next.push_back({normalised(std::move(x)), std::move(common)});
      }
    }
    cone = std::move(next);
  }

  GeneratorSet out;
  for (const auto& r : cone) {
    const Rational& t = r.x[dim];
    Vec w(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(dim));
    if (sgn(t) > 0) {
      for (auto& e : w) e /= t;
      out.points.push_back(std::move(w));
    } else {
      out.rays.push_back(normalised(std::move(w)));
    }
  }
  out.points = canonical_points(std::move(out.points));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

Vec outer(const Vec& a, const Vec& b) {
  Vec out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

Web web_meas(const MkTypePtr& type, const BaseTable& bases, std::size_t max_index) {
  Web web;
  web.index = points(type, bases, max_index);
  const std::size_t n = web.index.size();
  for (std::size_t i = 0; i < n; ++i) web.gens.push_back(unit_vector(n, i));
  web.polar_gens.push_back(Vec(n, Rational(1)));
  return web;
}

Web web_tensor(const Web& x, const Web& y, std::size_t max_dim) {
  Web web;
  web.index = FinSet::product(x.index, y.index);
  for (const auto& g : x.gens) {
    for (const auto& h : y.gens) web.gens.push_back(outer(g, h));
  }
  web.gens = canonical_points(std::move(web.gens));
  auto p = polar(web.index.size(), web.gens, {}, max_dim);
  web.polar_gens = std::move(p.points);
  web.polar_rays = std::move(p.rays);
  return web;
}

Web web_lolli(const Web& x, const Web& y, std::size_t max_dim) {
  Web web;
  web.index = FinSet::product(x.index, y.index);
  std::vector<Vec> pairing;
  for (const auto& g : x.gens) {
    for (const auto& h : y.polar_gens) pairing.push_back(outer(g, h));
  }
  pairing = canonical_points(std::move(pairing));
  auto p = polar(web.index.size(), pairing, {}, max_dim);
  web.gens = std::move(p.points);
  // The polar of a polar is the closure of the pairing set itself.
  web.polar_gens = std::move(pairing);
  return web;
}

Web web_of_type(const LlTypePtr& type, const BaseTable& bases, std::size_t max_dim) {
  switch (type->kind) {
    case LlType::Kind::Unit: return web_meas(MkType::unit(), bases);
    case LlType::Kind::Meas: return web_meas(type->inner, bases);
    case LlType::Kind::Tensor:
      return web_tensor(web_of_type(type->left, bases, max_dim),
                        web_of_type(type->right, bases, max_dim), max_dim);
    case LlType::Kind::Lolli:
      return web_lolli(web_of_type(type->left, bases, max_dim),
                       web_of_type(type->right, bases, max_dim), max_dim);
  }
  throw std::logic_error("malformed LL type");
}

bool member(const Web& web, const Vec& v) {
  if (v.size() != web.index.size()) throw std::invalid_argument("member: wrong dimension");
  for (const auto& r : web.polar_rays) {
    if (sgn(dot(v, r)) > 0) return false;
  }
  if (web.polar_gens.empty()) return true;
  // maximise sum_i l_i <v, h_i>  s.t.  sum_i l_i <= 1, l >= 0.
  LpProblem lp;
  for (const auto& h : web.polar_gens) lp.objective.push_back(dot(v, h));
  lp.constraints.push_back(Vec(web.polar_gens.size(), Rational(1)));
  lp.bounds.push_back(1);
  auto r = solve_lp(lp);
  return r.status == LpStatus::Optimal && r.value <= 1;
}

bool member_via_gens(const Web& web, const Vec& v) {
  if (v.size() != web.index.size()) throw std::invalid_argument("member: wrong dimension");
  LpProblem lp;
  lp.objective = v;
  for (const auto& g : web.gens) {
    lp.constraints.push_back(g);
    lp.bounds.push_back(1);
  }
  auto r = solve_lp(lp);
  return r.status == LpStatus::Optimal && r.value <= 1;
}

bool in_down_hull(const std::vector<Vec>& points, const Vec& v) {
  // Feasibility of: l >= 0, sum l <= 1, sum_i l_i g_i >= v.
  if (points.empty()) {
    return std::all_of(v.begin(), v.end(), [](const Rational& e) { return sgn(e) == 0; });
  }
  LpProblem lp;
  lp.objective.assign(points.size(), Rational(0));
  lp.constraints.push_back(Vec(points.size(), Rational(1)));
  lp.bounds.push_back(1);
  for (std::size_t a = 0; a < v.size(); ++a) {
    Vec row;
    for (const auto& g : points) row.push_back(-g[a]);
    lp.constraints.push_back(row);
    lp.bounds.push_back(-v[a]);
  }
  return solve_lp(lp).status == LpStatus::Optimal;
}

bool check_bipolar_closed(const Web& web, std::size_t max_dim) {
  const std::size_t n = web.index.size();
  auto p = polar(n, web.gens, {}, max_dim);
  auto pp = polar(n, p.points, p.rays, max_dim);
  if (!pp.rays.empty()) return false;
  for (const auto& q : pp.points) {
    if (!in_down_hull(web.gens, q)) return false;
  }
  for (const auto& g : web.gens) {
    if (!in_down_hull(pp.points, g)) return false;
  }
  return true;
}

bool check_pcoh_morphism(const Matrix& f, const Web& x, const Web& y) {
  if (f.rows().size() != x.index.size() || f.cols().size() != y.index.size()) {
    throw DimensionError("check_pcoh_morphism: matrix does not match the webs");
  }
  for (const auto& g : x.gens) {
    if (!member(y, f.apply(g))) return false;
  }
  return true;
}

Matrix reify_kernel(const Matrix& f, const MkTypePtr& dom, const MkTypePtr& cod,
                    const BaseTable& bases) {
  Web x = web_meas(dom, bases);
  Web y = web_meas(cod, bases);
  if (f.rows().size() != x.index.size() || f.cols().size() != y.index.size()) {
    throw NotAKernel("matrix shape does not match the kernel type");
  }
  Matrix m = f.relabeled(x.index, y.index);
  for (std::size_t i = 0; i < m.rows().size(); ++i) {
    if (m.row_sum(i) != 1) {
      throw NotAKernel("row " + m.rows().label(i) + " sums to " + to_string(m.row_sum(i)) +
                       ", not 1");
    }
  }
  if (!check_pcoh_morphism(m, x, y)) throw NotAKernel("matrix is not a PCoh morphism");
  return m;
}

}  // namespace llmk
