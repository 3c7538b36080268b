#pragma once

// Finite probabilistic coherence spaces.
//
// A web is an index set together with finite generators: P(X) is the
// down-closed convex hull of `gens`, and its polar is the down-closed convex
// hull of `polar_gens` plus the cone of `polar_rays` (empty for every genuine
// coherence space, whose polar is bounded).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "llmk/finset.hpp"
#include "llmk/matrix.hpp"
#include "llmk/simplex.hpp"

namespace llmk {

inline constexpr std::size_t kDefaultMaxVertexDim = 6;

struct GeneratorSet {
  std::vector<Vec> points;
  std::vector<Vec> rays;
};

struct Web {
  FinSet index;
  std::vector<Vec> gens;
  std::vector<Vec> polar_gens;
  std::vector<Vec> polar_rays;
};

class NotAKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorts, deduplicates and drops points dominated coordinatewise by another.
std::vector<Vec> canonical_points(std::vector<Vec> points);

/// {w >= 0 : <g, w> <= 1 for all points g, <r, w> <= 0 for all rays r}, by
/// double description on the homogenised cone. Throws ResourceError when the
/// dimension exceeds `max_dim`.
GeneratorSet polar(std::size_t dim, const std::vector<Vec>& points,
                   const std::vector<Vec>& rays = {},
                   std::size_t max_dim = kDefaultMaxVertexDim);

Web web_meas(const MkTypePtr& type, const BaseTable& bases,
             std::size_t max_index = kDefaultMaxIndex);
Web web_tensor(const Web& x, const Web& y, std::size_t max_dim = kDefaultMaxVertexDim);
/// X -o Y as the polar of { g (x) h : g in gens(X), h in polar_gens(Y) }.
Web web_lolli(const Web& x, const Web& y, std::size_t max_dim = kDefaultMaxVertexDim);
/// The web of an LL type: 1 and M t by web_meas, the connectives recursively.
Web web_of_type(const LlTypePtr& type, const BaseTable& bases,
                std::size_t max_dim = kDefaultMaxVertexDim);

/// v in P(X): max { <v, w> : w in P(X)^polar } <= 1, by LP over polar_gens.
bool member(const Web& web, const Vec& v);
/// The same predicate through the H-representation { w >= 0 : G w <= 1 }
/// built from gens; an unbounded LP means v is outside.
bool member_via_gens(const Web& web, const Vec& v);

/// v lies in the down-closed convex hull of `points`.
bool in_down_hull(const std::vector<Vec>& points, const Vec& v);

/// polar(polar(gens)) and gens generate the same down-closed convex set.
bool check_bipolar_closed(const Web& web, std::size_t max_dim = kDefaultMaxVertexDim);

/// For every generator g of X, the image g f lies in P(Y).
bool check_pcoh_morphism(const Matrix& f, const Web& x, const Web& y);

/// Validates that f is a Markov kernel points(dom) -> points(cod) and a PCoh
/// morphism between the measure webs, and returns it over those index sets.
Matrix reify_kernel(const Matrix& f, const MkTypePtr& dom, const MkTypePtr& cod,
                    const BaseTable& bases);

/// Tensor of vectors, indexed like FinSet::product.
Vec outer(const Vec& a, const Vec& b);

}  // namespace llmk
