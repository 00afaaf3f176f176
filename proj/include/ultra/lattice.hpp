#ifndef ULTRA_LATTICE_HPP_
#define ULTRA_LATTICE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ultra/rational.hpp"
#include "ultra/ultragraph.hpp"
#include "ultra/vertex_set.hpp"

namespace ultra {

// One region of the refinement of `ambient` by a family of sets, tagged with
// the indices of the sets containing it.  Regions are nonempty, pairwise
// disjoint and cover `ambient`.
struct Cell {
  VertexSet region;
  std::vector<std::size_t> members;
};

std::vector<Cell> disjoint_cells(const VertexSet& ambient, const std::vector<VertexSet>& sets,
                                 std::size_t budget = 100000);

// Decision structure for the generalized-vertex lattice and the accommodating
// family of an ultragraph.  Infinite lattice elements are unions of the
// finitely many intersection-closed infinite range cores plus a finite set.
class GeneralizedVertices {
 public:
  static GeneralizedVertices compute(const Ultragraph& g, std::size_t budget = 4096);

  const Ultragraph& graph() const { return *g_; }
  const std::vector<VertexSet>& cores() const { return cores_; }
  const std::vector<Cell>& cells() const { return cells_; }

  // Membership in the lattice generated by singletons, edge ranges and the
  // empty set under finite unions and intersections.
  bool in_g0(const VertexSet& s) const;
  // Membership in the closure of the lattice under relative complements.
  bool in_b(const VertexSet& s) const;
  bool in_b_alpha(const VertexSet& s, const Path& alpha) const;

  // s = union of (A_i minus B_i) with all A_i, B_i in the lattice; nullopt
  // when s is not in the accommodating family.
  std::optional<std::vector<std::pair<VertexSet, VertexSet>>> decompose_b(
      const VertexSet& s) const;

  // Exhaustive fully-finite listing; BudgetError when too large, TierError on
  // normal-form inputs.
  std::vector<VertexSet> tier1_elements() const;
  // Minimal nonzero accommodating sets below `ambient` (fully finite inputs).
  std::vector<VertexSet> atoms(const VertexSet& ambient) const;

 private:
  const Ultragraph* g_ = nullptr;
  std::size_t budget_ = 0;
  std::vector<VertexSet> cores_;
  std::vector<Cell> cells_;  // refinement of the universe by the cores
};

// True when sum coeff_i * 1_{A_i} vanishes as a function on the vertices.
// All A_i must belong to the accommodating family.
bool projection_combo_is_zero(const std::vector<std::pair<Rational, VertexSet>>& terms,
                              std::size_t budget = 100000);

}  // namespace ultra

#endif  // ULTRA_LATTICE_HPP_
