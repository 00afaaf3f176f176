#ifndef ULTRA_ALGEBRA_HPP_
#define ULTRA_ALGEBRA_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultra/dynamics.hpp"
#include "ultra/lattice.hpp"
#include "ultra/rational.hpp"
#include "ultra/spectrum.hpp"

namespace ultra {

// Shared state for algebra computations; caches cylinder emptiness, which
// every normalization step consults.
struct AlgebraContext {
  const Ultragraph& g;
  const GeneralizedVertices& gv;
  mutable std::map<Cylinder, bool> empty_cache;

  AlgebraContext(const Ultragraph& graph, const GeneralizedVertices& lattice)
      : g(graph), gv(lattice) {}
  bool cylinder_empty(const Cylinder& c) const;
};

// An exact element of the groupoid convolution model: finitely many charts,
// each a reduced word with a disjoint family of nonempty cells carrying
// nonzero rational coefficients.
struct AlgebraElement {
  using CellList = std::vector<std::pair<Cylinder, Rational>>;
  std::map<ReducedWord, CellList> charts;

  bool is_zero() const { return charts.empty(); }
};

// Generators.  gen_p insists on a lattice set (or an accommodating set when
// `relaxed`); DomainError otherwise.
AlgebraElement gen_p(const AlgebraContext& ctx, const VertexSet& a, bool relaxed = false);
AlgebraElement gen_s(const AlgebraContext& ctx, EdgeRef e);
AlgebraElement gen_s_star(const AlgebraContext& ctx, EdgeRef e);
// The image of s_alpha p_A s_beta^*; zero when A meets neither range.
AlgebraElement monomial(const AlgebraContext& ctx, const Path& alpha, const VertexSet& a,
                        const Path& beta);

AlgebraElement add(const AlgebraContext& ctx, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scalar_mul(const AlgebraContext& ctx, const Rational& r, const AlgebraElement& x);
AlgebraElement convolve(const AlgebraContext& ctx, const AlgebraElement& x,
                        const AlgebraElement& y);
AlgebraElement star(const AlgebraContext& ctx, const AlgebraElement& x);

bool is_zero(const AlgebraContext& ctx, const AlgebraElement& x);
bool algebra_equal(const AlgebraContext& ctx, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement graded_component(const AlgebraElement& x, std::int64_t n);

// Defining-relation verification over the constructed elements.
struct RelationCheck {
  std::string relation;
  bool pass = true;
  std::string witness;  // set on failure
};
struct RelationReport {
  bool all_pass = true;
  std::vector<RelationCheck> checks;
};
RelationReport check_relations(const AlgebraContext& ctx);

bool in_diagonal(const AlgebraElement& x);
bool in_core(const AlgebraContext& ctx, const AlgebraElement& x);

struct CoreTriple {
  Path alpha;
  VertexSet middle;
  Path beta;
  AlgebraElement element;
};
struct CoreReport {
  std::vector<CoreTriple> generators;
  LoopReport loops;
  bool commutative = true;
  std::optional<std::pair<std::size_t, std::size_t>> failure;  // indices of a bad pair
  bool truncated = false;
};
CoreReport core_generators(const AlgebraContext& ctx, std::size_t max_len);

struct UniquenessReport {
  bool satisfiable = true;
  std::vector<std::string> violations;          // killed nonempty lattice sets
  std::vector<Path> spectral_obligations;       // no-exit cycles needing external certification
  std::size_t core_checklist_size = 0;          // generators on which injectivity is checked
  std::vector<std::string> notes;
};
UniquenessReport uniqueness_report(const AlgebraContext& ctx,
                                   const std::vector<VertexSet>& killed,
                                   std::size_t max_len = 8);

struct CenterVerdict {
  enum class Kind : std::uint8_t { kBaseRing, kLaurentRing, kCenterProper };
  Kind kind = Kind::kCenterProper;
  bool connected = false;
  std::string note;
};
CenterVerdict center_equals_core_check(const AlgebraContext& ctx);

}  // namespace ultra

#endif  // ULTRA_ALGEBRA_HPP_
