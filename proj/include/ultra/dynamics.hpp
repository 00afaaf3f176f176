#ifndef ULTRA_DYNAMICS_HPP_
#define ULTRA_DYNAMICS_HPP_

#include <cstdint>
#include <vector>

#include "ultra/spectrum.hpp"
#include "ultra/ultragraph.hpp"

namespace ultra {

// A reduced word of the free group over the edge alphabet.
struct ReducedWord {
  struct Letter {
    EdgeRef edge;
    bool inverse = false;
    auto operator<=>(const Letter&) const = default;
  };
  std::vector<Letter> letters;

  static ReducedWord identity() { return {}; }
  static ReducedWord from_path(const Path& alpha);
  // alpha . beta^{-1}, reduced.
  static ReducedWord from_pair(const Path& alpha, const Path& beta);

  bool is_identity() const { return letters.empty(); }
  ReducedWord inverted() const;
  // |positive| - |negative| letters.
  std::int64_t degree() const;
  // Splits as positive\cdot negative^{-1}; false for mixed shapes (whose V-set
  // is empty).
  bool pn_shape(Path* pos, Path* neg) const;

  auto operator<=>(const ReducedWord&) const = default;
};

ReducedWord reduce_concat(const ReducedWord& a, const ReducedWord& b);

// One-step shift on filters with word length >= 1; DomainError otherwise.
TightFilter shift(const Ultragraph& g, const TightFilter& xi);
TightFilter shift_n(const Ultragraph& g, const TightFilter& xi, std::size_t n);

// The open set V_t of the partial action.
struct VSet {
  enum class Kind : std::uint8_t { kFull, kEmpty, kCylinder };
  Kind kind = Kind::kEmpty;
  Cylinder cylinder;  // when kCylinder

  static VSet full() { return {Kind::kFull, {}}; }
  static VSet empty() { return {Kind::kEmpty, {}}; }
  static VSet of(Cylinder c) { return {Kind::kCylinder, std::move(c)}; }
};

VSet v_set(const Ultragraph& g, const ReducedWord& t);
// The open set attached to an explicit pair of paths, V_{(alpha,
// r(alpha) cap r(beta), alpha)}.  For a reduced pair this is v_set of
// alpha beta^{-1}; in general it is the subset of it charted by the pair.
VSet v_set_pair(const Ultragraph& g, const Path& alpha, const Path& beta);
bool v_set_contains(const Ultragraph& g, const VSet& v, const TightFilter& xi);

// xi in V_{t^{-1}}, the domain of act(t, .).
bool in_act_domain(const Ultragraph& g, const ReducedWord& t, const TightFilter& xi);
// Cut the negative part, glue the positive part; DomainError when xi is
// outside the domain.
TightFilter act(const Ultragraph& g, const ReducedWord& t, const TightFilter& xi);

// A transformation-groupoid element (t, xi) with xi in V_t.
struct GroupoidElement {
  ReducedWord word;
  TightFilter point;

  auto operator<=>(const GroupoidElement&) const = default;
};

// DomainError when xi is not in V_t.
GroupoidElement make_groupoid_element(const Ultragraph& g, ReducedWord t, TightFilter xi);
GroupoidElement groupoid_unit(TightFilter xi);
TightFilter groupoid_range(const GroupoidElement& x);
TightFilter groupoid_source(const Ultragraph& g, const GroupoidElement& x);
// Defined when source(x) = range(y); DomainError otherwise.
GroupoidElement groupoid_compose(const Ultragraph& g, const GroupoidElement& x,
                                 const GroupoidElement& y);
GroupoidElement groupoid_inverse(const Ultragraph& g, const GroupoidElement& x);

// The derived (range, degree, source) view.
struct RdTriple {
  TightFilter range;
  std::int64_t degree = 0;
  TightFilter source;
};
RdTriple rd_view(const Ultragraph& g, const GroupoidElement& x);

// Interior of the isotropy bundle: the unit space together with the points
// (beta gamma^{+-1} beta^{-1}, xi_{beta gamma^infinity}) for no-exit cycles.
bool in_isotropy_interior(const Ultragraph& g, const GroupoidElement& x);

}  // namespace ultra

#endif  // ULTRA_DYNAMICS_HPP_
