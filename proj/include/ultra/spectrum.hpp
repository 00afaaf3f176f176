#ifndef ULTRA_SPECTRUM_HPP_
#define ULTRA_SPECTRUM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ultra/lattice.hpp"
#include "ultra/semigroup.hpp"
#include "ultra/ultragraph.hpp"

namespace ultra {

// An ultrafilter on the accommodating sets below some range: principal at a
// vertex, or the filter of sets containing a cofinite part of an infinite
// minimal emitter / minimal sink.
struct UltrafilterDesc {
  enum class Kind : std::uint8_t { kPrincipal = 0, kCofinite = 1 };

  Kind kind = Kind::kPrincipal;
  VertexId vertex;  // principal
  VertexSet base;   // cofinite

  static UltrafilterDesc principal(VertexId v) {
    UltrafilterDesc d;
    d.kind = Kind::kPrincipal;
    d.vertex = v;
    return d;
  }
  static UltrafilterDesc cofinite_on(VertexSet b) {
    UltrafilterDesc d;
    d.kind = Kind::kCofinite;
    d.base = std::move(b);
    return d;
  }

  // C is a member of the filter.
  bool contains(const VertexSet& c) const {
    if (kind == Kind::kPrincipal) return c.contains(vertex);
    return set_minus(base, c).is_finite();
  }

  auto operator<=>(const UltrafilterDesc&) const = default;
};

// A point of the tight spectrum: the unique filter of an infinite path, or a
// finite-type filter (alpha, F) with F an ultrafilter below r(alpha).
class TightFilter {
 public:
  TightFilter() = default;

  static TightFilter infinite(InfinitePath w) {
    TightFilter t;
    t.infinite_ = true;
    t.word_ = std::move(w);
    return t;
  }
  static TightFilter finite(Path alpha, UltrafilterDesc top) {
    TightFilter t;
    t.infinite_ = false;
    t.alpha_ = std::move(alpha);
    t.top_ = std::move(top);
    return t;
  }

  bool is_infinite_type() const { return infinite_; }
  const InfinitePath& word() const { return word_; }
  const Path& alpha() const { return alpha_; }
  const UltrafilterDesc& top() const { return top_; }

  // First edge of the associated word at position n (0-based); finite type
  // requires n < |alpha|.
  EdgeRef edge_at(std::size_t n) const {
    return infinite_ ? word_.edge_at(n) : alpha_.edges[n];
  }
  bool word_begins_with(const Path& beta) const;

  auto operator<=>(const TightFilter&) const = default;

 private:
  bool infinite_ = false;
  InfinitePath word_;
  Path alpha_;
  UltrafilterDesc top_;
};

// Membership of an idempotent (beta, A, beta) in the filter.
bool contains_idempotent(const Ultragraph& g, const TightFilter& xi, const SElement& e);
// Same test for a query word given as a prefix stream (position -> edge).
bool contains_idempotent_stream(const Ultragraph& g,
                                const std::function<EdgeRef(std::size_t)>& word_at,
                                const SElement& e);

// Structural filter validity (composability, descriptor invariants).
bool tight_filter_valid(const Ultragraph& g, const GeneralizedVertices& gv,
                        const TightFilter& xi);

struct TightnessResult {
  bool tight = false;
  int reason = 0;  // 1: sink-principal, 2: members all emit infinitely, 3: members full of sinks
};
TightnessResult is_tight(const Ultragraph& g, const Path& alpha, const UltrafilterDesc& f);

std::vector<VertexSet> minimal_infinite_emitters(const Ultragraph& g,
                                                 const GeneralizedVertices& gv);
std::vector<VertexSet> minimal_sinks(const Ultragraph& g, const GeneralizedVertices& gv);

struct Rfum2EdgeReport {
  EdgeRef edge;
  std::vector<VertexSet> cover;  // minimal emitters / minimal sinks used
  VertexSet singletons;          // leftover finite part, sinks or regular vertices
};

struct Rfum2Report {
  bool holds = true;
  std::vector<Rfum2EdgeReport> decompositions;
  std::optional<EdgeRef> counterexample;
  VertexSet uncovered;  // the infinite residual at the counterexample edge
};
Rfum2Report check_rfum2(const Ultragraph& g, const GeneralizedVertices& gv);

struct UltrafilterEnumeration {
  std::vector<UltrafilterDesc> filters;
  // Infinitely many principal ultrafilters exist; listed only up to the bound.
  bool truncated = false;
  // False when the closed-world descriptor shapes may miss ultrafilters
  // (infinite ranges without the range-decomposition condition).
  bool complete = true;
};
UltrafilterEnumeration enumerate_ultrafilters(const Ultragraph& g, const GeneralizedVertices& gv,
                                              const VertexSet& r_alpha,
                                              std::int64_t index_bound = 3);

struct TightEnumeration {
  std::vector<TightFilter> filters;
  std::vector<int> reasons;  // parallel to filters
  bool truncated = false;
  bool complete = true;
};
TightEnumeration enumerate_tight_finite_type(const Ultragraph& g, const GeneralizedVertices& gv,
                                             std::size_t max_len, std::int64_t index_bound = 3);

// A point of the dense subset Y: an infinite path, or a path ending at a sink.
struct BoundaryPoint {
  bool infinite = false;
  InfinitePath word;  // when infinite
  Path alpha;         // when sink-terminal (possibly empty)
  VertexId sink;

  static BoundaryPoint infinite_path(InfinitePath w) {
    BoundaryPoint y;
    y.infinite = true;
    y.word = std::move(w);
    return y;
  }
  static BoundaryPoint sink_terminal(Path alpha, VertexId v) {
    BoundaryPoint y;
    y.alpha = std::move(alpha);
    y.sink = v;
    return y;
  }
  auto operator<=>(const BoundaryPoint&) const = default;
};

TightFilter embed_boundary(const Ultragraph& g, const BoundaryPoint& y);

// A basic open set V_{base : exclusions}.
struct Cylinder {
  SElement base;
  std::vector<SElement> exclusions;

  auto operator<=>(const Cylinder&) const = default;
};

bool cylinder_membership(const Ultragraph& g, const TightFilter& xi, const Cylinder& c);

// Decides emptiness constructively: bounded search along the exclusion words,
// then greedy extension to a sink or an eventually periodic tail.
std::optional<BoundaryPoint> cylinder_witness(const Ultragraph& g, const GeneralizedVertices& gv,
                                              const Cylinder& c);

// A point of the boundary path space X.
struct XPoint {
  enum class Kind : std::uint8_t { kInfinite, kMinimal, kSinkTerminal };
  Kind kind = Kind::kInfinite;
  InfinitePath word;  // kInfinite
  Path alpha;         // otherwise (may be empty: the (A, A) case)
  VertexSet terminal;

  auto operator<=>(const XPoint&) const = default;
};

// The homeomorphism with the boundary path space; DomainError unless the
// ultragraph satisfies the range-decomposition condition.
XPoint phi_to_x(const Ultragraph& g, const GeneralizedVertices& gv, const TightFilter& xi);
TightFilter phi_from_x(const Ultragraph& g, const GeneralizedVertices& gv, const XPoint& x);

struct IsolationResult {
  bool isolated = false;
  std::optional<Cylinder> singleton;  // a basic set equal to {xi}, when isolated
  std::string note;
};
IsolationResult is_isolated(const Ultragraph& g, const GeneralizedVertices& gv,
                            const TightFilter& xi);

// Bounded inventory of the whole tight spectrum (finite type to max_len,
// infinite type with |prefix| + |cycle| <= max_len); used by analyzers and
// tests.
struct SpectrumSample {
  std::vector<TightFilter> finite_type;
  std::vector<TightFilter> infinite_type;
  bool truncated = false;
  bool complete = true;
};
SpectrumSample sample_spectrum(const Ultragraph& g, const GeneralizedVertices& gv,
                               std::size_t max_len, std::int64_t index_bound = 3);

}  // namespace ultra

#endif  // ULTRA_SPECTRUM_HPP_
