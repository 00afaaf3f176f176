#ifndef ULTRA_ULTRAGRAPH_HPP_
#define ULTRA_ULTRAGRAPH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultra/ids.hpp"
#include "ultra/vertex_set.hpp"

namespace ultra {

struct TailFamilyDecl {
  std::string name;
  bool all_sinks = false;
};

struct ConcreteEdgeDecl {
  std::string name;
  VertexId source;
  VertexSet range;
};

// Source pattern of a bundle: a fixed vertex, or the k-th vertex of a tail
// family (k being the bundle instance index).
struct BundleSource {
  bool indexed = false;
  VertexId constant;        // when !indexed
  std::int32_t family = 0;  // when indexed
};

// Range pattern of a bundle instance k: constant_part plus the k-th vertex of
// each family listed in indexed_families.
struct BundleRange {
  VertexSet constant_part;
  std::vector<std::int32_t> indexed_families;
};

struct BundleDecl {
  std::string name;
  BundleSource source;
  BundleRange range;
};

enum class Tier { kFinite, kNormalForm };  // Tier-1 / Tier-2

struct ValidationReport {
  bool ok = true;
  Tier tier = Tier::kFinite;
  std::vector<std::string> diagnostics;
};

// A finite path: a composable sequence of edge instances.  The empty vector
// is the empty word.
struct Path {
  std::vector<EdgeRef> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  auto operator<=>(const Path&) const = default;
};

Path concat(const Path& a, const Path& b);
// True when b = a . rest; rest written to *rest when non-null.
bool is_beginning_of(const Path& a, const Path& b, Path* rest = nullptr);

// An ultrapath (alpha, A): a path together with a nonempty terminal set
// contained in r(alpha); a length-zero ultrapath is just its terminal set.
struct Ultrapath {
  Path path;
  VertexSet terminal;

  std::size_t length() const { return path.size(); }
  auto operator<=>(const Ultrapath&) const = default;
};

// An eventually periodic infinite path prefix . cycle^infinity, kept in
// canonical form (primitive cycle, shortest prefix).
struct InfinitePath {
  Path prefix;
  Path cycle;

  EdgeRef edge_at(std::size_t n) const;
  auto operator<=>(const InfinitePath&) const = default;
};

// The edges emitted by a vertex set: an explicit concrete part plus, per
// bundle, the (finite or cofinite) set of instance indices involved.
struct EdgeSetDesc {
  std::vector<std::int32_t> concrete;          // sorted edge ids
  std::vector<VertexSet::TailPart> per_bundle; // index set of each bundle

  bool is_finite() const;
  std::int64_t finite_size() const;
  bool is_empty() const;
  bool contains(const class Ultragraph& g, EdgeRef e) const;
  // All members; only valid when finite.
  std::vector<EdgeRef> finite_edges() const;
};

class Ultragraph {
 public:
  Ultragraph() = default;

  // Construction (used by builders and the parser); validate() afterwards.
  std::int64_t add_named_vertex(std::string name);
  std::int32_t add_tail_family(std::string name, bool all_sinks);
  std::int32_t add_concrete_edge(std::string name, VertexId source, VertexSet range);
  std::int32_t add_bundle(std::string name, BundleSource source, BundleRange range);

  std::int64_t num_named() const { return static_cast<std::int64_t>(named_names_.size()); }
  std::uint32_t num_families() const { return static_cast<std::uint32_t>(families_.size()); }
  std::size_t num_concrete() const { return concrete_.size(); }
  std::size_t num_bundles() const { return bundles_.size(); }
  const std::vector<std::string>& named_names() const { return named_names_; }
  const TailFamilyDecl& family(std::int32_t f) const { return families_[f]; }
  const ConcreteEdgeDecl& concrete_edge(std::int32_t id) const { return concrete_[id]; }
  const BundleDecl& bundle(std::int32_t id) const { return bundles_[id]; }

  Tier tier() const;
  ValidationReport validate() const;

  VertexSet universe() const;
  VertexSet empty_set() const { return VertexSet::empty_set(num_families()); }
  VertexSet singleton(VertexId v) const { return VertexSet::singleton(num_families(), v); }

  VertexId source(EdgeRef e) const;
  VertexSet range(EdgeRef e) const;
  VertexId path_source(const Path& p) const { return source(p.edges.front()); }
  // r(alpha) for |alpha| >= 1; r(empty) is the whole universe.
  VertexSet path_range(const Path& p) const;
  bool path_composable(const Path& p) const;

  // eps(A) = { e : s(e) in A }.
  EdgeSetDesc epsilon(const VertexSet& a) const;
  // Vertices of the universe that emit at least one edge, and its complement.
  const VertexSet& emitting_universe() const;
  VertexSet sink_universe() const;
  bool is_sink(VertexId v) const;
  // |eps({v})| = infinity, i.e. v carries a constant-source bundle.
  bool is_infinite_emitter_vertex(VertexId v) const;
  // 0 < |eps({v})| < infinity.
  bool is_regular_vertex(VertexId v) const;

  // Tail indices mentioned explicitly anywhere in the presentation.
  const std::vector<std::int64_t>& mentioned_indices(std::int32_t f) const;
  // Canonical enumeration pool: named vertices plus, per family, the
  // mentioned indices and 1..index_bound.
  std::vector<VertexId> canonical_vertices(std::int64_t index_bound) const;
  std::vector<EdgeRef> out_edges(VertexId v, std::int64_t index_bound) const;

  std::string vertex_name(VertexId v) const;
  std::string edge_name(EdgeRef e) const;

 private:
  void compute_caches() const;

  std::vector<std::string> named_names_;
  std::vector<TailFamilyDecl> families_;
  std::vector<ConcreteEdgeDecl> concrete_;
  std::vector<BundleDecl> bundles_;

  mutable bool caches_ready_ = false;
  mutable VertexSet emitting_;
  mutable std::vector<std::vector<std::int64_t>> mentioned_;
};

VertexSet relative_range(const Ultragraph& g, const VertexSet& a, EdgeRef e);
VertexSet relative_range(const Ultragraph& g, const VertexSet& a, const Path& alpha);

std::optional<Ultrapath> concat_ultrapaths(const Ultragraph& g, const Ultrapath& x,
                                           const Ultrapath& y);

// Canonical form: primitive cycle, prefix rolled back as far as possible.
InfinitePath make_infinite_path(const Ultragraph& g, Path prefix, Path cycle);
bool infinite_path_valid(const Ultragraph& g, const InfinitePath& w);
InfinitePath drop_first_edge(const Ultragraph& g, const InfinitePath& w);
InfinitePath prepend(const Ultragraph& g, const Path& alpha, const InfinitePath& w);

struct ExitWitness {
  std::size_t position = 0;  // index i with the exit in r(gamma_i)
  std::optional<EdgeRef> edge;
  std::optional<VertexId> sink;
};

struct LoopInfo {
  Path loop;  // canonical rotation (least edge first)
  std::optional<ExitWitness> exit;  // empty for loops without exits
};

struct LoopReport {
  std::vector<LoopInfo> without_exits;
  std::vector<LoopInfo> with_exits;
  bool truncated = false;  // bundle instance pool was truncated
};

// All simple loops of length <= max_len, split by the exit test.
LoopReport loops_without_exits(const Ultragraph& g, std::size_t max_len,
                               std::int64_t index_bound = 3);
// Exit test for one specific loop (exact, no truncation).
std::optional<ExitWitness> find_exit(const Ultragraph& g, const Path& loop);

struct ConnectivityReport {
  bool connected = true;
  // An ordered pair (v, w) with no path from v covering w.
  std::optional<std::pair<VertexId, VertexId>> counterexample;
  // Whether the reversed pair (w, v) is joined; the condition is directional.
  std::optional<bool> reverse_holds;
};
ConnectivityReport is_connected(const Ultragraph& g);

// Vertices reachable from v by paths of length >= 1.
VertexSet reachable_from(const Ultragraph& g, VertexId v);

// All composable paths with 1 <= |path| <= max_len over the canonical edge
// pool, sorted by (length, edges).
std::vector<Path> enumerate_paths(const Ultragraph& g, std::size_t max_len,
                                  std::int64_t index_bound = 3);

// Canonical eventually periodic paths with |prefix| + |cycle| <= bound.
std::vector<InfinitePath> enumerate_infinite_paths(const Ultragraph& g, std::size_t bound,
                                                   std::int64_t index_bound = 3);

}  // namespace ultra

#endif  // ULTRA_ULTRAGRAPH_HPP_
