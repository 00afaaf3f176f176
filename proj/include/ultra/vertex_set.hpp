#ifndef ULTRA_VERTEX_SET_HPP_
#define ULTRA_VERTEX_SET_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ultra/ids.hpp"

namespace ultra {

// A set of vertices in finite/cofinite normal form: a finite sorted set of
// named vertices plus, for every tail family, either a finite sorted set of
// indices or the complement of one.  All values are canonical, so structural
// equality is set equality.
class VertexSet {
 public:
  struct TailPart {
    bool cofinite = false;
    std::vector<std::int64_t> idx;  // sorted members (finite) or exclusions (cofinite)

    bool contains(std::int64_t k) const;
    bool is_empty() const { return !cofinite && idx.empty(); }
    auto operator<=>(const TailPart&) const = default;
  };

  VertexSet() = default;
  explicit VertexSet(std::uint32_t num_families) : tails_(num_families) {}

  static VertexSet empty_set(std::uint32_t num_families) { return VertexSet(num_families); }
  static VertexSet singleton(std::uint32_t num_families, VertexId v);
  static VertexSet of_named(std::uint32_t num_families, std::vector<std::int64_t> ids);
  // A set living entirely inside one tail family.
  static VertexSet of_tail_part(std::uint32_t num_families, std::int32_t family, TailPart part);
  // The whole universe: every named id in [0, num_named) and every tail vertex.
  static VertexSet universe(std::uint32_t num_families, std::int64_t num_named);

  std::uint32_t num_families() const { return static_cast<std::uint32_t>(tails_.size()); }
  const std::vector<std::int64_t>& named() const { return named_; }
  const TailPart& tail(std::uint32_t f) const { return tails_[f]; }

  bool contains(VertexId v) const;
  bool is_empty() const;
  bool is_finite() const;
  // Defined only for finite sets.
  std::int64_t finite_size() const;
  bool subset_of(const VertexSet& other) const;

  // Members of a finite set, in canonical order.
  std::vector<VertexId> finite_elements() const;
  // The first `n` members in canonical order (named ascending, then each
  // family ascending); works for infinite sets too.
  std::vector<VertexId> first_elements(std::size_t n) const;
  // Least element in canonical order, if any.
  std::optional<VertexId> least_element() const;

  void insert(VertexId v);

  auto operator<=>(const VertexSet&) const = default;

 private:
  friend VertexSet set_union(const VertexSet&, const VertexSet&);
  friend VertexSet set_intersect(const VertexSet&, const VertexSet&);
  friend VertexSet set_minus(const VertexSet&, const VertexSet&);

  std::vector<std::int64_t> named_;
  std::vector<TailPart> tails_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersect(const VertexSet& a, const VertexSet& b);
VertexSet set_minus(const VertexSet& a, const VertexSet& b);

enum class SetOp { kUnion, kIntersect, kMinus };
VertexSet set_boolean(SetOp op, const VertexSet& a, const VertexSet& b);

struct CardinalityClass {
  bool finite = true;
  std::int64_t size = 0;  // meaningful only when finite
};
CardinalityClass cardinality_class(const VertexSet& s);

}  // namespace ultra

#endif  // ULTRA_VERTEX_SET_HPP_
