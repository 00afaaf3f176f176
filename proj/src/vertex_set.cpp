#include "ultra/vertex_set.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>

namespace ultra {

namespace {

std::vector<std::int64_t> sorted_union(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::int64_t> sorted_intersect(const std::vector<std::int64_t>& a,
                                           const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::int64_t> sorted_minus(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

using TailPart = VertexSet::TailPart;

TailPart tail_union(const TailPart& a, const TailPart& b) {
  if (!a.cofinite && !b.cofinite) return {false, sorted_union(a.idx, b.idx)};
  if (a.cofinite && b.cofinite) return {true, sorted_intersect(a.idx, b.idx)};
  const TailPart& co = a.cofinite ? a : b;
  const TailPart& fi = a.cofinite ? b : a;
  return {true, sorted_minus(co.idx, fi.idx)};
}

TailPart tail_intersect(const TailPart& a, const TailPart& b) {
  if (!a.cofinite && !b.cofinite) return {false, sorted_intersect(a.idx, b.idx)};
  if (a.cofinite && b.cofinite) return {true, sorted_union(a.idx, b.idx)};
  const TailPart& co = a.cofinite ? a : b;
  const TailPart& fi = a.cofinite ? b : a;
  return {false, sorted_minus(fi.idx, co.idx)};
}

TailPart tail_minus(const TailPart& a, const TailPart& b) {
  if (!a.cofinite && !b.cofinite) return {false, sorted_minus(a.idx, b.idx)};
  if (!a.cofinite && b.cofinite) return {false, sorted_intersect(a.idx, b.idx)};
  if (a.cofinite && !b.cofinite) return {true, sorted_union(a.idx, b.idx)};
  return {false, sorted_minus(b.idx, a.idx)};
}

}  // namespace

bool VertexSet::TailPart::contains(std::int64_t k) const {
  bool listed = std::binary_search(idx.begin(), idx.end(), k);
  return cofinite ? !listed : listed;
}

VertexSet VertexSet::singleton(std::uint32_t num_families, VertexId v) {
  VertexSet s(num_families);
  s.insert(v);
  return s;
}

VertexSet VertexSet::of_named(std::uint32_t num_families, std::vector<std::int64_t> ids) {
  VertexSet s(num_families);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  s.named_ = std::move(ids);
  return s;
}

VertexSet VertexSet::of_tail_part(std::uint32_t num_families, std::int32_t family,
                                  TailPart part) {
  VertexSet s(num_families);
  std::sort(part.idx.begin(), part.idx.end());
  part.idx.erase(std::unique(part.idx.begin(), part.idx.end()), part.idx.end());
  s.tails_[family] = std::move(part);
  return s;
}

VertexSet VertexSet::universe(std::uint32_t num_families, std::int64_t num_named) {
  VertexSet s(num_families);
  s.named_.resize(num_named);
  for (std::int64_t i = 0; i < num_named; ++i) s.named_[i] = i;
  for (auto& t : s.tails_) t.cofinite = true;
  return s;
}

bool VertexSet::contains(VertexId v) const {
  if (v.is_named()) return std::binary_search(named_.begin(), named_.end(), v.index);
  assert(v.family >= 0 && static_cast<std::size_t>(v.family) < tails_.size());
  return tails_[v.family].contains(v.index);
}

bool VertexSet::is_empty() const {
  if (!named_.empty()) return false;
  for (const auto& t : tails_)
    if (!t.is_empty()) return false;
  return true;
}

bool VertexSet::is_finite() const {
  for (const auto& t : tails_)
    if (t.cofinite) return false;
  return true;
}

std::int64_t VertexSet::finite_size() const {
  assert(is_finite());
  std::int64_t n = static_cast<std::int64_t>(named_.size());
  for (const auto& t : tails_) n += static_cast<std::int64_t>(t.idx.size());
  return n;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  return set_minus(*this, other).is_empty();
}

std::vector<VertexId> VertexSet::finite_elements() const {
  assert(is_finite());
  std::vector<VertexId> out;
  for (auto id : named_) out.push_back(VertexId::named(id));
  for (std::uint32_t f = 0; f < tails_.size(); ++f)
    for (auto k : tails_[f].idx) out.push_back(VertexId::tail(static_cast<std::int32_t>(f), k));
  return out;
}

std::vector<VertexId> VertexSet::first_elements(std::size_t n) const {
  std::vector<VertexId> out;
  for (auto id : named_) {
    if (out.size() >= n) return out;
    out.push_back(VertexId::named(id));
  }
  for (std::uint32_t f = 0; f < tails_.size(); ++f) {
    const auto& t = tails_[f];
    if (!t.cofinite) {
      for (auto k : t.idx) {
        if (out.size() >= n) return out;
        out.push_back(VertexId::tail(static_cast<std::int32_t>(f), k));
      }
    } else {
      std::int64_t k = 1;
      auto it = t.idx.begin();
      while (out.size() < n) {
        while (it != t.idx.end() && *it < k) ++it;
        if (it != t.idx.end() && *it == k) {
          ++k;
          continue;
        }
        out.push_back(VertexId::tail(static_cast<std::int32_t>(f), k));
        ++k;
      }
    }
  }
  return out;
}

std::optional<VertexId> VertexSet::least_element() const {
  auto v = first_elements(1);
  if (v.empty()) return std::nullopt;
  return v.front();
}

void VertexSet::insert(VertexId v) {
  if (v.is_named()) {
    auto it = std::lower_bound(named_.begin(), named_.end(), v.index);
    if (it == named_.end() || *it != v.index) named_.insert(it, v.index);
    return;
  }
  assert(v.family >= 0 && static_cast<std::size_t>(v.family) < tails_.size());
  auto& t = tails_[v.family];
  auto it = std::lower_bound(t.idx.begin(), t.idx.end(), v.index);
  bool listed = (it != t.idx.end() && *it == v.index);
  if (t.cofinite) {
    if (listed) t.idx.erase(it);
  } else {
    if (!listed) t.idx.insert(it, v.index);
  }
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  assert(a.tails_.size() == b.tails_.size());
  VertexSet out(static_cast<std::uint32_t>(a.tails_.size()));
  out.named_ = sorted_union(a.named_, b.named_);
  for (std::size_t f = 0; f < a.tails_.size(); ++f)
    out.tails_[f] = tail_union(a.tails_[f], b.tails_[f]);
  return out;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  assert(a.tails_.size() == b.tails_.size());
  VertexSet out(static_cast<std::uint32_t>(a.tails_.size()));
  out.named_ = sorted_intersect(a.named_, b.named_);
  for (std::size_t f = 0; f < a.tails_.size(); ++f)
    out.tails_[f] = tail_intersect(a.tails_[f], b.tails_[f]);
  return out;
}

VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  assert(a.tails_.size() == b.tails_.size());
  VertexSet out(static_cast<std::uint32_t>(a.tails_.size()));
  out.named_ = sorted_minus(a.named_, b.named_);
  for (std::size_t f = 0; f < a.tails_.size(); ++f)
    out.tails_[f] = tail_minus(a.tails_[f], b.tails_[f]);
  return out;
}

VertexSet set_boolean(SetOp op, const VertexSet& a, const VertexSet& b) {
  switch (op) {
    case SetOp::kUnion: return set_union(a, b);
    case SetOp::kIntersect: return set_intersect(a, b);
    case SetOp::kMinus: return set_minus(a, b);
  }
  return a;
}

CardinalityClass cardinality_class(const VertexSet& s) {
  if (!s.is_finite()) return {false, 0};
  return {true, s.finite_size()};
}

}  // namespace ultra
