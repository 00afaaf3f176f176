#include "ultra/lattice.hpp"

#include <algorithm>
#include <set>

namespace ultra {

std::vector<Cell> disjoint_cells(const VertexSet& ambient, const std::vector<VertexSet>& sets,
                                 std::size_t budget) {
  std::vector<Cell> cells;
  if (!ambient.is_empty()) cells.push_back({ambient, {}});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<Cell> next;
    for (auto& c : cells) {
      VertexSet in = set_intersect(c.region, sets[i]);
      VertexSet out = set_minus(c.region, sets[i]);
      if (!in.is_empty()) {
        Cell cc{std::move(in), c.members};
        cc.members.push_back(i);
        next.push_back(std::move(cc));
      }
      if (!out.is_empty()) next.push_back({std::move(out), std::move(c.members)});
    }
    cells = std::move(next);
    if (cells.size() > budget) throw BudgetError("disjoint refinement exceeded the cell budget");
  }
  return cells;
}

GeneralizedVertices GeneralizedVertices::compute(const Ultragraph& g, std::size_t budget) {
  GeneralizedVertices gv;
  gv.g_ = &g;
  gv.budget_ = budget;

  // Base cores: the infinite sets among concrete edge ranges and bundle range
  // constant parts.  (A bundle instance range is its constant part plus a
  // finite indexed add-on, so the constant part carries the infinite content.)
  std::set<VertexSet> base;
  for (std::size_t id = 0; id < g.num_concrete(); ++id) {
    const auto& r = g.concrete_edge(static_cast<std::int32_t>(id)).range;
    if (!r.is_finite()) base.insert(r);
  }
  for (std::size_t b = 0; b < g.num_bundles(); ++b) {
    const auto& r = g.bundle(static_cast<std::int32_t>(b)).range.constant_part;
    if (!r.is_finite()) base.insert(r);
  }

  // Close under pairwise intersection, keeping only infinite results.
  std::set<VertexSet> closed = base;
  std::vector<VertexSet> work(base.begin(), base.end());
  while (!work.empty()) {
    VertexSet cur = std::move(work.back());
    work.pop_back();
    for (const auto& other : std::vector<VertexSet>(closed.begin(), closed.end())) {
      VertexSet m = set_intersect(cur, other);
      if (m.is_finite()) continue;
      if (closed.insert(m).second) {
        work.push_back(std::move(m));
        if (closed.size() > budget)
          throw BudgetError("core intersection closure exceeded the element budget");
      }
    }
  }
  gv.cores_.assign(closed.begin(), closed.end());
  gv.cells_ = disjoint_cells(g.universe(), gv.cores_, budget);
  return gv;
}

bool GeneralizedVertices::in_g0(const VertexSet& s) const {
  if (s.is_finite()) return true;  // all singletons generate, so finite sets are in
  VertexSet covered = g_->empty_set();
  for (const auto& c : cores_)
    if (c.subset_of(s)) covered = set_union(covered, c);
  return set_minus(s, covered).is_finite();
}

bool GeneralizedVertices::in_b(const VertexSet& s) const {
  if (s.is_finite()) return true;
  for (const auto& cell : cells_) {
    if (cell.region.is_finite()) continue;
    VertexSet trace = set_intersect(s, cell.region);
    if (trace.is_finite()) continue;
    if (cell.members.empty()) return false;  // outside every core: only finite traces occur
    if (!set_minus(cell.region, s).is_finite()) return false;  // splits an infinite cell
  }
  return true;
}

bool GeneralizedVertices::in_b_alpha(const VertexSet& s, const Path& alpha) const {
  return in_b(s) && s.subset_of(g_->path_range(alpha));
}

std::optional<std::vector<std::pair<VertexSet, VertexSet>>> GeneralizedVertices::decompose_b(
    const VertexSet& s) const {
  if (!in_b(s)) return std::nullopt;
  std::vector<std::pair<VertexSet, VertexSet>> out;
  VertexSet covered = g_->empty_set();
  for (const auto& cell : cells_) {
    if (cell.region.is_finite() || cell.members.empty()) continue;
    VertexSet missing = set_minus(cell.region, s);
    if (!missing.is_finite()) continue;  // trace is finite; swept into the remainder
    // a = intersection of the covering cores, b = union of the others
    VertexSet b = g_->empty_set();
    VertexSet a = cores_[cell.members.front()];
    for (std::size_t i = 1; i < cell.members.size(); ++i)
      a = set_intersect(a, cores_[cell.members[i]]);
    std::set<std::size_t> mem(cell.members.begin(), cell.members.end());
    for (std::size_t i = 0; i < cores_.size(); ++i)
      if (!mem.count(i)) b = set_union(b, cores_[i]);
    b = set_union(b, missing);
    out.emplace_back(std::move(a), std::move(b));
    covered = set_union(covered, set_intersect(cell.region, s));
  }
  VertexSet leftover = set_minus(s, covered);
  if (!leftover.is_empty()) out.emplace_back(std::move(leftover), g_->empty_set());
  return out;
}

std::vector<VertexSet> GeneralizedVertices::tier1_elements() const {
  if (g_->tier() != Tier::kFinite) throw TierError("exhaustive lattice listing needs a fully finite input");
  const std::int64_t n = g_->num_named();
  if (n > 20 || (std::size_t(1) << n) > budget_)
    throw BudgetError("power set listing exceeds the element budget");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    VertexSet s = g_->empty_set();
    for (std::int64_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) s.insert(VertexId::named(i));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    auto ca = a.finite_size(), cb = b.finite_size();
    if (ca != cb) return ca < cb;
    return a < b;
  });
  return out;
}

std::vector<VertexSet> GeneralizedVertices::atoms(const VertexSet& ambient) const {
  if (g_->tier() != Tier::kFinite) throw TierError("atoms need a fully finite input");
  std::vector<VertexSet> out;
  for (VertexId v : ambient.finite_elements()) out.push_back(g_->singleton(v));
  return out;
}

bool projection_combo_is_zero(const std::vector<std::pair<Rational, VertexSet>>& terms,
                              std::size_t budget) {
  if (terms.empty()) return true;
  VertexSet ambient = terms.front().second;
  for (const auto& [q, a] : terms) ambient = set_union(ambient, a);
  std::vector<VertexSet> sets;
  sets.reserve(terms.size());
  for (const auto& [q, a] : terms) sets.push_back(a);
  for (const auto& cell : disjoint_cells(ambient, sets, budget)) {
    Rational total = 0;
    for (auto i : cell.members) total += terms[i].first;
    if (total != 0) return false;
  }
  return true;
}

}  // namespace ultra
