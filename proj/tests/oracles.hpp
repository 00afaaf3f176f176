#ifndef ULTRA_TESTS_ORACLES_HPP_
#define ULTRA_TESTS_ORACLES_HPP_

#include <random>
#include <set>
#include <vector>

#include "ultra/lattice.hpp"
#include "ultra/ultragraph.hpp"

namespace ultra::oracles {

// A random fully finite ultragraph with up to `max_v` vertices and `max_e`
// edges (nonempty random ranges).
inline Ultragraph random_tier1(std::mt19937_64& rng, int max_v = 5, int max_e = 6) {
  Ultragraph g;
  std::uniform_int_distribution<int> nv(1, max_v);
  int n = nv(rng);
  for (int i = 0; i < n; ++i) g.add_named_vertex("v" + std::to_string(i));
  std::uniform_int_distribution<int> ne(0, max_e);
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t(1) << n) - 1);
  int m = ne(rng);
  for (int e = 0; e < m; ++e) {
    VertexSet range = g.empty_set();
    std::uint64_t bits = mask(rng);
    for (int i = 0; i < n; ++i)
      if (bits & (std::uint64_t(1) << i)) range.insert(VertexId::named(i));
    g.add_concrete_edge("e" + std::to_string(e), VertexId::named(pick(rng)), std::move(range));
  }
  return g;
}

// Brute-force closure of {singletons, ranges, empty} under union/intersection.
inline std::set<VertexSet> closure_g0_tier1(const Ultragraph& g) {
  std::set<VertexSet> cur;
  cur.insert(g.empty_set());
  for (std::int64_t i = 0; i < g.num_named(); ++i) cur.insert(g.singleton(VertexId::named(i)));
  for (std::size_t e = 0; e < g.num_concrete(); ++e)
    cur.insert(g.concrete_edge(static_cast<std::int32_t>(e)).range);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VertexSet> snapshot(cur.begin(), cur.end());
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) {
        if (cur.insert(set_union(a, b)).second) changed = true;
        if (cur.insert(set_intersect(a, b)).second) changed = true;
      }
  }
  return cur;
}

// Closure of the lattice above under relative complements as well.
inline std::set<VertexSet> closure_b_tier1(const Ultragraph& g) {
  std::set<VertexSet> cur = closure_g0_tier1(g);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VertexSet> snapshot(cur.begin(), cur.end());
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) {
        if (cur.insert(set_union(a, b)).second) changed = true;
        if (cur.insert(set_intersect(a, b)).second) changed = true;
        if (cur.insert(set_minus(a, b)).second) changed = true;
      }
  }
  return cur;
}

// All nonempty subsets of a finite vertex set.
inline std::vector<VertexSet> nonempty_subsets(const Ultragraph& g, const VertexSet& ambient) {
  auto elems = ambient.finite_elements();
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << elems.size()); ++mask) {
    VertexSet s = g.empty_set();
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask & (std::uint64_t(1) << i)) s.insert(elems[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ultra::oracles

#endif  // ULTRA_TESTS_ORACLES_HPP_
