#ifndef ULTRA_TESTS_FIXTURES_HPP_
#define ULTRA_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "ultra/ultragraph.hpp"

namespace ultra::fixtures {

// v; no edges
inline Ultragraph single_vertex() {
  Ultragraph g;
  g.add_named_vertex("v");
  return g;
}

// v; e: v -> {v}
inline Ultragraph single_loop() {
  Ultragraph g;
  auto v = g.add_named_vertex("v");
  g.add_concrete_edge("e", VertexId::named(v), VertexSet::of_named(0, {v}));
  return g;
}

// v, w; e: v -> {v, w}
inline Ultragraph two_vertex() {
  Ultragraph g;
  auto v = g.add_named_vertex("v");
  auto w = g.add_named_vertex("w");
  g.add_concrete_edge("e", VertexId::named(v), VertexSet::of_named(0, {v, w}));
  return g;
}

// a, b, c; e1: a -> {b}; e2: b -> {c}
inline Ultragraph line3() {
  Ultragraph g;
  auto a = g.add_named_vertex("a");
  auto b = g.add_named_vertex("b");
  auto c = g.add_named_vertex("c");
  g.add_concrete_edge("e1", VertexId::named(a), VertexSet::of_named(0, {b}));
  g.add_concrete_edge("e2", VertexId::named(b), VertexSet::of_named(0, {c}));
  return g;
}

// v, a, b, c; e0: v -> {a, b}; ea: a -> {c}; eb: b -> {c}
inline Ultragraph ultra4() {
  Ultragraph g;
  auto v = g.add_named_vertex("v");
  auto a = g.add_named_vertex("a");
  auto b = g.add_named_vertex("b");
  auto c = g.add_named_vertex("c");
  g.add_concrete_edge("e0", VertexId::named(v), VertexSet::of_named(0, {a, b}));
  g.add_concrete_edge("ea", VertexId::named(a), VertexSet::of_named(0, {c}));
  g.add_concrete_edge("eb", VertexId::named(b), VertexSet::of_named(0, {c}));
  return g;
}

// v0 plus tail w[1], w[2], ...; e0: v0 -> {w[k] : k >= 1};
// bundle e with e[k]: w[k] -> {v0, w[k]}
inline Ultragraph infinite_fan() {
  Ultragraph g;
  auto v0 = g.add_named_vertex("v0");
  auto w = g.add_tail_family("w", false);
  g.add_concrete_edge("e0", VertexId::named(v0), VertexSet::of_tail_part(1, w, {true, {}}));
  BundleSource src;
  src.indexed = true;
  src.family = w;
  BundleRange rng;
  rng.constant_part = VertexSet::of_named(1, {v0});
  rng.indexed_families = {w};
  g.add_bundle("e", src, rng);
  return g;
}

// v plus an all-sinks tail x; e: v -> {x[k] : k >= 1}
inline Ultragraph sink_tail() {
  Ultragraph g;
  auto v = g.add_named_vertex("v");
  auto x = g.add_tail_family("x", true);
  g.add_concrete_edge("e", VertexId::named(v), VertexSet::of_tail_part(1, x, {true, {}}));
  return g;
}

// u plus tails w, x (all vertices emit); e: u -> w-tail + x-tail; f: u -> w-tail;
// bundles send every tail vertex back to u.
inline Ultragraph nested_ranges() {
  Ultragraph g;
  auto u = g.add_named_vertex("u");
  auto w = g.add_tail_family("w", false);
  auto x = g.add_tail_family("x", false);
  VertexSet both = set_union(VertexSet::of_tail_part(2, w, {true, {}}),
                             VertexSet::of_tail_part(2, x, {true, {}}));
  g.add_concrete_edge("e", VertexId::named(u), both);
  g.add_concrete_edge("f", VertexId::named(u), VertexSet::of_tail_part(2, w, {true, {}}));
  BundleSource sw;
  sw.indexed = true;
  sw.family = w;
  BundleRange back;
  back.constant_part = VertexSet::of_named(2, {u});
  g.add_bundle("bw", sw, back);
  BundleSource sx;
  sx.indexed = true;
  sx.family = x;
  g.add_bundle("bx", sx, back);
  return g;
}

// u, v; f: u -> {v}; e: v -> {v}  (a no-exit loop behind a prefix edge)
inline Ultragraph prefix_loop() {
  Ultragraph g;
  auto u = g.add_named_vertex("u");
  auto v = g.add_named_vertex("v");
  g.add_concrete_edge("f", VertexId::named(u), VertexSet::of_named(0, {v}));
  g.add_concrete_edge("e", VertexId::named(v), VertexSet::of_named(0, {v}));
  return g;
}

inline std::vector<std::pair<std::string, Ultragraph>> tier1_corpus() {
  std::vector<std::pair<std::string, Ultragraph>> out;
  out.emplace_back("single_vertex", single_vertex());
  out.emplace_back("single_loop", single_loop());
  out.emplace_back("two_vertex", two_vertex());
  out.emplace_back("line3", line3());
  out.emplace_back("ultra4", ultra4());
  out.emplace_back("prefix_loop", prefix_loop());
  return out;
}

inline std::vector<std::pair<std::string, Ultragraph>> full_corpus() {
  auto out = tier1_corpus();
  out.emplace_back("infinite_fan", infinite_fan());
  out.emplace_back("sink_tail", sink_tail());
  out.emplace_back("nested_ranges", nested_ranges());
  return out;
}

}  // namespace ultra::fixtures

#endif  // ULTRA_TESTS_FIXTURES_HPP_
