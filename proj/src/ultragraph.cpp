#include "ultra/ultragraph.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace ultra {

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

bool is_beginning_of(const Path& a, const Path& b, Path* rest) {
  if (a.size() > b.size()) return false;
  if (!std::equal(a.edges.begin(), a.edges.end(), b.edges.begin())) return false;
  if (rest) rest->edges.assign(b.edges.begin() + a.size(), b.edges.end());
  return true;
}

EdgeRef InfinitePath::edge_at(std::size_t n) const {
  if (n < prefix.size()) return prefix.edges[n];
  return cycle.edges[(n - prefix.size()) % cycle.size()];
}

bool EdgeSetDesc::is_finite() const {
  for (const auto& p : per_bundle)
    if (p.cofinite) return false;
  return true;
}

std::int64_t EdgeSetDesc::finite_size() const {
  assert(is_finite());
  std::int64_t n = static_cast<std::int64_t>(concrete.size());
  for (const auto& p : per_bundle) n += static_cast<std::int64_t>(p.idx.size());
  return n;
}

bool EdgeSetDesc::is_empty() const {
  if (!concrete.empty()) return false;
  for (const auto& p : per_bundle)
    if (!p.is_empty()) return false;
  return true;
}

bool EdgeSetDesc::contains(const Ultragraph&, EdgeRef e) const {
  if (e.is_concrete())
    return std::binary_search(concrete.begin(), concrete.end(), e.concrete);
  return per_bundle[e.bundle].contains(e.index);
}

std::vector<EdgeRef> EdgeSetDesc::finite_edges() const {
  assert(is_finite());
  std::vector<EdgeRef> out;
  for (auto id : concrete) out.push_back(EdgeRef::concrete_edge(id));
  for (std::size_t b = 0; b < per_bundle.size(); ++b)
    for (auto k : per_bundle[b].idx)
      out.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
  return out;
}

std::int64_t Ultragraph::add_named_vertex(std::string name) {
  named_names_.push_back(std::move(name));
  caches_ready_ = false;
  return static_cast<std::int64_t>(named_names_.size()) - 1;
}

std::int32_t Ultragraph::add_tail_family(std::string name, bool all_sinks) {
  families_.push_back({std::move(name), all_sinks});
  caches_ready_ = false;
  return static_cast<std::int32_t>(families_.size()) - 1;
}

std::int32_t Ultragraph::add_concrete_edge(std::string name, VertexId source, VertexSet range) {
  concrete_.push_back({std::move(name), source, std::move(range)});
  caches_ready_ = false;
  return static_cast<std::int32_t>(concrete_.size()) - 1;
}

std::int32_t Ultragraph::add_bundle(std::string name, BundleSource source, BundleRange range) {
  bundles_.push_back({std::move(name), source, std::move(range)});
  caches_ready_ = false;
  return static_cast<std::int32_t>(bundles_.size()) - 1;
}

Tier Ultragraph::tier() const {
  return (families_.empty() && bundles_.empty()) ? Tier::kFinite : Tier::kNormalForm;
}

ValidationReport Ultragraph::validate() const {
  ValidationReport rep;
  rep.tier = tier();
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.diagnostics.push_back(std::move(msg));
  };
  auto check_vertex = [&](VertexId v, const std::string& where) {
    if (v.is_named()) {
      if (v.index < 0 || v.index >= num_named()) fail(where + ": undeclared named vertex");
    } else {
      if (v.family < 0 || v.family >= static_cast<std::int32_t>(num_families()))
        fail(where + ": undeclared tail family");
      else if (v.index < 1)
        fail(where + ": tail index must be >= 1");
    }
  };
  auto check_set = [&](const VertexSet& s, const std::string& where) {
    if (s.num_families() != num_families()) {
      fail(where + ": vertex set built over a different universe");
      return;
    }
    for (auto id : s.named())
      if (id < 0 || id >= num_named()) fail(where + ": undeclared named vertex in set");
    for (std::uint32_t f = 0; f < s.num_families(); ++f)
      for (auto k : s.tail(f).idx)
        if (k < 1) fail(where + ": tail index must be >= 1");
  };
  for (const auto& e : concrete_) {
    check_vertex(e.source, "edge " + e.name + " source");
    check_set(e.range, "edge " + e.name + " range");
    if (e.range.is_empty()) fail("edge " + e.name + ": range must be nonempty");
  }
  for (const auto& b : bundles_) {
    if (b.source.indexed) {
      if (b.source.family < 0 || b.source.family >= static_cast<std::int32_t>(num_families()))
        fail("bundle " + b.name + ": undeclared source family");
    } else {
      check_vertex(b.source.constant, "bundle " + b.name + " source");
    }
    check_set(b.range.constant_part, "bundle " + b.name + " range");
    for (auto f : b.range.indexed_families)
      if (f < 0 || f >= static_cast<std::int32_t>(num_families()))
        fail("bundle " + b.name + ": undeclared indexed range family");
    if (b.range.constant_part.is_empty() && b.range.indexed_families.empty())
      fail("bundle " + b.name + ": range must be nonempty");
  }
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(num_families()); ++f) {
    if (!families_[f].all_sinks) continue;
    for (const auto& b : bundles_)
      if (b.source.indexed && b.source.family == f)
        fail("family " + families_[f].name + " is all-sinks but bundle " + b.name +
             " is sourced at it");
    for (const auto& e : concrete_)
      if (!e.source.is_named() && e.source.family == f)
        fail("family " + families_[f].name + " is all-sinks but edge " + e.name +
             " is sourced at it");
  }
  return rep;
}

VertexSet Ultragraph::universe() const {
  return VertexSet::universe(num_families(), num_named());
}

VertexId Ultragraph::source(EdgeRef e) const {
  if (e.is_concrete()) return concrete_[e.concrete].source;
  const auto& b = bundles_[e.bundle];
  if (b.source.indexed) return VertexId::tail(b.source.family, e.index);
  return b.source.constant;
}

VertexSet Ultragraph::range(EdgeRef e) const {
  if (e.is_concrete()) return concrete_[e.concrete].range;
  const auto& b = bundles_[e.bundle];
  VertexSet out = b.range.constant_part;
  for (auto f : b.range.indexed_families) out.insert(VertexId::tail(f, e.index));
  return out;
}

VertexSet Ultragraph::path_range(const Path& p) const {
  if (p.empty()) return universe();
  return range(p.edges.back());
}

bool Ultragraph::path_composable(const Path& p) const {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!range(p.edges[i]).contains(source(p.edges[i + 1]))) return false;
  return true;
}

EdgeSetDesc Ultragraph::epsilon(const VertexSet& a) const {
  EdgeSetDesc out;
  for (std::size_t id = 0; id < concrete_.size(); ++id)
    if (a.contains(concrete_[id].source))
      out.concrete.push_back(static_cast<std::int32_t>(id));
  out.per_bundle.resize(bundles_.size());
  for (std::size_t b = 0; b < bundles_.size(); ++b) {
    const auto& src = bundles_[b].source;
    if (src.indexed) {
      out.per_bundle[b] = a.tail(src.family);
    } else if (a.contains(src.constant)) {
      out.per_bundle[b] = {true, {}};
    }
  }
  return out;
}

void Ultragraph::compute_caches() const {
  emitting_ = VertexSet::empty_set(num_families());
  for (const auto& e : concrete_) emitting_.insert(e.source);
  for (const auto& b : bundles_) {
    if (b.source.indexed) {
      emitting_ = set_union(
          emitting_, VertexSet::of_tail_part(num_families(), b.source.family, {true, {}}));
    } else {
      emitting_.insert(b.source.constant);
    }
  }

  mentioned_.assign(num_families(), {});
  auto note_vertex = [&](VertexId v) {
    if (!v.is_named()) mentioned_[v.family].push_back(v.index);
  };
  auto note_set = [&](const VertexSet& s) {
    for (std::uint32_t f = 0; f < s.num_families(); ++f)
      for (auto k : s.tail(f).idx) mentioned_[f].push_back(k);
  };
  for (const auto& e : concrete_) {
    note_vertex(e.source);
    note_set(e.range);
  }
  for (const auto& b : bundles_) {
    if (!b.source.indexed) note_vertex(b.source.constant);
    note_set(b.range.constant_part);
  }
  for (auto& v : mentioned_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  caches_ready_ = true;
}

const VertexSet& Ultragraph::emitting_universe() const {
  if (!caches_ready_) compute_caches();
  return emitting_;
}

VertexSet Ultragraph::sink_universe() const {
  return set_minus(universe(), emitting_universe());
}

bool Ultragraph::is_sink(VertexId v) const { return !emitting_universe().contains(v); }

bool Ultragraph::is_infinite_emitter_vertex(VertexId v) const {
  for (const auto& b : bundles_)
    if (!b.source.indexed && b.source.constant == v) return true;
  return false;
}

bool Ultragraph::is_regular_vertex(VertexId v) const {
  if (is_infinite_emitter_vertex(v)) return false;
  return emitting_universe().contains(v);
}

const std::vector<std::int64_t>& Ultragraph::mentioned_indices(std::int32_t f) const {
  if (!caches_ready_) compute_caches();
  return mentioned_[f];
}

std::vector<VertexId> Ultragraph::canonical_vertices(std::int64_t index_bound) const {
  std::vector<VertexId> out;
  for (std::int64_t i = 0; i < num_named(); ++i) out.push_back(VertexId::named(i));
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(num_families()); ++f) {
    std::set<std::int64_t> ks(mentioned_indices(f).begin(), mentioned_indices(f).end());
    for (std::int64_t k = 1; k <= index_bound; ++k) ks.insert(k);
    for (auto k : ks) out.push_back(VertexId::tail(f, k));
  }
  return out;
}

std::vector<EdgeRef> Ultragraph::out_edges(VertexId v, std::int64_t index_bound) const {
  std::vector<EdgeRef> out;
  for (std::size_t id = 0; id < concrete_.size(); ++id)
    if (concrete_[id].source == v) out.push_back(EdgeRef::concrete_edge(static_cast<std::int32_t>(id)));
  for (std::size_t b = 0; b < bundles_.size(); ++b) {
    const auto& src = bundles_[b].source;
    if (src.indexed) {
      if (!v.is_named() && v.family == src.family)
        out.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), v.index));
    } else if (src.constant == v) {
      std::set<std::int64_t> ks;
      for (auto f : bundles_[b].range.indexed_families)
        for (auto k : mentioned_indices(f)) ks.insert(k);
      for (std::int64_t k = 1; k <= index_bound; ++k) ks.insert(k);
      for (auto k : ks) out.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Ultragraph::vertex_name(VertexId v) const {
  if (v.is_named()) return named_names_[v.index];
  return families_[v.family].name + "[" + std::to_string(v.index) + "]";
}

std::string Ultragraph::edge_name(EdgeRef e) const {
  if (e.is_concrete()) return concrete_[e.concrete].name;
  return bundles_[e.bundle].name + "[" + std::to_string(e.index) + "]";
}

VertexSet relative_range(const Ultragraph& g, const VertexSet& a, EdgeRef e) {
  if (a.contains(g.source(e))) return g.range(e);
  return g.empty_set();
}

VertexSet relative_range(const Ultragraph& g, const VertexSet& a, const Path& alpha) {
  VertexSet cur = a;
  for (const auto& e : alpha.edges) {
    cur = relative_range(g, cur, e);
    if (cur.is_empty()) break;
  }
  return cur;
}

std::optional<Ultrapath> concat_ultrapaths(const Ultragraph& g, const Ultrapath& x,
                                           const Ultrapath& y) {
  const bool x_len = x.length() >= 1;
  const bool y_len = y.length() >= 1;
  if (x_len && y_len) {
    if (!x.terminal.contains(g.path_source(y.path))) return std::nullopt;
    return Ultrapath{concat(x.path, y.path), y.terminal};
  }
  if (!x_len && !y_len) {
    VertexSet m = set_intersect(x.terminal, y.terminal);
    if (m.is_empty()) return std::nullopt;
    return Ultrapath{{}, m};
  }
  if (!x_len) {  // x in G^0, |y| >= 1
    if (!x.terminal.contains(g.path_source(y.path))) return std::nullopt;
    return y;
  }
  // |x| >= 1, y in G^0
  VertexSet m = set_intersect(x.terminal, y.terminal);
  if (m.is_empty()) return std::nullopt;
  return Ultrapath{x.path, m};
}

namespace {

Path primitive_cycle(const Path& c) {
  const std::size_t n = c.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      if (c.edges[i] != c.edges[i % d]) ok = false;
    if (ok) return Path{{c.edges.begin(), c.edges.begin() + d}};
  }
  return c;
}

}  // namespace

InfinitePath make_infinite_path(const Ultragraph& g, Path prefix, Path cycle) {
  (void)g;
  assert(!cycle.empty());
  cycle = primitive_cycle(cycle);
  while (!prefix.empty() && prefix.edges.back() == cycle.edges.back()) {
    prefix.edges.pop_back();
    cycle.edges.insert(cycle.edges.begin(), cycle.edges.back());
    cycle.edges.pop_back();
  }
  return InfinitePath{std::move(prefix), std::move(cycle)};
}

bool infinite_path_valid(const Ultragraph& g, const InfinitePath& w) {
  if (w.cycle.empty()) return false;
  Path joined = concat(concat(w.prefix, w.cycle), w.cycle);
  return g.path_composable(joined);
}

InfinitePath drop_first_edge(const Ultragraph& g, const InfinitePath& w) {
  if (!w.prefix.empty()) {
    Path p{{w.prefix.edges.begin() + 1, w.prefix.edges.end()}};
    return make_infinite_path(g, std::move(p), w.cycle);
  }
  Path rotated = w.cycle;
  rotated.edges.push_back(rotated.edges.front());
  rotated.edges.erase(rotated.edges.begin());
  return make_infinite_path(g, {}, std::move(rotated));
}

InfinitePath prepend(const Ultragraph& g, const Path& alpha, const InfinitePath& w) {
  return make_infinite_path(g, concat(alpha, w.prefix), w.cycle);
}

std::optional<ExitWitness> find_exit(const Ultragraph& g, const Path& loop) {
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    VertexSet r = g.range(loop.edges[i]);
    EdgeRef next = loop.edges[(i + 1) % n];
    // sink exit
    VertexSet sinks = set_minus(r, g.emitting_universe());
    if (auto v = sinks.least_element()) return ExitWitness{i, std::nullopt, *v};
    // edge exit: any emitted edge other than the loop continuation
    EdgeSetDesc eps = g.epsilon(r);
    for (auto id : eps.concrete) {
      EdgeRef e = EdgeRef::concrete_edge(id);
      if (e != next) return ExitWitness{i, e, std::nullopt};
    }
    for (std::size_t b = 0; b < eps.per_bundle.size(); ++b) {
      const auto& part = eps.per_bundle[b];
      if (part.is_empty()) continue;
      if (!part.cofinite && part.idx.size() == 1 && !next.is_concrete() &&
          next.bundle == static_cast<std::int32_t>(b) && next.index == part.idx[0])
        continue;  // the only emitted instance is the loop edge itself
      // pick a witness instance distinct from `next`
      if (!part.cofinite) {
        for (auto k : part.idx) {
          EdgeRef e = EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k);
          if (e != next) return ExitWitness{i, e, std::nullopt};
        }
      } else {
        std::int64_t k = 1;
        while (true) {
          if (part.contains(k)) {
            EdgeRef e = EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k);
            if (e != next) return ExitWitness{i, e, std::nullopt};
          }
          ++k;
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

Path least_rotation(const Path& loop) {
  Path best = loop;
  Path cur = loop;
  for (std::size_t i = 1; i < loop.size(); ++i) {
    cur.edges.push_back(cur.edges.front());
    cur.edges.erase(cur.edges.begin());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

LoopReport loops_without_exits(const Ultragraph& g, std::size_t max_len,
                               std::int64_t index_bound) {
  LoopReport rep;
  rep.truncated = g.num_bundles() > 0;
  std::set<Path> seen;

  std::vector<VertexId> starts = g.canonical_vertices(index_bound);
  // DFS over vertex-simple edge sequences.
  struct Frame {
    Path path;
    std::vector<VertexId> sources;
  };
  for (VertexId start : starts) {
    std::vector<Frame> stack;
    stack.push_back({{}, {start}});
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      VertexId at = fr.sources.back();
      for (EdgeRef e : g.out_edges(at, index_bound)) {
        VertexSet r = g.range(e);
        Path next_path = fr.path;
        next_path.edges.push_back(e);
        // close the loop?
        if (r.contains(start)) {
          Path canon = least_rotation(next_path);
          if (seen.insert(canon).second) {
            auto exit = find_exit(g, canon);
            if (exit)
              rep.with_exits.push_back({canon, exit});
            else
              rep.without_exits.push_back({canon, std::nullopt});
          }
        }
        if (next_path.size() >= max_len) continue;
        // continue through canonical range vertices not yet visited
        for (VertexId w : g.canonical_vertices(index_bound)) {
          if (!r.contains(w)) continue;
          if (std::find(fr.sources.begin(), fr.sources.end(), w) != fr.sources.end()) continue;
          Frame nf;
          nf.path = next_path;
          nf.sources = fr.sources;
          nf.sources.push_back(w);
          stack.push_back(std::move(nf));
        }
      }
    }
  }
  auto by_loop = [](const LoopInfo& a, const LoopInfo& b) { return a.loop < b.loop; };
  std::sort(rep.without_exits.begin(), rep.without_exits.end(), by_loop);
  std::sort(rep.with_exits.begin(), rep.with_exits.end(), by_loop);
  return rep;
}

namespace {

// One edge step: vertices reachable from `sources` along a single edge.
VertexSet edge_image(const Ultragraph& g, const VertexSet& sources) {
  VertexSet img = g.empty_set();
  for (std::size_t id = 0; id < g.num_concrete(); ++id) {
    const auto& e = g.concrete_edge(static_cast<std::int32_t>(id));
    if (sources.contains(e.source)) img = set_union(img, e.range);
  }
  for (std::size_t b = 0; b < g.num_bundles(); ++b) {
    const auto& bd = g.bundle(static_cast<std::int32_t>(b));
    if (bd.source.indexed) {
      const auto& part = sources.tail(bd.source.family);
      if (part.is_empty()) continue;
      img = set_union(img, bd.range.constant_part);
      // instance k targets tail(f, k), so the index set carries over
      for (auto f : bd.range.indexed_families)
        img = set_union(img, VertexSet::of_tail_part(g.num_families(), f, part));
    } else if (sources.contains(bd.source.constant)) {
      img = set_union(img, bd.range.constant_part);
      for (auto f : bd.range.indexed_families)
        img = set_union(img, VertexSet::of_tail_part(g.num_families(), f, {true, {}}));
    }
  }
  return img;
}

}  // namespace

VertexSet reachable_from(const Ultragraph& g, VertexId v) {
  VertexSet reach = edge_image(g, g.singleton(v));
  const std::size_t cap = 64 + 2 * (static_cast<std::size_t>(g.num_named()) +
                                    g.num_families() * (g.num_families() + 2));
  for (std::size_t it = 0; it < cap; ++it) {
    VertexSet next = set_union(reach, edge_image(g, reach));
    if (next == reach) return reach;
    reach = std::move(next);
  }
  throw TierError("reachability did not stabilize within the iteration budget");
}

ConnectivityReport is_connected(const Ultragraph& g) {
  ConnectivityReport rep;
  VertexSet univ = g.universe();
  // Start vertices: named, every mentioned tail index, and one fresh generic
  // index per family.  Unmentioned indices of a family are interchangeable by
  // the symmetry of bundle patterns, so one representative decides them all.
  std::vector<VertexId> starts;
  for (std::int64_t i = 0; i < g.num_named(); ++i) starts.push_back(VertexId::named(i));
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.num_families()); ++f) {
    const auto& ks = g.mentioned_indices(f);
    for (auto k : ks) starts.push_back(VertexId::tail(f, k));
    starts.push_back(VertexId::tail(f, ks.empty() ? 1 : ks.back() + 1));
  }
  for (VertexId v : starts) {
    VertexSet reach = reachable_from(g, v);
    reach.insert(v);  // the trivial length-zero path covers v itself
    VertexSet missing = set_minus(univ, reach);
    if (!missing.is_empty()) {
      rep.connected = false;
      VertexId w = *missing.least_element();
      rep.counterexample = {v, w};
      VertexSet back = reachable_from(g, w);
      back.insert(w);
      rep.reverse_holds = back.contains(v);
      return rep;
    }
  }
  return rep;
}

std::vector<Path> enumerate_paths(const Ultragraph& g, std::size_t max_len,
                                  std::int64_t index_bound) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (VertexId v : g.canonical_vertices(index_bound))
    for (EdgeRef e : g.out_edges(v, index_bound)) frontier.push_back(Path{{e}});
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  while (!frontier.empty()) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (out.back().size() >= max_len) break;
    std::vector<Path> next;
    for (const auto& p : frontier) {
      if (p.size() >= max_len) continue;
      VertexSet r = g.path_range(p);
      for (VertexId v : g.canonical_vertices(index_bound)) {
        if (!r.contains(v)) continue;
        for (EdgeRef e : g.out_edges(v, index_bound)) {
          Path q = p;
          q.edges.push_back(e);
          next.push_back(std::move(q));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<InfinitePath> enumerate_infinite_paths(const Ultragraph& g, std::size_t bound,
                                                   std::int64_t index_bound) {
  std::set<InfinitePath> out;
  auto paths = enumerate_paths(g, bound, index_bound);
  // cycles: paths gamma with s(gamma) in r(gamma)
  for (const auto& c : paths) {
    if (!g.range(c.edges.back()).contains(g.source(c.edges.front()))) continue;
    InfinitePath w = make_infinite_path(g, {}, c);
    if (w.prefix.size() + w.cycle.size() <= bound) out.insert(w);
    // with prefixes
    for (const auto& p : paths) {
      if (p.size() + c.size() > bound) continue;
      if (!g.range(p.edges.back()).contains(g.source(c.edges.front()))) continue;
      InfinitePath wp = make_infinite_path(g, p, c);
      if (wp.prefix.size() + wp.cycle.size() <= bound) out.insert(wp);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace ultra
