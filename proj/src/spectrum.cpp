#include "ultra/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace ultra {

bool TightFilter::word_begins_with(const Path& beta) const {
  if (!infinite_) return is_beginning_of(beta, alpha_);
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (word_.edge_at(i) != beta.edges[i]) return false;
  return true;
}

bool contains_idempotent(const Ultragraph& g, const TightFilter& xi, const SElement& e) {
  if (e.is_zero()) return false;
  if (!e.is_idempotent()) throw DomainError("filter membership is asked of idempotents");
  const Path& beta = e.alpha();
  if (!xi.word_begins_with(beta)) return false;
  if (!xi.is_infinite_type() && beta.size() == xi.alpha().size())
    return xi.top().contains(e.middle());
  return e.middle().contains(g.source(xi.edge_at(beta.size())));
}

bool contains_idempotent_stream(const Ultragraph& g,
                                const std::function<EdgeRef(std::size_t)>& word_at,
                                const SElement& e) {
  if (e.is_zero()) return false;
  if (!e.is_idempotent()) throw DomainError("filter membership is asked of idempotents");
  const Path& beta = e.alpha();
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (word_at(i) != beta.edges[i]) return false;
  return e.middle().contains(g.source(word_at(beta.size())));
}

TightnessResult is_tight(const Ultragraph& g, const Path& alpha, const UltrafilterDesc& f) {
  (void)alpha;
  if (f.kind == UltrafilterDesc::Kind::kPrincipal) {
    // the principal filter's least member is the singleton
    if (g.is_sink(f.vertex)) return {true, 1};
    if (g.is_infinite_emitter_vertex(f.vertex)) return {true, 2};
    return {false, 0};
  }
  // members are the sets containing a cofinite part of the base
  if (!set_intersect(f.base, g.emitting_universe()).is_finite()) return {true, 2};
  if (!set_minus(f.base, g.emitting_universe()).is_finite()) return {true, 3};
  return {false, 0};
}

bool tight_filter_valid(const Ultragraph& g, const GeneralizedVertices& gv,
                        const TightFilter& xi) {
  if (xi.is_infinite_type()) return infinite_path_valid(g, xi.word());
  if (!g.path_composable(xi.alpha())) return false;
  VertexSet r = g.path_range(xi.alpha());
  const auto& f = xi.top();
  if (f.kind == UltrafilterDesc::Kind::kPrincipal) {
    if (!r.contains(f.vertex)) return false;
  } else {
    if (f.base.is_finite()) return false;
    if (!set_minus(f.base, r).is_finite()) return false;
    auto mie = minimal_infinite_emitters(g, gv);
    auto ms = minimal_sinks(g, gv);
    if (std::find(mie.begin(), mie.end(), f.base) == mie.end() &&
        std::find(ms.begin(), ms.end(), f.base) == ms.end())
      return false;
  }
  return is_tight(g, xi.alpha(), f).tight;
}

std::vector<VertexSet> minimal_infinite_emitters(const Ultragraph& g,
                                                 const GeneralizedVertices& gv) {
  std::set<VertexSet> out;
  // singletons of vertices with infinite valence
  for (std::size_t b = 0; b < g.num_bundles(); ++b) {
    const auto& src = g.bundle(static_cast<std::int32_t>(b)).source;
    if (!src.indexed) out.insert(g.singleton(src.constant));
  }
  // cores with no smaller core, only finite-valence vertices, infinite valence
  for (const auto& c : gv.cores()) {
    bool least = true;
    for (const auto& c2 : gv.cores())
      if (c2 != c && c2.subset_of(c)) {
        least = false;
        break;
      }
    if (!least) continue;
    bool has_heavy_vertex = false;
    for (std::size_t b = 0; b < g.num_bundles(); ++b) {
      const auto& src = g.bundle(static_cast<std::int32_t>(b)).source;
      if (!src.indexed && c.contains(src.constant)) {
        has_heavy_vertex = true;
        break;
      }
    }
    if (has_heavy_vertex) continue;
    if (g.epsilon(c).is_finite()) continue;
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

std::vector<VertexSet> minimal_sinks(const Ultragraph& g, const GeneralizedVertices& gv) {
  std::set<VertexSet> out;
  for (const auto& c : gv.cores()) {
    bool least = true;
    for (const auto& c2 : gv.cores())
      if (c2 != c && c2.subset_of(c)) {
        least = false;
        break;
      }
    if (!least) continue;
    if (!g.epsilon(c).is_finite()) continue;
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

namespace {

// Representative instances of every edge: concrete edges, plus for each
// bundle the mentioned indices and one fresh one.
std::vector<EdgeRef> representative_edges(const Ultragraph& g) {
  std::vector<EdgeRef> out;
  for (std::size_t id = 0; id < g.num_concrete(); ++id)
    out.push_back(EdgeRef::concrete_edge(static_cast<std::int32_t>(id)));
  std::int64_t fresh = 1;
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.num_families()); ++f)
    if (!g.mentioned_indices(f).empty())
      fresh = std::max(fresh, g.mentioned_indices(f).back() + 1);
  for (std::size_t b = 0; b < g.num_bundles(); ++b) {
    const auto& bd = g.bundle(static_cast<std::int32_t>(b));
    std::set<std::int64_t> ks;
    if (bd.source.indexed)
      for (auto k : g.mentioned_indices(bd.source.family)) ks.insert(k);
    for (auto f : bd.range.indexed_families)
      for (auto k : g.mentioned_indices(f)) ks.insert(k);
    ks.insert(fresh);
    for (auto k : ks) out.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
  }
  return out;
}

}  // namespace

Rfum2Report check_rfum2(const Ultragraph& g, const GeneralizedVertices& gv) {
  Rfum2Report rep;
  rep.uncovered = g.empty_set();
  auto mie = minimal_infinite_emitters(g, gv);
  auto ms = minimal_sinks(g, gv);
  std::vector<VertexSet> pool = mie;
  pool.insert(pool.end(), ms.begin(), ms.end());

  for (EdgeRef e : representative_edges(g)) {
    VertexSet r = g.range(e);
    Rfum2EdgeReport er;
    er.edge = e;
    VertexSet covered = g.empty_set();
    for (const auto& b : pool)
      if (b.subset_of(r)) {
        er.cover.push_back(b);
        covered = set_union(covered, b);
      }
    VertexSet residual = set_minus(r, covered);
    if (!residual.is_finite()) {
      rep.holds = false;
      rep.counterexample = e;
      rep.uncovered = residual;
      return rep;
    }
    er.singletons = residual;
    rep.decompositions.push_back(std::move(er));
  }
  return rep;
}

namespace {

UltrafilterEnumeration enumerate_ultrafilters_from(const Ultragraph& g,
                                                   const std::vector<VertexSet>& mie,
                                                   const std::vector<VertexSet>& ms,
                                                   bool rfum2_holds, const VertexSet& r_alpha,
                                                   std::int64_t index_bound) {
  UltrafilterEnumeration out;
  // principal part
  for (auto id : r_alpha.named())
    out.filters.push_back(UltrafilterDesc::principal(VertexId::named(id)));
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.num_families()); ++f) {
    const auto& part = r_alpha.tail(f);
    if (!part.cofinite) {
      for (auto k : part.idx)
        out.filters.push_back(UltrafilterDesc::principal(VertexId::tail(f, k)));
    } else {
      out.truncated = true;
      std::set<std::int64_t> ks(g.mentioned_indices(f).begin(), g.mentioned_indices(f).end());
      for (std::int64_t k = 1; k <= index_bound; ++k) ks.insert(k);
      for (auto k : ks)
        if (part.contains(k))
          out.filters.push_back(UltrafilterDesc::principal(VertexId::tail(f, k)));
    }
  }
  // cofinite part: minimal emitters and minimal sinks inside the range
  for (const auto& b : mie)
    if (!b.is_finite() && b.subset_of(r_alpha))
      out.filters.push_back(UltrafilterDesc::cofinite_on(b));
  for (const auto& b : ms)
    if (b.subset_of(r_alpha)) out.filters.push_back(UltrafilterDesc::cofinite_on(b));
  if (!r_alpha.is_finite()) out.complete = rfum2_holds;
  return out;
}

}  // namespace

UltrafilterEnumeration enumerate_ultrafilters(const Ultragraph& g, const GeneralizedVertices& gv,
                                              const VertexSet& r_alpha,
                                              std::int64_t index_bound) {
  bool rfum2_holds = r_alpha.is_finite() || check_rfum2(g, gv).holds;
  return enumerate_ultrafilters_from(g, minimal_infinite_emitters(g, gv), minimal_sinks(g, gv),
                                     rfum2_holds, r_alpha, index_bound);
}

TightEnumeration enumerate_tight_finite_type(const Ultragraph& g, const GeneralizedVertices& gv,
                                             std::size_t max_len, std::int64_t index_bound) {
  TightEnumeration out;
  out.truncated = g.num_bundles() > 0;  // the path pool itself is truncated
  auto mie = minimal_infinite_emitters(g, gv);
  auto ms = minimal_sinks(g, gv);
  bool rfum2_holds = check_rfum2(g, gv).holds;
  std::vector<Path> words;
  words.push_back({});
  for (auto& p : enumerate_paths(g, max_len, index_bound)) words.push_back(std::move(p));
  for (const auto& alpha : words) {
    auto uf = enumerate_ultrafilters_from(g, mie, ms, rfum2_holds, g.path_range(alpha),
                                          index_bound);
    out.complete = out.complete && uf.complete;
    out.truncated = out.truncated || uf.truncated;
    for (auto& f : uf.filters) {
      auto t = is_tight(g, alpha, f);
      if (!t.tight) continue;
      out.filters.push_back(TightFilter::finite(alpha, std::move(f)));
      out.reasons.push_back(t.reason);
    }
  }
  return out;
}

TightFilter embed_boundary(const Ultragraph& g, const BoundaryPoint& y) {
  if (y.infinite) {
    if (!infinite_path_valid(g, y.word)) throw DomainError("invalid infinite path");
    return TightFilter::infinite(y.word);
  }
  if (!g.is_sink(y.sink)) throw DomainError("terminal vertex is not a sink");
  if (!g.path_range(y.alpha).contains(y.sink))
    throw DomainError("terminal vertex must lie in the path range");
  return TightFilter::finite(y.alpha, UltrafilterDesc::principal(y.sink));
}

bool cylinder_membership(const Ultragraph& g, const TightFilter& xi, const Cylinder& c) {
  if (!contains_idempotent(g, xi, c.base)) return false;
  for (const auto& e : c.exclusions)
    if (contains_idempotent(g, xi, e)) return false;
  return true;
}

namespace {

struct WitnessSearch {
  const Ultragraph& g;
  std::vector<std::pair<Path, VertexSet>> constraints;  // exclusion words extending the base
  std::size_t depth_limit = 0;
  std::vector<std::set<std::int64_t>> family_specials;  // per family
  std::map<std::int32_t, std::set<std::int64_t>> bundle_specials;  // word instances per bundle
  std::int64_t fresh = 1;

  explicit WitnessSearch(const Ultragraph& graph) : g(graph) {
    family_specials.resize(g.num_families());
    for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.num_families()); ++f)
      for (auto k : g.mentioned_indices(f)) note_family_index(f, k);
  }

  void note_family_index(std::int32_t f, std::int64_t k) {
    family_specials[f].insert(k);
    fresh = std::max(fresh, k + 1);
  }
  void note_set(const VertexSet& s) {
    for (std::uint32_t f = 0; f < s.num_families(); ++f)
      for (auto k : s.tail(f).idx) note_family_index(static_cast<std::int32_t>(f), k);
  }
  void note_word(const Path& p) {
    for (const auto& e : p.edges)
      if (!e.is_concrete()) {
        bundle_specials[e.bundle].insert(e.index);
        fresh = std::max(fresh, e.index + 1);
      }
  }

  VertexSet fold_exclusions(const Path& word, const VertexSet& allowed) const {
    VertexSet out = allowed;
    for (const auto& [delta, cset] : constraints)
      if (delta == word) out = set_minus(out, cset);
    return out;
  }

  // Deterministic candidate continuations from `allowed`, complete up to the
  // interchangeability of unmentioned bundle indices.
  std::vector<EdgeRef> candidate_edges(const VertexSet& allowed) const {
    std::vector<EdgeRef> out;
    for (std::size_t id = 0; id < g.num_concrete(); ++id)
      if (allowed.contains(g.concrete_edge(static_cast<std::int32_t>(id)).source))
        out.push_back(EdgeRef::concrete_edge(static_cast<std::int32_t>(id)));
    for (std::size_t b = 0; b < g.num_bundles(); ++b) {
      const auto& bd = g.bundle(static_cast<std::int32_t>(b));
      std::set<std::int64_t> ks;
      if (auto it = bundle_specials.find(static_cast<std::int32_t>(b));
          it != bundle_specials.end())
        ks = it->second;
      if (bd.source.indexed)
        ks.insert(family_specials[bd.source.family].begin(),
                  family_specials[bd.source.family].end());
      for (auto f : bd.range.indexed_families)
        ks.insert(family_specials[f].begin(), family_specials[f].end());
      ks.insert(fresh);
      for (auto k : ks) {
        EdgeRef e = EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k);
        if (allowed.contains(g.source(e))) out.push_back(e);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Least emitted edge, over all instances (not only candidates).
  std::optional<EdgeRef> least_edge(const VertexSet& allowed) const {
    std::optional<EdgeRef> best;
    auto offer = [&](EdgeRef e) {
      if (!best || e < *best) best = e;
    };
    for (std::size_t id = 0; id < g.num_concrete(); ++id)
      if (allowed.contains(g.concrete_edge(static_cast<std::int32_t>(id)).source))
        offer(EdgeRef::concrete_edge(static_cast<std::int32_t>(id)));
    for (std::size_t b = 0; b < g.num_bundles(); ++b) {
      const auto& bd = g.bundle(static_cast<std::int32_t>(b));
      if (bd.source.indexed) {
        const auto& part = allowed.tail(bd.source.family);
        if (part.is_empty()) continue;
        std::int64_t k;
        if (!part.cofinite) {
          k = part.idx.front();
        } else {
          k = 1;
          while (!part.contains(k)) ++k;
        }
        offer(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
      } else if (allowed.contains(bd.source.constant)) {
        offer(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), 1));
      }
    }
    return best;
  }

  // Unconstrained extension to a sink or an eventually periodic tail.
  BoundaryPoint greedy_extend(Path word, VertexSet allowed) const {
    std::vector<VertexId> sources;
    sources.reserve(word.size());
    for (const auto& e : word.edges) sources.push_back(g.source(e));
    std::size_t cap = 8 + 4 * (static_cast<std::size_t>(g.num_named()) + g.num_families());
    for (const auto& s : family_specials) cap += 4 * (s.size() + 2);
    for (std::size_t step = 0; step < cap; ++step) {
      VertexSet sinks = set_minus(allowed, g.emitting_universe());
      if (auto v = sinks.least_element()) return BoundaryPoint::sink_terminal(word, *v);
      auto e = least_edge(allowed);
      if (!e) throw ExtensionStuckError("no continuation from a nonempty vertex set");
      VertexId v = g.source(*e);
      for (std::size_t j = 0; j < sources.size(); ++j) {
        if (sources[j] != v) continue;
        Path prefix{{word.edges.begin(), word.edges.begin() + j}};
        Path cycle{{word.edges.begin() + j, word.edges.end()}};
        return BoundaryPoint::infinite_path(make_infinite_path(g, prefix, cycle));
      }
      sources.push_back(v);
      word.edges.push_back(*e);
      allowed = g.range(*e);
    }
    throw ExtensionStuckError("greedy extension did not close within the step budget");
  }

  std::optional<BoundaryPoint> search(const Path& word, const VertexSet& allowed_raw) const {
    VertexSet allowed = fold_exclusions(word, allowed_raw);
    if (allowed.is_empty()) return std::nullopt;
    VertexSet sinks = set_minus(allowed, g.emitting_universe());
    if (auto v = sinks.least_element()) return BoundaryPoint::sink_terminal(word, *v);
    if (word.size() >= depth_limit) return greedy_extend(word, allowed);
    for (EdgeRef e : candidate_edges(allowed)) {
      Path next = word;
      next.edges.push_back(e);
      if (auto found = search(next, g.range(e))) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<BoundaryPoint> cylinder_witness(const Ultragraph& g, const GeneralizedVertices& gv,
                                              const Cylinder& c) {
  (void)gv;
  if (c.base.is_zero()) return std::nullopt;
  if (!c.base.is_idempotent()) throw DomainError("cylinders are built from idempotents");
  const Path& beta = c.base.alpha();

  WitnessSearch ws(g);
  ws.note_word(beta);
  ws.note_set(c.base.middle());
  for (const auto& e : c.exclusions) {
    if (e.is_zero()) continue;  // excluding the zero idempotent is vacuous
    if (!e.is_idempotent()) throw DomainError("cylinders are built from idempotents");
    const Path& delta = e.alpha();
    if (delta.size() < beta.size() && is_beginning_of(delta, beta)) {
      // every filter over the base contains this idempotent, or none does
      if (e.middle().contains(g.source(beta.edges[delta.size()]))) return std::nullopt;
      continue;
    }
    if (!is_beginning_of(beta, delta)) continue;  // never a beginning of a word over the base
    ws.note_word(delta);
    ws.note_set(e.middle());
    ws.constraints.emplace_back(delta, e.middle());
  }
  std::size_t maxlen = beta.size();
  for (const auto& [delta, cset] : ws.constraints) maxlen = std::max(maxlen, delta.size());
  ws.depth_limit = maxlen + 1;
  return ws.search(beta, c.base.middle());
}

XPoint phi_to_x(const Ultragraph& g, const GeneralizedVertices& gv, const TightFilter& xi) {
  if (!check_rfum2(g, gv).holds)
    throw DomainError("the boundary path space model needs the range-decomposition condition");
  XPoint x;
  if (xi.is_infinite_type()) {
    x.kind = XPoint::Kind::kInfinite;
    x.word = xi.word();
    x.terminal = g.empty_set();
    return x;
  }
  x.alpha = xi.alpha();
  if (xi.top().kind == UltrafilterDesc::Kind::kPrincipal) {
    x.terminal = g.singleton(xi.top().vertex);
    x.kind = g.is_sink(xi.top().vertex) ? XPoint::Kind::kSinkTerminal : XPoint::Kind::kMinimal;
  } else {
    x.terminal = xi.top().base;
    x.kind = g.epsilon(x.terminal).is_finite() ? XPoint::Kind::kSinkTerminal
                                               : XPoint::Kind::kMinimal;
  }
  return x;
}

TightFilter phi_from_x(const Ultragraph& g, const GeneralizedVertices& gv, const XPoint& x) {
  if (!check_rfum2(g, gv).holds)
    throw DomainError("the boundary path space model needs the range-decomposition condition");
  if (x.kind == XPoint::Kind::kInfinite) return TightFilter::infinite(x.word);
  if (x.terminal.is_finite() && x.terminal.finite_size() == 1)
    return TightFilter::finite(x.alpha,
                               UltrafilterDesc::principal(x.terminal.finite_elements()[0]));
  return TightFilter::finite(x.alpha, UltrafilterDesc::cofinite_on(x.terminal));
}

IsolationResult is_isolated(const Ultragraph& g, const GeneralizedVertices& gv,
                            const TightFilter& xi) {
  (void)gv;
  IsolationResult res;
  if (xi.is_infinite_type()) {
    const auto& w = xi.word();
    auto exit = find_exit(g, w.cycle);
    if (exit) {
      res.isolated = false;
      res.note = "the cycle has an exit at position " + std::to_string(exit->position);
      return res;
    }
    res.isolated = true;
    VertexId base_vertex = g.source(w.cycle.edges.front());
    SElement base = SElement::make(g, w.prefix, g.singleton(base_vertex), w.prefix);
    res.singleton = Cylinder{base, {}};
    res.note = "no-exit cycle pins the point";
    return res;
  }
  if (xi.top().kind == UltrafilterDesc::Kind::kPrincipal && g.is_sink(xi.top().vertex)) {
    res.isolated = true;
    SElement base = SElement::make(g, xi.alpha(), g.singleton(xi.top().vertex), xi.alpha());
    res.singleton = Cylinder{base, {}};
    res.note = "sink-terminal points are pinned by their terminal singleton";
    return res;
  }
  res.isolated = false;
  res.note = xi.top().kind == UltrafilterDesc::Kind::kPrincipal
                 ? "the terminal vertex emits infinitely many edges"
                 : "every neighborhood keeps a cofinite piece of the base set";
  return res;
}

SpectrumSample sample_spectrum(const Ultragraph& g, const GeneralizedVertices& gv,
                               std::size_t max_len, std::int64_t index_bound) {
  SpectrumSample out;
  auto fin = enumerate_tight_finite_type(g, gv, max_len, index_bound);
  out.finite_type = std::move(fin.filters);
  out.truncated = fin.truncated;
  out.complete = fin.complete;
  for (auto& w : enumerate_infinite_paths(g, max_len, index_bound))
    out.infinite_type.push_back(TightFilter::infinite(std::move(w)));
  return out;
}

}  // namespace ultra
