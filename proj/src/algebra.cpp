#include "ultra/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace ultra {

bool AlgebraContext::cylinder_empty(const Cylinder& c) const {
  if (c.base.is_zero()) return true;
  auto it = empty_cache.find(c);
  if (it != empty_cache.end()) return it->second;
  bool empty = !cylinder_witness(g, gv, c).has_value();
  empty_cache.emplace(c, empty);
  return empty;
}

namespace {

// Exclusions are kept at or below the base; a cylinder whose base is excluded
// collapses to nothing (nullopt).
std::optional<Cylinder> normalize_cylinder(const AlgebraContext& ctx, SElement base,
                                           std::vector<SElement> raw_exclusions) {
  if (base.is_zero()) return std::nullopt;
  std::set<SElement> excl;
  for (auto& e : raw_exclusions) {
    SElement m = mul(ctx.g, e, base);
    if (m.is_zero()) continue;
    if (m == base) return std::nullopt;
    excl.insert(std::move(m));
  }
  Cylinder c{std::move(base), {excl.begin(), excl.end()}};
  if (ctx.cylinder_empty(c)) return std::nullopt;
  return c;
}

std::optional<Cylinder> cyl_intersect(const AlgebraContext& ctx, const Cylinder& a,
                                      const Cylinder& b) {
  SElement base = mul(ctx.g, a.base, b.base);
  std::vector<SElement> excl = a.exclusions;
  excl.insert(excl.end(), b.exclusions.begin(), b.exclusions.end());
  return normalize_cylinder(ctx, std::move(base), std::move(excl));
}

// a minus b as a disjoint list of constrained cylinders.
std::vector<Cylinder> cyl_minus_disjoint(const AlgebraContext& ctx, const Cylinder& a,
                                         const Cylinder& b) {
  std::vector<Cylinder> out;
  // outside the base of b
  {
    std::vector<SElement> excl = a.exclusions;
    excl.push_back(b.base);
    if (auto c = normalize_cylinder(ctx, a.base, std::move(excl))) out.push_back(std::move(*c));
  }
  // inside the base of b but caught by its i-th exclusion (and no earlier one)
  for (std::size_t i = 0; i < b.exclusions.size(); ++i) {
    SElement base = mul(ctx.g, mul(ctx.g, a.base, b.base), b.exclusions[i]);
    std::vector<SElement> excl = a.exclusions;
    excl.insert(excl.end(), b.exclusions.begin(), b.exclusions.begin() + i);
    if (auto c = normalize_cylinder(ctx, std::move(base), std::move(excl)))
      out.push_back(std::move(*c));
  }
  return out;
}

// Insert (cell, coeff) into a disjoint cell list, refining overlaps.
void insert_cell(const AlgebraContext& ctx, AlgebraElement::CellList& cells, const Cylinder& cell,
                 const Rational& coeff) {
  if (coeff == 0) return;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto inter = cyl_intersect(ctx, cell, cells[i].first);
    if (!inter) continue;
    Cylinder old_cyl = cells[i].first;
    Rational old_coeff = cells[i].second;
    cells.erase(cells.begin() + i);
    cells.emplace_back(*inter, old_coeff + coeff);
    for (auto& piece : cyl_minus_disjoint(ctx, old_cyl, cell))
      cells.emplace_back(std::move(piece), old_coeff);
    for (auto& piece : cyl_minus_disjoint(ctx, cell, old_cyl)) insert_cell(ctx, cells, piece, coeff);
    return;
  }
  cells.emplace_back(cell, coeff);
}

void finalize_chart(AlgebraElement& out, const ReducedWord& word, AlgebraElement::CellList cells) {
  cells.erase(std::remove_if(cells.begin(), cells.end(),
                             [](const auto& c) { return c.second == 0; }),
              cells.end());
  if (cells.empty()) return;
  std::sort(cells.begin(), cells.end());
  out.charts.emplace(word, std::move(cells));
}

AlgebraElement from_cells(const AlgebraContext& ctx, const ReducedWord& word,
                          const std::vector<std::pair<Cylinder, Rational>>& raw) {
  AlgebraElement out;
  AlgebraElement::CellList cells;
  for (const auto& [cyl, q] : raw)
    if (auto c = normalize_cylinder(ctx, cyl.base, cyl.exclusions)) insert_cell(ctx, cells, *c, q);
  finalize_chart(out, word, std::move(cells));
  return out;
}

// act-transport of an idempotent along pos . neg^{-1}: the word surgery that
// cuts `neg` and glues `pos`.
SElement transport_idempotent(const AlgebraContext& ctx, const Path& pos, const Path& neg,
                              const SElement& e) {
  Path rest;
  bool ok = is_beginning_of(neg, e.alpha(), &rest);
  assert(ok);
  (void)ok;
  if (rest.empty()) {
    VertexSet m = set_intersect(e.middle(), ctx.g.path_range(pos));
    if (m.is_empty()) return SElement::zero();
    return SElement::make(ctx.g, pos, std::move(m), pos);
  }
  return SElement::make(ctx.g, concat(pos, rest), e.middle(), concat(pos, rest));
}

// act_s(cell cap V_{s^{-1}}) as a cylinder; nullopt when empty.
std::optional<Cylinder> transport_cylinder(const AlgebraContext& ctx, const ReducedWord& s,
                                           const Cylinder& cell) {
  Path pos, neg;
  if (!s.pn_shape(&pos, &neg)) return std::nullopt;
  VertexSet m = set_intersect(ctx.g.path_range(pos), ctx.g.path_range(neg));
  if (m.is_empty()) return std::nullopt;
  SElement domain = SElement::make(ctx.g, neg, std::move(m), neg);
  SElement base = mul(ctx.g, cell.base, domain);
  if (base.is_zero()) return std::nullopt;
  std::vector<SElement> excl;
  for (const auto& e : cell.exclusions) {
    SElement me = mul(ctx.g, e, base);
    if (me.is_zero()) continue;
    if (me == base) return std::nullopt;
    excl.push_back(transport_idempotent(ctx, pos, neg, me));
  }
  SElement tbase = transport_idempotent(ctx, pos, neg, base);
  return normalize_cylinder(ctx, std::move(tbase), std::move(excl));
}

}  // namespace

AlgebraElement gen_p(const AlgebraContext& ctx, const VertexSet& a, bool relaxed) {
  if (a.is_empty()) return {};
  if (relaxed ? !ctx.gv.in_b(a) : !ctx.gv.in_g0(a))
    throw DomainError("projection set lies outside the vertex-set family");
  return from_cells(ctx, ReducedWord::identity(),
                    {{Cylinder{SElement::make(ctx.g, {}, a, {}), {}}, 1}});
}

AlgebraElement gen_s(const AlgebraContext& ctx, EdgeRef e) {
  Path p{{e}};
  return from_cells(ctx, ReducedWord::from_path(p),
                    {{Cylinder{SElement::make(ctx.g, p, ctx.g.range(e), p), {}}, 1}});
}

AlgebraElement gen_s_star(const AlgebraContext& ctx, EdgeRef e) {
  Path p{{e}};
  return from_cells(ctx, ReducedWord::from_path(p).inverted(),
                    {{Cylinder{SElement::make(ctx.g, {}, ctx.g.range(e), {}), {}}, 1}});
}

AlgebraElement monomial(const AlgebraContext& ctx, const Path& alpha, const VertexSet& a,
                        const Path& beta) {
  VertexSet m =
      set_intersect(a, set_intersect(ctx.g.path_range(alpha), ctx.g.path_range(beta)));
  if (m.is_empty()) return {};
  return from_cells(ctx, ReducedWord::from_pair(alpha, beta),
                    {{Cylinder{SElement::make(ctx.g, alpha, std::move(m), alpha), {}}, 1}});
}

AlgebraElement add(const AlgebraContext& ctx, const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out;
  std::set<ReducedWord> words;
  for (const auto& [w, c] : x.charts) words.insert(w);
  for (const auto& [w, c] : y.charts) words.insert(w);
  for (const auto& w : words) {
    AlgebraElement::CellList cells;
    if (auto it = x.charts.find(w); it != x.charts.end())
      for (const auto& [cyl, q] : it->second) insert_cell(ctx, cells, cyl, q);
    if (auto it = y.charts.find(w); it != y.charts.end())
      for (const auto& [cyl, q] : it->second) insert_cell(ctx, cells, cyl, q);
    finalize_chart(out, w, std::move(cells));
  }
  return out;
}

AlgebraElement scalar_mul(const AlgebraContext&, const Rational& r, const AlgebraElement& x) {
  if (r == 0) return {};
  AlgebraElement out = x;
  for (auto& [w, cells] : out.charts)
    for (auto& [cyl, q] : cells) q *= r;
  return out;
}

AlgebraElement convolve(const AlgebraContext& ctx, const AlgebraElement& x,
                        const AlgebraElement& y) {
  std::map<ReducedWord, AlgebraElement::CellList> acc;
  for (const auto& [s, xcells] : x.charts) {
    for (const auto& [t, ycells] : y.charts) {
      ReducedWord u = reduce_concat(s, t);
      for (const auto& [cx, qx] : xcells) {
        for (const auto& [cy, qy] : ycells) {
          auto moved = transport_cylinder(ctx, s, cy);
          if (!moved) continue;
          auto cell = cyl_intersect(ctx, cx, *moved);
          if (!cell) continue;
          insert_cell(ctx, acc[u], *cell, qx * qy);
        }
      }
    }
  }
  AlgebraElement out;
  for (auto& [w, cells] : acc) finalize_chart(out, w, std::move(cells));
  return out;
}

AlgebraElement star(const AlgebraContext& ctx, const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [w, cells] : x.charts) {
    ReducedWord winv = w.inverted();
    AlgebraElement::CellList moved;
    for (const auto& [cyl, q] : cells) {
      auto c = transport_cylinder(ctx, winv, cyl);
      assert(c);  // cells sit inside V_w, the domain of the inverse transport
      if (c) insert_cell(ctx, moved, *c, q);
    }
    finalize_chart(out, winv, std::move(moved));
  }
  return out;
}

bool is_zero(const AlgebraContext&, const AlgebraElement& x) { return x.is_zero(); }

bool algebra_equal(const AlgebraContext& ctx, const AlgebraElement& x, const AlgebraElement& y) {
  return add(ctx, x, scalar_mul(ctx, -1, y)).is_zero();
}

AlgebraElement graded_component(const AlgebraElement& x, std::int64_t n) {
  AlgebraElement out;
  for (const auto& [w, cells] : x.charts)
    if (w.degree() == n) out.charts.emplace(w, cells);
  return out;
}

namespace {

// Lattice sets used for relation (1) and analyzer sampling: the whole power
// set on fully finite inputs, a representative pool otherwise.
std::vector<VertexSet> relation_pool(const AlgebraContext& ctx) {
  const Ultragraph& g = ctx.g;
  if (g.tier() == Tier::kFinite) return ctx.gv.tier1_elements();
  std::set<VertexSet> pool;
  pool.insert(g.empty_set());
  for (VertexId v : g.canonical_vertices(2)) pool.insert(g.singleton(v));
  for (std::size_t id = 0; id < g.num_concrete(); ++id)
    pool.insert(g.concrete_edge(static_cast<std::int32_t>(id)).range);
  for (std::size_t b = 0; b < g.num_bundles(); ++b)
    for (std::int64_t k = 1; k <= 2; ++k)
      pool.insert(g.range(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k)));
  for (const auto& c : ctx.gv.cores()) pool.insert(c);
  if (ctx.gv.in_g0(g.universe())) pool.insert(g.universe());
  return {pool.begin(), pool.end()};
}

std::vector<EdgeRef> relation_edges(const Ultragraph& g) {
  std::vector<EdgeRef> out;
  for (std::size_t id = 0; id < g.num_concrete(); ++id)
    out.push_back(EdgeRef::concrete_edge(static_cast<std::int32_t>(id)));
  for (std::size_t b = 0; b < g.num_bundles(); ++b)
    for (std::int64_t k = 1; k <= 2; ++k)
      out.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
  return out;
}

std::vector<VertexId> regular_vertices_sample(const Ultragraph& g) {
  std::vector<VertexId> out;
  for (VertexId v : g.canonical_vertices(2))
    if (g.is_regular_vertex(v)) out.push_back(v);
  return out;
}

}  // namespace

RelationReport check_relations(const AlgebraContext& ctx) {
  RelationReport rep;
  const Ultragraph& g = ctx.g;
  auto record = [&](std::string name, bool pass, std::string witness) {
    if (!pass) rep.all_pass = false;
    rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
  };

  // (1) projections form the lattice of sets
  {
    bool pass = gen_p(ctx, g.empty_set()).is_zero();
    record("p_empty = 0", pass, "the empty set did not map to zero");
    auto pool = relation_pool(ctx);
    bool products = true, unions = true;
    std::string witness_p, witness_u;
    for (const auto& a : pool) {
      for (const auto& b : pool) {
        auto pa = gen_p(ctx, a);
        auto pb = gen_p(ctx, b);
        if (!algebra_equal(ctx, convolve(ctx, pa, pb), gen_p(ctx, set_intersect(a, b)))) {
          products = false;
          witness_p = "a pair of lattice sets breaks p_A p_B = p_{A and B}";
        }
        auto rhs = add(ctx, add(ctx, pa, pb),
                       scalar_mul(ctx, -1, gen_p(ctx, set_intersect(a, b))));
        if (!algebra_equal(ctx, gen_p(ctx, set_union(a, b)), rhs)) {
          unions = false;
          witness_u = "a pair of lattice sets breaks the union relation";
        }
      }
    }
    record("p_A p_B = p_{A and B}", products, witness_p);
    record("p_{A or B} = p_A + p_B - p_{A and B}", unions, witness_u);
  }

  // (2) source and range projections absorb the edge generators
  {
    bool pass = true;
    std::string witness;
    for (EdgeRef e : relation_edges(g)) {
      auto se = gen_s(ctx, e);
      auto se_star = gen_s_star(ctx, e);
      auto ps = gen_p(ctx, g.singleton(g.source(e)));
      auto pr = gen_p(ctx, g.range(e));
      if (!algebra_equal(ctx, convolve(ctx, ps, se), se) ||
          !algebra_equal(ctx, convolve(ctx, se, pr), se) ||
          !algebra_equal(ctx, convolve(ctx, pr, se_star), se_star) ||
          !algebra_equal(ctx, convolve(ctx, se_star, ps), se_star)) {
        pass = false;
        witness = "edge " + g.edge_name(e);
        break;
      }
    }
    record("p_{s(e)} s_e = s_e p_{r(e)} = s_e (and the star version)", pass, witness);
  }

  // (3) orthogonality
  {
    bool pass = true;
    std::string witness;
    auto edges = relation_edges(g);
    for (EdgeRef e : edges) {
      for (EdgeRef f : edges) {
        auto prod = convolve(ctx, gen_s_star(ctx, e), gen_s(ctx, f));
        AlgebraElement want = (e == f) ? gen_p(ctx, g.range(e)) : AlgebraElement{};
        if (!algebra_equal(ctx, prod, want)) {
          pass = false;
          witness = "edges " + g.edge_name(e) + ", " + g.edge_name(f);
        }
      }
    }
    record("s_e* s_f = delta p_{r(e)}", pass, witness);
  }

  // (4) regular vertices decompose into their emitted edges
  {
    bool pass = true;
    std::string witness;
    for (VertexId v : regular_vertices_sample(g)) {
      AlgebraElement sum;
      for (EdgeRef e : g.out_edges(v, 2))
        sum = add(ctx, sum, convolve(ctx, gen_s(ctx, e), gen_s_star(ctx, e)));
      if (!algebra_equal(ctx, gen_p(ctx, g.singleton(v)), sum)) {
        pass = false;
        witness = "vertex " + g.vertex_name(v);
        break;
      }
    }
    record("p_v = sum of s_e s_e* over regular vertices", pass, witness);
  }
  return rep;
}

bool in_diagonal(const AlgebraElement& x) {
  for (const auto& [w, cells] : x.charts)
    if (!w.is_identity()) return false;
  return true;
}

namespace {

bool cylinders_equal(const AlgebraContext& ctx, const Cylinder& a, const Cylinder& b) {
  for (const auto& piece : cyl_minus_disjoint(ctx, a, b))
    if (!ctx.cylinder_empty(piece)) return false;
  for (const auto& piece : cyl_minus_disjoint(ctx, b, a))
    if (!ctx.cylinder_empty(piece)) return false;
  return true;
}

// Whether the chart (t, cell) sits inside the interior of the isotropy:
// t = beta gamma^{+-1} beta^{-1} with gamma a no-exit cycle and cell the
// singleton of beta gamma^infinity.
bool chart_in_isotropy(const AlgebraContext& ctx, const ReducedWord& t, const Cylinder& cell) {
  Path pos, neg;
  if (!t.pn_shape(&pos, &neg)) return false;
  if (pos.size() == neg.size()) return false;
  const Path& longer = pos.size() > neg.size() ? pos : neg;
  const Path& shorter = pos.size() > neg.size() ? neg : pos;
  if (!is_beginning_of(shorter, longer)) return false;
  Path cycle{{longer.edges.begin() + shorter.size(), longer.edges.end()}};
  if (!ctx.g.range(cycle.edges.back()).contains(ctx.g.source(cycle.edges.front()))) return false;
  if (find_exit(ctx.g, cycle)) return false;
  SElement pin =
      SElement::make(ctx.g, shorter, ctx.g.singleton(ctx.g.source(cycle.edges.front())), shorter);
  return cylinders_equal(ctx, cell, Cylinder{pin, {}});
}

}  // namespace

bool in_core(const AlgebraContext& ctx, const AlgebraElement& x) {
  for (const auto& [w, cells] : x.charts) {
    if (w.is_identity()) continue;
    for (const auto& [cell, q] : cells)
      if (!chart_in_isotropy(ctx, w, cell)) return false;
  }
  return true;
}

CoreReport core_generators(const AlgebraContext& ctx, std::size_t max_len) {
  CoreReport rep;
  const Ultragraph& g = ctx.g;
  rep.loops = loops_without_exits(g, max_len);
  rep.truncated = rep.loops.truncated;

  std::vector<Path> words;
  words.push_back({});
  for (auto& p : enumerate_paths(g, max_len)) words.push_back(std::move(p));

  auto middles = [&](const Path& alpha, const Path& beta) {
    VertexSet meet = set_intersect(g.path_range(alpha), g.path_range(beta));
    std::vector<VertexSet> out;
    if (meet.is_empty()) return out;
    if (g.tier() == Tier::kFinite) {
      auto elems = meet.finite_elements();
      for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << elems.size()); ++mask) {
        VertexSet s = g.empty_set();
        for (std::size_t i = 0; i < elems.size(); ++i)
          if (mask & (std::uint64_t(1) << i)) s.insert(elems[i]);
        out.push_back(std::move(s));
      }
    } else {
      out.push_back(meet);
      for (VertexId v : meet.first_elements(2)) out.push_back(g.singleton(v));
    }
    return out;
  };

  auto add_triple = [&](const Path& alpha, const Path& beta) {
    for (auto& a : middles(alpha, beta)) {
      AlgebraElement el = monomial(ctx, alpha, a, beta);
      if (el.is_zero()) continue;
      rep.generators.push_back({alpha, a, beta, std::move(el)});
    }
  };

  for (const auto& alpha : words) add_triple(alpha, alpha);
  for (const auto& beta : words) {
    for (const auto& li : rep.loops.without_exits) {
      const Path& lam = li.loop;
      if (beta.size() + lam.size() > max_len) continue;
      if (!beta.empty() && !g.path_range(beta).contains(g.source(lam.edges.front()))) continue;
      Path alpha = concat(beta, lam);
      add_triple(alpha, beta);
      add_triple(beta, alpha);
    }
  }

  for (std::size_t i = 0; i < rep.generators.size() && rep.commutative; ++i) {
    for (std::size_t j = i + 1; j < rep.generators.size(); ++j) {
      const auto& x = rep.generators[i].element;
      const auto& y = rep.generators[j].element;
      if (!algebra_equal(ctx, convolve(ctx, x, y), convolve(ctx, y, x))) {
        rep.commutative = false;
        rep.failure = {i, j};
        break;
      }
    }
  }
  return rep;
}

UniquenessReport uniqueness_report(const AlgebraContext& ctx,
                                   const std::vector<VertexSet>& killed, std::size_t max_len) {
  UniquenessReport rep;
  for (const auto& a : killed) {
    if (!ctx.gv.in_g0(a)) {
      rep.notes.push_back("killed set outside the lattice; not a generator");
      continue;
    }
    if (!a.is_empty()) {
      rep.satisfiable = false;
      rep.violations.push_back(
          "a nonempty lattice projection is killed; a graded homomorphism vanishing on it "
          "cannot be injective");
    }
  }
  auto loops = loops_without_exits(ctx.g, max_len);
  for (const auto& li : loops.without_exits) rep.spectral_obligations.push_back(li.loop);
  if (!rep.spectral_obligations.empty())
    rep.notes.push_back(
        "for each no-exit cycle, the analytic uniqueness route additionally needs the spectrum "
        "of the represented cycle isometry to contain the unit circle; this is reported, not "
        "evaluated");
  rep.core_checklist_size = core_generators(ctx, max_len).generators.size();
  rep.notes.push_back("injectivity of a representation is equivalent to injectivity on the "
                      "abelian core; check it on the listed core generators");
  return rep;
}

CenterVerdict center_equals_core_check(const AlgebraContext& ctx) {
  CenterVerdict v;
  const Ultragraph& g = ctx.g;
  v.connected = is_connected(g).connected;
  bool single_vertex = g.num_named() == 1 && g.num_families() == 0;
  if (single_vertex && g.num_concrete() == 0 && g.num_bundles() == 0) {
    v.kind = CenterVerdict::Kind::kBaseRing;
    v.note = "a single vertex: the algebra is the base ring";
    return v;
  }
  if (single_vertex && g.num_concrete() == 1 && g.num_bundles() == 0) {
    // the only possible range is the vertex itself, giving one loop
    v.kind = CenterVerdict::Kind::kLaurentRing;
    v.note = "a vertex with one loop: the algebra is the Laurent polynomial ring";
    return v;
  }
  v.kind = CenterVerdict::Kind::kCenterProper;
  v.note = v.connected
               ? "connected but not a single vertex or a vertex with a loop, so the center "
                 "is strictly smaller than the core"
               : "not a single vertex or a vertex with a loop; under the connectivity "
                 "hypothesis the center would be strictly smaller than the core";
  return v;
}

}  // namespace ultra
