#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ultra/algebra.hpp"
#include "ultra/dynamics.hpp"
#include "ultra/lattice.hpp"
#include "ultra/parse.hpp"
#include "ultra/spectrum.hpp"

using nlohmann::json;
using namespace ultra;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kFinding = 2;

struct Options {
  std::string input;
  bool as_json = false;
  std::int64_t index_bound = 3;
  std::size_t budget = 4096;
};

Ultragraph load(const Options& opt) {
  std::ifstream in(opt.input);
  if (!in.good()) throw UltraError("cannot open input file '" + opt.input + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

void emit(const Options& opt, const json& payload, const std::string& text) {
  if (opt.as_json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << text;
}

json set_json(const Ultragraph& g, const VertexSet& s) { return format_set(g, s); }

int cmd_validate(const Options& opt) {
  json out;
  std::string text;
  try {
    auto g = load(opt);
    auto rep = g.validate();
    out["command"] = "validate";
    out["ok"] = rep.ok;
    out["tier"] = rep.tier == Tier::kFinite ? 1 : 2;
    out["diagnostics"] = rep.diagnostics;
    text = std::string("ok (tier-") + (rep.tier == Tier::kFinite ? "1" : "2") +
           (rep.tier == Tier::kFinite ? ", fully finite" : ", normal form") + ")\n";
    emit(opt, out, text);
    return kOk;
  } catch (const ParseError& e) {
    out["command"] = "validate";
    out["ok"] = false;
    out["diagnostics"] = {std::string(e.what())};
    emit(opt, out, std::string(e.what()) + "\n");
    return kFinding;
  }
}

int cmd_lattice(const Options& opt) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  json out;
  out["command"] = "lattice";
  std::ostringstream text;
  out["cores"] = json::array();
  for (const auto& c : gv.cores()) out["cores"].push_back(set_json(g, c));
  if (g.tier() == Tier::kFinite) {
    auto elems = gv.tier1_elements();
    out["elements"] = json::array();
    for (const auto& s : elems) out["elements"].push_back(set_json(g, s));
    auto atoms = gv.atoms(g.universe());
    out["atoms"] = json::array();
    for (const auto& a : atoms) out["atoms"].push_back(set_json(g, a));
    text << "lattice elements (" << elems.size() << "):\n";
    for (const auto& s : elems) text << "  " << format_set(g, s) << "\n";
    text << "atoms of the universe:\n";
    for (const auto& a : atoms) text << "  " << format_set(g, a) << "\n";
  } else {
    text << "infinite cores (" << gv.cores().size() << "):\n";
    for (const auto& c : gv.cores()) text << "  " << format_set(g, c) << "\n";
    text << "every finite vertex set belongs to the lattice; an infinite set belongs "
            "iff it is a union of cores plus finitely many vertices\n";
    out["note"] = "finite sets always belong; infinite members are core unions plus finite sets";
  }
  emit(opt, out, text.str());
  return kOk;
}

int cmd_emitters(const Options& opt) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  auto mie = minimal_infinite_emitters(g, gv);
  auto ms = minimal_sinks(g, gv);
  json out;
  out["command"] = "emitters";
  out["minimal_infinite_emitters"] = json::array();
  for (const auto& b : mie) out["minimal_infinite_emitters"].push_back(set_json(g, b));
  out["minimal_sinks"] = json::array();
  for (const auto& b : ms) out["minimal_sinks"].push_back(set_json(g, b));
  std::ostringstream text;
  text << "minimal infinite emitters (" << mie.size() << "):\n";
  for (const auto& b : mie) text << "  " << format_set(g, b) << "\n";
  text << "minimal sinks (" << ms.size() << "):\n";
  for (const auto& b : ms) text << "  " << format_set(g, b) << "\n";
  emit(opt, out, text.str());
  return kOk;
}

int cmd_rfum2(const Options& opt) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  auto rep = check_rfum2(g, gv);
  json out;
  out["command"] = "rfum2";
  out["holds"] = rep.holds;
  std::ostringstream text;
  if (rep.holds) {
    out["decompositions"] = json::array();
    text << "holds; per-edge decompositions:\n";
    for (const auto& er : rep.decompositions) {
      json d;
      d["edge"] = g.edge_name(er.edge);
      d["cover"] = json::array();
      for (const auto& b : er.cover) d["cover"].push_back(set_json(g, b));
      d["singletons"] = set_json(g, er.singletons);
      out["decompositions"].push_back(d);
      text << "  " << g.edge_name(er.edge) << ": ";
      for (const auto& b : er.cover) text << format_set(g, b) << " ";
      if (!er.singletons.is_empty())
        text << "+ singletons of " << format_set(g, er.singletons);
      text << "\n";
    }
  } else {
    out["counterexample"] = g.edge_name(*rep.counterexample);
    out["uncovered"] = set_json(g, rep.uncovered);
    text << "fails at edge " << g.edge_name(*rep.counterexample)
         << "; uncovered infinite residual " << format_set(g, rep.uncovered) << "\n";
    text << "no minimal infinite emitter or minimal sink covers the residual, and a finite "
            "union of singletons cannot\n";
  }
  emit(opt, out, text.str());
  return rep.holds ? kOk : kFinding;
}

int cmd_tight(const Options& opt, std::size_t max_len) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  auto res = enumerate_tight_finite_type(g, gv, max_len, opt.index_bound);
  auto inf = enumerate_infinite_paths(g, max_len, opt.index_bound);
  json out;
  out["command"] = "tight";
  out["max_len"] = max_len;
  out["finite_type"] = json::array();
  for (std::size_t i = 0; i < res.filters.size(); ++i) {
    json f;
    f["point"] = format_filter(g, res.filters[i]);
    f["reason"] = res.reasons[i];
    out["finite_type"].push_back(f);
  }
  out["infinite_type"] = json::array();
  for (const auto& w : inf) out["infinite_type"].push_back(format_infinite_path(g, w));
  out["truncated"] = res.truncated;
  out["complete"] = res.complete;
  std::ostringstream text;
  text << "finite-type tight filters (reason 1 = sink, 2 = infinite emission, 3 = sink-rich):\n";
  for (std::size_t i = 0; i < res.filters.size(); ++i)
    text << "  " << format_filter(g, res.filters[i]) << "   [" << res.reasons[i] << "]\n";
  text << "infinite-type points, eventually periodic up to length " << max_len << ":\n";
  for (const auto& w : inf) text << "  " << format_infinite_path(g, w) << "\n";
  if (res.truncated)
    text << "note: tail indices enumerated up to " << opt.index_bound
         << " plus mentioned indices\n";
  if (!res.complete)
    text << "note: the range-decomposition condition fails, so this ultrafilter listing "
            "may be incomplete\n";
  emit(opt, out, text.str());
  return kOk;
}

int cmd_shift(const Options& opt, const std::string& point, std::size_t steps) {
  auto g = load(opt);
  auto xi = parse_point(g, point);
  json out;
  out["command"] = "shift";
  try {
    auto moved = shift_n(g, xi, steps);
    out["result"] = format_filter(g, moved);
    emit(opt, out, format_filter(g, moved) + "\n");
    return kOk;
  } catch (const DomainError& e) {
    out["error"] = e.what();
    emit(opt, out, std::string(e.what()) + "\n");
    return kFinding;
  }
}

int cmd_act(const Options& opt, const std::string& word, const std::string& point) {
  auto g = load(opt);
  auto t = parse_word(g, word);
  auto xi = parse_point(g, point);
  json out;
  out["command"] = "act";
  if (!in_act_domain(g, t, xi)) {
    out["in_domain"] = false;
    emit(opt, out, "the point is outside the domain of the word's action\n");
    return kFinding;
  }
  auto moved = act(g, t, xi);
  out["in_domain"] = true;
  out["result"] = format_filter(g, moved);
  emit(opt, out, format_filter(g, moved) + "\n");
  return kOk;
}

int cmd_loops(const Options& opt, std::size_t max_len) {
  auto g = load(opt);
  auto rep = loops_without_exits(g, max_len, opt.index_bound);
  json out;
  out["command"] = "loops";
  out["without_exits"] = json::array();
  for (const auto& li : rep.without_exits)
    out["without_exits"].push_back(format_path(g, li.loop));
  out["with_exits"] = json::array();
  std::ostringstream text;
  text << "loops without exits:\n";
  for (const auto& li : rep.without_exits) text << "  " << format_path(g, li.loop) << "\n";
  text << "loops with exits:\n";
  for (const auto& li : rep.with_exits) {
    json item;
    item["loop"] = format_path(g, li.loop);
    std::string exit_text;
    if (li.exit->edge)
      exit_text = "edge " + g.edge_name(*li.exit->edge) + " at position " +
                  std::to_string(li.exit->position);
    else
      exit_text = "sink " + g.vertex_name(*li.exit->sink) + " at position " +
                  std::to_string(li.exit->position);
    item["exit"] = exit_text;
    out["with_exits"].push_back(item);
    text << "  " << format_path(g, li.loop) << "   (exit: " << exit_text << ")\n";
  }
  out["truncated"] = rep.truncated;
  if (rep.truncated)
    text << "note: bundle instances enumerated up to index " << opt.index_bound
         << " plus mentioned indices\n";
  emit(opt, out, text.str());
  return kOk;
}

int cmd_core(const Options& opt, std::size_t max_len) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  AlgebraContext ctx(g, gv);
  auto rep = core_generators(ctx, max_len);
  json out;
  out["command"] = "core";
  out["generators"] = json::array();
  for (const auto& t : rep.generators) {
    json item;
    item["alpha"] = format_path(g, t.alpha);
    item["set"] = set_json(g, t.middle);
    item["beta"] = format_path(g, t.beta);
    out["generators"].push_back(item);
  }
  out["commutative"] = rep.commutative;
  out["loops_without_exits"] = json::array();
  for (const auto& li : rep.loops.without_exits)
    out["loops_without_exits"].push_back(format_path(g, li.loop));
  std::ostringstream text;
  text << "abelian-core generators s_alpha p_A s_beta* (" << rep.generators.size() << "):\n";
  for (const auto& t : rep.generators)
    text << "  (" << format_path(g, t.alpha) << ", " << format_set(g, t.middle) << ", "
         << format_path(g, t.beta) << ")\n";
  text << "pairwise commutativity: " << (rep.commutative ? "verified" : "FAILED") << "\n";
  emit(opt, out, text.str());
  return rep.commutative ? kOk : kFinding;
}

int cmd_relations(const Options& opt) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  AlgebraContext ctx(g, gv);
  auto rep = check_relations(ctx);
  json out;
  out["command"] = "relations";
  out["all_pass"] = rep.all_pass;
  out["checks"] = json::array();
  std::ostringstream text;
  for (const auto& c : rep.checks) {
    json item;
    item["relation"] = c.relation;
    item["pass"] = c.pass;
    if (!c.pass) item["witness"] = c.witness;
    out["checks"].push_back(item);
    text << (c.pass ? "  ok   " : "  FAIL ") << c.relation;
    if (!c.pass) text << "   (" << c.witness << ")";
    text << "\n";
  }
  emit(opt, out, text.str());
  return rep.all_pass ? kOk : kFinding;
}

int cmd_uniqueness(const Options& opt, const std::vector<std::string>& kill,
                   std::size_t max_len) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  AlgebraContext ctx(g, gv);
  std::vector<VertexSet> killed;
  for (const auto& expr : kill) killed.push_back(parse_set(g, expr));
  auto rep = uniqueness_report(ctx, killed, max_len);
  json out;
  out["command"] = "uniqueness";
  out["satisfiable"] = rep.satisfiable;
  out["violations"] = rep.violations;
  out["spectral_obligations"] = json::array();
  for (const auto& p : rep.spectral_obligations)
    out["spectral_obligations"].push_back(format_path(g, p));
  out["core_checklist_size"] = rep.core_checklist_size;
  out["notes"] = rep.notes;
  std::ostringstream text;
  text << (rep.satisfiable ? "graded injectivity criteria satisfiable\n"
                           : "graded injectivity violated:\n");
  for (const auto& v : rep.violations) text << "  " << v << "\n";
  for (const auto& p : rep.spectral_obligations)
    text << "spectral obligation (external certification needed) for cycle "
         << format_path(g, p) << "\n";
  text << "core injectivity checklist: " << rep.core_checklist_size << " generators\n";
  emit(opt, out, text.str());
  return rep.satisfiable ? kOk : kFinding;
}

int cmd_center(const Options& opt) {
  auto g = load(opt);
  auto gv = GeneralizedVertices::compute(g, opt.budget);
  AlgebraContext ctx(g, gv);
  auto v = center_equals_core_check(ctx);
  json out;
  out["command"] = "center";
  out["connected"] = v.connected;
  std::string verdict = v.kind == CenterVerdict::Kind::kBaseRing      ? "R"
                        : v.kind == CenterVerdict::Kind::kLaurentRing ? "R[x,x^-1]"
                                                                      : "center != core";
  out["verdict"] = verdict;
  out["note"] = v.note;
  emit(opt, out, verdict + "\n  " + v.note + "\n");
  return kOk;
}

int cmd_export_dot(const Options& opt, std::int64_t bundle_bound) {
  auto g = load(opt);
  std::ostringstream dot;
  dot << "digraph ultragraph {\n";
  dot << "  // arrows (e, w) for every edge e and every range vertex w\n";
  if (g.num_families() > 0 || g.num_bundles() > 0)
    dot << "  // tails and bundles truncated at index " << bundle_bound << "\n";
  auto vertices = g.canonical_vertices(bundle_bound);
  for (VertexId v : vertices) dot << "  \"" << g.vertex_name(v) << "\";\n";
  std::vector<EdgeRef> edges;
  for (std::size_t e = 0; e < g.num_concrete(); ++e)
    edges.push_back(EdgeRef::concrete_edge(static_cast<std::int32_t>(e)));
  for (std::size_t b = 0; b < g.num_bundles(); ++b)
    for (std::int64_t k = 1; k <= bundle_bound; ++k)
      edges.push_back(EdgeRef::bundle_edge(static_cast<std::int32_t>(b), k));
  for (EdgeRef e : edges) {
    VertexSet r = g.range(e);
    for (VertexId w : vertices) {
      if (!r.contains(w)) continue;
      dot << "  \"" << g.vertex_name(g.source(e)) << "\" -> \"" << g.vertex_name(w)
          << "\" [label=\"" << g.edge_name(e) << "\"];\n";
    }
    if (!r.is_finite())
      dot << "  // edge " << g.edge_name(e) << " continues into the truncated tail\n";
  }
  dot << "}\n";
  json out;
  out["command"] = "export-dot";
  out["dot"] = dot.str();
  emit(opt, out, dot.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for ultragraph path algebras and their groupoid models"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("-b,--budget", opt.budget, "element budget for normal-form computations");
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--index-bound", opt.index_bound,
                 "tail/bundle index bound for enumerations (default 3)");

  auto add_input = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("input", opt.input, "presentation document (JSON)")->required();
  };

  auto* validate = app.add_subcommand("validate", "check a presentation document");
  add_input(validate);

  auto* lattice = app.add_subcommand("lattice", "list the generalized-vertex lattice");
  add_input(lattice);

  auto* emitters = app.add_subcommand("emitters", "minimal infinite emitters and minimal sinks");
  add_input(emitters);

  auto* rfum2 = app.add_subcommand("rfum2", "check the range-decomposition condition");
  add_input(rfum2);

  std::size_t tight_len = 4, loops_len = 8, core_len = 4, uniq_len = 4;
  auto* tight = app.add_subcommand("tight", "enumerate tight spectrum points");
  add_input(tight);
  tight->add_option("--max-len", tight_len, "maximal word length (default 4)");

  std::string point, word;
  std::size_t steps = 1;
  auto* shiftc = app.add_subcommand("shift", "apply the shift map to a point");
  add_input(shiftc);
  shiftc->add_option("--point", point, "spectrum point")->required();
  shiftc->add_option("--steps", steps, "number of steps (default 1)");

  auto* actc = app.add_subcommand("act", "apply a partial-action element to a point");
  add_input(actc);
  actc->add_option("--word", word, "free-group word, e.g. e1.e2^-1")->required();
  actc->add_option("--point", point, "spectrum point")->required();

  auto* loops = app.add_subcommand("loops", "list loops and their exits");
  add_input(loops);
  loops->add_option("--max-len", loops_len, "maximal loop length (default 8)");

  auto* core = app.add_subcommand("core", "abelian-core generators and commutativity");
  add_input(core);
  core->add_option("--max-len", core_len, "maximal word length (default 4)");

  auto* relations = app.add_subcommand("relations", "verify the defining relations");
  add_input(relations);

  std::vector<std::string> kill;
  auto* uniq = app.add_subcommand("uniqueness", "uniqueness-theorem hypothesis report");
  add_input(uniq);
  uniq->add_option("--kill", kill, "vertex sets asserted to vanish (repeatable)");
  uniq->add_option("--max-len", uniq_len, "core checklist word length (default 4)");

  auto* center = app.add_subcommand("center", "center-equals-core classification");
  add_input(center);

  std::int64_t bundle_bound = 5;
  auto* exportd = app.add_subcommand("export-dot", "emit the underlying directed graph");
  add_input(exportd);
  exportd->add_option("--bundle-bound", bundle_bound,
                      "index bound when rendering tails (default 5)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (lattice->parsed()) return cmd_lattice(opt);
    if (emitters->parsed()) return cmd_emitters(opt);
    if (rfum2->parsed()) return cmd_rfum2(opt);
    if (tight->parsed()) return cmd_tight(opt, tight_len);
    if (shiftc->parsed()) return cmd_shift(opt, point, steps);
    if (actc->parsed()) return cmd_act(opt, word, point);
    if (loops->parsed()) return cmd_loops(opt, loops_len);
    if (core->parsed()) return cmd_core(opt, core_len);
    if (relations->parsed()) return cmd_relations(opt);
    if (uniq->parsed()) return cmd_uniqueness(opt, kill, uniq_len);
    if (center->parsed()) return cmd_center(opt);
    if (exportd->parsed()) return cmd_export_dot(opt, bundle_bound);
  } catch (const UltraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
