#include "ultra/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ultra {

using nlohmann::json;

namespace {

struct NameTables {
  std::map<std::string, std::int64_t> vertices;
  std::map<std::string, std::int32_t> families;
  std::map<std::string, std::int32_t> edges;
  std::map<std::string, std::int32_t> bundles;
};

NameTables tables(const Ultragraph& g) {
  NameTables t;
  for (std::int64_t i = 0; i < g.num_named(); ++i) t.vertices[g.named_names()[i]] = i;
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.num_families()); ++f)
    t.families[g.family(f).name] = f;
  for (std::int32_t e = 0; e < static_cast<std::int32_t>(g.num_concrete()); ++e)
    t.edges[g.concrete_edge(e).name] = e;
  for (std::int32_t b = 0; b < static_cast<std::int32_t>(g.num_bundles()); ++b)
    t.bundles[g.bundle(b).name] = b;
  return t;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

// name, name[3], name[*], name[k]
struct Atom {
  std::string name;
  enum class Kind { kPlain, kIndexed, kStar, kVariable } kind = Kind::kPlain;
  std::int64_t index = 0;
};

Atom parse_atom_syntax(const std::string& s, const std::string& where) {
  Atom a;
  auto lb = s.find('[');
  if (lb == std::string::npos) {
    a.name = s;
    return a;
  }
  if (s.back() != ']') fail(where, "malformed atom '" + s + "'");
  a.name = s.substr(0, lb);
  std::string inner = s.substr(lb + 1, s.size() - lb - 2);
  if (inner == "*") {
    a.kind = Atom::Kind::kStar;
  } else if (inner == "k") {
    a.kind = Atom::Kind::kVariable;
  } else {
    a.kind = Atom::Kind::kIndexed;
    try {
      a.index = std::stoll(inner);
    } catch (...) {
      fail(where, "bad index in atom '" + s + "'");
    }
  }
  return a;
}

VertexId parse_vertex_name(const NameTables& t, const std::string& s, const std::string& where) {
  Atom a = parse_atom_syntax(s, where);
  if (a.kind == Atom::Kind::kPlain) {
    auto it = t.vertices.find(a.name);
    if (it == t.vertices.end()) fail(where, "unknown vertex '" + a.name + "'");
    return VertexId::named(it->second);
  }
  if (a.kind != Atom::Kind::kIndexed) fail(where, "expected a single vertex, got '" + s + "'");
  auto it = t.families.find(a.name);
  if (it == t.families.end()) fail(where, "unknown tail family '" + a.name + "'");
  if (a.index < 1) fail(where, "tail indices start at 1");
  return VertexId::tail(it->second, a.index);
}

}  // namespace

Ultragraph parse_presentation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "top level must be an object");
  if (!doc.contains("schema") || doc["schema"] != 1) fail("schema", "expected schema 1");

  Ultragraph g;
  NameTables t;
  if (doc.contains("vertices")) {
    if (!doc["vertices"].is_array()) fail("vertices", "expected an array of names");
    for (const auto& v : doc["vertices"]) {
      std::string name = v.get<std::string>();
      if (t.vertices.count(name)) fail("vertices", "duplicate vertex '" + name + "'");
      t.vertices[name] = g.add_named_vertex(name);
    }
  }
  if (doc.contains("tails")) {
    if (!doc["tails"].is_array()) fail("tails", "expected an array");
    for (const auto& tf : doc["tails"]) {
      std::string name = tf.at("name").get<std::string>();
      if (t.families.count(name)) fail("tails", "duplicate family '" + name + "'");
      bool all_sinks = tf.value("all_sinks", false);
      t.families[name] = g.add_tail_family(name, all_sinks);
    }
  }

  // A range is an array of atoms; objects give cofinite parts with exclusions.
  auto parse_range = [&](const json& arr, const std::string& where, bool allow_variable,
                         VertexSet* constant, std::vector<std::int32_t>* indexed) {
    if (!arr.is_array()) fail(where, "expected an array of range atoms");
    *constant = g.empty_set();
    for (const auto& item : arr) {
      if (item.is_object()) {
        std::string fam = item.at("cofinite").get<std::string>();
        auto itf = t.families.find(fam);
        if (itf == t.families.end()) fail(where, "unknown tail family '" + fam + "'");
        VertexSet::TailPart part{true, {}};
        if (item.contains("except"))
          for (const auto& k : item["except"]) part.idx.push_back(k.get<std::int64_t>());
        std::sort(part.idx.begin(), part.idx.end());
        *constant = set_union(*constant, VertexSet::of_tail_part(g.num_families(), itf->second,
                                                                 std::move(part)));
        continue;
      }
      std::string s = item.get<std::string>();
      Atom a = parse_atom_syntax(s, where);
      switch (a.kind) {
        case Atom::Kind::kPlain: {
          auto it = t.vertices.find(a.name);
          if (it == t.vertices.end()) fail(where, "unknown vertex '" + a.name + "'");
          constant->insert(VertexId::named(it->second));
          break;
        }
        case Atom::Kind::kIndexed: {
          auto it = t.families.find(a.name);
          if (it == t.families.end()) fail(where, "unknown tail family '" + a.name + "'");
          if (a.index < 1) fail(where, "tail indices start at 1");
          constant->insert(VertexId::tail(it->second, a.index));
          break;
        }
        case Atom::Kind::kStar: {
          auto it = t.families.find(a.name);
          if (it == t.families.end()) fail(where, "unknown tail family '" + a.name + "'");
          *constant = set_union(*constant, VertexSet::of_tail_part(g.num_families(), it->second,
                                                                   {true, {}}));
          break;
        }
        case Atom::Kind::kVariable: {
          if (!allow_variable) fail(where, "the index variable is only valid inside bundles");
          auto it = t.families.find(a.name);
          if (it == t.families.end()) fail(where, "unknown tail family '" + a.name + "'");
          indexed->push_back(it->second);
          break;
        }
      }
    }
  };

  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) fail("edges", "expected an array");
    std::size_t i = 0;
    for (const auto& ed : doc["edges"]) {
      std::string where = "edges[" + std::to_string(i++) + "]";
      std::string name = ed.at("name").get<std::string>();
      if (t.edges.count(name)) fail(where, "duplicate edge '" + name + "'");
      VertexId src = parse_vertex_name(t, ed.at("source").get<std::string>(), where + ".source");
      VertexSet range(g.num_families());
      std::vector<std::int32_t> indexed;
      parse_range(ed.at("range"), where + ".range", false, &range, &indexed);
      t.edges[name] = g.add_concrete_edge(name, src, std::move(range));
    }
  }
  if (doc.contains("bundles")) {
    if (!doc["bundles"].is_array()) fail("bundles", "expected an array");
    std::size_t i = 0;
    for (const auto& bd : doc["bundles"]) {
      std::string where = "bundles[" + std::to_string(i++) + "]";
      std::string name = bd.at("name").get<std::string>();
      if (t.bundles.count(name)) fail(where, "duplicate bundle '" + name + "'");
      std::string src_text = bd.at("source").get<std::string>();
      Atom sa = parse_atom_syntax(src_text, where + ".source");
      BundleSource src;
      if (sa.kind == Atom::Kind::kVariable) {
        auto it = t.families.find(sa.name);
        if (it == t.families.end()) fail(where + ".source", "unknown tail family '" + sa.name + "'");
        src.indexed = true;
        src.family = it->second;
      } else {
        src.indexed = false;
        src.constant = parse_vertex_name(t, src_text, where + ".source");
      }
      BundleRange rng;
      rng.constant_part = g.empty_set();
      parse_range(bd.at("range"), where + ".range", true, &rng.constant_part,
                  &rng.indexed_families);
      t.bundles[name] = g.add_bundle(name, src, std::move(rng));
    }
  }

  auto rep = g.validate();
  if (!rep.ok) {
    std::string msg = "presentation invalid:";
    for (const auto& d : rep.diagnostics) msg += "\n  " + d;
    throw ParseError(msg);
  }
  return g;
}

std::string print_presentation(const Ultragraph& g) {
  json doc;
  doc["schema"] = 1;
  doc["vertices"] = json::array();
  for (const auto& name : g.named_names()) doc["vertices"].push_back(name);
  doc["tails"] = json::array();
  for (std::uint32_t f = 0; f < g.num_families(); ++f)
    doc["tails"].push_back({{"name", g.family(f).name}, {"all_sinks", g.family(f).all_sinks}});

  auto range_to_json = [&](const VertexSet& s, const std::vector<std::int32_t>& indexed) {
    json arr = json::array();
    for (auto id : s.named()) arr.push_back(g.named_names()[id]);
    for (std::uint32_t f = 0; f < s.num_families(); ++f) {
      const auto& part = s.tail(f);
      if (!part.cofinite) {
        for (auto k : part.idx)
          arr.push_back(g.family(f).name + "[" + std::to_string(k) + "]");
      } else if (part.idx.empty()) {
        arr.push_back(g.family(f).name + "[*]");
      } else {
        json obj;
        obj["cofinite"] = g.family(f).name;
        obj["except"] = part.idx;
        arr.push_back(obj);
      }
    }
    for (auto f : indexed) arr.push_back(g.family(f).name + "[k]");
    return arr;
  };

  doc["edges"] = json::array();
  for (std::uint32_t e = 0; e < g.num_concrete(); ++e) {
    const auto& ed = g.concrete_edge(static_cast<std::int32_t>(e));
    doc["edges"].push_back({{"name", ed.name},
                            {"source", format_vertex(g, ed.source)},
                            {"range", range_to_json(ed.range, {})}});
  }
  doc["bundles"] = json::array();
  for (std::uint32_t b = 0; b < g.num_bundles(); ++b) {
    const auto& bd = g.bundle(static_cast<std::int32_t>(b));
    std::string src = bd.source.indexed ? g.family(bd.source.family).name + "[k]"
                                        : format_vertex(g, bd.source.constant);
    doc["bundles"].push_back({{"name", bd.name},
                              {"source", src},
                              {"range", range_to_json(bd.range.constant_part,
                                                      bd.range.indexed_families)}});
  }
  return doc.dump(2);
}

namespace {

struct SetParser {
  const Ultragraph& g;
  NameTables t;
  std::string text;
  std::size_t pos = 0;

  SetParser(const Ultragraph& graph, std::string s) : g(graph), t(tables(graph)), text(std::move(s)) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail("set expression", "expected a name at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  VertexSet parse_expr() {
    VertexSet lhs = parse_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        lhs = set_union(lhs, parse_term());
      } else if (eat('-')) {
        lhs = set_minus(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  VertexSet parse_term() {
    VertexSet lhs = parse_factor();
    while (true) {
      skip_ws();
      if (eat('&'))
        lhs = set_intersect(lhs, parse_factor());
      else
        return lhs;
    }
  }

  VertexSet parse_factor() {
    skip_ws();
    if (eat('(')) {
      VertexSet inner = parse_expr();
      if (!eat(')')) fail("set expression", "missing ')'");
      return inner;
    }
    if (eat('{')) {
      VertexSet s = g.empty_set();
      if (!eat('}')) {
        do {
          s = set_union(s, parse_factor());
        } while (eat(','));
        if (!eat('}')) fail("set expression", "missing '}'");
      }
      return s;
    }
    std::string name = token();
    if (name == "r") {
      if (!eat('(')) fail("set expression", "expected '(' after r");
      std::string edge = token();
      EdgeRef e;
      if (eat('[')) {
        std::string idx = token();
        if (!eat(']')) fail("set expression", "missing ']'");
        auto it = t.bundles.find(edge);
        if (it == t.bundles.end()) fail("set expression", "unknown bundle '" + edge + "'");
        e = EdgeRef::bundle_edge(it->second, std::stoll(idx));
      } else {
        auto it = t.edges.find(edge);
        if (it == t.edges.end()) fail("set expression", "unknown edge '" + edge + "'");
        e = EdgeRef::concrete_edge(it->second);
      }
      if (!eat(')')) fail("set expression", "missing ')'");
      return g.range(e);
    }
    // vertex name, w[3], or w[*] (optionally w[*]\{1,2})
    if (eat('[')) {
      skip_ws();
      if (eat('*')) {
        if (!eat(']')) fail("set expression", "missing ']'");
        auto it = t.families.find(name);
        if (it == t.families.end()) fail("set expression", "unknown family '" + name + "'");
        VertexSet::TailPart part{true, {}};
        if (eat('\\')) {
          if (!eat('{')) fail("set expression", "expected '{' after '\\'");
          do {
            part.idx.push_back(std::stoll(token()));
          } while (eat(','));
          if (!eat('}')) fail("set expression", "missing '}'");
          std::sort(part.idx.begin(), part.idx.end());
        }
        return VertexSet::of_tail_part(g.num_families(), it->second, std::move(part));
      }
      std::int64_t k = std::stoll(token());
      if (!eat(']')) fail("set expression", "missing ']'");
      auto it = t.families.find(name);
      if (it == t.families.end()) fail("set expression", "unknown family '" + name + "'");
      return g.singleton(VertexId::tail(it->second, k));
    }
    auto it = t.vertices.find(name);
    if (it == t.vertices.end()) fail("set expression", "unknown vertex '" + name + "'");
    return g.singleton(VertexId::named(it->second));
  }
};

EdgeRef parse_edge_token(const Ultragraph& g, const NameTables& t, const std::string& tok,
                         const std::string& where) {
  Atom a = parse_atom_syntax(tok, where);
  if (a.kind == Atom::Kind::kPlain) {
    auto it = t.edges.find(a.name);
    if (it == t.edges.end()) fail(where, "unknown edge '" + a.name + "'");
    return EdgeRef::concrete_edge(it->second);
  }
  if (a.kind != Atom::Kind::kIndexed) fail(where, "expected an edge, got '" + tok + "'");
  auto it = t.bundles.find(a.name);
  if (it == t.bundles.end()) fail(where, "unknown bundle '" + a.name + "'");
  if (a.index < 1) fail(where, "bundle indices start at 1");
  (void)g;
  return EdgeRef::bundle_edge(it->second, a.index);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

VertexSet parse_set(const Ultragraph& g, const std::string& text) {
  SetParser p(g, text);
  VertexSet s = p.parse_expr();
  p.skip_ws();
  if (p.pos != p.text.size()) fail("set expression", "trailing input");
  return s;
}

ReducedWord parse_word(const Ultragraph& g, const std::string& text) {
  std::string body = trim(text);
  if (body.empty() || body == "1") return ReducedWord::identity();
  auto t = tables(g);
  ReducedWord w;
  for (auto& tok : split(body, '.')) {
    std::string item = trim(tok);
    bool inverse = false;
    if (item.size() > 3 && item.substr(item.size() - 3) == "^-1") {
      inverse = true;
      item = item.substr(0, item.size() - 3);
    }
    EdgeRef e = parse_edge_token(g, t, trim(item), "word");
    w = reduce_concat(w, ReducedWord{{{e, inverse}}});
  }
  return w;
}

Path parse_path(const Ultragraph& g, const std::string& text) {
  ReducedWord w = parse_word(g, text);
  Path pos, neg;
  if (!w.pn_shape(&pos, &neg) || !neg.empty()) fail("path", "expected a positive word");
  if (!g.path_composable(pos)) fail("path", "edges do not compose");
  return pos;
}

TightFilter parse_point(const Ultragraph& g, const std::string& text) {
  std::string body = trim(text);
  // sink terminal: path @ vertex
  if (auto at = body.find('@'); at != std::string::npos) {
    Path alpha = parse_path(g, trim(body.substr(0, at)));
    VertexId v = parse_vertex_name(tables(g), trim(body.substr(at + 1)), "point");
    return embed_boundary(g, BoundaryPoint::sink_terminal(std::move(alpha), v));
  }
  // finite type with an explicit filter: path ; descriptor
  if (auto semi = body.find(';'); semi != std::string::npos) {
    Path alpha = parse_path(g, trim(body.substr(0, semi)));
    std::string desc = trim(body.substr(semi + 1));
    if (desc.rfind("cof", 0) == 0) {
      VertexSet b = parse_set(g, trim(desc.substr(3)));
      return TightFilter::finite(std::move(alpha), UltrafilterDesc::cofinite_on(std::move(b)));
    }
    VertexId v = parse_vertex_name(tables(g), desc, "point");
    return TightFilter::finite(std::move(alpha), UltrafilterDesc::principal(v));
  }
  // eventually periodic: prefix.(cycle)*
  auto lp = body.find('(');
  auto rp = body.find(")*");
  if (lp == std::string::npos || rp == std::string::npos || rp < lp)
    fail("point", "expected 'prefix.(cycle)*', 'path @ sink', or 'path ; filter'");
  Path prefix = parse_path(g, trim(body.substr(0, lp)));
  Path cycle = parse_path(g, trim(body.substr(lp + 1, rp - lp - 1)));
  if (cycle.empty()) fail("point", "empty cycle");
  InfinitePath w = make_infinite_path(g, std::move(prefix), std::move(cycle));
  if (!infinite_path_valid(g, w)) fail("point", "the infinite path is not composable");
  return TightFilter::infinite(std::move(w));
}

std::string format_vertex(const Ultragraph& g, VertexId v) { return g.vertex_name(v); }

std::string format_edge(const Ultragraph& g, EdgeRef e) { return g.edge_name(e); }

std::string format_path(const Ultragraph& g, const Path& p) {
  if (p.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ".";
    out += g.edge_name(p.edges[i]);
  }
  return out;
}

std::string format_set(const Ultragraph& g, const VertexSet& s) {
  std::vector<std::string> items;
  for (auto id : s.named()) items.push_back(g.named_names()[id]);
  for (std::uint32_t f = 0; f < s.num_families(); ++f) {
    const auto& part = s.tail(f);
    if (!part.cofinite) {
      for (auto k : part.idx) items.push_back(g.family(f).name + "[" + std::to_string(k) + "]");
    } else {
      std::string item = g.family(f).name + "[*]";
      if (!part.idx.empty()) {
        item += "\\{";
        for (std::size_t i = 0; i < part.idx.size(); ++i) {
          if (i) item += ",";
          item += std::to_string(part.idx[i]);
        }
        item += "}";
      }
      items.push_back(std::move(item));
    }
  }
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "}";
}

std::string format_word(const Ultragraph& g, const ReducedWord& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ".";
    out += g.edge_name(w.letters[i].edge);
    if (w.letters[i].inverse) out += "^-1";
  }
  return out;
}

std::string format_infinite_path(const Ultragraph& g, const InfinitePath& w) {
  std::string out;
  if (!w.prefix.empty()) out += format_path(g, w.prefix) + ".";
  return out + "(" + format_path(g, w.cycle) + ")*";
}

std::string format_filter(const Ultragraph& g, const TightFilter& xi) {
  if (xi.is_infinite_type()) return format_infinite_path(g, xi.word());
  std::string out = "(" + format_path(g, xi.alpha()) + " ; ";
  if (xi.top().kind == UltrafilterDesc::Kind::kPrincipal)
    out += format_vertex(g, xi.top().vertex);
  else
    out += "cof " + format_set(g, xi.top().base);
  return out + ")";
}

std::string format_boundary_point(const Ultragraph& g, const BoundaryPoint& y) {
  if (y.infinite) return format_infinite_path(g, y.word);
  return format_path(g, y.alpha) + " @ " + format_vertex(g, y.sink);
}

std::string format_selement(const Ultragraph& g, const SElement& s) {
  if (s.is_zero()) return "0";
  return "(" + format_path(g, s.alpha()) + ", " + format_set(g, s.middle()) + ", " +
         format_path(g, s.beta()) + ")";
}

std::string format_cylinder(const Ultragraph& g, const Cylinder& c) {
  std::string out = "V" + format_selement(g, c.base);
  for (const auto& e : c.exclusions) out += " \\ V" + format_selement(g, e);
  return out;
}

std::string format_element(const Ultragraph& g, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, cells] : x.charts) {
    for (const auto& [cyl, q] : cells) {
      if (!first) out += " + ";
      first = false;
      out += rational_to_string(q) + "*[" + format_word(g, w) + "]x" + format_cylinder(g, cyl);
    }
  }
  return out;
}

}  // namespace ultra
