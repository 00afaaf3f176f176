#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ultra/parse.hpp"

using namespace ultra;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kFixtureDir = FIXTURE_DIR;

}  // namespace

TEST_CASE("documents parse to the expected graphs") {
  auto pica = parse_presentation(slurp(std::string(kFixtureDir) + "/infinite_fan.json"));
  CHECK(pica.tier() == Tier::kNormalForm);
  CHECK(pica.num_named() == 1);
  CHECK(pica.num_families() == 1);
  CHECK(pica.num_concrete() == 1);
  CHECK(pica.num_bundles() == 1);
  CHECK(pica.range(EdgeRef::concrete_edge(0)) == VertexSet::of_tail_part(1, 0, {true, {}}));
  CHECK(pica.range(EdgeRef::bundle_edge(0, 7)) ==
        set_union(pica.singleton(VertexId::named(0)), pica.singleton(VertexId::tail(0, 7))));

  auto two = parse_presentation(slurp(std::string(kFixtureDir) + "/two_vertex.json"));
  CHECK(two.tier() == Tier::kFinite);
  CHECK(two.num_named() == 2);
  CHECK(two.range(EdgeRef::concrete_edge(0)) == VertexSet::of_named(0, {0, 1}));
}

TEST_CASE("parse and print round-trip on all fixtures") {
  const char* names[] = {"two_vertex", "single_loop", "single_vertex", "line3",
                         "ultra4",     "infinite_fan",     "sink_tail",     "nested_ranges"};
  for (const char* name : names) {
    INFO(name);
    std::string text = slurp(std::string(kFixtureDir) + "/" + name + ".json");
    auto g = parse_presentation(text);
    auto printed = print_presentation(g);
    auto g2 = parse_presentation(printed);
    CHECK(print_presentation(g2) == printed);
    CHECK(g2.num_named() == g.num_named());
    CHECK(g2.num_families() == g.num_families());
    CHECK(g2.num_concrete() == g.num_concrete());
    CHECK(g2.num_bundles() == g.num_bundles());
    for (std::uint32_t e = 0; e < g.num_concrete(); ++e) {
      CHECK(g2.concrete_edge(e).source == g.concrete_edge(e).source);
      CHECK(g2.concrete_edge(e).range == g.concrete_edge(e).range);
    }
  }
}

TEST_CASE("parser diagnostics") {
  CHECK_THROWS_AS(parse_presentation("not json"), ParseError);
  CHECK_THROWS_AS(parse_presentation("{}"), ParseError);  // missing schema
  // empty range
  const char* empty_range = R"({
    "schema": 1,
    "vertices": ["v"],
    "edges": [{"name": "e", "source": "v", "range": []}]
  })";
  try {
    parse_presentation(empty_range);
    FAIL("expected a diagnostic");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("range must be nonempty") != std::string::npos);
  }
  // unknown vertex
  const char* unknown = R"({
    "schema": 1,
    "vertices": ["v"],
    "edges": [{"name": "e", "source": "z", "range": ["v"]}]
  })";
  try {
    parse_presentation(unknown);
    FAIL("expected a diagnostic");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("edges[0]") != std::string::npos);
    CHECK(msg.find("unknown vertex") != std::string::npos);
  }
  // the index variable is bundle-only
  const char* stray_var = R"({
    "schema": 1,
    "tails": [{"name": "w", "all_sinks": false}],
    "vertices": ["v"],
    "edges": [{"name": "e", "source": "v", "range": ["w[k]"]}]
  })";
  CHECK_THROWS_AS(parse_presentation(stray_var), ParseError);
}

TEST_CASE("set expressions") {
  auto g = fixtures::infinite_fan();
  CHECK(parse_set(g, "v0") == g.singleton(VertexId::named(0)));
  CHECK(parse_set(g, "w[3]") == g.singleton(VertexId::tail(0, 3)));
  CHECK(parse_set(g, "w[*]") == VertexSet::of_tail_part(1, 0, {true, {}}));
  CHECK(parse_set(g, "w[*]\\{1,2}") == VertexSet::of_tail_part(1, 0, {true, {1, 2}}));
  CHECK(parse_set(g, "r(e0)") == g.range(EdgeRef::concrete_edge(0)));
  CHECK(parse_set(g, "r(e[4])") == g.range(EdgeRef::bundle_edge(0, 4)));
  CHECK(parse_set(g, "{v0, w[1]}") ==
        set_union(g.singleton(VertexId::named(0)), g.singleton(VertexId::tail(0, 1))));
  CHECK(parse_set(g, "r(e0) - w[1]") ==
        set_minus(g.range(EdgeRef::concrete_edge(0)), g.singleton(VertexId::tail(0, 1))));
  CHECK(parse_set(g, "r(e[1]) & r(e[2])") == g.singleton(VertexId::named(0)));
  CHECK(parse_set(g, "(v0 + w[1]) & w[*]") == g.singleton(VertexId::tail(0, 1)));
  CHECK_THROWS_AS(parse_set(g, "nope"), ParseError);
  CHECK_THROWS_AS(parse_set(g, "v0 +"), ParseError);

  // the printer's output is itself a valid set expression
  auto s = parse_set(g, "w[*]\\{2} + v0");
  CHECK(parse_set(g, format_set(g, s)) == s);
  CHECK(parse_set(g, format_set(g, g.empty_set())) == g.empty_set());
}

TEST_CASE("words, paths and points") {
  auto g = fixtures::infinite_fan();
  auto w = parse_word(g, "e0.e[2]^-1");
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0].edge == EdgeRef::concrete_edge(0));
  CHECK_FALSE(w.letters[0].inverse);
  CHECK(w.letters[1].edge == EdgeRef::bundle_edge(0, 2));
  CHECK(w.letters[1].inverse);
  CHECK(parse_word(g, "1").is_identity());
  CHECK(parse_word(g, "e0.e0^-1").is_identity());
  CHECK(format_word(g, w) == "e0.e[2]^-1");

  auto p = parse_path(g, "e0.e[3]");
  CHECK(p.size() == 2);
  CHECK_THROWS_AS(parse_path(g, "e0^-1"), ParseError);

  auto inf = parse_point(g, "e0.(e[2])*");
  REQUIRE(inf.is_infinite_type());
  CHECK(inf.word().prefix == Path{{EdgeRef::concrete_edge(0)}});
  CHECK(inf.word().cycle == Path{{EdgeRef::bundle_edge(0, 2)}});
  CHECK(format_filter(g, inf) == "e0.(e[2])*");

  auto cof = parse_point(g, "e0 ; cof r(e0)");
  REQUIRE_FALSE(cof.is_infinite_type());
  CHECK(cof.top().kind == UltrafilterDesc::Kind::kCofinite);
  CHECK(cof.top().base == g.range(EdgeRef::concrete_edge(0)));

  auto two = fixtures::two_vertex();
  auto sink = parse_point(two, "e @ w");
  CHECK(sink == TightFilter::finite(Path{{EdgeRef::concrete_edge(0)}},
                                    UltrafilterDesc::principal(VertexId::named(1))));
  auto sink0 = parse_point(two, " @ w");
  CHECK(sink0.alpha().empty());
  CHECK_THROWS_AS(parse_point(two, "e @ v"), DomainError);  // v is not a sink
}

TEST_CASE("formatting covers the element model") {
  auto g = fixtures::two_vertex();
  auto gv = GeneralizedVertices::compute(g);
  AlgebraContext ctx(g, gv);
  EdgeRef e = EdgeRef::concrete_edge(0);
  CHECK(format_element(g, AlgebraElement{}) == "0");
  auto x = add(ctx, gen_s(ctx, e), scalar_mul(ctx, Rational(1, 2), gen_p(ctx, g.universe())));
  auto text = format_element(g, x);
  CHECK(text.find("1/2") != std::string::npos);
  CHECK(text.find("[e]x") != std::string::npos);
  CHECK(format_selement(g, SElement::zero()) == "0");
  CHECK(format_path(g, {}) == "1");
}
