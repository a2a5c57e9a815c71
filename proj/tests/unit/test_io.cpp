#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <random>
#include <sstream>

#include "gwreath/error.hpp"
#include "gwreath/io.hpp"
#include "support/fixtures.hpp"

using namespace gwreath;
using namespace fixtures;

namespace {

const std::string kLine = R"(# line graph
[delta]
cyclic 2

[gamma]
translation

[graph]
labels a
family a a finite 1

[elements]
w1 = a:0^1 a:2^1 @ 0
w2 = e @ 5
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(0, "", "");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(InstanceFormat, ParsesLineGraph) {
  const auto file = parse_instance(kLine);
  EXPECT_EQ(file.instance.delta, GroupSpec::cyclic(2));
  EXPECT_TRUE(file.instance.graph.is_translation());
  EXPECT_TRUE(adjacent(file.instance.graph, v(0), v(1)));
  ASSERT_EQ(file.elements.size(), 2u);
  EXPECT_EQ(to_string(file.instance, file.element("w1")), "a:0^1 a:2^1 @ 0");
  EXPECT_EQ(file.element("w2").gamma, g1(5));
  EXPECT_THROW(file.element("w9"), InvalidArgument);
}

TEST(InstanceFormat, AllShippedInstancesLoad) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GWREATH_INSTANCE_DIR)) {
    if (entry.path().extension() != ".instance") continue;
    ++count;
    EXPECT_NO_THROW(load_instance(entry.path().string())) << entry.path();
  }
  EXPECT_GE(count, 9u);
}

TEST(InstanceFormat, FiniteGraphAndTable) {
  const auto file = parse_instance(R"([delta]
table 4 identity 0
row 0 1 2 3
row 1 0 3 2
row 2 3 0 1
row 3 2 1 0
[gamma]
finite
[graph]
vertices 4
edge 0 1
edge 2 3
generator 2 3 0 1
[elements]
x = 0^1 2^3 @ 1
)");
  EXPECT_EQ(*file.instance.delta.order(), 4);
  EXPECT_FALSE(file.instance.graph.is_translation());
  EXPECT_EQ(file.element("x").gamma, g1(1));
}

TEST(InstanceFormat, ErrorsNameLineAndField) {
  auto e = parse_error("[delta]\ncyclic 2\n[gamma]\ntranslation\n[graph]\nlabels a\ncolour red\n");
  EXPECT_EQ(e.line(), 7u);
  EXPECT_EQ(e.field(), "colour");

  e = parse_error("[delta]\ncyclic x\n[gamma]\ntranslation\n[graph]\nlabels a\n");
  EXPECT_EQ(e.line(), 2u);

  e = parse_error("[delta]\ncyclic 2\n[gamma]\ntranslation\n[graph]\nlabels a\nfamily a a weird 1\n");
  EXPECT_EQ(e.line(), 7u);
  EXPECT_EQ(e.field(), "family");

  e = parse_error("[delta]\ncyclic 2\n[gamma]\ntranslation\n[graph]\nlabels a\nfamily a b finite 1\n");
  EXPECT_EQ(e.line(), 7u);

  e = parse_error("[delta]\ncyclic 2\n[graph]\nlabels a\n");
  EXPECT_EQ(e.field(), "gamma");

  e = parse_error("[delta]\ncyclic 2\n[gamma]\ntranslation\n[graph]\nlabels a\n[elements]\nx = a:0^5\n");
  EXPECT_EQ(e.line(), 8u);
  EXPECT_EQ(e.field(), "x");

  e = parse_error("[delta]\ncyclic 2\n[wat]\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.field(), "section");

  e = parse_error("[delta]\ncyclic 2\n[gamma]\nfinite\n[graph]\nvertices 3\nedge 0 1\ngenerator 1 2 0\n");
  EXPECT_EQ(e.field(), "graph");
}

TEST(InstanceFormat, ElementLiterals) {
  const auto file = parse_instance(kLine);
  const auto& inst = file.instance;
  EXPECT_EQ(parse_element_literal(inst, "a:1^1 a:0^1 a:1^1"), gw_make(inst, Word{{syl(inst.delta, v(0), 1)}}, g1(0)));
  EXPECT_EQ(parse_element_literal(inst, "e"), gw_identity(inst));
  EXPECT_THROW(parse_element_literal(inst, "b:0^1"), InvalidArgument);
  EXPECT_THROW(parse_element_literal(inst, "a:0^1 @"), InvalidArgument);
  EXPECT_EQ(parse_group_spec("symmetric 4"), GroupSpec::symmetric(4));
  EXPECT_EQ(parse_group_spec("cyclic-product 4 2"), GroupSpec::cyclic_product(4, 2));
  EXPECT_THROW(parse_group_spec("dihedral 4"), InvalidArgument);
}

TEST(Structured, SeparationRoundTrip) {
  std::mt19937_64 rng(53);
  for (const auto& inst : {instance(GroupSpec::cyclic(2), line_graph()), instance(GroupSpec::symmetric(3), finite_mix()),
                           instance(GroupSpec::symmetric(3), complete_k5())}) {
    for (int i = 0; i < 20; ++i) {
      const auto w = random_word(inst.delta, window(inst.graph, -3, 3), 4, rng);
      const auto x = gw_make(inst, w, random_gamma(inst.graph, 6, rng));
      if (gw_is_identity(inst, x)) continue;
      const auto cert = separate(inst, x, 64);
      const auto doc = structured_separation(inst, cert);
      EXPECT_EQ(doc, structured_separation(inst, cert));
      const auto parsed = parse_certificate(inst, doc);
      EXPECT_EQ(parsed.type, "separation-certificate");
      ASSERT_TRUE(parsed.separation.has_value());
      EXPECT_EQ(parsed.separation->element, cert.element);
      EXPECT_EQ(parsed.separation->subgroup, cert.subgroup);
      EXPECT_EQ(parsed.separation->quotient, cert.quotient);
      EXPECT_EQ(parsed.separation->word_image, cert.word_image);
      EXPECT_EQ(parsed.separation->checks, cert.checks);
      EXPECT_TRUE(verify_certificate(inst, *parsed.separation).ok);
      EXPECT_EQ(structured_separation(inst, *parsed.separation), doc);
    }
  }
}

TEST(Structured, WitnessRoundTrip) {
  for (const auto& inst : {instance(GroupSpec::symmetric(3), factorial_graph(0)),
                           instance(GroupSpec::cyclic(2), factorial_graph(1)),
                           instance(GroupSpec::symmetric(3), complete_z())}) {
    const auto verdict = classify(inst);
    ASSERT_TRUE(verdict.witness.has_value());
    const auto doc = structured_witness(inst, *verdict.witness);
    const auto parsed = parse_certificate(inst, doc);
    ASSERT_TRUE(parsed.witness.has_value());
    EXPECT_EQ(parsed.witness->element, verdict.witness->element);
    EXPECT_EQ(parsed.witness->obstruction, verdict.witness->obstruction);
    EXPECT_TRUE(verify_witness(inst, *parsed.witness, 64));
    EXPECT_EQ(structured_witness(inst, *parsed.witness), doc);
  }
}

TEST(Structured, LefRoundTrip) {
  const std::vector<std::tuple<GammaGraph, std::vector<GammaElement>, std::vector<Vertex>>> cases{
      {factorial_graph(0), {g1(0), g1(1)}, {v(0), v(1), v(2)}},
      {two_orbit_graph(), {g1(-1), g1(2)}, {v(0), v(1, 1), v(3)}},
      {complete_k5(), {g1(0), g1(2)}, {finite_vertex(1), finite_vertex(4)}}};
  for (const auto& [graph, a, e] : cases) {
    const auto cert = lef_certificate(graph, a, e, 64);
    const auto doc = structured_lef(graph, cert);
    const auto parsed = parse_certificate(instance(GroupSpec::cyclic(2), graph), doc);
    ASSERT_TRUE(parsed.lef.has_value());
    EXPECT_EQ(parsed.lef->modulus, cert.modulus);
    EXPECT_EQ(parsed.lef->action, cert.action);
    EXPECT_TRUE(verify_lef(*parsed.lef, graph, a, e));
    EXPECT_EQ(structured_lef(graph, *parsed.lef), doc);
  }
}

TEST(Structured, HeaderAndKeyOrder) {
  const auto inst = instance(GroupSpec::cyclic(2), line_graph());
  const auto doc = structured_verdict(inst, classify(inst));
  const auto lines = lines_of(doc);
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[0], R"({"format":"gwreath","version":1,"type":"verdict"})");
  for (const auto& l : lines) {
    const auto j = nlohmann::ordered_json::parse(l);
    EXPECT_TRUE(j.is_object());
  }
  EXPECT_EQ(doc, structured_verdict(inst, classify(inst)));
}

TEST(Structured, RejectsBadDocuments) {
  const auto inst = instance(GroupSpec::cyclic(2), line_graph());
  EXPECT_THROW(parse_certificate(inst, ""), ParseError);
  EXPECT_THROW(parse_certificate(inst, "not json\n"), ParseError);
  try {
    parse_certificate(inst, R"({"format":"gwreath","version":2,"type":"separation-certificate"})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "version");
  }
  try {
    parse_certificate(inst, R"({"format":"gwreath","version":1,"type":"separation-certificate"})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "element");
  }
}

TEST(TextOutput, VerdictHeaders) {
  const auto rf = instance(GroupSpec::cyclic(2), line_graph());
  EXPECT_EQ(lines_of(render_verdict(rf, classify(rf)))[0], "RESIDUALLY FINITE");
  const auto ex12 = instance(GroupSpec::symmetric(3), factorial_graph(0));
  EXPECT_EQ(lines_of(render_verdict(ex12, classify(ex12)))[0], "NOT RESIDUALLY FINITE (nonabelian-loop witness)");
  const auto unk = instance(GroupSpec::cyclic(2), factorial_graph(0));
  EXPECT_EQ(lines_of(render_verdict(unk, classify(unk)))[0], "UNKNOWN (cond3)");
}
