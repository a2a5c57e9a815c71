#include <gtest/gtest.h>

#include <random>

#include "gwreath/error.hpp"
#include "gwreath/graph_wreath.hpp"
#include "gwreath/rf_checker.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gwreath;
using namespace fixtures;

namespace {

Word word(const GroupSpec& delta, std::initializer_list<std::pair<Vertex, std::int64_t>> letters) {
  Word w;
  for (const auto& [at, r] : letters) w.syllables.push_back(syl(delta, at, r));
  return w;
}

WreathElement random_element(const Instance& inst, std::int64_t lo, std::int64_t hi, std::size_t len,
                             std::int64_t gamma_range, std::mt19937_64& rng) {
  const auto w = random_word(inst.delta, window(inst.graph, lo, hi), len, rng);
  return gw_make(inst, w, random_gamma(inst.graph, gamma_range, rng));
}

struct Case {
  const char* name;
  Instance inst;
  std::int64_t lo, hi;
};

std::vector<Case> cases() {
  return {{"line-z2", instance(GroupSpec::cyclic(2), line_graph()), -4, 4},
          {"line-s3", instance(GroupSpec::symmetric(3), line_graph()), -4, 4},
          {"factorial-s3", instance(GroupSpec::symmetric(3), factorial_graph(0)), -3, 3},
          {"mix-z3", instance(GroupSpec::cyclic(3), finite_mix()), -2, 2},
          {"k5-s3", instance(GroupSpec::symmetric(3), complete_k5()), 0, 0},
          {"triangles-z2", instance(GroupSpec::cyclic(2), two_triangles()), 0, 0}};
}

const GroupElement t01 = GroupElement{GroupKind::Symmetric, {1, 0, 2}};
const GroupElement t02 = GroupElement{GroupKind::Symmetric, {2, 1, 0}};

}  // namespace

TEST(GraphWreath, ActWordExamples) {
  const auto z2 = GroupSpec::cyclic(2);
  const auto line = line_graph();
  EXPECT_EQ(act_word(line, z2, g1(2), word(z2, {{v(0), 1}, {v(1), 1}})), word(z2, {{v(2), 1}, {v(3), 1}}));
  const auto w = word(z2, {{v(3), 1}, {v(0), 1}});
  EXPECT_EQ(act_word(line, z2, g1(0), w), canonical_form(line, z2, w));
}

TEST(GraphWreath, ComposeExample) {
  const auto inst = instance(GroupSpec::cyclic(2), line_graph());
  const auto z2 = inst.delta;
  const auto x = gw_make(inst, word(z2, {{v(0), 1}}), g1(1));
  const auto y = gw_make(inst, word(z2, {{v(0), 1}}), g1(-1));
  EXPECT_EQ(gw_compose(inst, x, y), gw_make(inst, word(z2, {{v(0), 1}, {v(1), 1}}), g1(0)));
  EXPECT_EQ(gw_compose(inst, x, gw_identity(inst)), x);
  EXPECT_EQ(to_string(inst, x), "a:0^1 @ 1");
}

TEST(GraphWreath, ActionLawsSampled) {
  std::mt19937_64 rng(29);
  for (const auto& c : cases()) {
    const auto& g = c.inst.graph;
    const auto& d = c.inst.delta;
    const auto pool = window(g, c.lo, c.hi);
    for (int i = 0; i < 500; ++i) {
      const auto a = random_gamma(g, 20, rng);
      const auto b = random_gamma(g, 20, rng);
      const auto u = random_word(d, pool, 5, rng);
      const auto w = random_word(d, pool, 5, rng);
      ASSERT_EQ(act_word(g, d, gamma_compose(a, b), u), act_word(g, d, a, act_word(g, d, b, u))) << c.name;
      ASSERT_EQ(act_word(g, d, a, gp_compose(g, d, u, w)),
                gp_compose(g, d, act_word(g, d, a, u), act_word(g, d, a, w)))
          << c.name;
      ASSERT_EQ(act_word(g, d, g.gamma_identity(), u), canonical_form(g, d, u)) << c.name;
    }
  }
}

TEST(GraphWreath, GroupLawsSampled) {
  std::mt19937_64 rng(31);
  for (const auto& c : cases()) {
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_element(c.inst, c.lo, c.hi, 4, 6, rng);
      const auto y = random_element(c.inst, c.lo, c.hi, 4, 6, rng);
      const auto z = random_element(c.inst, c.lo, c.hi, 4, 6, rng);
      ASSERT_EQ(gw_compose(c.inst, gw_compose(c.inst, x, y), z), gw_compose(c.inst, x, gw_compose(c.inst, y, z)))
          << c.name;
      ASSERT_EQ(gw_compose(c.inst, gw_identity(c.inst), x), x) << c.name;
      ASSERT_TRUE(gw_is_identity(c.inst, gw_compose(c.inst, x, gw_invert(c.inst, x)))) << c.name;
      ASSERT_TRUE(gw_is_identity(c.inst, gw_compose(c.inst, gw_invert(c.inst, x), x))) << c.name;
    }
  }
}

TEST(GraphWreath, ConjugationByGammaIsTheAction) {
  std::mt19937_64 rng(37);
  const auto inst = instance(GroupSpec::symmetric(3), line_graph());
  for (int i = 0; i < 200; ++i) {
    const auto w = random_word(inst.delta, window(inst.graph, -3, 3), 4, rng);
    const auto gamma = random_gamma(inst.graph, 9, rng);
    const auto t = gw_make(inst, Word{}, gamma);
    const auto conj = gw_compose(inst, gw_compose(inst, t, gw_make(inst, w, g1(0))), gw_invert(inst, t));
    ASSERT_EQ(conj, gw_make(inst, act_word(inst.graph, inst.delta, gamma, w), g1(0)));
  }
}

TEST(GraphWreath, ObstructionLemmas) {
  const auto f0 = factorial_graph(0);
  const auto o = find_obstruction(f0, 0, 0, 0);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->lemma, ObstructionLemma::FactorialDivisibility);
  EXPECT_TRUE(lemma_applies(f0, *o));
  EXPECT_TRUE(offset_hit_up_to(*o, 100));
  EXPECT_FALSE(find_obstruction(f0, 0, 0, 1).has_value());

  const auto f1 = factorial_graph(1);
  const auto tail = find_obstruction(f1, 0, 0, 1);
  ASSERT_TRUE(tail.has_value());
  EXPECT_EQ(tail->lemma, ObstructionLemma::FactorialTail);
  EXPECT_TRUE(offset_hit_up_to(*tail, 100));
  EXPECT_FALSE(find_obstruction(f1, 0, 0, 0).has_value());

  const auto cz = complete_z();
  const auto cover = find_obstruction(cz, 0, 0, 0);
  ASSERT_TRUE(cover.has_value());
  EXPECT_EQ(cover->lemma, ObstructionLemma::ArithmeticCover);
  EXPECT_FALSE(find_obstruction(line_graph(), 0, 0, 2).has_value());

  // A forged obstruction fails the structural check.
  Obstruction forged = *tail;
  forged.offset = 2;
  EXPECT_FALSE(lemma_applies(f1, forged));
}

TEST(GraphWreath, ObstructionsHoldNumerically) {
  // Every offset the lemmas certify is hit modulo every m <= 60.
  for (const auto& graph : {factorial_graph(0), factorial_graph(1), factorial_graph(4),
                            GammaGraph::translation({"a"}, {{{0, 0}, {DifferenceFamily::arithmetic(2, 3)}}})}) {
    for (std::int64_t t = -12; t <= 12; ++t) {
      const auto o = find_obstruction(graph, 0, 0, t);
      if (!o) continue;
      for (std::int64_t m = 1; m <= 60; ++m)
        ASSERT_TRUE(oracle::family_residues(graph.families(0, 0)[0], m).count(((t % m) + m) % m))
            << to_string(graph.families(0, 0)[0]) << " t=" << t << " m=" << m;
    }
  }
}

TEST(GraphWreath, NonAbelianLoopWitness) {
  const auto inst = instance(GroupSpec::symmetric(3), factorial_graph(0));
  const auto w = witness(inst, WitnessKind::NonAbelianLoop, {{v(0)}, {t01, t02}});
  const auto expected = gw_make(
      inst, Word{{Syllable{v(0), commutator(inst.delta, t01, t02)}}}, g1(0));
  EXPECT_EQ(w.element, expected);
  EXPECT_FALSE(gw_is_identity(inst, w.element));
  EXPECT_EQ(w.obstruction.lemma, ObstructionLemma::FactorialDivisibility);
  EXPECT_TRUE(verify_witness(inst, w, 100));
  EXPECT_EQ(witness_tag(w.kind), "nonabelian-loop");
  EXPECT_EQ(parse_witness_tag("nonabelian-loop"), WitnessKind::NonAbelianLoop);
  EXPECT_FALSE(parse_witness_tag("loop-witness").has_value());
}

TEST(GraphWreath, NonNeighbourCollapseWitness) {
  const auto inst = instance(GroupSpec::cyclic(2), factorial_graph(1));
  const auto w = witness(inst, WitnessKind::NonNeighbourCollapse, {{v(0), v(1)}, {}});
  const auto z2 = inst.delta;
  EXPECT_EQ(w.element, gw_make(inst, word(z2, {{v(0), 1}, {v(1), 1}, {v(0), 1}, {v(1), 1}}), g1(0)));
  EXPECT_FALSE(gw_is_identity(inst, w.element));
  EXPECT_EQ(w.obstruction.lemma, ObstructionLemma::FactorialTail);
  EXPECT_EQ(w.obstruction.offset, 1);
  EXPECT_TRUE(verify_witness(inst, w, 100));
}

TEST(GraphWreath, WitnessRefusals) {
  // Abelian vertex group: no non-commuting pair.
  EXPECT_THROW(witness(instance(GroupSpec::cyclic(2), factorial_graph(0)), WitnessKind::NonAbelianLoop, {{v(0)}, {}}),
               NotCertifiable);
  // Commuting elements.
  const auto s3 = GroupSpec::symmetric(3);
  EXPECT_THROW(witness(instance(s3, factorial_graph(0)), WitnessKind::NonAbelianLoop, {{v(0)}, {t01, t01}}),
               NotCertifiable);
  // No lemma covers the line graph.
  EXPECT_THROW(witness(instance(s3, line_graph()), WitnessKind::NonAbelianLoop, {{v(0)}, {}}), NotCertifiable);
  // Adjacent vertices.
  EXPECT_THROW(witness(instance(GroupSpec::cyclic(2), factorial_graph(1)), WitnessKind::NonNeighbourCollapse,
                       {{v(0), v(3)}, {}}),
               NotCertifiable);
  // Orbit collapses are never certified.
  EXPECT_THROW(witness(instance(GroupSpec::cyclic(2), factorial_graph(1)), WitnessKind::OrbitCollapse,
                       {{v(0), v(1)}, {}}),
               NotCertifiable);
  // Finite graphs have no lemma.
  EXPECT_THROW(witness(instance(s3, complete_k5()), WitnessKind::NonAbelianLoop, {{finite_vertex(0)}, {}}),
               NotCertifiable);
}

TEST(GraphWreath, TamperedWitnessRejected) {
  const auto inst = instance(GroupSpec::cyclic(2), factorial_graph(1));
  auto w = witness(inst, WitnessKind::NonNeighbourCollapse, {{v(0), v(1)}, {}});
  auto bad = w;
  bad.element = gw_identity(inst);
  EXPECT_FALSE(verify_witness(inst, bad, 50));
  bad = w;
  bad.obstruction.offset = 2;
  EXPECT_FALSE(verify_witness(inst, bad, 50));
  bad = w;
  bad.vertices[1] = v(2);
  EXPECT_FALSE(verify_witness(inst, bad, 50));
}

TEST(GraphWreath, RestrictOrbits) {
  const auto z2 = GroupSpec::cyclic(2);
  const auto line = instance(z2, line_graph());
  const auto x = gw_make(line, word(z2, {{v(0), 1}, {v(2), 1}}), g1(0));
  const auto r = restrict_orbits(line, x);
  EXPECT_EQ(r.kept, std::vector<std::int64_t>{0});
  EXPECT_EQ(r.element, x);

  const auto two = instance(z2, two_orbit_graph());
  const auto y = gw_make(two, word(z2, {{v(0), 1}, {v(3), 1}}), g1(2));
  const auto ry = restrict_orbits(two, y);
  EXPECT_EQ(ry.kept, std::vector<std::int64_t>{0});
  EXPECT_EQ(ry.instance.graph.labels(), std::vector<std::string>{"a"});
  EXPECT_EQ(ry.element, y);

  const auto e5 = gw_make(line, Word{}, g1(5));
  const auto re = restrict_orbits(line, e5);
  EXPECT_TRUE(re.kept.empty());
  EXPECT_TRUE(re.instance.graph.labels().empty());
  EXPECT_EQ(re.element.gamma, g1(5));
}

TEST(GraphWreath, SeparationExamples) {
  const auto z2 = GroupSpec::cyclic(2);
  const auto inst = instance(z2, line_graph());
  const auto x = gw_make(inst, word(z2, {{v(0), 1}, {v(2), 1}}), g1(0));
  const auto c = separate(inst, x, 64);
  ASSERT_TRUE(std::holds_alternative<ModulusSubgroup>(c.subgroup));
  EXPECT_EQ(std::get<ModulusSubgroup>(c.subgroup).modulus, 4);
  EXPECT_TRUE(c.checks.all());
  EXPECT_TRUE(verify_certificate(inst, c).ok);
  EXPECT_TRUE(oracle::check_separation(inst, c).empty());
  // m = 3 merges nothing but joins K0 and K2.
  EXPECT_TRUE(quotient_graph(line_graph(), ModulusSubgroup{3}).adjacent(0, 2));

  const auto e5 = gw_make(inst, Word{}, g1(5));
  const auto c5 = separate(inst, e5, 64);
  EXPECT_EQ(std::get<ModulusSubgroup>(c5.subgroup).modulus, 2);
  EXPECT_EQ(c5.gamma_image, g1(1));
  EXPECT_TRUE(verify_certificate(inst, c5).ok);

  EXPECT_THROW(separate(inst, gw_identity(inst), 64), DegenerateInput);
  EXPECT_THROW(separate(inst, x, 3), SearchExhausted);
}

TEST(GraphWreath, SeparationFiniteMode) {
  const auto s3 = GroupSpec::symmetric(3);
  const auto inst = instance(s3, complete_k5());
  const auto x = gw_make(inst, Word{{Syllable{finite_vertex(0), t01}, Syllable{finite_vertex(2), t02}}}, g1(3));
  const auto c = separate(inst, x, 64);
  EXPECT_EQ(c.index, 5);
  EXPECT_TRUE(verify_certificate(inst, c).ok);
  // gamma in the kernel of the action still separates through the lattice.
  const auto y = gw_make(inst, Word{}, g1(5));
  const auto cy = separate(inst, y, 64);
  EXPECT_TRUE(verify_certificate(inst, cy).ok);
  EXPECT_EQ(cy.index, 2);
}

TEST(GraphWreath, RandomSeparationsVerify) {
  std::mt19937_64 rng(41);
  for (const auto& c : cases()) {
    // Not residually finite: some elements have no certificate at any bound.
    const bool may_fail = classify(c.inst).kind == VerdictKind::NotResiduallyFinite;
    for (int i = 0; i < 40; ++i) {
      const auto x = random_element(c.inst, c.lo, c.hi, 5, 6, rng);
      if (gw_is_identity(c.inst, x)) continue;
      RFCertificate cert;
      try {
        cert = separate(c.inst, x, 64);
      } catch (const SearchExhausted& e) {
        if (may_fail) continue;
        FAIL() << c.name << ": " << to_string(c.inst, x) << ": " << e.what();
      } catch (const Error& e) {
        FAIL() << c.name << ": " << to_string(c.inst, x) << ": " << e.what();
      }
      const auto ver = verify_certificate(c.inst, cert);
      ASSERT_TRUE(ver.ok) << c.name << ": " << (ver.failures.empty() ? "" : ver.failures[0]);
      if (c.inst.graph.is_translation()) {
        const auto bad = oracle::check_separation(c.inst, cert);
        ASSERT_TRUE(bad.empty()) << c.name << ": " << bad[0];
      }
    }
  }
}

TEST(GraphWreath, TamperedCertificateRejected) {
  const auto z2 = GroupSpec::cyclic(2);
  const auto inst = instance(z2, line_graph());
  const auto x = gw_make(inst, word(z2, {{v(0), 1}, {v(2), 1}}), g1(0));
  const auto c = separate(inst, x, 64);
  auto bad = c;
  bad.subgroup = ModulusSubgroup{3};
  EXPECT_FALSE(verify_certificate(inst, bad).ok);
  bad = c;
  bad.word_image = Word{};
  EXPECT_FALSE(verify_certificate(inst, bad).ok);
  bad = c;
  bad.index = 5;
  EXPECT_FALSE(verify_certificate(inst, bad).ok);
  bad = c;
  bad.element = gw_make(inst, word(z2, {{v(0), 1}, {v(1), 1}}), g1(0));
  EXPECT_FALSE(verify_certificate(inst, bad).ok);
}

TEST(GraphWreath, SeparationBudgetBoundsSearch) {
  std::mt19937_64 rng(43);
  const auto inst = instance(GroupSpec::cyclic(3), finite_mix());
  for (int i = 0; i < 100; ++i) {
    const auto x = random_element(inst, -3, 3, 5, 8, rng);
    if (gw_is_identity(inst, x)) continue;
    const auto budget = separation_budget(inst, x);
    ASSERT_TRUE(budget.has_value());
    const auto c = separate(inst, x, 64);
    ASSERT_LE(std::get<ModulusSubgroup>(c.subgroup).modulus, *budget);
  }
}
