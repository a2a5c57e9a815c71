#include <gtest/gtest.h>

#include <random>

#include "gwreath/error.hpp"
#include "gwreath/groups.hpp"
#include "support/oracles.hpp"

using namespace gwreath;

TEST(Groups, CyclicArithmetic) {
  const auto z2 = GroupSpec::cyclic(2);
  EXPECT_EQ(compose(z2, residue(z2, 1), residue(z2, 1)), residue(z2, 0));
  const auto z3 = GroupSpec::cyclic(3);
  EXPECT_EQ(invert(z3, residue(z3, 1)), residue(z3, 2));
  EXPECT_TRUE(is_abelian(z2));
}

TEST(Groups, SymmetricComposeRightToLeft) {
  const auto s3 = GroupSpec::symmetric(3);
  // (0 1) then (0 2) applied right first.
  const auto t01 = permutation(s3, {1, 0, 2});
  const auto t02 = permutation(s3, {2, 1, 0});
  EXPECT_EQ(compose(s3, t01, t02), permutation(s3, {2, 0, 1}));
  EXPECT_EQ(invert(s3, permutation(s3, {1, 2, 0})), permutation(s3, {2, 0, 1}));
  EXPECT_FALSE(is_abelian(s3));
  EXPECT_TRUE(is_abelian(GroupSpec::symmetric(2)));
}

TEST(Groups, SymmetricMatchesOracleTable) {
  const auto s4 = GroupSpec::symmetric(4);
  const auto all = elements(s4);
  ASSERT_EQ(all.size(), 24u);
  for (const auto& a : all)
    for (const auto& b : all) {
      EXPECT_EQ(compose(s4, a, b).data, oracle::perm_compose(a.data, b.data));
    }
  for (const auto& a : all) EXPECT_TRUE(is_identity(s4, compose(s4, a, invert(s4, a))));
}

TEST(Groups, FreeAbelian) {
  const auto z1 = GroupSpec::free_abelian(1);
  EXPECT_EQ(compose(z1, vector_element(z1, {2}), vector_element(z1, {3})), vector_element(z1, {5}));
  const auto z2 = GroupSpec::free_abelian(2);
  EXPECT_EQ(invert(z2, vector_element(z2, {1, -4})), vector_element(z2, {-1, 4}));
  EXPECT_TRUE(is_abelian(GroupSpec::free_abelian(5)));
  EXPECT_FALSE(z2.order().has_value());
}

TEST(Groups, CommutatorAndPairs) {
  const auto s3 = GroupSpec::symmetric(3);
  const auto pair = non_commuting_pair(s3);
  ASSERT_TRUE(pair.has_value());
  EXPECT_FALSE(commute(s3, pair->first, pair->second));
  EXPECT_FALSE(is_identity(s3, commutator(s3, pair->first, pair->second)));
  EXPECT_FALSE(non_commuting_pair(GroupSpec::cyclic(6)).has_value());
  EXPECT_FALSE(some_nontrivial(GroupSpec::cyclic(1)).has_value());
}

TEST(Groups, FiniteTableValidation) {
  // Klein four group.
  const auto v4 = GroupSpec::finite_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 0);
  EXPECT_TRUE(is_abelian(v4));
  EXPECT_EQ(*v4.order(), 4);
  EXPECT_THROW(GroupSpec::finite_table({{0, 1}, {0, 1}}, 0), InvalidArgument);
  EXPECT_THROW(GroupSpec::finite_table({{0, 1}, {1, 0}}, 1), InvalidArgument);
}

TEST(Groups, InvalidElementsRejected) {
  const auto s3 = GroupSpec::symmetric(3);
  EXPECT_THROW(permutation(s3, {0, 0, 1}), InvalidArgument);
  EXPECT_THROW(permutation(s3, {0, 1}), InvalidArgument);
  EXPECT_THROW(residue(GroupSpec::cyclic(3), 3), InvalidArgument);
  EXPECT_THROW(GroupSpec::cyclic(0), InvalidArgument);
  EXPECT_THROW(compose(s3, residue(GroupSpec::cyclic(3), 1), permutation(s3, {0, 1, 2})), InvalidArgument);
}

TEST(Groups, SeparatingQuotient) {
  const auto z1 = GroupSpec::free_abelian(1);
  const auto sq = separating_quotient(z1, vector_element(z1, {5}));
  ASSERT_TRUE(std::holds_alternative<Homomorphism::ReduceMod>(sq.map.rule()));
  EXPECT_EQ(std::get<Homomorphism::ReduceMod>(sq.map.rule()).modulus, 2);
  EXPECT_EQ(sq.image.data, std::vector<std::int64_t>{1});

  const auto z2 = GroupSpec::free_abelian(2);
  const auto sq2 = separating_quotient(z2, vector_element(z2, {0, 4}));
  EXPECT_EQ(std::get<Homomorphism::ReduceMod>(sq2.map.rule()).modulus, 3);
  EXPECT_EQ(sq2.image.data, (std::vector<std::int64_t>{0, 1}));

  const auto s3 = GroupSpec::symmetric(3);
  const auto t = permutation(s3, {1, 0, 2});
  const auto sq3 = separating_quotient(s3, t);
  EXPECT_TRUE(std::holds_alternative<Homomorphism::Identity>(sq3.map.rule()));
  EXPECT_EQ(sq3.image, t);

  EXPECT_THROW(separating_quotient(s3, identity(s3)), DegenerateInput);
}

TEST(Groups, HomomorphismPropertySampled) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  const auto z2 = GroupSpec::free_abelian(2);
  for (std::int64_t m : {2, 3, 7, 12}) {
    const auto h = Homomorphism::reduce_mod(z2, m);
    for (int i = 0; i < 500; ++i) {
      const auto a = vector_element(z2, {d(rng), d(rng)});
      const auto b = vector_element(z2, {d(rng), d(rng)});
      ASSERT_EQ(h(compose(z2, a, b)), compose(h.target(), h(a), h(b)));
    }
  }
  // Sign map S3 -> Z/2 as a table homomorphism.
  const auto s3 = GroupSpec::symmetric(3);
  const auto z2c = GroupSpec::cyclic(2);
  std::vector<GroupElement> images;
  for (const auto& p : elements(s3)) {
    int inversions = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) inversions += p.data[i] > p.data[j];
    images.push_back(residue(z2c, inversions % 2));
  }
  const auto sign = Homomorphism::from_table(s3, z2c, images);
  for (const auto& a : elements(s3))
    for (const auto& b : elements(s3)) EXPECT_EQ(sign(compose(s3, a, b)), compose(z2c, sign(a), sign(b)));
  // A non-homomorphism is rejected.
  images[1] = residue(z2c, 0);
  EXPECT_THROW(Homomorphism::from_table(s3, z2c, images), InvalidArgument);
}

TEST(Groups, ElementTextRoundTrip) {
  for (const auto& spec : {GroupSpec::cyclic(5), GroupSpec::symmetric(4), GroupSpec::free_abelian(2)}) {
    std::vector<GroupElement> sample;
    if (spec.is_finite()) sample = elements(spec);
    else sample = {vector_element(spec, {3, -2}), vector_element(spec, {0, 0})};
    for (const auto& g : sample) EXPECT_EQ(parse_element(spec, to_string(g)), g);
  }
  EXPECT_THROW(parse_element(GroupSpec::cyclic(3), "x"), InvalidArgument);
}

TEST(Groups, EnumerationIndexing) {
  const auto s3 = GroupSpec::symmetric(3);
  const auto all = elements(s3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(element_index(s3, all[i]), i);
    EXPECT_EQ(element_at(s3, i), all[i]);
  }
}
