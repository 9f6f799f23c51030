#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prospan/groups.hpp"

using namespace prospan;

namespace {

std::vector<std::vector<Element>> cyclic_table(std::uint32_t n) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

}  // namespace

TEST(Group, CyclicTableIsAccepted) {
  auto g = make_group(cyclic_table(6));
  EXPECT_EQ(g->order(), 6u);
  EXPECT_TRUE(g->is_abelian());
  EXPECT_EQ(g->element_order(1), 6u);
  EXPECT_EQ(g->element_order(3), 2u);
  for (Element x = 0; x < 6; ++x) EXPECT_EQ(g->mul(x, g->inv(x)), 0u);
}

TEST(Group, IdentityIsRelabeledToZero) {
  // Z/3 written with the identity as element 2.
  std::vector<std::vector<Element>> t = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
  auto g = make_group(t);
  EXPECT_EQ(g->mul(0, 1), 1u);
  EXPECT_EQ(g->mul(1, 0), 1u);
  EXPECT_TRUE(isomorphic(*g, *cyclic(3)));
}

TEST(Group, IntercalateSwapBreaksAssociativity) {
  // Swap the 2x2 subsquare rows {1,4} x cols {1,4} in Z/6: still a Latin
  // square with identity 0, no longer associative.
  auto t = cyclic_table(6);
  ASSERT_EQ(t[1][1], t[4][4]);
  ASSERT_EQ(t[1][4], t[4][1]);
  std::swap(t[1][1], t[1][4]);
  std::swap(t[4][1], t[4][4]);
  try {
    make_group(t);
    FAIL() << "non-associative table accepted";
  } catch (const NotAGroup& e) {
    EXPECT_NE(std::string(e.what()).find("associativity fails"), std::string::npos) << e.what();
  }
}

TEST(Group, MalformedTablesAreRejected) {
  EXPECT_THROW(make_group(std::vector<std::vector<Element>>{{0, 1}, {1}}), NotAGroup);
  EXPECT_THROW(make_group(std::vector<std::vector<Element>>{{0, 1}, {1, 1}}), NotAGroup);
  EXPECT_THROW(make_group(std::vector<std::vector<Element>>{{1, 0}, {0, 0}}), NotAGroup);
  EXPECT_THROW(make_group(std::vector<std::vector<Element>>{{0, 3}, {1, 0}}), NotAGroup);
}

TEST(Group, S3LatticeMatchesBruteForce) {
  auto g = symmetric3();
  const auto& lat = g->lattice();
  EXPECT_EQ(lat.subgroups.size(), 6u);
  ASSERT_EQ(lat.class_count(), 4u);
  std::vector<std::size_t> orders, members;
  for (std::size_t c = 0; c < 4; ++c) {
    orders.push_back(lat.rep(c).size());
    members.push_back(lat.classes[c].size());
  }
  EXPECT_EQ(orders, (std::vector<std::size_t>{1, 2, 3, 6}));
  EXPECT_EQ(members, (std::vector<std::size_t>{1, 3, 1, 1}));
  std::size_t normals = 0;
  for (std::size_t k = 0; k < lat.subgroups.size(); ++k) normals += lat.normal[k];
  EXPECT_EQ(normals, 3u);
}

class CorpusGroup : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusGroup, LatticeAgreesWithSubsetEnumeration) {
  auto g = builtin_group(GetParam());
  const auto brute = oracle::subgroups(*g);
  const auto& lat = g->lattice();
  ASSERT_EQ(lat.subgroups.size(), brute.size());
  for (const auto& s : brute) EXPECT_NO_THROW(lat.find(s));
  EXPECT_EQ(lat.class_count(), oracle::conjugacy_classes_of_subgroups(*g, lat.subgroups.back().elements));
  for (std::size_t k = 0; k < lat.subgroups.size(); ++k) {
    // conjugator carries each subgroup onto its class representative
    const auto& rep = lat.rep(lat.class_of[k]);
    EXPECT_EQ(oracle::conjugate(*g, lat.conjugator[k], lat.subgroups[k].elements), rep.elements);
    bool normal = true;
    for (Element a = 0; a < g->order(); ++a) normal = normal && oracle::conjugate(*g, a, lat.subgroups[k].elements) == lat.subgroups[k].elements;
    EXPECT_EQ(static_cast<bool>(lat.normal[k]), normal);
  }
  for (std::size_t c = 1; c < lat.class_count(); ++c) EXPECT_LE(lat.rep(c - 1).size(), lat.rep(c).size());
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusGroup, ::testing::ValuesIn(corpus_names()),
                         [](const auto& info) { return info.param; });

TEST(Group, CorpusHasExpectedSizes) {
  auto c = corpus(12);
  EXPECT_EQ(c.size(), 24u);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i].group->order() == c[j].group->order())
        EXPECT_FALSE(isomorphic(*c[i].group, *c[j].group)) << c[i].name << " vs " << c[j].name;
}

TEST(Group, IsomorphismSearch) {
  EXPECT_TRUE(isomorphic(*builtin_group("C6"), *direct_product(*cyclic(3), *cyclic(2))));
  EXPECT_FALSE(isomorphic(*builtin_group("C4"), *builtin_group("C2xC2")));
  EXPECT_FALSE(isomorphic(*builtin_group("D4"), *builtin_group("Q8")));
  auto phi = find_isomorphism(*builtin_group("S3"), *dihedral(3));
  ASSERT_TRUE(phi);
  auto a = builtin_group("S3");
  auto b = dihedral(3);
  for (Element x = 0; x < 6; ++x)
    for (Element y = 0; y < 6; ++y) EXPECT_EQ((*phi)[a->mul(x, y)], b->mul((*phi)[x], (*phi)[y]));
}

TEST(Group, Quotients) {
  auto s3 = symmetric3();
  const auto& lat = s3->lattice();
  const Subgroup& c2 = lat.rep(1);
  std::string why;
  EXPECT_FALSE(is_normal(*s3, c2, &why));
  EXPECT_FALSE(why.empty());
  EXPECT_THROW(quotient(s3, c2), NotNormal);
  auto q = quotient(s3, lat.rep(2));
  EXPECT_EQ(q.target->order(), 2u);
  for (Element x = 0; x < 6; ++x)
    for (Element y = 0; y < 6; ++y) EXPECT_EQ(q(s3->mul(x, y)), q.target->mul(q(x), q(y)));
  EXPECT_EQ(q.kernel, lat.rep(2));
  EXPECT_EQ(q.preimage(Subgroup({0}, 2)), lat.rep(2));
}

TEST(Group, QuotientMapValidation) {
  auto c4 = cyclic(4);
  auto c2 = cyclic(2);
  EXPECT_NO_THROW(make_quotient_map(c4, c2, {0, 1, 0, 1}));
  EXPECT_THROW(make_quotient_map(c4, c2, {0, 1, 1, 0}), Error);
  EXPECT_THROW(make_quotient_map(c4, c2, {0, 0, 0}), Error);
}

TEST(Tower, CyclicTower) {
  EXPECT_THROW(cyclic_tower(4, 2), NotPrime);
  EXPECT_THROW(cyclic_tower(1, 2), NotPrime);
  auto t = cyclic_tower(2, 3);
  EXPECT_EQ(t.depth(), 3u);
  EXPECT_EQ(t.stage(1)->order(), 2u);
  EXPECT_EQ(t.stage(2)->order(), 4u);
  EXPECT_EQ(t.top()->order(), 8u);
  auto p = t.projection(3, 1);
  for (Element x = 0; x < 8; ++x) EXPECT_EQ(p(x), x % 2);
  EXPECT_EQ(p.kernel.size(), 4u);
  EXPECT_EQ(t.projection(2, 2).kernel.size(), 1u);
  EXPECT_THROW(t.projection(1, 2), InvalidInput);
  auto c9 = cyclic_tower(3, 2);
  EXPECT_EQ(c9.top()->order(), 9u);
  EXPECT_EQ(GroupTower::single(cyclic(5)).depth(), 1u);
}

TEST(Group, GenerateSubgroup) {
  auto d4 = dihedral(4);
  EXPECT_EQ(generate_subgroup(*d4, {1}).size(), 4u);
  EXPECT_EQ(generate_subgroup(*d4, {}).size(), 1u);
  EXPECT_EQ(generate_subgroup(*d4, generating_set(*d4)).size(), 8u);
}
