#include <gtest/gtest.h>

#include "prospan/fincat.hpp"

using namespace prospan;

namespace {

/// a < c, b < c, a < d, b < d: a and b have no meet.
std::shared_ptr<TableCategory> bowtie() {
  return poset_category({"a", "b", "c", "d"}, [](ObjId x, ObjId y) { return x == y || (x < 2 && y >= 2); });
}

}  // namespace

TEST(FinCat, BuiltinCategoriesSatisfyLaws) {
  EXPECT_TRUE(check_category_laws(*chain_poset(4)).ok);
  EXPECT_TRUE(check_category_laws(*discrete_category(3)).ok);
  EXPECT_TRUE(check_category_laws(*cyclic_monoid_category(5)).ok);
  EXPECT_TRUE(check_category_laws(*product_category(*chain_poset(2), *cyclic_monoid_category(3))).ok);
  EXPECT_TRUE(check_category_laws(*bowtie()).ok);
}

TEST(FinCat, NonAssociativeTableIsCaught) {
  // tbl[g][f] = g o f; (1 o 2) o 1 = 2 but 1 o (2 o 1) = 1
  const std::size_t tbl[3][3] = {{0, 1, 2}, {1, 2, 1}, {2, 2, 2}};
  EXPECT_THROW(TableCategory({"*"}, {{3}}, {0}, [&](const Mor& g, const Mor& f) { return tbl[g.idx][f.idx]; }),
               InvalidInput);
  struct Raw : Category {
    const std::size_t (*t)[3];
    explicit Raw(const std::size_t (*tb)[3]) : t(tb) {}
    std::size_t object_count() const override { return 1; }
    std::size_t hom_size(ObjId, ObjId) const override { return 3; }
    Mor identity(ObjId) const override { return Mor{0, 0, 0}; }
    std::optional<Mor> compose(const Mor& g, const Mor& f) const override { return Mor{0, 0, t[g.idx][f.idx]}; }
  };
  Verdict v = check_category_laws(Raw(tbl));
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.witness.find("associativity"), std::string::npos) << v.witness;
}

TEST(FinCat, FunctorCounts) {
  // monotone maps {0<1} -> {0<1<2}
  EXPECT_EQ(enumerate_functors(chain_poset(2), chain_poset(3)).size(), 6u);
  // monoid endomorphisms of Z/2, Z/2 -> Z/3 and Z/4 -> Z/2
  EXPECT_EQ(enumerate_functors(cyclic_monoid_category(2), cyclic_monoid_category(2)).size(), 2u);
  EXPECT_EQ(enumerate_functors(cyclic_monoid_category(2), cyclic_monoid_category(3)).size(), 1u);
  EXPECT_EQ(enumerate_functors(cyclic_monoid_category(4), cyclic_monoid_category(2)).size(), 2u);
  // arbitrary maps between discrete categories
  EXPECT_EQ(enumerate_functors(discrete_category(2), discrete_category(3)).size(), 9u);
  for (const auto& f : enumerate_functors(chain_poset(3), bowtie())) EXPECT_TRUE(check_functor(f).ok);
}

TEST(FinCat, BadFunctorIsRejected) {
  FinCat z4 = cyclic_monoid_category(4), z2 = cyclic_monoid_category(2);
  // g^k -> g^(k == 1): not additive
  CatFunctor bad = table_functor(z4, z2, {0}, {{{0, 0}, {0, 1, 0, 0}}}, "bad");
  EXPECT_FALSE(check_functor(bad).ok);
  CatFunctor good = table_functor(z4, z2, {0}, {{{0, 0}, {0, 1, 0, 1}}}, "mod2");
  EXPECT_TRUE(check_functor(good).ok);
  EXPECT_TRUE(check_functor(good, 3, 11).ok);
}

TEST(FinCat, EquivalencesAndNaturalIsos) {
  FinCat c2 = chain_poset(2);
  // Two isomorphic objects collapse to one: codiscrete pair is equivalent to the point.
  auto pair = std::make_shared<TableCategory>(std::vector<std::string>{"x", "y"},
                                              std::vector<std::vector<std::size_t>>{{1, 1}, {1, 1}},
                                              std::vector<std::size_t>{0, 0},
                                              [](const Mor&, const Mor&) { return std::size_t{0}; });
  FinCat pt = chain_poset(1);
  CatFunctor collapse = table_functor(pair, pt, {0, 0}, {{{0, 0}, {0}}, {{0, 1}, {0}}, {{1, 0}, {0}}, {{1, 1}, {0}}});
  EXPECT_TRUE(check_equivalence(collapse).ok);
  CatFunctor incl = table_functor(pt, pair, {0}, {{{0, 0}, {0}}});
  EXPECT_TRUE(check_equivalence(incl).ok);
  auto fs = enumerate_functors(pair, FinCat(pair));
  EXPECT_EQ(fs.size(), 4u);
  for (const auto& f : fs) EXPECT_TRUE(find_natural_iso(f, identity_functor(pair)).has_value());

  CatFunctor bottom = table_functor(pt, c2, {0}, {{{0, 0}, {0}}});
  Verdict v = check_equivalence(bottom);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.witness.find("essentially surjective"), std::string::npos);
  auto two = enumerate_functors(pt, c2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_FALSE(find_natural_iso(two[0], two[1]).has_value());
}

TEST(FinCat, ProductsInPosetsAreMeets) {
  auto p = product_category(*chain_poset(2), *chain_poset(2));
  auto cone = find_product(*p, 1, 2);  // (0,1) and (1,0) meet at (0,0)
  ASSERT_TRUE(cone.has_value());
  EXPECT_EQ(cone->obj, 0u);
  EXPECT_TRUE(is_terminal(*p, 3));
  EXPECT_FALSE(find_product(*bowtie(), 2, 3).has_value());
  EXPECT_FALSE(find_product(*bowtie(), 0, 1).has_value());
}

TEST(FinCat, FullSubcategoryInclusion) {
  auto c = std::make_shared<const FullSubcategory>(chain_poset(4), std::vector<ObjId>{1, 3});
  EXPECT_EQ(c->object_count(), 2u);
  EXPECT_EQ(c->hom_size(0, 1), 1u);
  EXPECT_EQ(c->hom_size(1, 0), 0u);
  EXPECT_TRUE(check_category_laws(*c).ok);
  EXPECT_TRUE(check_functor(inclusion_functor(c)).ok);
}

TEST(AdequateTriple, PosetWithoutMeetHasNoPullback) {
  auto all = [](const Mor&) { return true; };
  Verdict v = validate_adequate_triple({bowtie(), all, all});
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.witness.find("no pullback exists"), std::string::npos) << v.witness;
  EXPECT_TRUE(validate_adequate_triple({chain_poset(3), all, all}).ok);
  // forward = identities: the pullback of f along an identity is f itself
  auto ids = [](const Mor& m) { return m.src == m.dst; };
  EXPECT_TRUE(validate_adequate_triple({chain_poset(3), all, ids}).ok);
  EXPECT_TRUE(validate_adequate_triple({chain_poset(3), ids, all}).ok);
  // a backward class that is not closed under composition
  auto short_steps = [](const Mor& m) { return m.dst - m.src <= 1; };
  EXPECT_FALSE(validate_adequate_triple({chain_poset(3), short_steps, all}).ok);
}
