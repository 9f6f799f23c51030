#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "prospan/categories.hpp"
#include "prospan/groups.hpp"
#include "prospan/span.hpp"

using namespace prospan;

namespace {

SpanMor random_span(std::mt19937_64& rng, const GSet& x, const GSet& y) {
  const auto keys = span_basis_keys(x, y);
  SpanMor m(x, y);
  if (keys.empty()) return m;
  const std::size_t terms = 1 + rng() % 2;
  for (std::size_t i = 0; i < terms; ++i) m.add(keys[rng() % keys.size()], 1 + rng() % 2);
  return m;
}

/// Apex injects into X x Y.
bool jointly_injective(const BasisSpan& b) {
  std::set<std::pair<Point, Point>> seen;
  for (Point p = 0; p < b.apex.size(); ++p)
    if (!seen.insert({b.legL(p), b.legR(p)}).second) return false;
  return true;
}

}  // namespace

TEST(Span, BurnsideRelationOverC2) {
  auto c2 = cyclic(2);
  GSet pt = GSet::point(c2);
  SpanMor t = basis_span(pt, pt, SpanKey{0, 0, 0});
  EXPECT_EQ(compose_spans(t, t), t.scaled(2));
  EXPECT_EQ(compose_via_pullback(t, t), t.scaled(2));
  const auto tab = burnside_tables(c2);
  EXPECT_EQ(tab.constants[0][0][0], 2);
  EXPECT_EQ(tab.constants[1][1][1], 1);
  EXPECT_EQ(span_basis(pt, pt).size(), 2u);
  EXPECT_TRUE(span_basis(GSet::empty(c2), pt).empty());
  EXPECT_TRUE(span_basis(pt, GSet::empty(c2)).empty());
  EXPECT_TRUE(compose_spans(t, SpanMor(GSet::empty(c2), pt)).is_zero());
}

TEST(Span, TableOfMarksMatchesFixedPointCount) {
  for (const auto& [name, g] : corpus(12)) {
    const auto& lat = g->lattice();
    const auto tab = burnside_tables(g);
    for (std::size_t k = 0; k < lat.class_count(); ++k)
      for (std::size_t h = 0; h < lat.class_count(); ++h)
        EXPECT_EQ(tab.marks[k][h], static_cast<std::int64_t>(oracle::marks(*g, lat.rep(k).elements, lat.rep(h).elements)))
            << name << " K" << k << " H" << h;
  }
  const auto s3 = burnside_tables(symmetric3()).marks;
  EXPECT_EQ(s3, (std::vector<std::vector<std::int64_t>>{{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}}));
  EXPECT_EQ(burnside_tables(cyclic(2)).marks, (std::vector<std::vector<std::int64_t>>{{2, 0}, {1, 1}}));
}

TEST(Span, BasisCountsAgainstOracles) {
  for (const auto& [name, g] : corpus(12)) {
    const auto& lat = g->lattice();
    for (std::size_t h = 0; h < lat.class_count(); ++h)
      for (std::size_t k = 0; k < lat.class_count(); ++k) {
        const GSet x = GSet::orbit(g, h), y = GSet::orbit(g, k);
        const auto basis = span_basis(x, y);
        const auto& hs = lat.rep(h).elements;
        const auto& ks = lat.rep(k).elements;
        EXPECT_EQ(basis.size(), oracle::transitive_spans(*g, hs, ks)) << name << " H" << h << " K" << k;
        std::size_t injective = 0;
        for (const auto& b : basis) injective += jointly_injective(b);
        EXPECT_EQ(injective, oracle::double_cosets(*g, hs, ks)) << name << " H" << h << " K" << k;
        if (h == 0) EXPECT_EQ(basis.size(), oracle::double_cosets(*g, hs, ks)) << name;
      }
  }
}

TEST(Span, CompositionLawsOnSeededTriples) {
  std::vector<GroupRef> groups;
  for (const auto& [name, g] : corpus(8)) groups.push_back(g);
  std::mt19937_64 rng(20240601);
  std::size_t checked = 0;
  while (checked < 500) {
    const auto& g = groups[rng() % groups.size()];
    const auto objs = enumerate_gsets(g, 4);
    const GSet& x = objs[rng() % objs.size()];
    const GSet& y = objs[rng() % objs.size()];
    const GSet& z = objs[rng() % objs.size()];
    const GSet& w = objs[rng() % objs.size()];
    const SpanMor a = random_span(rng, x, y), a2 = random_span(rng, x, y);
    const SpanMor b = random_span(rng, y, z), b2 = random_span(rng, y, z);
    const SpanMor c = random_span(rng, z, w);
    EXPECT_EQ(compose_spans(c, compose_spans(b, a)), compose_spans(compose_spans(c, b), a));
    EXPECT_EQ(compose_spans(b, a + a2), compose_spans(b, a) + compose_spans(b, a2));
    EXPECT_EQ(compose_spans(b + b2, a), compose_spans(b, a) + compose_spans(b2, a));
    EXPECT_EQ(compose_spans(identity_span(y), a), a);
    EXPECT_EQ(compose_spans(a, identity_span(x)), a);
    if (checked % 5 == 0) EXPECT_EQ(compose_spans(b, a), compose_via_pullback(b, a));
    ++checked;
  }
}

TEST(Span, SemiadditivityExhaustive) {
  for (const char* name : {"C4", "S3"}) {
    auto g = builtin_group(name);
    const auto objs = enumerate_gsets(g, 3);
    for (const auto& x : objs)
      for (const auto& x2 : objs)
        for (const auto& y : objs) {
          Verdict v = semiadditivity_check(x, x2, y);
          EXPECT_TRUE(v.ok) << name << " " << describe(x) << " " << describe(x2) << " " << describe(y) << ": " << v.witness;
        }
  }
}

TEST(Span, TransposeAndLegs) {
  auto g = builtin_group("S3");
  const auto objs = enumerate_gsets(g, 4);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const GSet& x = objs[rng() % objs.size()];
    const GSet& y = objs[rng() % objs.size()];
    const GSet& z = objs[rng() % objs.size()];
    const SpanMor a = random_span(rng, x, y), b = random_span(rng, y, z);
    EXPECT_EQ(transpose(transpose(a)), a);
    EXPECT_EQ(transpose(compose_spans(b, a)), compose_spans(transpose(a), transpose(b)));
  }
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : hom_gset(x, y)) {
        EXPECT_EQ(transpose(forward_span(f)), backward_span(f));
        EXPECT_EQ(forward_span(f).apex_size(), x.size());
      }
}

TEST(SpanCategory, TruncatedLawsAndIsos) {
  auto c = span_category(builtin_group("C2"), 2);
  EXPECT_TRUE(check_category_laws(*c).ok);
  for (ObjId a = 0; a < c->object_count(); ++a)
    for (const Mor& m : c->isos(a, a)) {
      auto inv = c->inverse(m);
      ASSERT_TRUE(inv.has_value());
      EXPECT_EQ(c->to_span(*inv), transpose(c->to_span(m)));
    }
  // pt -> pt: 0, t_1, 2 t_1, t_0 (apex sizes 1 and 2, total <= 2)
  const ObjId pt = *c->find_object(GSet::point(c->group()));
  EXPECT_EQ(c->hom_size(pt, pt), 4u);
}

TEST(SpanFunctor, InflationFromC2ToC4) {
  const GroupTower t = cyclic_tower(2, 2);
  const auto inf = inflation_functor(t.link(1));
  auto c2 = t.stage(1), c4 = t.stage(2);
  const SpanMor tc2 = basis_span(GSet::point(c2), GSet::point(c2), SpanKey{0, 0, 0});
  const SpanMor img = span_of_functor(inf, tc2);
  // pt <- C2 -> pt inflates to pt <- C4/C2 -> pt
  ASSERT_EQ(img.terms().size(), 1u);
  EXPECT_EQ(c4->lattice().rep(img.terms().begin()->first.cls).size(), 2u);
  EXPECT_EQ(img.apex_size(), 2u);
  EXPECT_NO_THROW(verify_left_exact(inf, 3));
}

TEST(SpanFunctor, FixedPointsAreFunctorialOnSpans) {
  auto c4 = cyclic(4);
  const auto q = quotient(c4, c4->lattice().rep(1));
  const auto fix = fixed_point_functor(q);
  EXPECT_NO_THROW(verify_left_exact(fix, 3));
  const auto objs = enumerate_gsets(c4, 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const GSet& x = objs[rng() % objs.size()];
    const GSet& y = objs[rng() % objs.size()];
    const GSet& z = objs[rng() % objs.size()];
    const SpanMor a = random_span(rng, x, y), b = random_span(rng, y, z);
    EXPECT_EQ(span_of_functor(fix, compose_spans(b, a)), compose_spans(span_of_functor(fix, b), span_of_functor(fix, a)));
    EXPECT_EQ(span_of_functor(fix, a + a), span_of_functor(fix, a).scaled(2));
  }
  for (const auto& x : objs) EXPECT_EQ(span_of_functor(fix, identity_span(x)), identity_span(fixed_points(x, q).set));
}

TEST(SpanFunctor, OrbitSpaceIsNotLeftExact) {
  EXPECT_THROW(verify_left_exact(orbit_space_functor(cyclic(2)), 2), NotLeftExact);
}

TEST(SpanFunctor, SpanOfCompositeIsComposite) {
  const GroupTower t = cyclic_tower(2, 3);
  const auto inner = inflation_functor(t.link(1));
  const auto outer = inflation_functor(t.link(2));
  const auto both = compose_gset_functors(outer, inner);
  const auto objs = enumerate_gsets(t.stage(1), 4);
  std::mt19937_64 rng(9);
  for (const auto& x : objs)
    for (const auto& y : objs) {
      const SpanMor m = random_span(rng, x, y);
      EXPECT_EQ(span_of_functor(both, m), span_of_functor(outer, span_of_functor(inner, m)));
    }
  // fixed points undo inflation
  const auto fix = fixed_point_functor(t.link(1));
  const auto round = compose_gset_functors(fix, inner);
  for (const auto& x : objs)
    for (const auto& y : objs) {
      const SpanMor m = random_span(rng, x, y);
      const SpanMor r = span_of_functor(round, m);
      EXPECT_EQ(r.terms().size(), m.terms().size());
      EXPECT_EQ(r.apex_size(), m.apex_size());
    }
}
