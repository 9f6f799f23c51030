#pragma once

// Verification routines behind `prospan verify`, shared with the tests.
// Each returns a section of report lines; a line starting with FAIL carries
// its witness.

#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/categories.hpp"
#include "prospan/chain.hpp"
#include "prospan/groups.hpp"
#include "prospan/mackey.hpp"

namespace prospan {

struct VerifyOptions {
  std::size_t cap = 6;
  std::uint64_t seed = 0;
  std::uint32_t prime = 2;
  std::size_t depth = 3;
  std::size_t span_cap = 3;
  /// Adjunction checks: group and normal subgroup order (0 picks the
  /// smallest nontrivial proper normal subgroup, else the whole group).
  GroupRef group;
  std::uint32_t normal_order = 0;
};

/// Composable pairs checked per functor before switching to sampling.
inline constexpr std::size_t kFunctorPairs = 200000;

struct Section {
  std::string name;
  bool ok = true;
  std::vector<std::string> lines;

  void pass(const std::string& what) { lines.push_back("PASS " + name + ": " + what); }
  void fail(const std::string& what) {
    ok = false;
    lines.push_back("FAIL " + name + ": " + what);
  }
  void note(const std::string& what) { lines.push_back("  " + what); }
  void check(bool good, const std::string& what, const std::string& witness) {
    if (good)
      pass(what);
    else
      fail(what + ": " + witness);
  }
  void check(const Verdict& v, const std::string& what) { check(v.ok, what, v.witness); }
  std::string text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }
};

// ---------------------------------------------------------------- towers

/// Inflation chain Fin_{G_1} -> Fin_{G_2} -> ... truncated at `cap`.
struct GSetChain {
  GroupTower tower;
  std::vector<std::shared_ptr<const GSetCategory>> stages;
  ChainDiagram diagram;
};

inline GSetChain gset_inflation_chain(const GroupTower& tower, std::size_t cap) {
  std::vector<std::shared_ptr<const GSetCategory>> stages;
  std::vector<FinCat> cats;
  std::vector<CatFunctor> links;
  for (std::size_t l = 1; l <= tower.depth(); ++l) {
    stages.push_back(gset_category(tower.stage(l), cap));
    cats.push_back(stages.back());
  }
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    links.push_back(gset_link(stages[i], stages[i + 1], inflation_functor(tower.link(i + 1))));
  return {tower, stages, ChainDiagram(cats, links)};
}

/// The comparison colim_i Fin_{G_i} -> discrete model, induced by the family
/// F_i(X) = (i, X) with coherences the canonical identifications
/// (i+1, inf X) ~ (i, X).
inline CatFunctor gset_comparison(const GSetChain& ch, const std::shared_ptr<const ColimitCategory>& colim,
                                  const std::shared_ptr<const DiscreteGSetCategory>& model) {
  FunctorFamily fam;
  fam.target = model;
  const std::size_t n = ch.stages.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto st = ch.stages[i];
    std::vector<ObjId> objs;
    for (ObjId a = 0; a < st->object_count(); ++a) objs.push_back(model->find(i + 1, st->object(a)));
    auto o = objs;
    auto m = model;
    fam.functors.push_back(CatFunctor{st, model, objs,
                                      [st, m, o](const Mor& u) { return m->find_map(o[u.src], o[u.dst], st->values(u)); },
                                      "F" + std::to_string(i)});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& st = *ch.stages[i];
    const auto& next = *ch.stages[i + 1];
    std::vector<Mor> cells;
    for (ObjId x = 0; x < st.object_count(); ++x) {
      const GSet inf = inflate(st.object(x), ch.tower.link(i + 1));
      const ObjId y = ch.diagram.links[i](x);
      const EqMap tau = find_gset_iso(inf, next.object(y)).value();
      cells.push_back(model->find_map(fam.functors[i + 1](y), fam.functors[i](x), inverse(tau).values).value());
    }
    fam.coherence.push_back(std::move(cells));
  }
  return functor_from_family(colim, fam);
}

inline Section verify_colim_gset(const VerifyOptions& o) {
  Section s{"colim-gset"};
  const GroupTower tower = cyclic_tower(o.prime, o.depth);
  const GSetChain ch = gset_inflation_chain(tower, o.cap);
  auto colim = colimit_chain(ch.diagram);
  auto model = discrete_gset_category(tower, o.cap);
  std::ostringstream head;
  head << "tower Z/" << o.prime << "^k, depth " << o.depth << ", size cap " << o.cap << ": " << colim->object_count()
       << " colimit objects, " << model->object_count() << " model objects";
  s.note(head.str());
  s.note("functor laws: every composable pair, or " + std::to_string(kFunctorPairs) + " pairs sampled with seed " +
         std::to_string(o.seed) + " when there are more");
  for (std::size_t i = 0; i + 1 < ch.diagram.length(); ++i)
    s.check(check_functor(ch.diagram.links[i], kFunctorPairs, o.seed), "inflation link " + std::to_string(i + 1) + " is a functor");
  s.check(localization_check(std::make_shared<const ElementsCategory>(ch.diagram), colim, kFunctorPairs, o.seed),
          "category of elements localizes onto the colimit");
  const CatFunctor cmp = gset_comparison(ch, colim, model);
  s.check(check_functor(cmp, kFunctorPairs, o.seed), "comparison is a functor");
  s.check(check_equivalence(cmp), "comparison colim Fin_{G_i} -> discrete G-sets is an equivalence");
  return s;
}

/// Span stages along Span(inflation).
struct SpanChain {
  GroupTower tower;
  std::vector<std::shared_ptr<const SpanCategory>> stages;
  ChainDiagram diagram;
};

inline SpanChain span_inflation_chain(const GroupTower& tower, std::size_t cap) {
  std::vector<std::shared_ptr<const SpanCategory>> stages;
  std::vector<FinCat> cats;
  std::vector<CatFunctor> links;
  for (std::size_t l = 1; l <= tower.depth(); ++l) {
    stages.push_back(span_category(tower.stage(l), cap));
    cats.push_back(stages.back());
  }
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    links.push_back(span_link(stages[i], stages[i + 1], inflation_functor(tower.link(i + 1))));
  return {tower, stages, ChainDiagram(cats, links)};
}

inline CatFunctor span_comparison(const SpanChain& ch, const std::shared_ptr<const ColimitCategory>& colim,
                                  const std::shared_ptr<const DiscreteSpanCategory>& model) {
  FunctorFamily fam;
  fam.target = model;
  const std::size_t n = ch.stages.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto st = ch.stages[i];
    std::vector<ObjId> objs;
    for (ObjId a = 0; a < st->object_count(); ++a) objs.push_back(model->find(i + 1, st->object(a)));
    const GSetFunctor up = inflation_functor(ch.tower.projection(ch.tower.depth(), i + 1));
    auto o = objs;
    auto m = model;
    fam.functors.push_back(CatFunctor{st, model, objs,
                                      [st, m, o, up](const Mor& u) {
                                        SpanMor img = span_of_functor(up, st->to_span(u));
                                        SpanMor moved(m->object(o[u.src]), m->object(o[u.dst]));
                                        for (const auto& [k, mult] : img.terms()) moved.add(k, mult);
                                        return m->from_span(o[u.src], o[u.dst], moved);
                                      },
                                      "Span(inf)" + std::to_string(i)});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& st = *ch.stages[i];
    const auto& next = *ch.stages[i + 1];
    std::vector<Mor> cells;
    for (ObjId x = 0; x < st.object_count(); ++x) {
      const GSet inf = inflate(st.object(x), ch.tower.link(i + 1));
      const ObjId y = ch.diagram.links[i](x);
      const EqMap tau = find_gset_iso(inf, next.object(y)).value();
      const ObjId a = fam.functors[i + 1](y), b = fam.functors[i](x);
      const EqMap back(model->object(a), model->object(b), inverse(tau).values);
      cells.push_back(model->from_span(a, b, forward_span(back)).value());
    }
    fam.coherence.push_back(std::move(cells));
  }
  return functor_from_family(colim, fam);
}

inline Section verify_colim_span(const VerifyOptions& o) {
  Section s{"colim-span"};
  const GroupTower tower = cyclic_tower(o.prime, o.depth);
  const SpanChain ch = span_inflation_chain(tower, o.span_cap);
  auto colim = colimit_chain(ch.diagram);
  auto model = DiscreteSpanCategory::make(tower, o.span_cap);
  std::ostringstream head;
  head << "tower Z/" << o.prime << "^k, depth " << o.depth << ", span cap " << o.span_cap << ": "
       << colim->object_count() << " colimit objects, " << model->object_count() << " model objects";
  s.note(head.str());
  s.note("functor laws: every composable pair, or " + std::to_string(kFunctorPairs) + " pairs sampled with seed " +
         std::to_string(o.seed) + " when there are more");
  for (std::size_t i = 0; i + 1 < ch.diagram.length(); ++i)
    s.check(check_functor(ch.diagram.links[i], kFunctorPairs, o.seed), "Span(inflation) link " + std::to_string(i + 1) + " is a functor");
  const CatFunctor cmp = span_comparison(ch, colim, model);
  s.check(check_functor(cmp, kFunctorPairs, o.seed), "comparison is a functor");
  s.check(check_equivalence(cmp), "comparison colim Span(G_i) -> Span(discrete model) is an equivalence");
  return s;
}

inline Section verify_limit_span(const VerifyOptions& o) {
  Section s{"limit-span"};
  const GroupTower tower = cyclic_tower(o.prime, o.depth);
  const std::size_t n = tower.depth();
  std::vector<std::shared_ptr<const SpanCategory>> stages;
  std::vector<FinCat> cats;
  std::vector<CatFunctor> links;
  for (std::size_t l = n; l >= 1; --l) {
    stages.push_back(span_category(tower.stage(l), o.span_cap));
    cats.push_back(stages.back());
  }
  for (std::size_t i = 0; i + 1 < n; ++i) links.push_back(span_link(stages[i], stages[i + 1], fixed_point_functor(tower.link(n - 1 - i))));
  for (std::size_t i = 0; i + 1 < n; ++i)
    s.check(check_functor(links[i], kFunctorPairs, o.seed), "Span(fixed points) link " + std::to_string(i + 1) + " is a functor");
  const ChainDiagram d(cats, links);
  auto lim = limit_chain(d);
  std::ostringstream head;
  head << "tower Z/" << o.prime << "^k, depth " << o.depth << ", span cap " << o.span_cap << ": "
       << stages[0]->object_count() << " objects at the deepest stage, " << lim->object_count() << " compatible families";
  s.note(head.str());
  s.note("functor laws: every composable pair, or " + std::to_string(kFunctorPairs) + " pairs sampled with seed " +
         std::to_string(o.seed) + " when there are more");
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < stages[0]->object_count(); ++x) {
    CompatibleFamily fam{{x}, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      fam.objects.push_back(d.links[i](fam.objects.back()));
      fam.coherence.push_back(d.cats[i + 1]->identity(fam.objects.back()));
    }
    objs.push_back(lim->find_family(fam).value());
  }
  auto l = lim;
  auto base = stages[0];
  const CatFunctor cmp{base, lim, objs,
                       [l, objs](const Mor& u) -> std::optional<Mor> {
                         auto p = l->position(objs[u.src], objs[u.dst], u.idx);
                         if (!p) return std::nullopt;
                         return Mor{objs[u.src], objs[u.dst], *p};
                       },
                       "comparison"};
  s.check(check_functor(cmp, kFunctorPairs, o.seed), "comparison is a functor");
  s.check(check_equivalence(cmp), "comparison Span(G_n) -> lim Span(G_i) is an equivalence");
  return s;
}

// ----------------------------------------------------------- adjunction

inline Subgroup pick_normal(const GroupRef& g, std::uint32_t order) {
  const auto& lat = g->lattice();
  for (std::size_t k = 0; k < lat.subgroups.size(); ++k) {
    const auto& h = lat.subgroups[k];
    if (!lat.normal[k]) continue;
    if (order ? h.size() == order : (h.size() > 1 && h.size() < g->order())) return h;
  }
  if (order) throw InvalidInput("no normal subgroup of order " + std::to_string(order));
  return lat.subgroups.back();
}

inline Section verify_adjunction(const VerifyOptions& o) {
  Section s{"adjunction"};
  const GroupRef g = o.group ? o.group : builtin_group("C4");
  const Subgroup n = pick_normal(g, o.group ? o.normal_order : (o.normal_order ? o.normal_order : 2));
  const QuotientMap q = quotient(g, n);
  const std::size_t cap = std::min<std::size_t>(o.cap, 4);
  const auto objs = enumerate_gsets(g, cap);
  std::size_t maps = 0, unit_bad = 0, counit_bad = 0;
  std::string first_unit, first_counit;
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : hom_gset(x, y)) {
        ++maps;
        const AdjunctionReport r = adjunction_report(q, f);
        if (!r.ok() && unit_bad++ == 0)
          first_unit = describe(x) + " -> " + describe(y) + ": " + (r.unit_witness.empty() ? r.unit_square.witness : r.unit_witness);
        if (!r.counit_square.ok && counit_bad++ == 0)
          first_counit = describe(x) + " -> " + describe(y) + ": " + r.counit_square.witness;
      }
  std::ostringstream head;
  head << "group of order " << g->order() << ", N of order " << n.size() << ", " << objs.size() << " G-sets of size <= "
       << cap << ", " << maps << " maps";
  s.note(head.str());
  s.check(unit_bad == 0, "unit is an iso with pullback naturality squares for all " + std::to_string(maps) + " maps",
          std::to_string(unit_bad) + " failures, first " + first_unit);
  if (counit_bad) {
    s.pass("counit naturality square fails to be a pullback for " + std::to_string(counit_bad) + " maps");
    s.note("EXPECTED counit square not a pullback: " + first_counit);
  } else {
    s.fail("no counit naturality square failing the pullback test was found");
  }
  return s;
}

// --------------------------------------------------------------- mackey

inline Section verify_mackey_limit(const VerifyOptions& o) {
  Section s{"mackey-limit"};
  const GroupTower tower = cyclic_tower(o.prime, o.depth);
  const MackeyFunctor top = burnside_mackey(tower.top());
  const auto fam = fixed_point_family(tower, top);
  for (std::size_t i = 0; i < fam.size(); ++i)
    s.check(check_mackey(fam[i]), "stage " + std::to_string(i + 1) + " of the fixed point family satisfies the Mackey axioms");
  try {
    const AssemblyReport r = assemble_from_tower(tower, fam);
    s.check(r.top == top, "assemble_from_tower reproduces the family over the deepest stage",
            "assembled functor differs from the seed");
  } catch (const IncoherentFamily& e) {
    s.fail(std::string("assemble_from_tower: ") + e.what());
  }
  if (tower.depth() >= 3) {
    const MackeyFunctor two = categorical_fixed_points(categorical_fixed_points(top, tower.link(tower.depth() - 1)),
                                                       tower.link(tower.depth() - 2));
    const MackeyFunctor one = categorical_fixed_points(top, tower.projection(tower.depth(), tower.depth() - 2));
    s.check(two == one, "two fixed point steps agree with the composite step", "functors differ");
  }
  if (tower.depth() >= 2) {
    auto bad = fam;
    bad[0] = zero_mackey(tower.stage(1));
    try {
      assemble_from_tower(tower, bad);
      s.fail("family with a zero stage was accepted");
    } catch (const IncoherentFamily& e) {
      s.pass("family with a zero stage is rejected");
      s.note(std::string("IncoherentFamily: ") + e.what());
    }
  }
  return s;
}

// --------------------------------------------------- functor categories

inline std::shared_ptr<TableCategory> diamond_poset() {
  // bot < a, b < top
  return poset_category({"bot", "a", "b", "top"}, [](ObjId x, ObjId y) { return x == y || x == 0 || y == 3; });
}

/// Random chain of small categories with random links (product preserving
/// when asked), at most `max_len` stages.
inline ChainDiagram random_chain(std::mt19937_64& rng, std::size_t max_len, bool products) {
  std::vector<std::function<FinCat()>> pool = {
      [] { return chain_poset(1); }, [] { return chain_poset(2); }, [] { return chain_poset(3); },
      [] { return diamond_poset(); },
      [] { return product_category(*chain_poset(2), *chain_poset(2)); },
  };
  if (!products) {
    pool.push_back([] { return discrete_category(2); });
    pool.push_back([] { return cyclic_monoid_category(2); });
  }
  const std::size_t len = 1 + rng() % max_len;
  std::vector<FinCat> cats{pool[rng() % pool.size()]()};
  std::vector<CatFunctor> links;
  for (int attempt = 0; cats.size() < len && attempt < 20; ++attempt) {
    FinCat next = pool[rng() % pool.size()]();
    std::vector<CatFunctor> fs;
    for (auto& f : enumerate_functors(cats.back(), next, 2000))
      if (!products || preserves_products(f)) fs.push_back(std::move(f));
    if (fs.empty()) continue;
    links.push_back(fs[rng() % fs.size()]);
    cats.push_back(next);
  }
  return ChainDiagram(cats, links);
}

/// Replaces each F_i(x) by itself conjugated through a random automorphism
/// and adjusts the coherences to match.
inline FunctorFamily conjugate_family(const ChainDiagram& d, const FunctorFamily& fam, std::mt19937_64& rng) {
  const auto& e = *fam.target;
  std::vector<std::vector<Mor>> alpha(d.length());
  for (std::size_t i = 0; i < d.length(); ++i)
    for (ObjId x = 0; x < d.cats[i]->object_count(); ++x) {
      const ObjId fx = fam.functors[i](x);
      auto autos = e.isos(fx, fx);
      alpha[i].push_back(autos[rng() % autos.size()]);
    }
  FunctorFamily out;
  out.target = fam.target;
  for (std::size_t i = 0; i < d.length(); ++i) {
    auto fi = fam.functors[i];
    auto ai = alpha[i];
    auto tgt = fam.target;
    out.functors.push_back(CatFunctor{fi.src, fi.dst, fi.objects,
                                      [fi, ai, tgt](const Mor& u) -> std::optional<Mor> {
                                        return compose_all(*tgt, {ai[u.dst], fi(u), tgt->inverse(ai[u.src])});
                                      },
                                      fi.name + "'"});
  }
  for (std::size_t i = 0; i + 1 < d.length(); ++i) {
    std::vector<Mor> cells;
    for (ObjId x = 0; x < d.cats[i]->object_count(); ++x) {
      const ObjId y = d.links[i](x);
      cells.push_back(compose_all(e, {alpha[i][x], fam.coherence[i][x], e.inverse(alpha[i + 1][y])}).value());
    }
    out.coherence.push_back(std::move(cells));
  }
  return out;
}

inline Section verify_funcat(const VerifyOptions& o) {
  Section s{"funcat"};
  std::mt19937_64 rng(o.seed);
  s.note("seed " + std::to_string(o.seed));
  const std::vector<std::pair<std::string, FinCat>> targets = {
      {"Z/2", cyclic_monoid_category(2)},
      {"chain3", chain_poset(3)},
      {"chain2 x Z/2", product_category(*chain_poset(2), *cyclic_monoid_category(2))},
  };
  const std::size_t corpora = 8;
  std::size_t functors = 0, families = 0;
  std::string bad, shapes;
  for (std::size_t c = 0; c < corpora && bad.empty(); ++c) {
    const ChainDiagram d = random_chain(rng, 3, false);
    for (std::size_t i = 0; i < d.length(); ++i) shapes += (i ? "->" : " ") + std::to_string(d.cats[i]->object_count());
    auto colim = colimit_chain(d);
    for (const auto& [tname, e] : targets) {
      for (const auto& g : enumerate_functors(colim, e, 400)) {
        ++functors;
        const FunctorFamily fam = restrict_to_family(colim, g);
        if (!find_natural_iso(g, functor_from_family(colim, fam))) {
          bad = "corpus " + std::to_string(c) + " target " + tname + ": functor does not survive the round trip";
          break;
        }
        const FunctorFamily twisted = conjugate_family(d, fam, rng);
        ++families;
        const CatFunctor h = functor_from_family(colim, twisted);
        const FunctorFamily back = restrict_to_family(colim, h);
        for (std::size_t i = 0; i < d.length() && bad.empty(); ++i)
          if (!find_natural_iso(back.functors[i], twisted.functors[i]))
            bad = "corpus " + std::to_string(c) + " target " + tname + ": family component " + std::to_string(i) +
                  " does not survive the round trip";
        if (!find_natural_iso(h, g)) bad = "corpus " + std::to_string(c) + " target " + tname + ": twisted family gives a different functor";
        if (!bad.empty()) break;
      }
      if (!bad.empty()) break;
    }
  }
  s.note("round-trip chains (object counts):" + shapes);
  s.check(bad.empty(),
          "functor_from_family and restriction are inverse up to natural iso (" + std::to_string(corpora) + " chains, " +
              std::to_string(functors) + " functors, " + std::to_string(families) + " twisted families)",
          bad);

  // F preserves products iff every component does.
  std::size_t checked = 0, preserving = 0, failing = 0;
  std::string mismatch;
  for (std::size_t c = 0; c < corpora && mismatch.empty(); ++c) {
    const ChainDiagram d = random_chain(rng, 3, true);
    auto colim = colimit_chain(d);
    auto inj = colimit_injections(colim);
    for (const auto& e : {chain_poset(2), chain_poset(3)}) {
      for (const auto& f : enumerate_functors(colim, e, 400)) {
        ++checked;
        const bool whole = preserves_products(f).ok;
        bool parts = true;
        for (const auto& i : inj) parts = parts && preserves_products(compose_functors(f, i)).ok;
        (whole ? preserving : failing)++;
        if (whole != parts) {
          mismatch = "corpus " + std::to_string(c) + ": functor " + f.name + (whole ? " preserves" : " does not preserve") +
                     " products but its components " + (parts ? "do" : "do not");
          break;
        }
      }
    }
  }
  s.check(mismatch.empty(),
          "product preservation of F agrees with that of its components (" + std::to_string(checked) + " functors, " +
              std::to_string(preserving) + " preserving, " + std::to_string(failing) + " not)",
          mismatch);

  // Constructed counterexample: diamond -> chain2 collapsing a, b, top to 1.
  {
    FinCat dia = diamond_poset();
    FinCat one = chain_poset(1);
    auto colim = colimit_chain(ChainDiagram({one, dia}, {table_functor(one, dia, {3}, {{{0, 0}, {0}}}, "top")}));
    auto two = chain_poset(2);
    std::vector<ObjId> objs(colim->object_count());
    for (ObjId a = 0; a < objs.size(); ++a) objs[a] = colim->classes()[a].final_object == 0 ? 0 : 1;
    std::map<std::pair<ObjId, ObjId>, std::vector<std::size_t>> mors;
    for (ObjId a = 0; a < objs.size(); ++a)
      for (ObjId b = 0; b < objs.size(); ++b) mors[{a, b}] = std::vector<std::size_t>(colim->hom_size(a, b), 0);
    const CatFunctor f = table_functor(colim, two, objs, mors, "collapse");
    const Verdict whole = preserves_products(f);
    const Verdict last = preserves_products(compose_functors(f, colimit_injection(colim, 1)));
    s.check(check_functor(f).ok && !whole.ok && !last.ok,
            "counterexample: collapsing the diamond onto 0 < 1 fails product preservation on the colimit and on its component",
            "counterexample was not detected");
    if (!whole.ok) s.note("witness: " + whole.witness);
  }
  return s;
}

// ------------------------------------------------------------------ all

inline const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names = {"colim-gset", "limit-span", "colim-span", "adjunction", "mackey-limit", "funcat"};
  return names;
}

inline Section run_verify(const std::string& name, const VerifyOptions& o) {
  if (name == "colim-gset") return verify_colim_gset(o);
  if (name == "limit-span") return verify_limit_span(o);
  if (name == "colim-span") return verify_colim_span(o);
  if (name == "adjunction") return verify_adjunction(o);
  if (name == "mackey-limit") return verify_mackey_limit(o);
  if (name == "funcat") return verify_funcat(o);
  throw InvalidInput("unknown verification '" + name + "'");
}

/// Runs every check concurrently; sections come back in the fixed order.
inline std::vector<Section> run_verify_all(const VerifyOptions& o) {
  std::vector<std::future<Section>> jobs;
  for (const auto& n : verify_names()) jobs.push_back(std::async(std::launch::async, [n, o] { return run_verify(n, o); }));
  std::vector<Section> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace prospan
