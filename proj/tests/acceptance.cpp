// One PASS/FAIL line per acceptance criterion, followed by indented detail.
// Exit status is the number of failing criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "prospan/prospan.hpp"

using namespace prospan;

namespace {

struct Result {
  bool ok = true;
  std::vector<std::string> detail;
  void fail(const std::string& s) {
    ok = false;
    detail.push_back(s);
  }
  void note(const std::string& s) { detail.push_back(s); }
};

std::string join_orders(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

Result from_section(const Section& s) {
  Result r;
  r.ok = s.ok;
  for (const auto& l : s.lines) r.detail.push_back(l);
  return r;
}

SpanMor random_span(std::mt19937_64& rng, const GSet& x, const GSet& y) {
  const auto keys = span_basis_keys(x, y);
  SpanMor m(x, y);
  if (keys.empty()) return m;
  const std::size_t terms = 1 + rng() % 2;
  for (std::size_t i = 0; i < terms; ++i) m.add(keys[rng() % keys.size()], 1 + rng() % 2);
  return m;
}

Result criterion1() {
  Result r;
  // t^2 = 2t over C2, cross-checked through the mark homomorphism
  auto c2 = cyclic(2);
  const GSet pt = GSet::point(c2);
  const SpanMor t = basis_span(pt, pt, SpanKey{0, 0, 0});
  if (!(compose_spans(t, t) == t.scaled(2))) r.fail("t*t != 2t over C2: " + compose_spans(t, t).str());
  for (const auto& h : oracle::subgroups(*c2)) {
    const std::size_t m = oracle::marks(*c2, {0}, h);
    if (m * m != 2 * m) r.fail("mark homomorphism contradicts t^2 = 2t");
  }
  r.note("C2: t*t = " + compose_spans(t, t).str());

  for (const char* name : {"C2", "S3"}) {
    auto g = builtin_group(name);
    const auto& lat = g->lattice();
    const auto tab = burnside_tables(g);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < lat.class_count(); ++k)
      for (std::size_t h = 0; h < lat.class_count(); ++h)
        bad += tab.marks[k][h] != static_cast<std::int64_t>(oracle::marks(*g, lat.rep(k).elements, lat.rep(h).elements));
    if (bad) r.fail(std::string(name) + ": " + std::to_string(bad) + " table-of-marks entries differ from fixed-point counting");
    else r.note(std::string(name) + ": table of marks matches fixed-point counting");
  }

  std::size_t pairs = 0, literal_bad = 0, refined_bad = 0, injective_bad = 0;
  std::string first_witness;
  for (const auto& [name, g] : corpus(12)) {
    const auto& lat = g->lattice();
    std::vector<GSet> orbs;
    for (std::size_t c = 0; c < lat.class_count(); ++c) orbs.push_back(GSet::orbit(g, c));
    for (std::size_t a = 0; a < lat.subgroups.size(); ++a)
      for (std::size_t b = 0; b < lat.subgroups.size(); ++b) {
        ++pairs;
        const auto& hs = lat.subgroups[a].elements;
        const auto& ks = lat.subgroups[b].elements;
        const auto basis = span_basis(orbs[lat.class_of[a]], orbs[lat.class_of[b]]);
        const std::size_t dc = oracle::double_cosets(*g, hs, ks);
        if (basis.size() != dc) {
          if (!literal_bad++) {
            std::ostringstream os;
            os << name << " |H|=" << hs.size() << " |K|=" << ks.size() << ": " << basis.size() << " basis spans, " << dc
               << " double cosets";
            first_witness = os.str();
          }
        }
        if (a == lat.class_rep[lat.class_of[a]] && b == lat.class_rep[lat.class_of[b]] &&
            basis.size() != oracle::transitive_spans(*g, hs, ks))
          ++refined_bad;
        std::size_t injective = 0;
        for (const auto& s : basis) {
          std::set<std::pair<Point, Point>> seen;
          bool inj = true;
          for (Point p = 0; p < s.apex.size() && inj; ++p) inj = seen.insert({s.legL(p), s.legR(p)}).second;
          injective += inj;
        }
        injective_bad += injective != dc;
      }
  }
  if (literal_bad)
    r.fail("double-coset law |span_basis(G/H,G/K)| = |H\\G/K| fails on " + std::to_string(literal_bad) + " of " +
           std::to_string(pairs) + " subgroup pairs; first: " + first_witness);
  r.note("refined count (G-orbits of (L, x, y), L fixing x and y) agrees on all class pairs: " +
         std::string(refined_bad ? "NO" : "yes"));
  r.note("jointly injective basis spans = |H\\G/K| on all " + std::to_string(pairs) + " pairs: " +
         std::string(injective_bad ? "NO" : "yes"));
  if (refined_bad || injective_bad) r.ok = false;
  return r;
}

Result criterion2() {
  Result r;
  std::vector<GroupRef> groups;
  for (const auto& [name, g] : corpus(8)) groups.push_back(g);
  std::mt19937_64 rng(1);
  std::size_t assoc = 0, bilin = 0;
  const std::size_t n = 500;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = groups[rng() % groups.size()];
    const auto objs = enumerate_gsets(g, 4);
    const GSet &x = objs[rng() % objs.size()], &y = objs[rng() % objs.size()], &z = objs[rng() % objs.size()],
               &w = objs[rng() % objs.size()];
    const SpanMor a = random_span(rng, x, y), a2 = random_span(rng, x, y);
    const SpanMor b = random_span(rng, y, z), b2 = random_span(rng, y, z);
    const SpanMor c = random_span(rng, z, w);
    assoc += !(compose_spans(c, compose_spans(b, a)) == compose_spans(compose_spans(c, b), a));
    bilin += !(compose_spans(b, a + a2) == compose_spans(b, a) + compose_spans(b, a2));
    bilin += !(compose_spans(b + b2, a) == compose_spans(b, a) + compose_spans(b2, a));
  }
  r.note(std::to_string(n) + " seeded triples over " + std::to_string(groups.size()) + " groups of order <= 8: " +
         std::to_string(assoc) + " associativity and " + std::to_string(bilin) + " bilinearity failures");
  r.ok = assoc == 0 && bilin == 0;
  return r;
}

Result criterion3() {
  Result r;
  for (const char* name : {"C4", "S3"}) {
    auto g = builtin_group(name);
    const auto objs = enumerate_gsets(g, 3);
    std::size_t triples = 0, bad = 0;
    for (const auto& x : objs)
      for (const auto& x2 : objs)
        for (const auto& y : objs) {
          ++triples;
          if (Verdict v = semiadditivity_check(x, x2, y); !v) {
            if (!bad++) r.fail(std::string(name) + ": " + v.witness);
          }
        }
    r.note(std::string(name) + ": " + std::to_string(triples) + " triples, " + std::to_string(bad) + " failures");
  }
  return r;
}

Result criterion8() {
  Result r;
  for (const auto& [name, g] : corpus(12)) {
    Verdict v = check_mackey(burnside_mackey(g));
    if (!v) r.fail(name + ": " + v.witness);
  }
  r.note("check_mackey(burnside_mackey(G)) on " + std::to_string(corpus(12).size()) + " corpus groups");
  auto c6 = builtin_group("C6");
  const auto& lat = c6->lattice();
  const LewisDiagram d = lewis_diagram(burnside_mackey(c6));
  std::vector<LewisArrow> want;
  for (std::size_t u = 0; u < lat.class_count(); ++u)
    for (std::size_t l = 0; l < lat.class_count(); ++l) {
      const std::size_t a = lat.rep(u).size(), b = lat.rep(l).size();
      if (a == b || a % b) continue;
      bool between = false;
      for (std::size_t m = 0; m < lat.class_count(); ++m) {
        const std::size_t c = lat.rep(m).size();
        between = between || (c != a && c != b && a % c == 0 && c % b == 0);
      }
      if (!between) want.push_back({u, l});
    }
  std::sort(want.begin(), want.end());
  std::ostringstream os;
  for (const auto& a : d.arrows) os << " " << lat.rep(a.upper).size() << "-" << lat.rep(a.lower).size();
  r.note("C6 levels (subgroup orders 1 2 3 6), ranks " + join_orders(d.ranks) + ", arrows by order:" + os.str());
  if (d.ranks.size() != 4 || d.arrows != want) r.fail("C6 Lewis arrows differ from the divisor lattice of 6");
  return r;
}

}  // namespace

int main() {
  VerifyOptions defaults;
  std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"span arithmetic: t^2 = 2t, table of marks, double-coset law", criterion1},
      {"span composition associativity and bilinearity", criterion2},
      {"semiadditivity of span hom-monoids", criterion3},
      {"G-sets over cyclic_tower(2,3) as a colimit, size cap 4",
       [] {
         VerifyOptions o;
         o.prime = 2, o.depth = 3, o.cap = 4;
         return from_section(verify_colim_gset(o));
       }},
      {"spans over cyclic_tower(2,3) as a colimit", [&] { return from_section(verify_colim_span(defaults)); }},
      {"spans over cyclic_tower(2,3) as a limit along fixed points", [&] { return from_section(verify_limit_span(defaults)); }},
      {"inflation/fixed-point unit and counit squares over C4, N of order 2",
       [] {
         VerifyOptions o;
         o.cap = 4;
         return from_section(verify_adjunction(o));
       }},
      {"Mackey axioms on Burnside functors and the C6 Lewis diagram", criterion8},
      {"Mackey functors over cyclic_tower(2,2) as a limit",
       [] {
         VerifyOptions o;
         o.depth = 2;
         return from_section(verify_mackey_limit(o));
       }},
      {"functor-category lemmas: family round trip and product preservation", [&] { return from_section(verify_funcat(defaults)); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << "ACCEPTANCE " << (i + 1) << " " << (r.ok ? "PASS" : "FAIL") << " " << criteria[i].first << " (" << t.str()
              << "s)\n";
    for (const auto& d : r.detail) std::cout << "    " << d << "\n";
    std::cout.flush();
    failures += !r.ok;
  }
  return failures;
}
