#pragma once

// Brute-force reference computations working from raw multiplication
// tables only, for cross-checking the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "prospan/group.hpp"

namespace oracle {

using prospan::Element;
using prospan::FiniteGroup;
using Set = std::vector<Element>;  // sorted

inline Set product_set(const FiniteGroup& g, Element a, const Set& s) {
  Set out;
  for (Element x : s) out.push_back(g.mul(a, x));
  std::sort(out.begin(), out.end());
  return out;
}

inline Set right_product(const FiniteGroup& g, const Set& s, Element a) {
  Set out;
  for (Element x : s) out.push_back(g.mul(x, a));
  std::sort(out.begin(), out.end());
  return out;
}

inline Set conjugate(const FiniteGroup& g, Element a, const Set& s) {
  Set out;
  for (Element x : s) out.push_back(g.mul(g.mul(a, x), g.inv(a)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Every subset closed under multiplication that contains the identity.
inline std::vector<Set> subgroups(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  std::vector<Set> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
    bool closed = true;
    for (Element a = 0; a < n && closed; ++a)
      if (mask >> a & 1)
        for (Element b = 0; b < n && closed; ++b)
          if (mask >> b & 1) closed = mask >> g.mul(a, b) & 1;
    if (!closed) continue;
    Set s;
    for (Element a = 0; a < n; ++a)
      if (mask >> a & 1) s.push_back(a);
    out.push_back(s);
  }
  return out;
}

/// Subgroups of `within` up to conjugation by `within`.
inline std::size_t conjugacy_classes_of_subgroups(const FiniteGroup& g, const Set& within) {
  std::set<Set> seen;
  std::size_t classes = 0;
  for (const Set& s : subgroups(g)) {
    if (!std::includes(within.begin(), within.end(), s.begin(), s.end()) || seen.count(s)) continue;
    ++classes;
    for (Element a : within) seen.insert(conjugate(g, a, s));
  }
  return classes;
}

inline std::vector<Set> left_cosets(const FiniteGroup& g, const Set& h) {
  std::set<Set> cs;
  for (Element a = 0; a < g.order(); ++a) cs.insert(product_set(g, a, h));
  return {cs.begin(), cs.end()};
}

/// |(G/K)^H|: cosets aK with h a K = a K for every h in H.
inline std::size_t marks(const FiniteGroup& g, const Set& k, const Set& h) {
  std::size_t count = 0;
  for (const Set& c : left_cosets(g, k)) {
    bool fixed = true;
    for (Element x : h) fixed = fixed && product_set(g, x, c) == c;
    count += fixed;
  }
  return count;
}

inline std::size_t double_cosets(const FiniteGroup& g, const Set& h, const Set& k) {
  std::set<Set> cs;
  for (Element a = 0; a < g.order(); ++a) {
    Set s;
    for (Element x : h)
      for (Element y : k) s.push_back(g.mul(g.mul(x, a), y));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    cs.insert(s);
  }
  return cs.size();
}

/// Isomorphism classes of spans G/H <- S -> G/K with S transitive, as
/// G-orbits of triples (L, x, y) with L a subgroup fixing x in G/H and y in G/K.
inline std::size_t transitive_spans(const FiniteGroup& g, const Set& h, const Set& k) {
  const auto ch = left_cosets(g, h), ck = left_cosets(g, k);
  struct Triple {
    Set l;
    std::size_t x, y;
    bool operator<(const Triple& o) const { return std::tie(l, x, y) < std::tie(o.l, o.x, o.y); }
  };
  auto fixes = [&](const Set& l, const Set& c) {
    for (Element a : l)
      if (product_set(g, a, c) != c) return false;
    return true;
  };
  std::set<Triple> all;
  for (const Set& l : subgroups(g))
    for (std::size_t x = 0; x < ch.size(); ++x)
      if (fixes(l, ch[x]))
        for (std::size_t y = 0; y < ck.size(); ++y)
          if (fixes(l, ck[y])) all.insert({l, x, y});
  auto idx = [](const std::vector<Set>& cs, const Set& c) {
    return static_cast<std::size_t>(std::lower_bound(cs.begin(), cs.end(), c) - cs.begin());
  };
  std::set<Triple> seen;
  std::size_t orbits = 0;
  for (const Triple& t : all) {
    if (seen.count(t)) continue;
    ++orbits;
    for (Element a = 0; a < g.order(); ++a)
      seen.insert({conjugate(g, a, t.l), idx(ch, product_set(g, a, ch[t.x])), idx(ck, product_set(g, a, ck[t.y]))});
  }
  return orbits;
}

}  // namespace oracle
