#pragma once

// Named groups: every group of order at most 12, plus a few builders.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prospan/tower.hpp"

namespace prospan {

inline GroupRef group_from_rule(std::uint32_t n, const std::function<Element(Element, Element)>& mul) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return make_group(t);
}

/// Element (a, b) is labelled a * |B| + b.
inline GroupRef direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::uint32_t m = b.order();
  return group_from_rule(a.order() * m, [&](Element x, Element y) {
    return a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
  });
}

/// Dihedral group of order 2n; r^a s^b is labelled a + n b.
inline GroupRef dihedral(std::uint32_t n) {
  return group_from_rule(2 * n, [n](Element x, Element y) {
    Element a = x % n, b = x / n, c = y % n, d = y / n;
    Element rot = b == 0 ? (a + c) % n : (a + n - c) % n;
    return rot + n * ((b + d) % 2);
  });
}

/// Dicyclic group of order 4n: a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1.
/// a^k x^j is labelled k + 2n j.
inline GroupRef dicyclic(std::uint32_t n) {
  const std::uint32_t m = 2 * n;
  return group_from_rule(2 * m, [n, m](Element x, Element y) {
    Element k = x % m, j = x / m, l = y % m, i = y / m;
    if (j == 0) return (k + l) % m + m * i;
    Element base = (k + m - l) % m;
    if (i == 0) return base + m;
    return (base + n) % m;
  });
}

using Permutation = std::vector<Element>;

/// The permutation group generated by `gens`; elements are numbered in
/// breadth-first order from the identity. Products compose right to left.
inline GroupRef from_permutations(const std::vector<Permutation>& gens) {
  if (gens.empty()) return cyclic(1);
  const std::size_t degree = gens.front().size();
  Permutation id(degree);
  std::iota(id.begin(), id.end(), Element{0});
  std::vector<Permutation> elems{id};
  std::map<Permutation, Element> index{{id, 0}};
  auto compose = [degree](const Permutation& p, const Permutation& q) {
    Permutation r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = p[q[i]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Permutation p = compose(elems[i], g);
      if (index.emplace(p, static_cast<Element>(elems.size())).second) elems.push_back(p);
    }
  const auto n = static_cast<std::uint32_t>(elems.size());
  return group_from_rule(n, [&](Element a, Element b) { return index.at(compose(elems[a], elems[b])); });
}

inline GroupRef symmetric3() { return dihedral(3); }

inline GroupRef alternating4() { return from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}); }

/// Names of the built-in corpus, ordered by group order.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2",
      "D4", "Q8", "C9", "C3xC3", "C10", "D5", "C11", "C12", "C6xC2", "D6", "A4", "Dic3"};
  return names;
}

inline GroupRef builtin_group(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'C' && name.find('x') == std::string::npos) {
    std::uint32_t n = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw InvalidInput("unknown group name '" + name + "'");
      n = n * 10 + static_cast<std::uint32_t>(name[i] - '0');
    }
    if (n == 0 || n > 64) throw InvalidInput("unknown group name '" + name + "'");
    return cyclic(n);
  }
  if (name == "C2xC2") return direct_product(*cyclic(2), *cyclic(2));
  if (name == "C4xC2") return direct_product(*cyclic(4), *cyclic(2));
  if (name == "C2xC2xC2") return direct_product(*direct_product(*cyclic(2), *cyclic(2)), *cyclic(2));
  if (name == "C3xC3") return direct_product(*cyclic(3), *cyclic(3));
  if (name == "C6xC2") return direct_product(*cyclic(6), *cyclic(2));
  if (name == "S3") return symmetric3();
  if (name == "D4") return dihedral(4);
  if (name == "D5") return dihedral(5);
  if (name == "D6") return dihedral(6);
  if (name == "Q8") return dicyclic(2);
  if (name == "Dic3") return dicyclic(3);
  if (name == "A4") return alternating4();
  throw InvalidInput("unknown group name '" + name + "'");
}

struct NamedGroup {
  std::string name;
  GroupRef group;
};

inline std::vector<NamedGroup> corpus(std::uint32_t max_order = 12) {
  std::vector<NamedGroup> out;
  for (const auto& n : corpus_names()) {
    GroupRef g = builtin_group(n);
    if (g->order() <= max_order) out.push_back({n, g});
  }
  return out;
}

}  // namespace prospan
