#pragma once

// Finite groups given by multiplication tables, their subgroup lattices,
// quotient maps and isomorphism search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/error.hpp"

namespace prospan {

using Element = std::uint32_t;

/// A subgroup stored as its sorted element list plus a membership mask.
struct Subgroup {
  std::vector<Element> elements;
  std::vector<char> member;

  Subgroup() = default;
  Subgroup(std::vector<Element> elems, std::uint32_t group_order)
      : elements(std::move(elems)), member(group_order, 0) {
    std::sort(elements.begin(), elements.end());
    for (Element e : elements) member[e] = 1;
  }

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(Element g) const { return g < member.size() && member[g] != 0; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements == b.elements;
  }
};

/// Every subgroup of a finite group, sorted by (order, elements), with the
/// partition into conjugacy classes. Class indices are ordered by the index
/// of their representative, so classes appear in increasing subgroup order.
struct SubgroupLattice {
  std::vector<Subgroup> subgroups;
  std::vector<bool> normal;
  std::vector<std::size_t> class_of;
  /// For each subgroup S, an element g with g S g^-1 equal to its class
  /// representative.
  std::vector<Element> conjugator;

  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_rep;

  // Per conjugacy class, data about the representative H.
  std::vector<std::vector<Element>> normalizer;
  /// coset_reps[c][k] is the least element of the k-th left coset of H;
  /// coset 0 is H itself.
  std::vector<std::vector<Element>> coset_reps;
  /// coset_action[c][k * order + g] is the coset containing g * coset_reps[c][k].
  std::vector<std::vector<std::uint32_t>> coset_action;

  std::map<std::vector<Element>, std::size_t> index;

  std::size_t class_count() const noexcept { return classes.size(); }
  const Subgroup& rep(std::size_t cls) const { return subgroups[class_rep[cls]]; }
  std::size_t orbit_size(std::size_t cls) const { return coset_reps[cls].size(); }

  /// Index of the subgroup with exactly these (sorted) elements.
  std::size_t find(const std::vector<Element>& sorted_elements) const {
    auto it = index.find(sorted_elements);
    if (it == index.end()) throw InvalidInput("element set is not a subgroup");
    return it->second;
  }
};

class FiniteGroup;
using GroupRef = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  std::uint32_t order() const noexcept { return order_; }
  static constexpr Element identity() noexcept { return 0; }

  Element mul(Element a, Element b) const { return mult_[std::size_t{a} * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  /// g x g^-1
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }

  std::uint32_t element_order(Element g) const {
    std::uint32_t k = 1;
    for (Element x = g; x != identity(); x = mul(x, g)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::vector<Element>& table() const noexcept { return mult_; }
  const SubgroupLattice& lattice() const noexcept { return lattice_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.mult_ == b.mult_;
  }

 private:
  FiniteGroup(std::uint32_t order, std::vector<Element> mult);
  friend GroupRef make_group(const std::vector<std::vector<Element>>& table);

  std::uint32_t order_;
  std::vector<Element> mult_;
  std::vector<Element> inv_;
  SubgroupLattice lattice_;
};

inline bool same_group(const GroupRef& a, const GroupRef& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_group(const GroupRef& a, const GroupRef& b, const char* what) {
  if (!same_group(a, b)) throw GroupMismatch(std::string(what) + ": objects live over different groups");
}

/// Closure of a generating set under multiplication.
inline Subgroup generate_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> elems{FiniteGroup::identity()};
  seen[FiniteGroup::identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Element s : gens) {
      Element x = g.mul(elems[i], s);
      if (!seen[x]) {
        seen[x] = 1;
        elems.push_back(x);
      }
    }
  }
  return Subgroup(std::move(elems), g.order());
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& n, std::string* witness = nullptr) {
  for (Element x = 0; x < g.order(); ++x) {
    for (Element h : n.elements) {
      Element c = g.conj(x, h);
      if (!n.contains(c)) {
        if (witness) {
          std::ostringstream os;
          os << "g=" << x << " n=" << h << " g*n*g^-1=" << c << " not in subgroup";
          *witness = os.str();
        }
        return false;
      }
    }
  }
  return true;
}

/// Exhaustive closure enumeration of all subgroups, conjugacy classes and
/// per-class coset data.
inline SubgroupLattice subgroup_lattice(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  SubgroupLattice lat;

  std::map<std::vector<Element>, std::size_t> seen;
  std::vector<Subgroup> found;
  found.push_back(generate_subgroup(g, {}));
  seen.emplace(found.back().elements, 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element x = 0; x < n; ++x) {
      if (found[i].contains(x)) continue;
      std::vector<Element> gens = found[i].elements;
      gens.push_back(x);
      Subgroup s = generate_subgroup(g, gens);
      if (seen.emplace(s.elements, found.size()).second) found.push_back(std::move(s));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  });
  lat.subgroups = std::move(found);
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i) lat.index.emplace(lat.subgroups[i].elements, i);

  const std::size_t count = lat.subgroups.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  lat.class_of.assign(count, unset);
  lat.conjugator.assign(count, 0);
  lat.normal.assign(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (lat.class_of[i] != unset) continue;
    const std::size_t cls = lat.classes.size();
    lat.classes.emplace_back();
    lat.class_rep.push_back(i);
    const Subgroup& rep = lat.subgroups[i];
    for (Element x = 0; x < n; ++x) {
      std::vector<Element> image;
      image.reserve(rep.size());
      for (Element h : rep.elements) image.push_back(g.conj(x, h));
      std::sort(image.begin(), image.end());
      std::size_t j = lat.index.at(image);
      if (lat.class_of[j] == unset) {
        lat.class_of[j] = cls;
        // x rep x^-1 = S_j, hence x^-1 S_j x = rep.
        lat.conjugator[j] = g.inv(x);
        lat.classes[cls].push_back(j);
      }
    }
    lat.normal[i] = lat.classes[cls].size() == 1;
  }

  const std::size_t ncls = lat.classes.size();
  lat.normalizer.resize(ncls);
  lat.coset_reps.resize(ncls);
  lat.coset_action.resize(ncls);
  for (std::size_t c = 0; c < ncls; ++c) {
    const Subgroup& h = lat.rep(c);
    for (Element x = 0; x < n; ++x) {
      bool stable = true;
      for (Element e : h.elements)
        if (!h.contains(g.conj(x, e))) {
          stable = false;
          break;
        }
      if (stable) lat.normalizer[c].push_back(x);
    }
    std::vector<std::uint32_t> label(n, static_cast<std::uint32_t>(-1));
    for (Element x = 0; x < n; ++x) {
      if (label[x] != static_cast<std::uint32_t>(-1)) continue;
      auto k = static_cast<std::uint32_t>(lat.coset_reps[c].size());
      lat.coset_reps[c].push_back(x);
      for (Element e : h.elements) label[g.mul(x, e)] = k;
    }
    const std::size_t m = lat.coset_reps[c].size();
    lat.coset_action[c].resize(m * n);
    for (std::size_t k = 0; k < m; ++k)
      for (Element x = 0; x < n; ++x) lat.coset_action[c][k * n + x] = label[g.mul(x, lat.coset_reps[c][k])];
  }
  return lat;
}

inline FiniteGroup::FiniteGroup(std::uint32_t order, std::vector<Element> mult)
    : order_(order), mult_(std::move(mult)), inv_(order) {
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b)
      if (mul(a, b) == identity()) inv_[a] = b;
  lattice_ = subgroup_lattice(*this);
}

/// Validates a multiplication table and builds the group. A table whose
/// identity is not element 0 is relabelled by swapping the identity with 0.
inline GroupRef make_group(const std::vector<std::vector<Element>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw NotAGroup("empty table");
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) throw NotAGroup("table is not square (row " + std::to_string(r) + ")");
    for (Element v : table[r])
      if (v >= n) throw NotAGroup("entry " + std::to_string(v) + " out of range in row " + std::to_string(r));
  }

  std::optional<Element> ident;
  for (Element e = 0; e < n && !ident; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) ident = e;
  }
  if (!ident) throw NotAGroup("no two-sided identity element");

  // Relabel so the identity is 0.
  std::vector<Element> relabel(n);
  std::iota(relabel.begin(), relabel.end(), Element{0});
  std::swap(relabel[0], relabel[*ident]);
  const auto m = static_cast<std::uint32_t>(n);
  std::vector<Element> mult(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mult[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
  auto mul = [&](Element a, Element b) { return mult[std::size_t{a} * n + b]; };

  for (Element a = 0; a < m; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (Element b = 0; b < m; ++b) {
      if (row[mul(a, b)]++) throw NotAGroup("row " + std::to_string(a) + " is not a permutation");
      if (col[mul(b, a)]++) throw NotAGroup("column " + std::to_string(a) + " is not a permutation");
    }
  }
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      for (Element c = 0; c < m; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          std::ostringstream os;
          os << "associativity fails for (a,b,c)=(" << a << "," << b << "," << c << ")";
          throw NotAGroup(os.str());
        }
  for (Element a = 0; a < m; ++a) {
    bool has_inverse = false;
    for (Element b = 0; b < m && !has_inverse; ++b) has_inverse = mul(a, b) == 0 && mul(b, a) == 0;
    if (!has_inverse) throw NotAGroup("element " + std::to_string(a) + " has no inverse");
  }
  return GroupRef(new FiniteGroup(m, std::move(mult)));
}

inline GroupRef make_group(std::uint32_t order, const std::vector<Element>& flat) {
  if (flat.size() != std::size_t{order} * order) throw NotAGroup("table size does not match order");
  std::vector<std::vector<Element>> rows(order);
  for (std::uint32_t r = 0; r < order; ++r)
    rows[r].assign(flat.begin() + std::size_t{r} * order, flat.begin() + std::size_t{r + 1} * order);
  return make_group(rows);
}

/// A surjective homomorphism source -> target with its kernel.
struct QuotientMap {
  GroupRef source;
  Subgroup kernel;
  GroupRef target;
  std::vector<Element> projection;

  Element operator()(Element g) const { return projection[g]; }

  /// Some element of the source projecting to c.
  Element lift(Element c) const {
    for (Element g = 0; g < projection.size(); ++g)
      if (projection[g] == c) return g;
    throw InvalidInput("element has no preimage");
  }

  /// The preimage of a subgroup of the target.
  Subgroup preimage(const Subgroup& s) const {
    std::vector<Element> elems;
    for (Element g = 0; g < projection.size(); ++g)
      if (s.contains(projection[g])) elems.push_back(g);
    return Subgroup(std::move(elems), source->order());
  }

  Subgroup image(const Subgroup& s) const {
    std::vector<Element> elems;
    for (Element g : s.elements) elems.push_back(projection[g]);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Subgroup(std::move(elems), target->order());
  }
};

/// Checks that `projection` is a surjective homomorphism and records its kernel.
inline QuotientMap make_quotient_map(GroupRef source, GroupRef target, std::vector<Element> projection) {
  if (projection.size() != source->order()) throw InvalidInput("projection has wrong length");
  std::vector<char> hit(target->order(), 0);
  for (Element v : projection) {
    if (v >= target->order()) throw InvalidInput("projection value out of range");
    hit[v] = 1;
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw InvalidInput("projection is not surjective");
  for (Element a = 0; a < source->order(); ++a)
    for (Element b = 0; b < source->order(); ++b)
      if (projection[source->mul(a, b)] != target->mul(projection[a], projection[b])) {
        std::ostringstream os;
        os << "projection is not a homomorphism at (" << a << "," << b << ")";
        throw InvalidInput(os.str());
      }
  std::vector<Element> ker;
  for (Element g = 0; g < source->order(); ++g)
    if (projection[g] == FiniteGroup::identity()) ker.push_back(g);
  QuotientMap q;
  q.kernel = Subgroup(std::move(ker), source->order());
  q.source = std::move(source);
  q.target = std::move(target);
  q.projection = std::move(projection);
  return q;
}

/// The coset map G -> G/N. Cosets are labelled in order of their least
/// element, so N itself is the identity 0.
inline QuotientMap quotient(const GroupRef& g, const Subgroup& n) {
  if (n.member.size() != g->order() || !n.contains(FiniteGroup::identity()))
    throw InvalidInput("subgroup does not belong to this group");
  std::string witness;
  if (!is_normal(*g, n, &witness)) throw NotNormal(witness);
  const std::uint32_t order = g->order();
  std::vector<Element> label(order, static_cast<Element>(-1));
  std::vector<Element> reps;
  for (Element x = 0; x < order; ++x) {
    if (label[x] != static_cast<Element>(-1)) continue;
    auto k = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element e : n.elements) label[g->mul(x, e)] = k;
  }
  const std::size_t m = reps.size();
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a][b] = label[g->mul(reps[a], reps[b])];
  QuotientMap q;
  q.source = g;
  q.kernel = n;
  q.target = make_group(table);
  q.projection = std::move(label);
  return q;
}

inline QuotientMap compose_quotients(const QuotientMap& outer, const QuotientMap& inner) {
  if (!same_group(inner.target, outer.source)) throw GroupMismatch("quotient maps do not compose");
  std::vector<Element> proj(inner.source->order());
  for (Element g = 0; g < proj.size(); ++g) proj[g] = outer.projection[inner.projection[g]];
  return make_quotient_map(inner.source, outer.target, std::move(proj));
}

/// Greedy generating set: each element added is outside the span of the
/// previous ones.
inline std::vector<Element> generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  Subgroup span = generate_subgroup(g, gens);
  for (Element x = 0; x < g.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generate_subgroup(g, gens);
  }
  return gens;
}

/// Backtracking search on generator images. Returns the element map a -> b.
inline std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  const std::uint32_t n = a.order();
  const std::vector<Element> gens = generating_set(a);
  std::vector<Element> images(gens.size());

  // Extend a generator assignment to a map by breadth-first multiplication;
  // fails on conflicts or a non-bijective result.
  auto extend = [&]() -> std::optional<std::vector<Element>> {
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> map(n, unset);
    map[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Element x = queue[i];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Element y = a.mul(x, gens[k]);
        Element fy = b.mul(map[x], images[k]);
        if (map[y] == unset) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return std::nullopt;
        }
      }
    }
    std::vector<char> hit(n, 0);
    for (Element v : map) {
      if (v == unset || hit[v]) return std::nullopt;
      hit[v] = 1;
    }
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return std::nullopt;
    return map;
  };

  std::optional<std::vector<Element>> result;
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) {
      result = extend();
      return result.has_value();
    }
    const std::uint32_t ord = a.element_order(gens[k]);
    for (Element y = 0; y < n; ++y) {
      if (b.element_order(y) != ord) continue;
      images[k] = y;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return result;
}

inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace prospan
