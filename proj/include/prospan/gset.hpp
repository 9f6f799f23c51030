#pragma once

// Finite G-sets and equivariant maps.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/group.hpp"

namespace prospan {

using Point = std::uint32_t;

/// A finite set with a left action, stored as a size x order table with
/// act(x, g) = g.x. Copies share the table.
class GSet {
 public:
  GSet() = default;
  GSet(GroupRef group, std::size_t size, std::vector<Point> action) : group_(std::move(group)) {
    const std::uint32_t n = group_->order();
    if (action.size() != size * n) throw InvalidInput("action table has wrong shape");
    for (Point v : action)
      if (v >= size) throw InvalidInput("action table entry out of range");
    for (Point x = 0; x < size; ++x)
      if (action[std::size_t{x} * n] != x) throw InvalidInput("identity does not act trivially on point " + std::to_string(x));
    for (Element g = 0; g < n; ++g) {
      std::vector<char> hit(size, 0);
      for (Point x = 0; x < size; ++x)
        if (hit[action[std::size_t{x} * n + g]]++) throw InvalidInput("element " + std::to_string(g) + " does not act bijectively");
    }
    for (Point x = 0; x < size; ++x)
      for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
          if (action[std::size_t{action[std::size_t{x} * n + h]} * n + g] != action[std::size_t{x} * n + group_->mul(g, h)]) {
            std::ostringstream os;
            os << "action is not compatible with multiplication at x=" << x << " g=" << g << " h=" << h;
            throw InvalidInput(os.str());
          }
    data_ = std::make_shared<const Data>(Data{size, std::move(action)});
  }

  static GSet empty(GroupRef g) { return GSet(std::move(g), 0, {}); }
  static GSet trivial(GroupRef g, std::size_t n) {
    std::vector<Point> t;
    t.reserve(n * g->order());
    for (Point x = 0; x < n; ++x) t.insert(t.end(), g->order(), x);
    return GSet(std::move(g), n, std::move(t));
  }
  static GSet point(GroupRef g) { return trivial(std::move(g), 1); }

  /// The canonical orbit G/H for the representative H of a subgroup class;
  /// point k is the coset of coset_reps[cls][k], point 0 is H itself.
  static GSet orbit(const GroupRef& g, std::size_t cls) {
    const auto& lat = g->lattice();
    return GSet(g, lat.orbit_size(cls), lat.coset_action.at(cls));
  }

  /// Action of G on itself by left multiplication.
  static GSet regular(const GroupRef& g) { return orbit(g, 0); }

  const GroupRef& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return data_ ? data_->size : 0; }
  Point act(Point x, Element g) const { return data_->action[std::size_t{x} * group_->order() + g]; }
  const std::vector<Point>& table() const {
    static const std::vector<Point> none;
    return data_ ? data_->action : none;
  }

  friend bool operator==(const GSet& a, const GSet& b) {
    return same_group(a.group_, b.group_) && (a.data_ == b.data_ || a.table() == b.table());
  }

 private:
  struct Data {
    std::size_t size;
    std::vector<Point> action;
  };
  GroupRef group_;
  std::shared_ptr<const Data> data_;
};

/// An equivariant map src -> dst.
struct EqMap {
  GSet src, dst;
  std::vector<Point> values;

  EqMap() = default;
  EqMap(GSet s, GSet d, std::vector<Point> v) : src(std::move(s)), dst(std::move(d)), values(std::move(v)) {
    require_same_group(src.group(), dst.group(), "EqMap");
    if (values.size() != src.size()) throw InvalidInput("map has wrong length");
    for (Point y : values)
      if (y >= dst.size()) throw InvalidInput("map value out of range");
    for (Point x = 0; x < src.size(); ++x)
      for (Element g = 0; g < src.group()->order(); ++g)
        if (values[src.act(x, g)] != dst.act(values[x], g)) {
          std::ostringstream os;
          os << "map is not equivariant at x=" << x << " g=" << g;
          throw InvalidInput(os.str());
        }
  }

  Point operator()(Point x) const { return values[x]; }

  bool injective() const {
    std::vector<char> hit(dst.size(), 0);
    for (Point y : values)
      if (hit[y]++) return false;
    return true;
  }
  bool surjective() const {
    std::vector<char> hit(dst.size(), 0);
    for (Point y : values) hit[y] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
  }
  bool bijective() const { return src.size() == dst.size() && injective(); }

  friend bool operator==(const EqMap& a, const EqMap& b) {
    return a.src == b.src && a.dst == b.dst && a.values == b.values;
  }
};

inline EqMap identity_map(const GSet& x) {
  std::vector<Point> v(x.size());
  std::iota(v.begin(), v.end(), Point{0});
  return EqMap(x, x, std::move(v));
}

/// g o f
inline EqMap compose(const EqMap& g, const EqMap& f) {
  if (!(f.dst == g.src)) throw InvalidInput("maps do not compose");
  std::vector<Point> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values[f.values[i]];
  return EqMap(f.src, g.dst, std::move(v));
}

inline EqMap inverse(const EqMap& f) {
  if (!f.bijective()) throw InvalidInput("map is not invertible");
  std::vector<Point> v(f.values.size());
  for (Point x = 0; x < f.values.size(); ++x) v[f.values[x]] = x;
  return EqMap(f.dst, f.src, std::move(v));
}

/// Elements fixing x.
inline std::vector<Element> stabilizer(const GSet& x, Point p) {
  std::vector<Element> out;
  for (Element g = 0; g < x.group()->order(); ++g)
    if (x.act(p, g) == p) out.push_back(g);
  return out;
}

struct Orbit {
  std::vector<Point> points;  ///< sorted
  Point base;                 ///< least point
  std::size_t subgroup;       ///< lattice index of the stabilizer of base
  std::size_t cls;            ///< conjugacy class of that stabilizer
};

/// Orbits in order of their least point.
inline std::vector<Orbit> orbits(const GSet& x) {
  const auto& g = *x.group();
  const auto& lat = g.lattice();
  std::vector<char> seen(x.size(), 0);
  std::vector<Orbit> out;
  for (Point p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    Orbit o;
    o.base = p;
    for (Element e = 0; e < g.order(); ++e) {
      Point q = x.act(p, e);
      if (!seen[q]) {
        seen[q] = 1;
        o.points.push_back(q);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    o.subgroup = lat.find(stabilizer(x, p));
    o.cls = lat.class_of[o.subgroup];
    out.push_back(std::move(o));
  }
  return out;
}

struct OrbitType {
  std::size_t cls;
  std::size_t multiplicity;
  friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

/// (class, multiplicity) pairs sorted by class.
inline std::vector<OrbitType> orbit_decompose(const GSet& x) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& o : orbits(x)) ++counts[o.cls];
  std::vector<OrbitType> out;
  for (auto [c, m] : counts) out.push_back({c, m});
  return out;
}

inline bool isomorphic(const GSet& a, const GSet& b) {
  return same_group(a.group(), b.group()) && orbit_decompose(a) == orbit_decompose(b);
}

/// Disjoint union of canonical orbits with the given class multiset.
inline GSet canonical_gset(const GroupRef& g, const std::vector<OrbitType>& types) {
  const auto& lat = g->lattice();
  const std::uint32_t n = g->order();
  std::vector<Point> table;
  Point offset = 0;
  for (const auto& t : types)
    for (std::size_t m = 0; m < t.multiplicity; ++m) {
      for (Point v : lat.coset_action.at(t.cls)) table.push_back(v + offset);
      offset += static_cast<Point>(lat.orbit_size(t.cls));
    }
  (void)n;
  return GSet(g, offset, std::move(table));
}

struct CanonicalForm {
  GSet set;
  EqMap iso;  ///< X -> set
};

/// The canonical representative of X's isomorphism class and an iso onto it.
/// Orbits of one class are matched in order of their least point.
inline CanonicalForm canonical_form(const GSet& x) {
  const GroupRef& gp = x.group();
  const auto& g = *gp;
  const auto& lat = g.lattice();
  auto orbs = orbits(x);
  std::stable_sort(orbs.begin(), orbs.end(), [](const Orbit& a, const Orbit& b) { return a.cls < b.cls; });
  GSet canon = canonical_gset(gp, orbit_decompose(x));
  std::vector<Point> values(x.size());
  Point offset = 0;
  for (const auto& o : orbs) {
    // g S g^-1 = H with S = Stab(base), so g.base has stabilizer H.
    const Point b = x.act(o.base, lat.conjugator[o.subgroup]);
    const auto& reps = lat.coset_reps[o.cls];
    for (std::size_t k = 0; k < reps.size(); ++k) values[x.act(b, reps[k])] = offset + static_cast<Point>(k);
    offset += static_cast<Point>(reps.size());
  }
  return {canon, EqMap(x, canon, std::move(values))};
}

inline std::optional<EqMap> find_gset_iso(const GSet& a, const GSet& b) {
  if (!isomorphic(a, b)) return std::nullopt;
  auto ca = canonical_form(a);
  auto cb = canonical_form(b);
  return compose(inverse(cb.iso), EqMap(a, cb.set, ca.iso.values));
}

struct FixedPoints {
  GSet set;                    ///< over the quotient group
  std::vector<Point> points;   ///< point i of `set` is points[i] in X
};

inline FixedPoints fixed_points(const GSet& x, const QuotientMap& q) {
  require_same_group(x.group(), q.source, "fixed_points");
  FixedPoints fp;
  std::vector<Point> index(x.size(), static_cast<Point>(-1));
  for (Point p = 0; p < x.size(); ++p) {
    bool fixed = true;
    for (Element e : q.kernel.elements)
      if (x.act(p, e) != p) {
        fixed = false;
        break;
      }
    if (fixed) {
      index[p] = static_cast<Point>(fp.points.size());
      fp.points.push_back(p);
    }
  }
  const std::uint32_t m = q.target->order();
  std::vector<Element> lifts(m);
  for (Element c = 0; c < m; ++c) lifts[c] = q.lift(c);
  std::vector<Point> table(fp.points.size() * m);
  for (std::size_t i = 0; i < fp.points.size(); ++i)
    for (Element c = 0; c < m; ++c) table[i * m + c] = index[x.act(fp.points[i], lifts[c])];
  fp.set = GSet(q.target, fp.points.size(), std::move(table));
  return fp;
}

inline FixedPoints fixed_points(const GSet& x, const Subgroup& n) { return fixed_points(x, quotient(x.group(), n)); }

/// f^N : X^N -> Y^N
inline EqMap fixed_point_map(const EqMap& f, const QuotientMap& q) {
  auto a = fixed_points(f.src, q);
  auto b = fixed_points(f.dst, q);
  std::vector<Point> index(f.dst.size(), static_cast<Point>(-1));
  for (std::size_t i = 0; i < b.points.size(); ++i) index[b.points[i]] = static_cast<Point>(i);
  std::vector<Point> v;
  for (Point p : a.points) v.push_back(index[f.values[p]]);
  return EqMap(a.set, b.set, std::move(v));
}

inline GSet inflate(const GSet& x, const QuotientMap& q) {
  require_same_group(x.group(), q.target, "inflate");
  const std::uint32_t n = q.source->order();
  std::vector<Point> table(x.size() * n);
  for (Point p = 0; p < x.size(); ++p)
    for (Element g = 0; g < n; ++g) table[std::size_t{p} * n + g] = x.act(p, q.projection[g]);
  return GSet(q.source, x.size(), std::move(table));
}

inline EqMap inflate_map(const EqMap& f, const QuotientMap& q) {
  return EqMap(inflate(f.src, q), inflate(f.dst, q), f.values);
}

/// All equivariant maps X -> Y: each orbit's base point may go to any point
/// whose stabilizer contains the base point's stabilizer.
inline std::vector<EqMap> hom_gset(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "hom_gset");
  const auto& g = *x.group();
  const auto orbs = orbits(x);
  std::vector<std::vector<Point>> choices(orbs.size());
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    const auto stab = stabilizer(x, orbs[i].base);
    for (Point q = 0; q < y.size(); ++q)
      if (std::all_of(stab.begin(), stab.end(), [&](Element e) { return y.act(q, e) == q; })) choices[i].push_back(q);
  }
  std::vector<EqMap> out;
  std::vector<Point> values(x.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == orbs.size()) {
      out.emplace_back(x, y, values);
      return;
    }
    for (Point q : choices[i]) {
      for (Element e = 0; e < g.order(); ++e) values[x.act(orbs[i].base, e)] = y.act(q, e);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

struct Pullback {
  GSet set;
  EqMap p1, p2;
};

/// {(x, y) : f(x) = g(y)} in lexicographic order with the diagonal action.
inline Pullback pullback(const EqMap& f, const EqMap& g) {
  require_same_group(f.src.group(), g.src.group(), "pullback");
  if (!(f.dst == g.dst)) throw InvalidInput("pullback: maps have different targets");
  std::vector<std::pair<Point, Point>> pairs;
  std::map<std::pair<Point, Point>, Point> index;
  for (Point a = 0; a < f.src.size(); ++a)
    for (Point b = 0; b < g.src.size(); ++b)
      if (f.values[a] == g.values[b]) {
        index.emplace(std::pair{a, b}, static_cast<Point>(pairs.size()));
        pairs.emplace_back(a, b);
      }
  const std::uint32_t n = f.src.group()->order();
  std::vector<Point> table(pairs.size() * n);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (Element e = 0; e < n; ++e)
      table[i * n + e] = index.at({f.src.act(pairs[i].first, e), g.src.act(pairs[i].second, e)});
  GSet p(f.src.group(), pairs.size(), std::move(table));
  std::vector<Point> v1, v2;
  for (auto [a, b] : pairs) {
    v1.push_back(a);
    v2.push_back(b);
  }
  return {p, EqMap(p, f.src, std::move(v1)), EqMap(p, g.src, std::move(v2))};
}

inline EqMap terminal_map(const GSet& x) {
  return EqMap(x, GSet::point(x.group()), std::vector<Point>(x.size(), 0));
}

inline Pullback product(const GSet& x, const GSet& y) { return pullback(terminal_map(x), terminal_map(y)); }

struct Coproduct {
  GSet set;
  EqMap i1, i2;
};

/// X's points first, then Y's.
inline Coproduct coproduct(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "coproduct");
  const std::uint32_t n = x.group()->order();
  std::vector<Point> table = x.table();
  const auto off = static_cast<Point>(x.size());
  for (Point v : y.table()) table.push_back(v + off);
  GSet s(x.group(), x.size() + y.size(), std::move(table));
  std::vector<Point> v1(x.size()), v2(y.size());
  std::iota(v1.begin(), v1.end(), Point{0});
  std::iota(v2.begin(), v2.end(), off);
  (void)n;
  return {s, EqMap(x, s, std::move(v1)), EqMap(y, s, std::move(v2))};
}

/// Isomorphism-class representatives of all G-sets of size <= cap, ordered
/// by size and then by orbit multiset.
inline std::vector<GSet> enumerate_gsets(const GroupRef& g, std::size_t cap) {
  const auto& lat = g->lattice();
  const std::size_t ncls = lat.class_count();
  std::vector<std::pair<std::size_t, std::vector<OrbitType>>> found;
  std::vector<OrbitType> cur;
  auto rec = [&](auto&& self, std::size_t cls, std::size_t size) -> void {
    if (cls == ncls) {
      found.emplace_back(size, cur);
      return;
    }
    const std::size_t s = lat.orbit_size(cls);
    for (std::size_t m = 0; size + m * s <= cap; ++m) {
      if (m > 0) cur.push_back({cls, m});
      self(self, cls + 1, size + m * s);
      if (m > 0) cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(), b.second.end(),
                                        [](const OrbitType& u, const OrbitType& v) {
                                          return u.cls != v.cls ? u.cls < v.cls : u.multiplicity > v.multiplicity;
                                        });
  });
  std::vector<GSet> out;
  for (const auto& [s, types] : found) out.push_back(canonical_gset(g, types));
  return out;
}

inline std::string describe(const GSet& x) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& t : orbit_decompose(x)) {
    if (!first) os << " + ";
    first = false;
    if (t.multiplicity > 1) os << t.multiplicity << "*";
    os << "G/H" << t.cls;
  }
  if (first) os << "empty";
  os << "]";
  return os.str();
}

/// Square
///   a --top--> b
///   |left      |right
///   c --bottom-> d
/// is a pullback iff it commutes and a -> b x_d c is bijective.
inline Verdict is_pullback_square(const EqMap& top, const EqMap& left, const EqMap& right, const EqMap& bottom) {
  for (Point p = 0; p < top.src.size(); ++p)
    if (right.values[top.values[p]] != bottom.values[left.values[p]])
      return Verdict::no("square does not commute at point " + std::to_string(p));
  std::map<std::pair<Point, Point>, Point> seen;
  for (Point p = 0; p < top.src.size(); ++p) {
    auto [it, fresh] = seen.emplace(std::pair{top.values[p], left.values[p]}, p);
    if (!fresh) {
      std::ostringstream os;
      os << "points " << it->second << " and " << p << " of the corner have the same image in the pullback";
      return Verdict::no(os.str());
    }
  }
  for (Point b = 0; b < right.src.size(); ++b)
    for (Point c = 0; c < bottom.src.size(); ++c)
      if (right.values[b] == bottom.values[c] && !seen.count({b, c})) {
        std::ostringstream os;
        os << "pullback pair (" << b << "," << c << ") has no preimage in the corner (corner size "
           << top.src.size() << ")";
        return Verdict::no(os.str());
      }
  return Verdict::yes();
}

struct AdjunctionReport {
  bool unit_iso = true;
  bool counit_injective = true;
  Verdict unit_square;
  Verdict counit_square;
  std::string unit_witness;

  bool ok() const { return unit_iso && counit_injective && unit_square.ok; }

  /// First line PASS/FAIL; a counit square failure is expected and is
  /// reported on an EXPECTED line.
  std::string text() const {
    std::ostringstream os;
    if (ok()) {
      os << "PASS\n";
    } else {
      os << "FAIL " << (unit_witness.empty() ? unit_square.witness : unit_witness) << "\n";
    }
    os << "unit iso: " << (unit_iso ? "yes" : "no") << "\n";
    os << "counit injective: " << (counit_injective ? "yes" : "no") << "\n";
    os << "unit square: " << (unit_square.ok ? "pullback" : "not a pullback: " + unit_square.witness) << "\n";
    if (counit_square.ok)
      os << "counit square: pullback\n";
    else
      os << "EXPECTED counit square not a pullback: " << counit_square.witness << "\n";
    return os.str();
  }
};

/// The unit map Xt -> (inf Xt)^N, as a map over G/N.
inline EqMap unit_map(const GSet& xt, const QuotientMap& q) {
  auto fp = fixed_points(inflate(xt, q), q);
  // Every point of an inflated set is N-fixed; record where each lands.
  std::vector<Point> v(xt.size(), static_cast<Point>(-1));
  for (std::size_t i = 0; i < fp.points.size(); ++i) v[fp.points[i]] = static_cast<Point>(i);
  for (Point p : v)
    if (p == static_cast<Point>(-1)) throw InvalidInput("inflated point is not fixed");
  return EqMap(xt, fp.set, std::move(v));
}

/// The counit inf(X^N) -> X.
inline EqMap counit_map(const GSet& x, const QuotientMap& q) {
  auto fp = fixed_points(x, q);
  return EqMap(inflate(fp.set, q), x, fp.points);
}

/// Unit diagnostics run on f^N : X^N -> Y^N, counit diagnostics on f.
inline AdjunctionReport adjunction_report(const QuotientMap& q, const EqMap& f) {
  AdjunctionReport r;
  const EqMap fn = fixed_point_map(f, q);
  const EqMap ex = unit_map(fn.src, q), ey = unit_map(fn.dst, q);
  if (!ex.bijective() || !ey.bijective()) {
    r.unit_iso = false;
    r.unit_witness = "unit is not bijective";
  }
  const EqMap inf_fn = inflate_map(fn, q);
  const EqMap fnn = fixed_point_map(inf_fn, q);
  r.unit_square = is_pullback_square(ex, fn, fnn, ey);

  const EqMap cx = counit_map(f.src, q), cy = counit_map(f.dst, q);
  r.counit_injective = cx.injective() && cy.injective();
  r.counit_square = is_pullback_square(cx, inflate_map(fixed_point_map(f, q), q), f, cy);
  return r;
}

inline AdjunctionReport adjunction_report(const GroupRef& g, const Subgroup& n, const EqMap& f) {
  require_same_group(g, f.src.group(), "adjunction_report");
  return adjunction_report(quotient(g, n), f);
}

}  // namespace prospan
