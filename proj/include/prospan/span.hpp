#pragma once

// Spans of finite G-sets. A morphism X -> Y is a multiset of isomorphism
// classes of spans X <- S -> Y with S transitive; composition is pullback
// followed by orbit decomposition.

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/gset.hpp"

namespace prospan {

/// A transitive span G/H <- ... is determined up to isomorphism by the class
/// of H (taken at its representative) and the images x0, y0 of the base
/// coset; x0 and y0 are only defined up to the normalizer of H, and the key
/// stores the lexicographically least choice.
struct SpanKey {
  std::uint32_t cls = 0;
  Point x0 = 0;
  Point y0 = 0;
  friend auto operator<=>(const SpanKey&, const SpanKey&) = default;
};

inline std::string to_string(const SpanKey& k) {
  return std::to_string(k.cls) + ":" + std::to_string(k.x0) + ":" + std::to_string(k.y0);
}

/// Least (n.x, n.y) over n in the normalizer of the class representative.
inline SpanKey canonical_key(const GSet& x, const GSet& y, std::size_t cls, Point px, Point py) {
  const auto& nz = x.group()->lattice().normalizer.at(cls);
  SpanKey best{static_cast<std::uint32_t>(cls), px, py};
  for (Element n : nz) {
    SpanKey k{static_cast<std::uint32_t>(cls), x.act(px, n), y.act(py, n)};
    if (k < best) best = k;
  }
  return best;
}

/// Points fixed by every element of a subgroup.
inline std::vector<Point> fixed_by(const GSet& x, const Subgroup& h) {
  std::vector<Point> out;
  for (Point p = 0; p < x.size(); ++p)
    if (std::all_of(h.elements.begin(), h.elements.end(), [&](Element e) { return x.act(p, e) == p; })) out.push_back(p);
  return out;
}

/// Keys of all transitive spans X <- S -> Y, sorted.
inline std::vector<SpanKey> span_basis_keys(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "span_basis");
  const auto& lat = x.group()->lattice();
  std::vector<SpanKey> out;
  for (std::size_t c = 0; c < lat.class_count(); ++c) {
    const auto fx = fixed_by(x, lat.rep(c));
    const auto fy = fixed_by(y, lat.rep(c));
    std::vector<SpanKey> keys;
    for (Point a : fx)
      for (Point b : fy) keys.push_back(canonical_key(x, y, c, a, b));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    out.insert(out.end(), keys.begin(), keys.end());
  }
  return out;
}

struct BasisSpan {
  GSet left;
  GSet apex;
  std::size_t apex_class;
  EqMap legL;
  EqMap legR;
  GSet right;
  SpanKey canonical_key;
};

/// The span G/H <- ... with apex the canonical orbit of the key's class.
inline BasisSpan materialize(const GSet& x, const GSet& y, const SpanKey& k) {
  const GroupRef& g = x.group();
  const auto& reps = g->lattice().coset_reps.at(k.cls);
  GSet apex = GSet::orbit(g, k.cls);
  std::vector<Point> l(reps.size()), r(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    l[i] = x.act(k.x0, reps[i]);
    r[i] = y.act(k.y0, reps[i]);
  }
  return {x, apex, k.cls, EqMap(apex, x, std::move(l)), EqMap(apex, y, std::move(r)), y, k};
}

inline std::vector<BasisSpan> span_basis(const GSet& x, const GSet& y) {
  std::vector<BasisSpan> out;
  for (const auto& k : span_basis_keys(x, y)) out.push_back(materialize(x, y, k));
  return out;
}

/// A morphism in the span category: a finitely supported multiset of basis
/// spans between fixed endpoints. The empty multiset is the zero morphism.
class SpanMor {
 public:
  SpanMor() = default;
  SpanMor(GSet left, GSet right) : left_(std::move(left)), right_(std::move(right)) {
    require_same_group(left_.group(), right_.group(), "SpanMor");
  }

  const GSet& left() const noexcept { return left_; }
  const GSet& right() const noexcept { return right_; }
  const std::map<SpanKey, std::uint64_t>& terms() const noexcept { return terms_; }

  void add(const SpanKey& k, std::uint64_t mult = 1) {
    if (mult) terms_[k] += mult;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint64_t multiplicity(const SpanKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Total number of apex points.
  std::size_t apex_size() const {
    const auto& lat = left_.group()->lattice();
    std::size_t s = 0;
    for (const auto& [k, m] : terms_) s += m * lat.orbit_size(k.cls);
    return s;
  }

  friend SpanMor operator+(const SpanMor& a, const SpanMor& b) {
    if (!(a.left_ == b.left_) || !(a.right_ == b.right_)) throw ObjectMismatch("cannot add spans with different endpoints");
    SpanMor r = a;
    for (const auto& [k, m] : b.terms_) r.add(k, m);
    return r;
  }

  SpanMor scaled(std::uint64_t n) const {
    SpanMor r(left_, right_);
    for (const auto& [k, m] : terms_) r.add(k, m * n);
    return r;
  }

  friend bool operator==(const SpanMor& a, const SpanMor& b) {
    return a.terms_ == b.terms_ && a.left_ == b.left_ && a.right_ == b.right_;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, m] : terms_) {
      if (!first) os << " + ";
      first = false;
      if (m != 1) os << m << "*";
      os << "[" << to_string(k) << "]";
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  GSet left_, right_;
  std::map<SpanKey, std::uint64_t> terms_;
};

inline SpanMor basis_span(const GSet& x, const GSet& y, const SpanKey& k) {
  SpanMor m(x, y);
  m.add(k);
  return m;
}

/// Orbit decomposition of an arbitrary span X <- S -> Y.
inline SpanMor span_from_legs(const EqMap& l, const EqMap& r) {
  if (!(l.src == r.src)) throw ObjectMismatch("span legs have different sources");
  const auto& lat = l.src.group()->lattice();
  SpanMor m(l.dst, r.dst);
  for (const auto& o : orbits(l.src)) {
    const Point b = l.src.act(o.base, lat.conjugator[o.subgroup]);
    m.add(canonical_key(l.dst, r.dst, o.cls, l(b), r(b)));
  }
  return m;
}

inline SpanMor identity_span(const GSet& x) {
  auto id = identity_map(x);
  return span_from_legs(id, id);
}

/// Covariant span X <- X -> Y of a map f.
inline SpanMor forward_span(const EqMap& f) { return span_from_legs(identity_map(f.src), f); }
/// Contravariant span Y <- X -> X of a map f.
inline SpanMor backward_span(const EqMap& f) { return span_from_legs(f, identity_map(f.src)); }

inline SpanMor transpose(const SpanMor& m) {
  SpanMor t(m.right(), m.left());
  for (const auto& [k, mult] : m.terms()) t.add(canonical_key(m.right(), m.left(), k.cls, k.y0, k.x0), mult);
  return t;
}

/// Relabels endpoints along isomorphisms tl : left -> L', tr : right -> R'.
inline SpanMor transport(const SpanMor& m, const EqMap& tl, const EqMap& tr) {
  if (!(tl.src == m.left()) || !(tr.src == m.right())) throw ObjectMismatch("transport maps do not start at the span's endpoints");
  SpanMor out(tl.dst, tr.dst);
  for (const auto& [k, mult] : m.terms()) out.add(canonical_key(tl.dst, tr.dst, k.cls, tl(k.x0), tr(k.y0)), mult);
  return out;
}

/// Composite of two basis spans X -> Y -> Z, computed on coset
/// representatives without materializing G-sets.
inline SpanMor compose_basis(const GSet& x, const GSet& y, const GSet& z, const SpanKey& k2, const SpanKey& k1) {
  const GroupRef& gp = x.group();
  const auto& g = *gp;
  const auto& lat = g.lattice();
  const std::uint32_t n = g.order();
  const auto& r1 = lat.coset_reps[k1.cls];
  const auto& r2 = lat.coset_reps[k2.cls];
  const auto& act1 = lat.coset_action[k1.cls];
  const auto& act2 = lat.coset_action[k2.cls];
  const std::size_t m1 = r1.size(), m2 = r2.size();
  std::vector<Point> b1(m1), a2(m2);
  for (std::size_t i = 0; i < m1; ++i) b1[i] = y.act(k1.y0, r1[i]);
  for (std::size_t j = 0; j < m2; ++j) a2[j] = y.act(k2.x0, r2[j]);

  SpanMor out(x, z);
  std::vector<char> seen(m1 * m2, 0);
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = 0; j < m2; ++j) {
      if (b1[i] != a2[j] || seen[i * m2 + j]) continue;
      std::vector<Element> stab;
      for (Element e = 0; e < n; ++e) {
        const std::size_t ii = act1[i * n + e], jj = act2[j * n + e];
        seen[ii * m2 + jj] = 1;
        if (ii == i && jj == j) stab.push_back(e);
      }
      const std::size_t s = lat.find(stab);
      const std::size_t cls = lat.class_of[s];
      const Element c = lat.conjugator[s];
      // The base point moved by c has stabilizer equal to the class rep.
      const Point px = x.act(k1.x0, g.mul(c, r1[i]));
      const Point pz = z.act(k2.y0, g.mul(c, r2[j]));
      out.add(canonical_key(x, z, cls, px, pz));
    }
  return out;
}

/// m2 o m1, extended bilinearly from basis spans.
inline SpanMor compose_spans(const SpanMor& m2, const SpanMor& m1) {
  if (!(m1.right() == m2.left()))
    throw ObjectMismatch("compose_spans: right end of the first span differs from left end of the second");
  SpanMor out(m1.left(), m2.right());
  for (const auto& [k1, a] : m1.terms())
    for (const auto& [k2, b] : m2.terms())
    {
        const SpanMor c = compose_basis(m1.left(), m1.right(), m2.right(), k2, k1);
        for (const auto& [k, mult] : c.terms()) out.add(k, a * b * mult);
      }
  return out;
}

/// Composite computed the slow way: materialize both apexes, take the G-set
/// pullback, decompose. Used to cross-check compose_basis.
inline SpanMor compose_via_pullback(const SpanMor& m2, const SpanMor& m1) {
  if (!(m1.right() == m2.left())) throw ObjectMismatch("compose_via_pullback: endpoints do not match");
  SpanMor out(m1.left(), m2.right());
  for (const auto& [k1, a] : m1.terms())
    for (const auto& [k2, b] : m2.terms()) {
      auto s1 = materialize(m1.left(), m1.right(), k1);
      auto s2 = materialize(m2.left(), m2.right(), k2);
      auto pb = pullback(s1.legR, s2.legL);
      auto c = span_from_legs(compose(s1.legL, pb.p1), compose(s2.legR, pb.p2));
      for (const auto& [k, mult] : c.terms()) out.add(k, a * b * mult);
    }
  return out;
}

struct BurnsideTables {
  /// marks[K][H] = |(G/K)^H|, classes ordered by subgroup order.
  std::vector<std::vector<std::int64_t>> marks;
  /// constants[a][b][c]: coefficient of t_c in t_a * t_b, where t_c is the
  /// endo-span pt <- G/H_c -> pt.
  std::vector<std::vector<std::vector<std::int64_t>>> constants;
};

inline BurnsideTables burnside_tables(const GroupRef& g) {
  const auto& lat = g->lattice();
  const std::size_t n = lat.class_count();
  BurnsideTables t;
  t.marks.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    GSet orb = GSet::orbit(g, k);
    for (std::size_t h = 0; h < n; ++h) t.marks[k][h] = static_cast<std::int64_t>(fixed_by(orb, lat.rep(h)).size());
  }
  GSet pt = GSet::point(g);
  t.constants.assign(n, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      SpanKey ka{static_cast<std::uint32_t>(a), 0, 0}, kb{static_cast<std::uint32_t>(b), 0, 0};
      const SpanMor prod = compose_basis(pt, pt, pt, ka, kb);
      for (const auto& [k, m] : prod.terms()) t.constants[a][b][k.cls] = static_cast<std::int64_t>(m);
    }
  return t;
}

/// hom(X + X', Y) = hom(X, Y) x hom(X', Y) and hom(Y, X + X') = hom(Y, X) x
/// hom(Y, X'), checked on bases: restricting along the inclusions (or
/// projecting along them) must send each basis span of the sum to exactly
/// one basis span of exactly one factor, and bijectively.
inline Verdict semiadditivity_check(const GSet& x, const GSet& x2, const GSet& y) {
  require_same_group(x.group(), x2.group(), "semiadditivity_check");
  require_same_group(x.group(), y.group(), "semiadditivity_check");
  const auto cp = coproduct(x, x2);
  const SpanMor incl1 = forward_span(cp.i1), incl2 = forward_span(cp.i2);
  const SpanMor proj1 = backward_span(cp.i1), proj2 = backward_span(cp.i2);

  auto check = [](const std::vector<SpanKey>& sum_basis, const std::function<SpanMor(const SpanKey&)>& part1,
                  const std::function<SpanMor(const SpanKey&)>& part2, std::vector<SpanKey> basis1,
                  std::vector<SpanKey> basis2, const char* side) -> Verdict {
    std::map<SpanKey, int> hit1, hit2;
    for (const auto& k : sum_basis) {
      SpanMor m1 = part1(k), m2 = part2(k);
      const bool z1 = m1.is_zero(), z2 = m2.is_zero();
      if (z1 == z2) return Verdict::no(std::string(side) + ": basis span " + to_string(k) + " does not factor through exactly one summand");
      const SpanMor& m = z1 ? m2 : m1;
      if (m.terms().size() != 1 || m.terms().begin()->second != 1)
        return Verdict::no(std::string(side) + ": basis span " + to_string(k) + " restricts to a non-basis span " + m.str());
      (z1 ? hit2 : hit1)[m.terms().begin()->first]++;
    }
    for (const auto* pr : {&hit1, &hit2})
      for (const auto& [k, c] : *pr)
        if (c != 1) return Verdict::no(std::string(side) + ": basis span " + to_string(k) + " is hit " + std::to_string(c) + " times");
    if (hit1.size() != basis1.size() || hit2.size() != basis2.size())
      return Verdict::no(std::string(side) + ": restriction is not surjective onto the product basis (" +
                         std::to_string(hit1.size() + hit2.size()) + " of " +
                         std::to_string(basis1.size() + basis2.size()) + ")");
    for (const auto& k : basis1)
      if (!hit1.count(k)) return Verdict::no(std::string(side) + ": basis span " + to_string(k) + " is missed");
    for (const auto& k : basis2)
      if (!hit2.count(k)) return Verdict::no(std::string(side) + ": basis span " + to_string(k) + " is missed");
    return Verdict::yes();
  };

  const GSet& s = cp.set;
  Verdict v = check(
      span_basis_keys(s, y), [&](const SpanKey& k) { return compose_spans(basis_span(s, y, k), incl1); },
      [&](const SpanKey& k) { return compose_spans(basis_span(s, y, k), incl2); }, span_basis_keys(x, y),
      span_basis_keys(x2, y), "source");
  if (!v) return v;
  return check(
      span_basis_keys(y, s), [&](const SpanKey& k) { return compose_spans(proj1, basis_span(y, s, k)); },
      [&](const SpanKey& k) { return compose_spans(proj2, basis_span(y, s, k)); }, span_basis_keys(y, x),
      span_basis_keys(y, x2), "target");
}

/// A functor between G-set universes given by its action on objects and maps.
struct GSetFunctor {
  std::string name;
  GroupRef src, dst;
  std::function<GSet(const GSet&)> on_objects;
  std::function<EqMap(const EqMap&)> on_maps;
};

inline GSetFunctor identity_gset_functor(const GroupRef& g) {
  return {"id", g, g, [](const GSet& x) { return x; }, [](const EqMap& f) { return f; }};
}

inline GSetFunctor inflation_functor(const QuotientMap& q) {
  return {"inf", q.target, q.source, [q](const GSet& x) { return inflate(x, q); },
          [q](const EqMap& f) { return inflate_map(f, q); }};
}

inline GSetFunctor fixed_point_functor(const QuotientMap& q) {
  return {"fix", q.source, q.target, [q](const GSet& x) { return fixed_points(x, q).set; },
          [q](const EqMap& f) { return fixed_point_map(f, q); }};
}

/// X |-> X/G with the trivial action. Preserves coproducts but not pullbacks.
inline GSetFunctor orbit_space_functor(const GroupRef& g) {
  auto quotient_of = [](const GSet& x) {
    std::vector<Point> cls(x.size());
    std::size_t k = 0;
    for (const auto& o : orbits(x)) {
      for (Point p : o.points) cls[p] = static_cast<Point>(k);
      ++k;
    }
    return std::pair{GSet::trivial(x.group(), k), cls};
  };
  return {"orb", g, g, [quotient_of](const GSet& x) { return quotient_of(x).first; },
          [quotient_of](const EqMap& f) {
            auto [s, cs] = quotient_of(f.src);
            auto [d, cd] = quotient_of(f.dst);
            std::vector<Point> v(s.size());
            for (Point p = 0; p < f.src.size(); ++p) v[cs[p]] = cd[f(p)];
            return EqMap(s, d, std::move(v));
          }};
}

/// outer o inner
inline GSetFunctor compose_gset_functors(const GSetFunctor& outer, const GSetFunctor& inner) {
  require_same_group(inner.dst, outer.src, "compose_gset_functors");
  auto o = outer;
  auto i = inner;
  return {outer.name + "." + inner.name, inner.src, outer.dst, [o, i](const GSet& x) { return o.on_objects(i.on_objects(x)); },
          [o, i](const EqMap& f) { return o.on_maps(i.on_maps(f)); }};
}

/// F applied to the pullback square of (f, g) must again be a pullback.
inline Verdict preserves_pullback(const GSetFunctor& f, const EqMap& a, const EqMap& b) {
  auto pb = pullback(a, b);
  Verdict v = is_pullback_square(f.on_maps(pb.p2), f.on_maps(pb.p1), f.on_maps(b), f.on_maps(a));
  if (!v) return Verdict::no(f.name + " does not preserve the pullback of " + describe(a.src) + " -> " + describe(a.dst) +
                             " <- " + describe(b.src) + ": " + v.witness);
  return v;
}

/// Exhaustive over all cospans of G-sets of size <= cap; throws NotLeftExact.
inline void verify_left_exact(const GSetFunctor& f, std::size_t cap) {
  const auto objs = enumerate_gsets(f.src, cap);
  for (const auto& z : objs)
    for (const auto& x : objs)
      for (const auto& y : objs)
        for (const auto& a : hom_gset(x, z))
          for (const auto& b : hom_gset(y, z))
            if (Verdict v = preserves_pullback(f, a, b); !v) throw NotLeftExact(v.witness);
}

/// Span(F): apply F to apex, legs and endpoints of each basis term and
/// re-decompose the image apex.
inline SpanMor span_of_functor(const GSetFunctor& f, const SpanMor& m) {
  require_same_group(m.left().group(), f.src, "span_of_functor");
  SpanMor out(f.on_objects(m.left()), f.on_objects(m.right()));
  for (const auto& [k, mult] : m.terms()) {
    auto b = materialize(m.left(), m.right(), k);
    auto img = span_from_legs(f.on_maps(b.legL), f.on_maps(b.legR));
    if (!(img.left() == out.left()) || !(img.right() == out.right()))
      throw InvalidInput("span_of_functor: functor is not deterministic on objects");
    out = out + img.scaled(mult);
  }
  return out;
}

/// Adequate triple on G-sets of size <= cap, with pullbacks formed in the
/// full G-set universe (the size truncation is not closed under pullback).
/// Backward and forward classes are predicates on maps.
inline Verdict validate_adequate_triple_gsets(const GroupRef& g, std::size_t cap,
                                              const std::function<bool(const EqMap&)>& backward,
                                              const std::function<bool(const EqMap&)>& forward) {
  const auto objs = enumerate_gsets(g, cap);
  for (int side = 0; side < 2; ++side) {
    const auto& pred = side ? forward : backward;
    const std::string name = side ? "forward" : "backward";
    for (const auto& x : objs)
      if (!pred(identity_map(x))) return Verdict::no(name + " class misses the identity of " + describe(x));
    for (const auto& a : objs)
      for (const auto& b : objs)
        for (const auto& c : objs)
          for (const auto& f : hom_gset(a, b)) {
            if (!pred(f)) continue;
            for (const auto& h : hom_gset(b, c))
              if (pred(h) && !pred(compose(h, f))) return Verdict::no(name + " class is not closed under composition");
          }
  }
  for (const auto& z : objs)
    for (const auto& x : objs)
      for (const auto& y : objs)
        for (const auto& f : hom_gset(x, z)) {
          if (!backward(f)) continue;
          for (const auto& h : hom_gset(y, z)) {
            if (!forward(h)) continue;
            auto pb = pullback(f, h);
            if (Verdict v = is_pullback_square(pb.p2, pb.p1, h, f); !v) return Verdict::no("pullback construction failed: " + v.witness);
            if (!forward(pb.p1) || !backward(pb.p2))
              return Verdict::no("pullback of " + describe(x) + " -> " + describe(z) + " <- " + describe(y) +
                                 " has legs outside the required classes");
          }
        }
  return Verdict::yes();
}

}  // namespace prospan
