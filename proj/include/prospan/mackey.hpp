#pragma once

// Mackey functors with values in finitely generated abelian groups, stored
// on basis spans between canonical orbits.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/span.hpp"
#include "prospan/tower.hpp"

namespace prospan {

/// Z^rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, every d_i >= 2.
/// Generators are the rank free ones followed by one per factor.
struct AbPresentation {
  std::size_t rank = 0;
  std::vector<std::int64_t> invariant_factors;

  AbPresentation() = default;
  AbPresentation(std::size_t r, std::vector<std::int64_t> factors) : rank(r), invariant_factors(std::move(factors)) {
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (invariant_factors[i] < 2) throw InvalidInput("invariant factors must be at least 2");
      if (i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0)
        throw InvalidInput("invariant factors must divide one another");
    }
  }

  std::size_t generators() const noexcept { return rank + invariant_factors.size(); }
  /// 0 for a free generator.
  std::int64_t order_of(std::size_t gen) const { return gen < rank ? 0 : invariant_factors.at(gen - rank); }

  friend bool operator==(const AbPresentation&, const AbPresentation&) = default;

  std::string str() const {
    std::ostringstream os;
    os << "Z^" << rank;
    for (auto d : invariant_factors) os << " + Z/" << d;
    return os.str();
  }
};

/// Invariant-factor form of a direct sum, via prime-power decomposition.
inline AbPresentation direct_sum(const AbPresentation& a, const AbPresentation& b) {
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (const auto* p : {&a, &b})
    for (std::int64_t d : p->invariant_factors) {
      std::int64_t n = d;
      for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        std::int64_t pw = 1;
        while (n % q == 0) {
          n /= q;
          pw *= q;
        }
        powers[q].push_back(pw);
      }
      if (n > 1) powers[n].push_back(n);
    }
  std::size_t count = 0;
  for (auto& [q, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<>());
    count = std::max(count, v.size());
  }
  std::vector<std::int64_t> factors(count, 1);
  for (const auto& [q, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) factors[count - 1 - i] *= v[i];
  return AbPresentation(a.rank + b.rank, factors);
}

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::int64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw InvalidInput("matrix shapes do not compose");
    IntMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const std::int64_t v = x.at(i, k);
        if (v)
          for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }
  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw InvalidInput("matrix shapes differ");
    IntMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
  }
  IntMatrix scaled(std::int64_t s) const {
    IntMatrix r = *this;
    for (auto& v : r.a) v *= s;
    return r;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline std::int64_t mod_floor(std::int64_t v, std::int64_t d) {
  std::int64_t r = v % d;
  return r < 0 ? r + d : r;
}

/// Reduces rows with torsion targets modulo their order.
inline IntMatrix reduce(const IntMatrix& m, const AbPresentation& target) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < r.rows; ++i)
    if (std::int64_t d = target.order_of(i))
      for (std::size_t j = 0; j < r.cols; ++j) r.at(i, j) = mod_floor(r.at(i, j), d);
  return r;
}

/// Equality of the induced homomorphisms into `target`.
inline bool same_map(const IntMatrix& x, const IntMatrix& y, const AbPresentation& target) {
  return reduce(x, target) == reduce(y, target);
}

/// A matrix defines a homomorphism iff d_j * column j vanishes in the target
/// for every torsion generator j of order d_j.
inline Verdict well_defined(const IntMatrix& m, const AbPresentation& source, const AbPresentation& target) {
  if (m.rows != target.generators() || m.cols != source.generators()) return Verdict::no("matrix shape does not match the presentations");
  for (std::size_t j = 0; j < m.cols; ++j) {
    const std::int64_t d = source.order_of(j);
    if (!d) continue;
    for (std::size_t i = 0; i < m.rows; ++i) {
      const std::int64_t e = target.order_of(i);
      const std::int64_t v = d * m.at(i, j);
      if (e == 0 ? v != 0 : mod_floor(v, e) != 0)
        return Verdict::no("column " + std::to_string(j) + " of order " + std::to_string(d) +
                           " is not killed in row " + std::to_string(i));
    }
  }
  return Verdict::yes();
}

/// A generating basis span between the canonical orbits of two classes.
struct GenKey {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  SpanKey span;
  friend auto operator<=>(const GenKey&, const GenKey&) = default;
};

inline std::string to_string(const GenKey& k) {
  return std::to_string(k.src) + ":" + std::to_string(k.dst) + ":" + to_string(k.span);
}

/// Basis spans G/H_c -> G/H_d for every ordered pair of classes.
inline std::vector<GenKey> generating_keys(const GroupRef& g) {
  const std::size_t n = g->lattice().class_count();
  std::vector<GSet> orbs;
  for (std::size_t c = 0; c < n; ++c) orbs.push_back(GSet::orbit(g, c));
  std::vector<GenKey> out;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (const auto& k : span_basis_keys(orbs[c], orbs[d]))
        out.push_back({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d), k});
  return out;
}

/// Covariant additive functor on spans, on generators. The matrix of a
/// basis span c -> d has one row per generator of level d and one column
/// per generator of level c.
class MackeyFunctor {
 public:
  MackeyFunctor(GroupRef g, std::vector<AbPresentation> levels, std::map<GenKey, IntMatrix> gens)
      : group_(std::move(g)), levels_(std::move(levels)), gens_(std::move(gens)) {
    const std::size_t n = group_->lattice().class_count();
    if (levels_.size() != n) throw InvalidInput("expected one level per subgroup class (" + std::to_string(n) + ")");
    const auto keys = generating_keys(group_);
    if (keys.size() != gens_.size()) throw InvalidInput("generator matrices do not cover exactly the basis spans between orbits");
    for (const auto& k : keys) {
      auto it = gens_.find(k);
      if (it == gens_.end()) throw InvalidInput("missing matrix for basis span " + to_string(k));
      Verdict v = well_defined(it->second, levels_[k.src], levels_[k.dst]);
      if (!v) throw InvalidInput("matrix for " + to_string(k) + ": " + v.witness);
      it->second = reduce(it->second, levels_[k.dst]);
    }
  }

  const GroupRef& group() const noexcept { return group_; }
  const std::vector<AbPresentation>& levels() const noexcept { return levels_; }
  const AbPresentation& level(std::size_t c) const { return levels_.at(c); }
  const std::map<GenKey, IntMatrix>& gens() const noexcept { return gens_; }
  const IntMatrix& gen(const GenKey& k) const {
    auto it = gens_.find(k);
    if (it == gens_.end()) throw InvalidInput("no generator " + to_string(k));
    return it->second;
  }

  /// Value on a span between canonical orbits, by additivity.
  IntMatrix apply(std::size_t src, std::size_t dst, const SpanMor& m) const {
    IntMatrix r(levels_.at(dst).generators(), levels_.at(src).generators());
    for (const auto& [k, mult] : m.terms())
      r = r + gen({static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst), k}).scaled(static_cast<std::int64_t>(mult));
    return reduce(r, levels_[dst]);
  }

  friend bool operator==(const MackeyFunctor& a, const MackeyFunctor& b) {
    return same_group(a.group_, b.group_) && a.levels_ == b.levels_ && a.gens_ == b.gens_;
  }

 private:
  GroupRef group_;
  std::vector<AbPresentation> levels_;
  std::map<GenKey, IntMatrix> gens_;
};

/// Identity spans go to identities, and M(k2) M(k1) = M(k2 o k1) for every
/// composable pair of basis spans between orbits.
inline Verdict check_mackey(const MackeyFunctor& m) {
  const GroupRef& g = m.group();
  const std::size_t n = g->lattice().class_count();
  std::vector<GSet> orbs;
  std::vector<std::vector<SpanKey>> basis(n * n);
  for (std::size_t c = 0; c < n; ++c) orbs.push_back(GSet::orbit(g, c));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) basis[c * n + d] = span_basis_keys(orbs[c], orbs[d]);
  for (std::size_t c = 0; c < n; ++c) {
    const SpanMor id = identity_span(orbs[c]);
    if (!same_map(m.apply(c, c, id), IntMatrix::identity(m.level(c).generators()), m.level(c)))
      return Verdict::no("identity span of level " + std::to_string(c) + " does not act as the identity");
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e)
        for (const auto& k1 : basis[c * n + d])
          for (const auto& k2 : basis[d * n + e]) {
            const SpanMor comp = compose_basis(orbs[c], orbs[d], orbs[e], k2, k1);
            const IntMatrix lhs = m.gen({static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(e), k2}) *
                                  m.gen({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d), k1});
            if (!same_map(lhs, m.apply(c, e, comp), m.level(e))) {
              std::ostringstream os;
              os << "M([" << d << "->" << e << " " << to_string(k2) << "]) M([" << c << "->" << d << " " << to_string(k1)
                 << "]) != M(" << comp.str() << ")";
              return Verdict::no(os.str());
            }
          }
  return Verdict::yes();
}

/// The represented functor hom(pt, -), group-completed: level c is free on
/// span_basis(pt, G/H_c) and spans act by composition.
inline MackeyFunctor burnside_mackey(const GroupRef& g) {
  const std::size_t n = g->lattice().class_count();
  const GSet pt = GSet::point(g);
  std::vector<GSet> orbs;
  std::vector<std::vector<SpanKey>> basis;
  std::vector<AbPresentation> levels;
  for (std::size_t c = 0; c < n; ++c) {
    orbs.push_back(GSet::orbit(g, c));
    basis.push_back(span_basis_keys(pt, orbs[c]));
    levels.emplace_back(basis.back().size(), std::vector<std::int64_t>{});
  }
  std::map<GenKey, IntMatrix> gens;
  for (const auto& k : generating_keys(g)) {
    IntMatrix mat(basis[k.dst].size(), basis[k.src].size());
    for (std::size_t j = 0; j < basis[k.src].size(); ++j) {
      const SpanMor r = compose_basis(pt, orbs[k.src], orbs[k.dst], k.span, basis[k.src][j]);
      for (const auto& [key, mult] : r.terms()) {
        auto it = std::lower_bound(basis[k.dst].begin(), basis[k.dst].end(), key);
        mat.at(static_cast<std::size_t>(it - basis[k.dst].begin()), j) += static_cast<std::int64_t>(mult);
      }
    }
    gens.emplace(k, std::move(mat));
  }
  return MackeyFunctor(g, std::move(levels), std::move(gens));
}

inline MackeyFunctor zero_mackey(const GroupRef& g) {
  std::map<GenKey, IntMatrix> gens;
  for (const auto& k : generating_keys(g)) gens.emplace(k, IntMatrix(0, 0));
  return MackeyFunctor(g, std::vector<AbPresentation>(g->lattice().class_count()), std::move(gens));
}

/// M tensor Z/d for a torsion-free M.
inline MackeyFunctor reduce_mod(const MackeyFunctor& m, std::int64_t d) {
  if (d < 2) throw InvalidInput("modulus must be at least 2");
  std::vector<AbPresentation> levels;
  for (const auto& l : m.levels()) {
    if (!l.invariant_factors.empty()) throw InvalidInput("reduce_mod expects a torsion-free functor");
    levels.emplace_back(0, std::vector<std::int64_t>(l.rank, d));
  }
  std::map<GenKey, IntMatrix> gens;
  for (const auto& [k, mat] : m.gens()) {
    IntMatrix r = mat;
    for (auto& v : r.a) v = mod_floor(v, d);
    gens.emplace(k, std::move(r));
  }
  return MackeyFunctor(m.group(), std::move(levels), std::move(gens));
}

/// Sum of levels over the orbit decomposition of X.
inline AbPresentation evaluate(const MackeyFunctor& m, const GSet& x) {
  require_same_group(m.group(), x.group(), "evaluate");
  AbPresentation r;
  for (const auto& t : orbit_decompose(x))
    for (std::size_t i = 0; i < t.multiplicity; ++i) r = direct_sum(r, m.level(t.cls));
  return r;
}

/// Restriction along Span(inflation): level at a class of G/N is M at the
/// preimage class, generators are M applied to the inflated spans
/// transported onto canonical orbits.
inline MackeyFunctor categorical_fixed_points(const MackeyFunctor& m, const QuotientMap& q) {
  require_same_group(m.group(), q.source, "categorical_fixed_points");
  const GroupRef& gq = q.target;
  const auto& latq = gq->lattice();
  const auto& latg = q.source->lattice();
  const std::size_t n = latq.class_count();
  std::vector<std::size_t> up(n);
  std::vector<GSet> orbs;
  std::vector<EqMap> theta;
  for (std::size_t c = 0; c < n; ++c) {
    orbs.push_back(GSet::orbit(gq, c));
    const Subgroup pre = q.preimage(latq.rep(c));
    up[c] = latg.class_of[latg.find(pre.elements)];
    auto cf = canonical_form(inflate(orbs[c], q));
    if (!(cf.set == GSet::orbit(q.source, up[c]))) throw InvalidInput("inflated orbit has an unexpected canonical form");
    theta.push_back(cf.iso);
  }
  const GSetFunctor inf = inflation_functor(q);
  std::vector<AbPresentation> levels;
  for (std::size_t c = 0; c < n; ++c) levels.push_back(m.level(up[c]));
  std::map<GenKey, IntMatrix> gens;
  for (const auto& k : generating_keys(gq)) {
    SpanMor s = span_of_functor(inf, basis_span(orbs[k.src], orbs[k.dst], k.span));
    SpanMor moved = transport(s, theta[k.src], theta[k.dst]);
    gens.emplace(k, m.apply(up[k.src], up[k.dst], moved));
  }
  return MackeyFunctor(gq, std::move(levels), std::move(gens));
}

inline MackeyFunctor categorical_fixed_points(const MackeyFunctor& m, const Subgroup& n) {
  return categorical_fixed_points(m, quotient(m.group(), n));
}

/// Per-level isomorphism between two Mackey functors over the same group.
struct MackeyIso {
  std::vector<IntMatrix> forward;
  std::vector<IntMatrix> backward;
};

/// iso : a -> b is levelwise invertible and commutes with every generator.
inline Verdict check_mackey_iso(const MackeyFunctor& a, const MackeyFunctor& b, const MackeyIso& iso) {
  const std::size_t n = a.levels().size();
  if (b.levels().size() != n || iso.forward.size() != n || iso.backward.size() != n) return Verdict::no("level counts differ");
  for (std::size_t c = 0; c < n; ++c) {
    if (Verdict v = well_defined(iso.forward[c], a.level(c), b.level(c)); !v) return Verdict::no("level " + std::to_string(c) + ": " + v.witness);
    if (Verdict v = well_defined(iso.backward[c], b.level(c), a.level(c)); !v) return Verdict::no("level " + std::to_string(c) + ": " + v.witness);
    if (!same_map(iso.backward[c] * iso.forward[c], IntMatrix::identity(a.level(c).generators()), a.level(c)) ||
        !same_map(iso.forward[c] * iso.backward[c], IntMatrix::identity(b.level(c).generators()), b.level(c)))
      return Verdict::no("level " + std::to_string(c) + ": maps are not mutually inverse");
  }
  for (const auto& [k, mat] : a.gens())
    if (!same_map(iso.forward[k.dst] * mat, b.gen(k) * iso.forward[k.src], b.level(k.dst)))
      return Verdict::no("generator " + to_string(k) + " is not intertwined");
  return Verdict::yes();
}

struct AssemblyReport {
  MackeyFunctor top;
  std::string text;
};

/// family[i] lives over stage i+1. Checks that the categorical fixed points
/// of each stage along its link reproduce the previous stage, up to the
/// supplied isomorphism (identity when none is given).
inline AssemblyReport assemble_from_tower(const GroupTower& tower, const std::vector<MackeyFunctor>& family,
                                          const std::vector<std::optional<MackeyIso>>& isos = {}) {
  if (family.size() != tower.depth()) throw InvalidInput("family needs one functor per stage");
  for (std::size_t i = 0; i < family.size(); ++i)
    require_same_group(family[i].group(), tower.stage(i + 1), "assemble_from_tower");
  std::ostringstream os;
  for (std::size_t lvl = tower.depth(); lvl > 1; --lvl) {
    const MackeyFunctor fp = categorical_fixed_points(family[lvl - 1], tower.link(lvl - 1));
    const MackeyFunctor& want = family[lvl - 2];
    const std::string where = "stage " + std::to_string(lvl - 1);
    std::optional<MackeyIso> iso = lvl - 2 < isos.size() ? isos[lvl - 2] : std::nullopt;
    if (!iso) {
      for (std::size_t c = 0; c < want.levels().size(); ++c)
        if (!(fp.level(c) == want.level(c)))
          throw IncoherentFamily(where + " level " + std::to_string(c) + ": fixed points give " + fp.level(c).str() +
                                 ", family has " + want.level(c).str());
      for (const auto& [k, mat] : want.gens())
        if (!same_map(mat, fp.gen(k), want.level(k.dst)))
          throw IncoherentFamily(where + " generator " + to_string(k) + ": matrices differ");
    } else if (Verdict v = check_mackey_iso(fp, want, *iso); !v) {
      throw IncoherentFamily(where + ": " + v.witness);
    }
    os << where << ": fixed points of stage " << lvl << " agree with the family (" << want.levels().size() << " levels, "
       << want.gens().size() << " generators)\n";
  }
  os << "PASS\n";
  return {family.back(), os.str()};
}

/// Family generated from one functor at the deepest stage.
inline std::vector<MackeyFunctor> fixed_point_family(const GroupTower& tower, const MackeyFunctor& top) {
  std::vector<MackeyFunctor> fam{top};
  for (std::size_t lvl = tower.depth(); lvl > 1; --lvl) fam.insert(fam.begin(), categorical_fixed_points(fam.front(), tower.link(lvl - 1)));
  return fam;
}

struct LewisArrow {
  std::size_t upper;  ///< the larger subgroup class
  std::size_t lower;
  friend auto operator<=>(const LewisArrow&, const LewisArrow&) = default;
};

struct LewisDiagram {
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> weyl_orders;
  /// Pairs joined by a restriction and a transfer that do not factor through
  /// a third level.
  std::vector<LewisArrow> arrows;
  std::string text;
};

/// Restriction-type generators c -> d have apex class d; transfer-type
/// generators d -> c have apex class d. A pair (c, d) is drawn when a
/// restriction c -> d acts nonzero and is not the composite of
/// restrictions through a third level (likewise for transfers).
inline LewisDiagram lewis_diagram(const MackeyFunctor& m) {
  const GroupRef& g = m.group();
  const auto& lat = g->lattice();
  const std::size_t n = lat.class_count();
  std::vector<GSet> orbs;
  for (std::size_t c = 0; c < n; ++c) orbs.push_back(GSet::orbit(g, c));
  auto basis = [&](std::size_t a, std::size_t b) { return span_basis_keys(orbs[a], orbs[b]); };
  auto typed = [&](std::size_t a, std::size_t b, std::size_t apex) {
    std::vector<SpanKey> out;
    for (const auto& k : basis(a, b))
      if (k.cls == apex) out.push_back(k);
    return out;
  };
  auto nonzero = [&](std::size_t a, std::size_t b, const SpanKey& k) {
    const IntMatrix& mat = m.gen({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), k});
    return std::any_of(mat.a.begin(), mat.a.end(), [](std::int64_t v) { return v != 0; });
  };
  // Keys a -> b of the given kind that are single-term composites through e.
  auto composites = [&](std::size_t a, std::size_t b, bool res) {
    std::set<SpanKey> out;
    for (std::size_t e = 0; e < n; ++e) {
      if (e == a || e == b) continue;
      for (const auto& k1 : typed(a, e, res ? e : a))
        for (const auto& k2 : typed(e, b, res ? b : e)) {
          SpanMor c = compose_basis(orbs[a], orbs[e], orbs[b], k2, k1);
          if (c.terms().size() == 1 && c.terms().begin()->second == 1) out.insert(c.terms().begin()->first);
        }
    }
    return out;
  };
  LewisDiagram ld;
  for (std::size_t c = 0; c < n; ++c) {
    ld.ranks.push_back(m.level(c).generators());
    ld.weyl_orders.push_back(lat.normalizer[c].size() / lat.rep(c).size());
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      if (c == d) continue;
      const auto res = typed(c, d, d);
      const auto tr = typed(d, c, d);
      if (res.empty() || tr.empty()) continue;
      const auto res_comp = composites(c, d, true);
      const auto tr_comp = composites(d, c, false);
      bool res_prim = false, tr_prim = false;
      for (const auto& k : res) res_prim |= !res_comp.count(k) && nonzero(c, d, k);
      for (const auto& k : tr) tr_prim |= !tr_comp.count(k) && nonzero(d, c, k);
      if (res_prim && tr_prim) ld.arrows.push_back({c, d});
    }
  std::ostringstream os;
  for (std::size_t c = 0; c < n; ++c)
    os << "level " << c << " |H|=" << lat.rep(c).size() << " " << m.level(c).str() << " weyl " << ld.weyl_orders[c] << "\n";
  for (const auto& a : ld.arrows) os << "res/tr " << a.upper << " <-> " << a.lower << "\n";
  ld.text = os.str();
  return ld;
}

}  // namespace prospan
