#pragma once

// Finite categories behind a small virtual interface, functors between
// them, natural isomorphisms, equivalence checking and products.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/error.hpp"

namespace prospan {

using ObjId = std::size_t;

/// A morphism is addressed by its endpoints and its index in the hom-set.
struct Mor {
  ObjId src = 0;
  ObjId dst = 0;
  std::size_t idx = 0;
  friend auto operator<=>(const Mor&, const Mor&) = default;
};

inline std::string to_string(const Mor& m) {
  return std::to_string(m.src) + "->" + std::to_string(m.dst) + "#" + std::to_string(m.idx);
}

/// A category with finitely many objects and finite hom-sets. Composition
/// may be partial when the hom-sets are truncations of larger ones; a
/// composite outside the truncation is reported as nullopt.
class Category {
 public:
  virtual ~Category() = default;

  virtual std::size_t object_count() const = 0;
  virtual std::size_t hom_size(ObjId a, ObjId b) const = 0;
  virtual Mor identity(ObjId a) const = 0;
  /// g o f
  virtual std::optional<Mor> compose(const Mor& g, const Mor& f) const = 0;

  virtual std::string object_label(ObjId a) const { return "o" + std::to_string(a); }
  virtual std::string morphism_label(const Mor& m) const { return to_string(m); }

  virtual std::optional<Mor> inverse(const Mor& f) const {
    for (std::size_t k = 0; k < hom_size(f.dst, f.src); ++k) {
      Mor g{f.dst, f.src, k};
      auto gf = compose(g, f);
      auto fg = compose(f, g);
      if (gf && fg && *gf == identity(f.src) && *fg == identity(f.dst)) return g;
    }
    return std::nullopt;
  }

  virtual std::vector<Mor> isos(ObjId a, ObjId b) const {
    std::vector<Mor> out;
    for (std::size_t k = 0; k < hom_size(a, b); ++k)
      if (inverse(Mor{a, b, k})) out.push_back(Mor{a, b, k});
    return out;
  }

  virtual std::optional<Mor> find_iso(ObjId a, ObjId b) const {
    for (std::size_t k = 0; k < hom_size(a, b); ++k)
      if (inverse(Mor{a, b, k})) return Mor{a, b, k};
    return std::nullopt;
  }

  bool is_iso(const Mor& f) const { return inverse(f).has_value(); }

  std::vector<Mor> homs(ObjId a, ObjId b) const {
    std::vector<Mor> out;
    const std::size_t n = hom_size(a, b);
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(Mor{a, b, k});
    return out;
  }

 protected:
  static void require_composable(const Mor& g, const Mor& f) {
    if (f.dst != g.src) throw InvalidInput("morphisms " + to_string(g) + " and " + to_string(f) + " do not compose");
  }
};

using FinCat = std::shared_ptr<const Category>;

/// Composite of a chain h o g o f ... given outermost first; nullopt if any
/// step leaves the truncation.
inline std::optional<Mor> compose_all(const Category& c, std::initializer_list<std::optional<Mor>> ms) {
  std::optional<Mor> acc;
  for (auto it = std::rbegin(ms); it != std::rend(ms); ++it) {
    if (!*it) return std::nullopt;
    if (!acc) {
      acc = *it;
    } else {
      acc = c.compose(**it, *acc);
      if (!acc) return std::nullopt;
    }
  }
  return acc;
}

/// Exhaustive check of units and associativity; `limit` caps the number of
/// triples inspected (0 means no cap).
inline Verdict check_category_laws(const Category& c, std::size_t limit = 0) {
  const std::size_t n = c.object_count();
  std::size_t seen = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (const Mor& f : c.homs(a, b)) {
        if (c.compose(c.identity(b), f) != f || c.compose(f, c.identity(a)) != f)
          return Verdict::no("unit law fails for " + c.morphism_label(f));
      }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId x = 0; x < n; ++x)
        for (ObjId d = 0; d < n; ++d)
          for (const Mor& f : c.homs(a, b))
            for (const Mor& g : c.homs(b, x))
              for (const Mor& h : c.homs(x, d)) {
                if (limit && ++seen > limit) return Verdict::yes();
                auto hg = c.compose(h, g);
                auto gf = c.compose(g, f);
                if (!hg || !gf) continue;
                auto l = c.compose(*hg, f);
                auto r = c.compose(h, *gf);
                if (l != r)
                  return Verdict::no("associativity fails for (" + c.morphism_label(h) + ", " + c.morphism_label(g) +
                                     ", " + c.morphism_label(f) + ")");
              }
  return Verdict::yes();
}

/// A category given by explicit tables; laws are validated on construction.
class TableCategory : public Category {
 public:
  /// comp(g, f) gives the index of g o f in hom(f.src, g.dst).
  TableCategory(std::vector<std::string> objects, std::vector<std::vector<std::size_t>> hom_sizes,
                std::vector<std::size_t> identities, const std::function<std::size_t(const Mor&, const Mor&)>& comp,
                std::function<std::string(const Mor&)> labels = {})
      : labels_(std::move(objects)), hom_(std::move(hom_sizes)), id_(std::move(identities)), mor_label_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (hom_.size() != n || id_.size() != n) throw InvalidInput("table category: inconsistent sizes");
    for (const auto& row : hom_)
      if (row.size() != n) throw InvalidInput("table category: hom table is not square");
    for (ObjId a = 0; a < n; ++a)
      if (id_[a] >= hom_[a][a]) throw InvalidInput("table category: identity index out of range");
    comp_.resize(n * n * n);
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b)
        for (ObjId c = 0; c < n; ++c) {
          auto& t = comp_[(a * n + b) * n + c];
          t.resize(hom_[a][b] * hom_[b][c]);
          for (std::size_t f = 0; f < hom_[a][b]; ++f)
            for (std::size_t g = 0; g < hom_[b][c]; ++g) {
              std::size_t r = comp(Mor{b, c, g}, Mor{a, b, f});
              if (r >= hom_[a][c]) throw InvalidInput("table category: composite index out of range");
              t[g * hom_[a][b] + f] = r;
            }
        }
    Verdict v = check_category_laws(*this);
    if (!v) throw InvalidInput("table category: " + v.witness);
  }

  std::size_t object_count() const override { return labels_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override { return hom_.at(a).at(b); }
  Mor identity(ObjId a) const override { return Mor{a, a, id_.at(a)}; }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    const std::size_t n = labels_.size();
    return Mor{f.src, g.dst, comp_[(f.src * n + f.dst) * n + g.dst][g.idx * hom_[f.src][f.dst] + f.idx]};
  }
  std::string object_label(ObjId a) const override { return labels_.at(a); }
  std::string morphism_label(const Mor& m) const override {
    return mor_label_ ? mor_label_(m) : labels_[m.src] + "->" + labels_[m.dst] + "#" + std::to_string(m.idx);
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::size_t> id_;
  std::function<std::string(const Mor&)> mor_label_;
  std::vector<std::vector<std::size_t>> comp_;
};

/// Copies any finite category with total composition into a table.
inline std::shared_ptr<TableCategory> tabulate(const Category& c) {
  const std::size_t n = c.object_count();
  std::vector<std::string> labels(n);
  std::vector<std::vector<std::size_t>> hom(n, std::vector<std::size_t>(n));
  std::vector<std::size_t> ids(n);
  for (ObjId a = 0; a < n; ++a) {
    labels[a] = c.object_label(a);
    ids[a] = c.identity(a).idx;
    for (ObjId b = 0; b < n; ++b) hom[a][b] = c.hom_size(a, b);
  }
  return std::make_shared<TableCategory>(labels, hom, ids, [&](const Mor& g, const Mor& f) {
    auto r = c.compose(g, f);
    if (!r) throw InvalidInput("tabulate: composition is partial");
    return r->idx;
  });
}

/// Poset on n objects with a <= b given by `leq`; assumes `leq` is a partial order.
inline std::shared_ptr<TableCategory> poset_category(std::vector<std::string> labels,
                                                     const std::function<bool(ObjId, ObjId)>& leq) {
  const std::size_t n = labels.size();
  std::vector<std::vector<std::size_t>> hom(n, std::vector<std::size_t>(n, 0));
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) hom[a][b] = leq(a, b) ? 1 : 0;
  return std::make_shared<TableCategory>(std::move(labels), hom, std::vector<std::size_t>(n, 0),
                                         [](const Mor&, const Mor&) { return std::size_t{0}; });
}

/// The chain 0 < 1 < ... < n-1.
inline std::shared_ptr<TableCategory> chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return poset_category(labels, [](ObjId a, ObjId b) { return a <= b; });
}

inline std::shared_ptr<TableCategory> discrete_category(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("d" + std::to_string(i));
  return poset_category(labels, [](ObjId a, ObjId b) { return a == b; });
}

/// One object whose endomorphisms are Z/n, with composition by addition.
inline std::shared_ptr<TableCategory> cyclic_monoid_category(std::size_t n) {
  return std::make_shared<TableCategory>(
      std::vector<std::string>{"*"}, std::vector<std::vector<std::size_t>>{{n}}, std::vector<std::size_t>{0},
      [n](const Mor& g, const Mor& f) { return (g.idx + f.idx) % n; },
      [](const Mor& m) { return "g^" + std::to_string(m.idx); });
}

/// Product category; object (a, b) is a * |B| + b, morphism (f, g) is
/// f.idx * |hom_B| + g.idx.
inline std::shared_ptr<TableCategory> product_category(const Category& a, const Category& b) {
  const std::size_t na = a.object_count(), nb = b.object_count(), n = na * nb;
  std::vector<std::string> labels(n);
  std::vector<std::vector<std::size_t>> hom(n, std::vector<std::size_t>(n));
  std::vector<std::size_t> ids(n);
  for (ObjId x = 0; x < n; ++x) {
    labels[x] = "(" + a.object_label(x / nb) + "," + b.object_label(x % nb) + ")";
    ids[x] = a.identity(x / nb).idx * b.hom_size(x % nb, x % nb) + b.identity(x % nb).idx;
    for (ObjId y = 0; y < n; ++y) hom[x][y] = a.hom_size(x / nb, y / nb) * b.hom_size(x % nb, y % nb);
  }
  return std::make_shared<TableCategory>(labels, hom, ids, [&](const Mor& g, const Mor& f) {
    const std::size_t hb_f = b.hom_size(f.src % nb, f.dst % nb), hb_g = b.hom_size(g.src % nb, g.dst % nb);
    auto ga = a.compose(Mor{g.src / nb, g.dst / nb, g.idx / hb_g}, Mor{f.src / nb, f.dst / nb, f.idx / hb_f});
    auto gb = b.compose(Mor{g.src % nb, g.dst % nb, g.idx % hb_g}, Mor{f.src % nb, f.dst % nb, f.idx % hb_f});
    if (!ga || !gb) throw InvalidInput("product_category: partial composition");
    return ga->idx * b.hom_size(f.src % nb, g.dst % nb) + gb->idx;
  });
}

/// A functor between finite categories. Morphism images are nullopt only
/// when they would leave a truncated target.
struct CatFunctor {
  FinCat src, dst;
  std::vector<ObjId> objects;
  std::function<std::optional<Mor>(const Mor&)> morphisms;
  std::string name;

  ObjId operator()(ObjId x) const { return objects.at(x); }
  std::optional<Mor> operator()(const Mor& f) const { return morphisms(f); }
};

inline CatFunctor identity_functor(const FinCat& c) {
  std::vector<ObjId> objs(c->object_count());
  std::iota(objs.begin(), objs.end(), ObjId{0});
  return CatFunctor{c, c, objs, [](const Mor& f) -> std::optional<Mor> { return f; }, "id"};
}

/// g o f
inline CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
  std::vector<ObjId> objs(f.objects.size());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = g.objects.at(f.objects[i]);
  auto gm = g.morphisms;
  auto fm = f.morphisms;
  return CatFunctor{f.src, g.dst, objs,
                    [gm, fm](const Mor& m) -> std::optional<Mor> {
                      auto a = fm(m);
                      if (!a) return std::nullopt;
                      return gm(*a);
                    },
                    g.name + "." + f.name};
}

/// Precomputes every morphism image so repeated application is a lookup.
inline CatFunctor tabulate_functor(const CatFunctor& f) {
  const auto& s = *f.src;
  const std::size_t n = s.object_count();
  auto table = std::make_shared<std::vector<std::vector<std::optional<Mor>>>>(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (const Mor& m : s.homs(a, b)) (*table)[a * n + b].push_back(f.morphisms(m));
  CatFunctor out = f;
  out.morphisms = [table, n](const Mor& m) { return (*table)[m.src * n + m.dst].at(m.idx); };
  return out;
}

/// Functor given by an object map and, for each (a, b), the image indices of
/// hom(a, b).
inline CatFunctor table_functor(FinCat src, FinCat dst, std::vector<ObjId> objects,
                                std::map<std::pair<ObjId, ObjId>, std::vector<std::size_t>> images, std::string name = "") {
  auto img = std::make_shared<const decltype(images)>(std::move(images));
  auto objs = objects;
  return CatFunctor{std::move(src), std::move(dst), std::move(objects),
                    [img, objs](const Mor& m) -> std::optional<Mor> {
                      return Mor{objs[m.src], objs[m.dst], img->at({m.src, m.dst}).at(m.idx)};
                    },
                    std::move(name)};
}

/// Identities and composition are preserved on every composable pair.
/// Identities are always checked. Composition is checked on every
/// composable pair when there are at most `max_pairs` of them (or when
/// max_pairs is 0), otherwise on max_pairs pairs drawn with `seed`.
inline Verdict check_functor(const CatFunctor& f, std::size_t max_pairs = 0, std::uint64_t seed = 0) {
  const auto& s = *f.src;
  const auto& d = *f.dst;
  const std::size_t n = s.object_count();
  if (f.objects.size() != n) return Verdict::no("object map has wrong length");
  for (ObjId a = 0; a < n; ++a) {
    if (f.objects[a] >= d.object_count()) return Verdict::no("object image out of range");
    if (f(s.identity(a)) != d.identity(f(a))) return Verdict::no("identity of " + s.object_label(a) + " not preserved");
  }
  auto pair_ok = [&](const Mor& u, const Mor& v) -> std::optional<std::string> {
    auto vu = s.compose(v, u);
    auto fu = f(u);
    auto fv = f(v);
    if (!vu || !fu || !fv) return std::nullopt;
    if (f(*vu) != d.compose(*fv, *fu))
      return "composition not preserved for (" + s.morphism_label(v) + ", " + s.morphism_label(u) + ")";
    return std::nullopt;
  };
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (const Mor& u : s.homs(a, b)) {
        auto fu = f(u);
        if (fu && (fu->src != f(a) || fu->dst != f(b))) return Verdict::no("image of " + s.morphism_label(u) + " has wrong endpoints");
      }
  std::size_t pairs = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      const std::size_t hab = s.hom_size(a, b);
      if (hab)
        for (ObjId c = 0; c < n; ++c) pairs += hab * s.hom_size(b, c);
    }
  if (max_pairs == 0 || pairs <= max_pairs) {
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b)
        for (const Mor& u : s.homs(a, b))
          for (ObjId c = 0; c < n; ++c)
            for (const Mor& v : s.homs(b, c))
              if (auto w = pair_ok(u, v)) return Verdict::no(*w);
    return Verdict::yes();
  }
  std::mt19937_64 rng(seed);
  std::vector<std::array<ObjId, 3>> triples;
  std::vector<double> weight;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId c = 0; c < n; ++c)
        if (std::size_t w = s.hom_size(a, b) * s.hom_size(b, c)) {
          triples.push_back({a, b, c});
          weight.push_back(static_cast<double>(w));
        }
  std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
  for (std::size_t k = 0; k < max_pairs; ++k) {
    const auto [a, b, c] = triples[pick(rng)];
    const Mor u{a, b, rng() % s.hom_size(a, b)};
    const Mor v{b, c, rng() % s.hom_size(b, c)};
    if (auto w = pair_ok(u, v)) return Verdict::no(*w);
  }
  return Verdict::yes();
}

/// Components alpha_x : F x -> G x that are isomorphisms and natural.
inline Verdict check_natural_iso(const CatFunctor& f, const CatFunctor& g, const std::vector<Mor>& alpha) {
  const auto& s = *f.src;
  const auto& d = *f.dst;
  for (ObjId x = 0; x < s.object_count(); ++x) {
    const Mor& a = alpha.at(x);
    if (a.src != f(x) || a.dst != g(x) || !d.is_iso(a)) return Verdict::no("component at " + s.object_label(x) + " is not an iso F x -> G x");
  }
  for (ObjId x = 0; x < s.object_count(); ++x)
    for (ObjId y = 0; y < s.object_count(); ++y)
      for (const Mor& u : s.homs(x, y)) {
        auto l = compose_all(d, {g(u), alpha[x]});
        auto r = compose_all(d, {alpha[y], f(u)});
        if (l != r) return Verdict::no("naturality fails at " + s.morphism_label(u));
      }
  return Verdict::yes();
}

/// Backtracking search over iso components, checking naturality on
/// morphisms between already-assigned objects.
inline std::optional<std::vector<Mor>> find_natural_iso(const CatFunctor& f, const CatFunctor& g) {
  const auto& s = *f.src;
  const auto& d = *f.dst;
  const std::size_t n = s.object_count();
  std::vector<std::vector<Mor>> cands(n);
  for (ObjId x = 0; x < n; ++x) {
    cands[x] = d.isos(f(x), g(x));
    if (cands[x].empty()) return std::nullopt;
  }
  std::vector<Mor> alpha(n);
  auto consistent = [&](ObjId x, ObjId y) {
    for (const Mor& u : s.homs(x, y)) {
      auto l = compose_all(d, {g(u), alpha[x]});
      auto r = compose_all(d, {alpha[y], f(u)});
      if (l != r) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, ObjId x) -> bool {
    if (x == n) return true;
    for (const Mor& a : cands[x]) {
      alpha[x] = a;
      bool ok = true;
      for (ObjId y = 0; y <= x && ok; ++y) ok = consistent(x, y) && consistent(y, x);
      if (ok && self(self, x + 1)) return true;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return alpha;
}

/// Essentially surjective and fully faithful; the witness names the first
/// failing object or object pair.
inline Verdict check_equivalence(const CatFunctor& f) {
  const auto& s = *f.src;
  const auto& d = *f.dst;
  for (ObjId y = 0; y < d.object_count(); ++y) {
    bool hit = false;
    for (ObjId x = 0; x < s.object_count() && !hit; ++x) hit = f(x) == y || d.find_iso(f(x), y).has_value();
    if (!hit) return Verdict::no("not essentially surjective: " + d.object_label(y) + " is not isomorphic to any image");
  }
  for (ObjId a = 0; a < s.object_count(); ++a)
    for (ObjId b = 0; b < s.object_count(); ++b) {
      const std::string pair = "(" + s.object_label(a) + ", " + s.object_label(b) + ")";
      const std::size_t ns = s.hom_size(a, b), nd = d.hom_size(f(a), f(b));
      std::vector<char> hit(nd, 0);
      for (const Mor& u : s.homs(a, b)) {
        auto fu = f(u);
        if (!fu) return Verdict::no("not fully faithful: image of " + s.morphism_label(u) + " undefined at " + pair);
        if (hit[fu->idx]++) return Verdict::no("not faithful on " + pair);
      }
      if (ns != nd) return Verdict::no("not full on " + pair + ": " + std::to_string(ns) + " vs " + std::to_string(nd) + " morphisms");
    }
  return Verdict::yes();
}

struct ProductCone {
  ObjId obj;
  Mor p1, p2;
};

/// Universal property of (p; p1, p2) as a product of a and b, checked
/// against every cone.
inline bool is_product(const Category& c, const ProductCone& p, ObjId a, ObjId b) {
  for (ObjId z = 0; z < c.object_count(); ++z)
    for (const Mor& u : c.homs(z, a))
      for (const Mor& v : c.homs(z, b)) {
        std::size_t count = 0;
        for (const Mor& w : c.homs(z, p.obj))
          if (c.compose(p.p1, w) == u && c.compose(p.p2, w) == v) ++count;
        if (count != 1) return false;
      }
  return true;
}

inline std::optional<ProductCone> find_product(const Category& c, ObjId a, ObjId b) {
  for (ObjId p = 0; p < c.object_count(); ++p)
    for (const Mor& p1 : c.homs(p, a))
      for (const Mor& p2 : c.homs(p, b)) {
        ProductCone cone{p, p1, p2};
        if (is_product(c, cone, a, b)) return cone;
      }
  return std::nullopt;
}

inline bool is_terminal(const Category& c, ObjId t) {
  for (ObjId z = 0; z < c.object_count(); ++z)
    if (c.hom_size(z, t) != 1) return false;
  return true;
}

/// Preserves the terminal object and every binary product that exists in
/// the source.
inline Verdict preserves_products(const CatFunctor& f) {
  const auto& s = *f.src;
  const auto& d = *f.dst;
  for (ObjId t = 0; t < s.object_count(); ++t)
    if (is_terminal(s, t) && !is_terminal(d, f(t)))
      return Verdict::no("terminal object " + s.object_label(t) + " is not preserved");
  for (ObjId a = 0; a < s.object_count(); ++a)
    for (ObjId b = 0; b < s.object_count(); ++b) {
      auto cone = find_product(s, a, b);
      if (!cone) continue;
      auto p1 = f(cone->p1);
      auto p2 = f(cone->p2);
      if (!p1 || !p2 || !is_product(d, ProductCone{f(cone->obj), *p1, *p2}, f(a), f(b)))
        return Verdict::no("product of " + s.object_label(a) + " and " + s.object_label(b) + " is not preserved");
    }
  return Verdict::yes();
}

/// All functors src -> dst, by backtracking over object maps and then
/// morphism images (checking identities and composition as it goes).
inline std::vector<CatFunctor> enumerate_functors(const FinCat& src, const FinCat& dst, std::size_t limit = 100000) {
  const auto& s = *src;
  const auto& d = *dst;
  const std::size_t n = s.object_count(), m = d.object_count();
  std::vector<CatFunctor> out;
  std::vector<Mor> mors;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (const Mor& u : s.homs(a, b)) mors.push_back(u);
  std::map<Mor, std::size_t> pos;
  for (std::size_t i = 0; i < mors.size(); ++i) pos[mors[i]] = i;

  // Composable pairs (f, g, g o f) bucketed by the largest position involved.
  struct Triple {
    std::size_t f, g, gf;
  };
  std::vector<std::vector<Triple>> due(mors.size());
  for (std::size_t i = 0; i < mors.size(); ++i)
    for (std::size_t j = 0; j < mors.size(); ++j) {
      if (mors[i].dst != mors[j].src) continue;
      auto gf = s.compose(mors[j], mors[i]);
      if (!gf) continue;
      std::size_t p = pos.at(*gf);
      due[std::max({i, j, p})].push_back({i, j, p});
    }

  std::vector<ObjId> obj(n);
  std::vector<std::size_t> img(mors.size());
  auto check_upto = [&](std::size_t k) {
    const Mor& u = mors[k];
    if (u == s.identity(u.src) && img[k] != d.identity(obj[u.src]).idx) return false;
    for (const Triple& t : due[k]) {
      const Mor& f = mors[t.f];
      const Mor& g = mors[t.g];
      auto r = d.compose(Mor{obj[g.src], obj[g.dst], img[t.g]}, Mor{obj[f.src], obj[f.dst], img[t.f]});
      if (!r || r->idx != img[t.gf]) return false;
    }
    return true;
  };
  auto rec_mor = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == mors.size()) {
      std::map<std::pair<ObjId, ObjId>, std::vector<std::size_t>> images;
      for (std::size_t i = 0; i < mors.size(); ++i) images[{mors[i].src, mors[i].dst}].push_back(img[i]);
      for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) images[{a, b}];
      out.push_back(table_functor(src, dst, obj, std::move(images), "F" + std::to_string(out.size())));
      return;
    }
    const Mor& u = mors[k];
    for (std::size_t c = 0; c < d.hom_size(obj[u.src], obj[u.dst]); ++c) {
      img[k] = c;
      if (check_upto(k)) self(self, k + 1);
    }
  };
  auto rec_obj = [&](auto&& self, ObjId a) -> void {
    if (out.size() >= limit) return;
    if (a == n) {
      rec_mor(rec_mor, 0);
      return;
    }
    for (ObjId b = 0; b < m; ++b) {
      obj[a] = b;
      self(self, a + 1);
    }
  };
  rec_obj(rec_obj, 0);
  return out;
}

/// The full subcategory on the listed objects, with its inclusion.
class FullSubcategory : public Category {
 public:
  FullSubcategory(FinCat parent, std::vector<ObjId> objects) : parent_(std::move(parent)), objs_(std::move(objects)) {
    for (std::size_t i = 0; i < objs_.size(); ++i) index_[objs_[i]] = i;
  }
  std::size_t object_count() const override { return objs_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override { return parent_->hom_size(objs_.at(a), objs_.at(b)); }
  Mor identity(ObjId a) const override { return Mor{a, a, parent_->identity(objs_.at(a)).idx}; }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    auto r = parent_->compose(lift(g), lift(f));
    if (!r) return std::nullopt;
    return Mor{f.src, g.dst, r->idx};
  }
  std::string object_label(ObjId a) const override { return parent_->object_label(objs_.at(a)); }
  std::optional<Mor> find_iso(ObjId a, ObjId b) const override {
    auto r = parent_->find_iso(objs_.at(a), objs_.at(b));
    if (!r) return std::nullopt;
    return Mor{a, b, r->idx};
  }
  Mor lift(const Mor& m) const { return Mor{objs_.at(m.src), objs_.at(m.dst), m.idx}; }

  const FinCat& parent() const { return parent_; }
  const std::vector<ObjId>& objects() const { return objs_; }

 private:
  FinCat parent_;
  std::vector<ObjId> objs_;
  std::map<ObjId, std::size_t> index_;
};

inline CatFunctor inclusion_functor(const std::shared_ptr<const FullSubcategory>& sub) {
  auto s = sub;
  return CatFunctor{sub, sub->parent(), sub->objects(),
                    [s](const Mor& m) -> std::optional<Mor> { return s->lift(m); }, "incl"};
}

/// A category with wide subcategories of backward and forward morphisms.
struct AdequateTripleSpec {
  FinCat cat;
  std::function<bool(const Mor&)> backward;
  std::function<bool(const Mor&)> forward;
};

/// For every backward f : a -> c and forward g : b -> c, some pullback
///   p --p2--> b
///   |p1       |g
///   a --f---> c
/// exists with p1 forward and p2 backward. Also checks that both classes
/// contain identities and are closed under composition.
inline Verdict validate_adequate_triple(const AdequateTripleSpec& t) {
  const auto& c = *t.cat;
  const std::size_t n = c.object_count();
  for (int side = 0; side < 2; ++side) {
    const auto& pred = side ? t.forward : t.backward;
    const char* name = side ? "forward" : "backward";
    for (ObjId a = 0; a < n; ++a)
      if (!pred(c.identity(a))) return Verdict::no(std::string(name) + " class misses the identity of " + c.object_label(a));
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b)
        for (ObjId x = 0; x < n; ++x)
          for (const Mor& f : c.homs(a, b))
            for (const Mor& g : c.homs(b, x))
              if (pred(f) && pred(g)) {
                auto gf = c.compose(g, f);
                if (gf && !pred(*gf)) return Verdict::no(std::string(name) + " class is not closed under composition");
              }
  }
  for (ObjId cc = 0; cc < n; ++cc)
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b)
        for (const Mor& f : c.homs(a, cc)) {
          if (!t.backward(f)) continue;
          for (const Mor& g : c.homs(b, cc)) {
            if (!t.forward(g)) continue;
            bool found = false, found_wrong_legs = false;
            for (ObjId p = 0; p < n && !found; ++p)
              for (const Mor& p1 : c.homs(p, a)) {
                for (const Mor& p2 : c.homs(p, b)) {
                  if (c.compose(f, p1) != c.compose(g, p2)) continue;
                  bool universal = true;
                  for (ObjId z = 0; z < n && universal; ++z)
                    for (const Mor& u : c.homs(z, a))
                      for (const Mor& v : c.homs(z, b)) {
                        if (c.compose(f, u) != c.compose(g, v)) continue;
                        std::size_t count = 0;
                        for (const Mor& w : c.homs(z, p))
                          if (c.compose(p1, w) == u && c.compose(p2, w) == v) ++count;
                        if (count != 1) universal = false;
                      }
                  if (!universal) continue;
                  if (t.forward(p1) && t.backward(p2)) {
                    found = true;
                    break;
                  }
                  found_wrong_legs = true;
                }
                if (found) break;
              }
            if (!found) {
              std::string what = found_wrong_legs ? "pullback legs are not in the required classes"
                                                  : "no pullback exists";
              return Verdict::no(what + " for backward " + c.morphism_label(f) + " and forward " + c.morphism_label(g));
            }
          }
        }
  return Verdict::yes();
}

}  // namespace prospan
