#pragma once

// Concrete finite categories: G-sets, spans with truncated hom-sets, their
// models over a tower, and the link functors between stages.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "prospan/fincat.hpp"
#include "prospan/span.hpp"
#include "prospan/tower.hpp"

namespace prospan {

/// G-sets (not necessarily over one group: each object carries its own
/// group) with hom-sets computed by a caller-supplied rule. Morphisms are
/// set maps, so composition is function composition.
class MapCategory : public Category {
 public:
  std::size_t object_count() const override { return objects_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override { return hom(a, b).maps.size(); }
  Mor identity(ObjId a) const override {
    std::vector<Point> v(objects_.at(a).size());
    std::iota(v.begin(), v.end(), Point{0});
    return Mor{a, a, hom(a, a).index.at(v)};
  }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    const auto& vf = values(f);
    const auto& vg = values(g);
    std::vector<Point> v(vf.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vg[vf[i]];
    const auto& h = hom(f.src, g.dst);
    auto it = h.index.find(v);
    if (it == h.index.end()) throw InvalidInput("composite is missing from its hom-set");
    return Mor{f.src, g.dst, it->second};
  }
  std::optional<Mor> inverse(const Mor& f) const override {
    const auto& vf = values(f);
    if (objects_[f.src].size() != objects_[f.dst].size()) return std::nullopt;
    std::vector<Point> inv(vf.size(), static_cast<Point>(-1));
    for (Point x = 0; x < vf.size(); ++x) {
      if (inv[vf[x]] != static_cast<Point>(-1)) return std::nullopt;
      inv[vf[x]] = x;
    }
    const auto& h = hom(f.dst, f.src);
    auto it = h.index.find(inv);
    if (it == h.index.end()) return std::nullopt;
    return Mor{f.dst, f.src, it->second};
  }
  std::vector<Mor> isos(ObjId a, ObjId b) const override {
    std::vector<Mor> out;
    if (objects_[a].size() != objects_[b].size()) return out;
    const auto& h = hom(a, b);
    for (std::size_t k = 0; k < h.maps.size(); ++k)
      if (inverse(Mor{a, b, k})) out.push_back(Mor{a, b, k});
    return out;
  }
  std::optional<Mor> find_iso(ObjId a, ObjId b) const override {
    if (objects_[a].size() != objects_[b].size()) return std::nullopt;
    const auto& h = hom(a, b);
    for (std::size_t k = 0; k < h.maps.size(); ++k)
      if (inverse(Mor{a, b, k})) return Mor{a, b, k};
    return std::nullopt;
  }
  std::string object_label(ObjId a) const override { return labels_.at(a); }

  const GSet& object(ObjId a) const { return objects_.at(a); }
  const std::vector<Point>& values(const Mor& m) const { return hom(m.src, m.dst).maps.at(m.idx); }
  std::optional<Mor> find_map(ObjId a, ObjId b, const std::vector<Point>& v) const {
    const auto& h = hom(a, b);
    auto it = h.index.find(v);
    if (it == h.index.end()) return std::nullopt;
    return Mor{a, b, it->second};
  }

 protected:
  struct Hom {
    std::vector<std::vector<Point>> maps;
    std::map<std::vector<Point>, std::size_t> index;
  };
  virtual std::vector<std::vector<Point>> compute_hom(ObjId a, ObjId b) const = 0;

  std::vector<GSet> objects_;
  std::vector<std::string> labels_;

 private:
  const Hom& hom(ObjId a, ObjId b) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = homs_.find({a, b});
    if (it != homs_.end()) return it->second;
    Hom h;
    h.maps = compute_hom(a, b);
    for (std::size_t k = 0; k < h.maps.size(); ++k) h.index.emplace(h.maps[k], k);
    return homs_.emplace(std::pair{a, b}, std::move(h)).first->second;
  }
  mutable std::mutex mu_;
  mutable std::map<std::pair<ObjId, ObjId>, Hom> homs_;
};

/// Full subcategory of Fin_G on the given objects.
class GSetCategory : public MapCategory {
 public:
  GSetCategory(GroupRef g, std::vector<GSet> objects) : group_(std::move(g)) {
    objects_ = std::move(objects);
    for (const auto& x : objects_) {
      require_same_group(group_, x.group(), "GSetCategory");
      labels_.push_back(describe(x));
    }
  }
  const GroupRef& group() const noexcept { return group_; }

  /// Index of the object isomorphic to x, if any.
  std::optional<ObjId> find_object(const GSet& x) const {
    for (ObjId a = 0; a < objects_.size(); ++a)
      if (isomorphic(objects_[a], x)) return a;
    return std::nullopt;
  }

 protected:
  std::vector<std::vector<Point>> compute_hom(ObjId a, ObjId b) const override {
    std::vector<std::vector<Point>> out;
    for (auto& f : hom_gset(objects_[a], objects_[b])) out.push_back(std::move(f.values));
    return out;
  }

 private:
  GroupRef group_;
};

/// Isomorphism-class representatives of G-sets of size <= cap.
inline std::shared_ptr<const GSetCategory> gset_category(const GroupRef& g, std::size_t cap) {
  return std::make_shared<const GSetCategory>(g, enumerate_gsets(g, cap));
}

/// Finite model of discrete G-sets over a tower: objects (level, X) with X
/// a G_level-set of size <= cap; hom((i, X), (j, Y)) is computed after
/// inflating both to level max(i, j).
class DiscreteGSetCategory : public MapCategory {
 public:
  DiscreteGSetCategory(GroupTower tower, std::size_t cap) : tower_(std::move(tower)) {
    for (std::size_t lvl = 1; lvl <= tower_.depth(); ++lvl)
      for (auto& x : enumerate_gsets(tower_.stage(lvl), cap)) {
        levels_.push_back(lvl);
        labels_.push_back("L" + std::to_string(lvl) + describe(x));
        objects_.push_back(std::move(x));
      }
  }
  const GroupTower& tower() const noexcept { return tower_; }
  std::size_t level(ObjId a) const { return levels_.at(a); }

  ObjId find(std::size_t lvl, const GSet& x) const {
    for (ObjId a = 0; a < objects_.size(); ++a)
      if (levels_[a] == lvl && isomorphic(objects_[a], x)) return a;
    throw InvalidInput("no such object in the discrete model");
  }

  GSet inflated(ObjId a, std::size_t lvl) const { return inflate(objects_.at(a), tower_.projection(lvl, levels_.at(a))); }

 protected:
  std::vector<std::vector<Point>> compute_hom(ObjId a, ObjId b) const override {
    const std::size_t m = std::max(levels_[a], levels_[b]);
    std::vector<std::vector<Point>> out;
    for (auto& f : hom_gset(inflated(a, m), inflated(b, m))) out.push_back(std::move(f.values));
    return out;
  }

 private:
  GroupTower tower_;
  std::vector<std::size_t> levels_;
};

inline std::shared_ptr<const DiscreteGSetCategory> discrete_gset_category(const GroupTower& tower, std::size_t cap) {
  return std::make_shared<const DiscreteGSetCategory>(tower, cap);
}

/// Functor between G-set categories induced by a G-set functor; each image
/// is replaced by the isomorphic target object through its canonical iso.
inline CatFunctor gset_link(const std::shared_ptr<const GSetCategory>& src, const std::shared_ptr<const GSetCategory>& dst,
                            const GSetFunctor& f) {
  std::vector<ObjId> objs;
  auto to_target = std::make_shared<std::vector<EqMap>>();
  for (ObjId a = 0; a < src->object_count(); ++a) {
    GSet img = f.on_objects(src->object(a));
    auto b = dst->find_object(img);
    if (!b) throw InvalidInput("gset_link: image of " + src->object_label(a) + " is not an object of the target");
    objs.push_back(*b);
    to_target->push_back(find_gset_iso(img, dst->object(*b)).value());
  }
  auto s = src;
  auto d = dst;
  auto o = objs;
  return CatFunctor{src, dst, objs,
                    [s, d, f, to_target, o](const Mor& u) -> std::optional<Mor> {
                      EqMap fu = f.on_maps(EqMap(s->object(u.src), s->object(u.dst), s->values(u)));
                      EqMap moved = compose(compose((*to_target)[u.dst], fu), inverse((*to_target)[u.src]));
                      return d->find_map(o[u.src], o[u.dst], moved.values);
                    },
                    f.name};
}

/// Spans between the given objects, with hom-sets truncated to multisets of
/// total apex size <= cap. Basis composites are memoized.
class SpanCategory : public Category {
 public:
  SpanCategory(GroupRef g, std::vector<GSet> objects, std::size_t cap, std::vector<std::string> labels = {})
      : group_(std::move(g)), objects_(std::move(objects)), labels_(std::move(labels)), cap_(cap) {
    for (const auto& x : objects_) require_same_group(group_, x.group(), "SpanCategory");
    if (labels_.empty())
      for (const auto& x : objects_) labels_.push_back(describe(x));
  }

  std::size_t object_count() const override { return objects_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override { return hom(a, b).mors.size(); }
  Mor identity(ObjId a) const override { return from_span(a, a, identity_span(objects_.at(a))).value(); }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    const auto& hf = hom(f.src, f.dst);
    const auto& hg = hom(g.src, g.dst);
    const auto& hc = hom(f.src, g.dst);
    Terms out;
    for (const auto& [kf, mf] : hf.mors.at(f.idx))
      for (const auto& [kg, mg] : hg.mors.at(g.idx))
        for (const auto& [k, m] : basis_composite(f.src, f.dst, g.dst, kg, kf)) out[k] += mf * mg * m;
    std::size_t size = 0;
    for (const auto& [k, m] : out) size += m * hc.apex[k];
    if (size > cap_) return std::nullopt;
    auto it = hc.index.find(std::vector<std::pair<std::size_t, std::uint64_t>>(out.begin(), out.end()));
    if (it == hc.index.end()) return std::nullopt;
    return Mor{f.src, g.dst, it->second};
  }
  std::string object_label(ObjId a) const override { return labels_.at(a); }
  std::string morphism_label(const Mor& m) const override { return to_span(m).str(); }

  /// Isos are spans (id, phi) for G-set isos phi; their inverse is the transpose.
  std::optional<Mor> inverse(const Mor& f) const override {
    auto t = from_span(f.dst, f.src, transpose(to_span(f)));
    if (!t) return std::nullopt;
    if (compose(*t, f) != identity(f.src) || compose(f, *t) != identity(f.dst)) return std::nullopt;
    return t;
  }
  std::vector<Mor> isos(ObjId a, ObjId b) const override {
    std::vector<Mor> out;
    if (!isomorphic(objects_[a], objects_[b])) return out;
    for (const auto& phi : hom_gset(objects_[a], objects_[b]))
      if (phi.bijective())
        if (auto m = from_span(a, b, forward_span(phi))) out.push_back(*m);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::optional<Mor> find_iso(ObjId a, ObjId b) const override {
    auto phi = find_gset_iso(objects_[a], objects_[b]);
    if (!phi) return std::nullopt;
    return from_span(a, b, forward_span(*phi));
  }

  const GroupRef& group() const noexcept { return group_; }
  const GSet& object(ObjId a) const { return objects_.at(a); }
  std::size_t cap() const noexcept { return cap_; }

  std::optional<ObjId> find_object(const GSet& x) const {
    for (ObjId a = 0; a < objects_.size(); ++a)
      if (isomorphic(objects_[a], x)) return a;
    return std::nullopt;
  }

  SpanMor to_span(const Mor& m) const {
    const auto& h = hom(m.src, m.dst);
    SpanMor s(objects_.at(m.src), objects_.at(m.dst));
    for (const auto& [k, mult] : h.mors.at(m.idx)) s.add(h.keys[k], mult);
    return s;
  }

  /// The morphism with these terms, or nullopt outside the truncation.
  std::optional<Mor> from_span(ObjId a, ObjId b, const SpanMor& s) const {
    if (!(s.left() == objects_.at(a)) || !(s.right() == objects_.at(b)))
      throw ObjectMismatch("from_span: span endpoints are not the chosen objects");
    const auto& h = hom(a, b);
    std::vector<std::pair<std::size_t, std::uint64_t>> terms;
    for (const auto& [k, m] : s.terms()) {
      auto it = std::lower_bound(h.keys.begin(), h.keys.end(), k);
      if (it == h.keys.end() || *it != k) throw InvalidInput("from_span: term is not a basis span");
      terms.emplace_back(static_cast<std::size_t>(it - h.keys.begin()), m);
    }
    auto it = h.index.find(terms);
    if (it == h.index.end()) return std::nullopt;
    return Mor{a, b, it->second};
  }

 private:
  using Terms = std::map<std::size_t, std::uint64_t>;
  struct Hom {
    std::vector<SpanKey> keys;
    std::vector<std::size_t> apex;
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> mors;
    std::map<std::vector<std::pair<std::size_t, std::uint64_t>>, std::size_t> index;
  };

  const Hom& hom(ObjId a, ObjId b) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = homs_.find({a, b});
      if (it != homs_.end()) return it->second;
    }
    Hom h;
    h.keys = span_basis_keys(objects_.at(a), objects_.at(b));
    const auto& lat = group_->lattice();
    for (const auto& k : h.keys) h.apex.push_back(lat.orbit_size(k.cls));
    std::vector<std::pair<std::size_t, std::uint64_t>> cur;
    auto rec = [&](auto&& self, std::size_t i, std::size_t size) -> void {
      if (i == h.keys.size()) {
        h.mors.push_back(cur);
        return;
      }
      self(self, i + 1, size);
      for (std::uint64_t m = 1; size + m * h.apex[i] <= cap_; ++m) {
        cur.emplace_back(i, m);
        self(self, i + 1, size + m * h.apex[i]);
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
    std::sort(h.mors.begin(), h.mors.end());
    for (std::size_t k = 0; k < h.mors.size(); ++k) h.index.emplace(h.mors[k], k);
    std::lock_guard<std::mutex> lock(mu_);
    return homs_.emplace(std::pair{a, b}, std::move(h)).first->second;
  }

  const Terms& basis_composite(ObjId a, ObjId b, ObjId c, std::size_t kg, std::size_t kf) const {
    const auto key = std::array<std::size_t, 5>{a, b, c, kg, kf};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = comp_.find(key);
      if (it != comp_.end()) return it->second;
    }
    const auto& hab = hom(a, b);
    const auto& hbc = hom(b, c);
    const auto& hac = hom(a, c);
    SpanMor r = compose_basis(objects_[a], objects_[b], objects_[c], hbc.keys[kg], hab.keys[kf]);
    Terms t;
    for (const auto& [k, m] : r.terms()) {
      auto it = std::lower_bound(hac.keys.begin(), hac.keys.end(), k);
      t[static_cast<std::size_t>(it - hac.keys.begin())] += m;
    }
    std::lock_guard<std::mutex> lock(mu_);
    return comp_.emplace(key, std::move(t)).first->second;
  }

  GroupRef group_;
  std::vector<GSet> objects_;
  std::vector<std::string> labels_;
  std::size_t cap_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<ObjId, ObjId>, Hom> homs_;
  mutable std::map<std::array<std::size_t, 5>, Terms> comp_;
};

/// Iso-class representatives of size <= cap, apex size <= cap.
inline std::shared_ptr<const SpanCategory> span_category(const GroupRef& g, std::size_t cap) {
  return std::make_shared<const SpanCategory>(g, enumerate_gsets(g, cap), cap);
}

/// Span(F) between span categories, conjugated through canonical isos onto
/// the target's objects.
inline CatFunctor span_link(const std::shared_ptr<const SpanCategory>& src, const std::shared_ptr<const SpanCategory>& dst,
                            const GSetFunctor& f) {
  std::vector<ObjId> objs;
  auto to_target = std::make_shared<std::vector<EqMap>>();
  for (ObjId a = 0; a < src->object_count(); ++a) {
    GSet img = f.on_objects(src->object(a));
    auto b = dst->find_object(img);
    if (!b) throw InvalidInput("span_link: image of " + src->object_label(a) + " is not an object of the target");
    objs.push_back(*b);
    to_target->push_back(find_gset_iso(img, dst->object(*b)).value());
  }
  auto s = src;
  auto d = dst;
  auto o = objs;
  return CatFunctor{src, dst, objs,
                    [s, d, f, to_target, o](const Mor& u) -> std::optional<Mor> {
                      SpanMor img = span_of_functor(f, s->to_span(u));
                      return d->from_span(o[u.src], o[u.dst], transport(img, (*to_target)[u.src], (*to_target)[u.dst]));
                    },
                    "Span(" + f.name + ")"};
}

/// Span model of discrete G-sets over a tower: objects (level, X) with X a
/// G_level-set of size <= cap; hom-sets are spans at the deepest level
/// between the inflations.
class DiscreteSpanCategory : public SpanCategory {
 public:
  DiscreteSpanCategory(const GroupTower& tower, std::size_t cap, std::vector<std::size_t> levels,
                       std::vector<GSet> carriers, std::vector<GSet> inflated, std::vector<std::string> labels)
      : SpanCategory(tower.top(), std::move(inflated), cap, std::move(labels)),
        tower_(tower),
        levels_(std::move(levels)),
        carriers_(std::move(carriers)) {}

  static std::shared_ptr<const DiscreteSpanCategory> make(const GroupTower& tower, std::size_t cap) {
    std::vector<std::size_t> levels;
    std::vector<GSet> carriers, inflated;
    std::vector<std::string> labels;
    for (std::size_t lvl = 1; lvl <= tower.depth(); ++lvl)
      for (auto& x : enumerate_gsets(tower.stage(lvl), cap)) {
        levels.push_back(lvl);
        labels.push_back("L" + std::to_string(lvl) + describe(x));
        inflated.push_back(inflate(x, tower.projection(tower.depth(), lvl)));
        carriers.push_back(std::move(x));
      }
    return std::make_shared<const DiscreteSpanCategory>(tower, cap, std::move(levels), std::move(carriers),
                                                        std::move(inflated), std::move(labels));
  }

  const GroupTower& tower() const noexcept { return tower_; }
  std::size_t level(ObjId a) const { return levels_.at(a); }
  const GSet& carrier(ObjId a) const { return carriers_.at(a); }
  ObjId find(std::size_t lvl, const GSet& x) const {
    for (ObjId a = 0; a < carriers_.size(); ++a)
      if (levels_[a] == lvl && isomorphic(carriers_[a], x)) return a;
    throw InvalidInput("no such object in the discrete span model");
  }

 private:
  GroupTower tower_;
  std::vector<std::size_t> levels_;
  std::vector<GSet> carriers_;
};

}  // namespace prospan
