#pragma once

// Colimits and limits of chain diagrams C_0 -> C_1 -> ... -> C_{n-1} of
// finite categories, the category of elements, and the correspondence
// between functors out of a colimit and compatible families.

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "prospan/fincat.hpp"

namespace prospan {

/// Stages are 0-based here; links[i] : cats[i] -> cats[i+1].
struct ChainDiagram {
  std::vector<FinCat> cats;
  std::vector<CatFunctor> links;

  ChainDiagram(std::vector<FinCat> c, std::vector<CatFunctor> l) : cats(std::move(c)), links(std::move(l)) {
    if (cats.empty()) throw InvalidInput("chain diagram needs a stage");
    if (links.size() + 1 != cats.size()) throw InvalidInput("chain diagram needs one link per adjacent pair");
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].src != cats[i] || links[i].dst != cats[i + 1])
        throw InvalidInput("link " + std::to_string(i) + " does not connect stages " + std::to_string(i) + " and " +
                           std::to_string(i + 1));
  }

  std::size_t length() const noexcept { return cats.size(); }

  ObjId push(std::size_t from, std::size_t to, ObjId x) const {
    for (std::size_t i = from; i < to; ++i) x = links[i](x);
    return x;
  }
  std::optional<Mor> push(std::size_t from, std::size_t to, const Mor& u) const {
    std::optional<Mor> m = u;
    for (std::size_t i = from; i < to && m; ++i) m = links[i](*m);
    return m;
  }
};

/// Objects are zigzag classes of stage objects: (i, x) ~ (j, y) iff their
/// images at the final stage are isomorphic. Hom-sets are computed at the
/// final stage, which is cofinal in a chain. Each class is represented by
/// its earliest stage object.
class ColimitCategory : public Category {
 public:
  struct Class {
    std::size_t stage;
    ObjId object;
    ObjId final_object;
  };

  explicit ColimitCategory(ChainDiagram d) : d_(std::move(d)) {
    const std::size_t last = d_.length() - 1;
    const auto& fin = *d_.cats[last];
    class_of_.resize(d_.length());
    for (std::size_t i = 0; i < d_.length(); ++i) {
      class_of_[i].resize(d_.cats[i]->object_count());
      for (ObjId x = 0; x < d_.cats[i]->object_count(); ++x) {
        const ObjId y = d_.push(i, last, x);
        auto it = final_class_.find(y);
        if (it == final_class_.end()) {
          std::optional<std::size_t> found;
          for (std::size_t c = 0; c < classes_.size() && !found; ++c)
            if (auto iso = fin.find_iso(y, classes_[c].final_object)) {
              found = c;
              theta_.emplace(y, *iso);
            }
          if (!found) {
            found = classes_.size();
            classes_.push_back({i, x, y});
            theta_.emplace(y, fin.identity(y));
          }
          it = final_class_.emplace(y, *found).first;
        }
        class_of_[i][x] = it->second;
      }
    }
  }

  std::size_t object_count() const override { return classes_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override {
    return final().hom_size(classes_.at(a).final_object, classes_.at(b).final_object);
  }
  Mor identity(ObjId a) const override { return down(final().identity(classes_.at(a).final_object), a, a); }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    auto r = final().compose(up(g), up(f));
    if (!r) return std::nullopt;
    return down(*r, f.src, g.dst);
  }
  std::string object_label(ObjId a) const override {
    const auto& c = classes_.at(a);
    return "[" + std::to_string(c.stage) + ":" + d_.cats[c.stage]->object_label(c.object) + "]";
  }
  std::string morphism_label(const Mor& m) const override { return final().morphism_label(up(m)); }
  std::optional<Mor> inverse(const Mor& f) const override {
    auto r = final().inverse(up(f));
    if (!r) return std::nullopt;
    return down(*r, f.dst, f.src);
  }
  std::optional<Mor> find_iso(ObjId a, ObjId b) const override {
    auto r = final().find_iso(classes_.at(a).final_object, classes_.at(b).final_object);
    if (!r) return std::nullopt;
    return down(*r, a, b);
  }
  std::vector<Mor> isos(ObjId a, ObjId b) const override {
    std::vector<Mor> out;
    for (const Mor& m : final().isos(classes_.at(a).final_object, classes_.at(b).final_object)) out.push_back(down(m, a, b));
    return out;
  }

  const ChainDiagram& diagram() const noexcept { return d_; }
  const std::vector<Class>& classes() const noexcept { return classes_; }
  ObjId class_of(std::size_t stage, ObjId x) const { return class_of_.at(stage).at(x); }
  const Category& final() const { return *d_.cats.back(); }

  /// Colimit morphisms are final-stage morphisms between class representatives.
  Mor up(const Mor& m) const { return Mor{classes_.at(m.src).final_object, classes_.at(m.dst).final_object, m.idx}; }
  Mor down(const Mor& m, ObjId a, ObjId b) const { return Mor{a, b, m.idx}; }

  /// The iso push(x) -> push(rep) at the final stage, for a final-stage object.
  const Mor& theta(ObjId final_object) const { return theta_.at(final_object); }

 private:
  ChainDiagram d_;
  std::vector<Class> classes_;
  std::vector<std::vector<ObjId>> class_of_;
  std::map<ObjId, std::size_t> final_class_;
  std::map<ObjId, Mor> theta_;
};

/// Canonical functor C_i -> colim, u |-> theta_y o push(u) o theta_x^-1.
/// Since theta depends only on the final-stage image, injection(i+1) o
/// links[i] equals injection(i) exactly.
inline CatFunctor colimit_injection(const std::shared_ptr<const ColimitCategory>& colim, std::size_t stage) {
  const auto& d = colim->diagram();
  std::vector<ObjId> objs(d.cats[stage]->object_count());
  for (ObjId x = 0; x < objs.size(); ++x) objs[x] = colim->class_of(stage, x);
  auto c = colim;
  return CatFunctor{d.cats[stage], colim, objs,
                    [c, stage](const Mor& u) -> std::optional<Mor> {
                      const auto& dd = c->diagram();
                      const std::size_t last = dd.length() - 1;
                      auto pu = dd.push(stage, last, u);
                      if (!pu) return std::nullopt;
                      const auto& fin = c->final();
                      auto tx_inv = fin.inverse(c->theta(pu->src));
                      auto r = compose_all(fin, {c->theta(pu->dst), pu, tx_inv});
                      if (!r) return std::nullopt;
                      return c->down(*r, c->class_of(stage, u.src), c->class_of(stage, u.dst));
                    },
                    "inj" + std::to_string(stage)};
}

inline std::shared_ptr<const ColimitCategory> colimit_chain(const ChainDiagram& d) {
  return std::make_shared<const ColimitCategory>(d);
}

inline std::vector<CatFunctor> colimit_injections(const std::shared_ptr<const ColimitCategory>& colim) {
  std::vector<CatFunctor> out;
  for (std::size_t i = 0; i < colim->diagram().length(); ++i) out.push_back(colimit_injection(colim, i));
  return out;
}

/// An object of the limit: one object per stage and isos
/// coherence[i] : links[i](objects[i]) -> objects[i+1].
struct CompatibleFamily {
  std::vector<ObjId> objects;
  std::vector<Mor> coherence;
  friend bool operator==(const CompatibleFamily&, const CompatibleFamily&) = default;
};

/// Objects are all compatible families. A morphism is a family of stage
/// morphisms commuting with the coherences; in a chain
///   f_{i+1} = c'_i o links[i](f_i) o c_i^-1
/// so it is determined by f_0, and hom-sets are indexed by those f_0 whose
/// derived components all exist.
class LimitCategory : public Category {
 public:
  explicit LimitCategory(ChainDiagram d) : d_(std::move(d)) {
    CompatibleFamily cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i + 1 == d_.length()) {
        families_.push_back(cur);
        return;
      }
      const ObjId pushed = d_.links[i](cur.objects[i]);
      const auto& next = *d_.cats[i + 1];
      for (ObjId y = 0; y < next.object_count(); ++y)
        for (const Mor& c : next.isos(pushed, y)) {
          cur.objects.push_back(y);
          cur.coherence.push_back(c);
          self(self, i + 1);
          cur.objects.pop_back();
          cur.coherence.pop_back();
        }
    };
    for (ObjId x = 0; x < d_.cats[0]->object_count(); ++x) {
      cur.objects = {x};
      cur.coherence.clear();
      rec(rec, 0);
    }
    for (std::size_t k = 0; k < families_.size(); ++k) index_.emplace(key(families_[k]), k);
  }

  std::size_t object_count() const override { return families_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override { return homs_of(a, b).size(); }
  Mor identity(ObjId a) const override {
    return Mor{a, a, position(a, a, d_.cats[0]->identity(families_.at(a).objects[0]).idx).value()};
  }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    auto r = d_.cats[0]->compose(base(g), base(f));
    if (!r) return std::nullopt;
    auto p = position(f.src, g.dst, r->idx);
    if (!p) return std::nullopt;
    return Mor{f.src, g.dst, *p};
  }
  std::string object_label(ObjId a) const override {
    std::string s = "(";
    const auto& fam = families_.at(a);
    for (std::size_t i = 0; i < fam.objects.size(); ++i) {
      if (i) s += ", ";
      s += d_.cats[i]->object_label(fam.objects[i]);
    }
    return s + ")";
  }
  std::optional<Mor> inverse(const Mor& f) const override {
    auto r = d_.cats[0]->inverse(base(f));
    if (!r) return std::nullopt;
    auto p = position(f.dst, f.src, r->idx);
    if (!p) return std::nullopt;
    return Mor{f.dst, f.src, *p};
  }
  /// Isomorphisms are detected at stage 0; the derived components of an iso
  /// are isos.
  std::optional<Mor> find_iso(ObjId a, ObjId b) const override {
    for (const Mor& m : d_.cats[0]->isos(families_.at(a).objects[0], families_.at(b).objects[0]))
      if (auto p = position(a, b, m.idx)) return Mor{a, b, *p};
    return std::nullopt;
  }

  const ChainDiagram& diagram() const noexcept { return d_; }
  const std::vector<CompatibleFamily>& families() const noexcept { return families_; }

  std::optional<ObjId> find_family(const CompatibleFamily& fam) const {
    auto it = index_.find(key(fam));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// The stage-0 morphism underlying a limit morphism.
  Mor base(const Mor& m) const {
    return Mor{families_.at(m.src).objects[0], families_.at(m.dst).objects[0], homs_of(m.src, m.dst).at(m.idx)};
  }

  /// Components (f_0, ..., f_{n-1}) derived from f_0, or nullopt when some
  /// component leaves a truncation.
  std::optional<std::vector<Mor>> components(ObjId a, ObjId b, const Mor& f0) const {
    const auto& fa = families_.at(a);
    const auto& fb = families_.at(b);
    std::vector<Mor> comps{f0};
    for (std::size_t i = 0; i + 1 < d_.length(); ++i) {
      const auto& next = *d_.cats[i + 1];
      auto pushed = d_.links[i](comps.back());
      auto cinv = next.inverse(fa.coherence[i]);
      auto r = compose_all(next, {fb.coherence[i], pushed, cinv});
      if (!r) return std::nullopt;
      comps.push_back(*r);
    }
    return comps;
  }

  std::optional<std::size_t> position(ObjId a, ObjId b, std::size_t f0_idx) const {
    const auto& h = homs_of(a, b);
    auto it = std::lower_bound(h.begin(), h.end(), f0_idx);
    if (it == h.end() || *it != f0_idx) return std::nullopt;
    return static_cast<std::size_t>(it - h.begin());
  }

 private:
  std::vector<std::size_t> key(const CompatibleFamily& fam) const {
    std::vector<std::size_t> k(fam.objects.begin(), fam.objects.end());
    for (const Mor& m : fam.coherence) {
      k.push_back(m.src);
      k.push_back(m.dst);
      k.push_back(m.idx);
    }
    return k;
  }

  const std::vector<std::size_t>& homs_of(ObjId a, ObjId b) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = homs_.find({a, b});
    if (it != homs_.end()) return it->second;
    std::vector<std::size_t> ok;
    const ObjId x = families_.at(a).objects[0], y = families_.at(b).objects[0];
    for (std::size_t k = 0; k < d_.cats[0]->hom_size(x, y); ++k)
      if (components(a, b, Mor{x, y, k})) ok.push_back(k);
    return homs_.emplace(std::pair{a, b}, std::move(ok)).first->second;
  }

  ChainDiagram d_;
  std::vector<CompatibleFamily> families_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<ObjId, ObjId>, std::vector<std::size_t>> homs_;
};

inline std::shared_ptr<const LimitCategory> limit_chain(const ChainDiagram& d) {
  return std::make_shared<const LimitCategory>(d);
}

inline CatFunctor limit_projection(const std::shared_ptr<const LimitCategory>& lim, std::size_t stage) {
  std::vector<ObjId> objs;
  for (const auto& fam : lim->families()) objs.push_back(fam.objects[stage]);
  auto l = lim;
  return CatFunctor{lim, lim->diagram().cats[stage], objs,
                    [l, stage](const Mor& m) -> std::optional<Mor> {
                      auto comps = l->components(m.src, m.dst, l->base(m));
                      if (!comps) return std::nullopt;
                      return (*comps)[stage];
                    },
                    "pr" + std::to_string(stage)};
}

/// Grothendieck construction of the chain: objects (i, x); a morphism
/// (i, x) -> (j, y) for i <= j is a morphism push(x) -> y in C_j.
class ElementsCategory : public Category {
 public:
  explicit ElementsCategory(ChainDiagram d) : d_(std::move(d)) {
    for (std::size_t i = 0; i < d_.length(); ++i)
      for (ObjId x = 0; x < d_.cats[i]->object_count(); ++x) objs_.push_back({i, x});
  }
  std::size_t object_count() const override { return objs_.size(); }
  std::size_t hom_size(ObjId a, ObjId b) const override {
    auto [i, x] = objs_.at(a);
    auto [j, y] = objs_.at(b);
    if (i > j) return 0;
    return d_.cats[j]->hom_size(d_.push(i, j, x), y);
  }
  Mor identity(ObjId a) const override {
    auto [i, x] = objs_.at(a);
    return Mor{a, a, d_.cats[i]->identity(x).idx};
  }
  std::optional<Mor> compose(const Mor& g, const Mor& f) const override {
    require_composable(g, f);
    auto [i, x] = objs_.at(f.src);
    auto [j, y] = objs_.at(f.dst);
    auto [k, z] = objs_.at(g.dst);
    const auto& ck = *d_.cats[k];
    auto pf = d_.push(j, k, Mor{d_.push(i, j, x), y, f.idx});
    auto r = compose_all(ck, {Mor{d_.push(j, k, y), z, g.idx}, pf});
    if (!r) return std::nullopt;
    return Mor{f.src, g.dst, r->idx};
  }
  std::string object_label(ObjId a) const override {
    auto [i, x] = objs_.at(a);
    return std::to_string(i) + ":" + d_.cats[i]->object_label(x);
  }

  const std::pair<std::size_t, ObjId>& element(ObjId a) const { return objs_.at(a); }
  ObjId find(std::size_t stage, ObjId x) const {
    for (ObjId a = 0; a < objs_.size(); ++a)
      if (objs_[a] == std::pair{stage, x}) return a;
    throw InvalidInput("no such element");
  }
  /// The cocartesian edge (i, x) -> (i+1, links[i](x)).
  Mor cocartesian(std::size_t stage, ObjId x) const {
    const ObjId y = d_.links[stage](x);
    return Mor{find(stage, x), find(stage + 1, y), d_.cats[stage + 1]->identity(y).idx};
  }
  const ChainDiagram& diagram() const noexcept { return d_; }

 private:
  ChainDiagram d_;
  std::vector<std::pair<std::size_t, ObjId>> objs_;
};

/// The functor from the category of elements to the colimit; checks that it
/// is a functor, inverts every cocartesian edge, and is surjective on
/// objects and on hom-sets out of final-stage elements.
inline Verdict localization_check(const std::shared_ptr<const ElementsCategory>& el,
                                  const std::shared_ptr<const ColimitCategory>& colim, std::size_t max_pairs = 0,
                                  std::uint64_t seed = 0) {
  const auto& d = el->diagram();
  auto inj = colimit_injections(colim);
  std::vector<ObjId> objs(el->object_count());
  for (ObjId a = 0; a < objs.size(); ++a) {
    auto [i, x] = el->element(a);
    objs[a] = colim->class_of(i, x);
  }
  auto e = el;
  CatFunctor loc{el, colim, objs,
                 [e, inj](const Mor& m) -> std::optional<Mor> {
                   auto [i, x] = e->element(m.src);
                   auto [j, y] = e->element(m.dst);
                   return inj[j](Mor{e->diagram().push(i, j, x), y, m.idx});
                 },
                 "loc"};
  if (auto v = check_functor(loc, max_pairs, seed); !v) return Verdict::no("localization is not a functor: " + v.witness);
  for (std::size_t i = 0; i + 1 < d.length(); ++i)
    for (ObjId x = 0; x < d.cats[i]->object_count(); ++x) {
      auto w = loc(el->cocartesian(i, x));
      if (!w || !colim->is_iso(*w)) return Verdict::no("cocartesian edge at stage " + std::to_string(i) + " is not inverted");
    }
  std::vector<char> hit(colim->object_count(), 0);
  for (ObjId o : objs) hit[o] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return Verdict::no("localization is not surjective on objects");
  const std::size_t last = d.length() - 1;
  for (ObjId a = 0; a < el->object_count(); ++a)
    for (ObjId b = 0; b < el->object_count(); ++b) {
      if (el->element(a).first != last || el->element(b).first != last) continue;
      std::set<std::size_t> got;
      for (const Mor& m : el->homs(a, b))
        if (auto r = loc(m)) got.insert(r->idx);
      if (got.size() != colim->hom_size(objs[a], objs[b])) return Verdict::no("localization is not full at the final stage");
    }
  return Verdict::yes();
}

/// Functors F_i : C_i -> E and isos coherence[i][x] : F_{i+1}(links[i] x) -> F_i(x).
struct FunctorFamily {
  FinCat target;
  std::vector<CatFunctor> functors;
  std::vector<std::vector<Mor>> coherence;
};

/// Naturality and invertibility of the coherence cells.
inline void check_family(const ChainDiagram& d, const FunctorFamily& fam) {
  if (fam.functors.size() != d.length() || fam.coherence.size() + 1 != d.length())
    throw IncoherentFamily("family has the wrong number of components");
  const auto& e = *fam.target;
  for (std::size_t i = 0; i + 1 < d.length(); ++i) {
    const auto& ci = *d.cats[i];
    if (fam.coherence[i].size() != ci.object_count()) throw IncoherentFamily("link " + std::to_string(i) + ": missing coherence cells");
    for (ObjId x = 0; x < ci.object_count(); ++x) {
      const Mor& c = fam.coherence[i][x];
      if (c.src != fam.functors[i + 1](d.links[i](x)) || c.dst != fam.functors[i](x) || !e.is_iso(c))
        throw IncoherentFamily("link " + std::to_string(i) + " object " + ci.object_label(x) + ": coherence is not an iso F_{i+1}(link x) -> F_i(x)");
    }
    for (ObjId x = 0; x < ci.object_count(); ++x)
      for (ObjId y = 0; y < ci.object_count(); ++y)
        for (const Mor& u : ci.homs(x, y)) {
          auto l = compose_all(e, {fam.coherence[i][y], fam.functors[i + 1](*d.links[i](u))});
          auto r = compose_all(e, {fam.functors[i](u), fam.coherence[i][x]});
          if (l != r)
            throw IncoherentFamily("link " + std::to_string(i) + " object " + ci.object_label(x) + ": coherence is not natural at " + ci.morphism_label(u));
        }
  }
}

/// The functor colim -> E induced by a compatible family:
///   F(c) = F_r(x_r) for the class representative (r, x_r),
///   F(phi) = kappa_d o F_last(phi) o kappa_c^-1,
/// with kappa_c : F_last(push x_r) -> F_r(x_r) composed from coherences.
inline CatFunctor functor_from_family(const std::shared_ptr<const ColimitCategory>& colim, const FunctorFamily& fam) {
  const auto& d = colim->diagram();
  check_family(d, fam);
  const auto& e = *fam.target;
  const std::size_t last = d.length() - 1;
  std::vector<ObjId> objs;
  auto kappa = std::make_shared<std::vector<Mor>>();
  auto kappa_inv = std::make_shared<std::vector<Mor>>();
  for (const auto& cls : colim->classes()) {
    objs.push_back(fam.functors[cls.stage](cls.object));
    Mor k = e.identity(fam.functors[last](cls.final_object));
    // Walk up from the last stage to the representative's stage.
    for (std::size_t i = last; i > cls.stage; --i) {
      const ObjId xi = d.push(cls.stage, i - 1, cls.object);
      auto r = e.compose(fam.coherence[i - 1][xi], k);
      if (!r) throw IncoherentFamily("coherence composite leaves the target truncation");
      k = *r;
    }
    kappa->push_back(k);
    kappa_inv->push_back(e.inverse(k).value());
  }
  auto c = colim;
  auto f_last = fam.functors[last];
  auto target = fam.target;
  return CatFunctor{colim, fam.target, objs,
                    [c, f_last, target, kappa, kappa_inv](const Mor& phi) -> std::optional<Mor> {
                      auto img = f_last(c->up(phi));
                      return compose_all(*target, {(*kappa)[phi.dst], img, (*kappa_inv)[phi.src]});
                    },
                    "from_family"};
}

/// G o injection_i with identity coherences (strict since injections are
/// strictly compatible with the links).
inline FunctorFamily restrict_to_family(const std::shared_ptr<const ColimitCategory>& colim, const CatFunctor& g) {
  FunctorFamily fam;
  fam.target = g.dst;
  const auto& d = colim->diagram();
  auto inj = colimit_injections(colim);
  for (std::size_t i = 0; i < d.length(); ++i) fam.functors.push_back(compose_functors(g, inj[i]));
  for (std::size_t i = 0; i + 1 < d.length(); ++i) {
    std::vector<Mor> cells;
    for (ObjId x = 0; x < d.cats[i]->object_count(); ++x) cells.push_back(g.dst->identity(fam.functors[i](x)));
    fam.coherence.push_back(std::move(cells));
  }
  return fam;
}

}  // namespace prospan
