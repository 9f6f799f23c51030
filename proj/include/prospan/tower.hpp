#pragma once

// Chain-shaped towers of finite quotients G_n -> ... -> G_1.

#include <string>
#include <vector>

#include "prospan/group.hpp"

namespace prospan {

inline GroupRef cyclic(std::uint32_t n) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make_group(t);
}

inline QuotientMap identity_quotient(const GroupRef& g) {
  std::vector<Element> proj(g->order());
  std::iota(proj.begin(), proj.end(), Element{0});
  return make_quotient_map(g, g, std::move(proj));
}

/// Stages are 1-based: stage 1 is the coarsest quotient, stage depth() the
/// finest. link(i) projects stage i+1 onto stage i.
class GroupTower {
 public:
  GroupTower(std::vector<GroupRef> stages, std::vector<QuotientMap> links)
      : stages_(std::move(stages)), links_(std::move(links)) {
    if (stages_.empty()) throw InvalidInput("tower needs at least one stage");
    if (links_.size() + 1 != stages_.size()) throw InvalidInput("tower needs depth-1 links");
    for (std::size_t i = 0; i < links_.size(); ++i) {
      if (!same_group(links_[i].source, stages_[i + 1]) || !same_group(links_[i].target, stages_[i]))
        throw InvalidInput("link " + std::to_string(i + 1) + " does not connect adjacent stages");
      if (stages_[i]->order() > stages_[i + 1]->order()) throw InvalidInput("stage orders must be non-decreasing");
    }
  }

  static GroupTower single(GroupRef g) { return GroupTower({std::move(g)}, {}); }

  std::size_t depth() const noexcept { return stages_.size(); }
  const GroupRef& stage(std::size_t level) const { return stages_.at(level - 1); }
  const GroupRef& top() const { return stages_.back(); }
  const QuotientMap& link(std::size_t i) const { return links_.at(i - 1); }
  const std::vector<QuotientMap>& links() const noexcept { return links_; }

  /// Composite projection stage `from` -> stage `to` (from >= to).
  QuotientMap projection(std::size_t from, std::size_t to) const {
    if (to < 1 || from > depth() || to > from) throw InvalidInput("bad tower projection levels");
    QuotientMap q = identity_quotient(stage(from));
    for (std::size_t i = from; i > to; --i) q = compose_quotients(link(i - 1), q);
    return q;
  }

 private:
  std::vector<GroupRef> stages_;
  std::vector<QuotientMap> links_;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Z/p <- Z/p^2 <- ... <- Z/p^n with reduction maps.
inline GroupTower cyclic_tower(std::uint32_t p, std::size_t depth) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (depth == 0) throw InvalidInput("tower depth must be at least 1");
  std::vector<GroupRef> stages;
  std::vector<QuotientMap> links;
  std::uint32_t order = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    order *= p;
    stages.push_back(cyclic(order));
    if (i > 0) {
      std::vector<Element> proj(order);
      for (Element x = 0; x < order; ++x) proj[x] = x % (order / p);
      links.push_back(make_quotient_map(stages[i], stages[i - 1], std::move(proj)));
    }
  }
  return GroupTower(std::move(stages), std::move(links));
}

}  // namespace prospan
