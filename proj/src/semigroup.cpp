#include "ultra/semigroup.hpp"

#include <algorithm>

namespace ultra {

SElement SElement::make(const Ultragraph& g, Path alpha, VertexSet middle, Path beta) {
  if (middle.is_empty()) return zero();
  if (!g.path_composable(alpha) || !g.path_composable(beta))
    throw DomainError("semigroup element: words must be composable paths");
  if (!middle.subset_of(g.path_range(alpha)) || !middle.subset_of(g.path_range(beta)))
    throw DomainError("semigroup element: middle set must sit inside both ranges");
  SElement s;
  s.zero_ = false;
  s.alpha_ = std::move(alpha);
  s.middle_ = std::move(middle);
  s.beta_ = std::move(beta);
  return s;
}

SElement mul(const Ultragraph& g, const SElement& s, const SElement& t) {
  if (s.is_zero() || t.is_zero()) return SElement::zero();
  Path rest;
  if (is_beginning_of(s.beta(), t.alpha(), &rest)) {
    VertexSet middle = set_intersect(relative_range(g, s.middle(), rest), t.middle());
    if (middle.is_empty()) return SElement::zero();
    return SElement::make(g, concat(s.alpha(), rest), std::move(middle), t.beta());
  }
  if (is_beginning_of(t.alpha(), s.beta(), &rest)) {
    VertexSet middle = set_intersect(s.middle(), relative_range(g, t.middle(), rest));
    if (middle.is_empty()) return SElement::zero();
    return SElement::make(g, s.alpha(), std::move(middle), concat(t.beta(), rest));
  }
  return SElement::zero();
}

SElement star(const SElement& s) {
  if (s.is_zero()) return s;
  SElement out = s;
  std::swap(out.alpha_, out.beta_);
  return out;
}

bool leq(const Ultragraph& g, const SElement& p, const SElement& q) {
  if (!p.is_idempotent() || !q.is_idempotent())
    throw DomainError("natural order is defined on idempotents only");
  if (p.is_zero()) return true;
  if (q.is_zero()) return false;
  Path rest;
  if (!is_beginning_of(q.alpha(), p.alpha(), &rest)) return false;
  return p.middle().subset_of(relative_range(g, q.middle(), rest));
}

std::vector<SElement> enumerate_selements_tier1(const Ultragraph& g, std::size_t max_word_len) {
  if (g.tier() != Tier::kFinite)
    throw TierError("exhaustive semigroup enumeration needs a fully finite input");
  std::vector<Path> words;
  words.push_back({});
  for (auto& p : enumerate_paths(g, max_word_len)) words.push_back(std::move(p));

  std::vector<SElement> out;
  for (const auto& alpha : words) {
    for (const auto& beta : words) {
      VertexSet meet = set_intersect(g.path_range(alpha), g.path_range(beta));
      if (meet.is_empty()) continue;
      auto elems = meet.finite_elements();
      const std::size_t n = elems.size();
      for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        VertexSet a = g.empty_set();
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (std::uint64_t(1) << i)) a.insert(elems[i]);
        out.push_back(SElement::make(g, alpha, std::move(a), beta));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SElement> enumerate_idempotents_tier1(const Ultragraph& g, std::size_t max_word_len) {
  std::vector<SElement> out;
  for (auto& s : enumerate_selements_tier1(g, max_word_len))
    if (s.is_idempotent()) out.push_back(std::move(s));
  return out;
}

}  // namespace ultra
