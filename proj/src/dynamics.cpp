#include "ultra/dynamics.hpp"

#include <algorithm>
#include <cassert>

namespace ultra {

ReducedWord ReducedWord::from_path(const Path& alpha) {
  ReducedWord w;
  for (const auto& e : alpha.edges) w.letters.push_back({e, false});
  return w;
}

ReducedWord ReducedWord::from_pair(const Path& alpha, const Path& beta) {
  return reduce_concat(from_path(alpha), from_path(beta).inverted());
}

ReducedWord ReducedWord::inverted() const {
  ReducedWord out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back({it->edge, !it->inverse});
  return out;
}

std::int64_t ReducedWord::degree() const {
  std::int64_t d = 0;
  for (const auto& l : letters) d += l.inverse ? -1 : 1;
  return d;
}

bool ReducedWord::pn_shape(Path* pos, Path* neg) const {
  Path p, n;
  std::size_t i = 0;
  while (i < letters.size() && !letters[i].inverse) p.edges.push_back(letters[i++].edge);
  while (i < letters.size() && letters[i].inverse) n.edges.push_back(letters[i++].edge);
  if (i != letters.size()) return false;
  std::reverse(n.edges.begin(), n.edges.end());
  if (pos) *pos = std::move(p);
  if (neg) *neg = std::move(n);
  return true;
}

ReducedWord reduce_concat(const ReducedWord& a, const ReducedWord& b) {
  ReducedWord out = a;
  for (const auto& l : b.letters) {
    if (!out.letters.empty() && out.letters.back().edge == l.edge &&
        out.letters.back().inverse != l.inverse)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

TightFilter shift(const Ultragraph& g, const TightFilter& xi) {
  if (xi.is_infinite_type()) return TightFilter::infinite(drop_first_edge(g, xi.word()));
  if (xi.alpha().empty()) throw DomainError("shift needs a word of length at least one");
  Path rest{{xi.alpha().edges.begin() + 1, xi.alpha().edges.end()}};
  // for a single edge this lands on the empty word; the top filter survives as
  // its upward closure
  return TightFilter::finite(std::move(rest), xi.top());
}

TightFilter shift_n(const Ultragraph& g, const TightFilter& xi, std::size_t n) {
  TightFilter cur = xi;
  for (std::size_t i = 0; i < n; ++i) cur = shift(g, cur);
  return cur;
}

VSet v_set(const Ultragraph& g, const ReducedWord& t) {
  if (t.is_identity()) return VSet::full();
  Path pos, neg;
  if (!t.pn_shape(&pos, &neg)) return VSet::empty();
  VertexSet m = set_intersect(g.path_range(pos), g.path_range(neg));
  if (m.is_empty()) return VSet::empty();
  return VSet::of(Cylinder{SElement::make(g, pos, std::move(m), pos), {}});
}

VSet v_set_pair(const Ultragraph& g, const Path& alpha, const Path& beta) {
  VertexSet m = set_intersect(g.path_range(alpha), g.path_range(beta));
  if (m.is_empty()) return VSet::empty();
  if (alpha.empty() && beta.empty()) return VSet::full();
  return VSet::of(Cylinder{SElement::make(g, alpha, std::move(m), alpha), {}});
}

bool v_set_contains(const Ultragraph& g, const VSet& v, const TightFilter& xi) {
  switch (v.kind) {
    case VSet::Kind::kFull: return true;
    case VSet::Kind::kEmpty: return false;
    case VSet::Kind::kCylinder: return cylinder_membership(g, xi, v.cylinder);
  }
  return false;
}

bool in_act_domain(const Ultragraph& g, const ReducedWord& t, const TightFilter& xi) {
  return v_set_contains(g, v_set(g, t.inverted()), xi);
}

TightFilter act(const Ultragraph& g, const ReducedWord& t, const TightFilter& xi) {
  if (!in_act_domain(g, t, xi)) throw DomainError("point outside the domain of the action");
  if (t.is_identity()) return xi;
  Path pos, neg;
  t.pn_shape(&pos, &neg);  // succeeds: the domain was nonempty

  if (xi.is_infinite_type()) {
    InfinitePath w = xi.word();
    for (std::size_t i = 0; i < neg.size(); ++i) w = drop_first_edge(g, w);
    return TightFilter::infinite(prepend(g, pos, w));
  }
  Path rest;
  is_beginning_of(neg, xi.alpha(), &rest);  // domain membership gives the prefix
  return TightFilter::finite(concat(pos, rest), xi.top());
}

GroupoidElement make_groupoid_element(const Ultragraph& g, ReducedWord t, TightFilter xi) {
  if (!v_set_contains(g, v_set(g, t), xi))
    throw DomainError("groupoid element needs its point inside the word's open set");
  return {std::move(t), std::move(xi)};
}

GroupoidElement groupoid_unit(TightFilter xi) { return {ReducedWord::identity(), std::move(xi)}; }

TightFilter groupoid_range(const GroupoidElement& x) { return x.point; }

TightFilter groupoid_source(const Ultragraph& g, const GroupoidElement& x) {
  return act(g, x.word.inverted(), x.point);
}

GroupoidElement groupoid_compose(const Ultragraph& g, const GroupoidElement& x,
                                 const GroupoidElement& y) {
  if (groupoid_source(g, x) != groupoid_range(y))
    throw DomainError("not composable: source and range disagree");
  return {reduce_concat(x.word, y.word), x.point};
}

GroupoidElement groupoid_inverse(const Ultragraph& g, const GroupoidElement& x) {
  return {x.word.inverted(), groupoid_source(g, x)};
}

RdTriple rd_view(const Ultragraph& g, const GroupoidElement& x) {
  return {groupoid_range(x), x.word.degree(), groupoid_source(g, x)};
}

bool in_isotropy_interior(const Ultragraph& g, const GroupoidElement& x) {
  if (x.word.is_identity()) return true;
  if (!x.point.is_infinite_type()) return false;
  if (!in_act_domain(g, x.word.inverted(), x.point)) return false;
  if (act(g, x.word.inverted(), x.point) != x.point) return false;

  Path pos, neg;
  if (!x.word.pn_shape(&pos, &neg)) return false;
  if (pos.size() == neg.size()) return false;  // equal prefixes would reduce to the identity
  const Path& longer = pos.size() > neg.size() ? pos : neg;
  const Path& shorter = pos.size() > neg.size() ? neg : pos;
  Path cycle{{longer.edges.begin() + shorter.size(), longer.edges.end()}};
  if (find_exit(g, cycle)) return false;
  return x.point.word() == make_infinite_path(g, shorter, cycle);
}

}  // namespace ultra
