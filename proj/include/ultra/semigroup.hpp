#ifndef ULTRA_SEMIGROUP_HPP_
#define ULTRA_SEMIGROUP_HPP_

#include <vector>

#include "ultra/ultragraph.hpp"
#include "ultra/vertex_set.hpp"

namespace ultra {

// An element of the inverse semigroup of the labelled space: zero, or a
// triple (alpha, A, beta) with A a nonempty accommodating subset of
// r(alpha) and r(beta).
class SElement {
 public:
  SElement() = default;  // zero

  // Collapses to zero when `middle` is empty; DomainError when `middle` is
  // not contained in both ranges.
  static SElement make(const Ultragraph& g, Path alpha, VertexSet middle, Path beta);
  static SElement zero() { return SElement(); }

  bool is_zero() const { return zero_; }
  bool is_idempotent() const { return zero_ || alpha_ == beta_; }
  const Path& alpha() const { return alpha_; }
  const Path& beta() const { return beta_; }
  const VertexSet& middle() const { return middle_; }

  auto operator<=>(const SElement&) const = default;

 private:
  friend SElement star(const SElement&);

  bool zero_ = true;
  Path alpha_;
  VertexSet middle_;
  Path beta_;
};

SElement mul(const Ultragraph& g, const SElement& s, const SElement& t);
SElement star(const SElement& s);

// Natural order on idempotents; DomainError on non-idempotent input.
bool leq(const Ultragraph& g, const SElement& p, const SElement& q);

// All nonzero S-elements with word lengths <= max_word_len of a fully finite
// ultragraph (middle sets range over the whole power set of the range meet).
std::vector<SElement> enumerate_selements_tier1(const Ultragraph& g, std::size_t max_word_len);
// The nonzero idempotents among the above.
std::vector<SElement> enumerate_idempotents_tier1(const Ultragraph& g, std::size_t max_word_len);

}  // namespace ultra

#endif  // ULTRA_SEMIGROUP_HPP_
