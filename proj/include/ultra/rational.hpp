#ifndef ULTRA_RATIONAL_HPP_
#define ULTRA_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>

namespace ultra {

// Exact rational coefficients (integers embed as a subring).
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

}  // namespace ultra

#endif  // ULTRA_RATIONAL_HPP_
