#ifndef ULTRA_PARSE_HPP_
#define ULTRA_PARSE_HPP_

#include <string>
#include <vector>

#include "ultra/algebra.hpp"
#include "ultra/dynamics.hpp"
#include "ultra/spectrum.hpp"
#include "ultra/ultragraph.hpp"

namespace ultra {

struct ParseError : UltraError {
  using UltraError::UltraError;
};

// Parses a presentation document (JSON, schema 1) into a validated
// ultragraph; ParseError carries a located diagnostic.
Ultragraph parse_presentation(const std::string& text);
// Prints a document that parses back to the same presentation.
std::string print_presentation(const Ultragraph& g);

// Set expressions: atoms joined by + (union), & (intersection), - (difference);
// atoms are vertex names, w[3], w[*], w[*]\{1,2}, r(edge), and (expr).
VertexSet parse_set(const Ultragraph& g, const std::string& text);

// Free-group words: dot-separated edges, each optionally followed by ^-1;
// bundle instances are written e[3]; the empty word is "" or "1".
ReducedWord parse_word(const Ultragraph& g, const std::string& text);
Path parse_path(const Ultragraph& g, const std::string& text);

// Spectrum points:
//   "e0.(e2)*"            an eventually periodic infinite path
//   "e0 @ w[3]"           a sink-terminal boundary point (path may be empty)
//   "e0 ; v"              finite type with a principal top filter
//   "e0 ; cof <set>"      finite type with a cofinite top filter
TightFilter parse_point(const Ultragraph& g, const std::string& text);

std::string format_vertex(const Ultragraph& g, VertexId v);
std::string format_edge(const Ultragraph& g, EdgeRef e);
std::string format_path(const Ultragraph& g, const Path& p);
std::string format_set(const Ultragraph& g, const VertexSet& s);
std::string format_word(const Ultragraph& g, const ReducedWord& w);
std::string format_infinite_path(const Ultragraph& g, const InfinitePath& w);
std::string format_filter(const Ultragraph& g, const TightFilter& xi);
std::string format_boundary_point(const Ultragraph& g, const BoundaryPoint& y);
std::string format_cylinder(const Ultragraph& g, const Cylinder& c);
std::string format_selement(const Ultragraph& g, const SElement& s);
std::string format_element(const Ultragraph& g, const AlgebraElement& x);

}  // namespace ultra

#endif  // ULTRA_PARSE_HPP_
