#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "matchdist/complex.hpp"

namespace matchdist::io {

// Two whitespace-separated text formats, '#' starts a comment:
//
//   bifiltration
//   <n_simplices>
//   v0 v1 ... vd ; x1 y1 [x2 y2 ...]
//
//   lowerstar
//   <n_vertices> <n_simplices>
//   <x_i> <y_i>          (n_vertices lines)
//   v0 v1 ... vd         (n_simplices lines)
//
// Both parse into a validated BiFiltration. Parse failures raise ParseError
// with the offending line number.

BiFiltration read_bifiltration(std::istream& in);
BiFiltration read_bifiltration_file(const std::filesystem::path& path);

/// Parses the text of either format.
BiFiltration parse_bifiltration(const std::string& text);

/// Writes the `bifiltration` format in canonical simplex order with
/// round-trippable number formatting.
void write_bifiltration(std::ostream& out, const BiFiltration& f);
void write_bifiltration_file(const std::filesystem::path& path, const BiFiltration& f);

/// Shortest decimal form that reads back to the same double ("inf" for infinity).
std::string format_double(double v);

}  // namespace matchdist::io
