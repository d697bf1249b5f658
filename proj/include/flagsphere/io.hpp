#pragma once

#include <iosfwd>
#include <string>

#include "flagsphere/complex.hpp"
#include "flagsphere/localpic.hpp"
#include "flagsphere/maps.hpp"

namespace flagsphere {

/// `flag d n m` + sorted edge lines, or `simp d n k` + sorted facet lines.
std::string format_complex(const Triangulation& t);
/// Parse errors carry "name:line: message".
Triangulation parse_complex(std::istream& in, const std::string& name = "<input>");
Triangulation parse_complex_string(const std::string& text, const std::string& name = "<input>");
Triangulation read_complex_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// `map ns nt` + one `i -> j` line per source vertex.
std::string format_map(const VertexMap& m, int target_vertices);
VertexMap parse_map(std::istream& in, const std::string& name = "<input>");
VertexMap parse_map_string(const std::string& text, const std::string& name = "<input>");

/// Debug dump: `picture n`, ambient ids, centre edge, equator, hemispheres,
/// sphere edges, cross edges, marked and far sets.
std::string format_picture(const LocalPicture& p);
LocalPicture parse_picture(std::istream& in, const std::string& name = "<input>");
LocalPicture parse_picture_string(const std::string& text, const std::string& name = "<input>");

}  // namespace flagsphere
