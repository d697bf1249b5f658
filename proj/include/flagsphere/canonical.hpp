#pragma once

#include <span>
#include <string>
#include <vector>

#include "flagsphere/complex.hpp"

namespace flagsphere {

/// Canonical labelling certificate of a graph.
struct CanonicalForm {
  int num_vertices = 0;
  std::vector<Edge> edges;        // sorted, under the canonical labelling
  std::vector<int> labelling;     // labelling[v] = canonical id of vertex v

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.num_vertices == b.num_vertices && a.edges == b.edges;
  }
};

/// Individualisation-refinement canonical labelling of the 1-skeleton.
CanonicalForm canonical_form(const Triangulation& t);

/// Same, for a raw graph with an optional initial vertex colouring (equal
/// colours may be permuted, colour order is respected).
CanonicalForm canonical_form(const std::vector<VertexSet>& adjacency, std::span<const int> colours = {});

/// Orbit representative (smallest vertex id) of each vertex under graph automorphisms.
std::vector<int> vertex_orbits(const std::vector<VertexSet>& adjacency);

/// Vertex count then two hex digits per endpoint of each canonical edge.
std::string to_hex(const CanonicalForm& form);
CanonicalForm from_hex(const std::string& hex);

/// Graph given by a canonical form's edges.
std::vector<VertexSet> adjacency_of(const CanonicalForm& form);

}  // namespace flagsphere
