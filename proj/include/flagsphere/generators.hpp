#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flagsphere/complex.hpp"
#include "flagsphere/maps.hpp"

namespace flagsphere {

/// Boundary of an n-gon; flag for n >= 4, an explicit (non-flag) triangle for n = 3.
Triangulation polygon(int n);

/// The (n+1)-fold join of S0 (cross-polytope boundary), 1 <= n <= 3.
Triangulation octahedral_sphere(int n);

/// Two isolated vertices.
Triangulation s0();

/// Boundary of the k-simplex as an explicit complex on k + 1 vertices.
Triangulation simplex_boundary(int k);

/// Join with the vertices of b shifted by |V(a)|. Flag if both inputs are flag.
Triangulation join(const Triangulation& a, const Triangulation& b);
Triangulation suspension(const Triangulation& t);

/// Order complex of the face poset; vertices are the nonempty faces sorted by
/// size, then lexicographically.
Triangulation barycentric_subdivision(const Triangulation& t);

/// Nonempty faces in the vertex order used by barycentric_subdivision.
std::vector<VertexSet> barycentric_vertex_faces(const Triangulation& t);

Triangulation t9();
Triangulation t10();
Triangulation t12();

struct Doubling {
  Triangulation complex;
  /// Ids in the result of each original vertex in the first and second copy
  /// (-1 for the removed vertex). Link vertices share ids.
  std::vector<int> first_copy;
  std::vector<int> second_copy;
};

/// Glues two copies of t minus the open star of u along the link of u.
Doubling double_along_vertex(const Triangulation& t, int u);

/// Degree-one fold of a doubling back onto the original complex: the
/// interior of the first copy goes to u, the second copy to its originals.
VertexMap fold_map(const Doubling& d, const Triangulation& original, int u);

struct IncrementalStep {
  std::vector<int> boundary_cycle;  // cyclic order
  std::vector<int> interior;
  int apex = -1;  // filled in by build_incremental
};

/// Cone over a flag 2-sphere followed by successive cones over full discs of
/// the boundary; vertex ids are base vertices, then the initial cone apex, then
/// one apex per step, then the closing apex.
struct IncrementalTrace {
  Triangulation base;
  std::vector<IncrementalStep> steps;
  std::vector<std::int64_t> theta_history;  // theta after the initial cone and each step
};

struct IncrementalResult {
  Triangulation complex;
  std::int64_t theta = 0;
  IncrementalTrace trace;
  std::optional<VertexMap> map_to_t10;
};

/// theta(S) = 11 - 5 f0(S) + f1(S) + f0(dS) for a 3-ball S.
std::int64_t ball_theta(int f0, int f1, int boundary_f0);

IncrementalResult build_incremental(const IncrementalTrace& trace);

}  // namespace flagsphere
