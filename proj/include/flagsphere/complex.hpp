#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flagsphere/error.hpp"
#include "flagsphere/vertex_set.hpp"

namespace flagsphere {

struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Kind { Flag, Explicit };

/// A finite simplicial complex of dimension at most 3 on vertices 0..n-1.
///
/// Flag complexes are stored by their 1-skeleton only; faces are the cliques
/// of the adjacency relation and are enumerated on demand. Explicit complexes
/// additionally carry their maximal faces. Values are immutable.
class Triangulation {
 public:
  /// Clique complex of the given graph. Throws InvalidInput on self-loops,
  /// out-of-range ids, n < 2, or a clique larger than dim + 1.
  static Triangulation flag(int n, int dim, std::span<const Edge> edges);
  static Triangulation flag(int dim, std::vector<VertexSet> adjacency);

  /// Complex given by its maximal faces. Every vertex must lie in a face and no
  /// face may contain another.
  static Triangulation explicit_faces(int n, int dim, std::vector<VertexSet> maximal_faces);

  [[nodiscard]] int num_vertices() const { return static_cast<int>(adj_.size()); }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] Kind kind() const { return kind_; }

  [[nodiscard]] const VertexSet& neighbors(int v) const { return adj_[v]; }
  [[nodiscard]] bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  [[nodiscard]] int degree(int v) const { return adj_[v].size(); }
  [[nodiscard]] const std::vector<VertexSet>& adjacency() const { return adj_; }
  [[nodiscard]] VertexSet vertex_set() const { return VertexSet::range(num_vertices()); }

  [[nodiscard]] int num_edges() const;
  /// Edges as (u < v) pairs in lexicographic order.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// All faces with exactly k vertices (k >= 1), lexicographically ordered.
  [[nodiscard]] std::vector<VertexSet> faces(int k) const;
  /// Number of faces with exactly k vertices.
  [[nodiscard]] std::int64_t count_faces(int k) const;
  /// Inclusion-maximal faces, lexicographically ordered.
  [[nodiscard]] std::vector<VertexSet> facets() const;
  [[nodiscard]] bool has_face(const VertexSet& s) const;

  /// Stored maximal faces of an explicit complex (empty for flag complexes).
  [[nodiscard]] const std::vector<VertexSet>& stored_faces() const { return faces_; }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

  // Unchecked construction for operations that preserve the invariants.
  static Triangulation flag_unchecked(int dim, std::vector<VertexSet> adjacency);
  static Triangulation explicit_unchecked(int dim, std::vector<VertexSet> adjacency,
                                          std::vector<VertexSet> maximal_faces);

 private:
  Triangulation() = default;

  std::vector<VertexSet> adj_;
  std::vector<VertexSet> faces_;
  int dim_ = 0;
  Kind kind_ = Kind::Flag;
};

/// Face counts f_{-1} = 1, f_0, ..., f_d.
struct FVector {
  std::vector<std::int64_t> counts;  // counts[i + 1] = f_i

  [[nodiscard]] std::int64_t f(int i) const {
    return i + 1 < static_cast<int>(counts.size()) ? counts[i + 1] : 0;
  }
  [[nodiscard]] int top_dim() const { return static_cast<int>(counts.size()) - 2; }
  /// f_0 - f_1 + f_2 - ...
  [[nodiscard]] std::int64_t euler() const;
  friend bool operator==(const FVector&, const FVector&) = default;
};

/// A complex together with the ambient vertex id of each of its vertices.
struct Relabelled {
  Triangulation complex;
  std::vector<int> to_parent;
};

struct CollapseResult {
  Triangulation complex;
  /// old_to_new[v] is the id of v's image; the removed endpoint maps to the survivor.
  std::vector<int> old_to_new;
};

using Square = std::array<int, 4>;

struct SphereVerdict {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

FVector face_vector(const Triangulation& t);

/// True iff every clique of the 1-skeleton spans a face.
bool is_flag(const Triangulation& t);

/// Link of a face, re-indexed to 0..k-1. Throws FaceNotPresent.
Relabelled link(const Triangulation& t, const VertexSet& face);

/// Full subcomplex spanned by the given vertices.
Relabelled induced_subcomplex(const Triangulation& t, const VertexSet& vertices, int dim);

/// Squares (a, b, c, d) with a = u, b = v: 4-cycles u-v-c-d-u with {u,c} and
/// {v,d} non-edges. Throws EdgeNotPresent.
std::vector<Square> squares_containing(const Triangulation& t, int u, int v);

/// Whether the edge {u, v} lies in some square. Edge presence is not checked.
bool edge_in_square(const Triangulation& t, int u, int v);

/// Number of common neighbours of u and v (the link size for flag spheres).
inline int edge_link_size(const Triangulation& t, int u, int v) {
  return (t.neighbors(u) & t.neighbors(v)).size();
}

/// Inserts a midpoint on {u, v}; the new vertex gets id n. Flag inputs only.
Triangulation subdivide_edge(const Triangulation& t, int u, int v);

/// Merges the larger endpoint into the smaller and compacts ids. With
/// preserve_flag, an edge lying in a square is rejected with EdgeInSquare.
CollapseResult collapse_edge(const Triangulation& t, int u, int v, bool preserve_flag = true);

/// Combinatorial sphere check; for d = 3 a pass means "S3-consistent".
SphereVerdict verify_sphere(const Triangulation& t, int d);

/// Two non-adjacent vertices adjacent to every other vertex, if any.
std::optional<std::pair<int, int>> is_suspension(const Triangulation& t);

/// 16 - 5 f0 + f1; meaningful for flag 3-spheres.
inline std::int64_t gamma2(const Triangulation& t) {
  return 16 - 5 * static_cast<std::int64_t>(t.num_vertices()) + t.num_edges();
}

/// Applies a vertex permutation: vertex v becomes perm[v].
Triangulation relabel(const Triangulation& t, std::span<const int> perm);

/// Explicit form listing the facets.
Triangulation to_explicit(const Triangulation& t);

/// Flag form of a complex that passes is_flag. Throws NotFlag otherwise.
Triangulation to_flag(const Triangulation& t);

bool is_connected(const Triangulation& t);

}  // namespace flagsphere
