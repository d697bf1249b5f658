#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flagsphere/complex.hpp"
#include "flagsphere/maps.hpp"

namespace flagsphere {

using BigInt = boost::multiprecision::cpp_int;

/// Cell counts and Euler characteristic of the Davis complex M(T).
struct DavisCensus {
  /// cells_by_dim[i] = (number of (i-1)-simplices of T, counting the empty one) * 2^(f0 - i).
  std::vector<BigInt> cells_by_dim;
  BigInt euler;
  /// 16 - 5 f0 + f1, present for flag complexes of dimension 3.
  std::optional<std::int64_t> gamma2;
};

DavisCensus census(const Triangulation& t);

/// Closed formula 2^(f0-1) * sum_i (-1)^(i+1) 2^(-i) f_i, evaluated exactly.
BigInt davis_euler(const FVector& f);

/// Right-angled Coxeter group presentation: `racg <n>` then one `u v` line per
/// commuting pair (edge). Every generator is an involution.
std::string racg_presentation(const Triangulation& t);

/// Largest f0 accepted by build_explicit.
inline constexpr int kExplicitDavisMaxVertices = 12;

/// Barycentric subdivision of M(T). A vertex is the barycentre of a cube cell,
/// recorded as (face of T, signs outside that face). Signs are bitmasks with
/// bit v set when w_v = -1.
struct ExplicitDavisComplex {
  struct Vertex {
    std::uint32_t face = 0;
    std::uint32_t signs = 0;
  };
  int dim = 0;  // dimension of M(T), one more than dim T
  std::vector<Vertex> vertices;
  /// Top simplices as ordered vertex ids pi_{empty}(w), pi_{s0}(w), ..., with
  /// their coefficient in the orientation cycle.
  std::vector<std::vector<int>> top_simplices;
  std::vector<int> coefficient;

  [[nodiscard]] int vertex_id(std::uint32_t face, std::uint32_t signs) const;
};

/// Throws TooLarge when f0 exceeds kExplicitDavisMaxVertices, NotOrientable /
/// NotPseudomanifold when T is not an oriented pseudomanifold.
ExplicitDavisComplex build_explicit(const Triangulation& t);

/// Whether the orientation cycle has zero boundary.
bool orientation_cycle_closed(const ExplicitDavisComplex& m);

/// Euler characteristic of the simplicial complex generated by the top simplices.
std::int64_t explicit_euler(const ExplicitDavisComplex& m);

struct InducedDegree {
  std::int64_t map_degree = 0;     // deg(f)
  BigInt formula;                   // 2^(|V1| - |V2|) * deg(f)
  std::optional<BigInt> explicit_degree;  // deg(f_M) when both sides fit the guard
  bool verified = false;
};

/// Degree of the map f_M : M(T1) -> M(T2) induced by f : T1 -> T2. Throws
/// AssertionFailed if the explicit count disagrees with the formula.
InducedDegree induced_map_degree(const VertexMap& f, const Triangulation& t1, const Triangulation& t2);

}  // namespace flagsphere
