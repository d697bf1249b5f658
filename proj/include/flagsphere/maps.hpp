#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flagsphere/complex.hpp"

namespace flagsphere {

/// A total vertex assignment V(source) -> V(target), claimed simplicial.
struct VertexMap {
  std::vector<int> image;
  std::optional<std::int64_t> verified_degree;

  [[nodiscard]] int source_size() const { return static_cast<int>(image.size()); }
  int operator[](int v) const { return image[v]; }
};

/// True iff every face of source is sent into a face of target.
bool validate(const VertexMap& m, const Triangulation& source, const Triangulation& target);

/// Sign per top face (aligned with t.faces(dim + 1)), relative to the
/// ascending vertex order of each face.
struct Orientation {
  std::vector<VertexSet> top_faces;
  std::vector<int> sign;

  [[nodiscard]] int sign_of(const VertexSet& face) const;
};

/// Coherent orientation by dual-graph traversal, seeded with +1 on the
/// lexicographically first top face. Throws NotPseudomanifold / NotOrientable.
Orientation orient(const Triangulation& t);

/// Degree of a simplicial map between spheres of equal dimension; checks that
/// every target top face yields the same signed count.
std::int64_t degree(const VertexMap& m, const Triangulation& source, const Triangulation& target);
std::int64_t degree(const VertexMap& m, const Triangulation& source, const Orientation& source_or,
                    const Triangulation& target, const Orientation& target_or);

/// Validates and stores the degree in m.
std::int64_t verify_degree(VertexMap& m, const Triangulation& source, const Triangulation& target);

VertexMap compose(const VertexMap& first, const VertexMap& second);
VertexMap identity_map(int n);

enum class SearchStatus { Found, None, Timeout };

struct DominanceResult {
  SearchStatus status = SearchStatus::None;
  std::optional<VertexMap> map;
  std::uint64_t nodes = 0;
};

struct BruteForceOptions {
  bool require_unit_degree = false;
  std::uint64_t node_budget = 1'000'000'000ULL;
};

/// Exhaustive backtracking search for a simplicial map source -> target of
/// nonzero (or unit) degree.
DominanceResult dominates_bruteforce(const Triangulation& source, const Triangulation& target,
                                     const BruteForceOptions& options = {});

}  // namespace flagsphere
