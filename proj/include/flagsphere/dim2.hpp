#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagsphere/complex.hpp"
#include "flagsphere/maps.hpp"

namespace flagsphere {

/// An edge {x, y} of a flag 2-sphere whose endpoints both have valence 4 and
/// whose outer neighbours are distinct and nonadjacent; the lexicographically
/// least such edge, if any.
std::optional<Edge> find_elementary_reduction(const Triangulation& t);

struct Reduction {
  Triangulation complex;
  VertexMap projection;  // degree 1 onto the reduced sphere
};

/// Throws InvalidReduction when the edge does not qualify.
Reduction apply_elementary_reduction(const Triangulation& t, Edge e);

/// A 3-clique of the 1-skeleton that spans no 2-face (lexicographically least).
std::optional<std::array<int, 3>> find_empty_triangle(const Triangulation& t);

struct TriangleSplit {
  /// Each half keeps one side of the triangle and caps it with a 2-face.
  std::array<Triangulation, 2> halves;
  /// Degree-one projections: the other side collapses onto a triangle vertex.
  std::array<VertexMap, 2> projections;
};

TriangleSplit split_along_triangle(const Triangulation& t, const std::array<int, 3>& triangle);

enum class StepKind { ElementaryReduction, EmptyTriangleSplit, Terminal };

struct ReductionStep {
  StepKind kind = StepKind::Terminal;
  int depth = 0;            // nesting level of splits
  std::vector<int> data;    // edge, triangle, or empty
  std::vector<FVector> results;
  std::string note;
};

struct PositivityResult {
  bool positive = false;
  std::vector<ReductionStep> log;
};

/// Decides positivity of the simplicial volume of M(T) for a 2-sphere T.
/// Throws NotASphere.
PositivityResult positive_sv(const Triangulation& t);

std::string to_string(StepKind k);
/// One line per step: kind, data, resulting f-vectors.
std::string format_log(const std::vector<ReductionStep>& log);

/// Degree-one map to T9, composed from the reduction projections and a
/// brute-force terminal map. Throws NotPositive or Timeout.
VertexMap witness_map_to_t9(const Triangulation& t, std::uint64_t node_budget = 1'000'000'000ULL);

/// Branch sets of a minor model: branch_of[v] is the G1 vertex labelling v in G2.
struct MinorWitness {
  std::vector<int> branch_of;
};

struct MinorSearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<MinorWitness> witness;
  std::uint64_t nodes = 0;
};

/// Whether g1 is a minor of g2, with every vertex of g2 in some branch set.
/// Both graphs must be connected (InvalidInput otherwise).
MinorSearchResult minor_witness_search(const std::vector<VertexSet>& g1, const std::vector<VertexSet>& g2,
                                       std::uint64_t budget = 100'000'000ULL);

/// Connected branch sets realising every edge of g1.
bool is_minor_witness(const MinorWitness& w, const std::vector<VertexSet>& g1, const std::vector<VertexSet>& g2);

/// The labelling map t2 -> t1 of a minor witness. Throws InvalidWitness or
/// AssertionFailed (not simplicial, or degree other than +-1).
VertexMap minor_to_map(const MinorWitness& w, const Triangulation& t2, const Triangulation& t1);

}  // namespace flagsphere
