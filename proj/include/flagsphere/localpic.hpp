#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagsphere/complex.hpp"
#include "flagsphere/maps.hpp"

namespace flagsphere {

/// The 2-sphere formed around an edge {x, y} of a flag 3-sphere by gluing the
/// punctured links of x and y along the link of the edge.
struct LocalPicture {
  Triangulation sphere = Triangulation::flag_unchecked(2, {});
  std::vector<int> ambient;        // local id -> ambient id (increasing)
  std::vector<int> equator;        // local ids in cyclic order
  std::vector<int> hemisphere;     // -1 on the equator, 0 on the x side, 1 on the y side
  std::vector<VertexSet> cross;    // ambient adjacencies between the two open hemispheres
  VertexSet marked;
  int x = -1;
  int y = -1;
  VertexSet far;  // ambient vertices adjacent to neither endpoint

  [[nodiscard]] int num_vertices() const { return static_cast<int>(ambient.size()); }
  [[nodiscard]] VertexSet interior(int side) const;
};

/// Throws EdgeNotPresent.
LocalPicture extract(const Triangulation& t, int x, int y);

/// Exactly one vertex adjacent to neither endpoint. Throws EdgeNotPresent.
bool is_almost_omniscient(const Triangulation& t, int x, int y);

struct PictureMap {
  VertexMap map;          // local ids of the source picture -> local ids of the target
  bool swap = false;      // the x side of the source goes to the y side of the target
};

struct PictureSearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<PictureMap> map;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultPictureBudget = 10'000'000ULL;

/// Backtracking search for a map of local pictures: equator alignment first,
/// then the hemisphere pairing, then interior vertices one at a time.
PictureSearchResult find_picture_map(const LocalPicture& source, const LocalPicture& target,
                                     std::uint64_t budget = kDefaultPictureBudget);

/// Checks every condition on a map of local pictures from scratch.
bool is_picture_map(const LocalPicture& source, const LocalPicture& target, const PictureMap& pm);

/// Global map of degree +-1 built from a picture map whose target edge is
/// almost-omniscient. Throws NotAlmostOmniscient, ExtensionNotSimplicial, AssertionFailed.
VertexMap extend_to_global(const PictureMap& pm, const LocalPicture& source, const LocalPicture& target,
                           const Triangulation& source_t, const Triangulation& target_t);

/// The map onto T10 for an edge {a, b} in no square whose link has at least 5
/// vertices: a -> 1, b -> 2, link -> 5..9 monotonically, the rest of the
/// neighbours of a -> 0, of b -> 3, everything else -> 4.
VertexMap edgelink5_map(const Triangulation& t, int a, int b);

struct CertifyTarget {
  std::string name;
  Triangulation complex;
  std::vector<Edge> edges;  // ordered pairs (x, y)
};

/// A target together with its precomputed pictures.
struct PreparedTarget {
  std::string name;
  Triangulation complex;
  std::vector<LocalPicture> pictures;
};

/// T10 around {1, 2}; T12 around {4, 7} and {5, 7}.
std::vector<CertifyTarget> default_targets();
std::vector<PreparedTarget> prepare_targets(const std::vector<CertifyTarget>& targets);

struct CertifyOptions {
  std::uint64_t budget = kDefaultPictureBudget;  // per (edge, picture) pair
  int workers = 1;
};

struct TargetVerdict {
  std::string name;
  bool certified = false;
  bool timed_out = false;  // some search hit its budget
  std::optional<VertexMap> map;
  std::optional<Edge> source_edge;
  std::uint64_t nodes = 0;
};

std::vector<TargetVerdict> certify_dominance(const Triangulation& t, const std::vector<PreparedTarget>& targets,
                                             const CertifyOptions& options = {});

}  // namespace flagsphere
