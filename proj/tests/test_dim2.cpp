#include <doctest.h>

#include "flagsphere/canonical.hpp"
#include "flagsphere/dim2.hpp"
#include "flagsphere/generators.hpp"
#include "sphere_enum.hpp"

using namespace flagsphere;

namespace {

// Two tetrahedron boundaries glued along a removed triangle {0,1,2}.
Triangulation double_tetrahedron() {
  return Triangulation::explicit_faces(5, 2, {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 4}, {0, 2, 4}, {1, 2, 4}});
}

// Octahedron and T9 glued along a facet.
Triangulation octahedron_sum_t9() {
  auto oct = octahedral_sphere(2);
  auto t = t9();
  const auto of = oct.faces(3).front();
  const auto tf = t.faces(3).front();
  auto ov = of.to_vector(), tv = tf.to_vector();
  std::vector<int> id(6, -1);
  for (int i = 0; i < 3; ++i) id[ov[i]] = tv[i];
  int next = 9;
  for (int v = 0; v < 6; ++v) {
    if (id[v] < 0) id[v] = next++;
  }
  std::vector<VertexSet> faces;
  for (const auto& f : t.faces(3)) {
    if (!(f == tf)) faces.push_back(f);
  }
  for (const auto& f : oct.faces(3)) {
    if (f == of) continue;
    VertexSet g;
    f.for_each([&](int v) { g.insert(id[v]); });
    faces.push_back(g);
  }
  return Triangulation::explicit_faces(12, 2, faces);
}

}  // namespace

TEST_CASE("elementary reductions") {
  CHECK_FALSE(find_elementary_reduction(octahedral_sphere(2)).has_value());
  CHECK_FALSE(find_elementary_reduction(t9()).has_value());
  // Suspension of a hexagon: two adjacent equator vertices of valence 4 with
  // non-adjacent outer neighbours.
  auto s6 = suspension(polygon(6));
  auto e = find_elementary_reduction(s6);
  REQUIRE(e.has_value());
  auto r = apply_elementary_reduction(s6, *e);
  CHECK(r.complex.num_vertices() == 7);
  CHECK(canonical_form(r.complex) == canonical_form(suspension(polygon(5))));
  REQUIRE(r.projection.verified_degree.has_value());
  CHECK(std::abs(*r.projection.verified_degree) == 1);
  CHECK_THROWS_AS(apply_elementary_reduction(octahedral_sphere(2), Edge{0, 2}), Error);
  CHECK_THROWS_AS(apply_elementary_reduction(s6, Edge{0, 6}), Error);
}

TEST_CASE("empty triangle splitting") {
  CHECK_FALSE(find_empty_triangle(octahedral_sphere(2)).has_value());
  CHECK_FALSE(find_empty_triangle(simplex_boundary(3)).has_value());
  auto dt = double_tetrahedron();
  auto tri = find_empty_triangle(dt);
  REQUIRE(tri.has_value());
  CHECK(*tri == std::array<int, 3>{0, 1, 2});
  auto split = split_along_triangle(dt, *tri);
  for (int i = 0; i < 2; ++i) {
    CHECK(split.halves[i].num_vertices() == 4);
    CHECK(verify_sphere(split.halves[i], 2).ok);
    CHECK(std::abs(*split.projections[i].verified_degree) == 1);
  }
  CHECK_THROWS_AS(split_along_triangle(octahedral_sphere(2), {0, 2, 4}), Error);
}

TEST_CASE("positivity decision") {
  CHECK_FALSE(positive_sv(simplex_boundary(3)).positive);
  CHECK_FALSE(positive_sv(octahedral_sphere(2)).positive);
  CHECK_FALSE(positive_sv(double_tetrahedron()).positive);
  CHECK_FALSE(positive_sv(suspension(polygon(7))).positive);
  auto p = positive_sv(t9());
  CHECK(p.positive);
  REQUIRE(p.log.size() == 1);
  CHECK(p.log[0].kind == StepKind::Terminal);
  auto sum = positive_sv(octahedron_sum_t9());
  CHECK(sum.positive);
  CHECK(sum.log.front().kind == StepKind::EmptyTriangleSplit);
  CHECK(format_log(sum.log).find("EMPTY_TRIANGLE_SPLIT") == 0);
  CHECK_THROWS_AS(positive_sv(polygon(5)), Error);
}

TEST_CASE("witness maps to T9") {
  auto m = witness_map_to_t9(t9());
  CHECK(std::abs(degree(m, t9(), t9())) == 1);
  auto big = octahedron_sum_t9();
  auto w = witness_map_to_t9(big);
  CHECK(validate(w, big, t9()));
  CHECK(std::abs(degree(w, big, t9())) == 1);
  auto sub = subdivide_edge(subdivide_edge(t9(), 0, 1), 0, 9);
  CHECK(std::abs(degree(witness_map_to_t9(sub), sub, t9())) == 1);
  CHECK_THROWS_AS(witness_map_to_t9(octahedral_sphere(2)), Error);
}

TEST_CASE("minor witnesses") {
  auto c4 = polygon(4).adjacency(), c5 = polygon(5).adjacency();
  auto r = minor_witness_search(c4, c5);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(is_minor_witness(*r.witness, c4, c5));
  CHECK(minor_witness_search(c5, c4).status == SearchStatus::None);
  // K5 is not a minor of any planar graph.
  auto k5 = simplex_boundary(4).adjacency();
  CHECK(minor_witness_search(k5, suspension(polygon(6)).adjacency()).status == SearchStatus::None);
  auto sub = subdivide_edge(subdivide_edge(t9(), 0, 1), 2, 5);
  auto found = minor_witness_search(t9().adjacency(), sub.adjacency());
  REQUIRE(found.status == SearchStatus::Found);
  auto map = minor_to_map(*found.witness, sub, t9());
  CHECK(std::abs(*map.verified_degree) == 1);
  MinorWitness bad{std::vector<int>(sub.num_vertices(), 0)};
  CHECK_FALSE(is_minor_witness(bad, t9().adjacency(), sub.adjacency()));
  CHECK_THROWS_AS(minor_to_map(bad, sub, t9()), Error);
  CHECK(minor_witness_search(t9().adjacency(), sub.adjacency(), 2).status == SearchStatus::Timeout);
}

TEST_CASE("small flag spheres") {
  const auto all = testing::enumerate_spheres(9);
  const std::vector<std::size_t> counts{1, 1, 2, 5, 14, 50};
  for (int n = 4; n <= 9; ++n) CHECK(all.at(n).size() == counts[n - 4]);
  int flag_count = 0, positive_count = 0;
  for (const auto& [n, list] : all) {
    for (const auto& t : list) {
      if (!is_flag(t)) continue;
      ++flag_count;
      auto f = to_flag(t);
      const bool pos = positive_sv(f).positive;
      const auto bf = dominates_bruteforce(f, t9(), {true, 100'000'000});
      REQUIRE(bf.status != SearchStatus::Timeout);
      CHECK(pos == (bf.status == SearchStatus::Found));
      if (pos) {
        ++positive_count;
        CHECK(canonical_form(f) == canonical_form(t9()));
      }
    }
  }
  CHECK(flag_count > 1);
  CHECK(positive_count == 1);
  MESSAGE("flag spheres up to 9 vertices: " << flag_count);
}
