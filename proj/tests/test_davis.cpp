#include <doctest.h>

#include <algorithm>

#include "flagsphere/davis.hpp"
#include "flagsphere/generators.hpp"

using namespace flagsphere;

namespace {

// Oracle: Euler characteristic of a closed orientable surface of genus g.
std::int64_t surface_euler(std::int64_t genus) { return 2 - 2 * genus; }

BigInt alternating(const std::vector<BigInt>& cells) {
  BigInt s = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i % 2 == 0) ? cells[i] : BigInt(-cells[i]);
  return s;
}

}  // namespace

TEST_CASE("census of polygons") {
  for (int n = 4; n <= 9; ++n) {
    auto c = census(polygon(n));
    const std::int64_t genus = (n - 4) * (std::int64_t{1} << (n - 3)) + 1;
    CHECK(c.euler == surface_euler(genus));
    CHECK(alternating(c.cells_by_dim) == c.euler);
    CHECK_FALSE(c.gamma2.has_value());
  }
  CHECK(census(polygon(5)).euler == -8);
  CHECK(census(polygon(4)).euler == 0);
}

TEST_CASE("census of 3-spheres") {
  auto c = census(t10());
  CHECK(c.euler == 64);
  CHECK(c.euler == census(polygon(5)).euler * census(polygon(5)).euler);
  REQUIRE(c.gamma2.has_value());
  CHECK(*c.gamma2 == 1);
  for (const auto& t : {t12(), octahedral_sphere(3), barycentric_subdivision(simplex_boundary(4))}) {
    auto k = census(t);
    CHECK(k.euler == (BigInt(1) << (t.num_vertices() - 4)) * gamma2(t));
    CHECK(alternating(k.cells_by_dim) == k.euler);
  }
  // 2^(f0 - 4) exceeds 64 bits here.
  auto big = barycentric_subdivision(simplex_boundary(4));
  CHECK(census(big).cells_by_dim[0] == BigInt(1) << 30);
}

TEST_CASE("racg presentation") {
  CHECK(racg_presentation(s0()) == "racg 2\n");
  CHECK(racg_presentation(polygon(4)) == "racg 4\n0 1\n0 3\n1 2\n2 3\n");
  auto t = racg_presentation(t9());
  CHECK(std::count(t.begin(), t.end(), '\n') == 22);
}

TEST_CASE("explicit Davis models") {
  auto pent = build_explicit(polygon(5));
  CHECK(pent.top_simplices.size() == 320);
  CHECK(orientation_cycle_closed(pent));
  CHECK(explicit_euler(pent) == -8);
  auto sq = build_explicit(polygon(4));
  CHECK(orientation_cycle_closed(sq));
  CHECK(explicit_euler(sq) == 0);
  // M(S0) is a circle: the subdivided boundary of a square, 8 vertices and 8 edges.
  auto circle = build_explicit(s0());
  CHECK(circle.vertices.size() == 8);
  CHECK(circle.top_simplices.size() == 8);
  CHECK(orientation_cycle_closed(circle));
  CHECK(explicit_euler(circle) == 0);
  // Vertex count equals the total number of cells of M(T).
  auto c = census(polygon(5));
  BigInt cells = 0;
  for (const auto& x : c.cells_by_dim) cells += x;
  CHECK(BigInt(pent.vertices.size()) == cells);
  auto oct = build_explicit(octahedral_sphere(2));
  CHECK(orientation_cycle_closed(oct));
  CHECK(explicit_euler(oct) == census(octahedral_sphere(2)).euler);
  CHECK_THROWS_AS(build_explicit(barycentric_subdivision(simplex_boundary(3))), Error);
}

TEST_CASE("induced map degree") {
  VertexMap collapse{{0, 1, 2, 3, 3}, std::nullopt};
  auto r = induced_map_degree(collapse, polygon(5), polygon(4));
  CHECK(std::abs(r.map_degree) == 1);
  CHECK(r.verified);
  REQUIRE(r.explicit_degree.has_value());
  CHECK(abs(*r.explicit_degree) == 2);
  auto id = induced_map_degree(identity_map(4), polygon(4), polygon(4));
  CHECK(*id.explicit_degree == 1);
  auto id5 = induced_map_degree(identity_map(5), polygon(5), polygon(5));
  CHECK(*id5.explicit_degree == 1);
  VertexMap twice{{0, 1, 2, 3, 0, 1, 2, 3}, std::nullopt};
  auto w = induced_map_degree(twice, polygon(8), polygon(4));
  CHECK(abs(*w.explicit_degree) == 2 * 16);
  VertexMap flip{{0, 4, 3, 2, 1}, std::nullopt};
  CHECK(*induced_map_degree(flip, polygon(5), polygon(5)).explicit_degree == -1);
  auto big = induced_map_degree(identity_map(14), barycentric_subdivision(simplex_boundary(3)),
                                barycentric_subdivision(simplex_boundary(3)));
  CHECK_FALSE(big.verified);
  CHECK(big.formula == 1);
}
