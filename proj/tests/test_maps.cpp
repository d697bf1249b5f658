#include <doctest.h>

#include <numeric>
#include <random>

#include "flagsphere/generators.hpp"
#include "flagsphere/maps.hpp"

using namespace flagsphere;

TEST_CASE("validation") {
  const auto t = t12();
  CHECK(validate(identity_map(12), t, t));
  VertexMap constant{std::vector<int>(12, 3), std::nullopt};
  CHECK(validate(constant, t, t));
  VertexMap fold{{0, 1, 2, 3, 3}, std::nullopt};
  CHECK(validate(fold, polygon(5), polygon(4)));
  VertexMap bad{{0, 2, 1, 3, 3}, std::nullopt};
  CHECK_FALSE(validate(bad, polygon(5), polygon(4)));
}

TEST_CASE("orientation") {
  auto oct = octahedral_sphere(2);
  auto o = orient(oct);
  CHECK(o.top_faces.size() == 8);
  auto o12 = orient(t12());
  CHECK(static_cast<std::int64_t>(o12.top_faces.size()) == face_vector(t12()).f(3));
  CHECK_THROWS_AS(orient(Triangulation::flag(3, 1, std::vector<Edge>{{0, 1}, {1, 2}})), Error);
}

TEST_CASE("degree") {
  const auto t = t12();
  CHECK(degree(identity_map(12), t, t) == 1);
  VertexMap fold{{0, 1, 2, 3, 3}, std::nullopt};
  CHECK(std::abs(degree(fold, polygon(5), polygon(4))) == 1);
  VertexMap constant{std::vector<int>(12, 3), std::nullopt};
  CHECK(degree(constant, t, t) == 0);
  // Reflection of a polygon reverses orientation.
  VertexMap flip{{0, 4, 3, 2, 1}, std::nullopt};
  CHECK(degree(flip, polygon(5), polygon(5)) == -1);
  // Wrapping an 8-cycle twice around a square.
  VertexMap twice{{0, 1, 2, 3, 0, 1, 2, 3}, std::nullopt};
  CHECK(std::abs(degree(twice, polygon(8), polygon(4))) == 2);
  CHECK_THROWS_AS(degree(identity_map(12), t, t10()), Error);
  VertexMap bad{{0, 2, 1, 3, 3}, std::nullopt};
  CHECK_THROWS_AS(degree(bad, polygon(5), polygon(4)), Error);
}

TEST_CASE("collapse projections have unit degree and compose multiplicatively") {
  std::mt19937_64 rng(5);
  Triangulation t = t10();
  for (int i = 0; i < 8; ++i) {
    auto edges = t.edges();
    auto e = edges[rng() % edges.size()];
    t = subdivide_edge(t, e.u, e.v);
  }
  VertexMap total = identity_map(t.num_vertices());
  Triangulation cur = t;
  std::int64_t product = 1;
  int steps = 0;
  while (steps < 4) {
    bool done = false;
    for (const auto& e : cur.edges()) {
      if (edge_in_square(cur, e.u, e.v)) continue;
      auto r = collapse_edge(cur, e.u, e.v);
      VertexMap p{r.old_to_new, std::nullopt};
      const auto d = degree(p, cur, r.complex);
      CHECK(std::abs(d) == 1);
      product *= d;
      total = compose(total, p);
      cur = r.complex;
      done = true;
      break;
    }
    if (!done) break;
    ++steps;
  }
  CHECK(degree(total, t, cur) == product);
}

TEST_CASE("brute-force dominance") {
  auto none = dominates_bruteforce(octahedral_sphere(2), t9());
  CHECK(none.status == SearchStatus::None);
  auto self = dominates_bruteforce(t9(), t9(), {true});
  REQUIRE(self.status == SearchStatus::Found);
  CHECK(std::abs(*self.map->verified_degree) == 1);
  auto sub = subdivide_edge(t9(), 0, 1);
  auto down = dominates_bruteforce(sub, t9(), {true});
  REQUIRE(down.status == SearchStatus::Found);
  CHECK(std::abs(degree(*down.map, sub, t9())) == 1);
  BruteForceOptions tiny{false, 10};
  CHECK(dominates_bruteforce(t12(), t10(), tiny).status == SearchStatus::Timeout);
  auto t10self = dominates_bruteforce(t10(), t10());
  CHECK(t10self.status == SearchStatus::Found);
}
