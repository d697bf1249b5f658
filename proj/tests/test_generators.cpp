#include <doctest.h>

#include <random>

#include "flagsphere/canonical.hpp"
#include "flagsphere/generators.hpp"

using namespace flagsphere;

namespace {

// Applies a permutation given in cycle notation and checks that it preserves edges.
bool is_automorphism(const Triangulation& t, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> perm(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) perm[v] = v;
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) perm[c[i]] = c[(i + 1) % c.size()];
  }
  for (const auto& e : t.edges()) {
    if (!t.adjacent(perm[e.u], perm[e.v])) return false;
  }
  return true;
}

// f_k of a join from the factors' f-vectors.
std::int64_t join_count(const FVector& a, const FVector& b, int k) {
  std::int64_t s = 0;
  for (int i = -1; i <= k; ++i) s += a.f(i) * b.f(k - 1 - i);
  return s;
}

}  // namespace

TEST_CASE("polygons and octahedral spheres") {
  CHECK(polygon(4).num_edges() == 4);
  CHECK(polygon(5).kind() == Kind::Flag);
  CHECK(polygon(3).kind() == Kind::Explicit);
  CHECK_FALSE(is_flag(polygon(3)));
  CHECK_THROWS_AS(polygon(2), Error);
  CHECK(canonical_form(octahedral_sphere(1)) == canonical_form(polygon(4)));
  CHECK(octahedral_sphere(2).num_edges() == 12);
  CHECK(octahedral_sphere(3).num_vertices() == 8);
  CHECK(octahedral_sphere(3).num_edges() == 24);
  CHECK(gamma2(octahedral_sphere(3)) == 0);
  CHECK_THROWS_AS(octahedral_sphere(4), Error);
}

TEST_CASE("joins") {
  CHECK(canonical_form(join(s0(), s0())) == canonical_form(polygon(4)));
  auto s = suspension(octahedral_sphere(2));
  CHECK(gamma2(s) == 0);
  CHECK(verify_sphere(s, 3).ok);
  CHECK_THROWS_AS(join(octahedral_sphere(2), polygon(4)), Error);
  const std::vector<std::pair<Triangulation, Triangulation>> pairs = {
      {polygon(5), polygon(5)}, {polygon(4), polygon(6)}, {octahedral_sphere(2), s0()}, {polygon(3), polygon(4)}};
  for (const auto& [a, b] : pairs) {
    auto j = join(a, b);
    auto fa = face_vector(a), fb = face_vector(b), fj = face_vector(j);
    for (int k = 0; k <= j.dim(); ++k) CHECK(fj.f(k) == join_count(fa, fb, k));
  }
  CHECK(join(polygon(3), polygon(4)).kind() == Kind::Explicit);
}

TEST_CASE("barycentric subdivision") {
  auto hex = barycentric_subdivision(polygon(3));
  CHECK(canonical_form(hex) == canonical_form(polygon(6)));
  auto b3 = barycentric_subdivision(simplex_boundary(3));
  CHECK(b3.num_vertices() == 14);
  CHECK(verify_sphere(b3, 2).ok);
  auto b4 = barycentric_subdivision(simplex_boundary(4));
  CHECK(b4.num_vertices() == 30);
  CHECK(verify_sphere(b4, 3).ok);
  const auto faces = barycentric_vertex_faces(simplex_boundary(4));
  int found = 0;
  for (const auto& e : b4.edges()) {
    const bool tet_tri = (faces[e.u].size() == 3 && faces[e.v].size() == 4);
    if (!tet_tri) continue;
    CHECK_FALSE(edge_in_square(b4, e.u, e.v));
    CHECK(edge_link_size(b4, e.u, e.v) >= 5);
    ++found;
  }
  CHECK(found == 20);
}

TEST_CASE("named triangulations") {
  auto a = t9();
  CHECK(a.num_vertices() == 9);
  CHECK(a.num_edges() == 21);
  CHECK(verify_sphere(a, 2).ok);
  auto b = t10();
  CHECK(gamma2(b) == 1);
  CHECK(b.num_edges() == 35);
  auto c = t12();
  CHECK(c.num_vertices() == 12);
  CHECK(c.num_edges() == 45);
  CHECK(gamma2(c) == 1);
  CHECK(verify_sphere(c, 3).ok);
  CHECK_FALSE(is_suspension(c).has_value());
  for (const auto& e : c.edges()) CHECK(edge_in_square(c, e.u, e.v));
}

TEST_CASE("T12 symmetries") {
  const auto t = t12();
  CHECK(is_automorphism(t, {{3, 6}, {1, 2}, {7, 5}, {4, 8}, {9, 11}}));
  CHECK(is_automorphism(t, {{0, 2, 4, 3, 5, 7, 6, 8, 1}, {9, 11, 10}}));
  // The 3-cycle on the apexes has to run against the printed direction.
  CHECK_FALSE(is_automorphism(t, {{0, 2, 4, 3, 5, 7, 6, 8, 1}, {9, 10, 11}}));
}

TEST_CASE("doubling") {
  auto o = octahedral_sphere(3);
  auto d = double_along_vertex(o, 0);
  CHECK(d.complex.num_vertices() == 2 * 7 - 6);
  CHECK(gamma2(d.complex) == 0);
  const auto t = t12();
  for (int u : {0, 9}) {
    auto dd = double_along_vertex(t, u);
    CHECK(dd.complex.num_vertices() == 2 * 11 - t.degree(u));
    CHECK(gamma2(dd.complex) == 2);
    CHECK(verify_sphere(dd.complex, 3).ok);
    for (const auto& e : dd.complex.edges()) CHECK(edge_in_square(dd.complex, e.u, e.v));
    auto f = fold_map(dd, t, u);
    CHECK(std::abs(degree(f, dd.complex, t)) == 1);
  }
  CHECK_THROWS_AS(double_along_vertex(t, 12), Error);
}

TEST_CASE("incremental triangulations") {
  const auto base = suspension(polygon(5));  // poles 5 and 6
  IncrementalTrace bare{base, {}, {}};
  auto r0 = build_incremental(bare);
  CHECK(r0.theta == 0);
  CHECK(gamma2(r0.complex) == 0);
  CHECK(r0.trace.theta_history == std::vector<std::int64_t>{0});
  CHECK_FALSE(r0.map_to_t10.has_value());

  IncrementalTrace one{base, {{{0, 1, 2, 3, 4}, {5}, -1}}, {}};
  auto r1 = build_incremental(one);
  CHECK(r1.theta == 1);
  CHECK(gamma2(r1.complex) == 1);
  CHECK(canonical_form(r1.complex) == canonical_form(t10()));
  REQUIRE(r1.map_to_t10.has_value());
  CHECK(std::abs(*r1.map_to_t10->verified_degree) == 1);

  // A square step (star of 0) followed by the star of the north pole.
  IncrementalTrace two{base, {{{1, 5, 4, 6}, {0}, -1}, {{8, 1, 2, 3, 4}, {5}, -1}}, {}};
  auto r2 = build_incremental(two);
  CHECK(r2.trace.theta_history == std::vector<std::int64_t>{0, 0, 1});
  CHECK(gamma2(r2.complex) == 1);
  CHECK(verify_sphere(r2.complex, 3).ok);
  REQUIRE(r2.map_to_t10.has_value());
  CHECK(std::abs(degree(*r2.map_to_t10, r2.complex, t10())) == 1);

  IncrementalTrace chord{base, {{{0, 1, 2, 3}, {5}, -1}}, {}};
  CHECK_THROWS_AS(build_incremental(chord), Error);
  IncrementalTrace not_disc{base, {{{0, 5, 2, 6}, {}, -1}}, {}};
  CHECK_THROWS_AS(build_incremental(not_disc), Error);
}
