#include "flagsphere/generators.hpp"

#include <algorithm>

namespace flagsphere {

Triangulation polygon(int n) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "a polygon needs at least 3 sides");
  if (n > kMaxVertices) throw Error(ErrorKind::OutOfRange, "polygon exceeds vertex capacity");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  if (n >= 4) return Triangulation::flag(n, 1, edges);
  std::vector<VertexSet> faces;
  for (const auto& e : edges) faces.push_back(VertexSet{e.u, e.v});
  return Triangulation::explicit_faces(n, 1, faces);
}

Triangulation s0() { return Triangulation::flag(2, 0, std::vector<Edge>{}); }

Triangulation octahedral_sphere(int n) {
  if (n < 1 || n > 3) throw Error(ErrorKind::OutOfRange, "octahedral sphere dimension must be 1, 2 or 3");
  const int verts = 2 * (n + 1);
  std::vector<Edge> edges;
  for (int a = 0; a < verts; ++a) {
    for (int b = a + 1; b < verts; ++b) {
      if (a / 2 != b / 2) edges.push_back({a, b});
    }
  }
  return Triangulation::flag(verts, n, edges);
}

Triangulation simplex_boundary(int k) {
  if (k < 1 || k > 4) throw Error(ErrorKind::OutOfRange, "simplex boundary dimension must be in [1, 4]");
  std::vector<VertexSet> faces;
  for (int skip = 0; skip <= k; ++skip) {
    VertexSet f = VertexSet::range(k + 1);
    f.erase(skip);
    faces.push_back(f);
  }
  return Triangulation::explicit_faces(k + 1, k - 1, faces);
}

Triangulation join(const Triangulation& a, const Triangulation& b) {
  const int dim = a.dim() + b.dim() + 1;
  if (dim > 3) throw Error(ErrorKind::DimensionOverflow, "join would exceed dimension 3");
  const int na = a.num_vertices();
  const int nb = b.num_vertices();
  if (na + nb > kMaxVertices) throw Error(ErrorKind::OutOfRange, "join exceeds vertex capacity");
  auto shift = [&](const VertexSet& s) {
    VertexSet r;
    s.for_each([&](int v) { r.insert(v + na); });
    return r;
  };
  const VertexSet all_a = VertexSet::range(na);
  const VertexSet all_b = shift(VertexSet::range(nb));
  std::vector<VertexSet> adj(na + nb);
  for (int v = 0; v < na; ++v) adj[v] = a.neighbors(v) | all_b;
  for (int v = 0; v < nb; ++v) adj[v + na] = shift(b.neighbors(v)) | all_a;
  if (a.kind() == Kind::Flag && b.kind() == Kind::Flag) {
    return Triangulation::flag_unchecked(dim, std::move(adj));
  }
  std::vector<VertexSet> faces;
  for (const auto& fa : a.facets()) {
    for (const auto& fb : b.facets()) faces.push_back(fa | shift(fb));
  }
  return Triangulation::explicit_unchecked(dim, std::move(adj), std::move(faces));
}

Triangulation suspension(const Triangulation& t) { return join(t, s0()); }

std::vector<VertexSet> barycentric_vertex_faces(const Triangulation& t) {
  std::vector<VertexSet> faces;
  for (int k = 1; k <= t.dim() + 1; ++k) {
    auto layer = t.faces(k);
    faces.insert(faces.end(), layer.begin(), layer.end());
  }
  return faces;
}

Triangulation barycentric_subdivision(const Triangulation& t) {
  const auto faces = barycentric_vertex_faces(t);
  const int n = static_cast<int>(faces.size());
  if (n > kMaxVertices) throw Error(ErrorKind::OutOfRange, "barycentric subdivision exceeds vertex capacity");
  std::vector<VertexSet> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool nested = (faces[i].is_subset_of(faces[j]) || faces[j].is_subset_of(faces[i])) && !(faces[i] == faces[j]);
      if (nested) {
        adj[i].insert(j);
        adj[j].insert(i);
      }
    }
  }
  return Triangulation::flag_unchecked(t.dim(), std::move(adj));
}

Triangulation t9() {
  // Triangular prism 0-1-2 / 3-4-5 with a centre on each lateral square.
  const std::vector<Edge> edges = {
      {0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5},
      {0, 6}, {1, 6}, {3, 6}, {4, 6}, {1, 7}, {2, 7}, {4, 7}, {5, 7},
      {0, 8}, {2, 8}, {3, 8}, {5, 8},
  };
  return Triangulation::flag(9, 2, edges);
}

Triangulation t10() { return join(polygon(5), polygon(5)); }

Triangulation t12() {
  // Vertices 0..8 in the cyclic order below are joined when their cyclic
  // distance is at most 3; 9, 10, 11 each cone over two of the three
  // residue classes {0,3,6}, {2,5,8}, {1,4,7}.
  static constexpr int kCycle[9] = {0, 2, 4, 3, 5, 7, 6, 8, 1};
  std::vector<Edge> edges;
  for (int i = 0; i < 9; ++i) {
    for (int step = 1; step <= 3; ++step) {
      int a = kCycle[i], b = kCycle[(i + step) % 9];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  const std::vector<std::vector<int>> apex_neighbours = {
      {0, 3, 6, 1, 4, 7},  // 9
      {2, 5, 8, 1, 4, 7},  // 10
      {0, 3, 6, 2, 5, 8},  // 11
  };
  for (int k = 0; k < 3; ++k) {
    for (int v : apex_neighbours[k]) edges.push_back({v, 9 + k});
  }
  return Triangulation::flag(12, 3, edges);
}

Doubling double_along_vertex(const Triangulation& t, int u) {
  const int n = t.num_vertices();
  if (u < 0 || u >= n) throw Error(ErrorKind::VertexNotPresent, "vertex " + std::to_string(u));
  if (t.kind() != Kind::Flag) throw Error(ErrorKind::NotFlag, "doubling requires a flag complex");
  const VertexSet lk = t.neighbors(u);
  Doubling d{Triangulation::flag_unchecked(t.dim(), {}), std::vector<int>(n, -1), std::vector<int>(n, -1)};
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (v != u) d.first_copy[v] = next++;
  }
  for (int v = 0; v < n; ++v) {
    if (v == u) continue;
    d.second_copy[v] = lk.contains(v) ? d.first_copy[v] : next++;
  }
  if (next > kMaxVertices) throw Error(ErrorKind::OutOfRange, "doubling exceeds vertex capacity");
  std::vector<VertexSet> adj(next);
  for (const auto& e : t.edges()) {
    if (e.u == u || e.v == u) continue;
    for (const auto* copy : {&d.first_copy, &d.second_copy}) {
      int a = (*copy)[e.u], b = (*copy)[e.v];
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }
  d.complex = Triangulation::flag_unchecked(t.dim(), std::move(adj));
  return d;
}

VertexMap fold_map(const Doubling& d, const Triangulation& original, int u) {
  VertexMap m;
  m.image.assign(d.complex.num_vertices(), u);
  for (int v = 0; v < original.num_vertices(); ++v) {
    if (v != u) m.image[d.second_copy[v]] = v;
  }
  return m;
}

std::int64_t ball_theta(int f0, int f1, int boundary_f0) {
  return 11 - 5 * static_cast<std::int64_t>(f0) + f1 + boundary_f0;
}

namespace {

int count_edges(const std::vector<VertexSet>& adj) {
  int twice = 0;
  for (const auto& row : adj) twice += row.size();
  return twice / 2;
}

[[noreturn]] void invalid_step(std::size_t step, const std::string& why) {
  throw Error(ErrorKind::InvalidStep, "step " + std::to_string(step) + ": " + why);
}

// Checks that `disc` spans a disc in the boundary sphere whose boundary is the
// given chordless cycle.
void validate_disc(const std::vector<VertexSet>& adj, const VertexSet& boundary_sphere,
                   const std::vector<int>& cycle, const std::vector<int>& interior, std::size_t step) {
  const int m = static_cast<int>(cycle.size());
  if (m < 4) invalid_step(step, "disc boundary must have at least 4 vertices");
  VertexSet cyc, inner;
  for (int v : cycle) {
    if (v < 0 || v >= static_cast<int>(adj.size()) || cyc.contains(v)) invalid_step(step, "bad boundary vertex");
    cyc.insert(v);
  }
  for (int v : interior) {
    if (v < 0 || v >= static_cast<int>(adj.size()) || inner.contains(v) || cyc.contains(v)) {
      invalid_step(step, "bad interior vertex");
    }
    inner.insert(v);
  }
  const VertexSet disc = cyc | inner;
  if (!disc.is_subset_of(boundary_sphere)) invalid_step(step, "disc is not contained in the boundary sphere");
  for (int i = 0; i < m; ++i) {
    int a = cycle[i];
    for (int j = i + 1; j < m; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == m - 1);
      if (adj[a].contains(cycle[j]) != consecutive) invalid_step(step, "boundary is not a full cycle");
    }
  }
  // Edge/triangle incidences inside the disc.
  int vertices = disc.size(), edges = 0, triangles = 0;
  for (int a = disc.first(); a >= 0; a = disc.next(a)) {
    VertexSet nb = adj[a] & disc;
    for (int b = nb.next(a); b >= 0; b = nb.next(b)) {
      ++edges;
      const int cofaces = (nb & adj[b]).size();
      const bool boundary_edge = cyc.contains(a) && cyc.contains(b);
      if (cofaces != (boundary_edge ? 1 : 2)) invalid_step(step, "subcomplex is not a disc with the given boundary");
      VertexSet third = nb & adj[b];
      for (int c = third.next(b); c >= 0; c = third.next(c)) ++triangles;
    }
  }
  if (vertices - edges + triangles != 1) invalid_step(step, "disc has Euler characteristic != 1");
  VertexSet seen;
  seen.insert(disc.first());
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    frontier.for_each([&](int v) { next |= adj[v] & disc; });
    frontier = next - seen;
    seen |= next;
  }
  if (!(seen == disc)) invalid_step(step, "disc is disconnected");
}

}  // namespace

IncrementalResult build_incremental(const IncrementalTrace& trace) {
  const Triangulation& base = trace.base;
  if (base.kind() != Kind::Flag || !verify_sphere(base, 2)) {
    throw Error(ErrorKind::InvalidStep, "base must be a flag 2-sphere");
  }
  const int nb = base.num_vertices();
  const int total = nb + 2 + static_cast<int>(trace.steps.size());
  if (total > kMaxVertices) throw Error(ErrorKind::OutOfRange, "incremental triangulation exceeds vertex capacity");

  std::vector<VertexSet> adj = base.adjacency();
  const int cone_apex = nb;
  adj.push_back(VertexSet::range(nb));
  for (int v = 0; v < nb; ++v) adj[v].insert(cone_apex);
  VertexSet boundary = VertexSet::range(nb);

  IncrementalResult res{Triangulation::flag_unchecked(3, {}), 0, trace, std::nullopt};
  res.trace.theta_history.clear();
  std::int64_t theta = ball_theta(static_cast<int>(adj.size()), count_edges(adj), boundary.size());
  if (theta != 0) throw Error(ErrorKind::AssertionFailed, "theta of a cone must vanish");
  res.trace.theta_history.push_back(theta);

  struct Growth {
    std::vector<int> cycle;
    VertexSet apex, disc_interior, ball_interior, rest_of_boundary;
  };
  std::optional<Growth> growth;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    validate_disc(adj, boundary, step.boundary_cycle, step.interior, i);
    VertexSet disc, inner;
    for (int v : step.boundary_cycle) disc.insert(v);
    for (int v : step.interior) inner.insert(v);
    disc |= inner;
    const int apex = static_cast<int>(adj.size());
    const int m = static_cast<int>(step.boundary_cycle.size());
    if (m >= 5 && !growth) {
      Growth g;
      g.cycle = step.boundary_cycle;
      g.apex.insert(apex);
      g.disc_interior = inner;
      g.ball_interior = VertexSet::range(apex) - boundary;
      g.rest_of_boundary = boundary - disc;
      growth = g;
    }
    adj.push_back(disc);
    disc.for_each([&](int v) { adj[v].insert(apex); });
    boundary -= inner;
    boundary.insert(apex);
    res.trace.steps[i].apex = apex;
    const std::int64_t next = ball_theta(static_cast<int>(adj.size()), count_edges(adj), boundary.size());
    if (next != theta + m - 4) throw Error(ErrorKind::AssertionFailed, "theta bookkeeping mismatch");
    theta = next;
    res.trace.theta_history.push_back(theta);
  }

  const int closing = static_cast<int>(adj.size());
  adj.push_back(boundary);
  boundary.for_each([&](int v) { adj[v].insert(closing); });
  res.complex = Triangulation::flag_unchecked(3, std::move(adj));
  res.theta = theta;
  if (gamma2(res.complex) != theta) throw Error(ErrorKind::AssertionFailed, "gamma2 differs from final theta");

  if (growth) {
    // First pentagon of T10 is 0..4, second 5..9.
    VertexMap f;
    f.image.assign(res.complex.num_vertices(), 9);
    for (std::size_t k = 0; k < growth->cycle.size(); ++k) f.image[growth->cycle[k]] = std::min<int>(static_cast<int>(k), 4);
    growth->apex.for_each([&](int v) { f.image[v] = 5; });
    growth->disc_interior.for_each([&](int v) { f.image[v] = 6; });
    growth->ball_interior.for_each([&](int v) { f.image[v] = 7; });
    growth->rest_of_boundary.for_each([&](int v) { f.image[v] = 8; });
    const auto deg = verify_degree(f, res.complex, t10());
    if (deg != 1 && deg != -1) throw Error(ErrorKind::AssertionFailed, "incremental map to T10 has degree != +-1");
    res.map_to_t10 = std::move(f);
  }
  return res;
}

}  // namespace flagsphere
