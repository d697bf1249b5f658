#include "flagsphere/complex.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace flagsphere {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::FaceNotPresent: return "FaceNotPresent";
    case ErrorKind::EdgeNotPresent: return "EdgeNotPresent";
    case ErrorKind::VertexNotPresent: return "VertexNotPresent";
    case ErrorKind::NotFlag: return "NotFlag";
    case ErrorKind::EdgeInSquare: return "EdgeInSquare";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotPseudomanifold: return "NotPseudomanifold";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::NotAlmostOmniscient: return "NotAlmostOmniscient";
    case ErrorKind::ExtensionNotSimplicial: return "ExtensionNotSimplicial";
    case ErrorKind::InvalidReduction: return "InvalidReduction";
    case ErrorKind::NotASphere: return "NotASphere";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::AssertionFailed: return "AssertionFailed";
    case ErrorKind::Timeout: return "Timeout";
  }
  return "Unknown";
}

namespace {

VertexSet above(int v) {
  VertexSet s = VertexSet::range(kMaxVertices);
  return s - VertexSet::range(v + 1);
}

// Visits every clique (as a vertex set) with at most max_size vertices, in
// lexicographic order of the sorted vertex lists.
void visit_cliques(const std::vector<VertexSet>& adj, VertexSet current, VertexSet candidates,
                   int max_size, const std::function<void(const VertexSet&)>& visit) {
  for (int v = candidates.first(); v >= 0; v = candidates.next(v)) {
    VertexSet next = current;
    next.insert(v);
    visit(next);
    if (next.size() < max_size) {
      visit_cliques(adj, next, candidates & adj[v] & above(v), max_size, visit);
    }
  }
}

void k_cliques(const std::vector<VertexSet>& adj, VertexSet current, VertexSet candidates,
               int remaining, std::vector<VertexSet>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int v = candidates.first(); v >= 0; v = candidates.next(v)) {
    VertexSet next = current;
    next.insert(v);
    k_cliques(adj, next, candidates & adj[v] & above(v), remaining - 1, out);
  }
}

std::int64_t count_k_cliques(const std::vector<VertexSet>& adj, VertexSet candidates,
                             int remaining) {
  if (remaining == 1) return candidates.size();
  std::int64_t total = 0;
  for (int v = candidates.first(); v >= 0; v = candidates.next(v)) {
    total += count_k_cliques(adj, candidates & adj[v] & above(v), remaining - 1);
  }
  return total;
}

void bron_kerbosch(const std::vector<VertexSet>& adj, VertexSet r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
  if (p.empty()) {
    if (x.empty()) out.push_back(r);
    return;
  }
  int pivot = (p | x).first();
  int best = -1;
  for (int u = (p | x).first(); u >= 0; u = (p | x).next(u)) {
    int c = (p & adj[u]).size();
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  VertexSet candidates = p - adj[pivot];
  for (int v = candidates.first(); v >= 0; v = candidates.next(v)) {
    VertexSet r2 = r;
    r2.insert(v);
    bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out);
    p.erase(v);
    x.insert(v);
  }
}

void sort_faces(std::vector<VertexSet>& faces) {
  std::sort(faces.begin(), faces.end(), [](const VertexSet& a, const VertexSet& b) { return lex_less(a, b); });
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
}

std::vector<VertexSet> maximal_only(std::vector<VertexSet> faces) {
  sort_faces(faces);
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].empty()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < faces.size() && !dominated; ++j) {
      dominated = j != i && faces[i].is_subset_of(faces[j]) && !(faces[i] == faces[j]);
    }
    if (!dominated) out.push_back(faces[i]);
  }
  return out;
}

std::vector<VertexSet> adjacency_of_faces(int n, const std::vector<VertexSet>& faces) {
  std::vector<VertexSet> adj(n);
  for (const auto& f : faces) {
    f.for_each([&](int a) {
      VertexSet others = f;
      others.erase(a);
      adj[a] |= others;
    });
  }
  return adj;
}

void check_edge(const Triangulation& t, int u, int v) {
  if (u < 0 || v < 0 || u >= t.num_vertices() || v >= t.num_vertices() || !t.adjacent(u, v)) {
    throw Error(ErrorKind::EdgeNotPresent,
                "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
}

}  // namespace

Triangulation Triangulation::flag_unchecked(int dim, std::vector<VertexSet> adjacency) {
  Triangulation t;
  t.adj_ = std::move(adjacency);
  t.dim_ = dim;
  t.kind_ = Kind::Flag;
  return t;
}

Triangulation Triangulation::explicit_unchecked(int dim, std::vector<VertexSet> adjacency,
                                                std::vector<VertexSet> maximal_faces) {
  Triangulation t;
  t.adj_ = std::move(adjacency);
  t.faces_ = std::move(maximal_faces);
  sort_faces(t.faces_);
  t.dim_ = dim;
  t.kind_ = Kind::Explicit;
  return t;
}

Triangulation Triangulation::flag(int n, int dim, std::span<const Edge> edges) {
  if (n < 2 || n > kMaxVertices) {
    throw Error(ErrorKind::InvalidInput, "vertex count " + std::to_string(n) + " outside [2, 128]");
  }
  std::vector<VertexSet> adj(n);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw Error(ErrorKind::InvalidInput,
                  "bad edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return flag(dim, std::move(adj));
}

Triangulation Triangulation::flag(int dim, std::vector<VertexSet> adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n < 2 || n > kMaxVertices) {
    throw Error(ErrorKind::InvalidInput, "vertex count " + std::to_string(n) + " outside [2, 128]");
  }
  if (dim < 0 || dim > 3) throw Error(ErrorKind::InvalidInput, "dimension must be in [0, 3]");
  const VertexSet all = VertexSet::range(n);
  for (int v = 0; v < n; ++v) {
    if (adjacency[v].contains(v) || !adjacency[v].is_subset_of(all)) {
      throw Error(ErrorKind::InvalidInput, "adjacency row " + std::to_string(v) + " is invalid");
    }
    for (int w = adjacency[v].first(); w >= 0; w = adjacency[v].next(w)) {
      if (!adjacency[w].contains(v)) {
        throw Error(ErrorKind::InvalidInput, "adjacency is not symmetric");
      }
    }
  }
  if (count_k_cliques(adjacency, all, dim + 2) != 0) {
    throw Error(ErrorKind::InvalidInput,
                "clique complex has dimension above " + std::to_string(dim));
  }
  return flag_unchecked(dim, std::move(adjacency));
}

Triangulation Triangulation::explicit_faces(int n, int dim, std::vector<VertexSet> maximal_faces) {
  if (n < 2 || n > kMaxVertices) {
    throw Error(ErrorKind::InvalidInput, "vertex count " + std::to_string(n) + " outside [2, 128]");
  }
  if (dim < 0 || dim > 3) throw Error(ErrorKind::InvalidInput, "dimension must be in [0, 3]");
  const VertexSet all = VertexSet::range(n);
  VertexSet covered;
  for (const auto& f : maximal_faces) {
    if (f.empty() || !f.is_subset_of(all) || f.size() > dim + 1) {
      throw Error(ErrorKind::InvalidInput, "face outside vertex range or above dimension");
    }
    covered |= f;
  }
  if (!(covered == all)) throw Error(ErrorKind::InvalidInput, "some vertex lies in no face");
  for (std::size_t i = 0; i < maximal_faces.size(); ++i) {
    for (std::size_t j = 0; j < maximal_faces.size(); ++j) {
      if (i != j && maximal_faces[i].is_subset_of(maximal_faces[j])) {
        throw Error(ErrorKind::InvalidInput, "a listed face is contained in another");
      }
    }
  }
  auto adj = adjacency_of_faces(n, maximal_faces);
  return explicit_unchecked(dim, std::move(adj), std::move(maximal_faces));
}

int Triangulation::num_edges() const {
  int twice = 0;
  for (const auto& row : adj_) twice += row.size();
  return twice / 2;
}

std::vector<Edge> Triangulation::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (int u = 0; u < num_vertices(); ++u) {
    VertexSet higher = adj_[u] & above(u);
    for (int v = higher.first(); v >= 0; v = higher.next(v)) out.push_back({u, v});
  }
  return out;
}

std::vector<VertexSet> Triangulation::faces(int k) const {
  std::vector<VertexSet> out;
  if (k < 1) return out;
  if (kind_ == Kind::Flag) {
    k_cliques(adj_, VertexSet{}, vertex_set(), k, out);
    return out;
  }
  for (const auto& f : faces_) {
    auto verts = f.to_vector();
    const int m = static_cast<int>(verts.size());
    if (m < k) continue;
    for (unsigned mask = 0; mask < (1U << m); ++mask) {
      if (std::popcount(mask) != k) continue;
      VertexSet s;
      for (int i = 0; i < m; ++i) {
        if (mask & (1U << i)) s.insert(verts[i]);
      }
      out.push_back(s);
    }
  }
  sort_faces(out);
  return out;
}

std::int64_t Triangulation::count_faces(int k) const {
  if (k < 1) return k == 0 ? 1 : 0;
  if (kind_ == Kind::Flag) return count_k_cliques(adj_, vertex_set(), k);
  return static_cast<std::int64_t>(faces(k).size());
}

std::vector<VertexSet> Triangulation::facets() const {
  if (kind_ == Kind::Explicit) return faces_;
  std::vector<VertexSet> out;
  bron_kerbosch(adj_, VertexSet{}, vertex_set(), VertexSet{}, out);
  sort_faces(out);
  return out;
}

bool Triangulation::has_face(const VertexSet& s) const {
  if (s.empty()) return true;
  if (!s.is_subset_of(vertex_set())) return false;
  if (kind_ == Kind::Flag) {
    bool clique = true;
    s.for_each([&](int v) {
      VertexSet rest = s;
      rest.erase(v);
      if (!rest.is_subset_of(adj_[v])) clique = false;
    });
    return clique;
  }
  return std::any_of(faces_.begin(), faces_.end(), [&](const VertexSet& f) { return s.is_subset_of(f); });
}

std::int64_t FVector::euler() const {
  std::int64_t chi = 0;
  for (int i = 0; i <= top_dim(); ++i) chi += (i % 2 == 0 ? 1 : -1) * f(i);
  return chi;
}

FVector face_vector(const Triangulation& t) {
  FVector fv;
  fv.counts.push_back(1);
  if (t.kind() == Kind::Flag) {
    std::vector<std::int64_t> by_size(5, 0);
    visit_cliques(t.adjacency(), VertexSet{}, t.vertex_set(), 4,
                  [&](const VertexSet& c) { ++by_size[c.size()]; });
    int top = 0;
    for (int k = 1; k <= 4; ++k) {
      if (by_size[k] > 0) top = k;
    }
    for (int k = 1; k <= top; ++k) fv.counts.push_back(by_size[k]);
    return fv;
  }
  int top = 0;
  for (const auto& f : t.stored_faces()) top = std::max(top, f.size());
  for (int k = 1; k <= top; ++k) fv.counts.push_back(static_cast<std::int64_t>(t.faces(k).size()));
  return fv;
}

bool is_flag(const Triangulation& t) {
  if (t.kind() == Kind::Flag) return true;
  std::vector<VertexSet> cliques;
  bron_kerbosch(t.adjacency(), VertexSet{}, t.vertex_set(), VertexSet{}, cliques);
  return std::all_of(cliques.begin(), cliques.end(), [&](const VertexSet& c) { return t.has_face(c); });
}

Relabelled induced_subcomplex(const Triangulation& t, const VertexSet& vertices, int dim) {
  Relabelled out{Triangulation::flag_unchecked(dim, {}), vertices.to_vector()};
  const int k = static_cast<int>(out.to_parent.size());
  std::vector<int> to_child(t.num_vertices(), -1);
  for (int i = 0; i < k; ++i) to_child[out.to_parent[i]] = i;
  auto map_set = [&](const VertexSet& s) {
    VertexSet r;
    (s & vertices).for_each([&](int v) { r.insert(to_child[v]); });
    return r;
  };
  std::vector<VertexSet> adj(k);
  for (int i = 0; i < k; ++i) adj[i] = map_set(t.neighbors(out.to_parent[i]));
  if (t.kind() == Kind::Flag) {
    out.complex = Triangulation::flag_unchecked(dim, std::move(adj));
  } else {
    std::vector<VertexSet> faces;
    for (const auto& f : t.stored_faces()) {
      VertexSet r = map_set(f);
      if (!r.empty()) faces.push_back(r);
    }
    out.complex = Triangulation::explicit_unchecked(dim, std::move(adj), maximal_only(std::move(faces)));
  }
  return out;
}

Relabelled link(const Triangulation& t, const VertexSet& face) {
  if (face.empty() || !t.has_face(face)) throw Error(ErrorKind::FaceNotPresent, "face not in complex");
  const int link_dim = t.dim() - face.size();
  if (t.kind() == Kind::Flag) {
    VertexSet common = t.vertex_set();
    face.for_each([&](int v) { common &= t.neighbors(v); });
    if (common.empty()) throw Error(ErrorKind::FaceNotPresent, "face is maximal; its link is empty");
    return induced_subcomplex(t, common, std::max(link_dim, 0));
  }
  std::vector<VertexSet> faces;
  VertexSet support;
  for (const auto& f : t.stored_faces()) {
    if (face.is_subset_of(f) && !(f == face)) {
      faces.push_back(f - face);
      support |= f - face;
    }
  }
  if (faces.empty()) throw Error(ErrorKind::FaceNotPresent, "face is maximal; its link is empty");
  Relabelled out{Triangulation::flag_unchecked(0, {}), support.to_vector()};
  std::vector<int> to_child(t.num_vertices(), -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) to_child[out.to_parent[i]] = static_cast<int>(i);
  std::vector<VertexSet> mapped;
  for (const auto& f : faces) {
    VertexSet r;
    f.for_each([&](int v) { r.insert(to_child[v]); });
    mapped.push_back(r);
  }
  auto adj = adjacency_of_faces(static_cast<int>(out.to_parent.size()), mapped);
  out.complex = Triangulation::explicit_unchecked(std::max(link_dim, 0), std::move(adj), std::move(mapped));
  return out;
}

std::vector<Square> squares_containing(const Triangulation& t, int u, int v) {
  check_edge(t, u, v);
  std::vector<Square> out;
  VertexSet cs = t.neighbors(v) - t.neighbors(u);
  cs.erase(u);
  VertexSet ds = t.neighbors(u) - t.neighbors(v);
  ds.erase(v);
  for (int c = cs.first(); c >= 0; c = cs.next(c)) {
    VertexSet hit = ds & t.neighbors(c);
    for (int d = hit.first(); d >= 0; d = hit.next(d)) out.push_back({u, v, c, d});
  }
  return out;
}

bool edge_in_square(const Triangulation& t, int u, int v) {
  VertexSet cs = t.neighbors(v) - t.neighbors(u);
  cs.erase(u);
  VertexSet ds = t.neighbors(u) - t.neighbors(v);
  ds.erase(v);
  for (int c = cs.first(); c >= 0; c = cs.next(c)) {
    if (t.neighbors(c).intersects(ds)) return true;
  }
  return false;
}

Triangulation subdivide_edge(const Triangulation& t, int u, int v) {
  check_edge(t, u, v);
  if (t.kind() != Kind::Flag) throw Error(ErrorKind::NotFlag, "subdivision requires a flag complex");
  const int n = t.num_vertices();
  if (n + 1 > kMaxVertices) throw Error(ErrorKind::OutOfRange, "vertex capacity exceeded");
  std::vector<VertexSet> adj = t.adjacency();
  VertexSet mid = adj[u] & adj[v];
  mid.insert(u);
  mid.insert(v);
  adj[u].erase(v);
  adj[v].erase(u);
  mid.for_each([&](int w) { adj[w].insert(n); });
  adj.push_back(mid);
  return Triangulation::flag_unchecked(t.dim(), std::move(adj));
}

CollapseResult collapse_edge(const Triangulation& t, int u, int v, bool preserve_flag) {
  check_edge(t, u, v);
  const int keep = std::min(u, v);
  const int drop = std::max(u, v);
  const bool in_square = t.kind() == Kind::Flag && edge_in_square(t, u, v);
  if (preserve_flag && in_square) {
    throw Error(ErrorKind::EdgeInSquare,
                "edge {" + std::to_string(keep) + "," + std::to_string(drop) + "} lies in a square");
  }
  const int n = t.num_vertices();
  CollapseResult res{Triangulation::flag_unchecked(t.dim(), {}), std::vector<int>(n)};
  for (int i = 0; i < n; ++i) res.old_to_new[i] = i < drop ? i : i - 1;
  res.old_to_new[drop] = keep;
  auto map_set = [&](const VertexSet& s) {
    VertexSet r;
    s.for_each([&](int w) { r.insert(res.old_to_new[w]); });
    return r;
  };
  if (t.kind() == Kind::Flag && !in_square) {
    std::vector<VertexSet> adj(n - 1);
    for (int i = 0; i < n; ++i) {
      VertexSet row = map_set(t.neighbors(i));
      int img = res.old_to_new[i];
      row.erase(img);
      adj[img] |= row;
    }
    res.complex = Triangulation::flag_unchecked(t.dim(), std::move(adj));
    return res;
  }
  std::vector<VertexSet> faces;
  for (const auto& f : t.facets()) faces.push_back(map_set(f));
  faces = maximal_only(std::move(faces));
  auto adj = adjacency_of_faces(n - 1, faces);
  res.complex = Triangulation::explicit_unchecked(t.dim(), std::move(adj), std::move(faces));
  return res;
}

bool is_connected(const Triangulation& t) {
  const int n = t.num_vertices();
  if (n == 0) return true;
  VertexSet seen;
  seen.insert(0);
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    frontier.for_each([&](int v) { next |= t.neighbors(v); });
    frontier = next - seen;
    seen |= next;
  }
  return seen.size() == n;
}

namespace {

SphereVerdict fail(const std::string& why) { return {false, why}; }

// Number of faces one larger than the given ridge that contain it.
int coface_count(const Triangulation& t, const VertexSet& ridge) {
  if (t.kind() == Kind::Flag) {
    VertexSet common = t.vertex_set();
    ridge.for_each([&](int v) { common &= t.neighbors(v); });
    return common.size();
  }
  int c = 0;
  for (const auto& f : t.stored_faces()) {
    if (ridge.is_subset_of(f)) ++c;
  }
  return c;
}

}  // namespace

SphereVerdict verify_sphere(const Triangulation& t, int d) {
  const int n = t.num_vertices();
  if (d == 0) {
    if (n == 2 && t.num_edges() == 0) return {true, "S0"};
    return fail("S0 needs exactly two isolated vertices");
  }
  if (!is_connected(t)) return fail("disconnected");
  const auto facets = t.facets();
  for (const auto& f : facets) {
    if (f.size() != d + 1) {
      return fail("not pure of dimension " + std::to_string(d) + " (facet of size " +
                  std::to_string(f.size()) + ")");
    }
  }
  if (d == 1) {
    for (int v = 0; v < n; ++v) {
      if (t.degree(v) != 2) return fail("vertex " + std::to_string(v) + " does not have degree 2");
    }
    return {true, "S1"};
  }
  if (d != 2 && d != 3) return fail("unsupported dimension");
  for (const auto& ridge : t.faces(d)) {
    if (coface_count(t, ridge) != 2) {
      return fail("not a pseudomanifold: a " + std::to_string(d - 1) + "-face has " +
                  std::to_string(coface_count(t, ridge)) + " cofaces");
    }
  }
  for (int v = 0; v < n; ++v) {
    VertexSet single;
    single.insert(v);
    auto lk = link(t, single);
    auto sub = verify_sphere(lk.complex, d - 1);
    if (!sub) return fail("link of vertex " + std::to_string(v) + ": " + sub.reason);
  }
  const auto chi = face_vector(t).euler();
  const std::int64_t want = d == 2 ? 2 : 0;
  if (chi != want) return fail("Euler characteristic " + std::to_string(chi));
  return {true, d == 2 ? "S2" : "S3-consistent"};
}

std::optional<std::pair<int, int>> is_suspension(const Triangulation& t) {
  const int n = t.num_vertices();
  for (int u = 0; u < n; ++u) {
    if (t.degree(u) != n - 2) continue;
    for (int v = u + 1; v < n; ++v) {
      if (t.degree(v) == n - 2 && !t.adjacent(u, v)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

Triangulation relabel(const Triangulation& t, std::span<const int> perm) {
  const int n = t.num_vertices();
  auto map_set = [&](const VertexSet& s) {
    VertexSet r;
    s.for_each([&](int w) { r.insert(perm[w]); });
    return r;
  };
  std::vector<VertexSet> adj(n);
  for (int v = 0; v < n; ++v) adj[perm[v]] = map_set(t.neighbors(v));
  if (t.kind() == Kind::Flag) return Triangulation::flag_unchecked(t.dim(), std::move(adj));
  std::vector<VertexSet> faces;
  for (const auto& f : t.stored_faces()) faces.push_back(map_set(f));
  return Triangulation::explicit_unchecked(t.dim(), std::move(adj), std::move(faces));
}

Triangulation to_explicit(const Triangulation& t) {
  if (t.kind() == Kind::Explicit) return t;
  return Triangulation::explicit_unchecked(t.dim(), t.adjacency(), t.facets());
}

Triangulation to_flag(const Triangulation& t) {
  if (t.kind() == Kind::Flag) return t;
  if (!is_flag(t)) throw Error(ErrorKind::NotFlag, "complex has a clique that is not a face");
  return Triangulation::flag_unchecked(t.dim(), t.adjacency());
}

}  // namespace flagsphere
