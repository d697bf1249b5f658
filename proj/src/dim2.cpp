#include "flagsphere/dim2.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "flagsphere/canonical.hpp"
#include "flagsphere/generators.hpp"

namespace flagsphere {

namespace {

struct Outer {
  int a = -1;
  int b = -1;
};

// Outer neighbours of a valence-4 edge, when both endpoints have valence 4.
std::optional<Outer> outer_vertices(const Triangulation& t, int x, int y) {
  if (t.degree(x) != 4 || t.degree(y) != 4) return std::nullopt;
  VertexSet ax = t.neighbors(x) - t.neighbors(y);
  VertexSet by = t.neighbors(y) - t.neighbors(x);
  ax.erase(y);
  by.erase(x);
  if (ax.size() != 1 || by.size() != 1) return std::nullopt;
  return Outer{ax.first(), by.first()};
}

void require_unit_degree(VertexMap& m, const Triangulation& s, const Triangulation& t, const char* what) {
  const auto d = verify_degree(m, s, t);
  if (d != 1 && d != -1) throw Error(ErrorKind::AssertionFailed, std::string(what) + " has degree " + std::to_string(d));
}

std::vector<VertexSet> components(const std::vector<VertexSet>& adj, const VertexSet& vertices) {
  std::vector<VertexSet> out;
  VertexSet left = vertices;
  while (!left.empty()) {
    VertexSet comp;
    comp.insert(left.first());
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](int v) { next |= adj[v] & vertices; });
      frontier = next - comp;
      comp |= next;
    }
    out.push_back(comp);
    left -= comp;
  }
  return out;
}

bool connected(const std::vector<VertexSet>& adj) {
  if (adj.empty()) return true;
  return components(adj, VertexSet::range(static_cast<int>(adj.size()))).size() == 1;
}

bool is_octahedron(const Triangulation& t) {
  return t.num_vertices() == 6 && canonical_form(t) == canonical_form(octahedral_sphere(2));
}

Triangulation as_flag_if_possible(const Triangulation& t) {
  if (t.kind() == Kind::Explicit && is_flag(t)) return to_flag(t);
  return t;
}

}  // namespace

std::optional<Edge> find_elementary_reduction(const Triangulation& t) {
  if (t.kind() != Kind::Flag) return std::nullopt;
  for (const auto& e : t.edges()) {
    auto o = outer_vertices(t, e.u, e.v);
    if (o && !t.adjacent(o->a, o->b)) return e;
  }
  return std::nullopt;
}

Reduction apply_elementary_reduction(const Triangulation& t, Edge e) {
  if (t.kind() != Kind::Flag || e.u < 0 || e.v < 0 || e.u >= t.num_vertices() || e.v >= t.num_vertices() ||
      !t.adjacent(e.u, e.v)) {
    throw Error(ErrorKind::InvalidReduction, "not an edge of a flag complex");
  }
  auto o = outer_vertices(t, e.u, e.v);
  if (!o || t.adjacent(o->a, o->b)) throw Error(ErrorKind::InvalidReduction, "edge does not admit an elementary reduction");
  auto r = collapse_edge(t, e.u, e.v);
  Reduction out{r.complex, VertexMap{r.old_to_new, std::nullopt}};
  require_unit_degree(out.projection, t, out.complex, "reduction projection");
  return out;
}

std::optional<std::array<int, 3>> find_empty_triangle(const Triangulation& t) {
  if (t.kind() == Kind::Flag) return std::nullopt;
  const int n = t.num_vertices();
  for (int a = 0; a < n; ++a) {
    const VertexSet na = t.neighbors(a);
    for (int b = na.next(a); b >= 0; b = na.next(b)) {
      const VertexSet nab = na & t.neighbors(b);
      for (int c = nab.next(b); c >= 0; c = nab.next(c)) {
        if (!t.has_face(VertexSet{a, b, c})) return std::array<int, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

TriangleSplit split_along_triangle(const Triangulation& t, const std::array<int, 3>& tri) {
  const VertexSet cap{tri[0], tri[1], tri[2]};
  if (t.dim() != 2 || cap.size() != 3 || t.has_face(cap) || !t.adjacent(tri[0], tri[1]) ||
      !t.adjacent(tri[1], tri[2]) || !t.adjacent(tri[0], tri[2])) {
    throw Error(ErrorKind::InvalidInput, "not an empty triangle of a 2-complex");
  }
  const auto sides = components(t.adjacency(), t.vertex_set() - cap);
  if (sides.size() != 2) throw Error(ErrorKind::AssertionFailed, "empty triangle does not separate the sphere in two");
  const auto triangles = t.faces(3);
  TriangleSplit out{{t, t}, {}};
  for (int i = 0; i < 2; ++i) {
    const VertexSet keep = sides[i] | cap;
    std::vector<int> new_id(t.num_vertices(), -1);
    int next = 0;
    keep.for_each([&](int v) { new_id[v] = next++; });
    auto renumber = [&](const VertexSet& f) {
      VertexSet r;
      f.for_each([&](int v) { r.insert(new_id[v]); });
      return r;
    };
    std::vector<VertexSet> faces{renumber(cap)};
    for (const auto& f : triangles) {
      if (f.is_subset_of(keep)) faces.push_back(renumber(f));
    }
    out.halves[i] = as_flag_if_possible(Triangulation::explicit_faces(next, 2, faces));
    VertexMap p;
    p.image.resize(t.num_vertices());
    for (int v = 0; v < t.num_vertices(); ++v) p.image[v] = keep.contains(v) ? new_id[v] : new_id[tri[0]];
    require_unit_degree(p, t, out.halves[i], "split projection");
    out.projections[i] = std::move(p);
  }
  return out;
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::ElementaryReduction: return "ELEMENTARY_REDUCTION";
    case StepKind::EmptyTriangleSplit: return "EMPTY_TRIANGLE_SPLIT";
    case StepKind::Terminal: return "TERMINAL";
  }
  return "?";
}

namespace {

bool decide(const Triangulation& t, int depth, std::vector<ReductionStep>& log) {
  if (t.num_vertices() == 4) {
    log.push_back({StepKind::Terminal, depth, {}, {face_vector(t)}, "tetrahedron boundary: not positive"});
    return false;
  }
  if (auto tri = find_empty_triangle(t)) {
    auto split = split_along_triangle(t, *tri);
    log.push_back({StepKind::EmptyTriangleSplit, depth, {(*tri)[0], (*tri)[1], (*tri)[2]},
                   {face_vector(split.halves[0]), face_vector(split.halves[1])}, ""});
    return decide(split.halves[0], depth + 1, log) || decide(split.halves[1], depth + 1, log);
  }
  Triangulation cur = as_flag_if_possible(t);
  while (auto e = find_elementary_reduction(cur)) {
    auto r = apply_elementary_reduction(cur, *e);
    log.push_back({StepKind::ElementaryReduction, depth, {e->u, e->v}, {face_vector(r.complex)}, ""});
    cur = r.complex;
  }
  const bool oct = is_octahedron(cur);
  log.push_back({StepKind::Terminal, depth, {}, {face_vector(cur)},
                 oct ? "octahedron: not positive" : "no reduction applies: positive"});
  return !oct;
}

std::optional<VertexMap> witness(const Triangulation& t, std::uint64_t budget) {
  if (t.num_vertices() == 4) return std::nullopt;
  if (auto tri = find_empty_triangle(t)) {
    auto split = split_along_triangle(t, *tri);
    for (int i = 0; i < 2; ++i) {
      if (auto m = witness(split.halves[i], budget)) return compose(split.projections[i], *m);
    }
    return std::nullopt;
  }
  Triangulation cur = as_flag_if_possible(t);
  VertexMap total = identity_map(t.num_vertices());
  while (auto e = find_elementary_reduction(cur)) {
    auto r = apply_elementary_reduction(cur, *e);
    total = compose(total, r.projection);
    cur = r.complex;
  }
  if (is_octahedron(cur)) return std::nullopt;
  auto found = dominates_bruteforce(cur, t9(), {true, budget});
  if (found.status == SearchStatus::Timeout) throw Error(ErrorKind::Timeout, "terminal map search exceeded its budget");
  if (found.status != SearchStatus::Found) {
    throw Error(ErrorKind::AssertionFailed, "irreducible flag sphere without a degree-one map to T9");
  }
  return compose(total, *found.map);
}

}  // namespace

PositivityResult positive_sv(const Triangulation& t) {
  auto v = verify_sphere(t, 2);
  if (!v) throw Error(ErrorKind::NotASphere, v.reason);
  PositivityResult r;
  r.positive = decide(t, 0, r.log);
  return r;
}

std::string format_log(const std::vector<ReductionStep>& log) {
  std::ostringstream out;
  for (const auto& s : log) {
    out << std::string(2 * s.depth, ' ') << to_string(s.kind);
    if (!s.data.empty()) {
      out << " [";
      for (std::size_t i = 0; i < s.data.size(); ++i) out << (i ? " " : "") << s.data[i];
      out << "]";
    }
    for (const auto& f : s.results) {
      out << " f=(";
      for (std::size_t i = 1; i < f.counts.size(); ++i) out << (i > 1 ? "," : "") << f.counts[i];
      out << ")";
    }
    if (!s.note.empty()) out << " " << s.note;
    out << "\n";
  }
  return out.str();
}

VertexMap witness_map_to_t9(const Triangulation& t, std::uint64_t node_budget) {
  auto v = verify_sphere(t, 2);
  if (!v) throw Error(ErrorKind::NotASphere, v.reason);
  auto m = witness(t, node_budget);
  if (!m) throw Error(ErrorKind::NotPositive, "M(T) has vanishing simplicial volume");
  require_unit_degree(*m, t, t9(), "witness map");
  return *m;
}

namespace {

class MinorSearch {
 public:
  MinorSearch(const std::vector<VertexSet>& g1, const std::vector<VertexSet>& g2, std::uint64_t budget)
      : g1_(g1), g2_(g2), budget_(budget), n1_(static_cast<int>(g1.size())) {
    for (const auto& row : g1) e1_ += row.size();
    e1_ /= 2;
    deg1_.resize(n1_);
    for (int v = 0; v < n1_; ++v) deg1_[v] = g1[v].size();
    // g1 vertices by decreasing degree, then by adjacency to earlier ones.
    std::vector<bool> placed(n1_, false);
    std::vector<int> links(n1_, 0);
    for (int step = 0; step < n1_; ++step) {
      int best = -1;
      for (int v = 0; v < n1_; ++v) {
        if (placed[v]) continue;
        if (best < 0 || links[v] > links[best] || (links[v] == links[best] && deg1_[v] > deg1_[best])) best = v;
      }
      placed[best] = true;
      order_.push_back(best);
      g1[best].for_each([&](int w) { ++links[w]; });
    }
  }

  MinorSearchResult run() {
    MinorSearchResult res;
    std::vector<VertexSet> branches;
    for (std::size_t v = 0; v < g2_.size(); ++v) branches.push_back(VertexSet{static_cast<int>(v)});
    try {
      if (contract(branches)) {
        res.status = SearchStatus::Found;
        res.witness = witness_;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Timeout) throw;
      res.status = SearchStatus::Timeout;
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) throw Error(ErrorKind::Timeout, "minor search budget exhausted");
  }

  std::vector<VertexSet> quotient(const std::vector<VertexSet>& branches) const {
    const int k = static_cast<int>(branches.size());
    std::vector<VertexSet> reach(k);
    for (int i = 0; i < k; ++i) branches[i].for_each([&](int v) { reach[i] |= g2_[v]; });
    std::vector<VertexSet> h(k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (reach[i].intersects(branches[j])) {
          h[i].insert(j);
          h[j].insert(i);
        }
      }
    }
    return h;
  }

  bool contract(const std::vector<VertexSet>& branches) {
    tick();
    const auto h = quotient(branches);
    int edges = 0;
    for (const auto& row : h) edges += row.size();
    if (edges / 2 < e1_) return false;
    const int k = static_cast<int>(branches.size());
    if (k == n1_) return embed(branches, h);
    for (int i = 0; i < k; ++i) {
      for (int j = h[i].next(i); j >= 0; j = h[i].next(j)) {
        std::vector<VertexSet> merged;
        for (int c = 0; c < k; ++c) {
          if (c == j) continue;
          merged.push_back(c == i ? (branches[i] | branches[j]) : branches[c]);
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> key;
        for (const auto& b : merged) key.push_back({b.word(0), b.word(1)});
        std::sort(key.begin(), key.end());
        if (!seen_.insert(key).second) continue;
        if (contract(merged)) return true;
      }
    }
    return false;
  }

  // Bijection g1 -> quotient vertices carrying edges to edges.
  bool embed(const std::vector<VertexSet>& branches, const std::vector<VertexSet>& h) {
    std::vector<int> phi(n1_, -1);
    VertexSet used;
    auto rec = [&](auto&& self, int depth) -> bool {
      if (depth == n1_) return true;
      const int v = order_[depth];
      for (int x = 0; x < n1_; ++x) {
        if (used.contains(x) || h[x].size() < deg1_[v]) continue;
        bool ok = true;
        g1_[v].for_each([&](int u) {
          if (phi[u] >= 0 && !h[x].contains(phi[u])) ok = false;
        });
        if (!ok) continue;
        tick();
        phi[v] = x;
        used.insert(x);
        if (self(self, depth + 1)) return true;
        used.erase(x);
        phi[v] = -1;
      }
      return false;
    };
    if (!rec(rec, 0)) return false;
    witness_.branch_of.assign(g2_.size(), -1);
    for (int v = 0; v < n1_; ++v) branches[phi[v]].for_each([&](int w) { witness_.branch_of[w] = v; });
    return true;
  }

  const std::vector<VertexSet>& g1_;
  const std::vector<VertexSet>& g2_;
  std::uint64_t budget_;
  int n1_;
  int e1_ = 0;
  std::vector<int> deg1_;
  std::vector<int> order_;
  std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> seen_;
  std::uint64_t nodes_ = 0;
  MinorWitness witness_;
};

}  // namespace

MinorSearchResult minor_witness_search(const std::vector<VertexSet>& g1, const std::vector<VertexSet>& g2,
                                       std::uint64_t budget) {
  if (g1.empty() || !connected(g1) || !connected(g2)) {
    throw Error(ErrorKind::InvalidInput, "minor search needs connected nonempty graphs");
  }
  if (g1.size() > g2.size()) return {};
  return MinorSearch(g1, g2, budget).run();
}

bool is_minor_witness(const MinorWitness& w, const std::vector<VertexSet>& g1, const std::vector<VertexSet>& g2) {
  const int n1 = static_cast<int>(g1.size());
  if (w.branch_of.size() != g2.size()) return false;
  std::vector<VertexSet> branch(n1);
  for (std::size_t v = 0; v < g2.size(); ++v) {
    const int b = w.branch_of[v];
    if (b < 0 || b >= n1) return false;
    branch[b].insert(static_cast<int>(v));
  }
  for (int b = 0; b < n1; ++b) {
    if (branch[b].empty() || components(g2, branch[b]).size() != 1) return false;
  }
  for (int u = 0; u < n1; ++u) {
    VertexSet reach;
    branch[u].for_each([&](int v) { reach |= g2[v]; });
    bool ok = true;
    g1[u].for_each([&](int x) {
      if (!reach.intersects(branch[x])) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

VertexMap minor_to_map(const MinorWitness& w, const Triangulation& t2, const Triangulation& t1) {
  if (!is_minor_witness(w, t1.adjacency(), t2.adjacency())) {
    throw Error(ErrorKind::InvalidWitness, "branch sets do not form a minor model");
  }
  VertexMap m{w.branch_of, std::nullopt};
  if (!validate(m, t2, t1)) throw Error(ErrorKind::AssertionFailed, "minor labelling is not simplicial");
  require_unit_degree(m, t2, t1, "minor labelling");
  return m;
}

}  // namespace flagsphere
