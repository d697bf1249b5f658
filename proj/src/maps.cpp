#include "flagsphere/maps.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "flagsphere/canonical.hpp"

namespace flagsphere {

namespace {

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] > v[j]) sign = -sign;
    }
  }
  return sign;
}

void check_map_shape(const VertexMap& m, const Triangulation& source, const Triangulation& target) {
  if (m.source_size() != source.num_vertices()) {
    throw Error(ErrorKind::InvalidInput, "map size does not match the source vertex count");
  }
  for (int x : m.image) {
    if (x < 0 || x >= target.num_vertices()) {
      throw Error(ErrorKind::InvalidInput, "map image out of range");
    }
  }
}

}  // namespace

bool validate(const VertexMap& m, const Triangulation& source, const Triangulation& target) {
  if (m.source_size() != source.num_vertices()) return false;
  for (int x : m.image) {
    if (x < 0 || x >= target.num_vertices()) return false;
  }
  if (target.kind() == Kind::Flag) {
    for (const auto& e : source.edges()) {
      int a = m[e.u], b = m[e.v];
      if (a != b && !target.adjacent(a, b)) return false;
    }
    return true;
  }
  for (const auto& f : source.facets()) {
    VertexSet img;
    f.for_each([&](int v) { img.insert(m[v]); });
    if (!target.has_face(img)) return false;
  }
  return true;
}

int Orientation::sign_of(const VertexSet& face) const {
  auto it = std::lower_bound(top_faces.begin(), top_faces.end(), face,
                             [](const VertexSet& a, const VertexSet& b) { return lex_less(a, b); });
  if (it == top_faces.end() || !(*it == face)) return 0;
  return sign[it - top_faces.begin()];
}

Orientation orient(const Triangulation& t) {
  const int d = t.dim();
  Orientation o;
  o.top_faces = t.faces(d + 1);
  const int m = static_cast<int>(o.top_faces.size());
  if (m == 0) throw Error(ErrorKind::NotPseudomanifold, "no top-dimensional faces");
  o.sign.assign(m, 0);
  struct Incidence {
    int face;
    int position;
  };
  std::unordered_map<VertexSet, std::vector<Incidence>, VertexSetHash> ridges;
  ridges.reserve(static_cast<std::size_t>(m) * (d + 1));
  for (int i = 0; i < m; ++i) {
    auto verts = o.top_faces[i].to_vector();
    for (int p = 0; p <= d; ++p) {
      VertexSet r = o.top_faces[i];
      r.erase(verts[p]);
      ridges[r].push_back({i, p});
    }
  }
  for (const auto& [r, inc] : ridges) {
    if (inc.size() != 2) throw Error(ErrorKind::NotPseudomanifold, "a codimension-one face does not have two cofaces");
  }
  std::vector<std::vector<std::pair<int, int>>> dual(m);  // (neighbour, relative sign)
  for (const auto& [r, inc] : ridges) {
    const int rel = ((inc[0].position + inc[1].position) % 2 == 0) ? -1 : 1;
    dual[inc[0].face].push_back({inc[1].face, rel});
    dual[inc[1].face].push_back({inc[0].face, rel});
  }
  o.sign[0] = 1;
  std::deque<int> queue{0};
  int seen = 1;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (auto [g, rel] : dual[f]) {
      int want = rel * o.sign[f];
      if (o.sign[g] == 0) {
        o.sign[g] = want;
        ++seen;
        queue.push_back(g);
      } else if (o.sign[g] != want) {
        throw Error(ErrorKind::NotOrientable, "inconsistent orientation around a codimension-one face");
      }
    }
  }
  if (seen != m) throw Error(ErrorKind::NotPseudomanifold, "dual graph is disconnected");
  return o;
}

std::int64_t degree(const VertexMap& m, const Triangulation& source, const Orientation& source_or,
                    const Triangulation& target, const Orientation& target_or) {
  if (source.dim() != target.dim()) throw Error(ErrorKind::DimensionMismatch, "source and target dimensions differ");
  check_map_shape(m, source, target);
  if (!validate(m, source, target)) throw Error(ErrorKind::NotSimplicial, "map is not simplicial");
  std::vector<std::int64_t> per_face(target_or.top_faces.size(), 0);
  for (std::size_t i = 0; i < source_or.top_faces.size(); ++i) {
    auto verts = source_or.top_faces[i].to_vector();
    std::vector<int> img(verts.size());
    VertexSet img_set;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      img[k] = m[verts[k]];
      img_set.insert(img[k]);
    }
    if (img_set.size() != static_cast<int>(verts.size())) continue;
    auto it = std::lower_bound(target_or.top_faces.begin(), target_or.top_faces.end(), img_set,
                               [](const VertexSet& a, const VertexSet& b) { return lex_less(a, b); });
    if (it == target_or.top_faces.end() || !(*it == img_set)) continue;
    const auto j = it - target_or.top_faces.begin();
    per_face[j] += source_or.sign[i] * permutation_sign(img) * target_or.sign[j];
  }
  const std::int64_t deg = per_face.front();
  for (auto x : per_face) {
    if (x != deg) throw Error(ErrorKind::AssertionFailed, "degree depends on the reference top face");
  }
  return deg;
}

std::int64_t degree(const VertexMap& m, const Triangulation& source, const Triangulation& target) {
  return degree(m, source, orient(source), target, orient(target));
}

std::int64_t verify_degree(VertexMap& m, const Triangulation& source, const Triangulation& target) {
  m.verified_degree = degree(m, source, target);
  return *m.verified_degree;
}

VertexMap compose(const VertexMap& first, const VertexMap& second) {
  VertexMap out;
  out.image.resize(first.image.size());
  for (std::size_t v = 0; v < first.image.size(); ++v) out.image[v] = second[first[v]];
  return out;
}

VertexMap identity_map(int n) {
  VertexMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

namespace {

class BruteForce {
 public:
  BruteForce(const Triangulation& source, const Triangulation& target, const BruteForceOptions& options)
      : src_(source),
        tgt_(target),
        opt_(options),
        src_or_(orient(source)),
        tgt_or_(orient(target)),
        ns_(source.num_vertices()),
        nt_(target.num_vertices()) {
    closed_.resize(nt_);
    for (int v = 0; v < nt_; ++v) {
      closed_[v] = target.neighbors(v);
      closed_[v].insert(v);
    }
    build_order();
    // Target top face used for the early degree test at leaves.
    ref_face_ = tgt_or_.top_faces.front();
    // Graph automorphisms are complex automorphisms only for flag targets.
    if (target.kind() == Kind::Flag) {
      orbit_rep_ = vertex_orbits(target.adjacency());
    } else {
      orbit_rep_.resize(nt_);
      std::iota(orbit_rep_.begin(), orbit_rep_.end(), 0);
    }
    image_.assign(ns_, -1);
    hits_.assign(nt_, 0);
  }

  DominanceResult run() {
    DominanceResult res;
    if (ns_ < nt_) {
      res.status = SearchStatus::None;
      return res;
    }
    bool found = false;
    try {
      found = extend(0, nt_);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Timeout) throw;
      res.status = SearchStatus::Timeout;
      res.nodes = nodes_;
      return res;
    }
    res.nodes = nodes_;
    if (found) {
      res.status = SearchStatus::Found;
      res.map = witness_;
    } else {
      res.status = SearchStatus::None;
    }
    return res;
  }

 private:
  // Highest-degree vertex first, then repeatedly the vertex with most
  // already-ordered neighbours.
  void build_order() {
    std::vector<bool> placed(ns_, false);
    std::vector<int> links(ns_, 0);
    for (int step = 0; step < ns_; ++step) {
      int best = -1;
      for (int v = 0; v < ns_; ++v) {
        if (placed[v]) continue;
        if (best < 0 || links[v] > links[best] ||
            (links[v] == links[best] && src_.degree(v) > src_.degree(best))) {
          best = v;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      src_.neighbors(best).for_each([&](int w) { ++links[w]; });
    }
  }

  bool extend(int depth, int unhit) {
    if (unhit > ns_ - depth) return false;
    if (depth == ns_) return check_leaf();
    const int v = order_[depth];
    VertexSet cand = tgt_.vertex_set();
    src_.neighbors(v).for_each([&](int u) {
      if (image_[u] >= 0) cand &= closed_[image_[u]];
    });
    if (depth == 0) {
      VertexSet reps;
      for (int x = 0; x < nt_; ++x) {
        if (orbit_rep_[x] == x) reps.insert(x);
      }
      cand &= reps;
    }
    // Unhit targets first; once surjectivity is tight, only unhit ones.
    VertexSet unhit_set;
    for (int x = 0; x < nt_; ++x) {
      if (hits_[x] == 0) unhit_set.insert(x);
    }
    const bool tight = unhit == ns_ - depth;
    VertexSet first = cand & unhit_set;
    VertexSet second = tight ? VertexSet{} : cand - unhit_set;
    for (const VertexSet* part : {&first, &second}) {
      for (int x = part->first(); x >= 0; x = part->next(x)) {
        if (++nodes_ > opt_.node_budget) throw Error(ErrorKind::Timeout, "node budget exhausted");
        image_[v] = x;
        const bool fresh = hits_[x]++ == 0;
        if (extend(depth + 1, unhit - (fresh ? 1 : 0))) return true;
        --hits_[x];
        image_[v] = -1;
      }
    }
    return false;
  }

  bool check_leaf() {
    VertexMap m;
    m.image = image_;
    if (tgt_.kind() != Kind::Flag && !validate(m, src_, tgt_)) return false;
    // Quick signed count over the reference face before the full degree.
    std::int64_t count = 0;
    for (std::size_t i = 0; i < src_or_.top_faces.size(); ++i) {
      VertexSet img;
      src_or_.top_faces[i].for_each([&](int w) { img.insert(image_[w]); });
      if (img == ref_face_) count += 1;
    }
    if (count == 0) return false;
    std::int64_t deg = degree(m, src_, src_or_, tgt_, tgt_or_);
    if (deg == 0) return false;
    if (opt_.require_unit_degree && deg != 1 && deg != -1) return false;
    m.verified_degree = deg;
    witness_ = std::move(m);
    return true;
  }

  const Triangulation& src_;
  const Triangulation& tgt_;
  BruteForceOptions opt_;
  Orientation src_or_;
  Orientation tgt_or_;
  int ns_;
  int nt_;
  std::vector<VertexSet> closed_;
  std::vector<int> order_;
  std::vector<int> orbit_rep_;
  std::vector<int> image_;
  std::vector<int> hits_;
  VertexSet ref_face_;
  std::uint64_t nodes_ = 0;
  VertexMap witness_;
};

}  // namespace

DominanceResult dominates_bruteforce(const Triangulation& source, const Triangulation& target,
                                     const BruteForceOptions& options) {
  if (source.dim() != target.dim()) throw Error(ErrorKind::DimensionMismatch, "source and target dimensions differ");
  return BruteForce(source, target, options).run();
}

}  // namespace flagsphere
