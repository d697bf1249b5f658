#include "flagsphere/localpic.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "flagsphere/generators.hpp"

namespace flagsphere {

namespace {

void require_edge(const Triangulation& t, int x, int y) {
  const int n = t.num_vertices();
  if (x < 0 || y < 0 || x >= n || y >= n || x == y || !t.adjacent(x, y)) {
    throw Error(ErrorKind::EdgeNotPresent, "edge {" + std::to_string(x) + "," + std::to_string(y) + "}");
  }
}

VertexSet far_vertices(const Triangulation& t, int x, int y) {
  VertexSet far = t.vertex_set() - t.neighbors(x) - t.neighbors(y);
  far.erase(x);
  far.erase(y);
  return far;
}

// Walks a cycle given by its vertex set and adjacency, starting from the
// smallest vertex towards its smaller neighbour.
std::vector<int> cycle_order(const std::vector<VertexSet>& adj, const VertexSet& cycle) {
  std::vector<int> order;
  const int start = cycle.first();
  int prev = -1, cur = start;
  do {
    order.push_back(cur);
    VertexSet nb = adj[cur] & cycle;
    if (nb.size() != 2) throw Error(ErrorKind::InvalidInput, "edge link is not a cycle");
    int a = nb.first(), b = nb.next(a);
    int next = (prev < 0) ? a : (a == prev ? b : a);
    prev = cur;
    cur = next;
  } while (cur != start && static_cast<int>(order.size()) <= cycle.size());
  if (static_cast<int>(order.size()) != cycle.size()) throw Error(ErrorKind::InvalidInput, "edge link is not a single cycle");
  return order;
}

}  // namespace

VertexSet LocalPicture::interior(int side) const {
  VertexSet s;
  for (int v = 0; v < num_vertices(); ++v) {
    if (hemisphere[v] == side) s.insert(v);
  }
  return s;
}

LocalPicture extract(const Triangulation& t, int x, int y) {
  require_edge(t, x, y);
  const VertexSet nx = t.neighbors(x), ny = t.neighbors(y);
  const VertexSet eq = nx & ny;
  VertexSet north = nx - ny, south = ny - nx;
  north.erase(y);
  south.erase(x);
  const VertexSet all = eq | north | south;

  LocalPicture p;
  p.x = x;
  p.y = y;
  p.far = far_vertices(t, x, y);
  p.ambient = all.to_vector();
  const int n = p.num_vertices();
  std::vector<int> local(t.num_vertices(), -1);
  for (int i = 0; i < n; ++i) local[p.ambient[i]] = i;

  std::vector<VertexSet> adj(n);
  p.cross.assign(n, VertexSet{});
  p.hemisphere.assign(n, -1);
  VertexSet eq_local;
  for (int i = 0; i < n; ++i) {
    const int a = p.ambient[i];
    p.hemisphere[i] = eq.contains(a) ? -1 : (north.contains(a) ? 0 : 1);
    if (p.hemisphere[i] < 0) eq_local.insert(i);
    if (t.neighbors(a).intersects(p.far)) p.marked.insert(i);
  }
  for (int i = 0; i < n; ++i) {
    const int a = p.ambient[i];
    (t.neighbors(a) & all).for_each([&](int b) {
      const int j = local[b];
      const bool across = p.hemisphere[i] >= 0 && p.hemisphere[j] >= 0 && p.hemisphere[i] != p.hemisphere[j];
      (across ? p.cross[i] : adj[i]).insert(j);
    });
  }
  p.equator = cycle_order(adj, eq_local);
  p.sphere = Triangulation::flag_unchecked(2, std::move(adj));
  return p;
}

bool is_almost_omniscient(const Triangulation& t, int x, int y) {
  require_edge(t, x, y);
  return far_vertices(t, x, y).size() == 1;
}

namespace {

class PictureSearch {
 public:
  PictureSearch(const LocalPicture& s, const LocalPicture& t, std::uint64_t budget)
      : s_(s), t_(t), budget_(budget), ns_(s.num_vertices()), nt_(t.num_vertices()) {
    closed_.resize(nt_);
    loose_.resize(nt_);
    for (int v = 0; v < nt_; ++v) {
      closed_[v] = t.sphere.neighbors(v);
      closed_[v].insert(v);
      loose_[v] = closed_[v] | t.cross[v];
    }
    VertexSet eq;
    for (int v : t.equator) eq.insert(v);
    for (int side = 0; side < 2; ++side) closed_side_[side] = t.interior(side) | eq;
    build_order();
    image_.assign(ns_, -1);
  }

  PictureSearchResult run() {
    PictureSearchResult res;
    const int m = static_cast<int>(s_.equator.size());
    const int n = static_cast<int>(t_.equator.size());
    if (m < n) return res;
    std::vector<int> advance(m, 0);
    try {
      for (int dir : {1, -1}) {
        for (int offset = 0; offset < n; ++offset) {
          if (patterns(advance, 0, n, dir, offset)) {
            res.status = SearchStatus::Found;
            res.map = found_;
            res.nodes = nodes_;
            return res;
          }
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Timeout) throw;
      res.status = SearchStatus::Timeout;
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  // Interior vertices in breadth-first order from the equator.
  void build_order() {
    VertexSet seen;
    for (int v : s_.equator) seen.insert(v);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](int v) { next |= s_.sphere.neighbors(v) | s_.cross[v]; });
      next -= seen;
      next.for_each([&](int v) { order_.push_back(v); });
      seen |= next;
      frontier = next;
    }
    for (int v = 0; v < ns_; ++v) {
      if (!seen.contains(v)) order_.push_back(v);
    }
  }

  void tick() {
    if (++nodes_ > budget_) throw Error(ErrorKind::Timeout, "picture search budget exhausted");
  }

  // Chooses which equator steps advance; exactly `remaining` more must.
  bool patterns(std::vector<int>& advance, int i, int remaining, int dir, int offset) {
    const int m = static_cast<int>(s_.equator.size());
    if (remaining > m - i) return false;
    if (i == m) return try_equator(advance, dir, offset);
    if (remaining > 0) {
      advance[i] = 1;
      if (patterns(advance, i + 1, remaining - 1, dir, offset)) return true;
    }
    advance[i] = 0;
    return patterns(advance, i + 1, remaining, dir, offset);
  }

  bool try_equator(const std::vector<int>& advance, int dir, int offset) {
    tick();
    const int m = static_cast<int>(s_.equator.size());
    const int n = static_cast<int>(t_.equator.size());
    int pos = offset;
    for (int i = 0; i < m; ++i) {
      const int v = s_.equator[i];
      const int img = t_.equator[pos];
      if (s_.marked.contains(v) && !t_.marked.contains(img)) return false;
      image_[v] = img;
      pos = ((pos + dir * advance[i]) % n + n) % n;
    }
    for (bool swap : {false, true}) {
      swap_ = swap;
      if (assign(0)) return true;
    }
    return false;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) {
      found_ = PictureMap{VertexMap{image_, std::nullopt}, swap_};
      return true;
    }
    const int v = order_[depth];
    const int side = s_.hemisphere[v];
    VertexSet cand = closed_side_[swap_ ? 1 - side : side];
    if (s_.marked.contains(v)) cand &= t_.marked;
    s_.sphere.neighbors(v).for_each([&](int u) {
      if (image_[u] >= 0) cand &= closed_[image_[u]];
    });
    s_.cross[v].for_each([&](int u) {
      if (image_[u] >= 0) cand &= loose_[image_[u]];
    });
    for (int x = cand.first(); x >= 0; x = cand.next(x)) {
      tick();
      image_[v] = x;
      if (assign(depth + 1)) return true;
    }
    image_[v] = -1;
    return false;
  }

  const LocalPicture& s_;
  const LocalPicture& t_;
  std::uint64_t budget_;
  int ns_;
  int nt_;
  std::vector<VertexSet> closed_;
  std::vector<VertexSet> loose_;
  VertexSet closed_side_[2];
  std::vector<int> order_;
  std::vector<int> image_;
  bool swap_ = false;
  std::uint64_t nodes_ = 0;
  PictureMap found_;
};

}  // namespace

PictureSearchResult find_picture_map(const LocalPicture& source, const LocalPicture& target, std::uint64_t budget) {
  return PictureSearch(source, target, budget).run();
}

bool is_picture_map(const LocalPicture& source, const LocalPicture& target, const PictureMap& pm) {
  const auto& f = pm.map;
  if (f.source_size() != source.num_vertices()) return false;
  for (int v = 0; v < source.num_vertices(); ++v) {
    if (f[v] < 0 || f[v] >= target.num_vertices()) return false;
  }
  if (!validate(f, source.sphere, target.sphere)) return false;

  // Equator: steps of 0 or a fixed direction, winding exactly once.
  const int m = static_cast<int>(source.equator.size());
  const int n = static_cast<int>(target.equator.size());
  std::vector<int> pos_in_target(target.num_vertices(), -1);
  for (int i = 0; i < n; ++i) pos_in_target[target.equator[i]] = i;
  int total = 0, dir = 0;
  for (int i = 0; i < m; ++i) {
    const int a = pos_in_target[f[source.equator[i]]];
    const int b = pos_in_target[f[source.equator[(i + 1) % m]]];
    if (a < 0 || b < 0) return false;
    int step = ((b - a) % n + n) % n;
    if (step == n - 1) step = -1;
    if (step != 0 && step != 1 && step != -1) return false;
    if (step != 0) {
      if (dir != 0 && step != dir) return false;
      dir = step;
    }
    total += step;
  }
  if (total != n && total != -n) return false;

  // Each closed hemisphere lands in the paired closed hemisphere.
  for (int v = 0; v < source.num_vertices(); ++v) {
    const int side = source.hemisphere[v];
    if (side < 0) continue;
    const int want = pm.swap ? 1 - side : side;
    const int got = target.hemisphere[f[v]];
    if (got >= 0 && got != want) return false;
  }
  for (int v = 0; v < source.num_vertices(); ++v) {
    bool ok = true;
    source.cross[v].for_each([&](int u) {
      const int a = f[v], b = f[u];
      if (a != b && !target.sphere.adjacent(a, b) && !target.cross[a].contains(b)) ok = false;
    });
    if (!ok) return false;
    if (source.marked.contains(v) && !target.marked.contains(f[v])) return false;
  }
  return true;
}

VertexMap extend_to_global(const PictureMap& pm, const LocalPicture& source, const LocalPicture& target,
                           const Triangulation& source_t, const Triangulation& target_t) {
  if (target.far.size() != 1) {
    throw Error(ErrorKind::NotAlmostOmniscient, "target edge has " + std::to_string(target.far.size()) +
                                                    " vertices adjacent to neither endpoint");
  }
  const int far = target.far.first();
  VertexMap g;
  g.image.assign(source_t.num_vertices(), far);
  for (int v = 0; v < source.num_vertices(); ++v) g.image[source.ambient[v]] = target.ambient[pm.map[v]];
  g.image[source.x] = pm.swap ? target.y : target.x;
  g.image[source.y] = pm.swap ? target.x : target.y;
  if (!validate(g, source_t, target_t)) {
    throw Error(ErrorKind::ExtensionNotSimplicial, "extension of a picture map is not simplicial");
  }
  const auto d = verify_degree(g, source_t, target_t);
  if (d != 1 && d != -1) throw Error(ErrorKind::AssertionFailed, "extension of a picture map has degree " + std::to_string(d));
  return g;
}

VertexMap edgelink5_map(const Triangulation& t, int a, int b) {
  require_edge(t, a, b);
  if (edge_in_square(t, a, b)) throw Error(ErrorKind::EdgeInSquare, "edge lies in a square");
  const VertexSet lk = t.neighbors(a) & t.neighbors(b);
  const int k = lk.size();
  if (k < 5) throw Error(ErrorKind::InvalidInput, "edge link has fewer than 5 vertices");
  VertexMap f;
  f.image.assign(t.num_vertices(), 4);
  (t.neighbors(a) - t.neighbors(b)).for_each([&](int v) { f.image[v] = 0; });
  (t.neighbors(b) - t.neighbors(a)).for_each([&](int v) { f.image[v] = 3; });
  const auto cycle = cycle_order(t.adjacency(), lk);
  for (int i = 0; i < k; ++i) f.image[cycle[i]] = 5 + (5 * i) / k;
  f.image[a] = 1;
  f.image[b] = 2;
  const auto target = t10();
  const auto d = verify_degree(f, t, target);
  if (d != 1 && d != -1) throw Error(ErrorKind::AssertionFailed, "edge-link map has degree " + std::to_string(d));
  return f;
}

std::vector<CertifyTarget> default_targets() {
  return {
      {"T10", t10(), {{1, 2}}},
      {"T12", t12(), {{4, 7}, {5, 7}}},
  };
}

std::vector<PreparedTarget> prepare_targets(const std::vector<CertifyTarget>& targets) {
  std::vector<PreparedTarget> out;
  for (const auto& tg : targets) {
    PreparedTarget p{tg.name, tg.complex, {}};
    for (const auto& e : tg.edges) {
      if (!is_almost_omniscient(tg.complex, e.u, e.v)) {
        throw Error(ErrorKind::NotAlmostOmniscient, tg.name + " edge {" + std::to_string(e.u) + "," +
                                                        std::to_string(e.v) + "} is not almost-omniscient");
      }
      p.pictures.push_back(extract(tg.complex, e.u, e.v));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<TargetVerdict> certify_dominance(const Triangulation& t, const std::vector<PreparedTarget>& targets,
                                             const CertifyOptions& options) {
  const auto edges = t.edges();
  std::vector<TargetVerdict> verdicts(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) verdicts[i].name = targets[i].name;
  std::vector<std::atomic<bool>> done(targets.size());
  for (auto& d : done) d = false;
  std::atomic<std::size_t> next{0};
  std::mutex lock;

  // Processes edges in index order; first success per target wins.
  auto worker = [&]() {
    while (true) {
      const std::size_t ei = next.fetch_add(1);
      if (ei >= edges.size()) return;
      const bool all_done = std::all_of(done.begin(), done.end(), [](const auto& d) { return d.load(); });
      if (all_done) return;
      const auto& e = edges[ei];
      // The hemisphere pairing covers both orientations of the edge.
      std::optional<LocalPicture> pic;
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        for (const auto& tp : targets[ti].pictures) {
          if (done[ti]) break;
          if (!pic) pic = extract(t, e.u, e.v);
          auto r = find_picture_map(*pic, tp, options.budget);
          std::lock_guard<std::mutex> g(lock);
          verdicts[ti].nodes += r.nodes;
          if (r.status == SearchStatus::Timeout) verdicts[ti].timed_out = true;
          if (r.status == SearchStatus::Found && !done[ti]) {
            if (!is_picture_map(*pic, tp, *r.map)) {
              throw Error(ErrorKind::AssertionFailed, "picture search returned an invalid map");
            }
            verdicts[ti].map = extend_to_global(*r.map, *pic, tp, t, targets[ti].complex);
            verdicts[ti].certified = true;
            verdicts[ti].source_edge = e;
            done[ti] = true;
          }
        }
      }
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          worker();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  return verdicts;
}

}  // namespace flagsphere
