#include "flagsphere/davis.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace flagsphere {

namespace {

BigInt pow2(int e) { return BigInt(1) << e; }

std::uint64_t vertex_key(std::uint32_t face, std::uint32_t signs) {
  return (static_cast<std::uint64_t>(face) << 32) | (signs & ~face);
}

std::uint32_t mask_of(const VertexSet& s) {
  std::uint32_t m = 0;
  s.for_each([&](int v) { m |= 1u << v; });
  return m;
}

int inversion_sign(const std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] > v[j]) sign = -sign;
    }
  }
  return sign;
}

// Sorted copy of a simplex and the sign of the sorting permutation.
std::pair<std::vector<int>, int> sorted_with_sign(std::vector<int> s) {
  const int sign = inversion_sign(s);
  std::sort(s.begin(), s.end());
  return {std::move(s), sign};
}

struct SimplexHash {
  std::size_t operator()(const std::vector<int>& s) const {
    std::size_t h = s.size();
    for (int x : s) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

}  // namespace

BigInt davis_euler(const FVector& f) {
  const int f0 = static_cast<int>(f.f(0));
  BigInt sum = 0;
  for (int i = -1; i <= f.top_dim(); ++i) {
    BigInt term = BigInt(f.f(i)) * pow2(f0 - 1 - i);
    if ((i + 1) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

DavisCensus census(const Triangulation& t) {
  const FVector f = face_vector(t);
  const int f0 = t.num_vertices();
  DavisCensus c;
  for (int i = 0; i <= f.top_dim() + 1; ++i) c.cells_by_dim.push_back(BigInt(f.f(i - 1)) * pow2(f0 - i));
  c.euler = davis_euler(f);
  if (t.kind() == Kind::Flag && t.dim() == 3) c.gamma2 = gamma2(t);
  return c;
}

std::string racg_presentation(const Triangulation& t) {
  std::ostringstream out;
  out << "racg " << t.num_vertices() << "\n";
  for (const auto& e : t.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

int ExplicitDavisComplex::vertex_id(std::uint32_t face, std::uint32_t signs) const {
  const Vertex key{face, signs & ~face};
  auto it = std::lower_bound(vertices.begin(), vertices.end(), key, [](const Vertex& a, const Vertex& b) {
    return vertex_key(a.face, a.signs) < vertex_key(b.face, b.signs);
  });
  if (it == vertices.end() || it->face != key.face || it->signs != key.signs) return -1;
  return static_cast<int>(it - vertices.begin());
}

ExplicitDavisComplex build_explicit(const Triangulation& t) {
  const int n = t.num_vertices();
  if (n > kExplicitDavisMaxVertices) {
    throw Error(ErrorKind::TooLarge, "explicit Davis model limited to " +
                                         std::to_string(kExplicitDavisMaxVertices) + " vertices");
  }
  const Orientation orientation = orient(t);
  const int d = t.dim();
  ExplicitDavisComplex m;
  m.dim = d + 1;

  // Vertices: one per (face, signs outside the face), the empty face included.
  std::vector<std::uint32_t> faces{0};
  for (int k = 1; k <= d + 1; ++k) {
    for (const auto& s : t.faces(k)) faces.push_back(mask_of(s));
  }
  for (std::uint32_t face : faces) {
    const std::uint32_t outside = ((1u << n) - 1) & ~face;
    // Enumerate submasks of `outside`.
    for (std::uint32_t w = outside;; w = (w - 1) & outside) {
      m.vertices.push_back({face, w});
      if (w == 0) break;
    }
  }
  std::sort(m.vertices.begin(), m.vertices.end(), [](const auto& a, const auto& b) {
    return vertex_key(a.face, a.signs) < vertex_key(b.face, b.signs);
  });

  // Top simplices <w; empty, s0, ..., sd> for each full flag of each top face.
  for (std::size_t i = 0; i < orientation.top_faces.size(); ++i) {
    std::vector<int> order = orientation.top_faces[i].to_vector();
    std::sort(order.begin(), order.end());
    do {
      // Sign of the permutation taking ascending order to `order`.
      const int perm_sign = inversion_sign(order);
      const int flag_or = orientation.sign[i] * perm_sign;
      for (std::uint32_t w = 0; w < (1u << n); ++w) {
        std::vector<int> simplex;
        simplex.reserve(d + 2);
        std::uint32_t face = 0;
        simplex.push_back(m.vertex_id(0, w));
        for (int v : order) {
          face |= 1u << v;
          simplex.push_back(m.vertex_id(face, w));
        }
        const int w_sign = (std::popcount(w) % 2 == 0) ? 1 : -1;
        m.top_simplices.push_back(std::move(simplex));
        m.coefficient.push_back(w_sign * flag_or);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return m;
}

bool orientation_cycle_closed(const ExplicitDavisComplex& m) {
  std::unordered_map<std::vector<int>, std::int64_t, SimplexHash> boundary;
  for (std::size_t i = 0; i < m.top_simplices.size(); ++i) {
    const auto& s = m.top_simplices[i];
    for (std::size_t k = 0; k < s.size(); ++k) {
      std::vector<int> face;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != k) face.push_back(s[j]);
      }
      auto [key, sign] = sorted_with_sign(std::move(face));
      boundary[key] += static_cast<std::int64_t>(m.coefficient[i]) * sign * ((k % 2 == 0) ? 1 : -1);
    }
  }
  return std::all_of(boundary.begin(), boundary.end(), [](const auto& kv) { return kv.second == 0; });
}

std::int64_t explicit_euler(const ExplicitDavisComplex& m) {
  std::unordered_set<std::vector<int>, SimplexHash> simplices;
  for (const auto& s : m.top_simplices) {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const int k = static_cast<int>(sorted.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> sub;
      for (int j = 0; j < k; ++j) {
        if (mask & (1 << j)) sub.push_back(sorted[j]);
      }
      simplices.insert(std::move(sub));
    }
  }
  std::int64_t chi = 0;
  for (const auto& s : simplices) chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

InducedDegree induced_map_degree(const VertexMap& f, const Triangulation& t1, const Triangulation& t2) {
  InducedDegree out;
  out.map_degree = degree(f, t1, t2);
  const int diff = t1.num_vertices() - t2.num_vertices();
  out.formula = out.map_degree == 0 ? BigInt(0) : BigInt(out.map_degree) * pow2(diff);
  if (t1.num_vertices() > kExplicitDavisMaxVertices || t2.num_vertices() > kExplicitDavisMaxVertices) {
    return out;
  }
  const auto m1 = build_explicit(t1);
  const auto m2 = build_explicit(t2);
  std::unordered_map<std::vector<int>, std::pair<std::size_t, int>, SimplexHash> target_index;
  for (std::size_t j = 0; j < m2.top_simplices.size(); ++j) {
    auto [key, sign] = sorted_with_sign(m2.top_simplices[j]);
    target_index.emplace(std::move(key), std::make_pair(j, sign));
  }
  // f_M on vertices: pi_s(w) -> pi_{f(s)}(f_* w).
  const int n1 = t1.num_vertices();
  auto push_signs = [&](std::uint32_t w) {
    std::uint32_t z = 0;
    for (int v = 0; v < n1; ++v) {
      if (w & (1u << v)) z ^= 1u << f[v];
    }
    return z;
  };
  std::vector<int> image_of(m1.vertices.size());
  for (std::size_t i = 0; i < m1.vertices.size(); ++i) {
    const auto& vx = m1.vertices[i];
    std::uint32_t fface = 0;
    for (int v = 0; v < n1; ++v) {
      if (vx.face & (1u << v)) fface |= 1u << f[v];
    }
    image_of[i] = m2.vertex_id(fface, push_signs(vx.signs));
    if (image_of[i] < 0) throw Error(ErrorKind::AssertionFailed, "induced map leaves the Davis complex");
  }
  std::vector<BigInt> per_face(m2.top_simplices.size(), 0);
  for (std::size_t i = 0; i < m1.top_simplices.size(); ++i) {
    std::vector<int> img;
    for (int v : m1.top_simplices[i]) img.push_back(image_of[v]);
    auto [key, sign] = sorted_with_sign(img);
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) continue;
    auto it = target_index.find(key);
    if (it == target_index.end()) continue;
    const auto [j, tsign] = it->second;
    per_face[j] += m1.coefficient[i] * sign * tsign * m2.coefficient[j];
  }
  const BigInt deg = per_face.front();
  for (const auto& x : per_face) {
    if (x != deg) throw Error(ErrorKind::AssertionFailed, "induced degree depends on the reference simplex");
  }
  out.explicit_degree = deg;
  if (deg != out.formula) {
    throw Error(ErrorKind::AssertionFailed, "explicit induced degree disagrees with the closed formula");
  }
  out.verified = true;
  return out;
}

}  // namespace flagsphere
