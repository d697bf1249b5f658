#include "flagsphere/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace flagsphere {

namespace {

using Colouring = std::vector<int>;

// Renumbers arbitrary integer keys to dense ranks preserving order.
int compress(Colouring& c) {
  std::vector<int> keys = c;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (int& x : c) x = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), x) - keys.begin());
  return static_cast<int>(keys.size());
}

class Canonicaliser {
 public:
  explicit Canonicaliser(const std::vector<VertexSet>& adj) : adj_(adj), n_(static_cast<int>(adj.size())) {}

  CanonicalForm run(Colouring initial) {
    compress(initial);
    refine(initial);
    std::vector<int> prefix;
    search(initial, prefix);
    CanonicalForm out;
    out.num_vertices = n_;
    out.edges = best_edges_;
    out.labelling = best_labelling_;
    return out;
  }

 private:
  // Equitable refinement: split colour classes by neighbour colour counts until stable.
  void refine(Colouring& c) const {
    int k = *std::max_element(c.begin(), c.end()) + 1;
    while (true) {
      std::vector<std::vector<int>> sig(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<int> counts(k, 0);
        adj_[v].for_each([&](int w) { ++counts[c[w]]; });
        sig[v].reserve(k + 1);
        sig[v].push_back(c[v]);
        sig[v].insert(sig[v].end(), counts.begin(), counts.end());
      }
      std::vector<int> order(n_);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
      Colouring next(n_);
      int colour = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++colour;
        next[order[i]] = colour;
      }
      const int k2 = colour + 1;
      c = std::move(next);
      if (k2 == k) return;
      k = k2;
    }
  }

  std::vector<Edge> leaf_edges(const Colouring& c) const {
    std::vector<Edge> edges;
    for (int v = 0; v < n_; ++v) {
      adj_[v].for_each([&](int w) {
        if (v < w) {
          int a = c[v], b = c[w];
          edges.push_back({std::min(a, b), std::max(a, b)});
        }
      });
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  }

  // Vertices of the target cell, or empty when the colouring is discrete.
  std::vector<int> target_cell(const Colouring& c) const {
    const int k = *std::max_element(c.begin(), c.end()) + 1;
    if (k == n_) return {};
    std::vector<int> size(k, 0);
    for (int x : c) ++size[x];
    int best = -1;
    for (int col = 0; col < k; ++col) {
      if (size[col] > 1 && (best < 0 || size[col] < size[best])) best = col;
    }
    std::vector<int> cell;
    for (int v = 0; v < n_; ++v) {
      if (c[v] == best) cell.push_back(v);
    }
    return cell;
  }

  static Colouring individualise(const Colouring& c, int v) {
    Colouring next(c.size());
    for (std::size_t w = 0; w < c.size(); ++w) {
      next[w] = 2 * c[w] + ((c[w] == c[v] && static_cast<int>(w) != v) ? 1 : 0);
    }
    compress(next);
    return next;
  }

  int find(std::vector<int>& parent, int x) const {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void search(const Colouring& c, std::vector<int>& prefix) {
    auto cell = target_cell(c);
    if (cell.empty()) {
      auto edges = leaf_edges(c);
      if (!have_best_ || edges < best_edges_) {
        best_edges_ = std::move(edges);
        best_labelling_ = c;
        have_best_ = true;
      } else if (edges == best_edges_) {
        // Automorphism: v -> the vertex holding v's position in the best leaf.
        std::vector<int> at_position(n_);
        for (int v = 0; v < n_; ++v) at_position[best_labelling_[v]] = v;
        std::vector<int> gamma(n_);
        for (int v = 0; v < n_; ++v) gamma[v] = at_position[c[v]];
        automorphisms_.push_back(std::move(gamma));
      }
      return;
    }
    std::vector<int> explored;
    for (int v : cell) {
      if (!explored.empty() && equivalent_to_explored(v, explored, prefix)) continue;
      explored.push_back(v);
      auto child = individualise(c, v);
      refine(child);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
    }
  }

  // Whether v is in the orbit of an explored sibling under the known
  // automorphisms fixing the prefix pointwise.
  bool equivalent_to_explored(int v, const std::vector<int>& explored, const std::vector<int>& prefix) {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    bool any = false;
    for (const auto& g : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      any = true;
      for (int x = 0; x < n_; ++x) {
        int a = find(parent, x), b = find(parent, g[x]);
        if (a != b) parent[a] = b;
      }
    }
    if (!any) return false;
    int root = find(parent, v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(parent, u) == root; });
  }

  const std::vector<VertexSet>& adj_;
  int n_;
  bool have_best_ = false;
  std::vector<Edge> best_edges_;
  Colouring best_labelling_;
  std::vector<std::vector<int>> automorphisms_;
};

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  throw Error(ErrorKind::Parse, std::string("bad hex digit '") + ch + "'");
}

}  // namespace

CanonicalForm canonical_form(const std::vector<VertexSet>& adjacency, std::span<const int> colours) {
  Colouring initial(adjacency.size(), 0);
  if (!colours.empty()) initial.assign(colours.begin(), colours.end());
  return Canonicaliser(adjacency).run(std::move(initial));
}

CanonicalForm canonical_form(const Triangulation& t) { return canonical_form(t.adjacency()); }

std::vector<int> vertex_orbits(const std::vector<VertexSet>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> rep(n, -1);
  std::vector<CanonicalForm> forms;
  std::vector<int> form_rep;
  for (int v = 0; v < n; ++v) {
    std::vector<int> colours(n, 1);
    colours[v] = 0;
    auto form = canonical_form(adjacency, colours);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i] == form) {
        rep[v] = form_rep[i];
        break;
      }
    }
    if (rep[v] < 0) {
      rep[v] = v;
      forms.push_back(std::move(form));
      form_rep.push_back(v);
    }
  }
  return rep;
}

std::string to_hex(const CanonicalForm& form) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 + 4 * form.edges.size());
  auto put = [&](int x) {
    out.push_back(kDigits[(x >> 4) & 15]);
    out.push_back(kDigits[x & 15]);
  };
  put(form.num_vertices);
  for (const auto& e : form.edges) {
    put(e.u);
    put(e.v);
  }
  return out;
}

CanonicalForm from_hex(const std::string& hex) {
  if (hex.size() < 2 || (hex.size() - 2) % 4 != 0) {
    throw Error(ErrorKind::Parse, "canonical hex has bad length");
  }
  auto byte = [&](std::size_t i) { return 16 * hex_value(hex[i]) + hex_value(hex[i + 1]); };
  CanonicalForm form;
  form.num_vertices = byte(0);
  for (std::size_t i = 2; i < hex.size(); i += 4) form.edges.push_back({byte(i), byte(i + 2)});
  form.labelling.resize(form.num_vertices);
  std::iota(form.labelling.begin(), form.labelling.end(), 0);
  return form;
}

std::vector<VertexSet> adjacency_of(const CanonicalForm& form) {
  std::vector<VertexSet> adj(form.num_vertices);
  for (const auto& e : form.edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

}  // namespace flagsphere
