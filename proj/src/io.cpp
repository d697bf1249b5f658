#include "flagsphere/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace flagsphere {

namespace {

// Non-comment, non-blank lines with their 1-based numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::istringstream& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  }

  void require(std::istringstream& fields, const std::string& what) {
    if (!next(fields)) fail("unexpected end of input, expected " + what);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, name_ + ":" + std::to_string(lineno_) + ": " + msg);
  }

  // Rejects trailing tokens on the current line.
  void end(std::istringstream& fields) const {
    std::string extra;
    if (fields >> extra) fail("unexpected token '" + extra + "'");
  }

  void finish() {
    std::istringstream fields;
    if (next(fields)) fail("trailing content");
  }

 private:
  std::istream& in_;
  std::string name_;
  int lineno_ = 0;
};

template <typename T>
T read(LineReader& r, std::istringstream& fields, const std::string& what) {
  T x;
  if (!(fields >> x)) r.fail("expected " + what);
  return x;
}

void expect_word(LineReader& r, std::istringstream& fields, const std::string& word) {
  std::string w;
  if (!(fields >> w) || w != word) r.fail("expected '" + word + "'");
}

std::vector<int> read_ints(std::istringstream& fields) {
  std::vector<int> v;
  int x;
  while (fields >> x) v.push_back(x);
  return v;
}

template <typename F>
Triangulation wrap(LineReader& r, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

void put_set(std::ostream& out, const char* tag, const VertexSet& s) {
  out << tag;
  s.for_each([&](int v) { out << ' ' << v; });
  out << '\n';
}

}  // namespace

std::string format_complex(const Triangulation& t) {
  std::ostringstream out;
  if (t.kind() == Kind::Flag) {
    const auto edges = t.edges();
    out << "flag " << t.dim() << ' ' << t.num_vertices() << ' ' << edges.size() << '\n';
    for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
  } else {
    const auto& faces = t.stored_faces();
    auto sorted = faces;
    std::sort(sorted.begin(), sorted.end(), [](const VertexSet& a, const VertexSet& b) { return lex_less(a, b); });
    out << "simp " << t.dim() << ' ' << t.num_vertices() << ' ' << sorted.size() << '\n';
    for (const auto& f : sorted) {
      bool first = true;
      f.for_each([&](int v) {
        out << (first ? "" : " ") << v;
        first = false;
      });
      out << '\n';
    }
  }
  return out.str();
}

Triangulation parse_complex(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  std::istringstream f;
  r.require(f, "a header");
  const auto kind = read<std::string>(r, f, "'flag' or 'simp'");
  if (kind != "flag" && kind != "simp") r.fail("expected 'flag' or 'simp', got '" + kind + "'");
  const int d = read<int>(r, f, "dimension");
  const int n = read<int>(r, f, "vertex count");
  const int m = read<int>(r, f, kind == "flag" ? "edge count" : "face count");
  r.end(f);
  if (d < 0 || d > 3) r.fail("dimension must be 0..3");
  if (n < 1 || n > kMaxVertices) r.fail("vertex count out of range");
  if (m < 0) r.fail("negative count");
  if (kind == "flag") {
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
      r.require(f, "an edge line");
      Edge e{read<int>(r, f, "vertex"), read<int>(r, f, "vertex")};
      r.end(f);
      if (e.u < 0 || e.v >= n || e.u >= e.v) r.fail("edge must satisfy 0 <= i < j < n");
      if (!edges.empty() && !(edges.back() < e)) r.fail("edges must be sorted and distinct");
      edges.push_back(e);
    }
    r.finish();
    return wrap(r, [&] { return Triangulation::flag(n, d, edges); });
  }
  std::vector<VertexSet> faces;
  for (int i = 0; i < m; ++i) {
    r.require(f, "a face line");
    auto v = read_ints(f);
    if (!f.eof()) r.fail("bad vertex id");
    if (v.empty()) r.fail("empty face");
    VertexSet s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 0 || v[k] >= n) r.fail("vertex out of range");
      if (k > 0 && v[k - 1] >= v[k]) r.fail("face vertices must be strictly increasing");
      s.insert(v[k]);
    }
    faces.push_back(s);
  }
  r.finish();
  return wrap(r, [&] { return Triangulation::explicit_faces(n, d, faces); });
}

Triangulation parse_complex_string(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  return parse_complex(in, name);
}

Triangulation read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return parse_complex(in, path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!(out << text)) throw Error(ErrorKind::Io, "cannot write " + path);
}

std::string format_map(const VertexMap& m, int target_vertices) {
  std::ostringstream out;
  out << "map " << m.source_size() << ' ' << target_vertices << '\n';
  for (int i = 0; i < m.source_size(); ++i) out << i << " -> " << m[i] << '\n';
  return out.str();
}

VertexMap parse_map(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  std::istringstream f;
  r.require(f, "a header");
  expect_word(r, f, "map");
  const int ns = read<int>(r, f, "source size");
  const int nt = read<int>(r, f, "target size");
  r.end(f);
  if (ns < 0 || nt < 1) r.fail("bad sizes");
  VertexMap m;
  m.image.resize(ns);
  for (int i = 0; i < ns; ++i) {
    r.require(f, "a map line");
    const int src = read<int>(r, f, "source vertex");
    expect_word(r, f, "->");
    const int dst = read<int>(r, f, "target vertex");
    r.end(f);
    if (src != i) r.fail("expected source vertex " + std::to_string(i));
    if (dst < 0 || dst >= nt) r.fail("target vertex out of range");
    m.image[i] = dst;
  }
  r.finish();
  return m;
}

VertexMap parse_map_string(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  return parse_map(in, name);
}

std::string format_picture(const LocalPicture& p) {
  std::ostringstream out;
  const int n = p.num_vertices();
  out << "picture " << n << '\n';
  out << "ambient";
  for (int a : p.ambient) out << ' ' << a;
  out << "\ncentre " << p.x << ' ' << p.y << "\nequator";
  for (int v : p.equator) out << ' ' << v;
  out << "\nhemisphere";
  for (int h : p.hemisphere) out << ' ' << h;
  const auto edges = p.sphere.edges();
  out << "\nsphere " << edges.size() << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
  std::vector<Edge> cross;
  for (int u = 0; u < n; ++u) {
    p.cross[u].for_each([&](int v) {
      if (u < v) cross.push_back({u, v});
    });
  }
  out << "cross " << cross.size() << '\n';
  for (const auto& e : cross) out << e.u << ' ' << e.v << '\n';
  put_set(out, "marked", p.marked);
  put_set(out, "far", p.far);
  return out.str();
}

LocalPicture parse_picture(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  std::istringstream f;
  LocalPicture p;
  auto tagged = [&](const std::string& tag) {
    r.require(f, "'" + tag + "'");
    expect_word(r, f, tag);
    auto v = read_ints(f);
    if (!f.eof()) r.fail("bad integer");
    return v;
  };
  auto as_set = [&](const std::vector<int>& v, int bound) {
    VertexSet s;
    for (int x : v) {
      if (x < 0 || x >= bound) r.fail("vertex out of range");
      s.insert(x);
    }
    return s;
  };
  auto edge_block = [&](int count, int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < count; ++i) {
      r.require(f, "an edge line");
      Edge e{read<int>(r, f, "vertex"), read<int>(r, f, "vertex")};
      r.end(f);
      if (e.u < 0 || e.v >= n || e.u >= e.v) r.fail("edge must satisfy 0 <= i < j < n");
      edges.push_back(e);
    }
    return edges;
  };
  const auto head = tagged("picture");
  if (head.size() != 1 || head[0] < 1 || head[0] > kMaxVertices) r.fail("bad picture size");
  const int n = head[0];
  p.ambient = tagged("ambient");
  if (static_cast<int>(p.ambient.size()) != n) r.fail("ambient list must have n entries");
  const auto centre = tagged("centre");
  if (centre.size() != 2) r.fail("centre needs two vertices");
  p.x = centre[0];
  p.y = centre[1];
  p.equator = tagged("equator");
  for (int v : p.equator) {
    if (v < 0 || v >= n) r.fail("equator vertex out of range");
  }
  p.hemisphere = tagged("hemisphere");
  if (static_cast<int>(p.hemisphere.size()) != n) r.fail("hemisphere list must have n entries");
  for (int h : p.hemisphere) {
    if (h < -1 || h > 1) r.fail("hemisphere labels are -1, 0 or 1");
  }
  const auto sphere_count = tagged("sphere");
  if (sphere_count.size() != 1) r.fail("sphere needs an edge count");
  const auto sphere_edges = edge_block(sphere_count[0], n);
  p.sphere = wrap(r, [&] { return Triangulation::flag(n, 2, sphere_edges); });
  const auto cross_count = tagged("cross");
  if (cross_count.size() != 1) r.fail("cross needs an edge count");
  p.cross.assign(n, VertexSet{});
  for (const auto& e : edge_block(cross_count[0], n)) {
    p.cross[e.u].insert(e.v);
    p.cross[e.v].insert(e.u);
  }
  p.marked = as_set(tagged("marked"), n);
  p.far = as_set(tagged("far"), kMaxVertices);
  r.finish();
  return p;
}

LocalPicture parse_picture_string(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  return parse_picture(in, name);
}

}  // namespace flagsphere
