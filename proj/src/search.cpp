#include "flagsphere/search.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "flagsphere/generators.hpp"

namespace flagsphere {

void validate_config(const SearchConfig& cfg) {
  if (cfg.window_lo < 8) throw Error(ErrorKind::InvalidInput, "window lower bound must be at least 8");
  if (cfg.window_hi > kMaxVertices || cfg.window_lo > cfg.window_hi) {
    throw Error(ErrorKind::InvalidInput, "window upper bound out of range");
  }
  if (cfg.subdivisions < 1) throw Error(ErrorKind::InvalidInput, "K must be at least 1");
  if (cfg.workers < 1) throw Error(ErrorKind::InvalidInput, "workers must be at least 1");
}

namespace {

std::size_t pick(std::size_t n, Rng& rng) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::vector<Edge> non_square_edges(const Triangulation& t) {
  std::vector<Edge> out;
  for (const auto& e : t.edges()) {
    if (!edge_in_square(t, e.u, e.v)) out.push_back(e);
  }
  return out;
}

}  // namespace

Triangulation walk_step(const Triangulation& t, const SearchConfig& cfg, const WalkState& prev, Rng& rng) {
  Triangulation cur = t;
  for (int i = 0; i < cfg.subdivisions && cur.num_vertices() < kMaxVertices; ++i) {
    const auto edges = cur.edges();
    const Edge e = edges[pick(edges.size(), rng)];
    cur = subdivide_edge(cur, e.u, e.v);
  }
  int collapses = cfg.subdivisions;
  if (prev.vertices > cfg.window_hi) collapses = cfg.subdivisions + 1;
  if (prev.vertices < cfg.window_lo) collapses = std::max(cfg.subdivisions - 1, 0);
  const bool biased = prev.gamma2 > cfg.gamma2_bias_threshold;
  for (int i = 0; i < collapses; ++i) {
    auto cand = non_square_edges(cur);
    if (cand.empty()) break;
    if (biased) {
      int best = 0;
      for (const auto& e : cand) best = std::max(best, edge_link_size(cur, e.u, e.v));
      std::erase_if(cand, [&](const Edge& e) { return edge_link_size(cur, e.u, e.v) != best; });
    }
    const Edge e = cand[pick(cand.size(), rng)];
    cur = collapse_edge(cur, e.u, e.v).complex;
  }
  return cur;
}

Triangulation simplify_to_squares(const Triangulation& t, Rng& rng) {
  Triangulation cur = t;
  while (true) {
    const auto cand = non_square_edges(cur);
    if (cand.empty()) return cur;
    const Edge e = cand[pick(cand.size(), rng)];
    const auto before = gamma2(cur);
    cur = collapse_edge(cur, e.u, e.v).complex;
    if (gamma2(cur) > before) throw Error(ErrorKind::AssertionFailed, "gamma2 increased under a collapse");
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::NotFound: return "not-found";
    case Verdict::Timeout: return "timeout";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

Verdict parse_verdict(const std::string& token) {
  for (auto v : {Verdict::Certified, Verdict::NotFound, Verdict::Timeout, Verdict::Skipped}) {
    if (token == to_string(v)) return v;
  }
  throw Error(ErrorKind::Parse, "unknown verdict '" + token + "'");
}

namespace {

std::string verdict_token(Verdict v, const std::optional<Edge>& e) {
  std::string s = to_string(v);
  if (v == Verdict::Certified && e) s += ":" + std::to_string(e->u) + "-" + std::to_string(e->v);
  return s;
}

Verdict parse_verdict_token(const std::string& token, std::optional<Edge>& e) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) return parse_verdict(token);
  const Verdict v = parse_verdict(token.substr(0, colon));
  const auto dash = token.find('-', colon);
  if (v != Verdict::Certified || dash == std::string::npos) {
    throw Error(ErrorKind::Parse, "bad certificate in '" + token + "'");
  }
  try {
    e = Edge{std::stoi(token.substr(colon + 1, dash - colon - 1)), std::stoi(token.substr(dash + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad certificate in '" + token + "'");
  }
  return v;
}

}  // namespace

std::string format_record(const CatalogRecord& r) {
  std::ostringstream out;
  out << r.key << ' ' << r.n_vertices << ' ' << r.n_edges << ' ' << r.gamma2 << ' '
      << verdict_token(r.t10, r.t10_edge) << ' ' << verdict_token(r.t12, r.t12_edge) << ' ' << r.first_seen << ' '
      << r.hits;
  return out.str();
}

CatalogRecord parse_record(const std::string& line) {
  std::istringstream in(line);
  CatalogRecord r;
  std::string t10, t12, extra;
  if (!(in >> r.key >> r.n_vertices >> r.n_edges >> r.gamma2 >> t10 >> t12 >> r.first_seen >> r.hits) ||
      (in >> extra)) {
    throw Error(ErrorKind::Parse, "catalog record needs 8 fields");
  }
  r.t10 = parse_verdict_token(t10, r.t10_edge);
  r.t12 = parse_verdict_token(t12, r.t12_edge);
  const auto form = from_hex(r.key);
  if (form.num_vertices != r.n_vertices || static_cast<int>(form.edges.size()) != r.n_edges) {
    throw Error(ErrorKind::Parse, "catalog counts disagree with the canonical form");
  }
  const std::int64_t g = 16 - 5 * static_cast<std::int64_t>(form.num_vertices) + static_cast<std::int64_t>(form.edges.size());
  if (g != r.gamma2) throw Error(ErrorKind::Parse, "catalog gamma2 disagrees with the canonical form");
  return r;
}

Catalog Catalog::open(const std::string& path) {
  Catalog c;
  c.path_ = path;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      if (!header) {
        if (line != kCatalogHeader) throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": bad catalog header");
        header = true;
        continue;
      }
      try {
        auto r = parse_record(line);
        c.index_[r.key] = r;
      } catch (const Error& e) {
        throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (header) return c;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create catalog " + path);
  out << kCatalogHeader << '\n';
  return c;
}

const CatalogRecord* Catalog::find(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &it->second;
}

void Catalog::insert(const CatalogRecord& r) {
  index_[r.key] = r;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!(out << format_record(r) << '\n')) throw Error(ErrorKind::Io, "cannot append to catalog " + path_);
}

void Catalog::touch(const std::string& key) {
  auto it = index_.find(key);
  if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "no catalog record " + key);
  ++it->second.hits;
  dirty_ = true;
}

void Catalog::flush() {
  if (path_.empty()) return;
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << kCatalogHeader << '\n';
    for (const auto& [key, r] : index_) out << format_record(r) << '\n';
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) throw Error(ErrorKind::Io, "cannot replace " + path_);
  dirty_ = false;
}

CertifierTargets make_certifier_targets(const SearchConfig& cfg) {
  CertifierTargets out;
  for (auto& p : prepare_targets(default_targets())) {
    if (p.name == "T10" && cfg.check_t10) out.t10 = std::move(p);
    if (p.name == "T12" && cfg.check_t12) out.t12 = std::move(p);
  }
  return out;
}

namespace {

Verdict certify_one(const Triangulation& t, const PreparedTarget& target, const SearchConfig& cfg,
                    const CanonicalForm& form, std::optional<Edge>& edge) {
  auto v = certify_dominance(t, {target}, {cfg.picture_budget, cfg.workers}).front();
  if (v.certified) {
    const int a = form.labelling[v.source_edge->u], b = form.labelling[v.source_edge->v];
    edge = Edge{a, b};
    return Verdict::Certified;
  }
  return v.timed_out ? Verdict::Timeout : Verdict::NotFound;
}

}  // namespace

RecordOutcome check_and_record(const Triangulation& t, Catalog& catalog, const SearchConfig& cfg,
                               const CertifierTargets& targets, std::uint64_t iteration) {
  const auto form = canonical_form(t);
  const auto key = to_hex(form);
  if (catalog.find(key)) {
    catalog.touch(key);
    return {*catalog.find(key), false};
  }
  if (!is_flag(t) || !verify_sphere(t, 3).ok || !non_square_edges(t).empty()) {
    throw Error(ErrorKind::AssertionFailed, "simplified complex is not a flag S3 with every edge in a square");
  }
  CatalogRecord r;
  r.key = key;
  r.n_vertices = t.num_vertices();
  r.n_edges = t.num_edges();
  r.gamma2 = gamma2(t);
  if (r.gamma2 < 0) throw Error(ErrorKind::AssertionFailed, "negative gamma2 on a flag S3: " + key);
  r.first_seen = iteration;
  r.hits = 1;
  if (r.gamma2 > 0) {
    if (targets.t10) r.t10 = certify_one(t, *targets.t10, cfg, form, r.t10_edge);
    if (targets.t12 && r.t10 != Verdict::Certified) r.t12 = certify_one(t, *targets.t12, cfg, form, r.t12_edge);
  }
  catalog.insert(r);
  return {r, true};
}

RunSummary run(const SearchConfig& cfg, Catalog& catalog, std::ostream* warn) {
  validate_config(cfg);
  const auto targets = make_certifier_targets(cfg);
  RunSummary summary;
  std::map<int, std::uint64_t> distinct;
  for (const auto& [key, r] : catalog.records()) ++distinct[r.n_vertices];
  std::ofstream stats;
  if (!cfg.stats_path.empty()) {
    stats.open(cfg.stats_path, std::ios::trunc);
    if (!stats) throw Error(ErrorKind::Io, "cannot write " + cfg.stats_path);
    stats << kStatsHeader << "\nvertex_count,encounter_index,cumulative_distinct\n";
  }
  const auto t12_key = to_hex(canonical_form(t12()));
  Rng rng(cfg.seed);
  Triangulation cur = t10();
  WalkState prev{cur.num_vertices(), gamma2(cur)};
  for (std::uint64_t i = 1; i <= cfg.iterations; ++i) {
    cur = walk_step(cur, cfg, prev, rng);
    const auto simple = simplify_to_squares(cur, rng);
    const auto out = check_and_record(simple, catalog, cfg, targets, i);
    const int n = simple.num_vertices();
    prev = {n, out.record.gamma2};
    summary.max_gamma2 = std::max(summary.max_gamma2, out.record.gamma2);
    const auto encounter = ++summary.encounters_by_vertices[n];
    if (out.is_new) {
      ++summary.new_records;
      ++summary.distinct_by_vertices[n];
      ++distinct[n];
      if (n == 12) {
        summary.twelve_vertex.push_back(out.record.key);
        if (warn) {
          *warn << "observation: 12-vertex record " << (out.record.key == t12_key ? "is" : "is NOT") << " T12\n";
        }
      }
      if (out.record.neither()) {
        summary.neither.push_back(out.record.key);
        if (warn) *warn << "*** NEITHER: " << format_record(out.record) << '\n';
      }
    }
    if (stats.is_open()) stats << n << ',' << encounter << ',' << distinct[n] << '\n';
    summary.iterations = i;
  }
  catalog.flush();
  return summary;
}

}  // namespace flagsphere
