#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flagsphere/generators.hpp"
#include "flagsphere/search.hpp"

using namespace flagsphere;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("flagsphere_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool every_edge_in_square(const Triangulation& t) {
  for (const auto& e : t.edges()) {
    if (!edge_in_square(t, e.u, e.v)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  SearchConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.window_lo = 7;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = {};
  cfg.window_hi = 200;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = {};
  cfg.subdivisions = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
}

TEST_CASE("walk steps keep flag 3-spheres") {
  SearchConfig cfg;
  cfg.subdivisions = 1;
  Rng rng(7);
  Triangulation t = t10();
  WalkState prev{10, 1};
  for (int i = 0; i < 40; ++i) {
    auto next = walk_step(t, cfg, prev, rng);
    CHECK(next.num_vertices() <= t.num_vertices() + 1);
    CHECK(is_flag(next));
    CHECK(verify_sphere(next, 3).ok);
    auto s = simplify_to_squares(next, rng);
    CHECK(every_edge_in_square(s));
    CHECK(gamma2(s) <= gamma2(next));
    CHECK(gamma2(s) >= 0);
    prev = {s.num_vertices(), gamma2(s)};
    t = next;
  }
}

TEST_CASE("collapse drift") {
  Rng rng(3);
  Triangulation t = barycentric_subdivision(simplex_boundary(4));
  for (int i = 0; i < 10; ++i) {
    std::vector<Edge> cand;
    for (const auto& e : t.edges()) {
      if (!edge_in_square(t, e.u, e.v)) cand.push_back(e);
    }
    if (cand.empty()) break;
    const Edge e = cand[rng() % cand.size()];
    const int k = edge_link_size(t, e.u, e.v);
    auto next = collapse_edge(t, e.u, e.v).complex;
    CHECK(gamma2(next) == gamma2(t) + 4 - k);
    t = next;
  }
}

TEST_CASE("simplification fixed points") {
  Rng rng(1);
  CHECK(simplify_to_squares(t12(), rng) == t12());
  CHECK(simplify_to_squares(octahedral_sphere(3), rng) == octahedral_sphere(3));
  auto s = simplify_to_squares(suspension(octahedral_sphere(2)), rng);
  CHECK(gamma2(s) == 0);
  CHECK(every_edge_in_square(s));
}

TEST_CASE("record formatting") {
  CatalogRecord r;
  r.key = to_hex(canonical_form(octahedral_sphere(3)));
  r.n_vertices = 8;
  r.n_edges = 24;
  r.gamma2 = 0;
  r.first_seen = 5;
  r.hits = 2;
  const auto line = format_record(r);
  CHECK(line.find(" 8 24 0 skipped skipped 5 2") != std::string::npos);
  auto back = parse_record(line);
  CHECK(format_record(back) == line);
  r.gamma2 = 1;
  CHECK_THROWS_AS(parse_record(format_record(r)), Error);
  r.gamma2 = 0;
  r.t10 = Verdict::Certified;
  r.t10_edge = Edge{1, 2};
  CHECK(format_record(r).find("certified:1-2") != std::string::npos);
  CHECK(parse_record(format_record(r)).t10_edge == Edge{1, 2});
  CHECK_THROWS_AS(parse_record("zz 1 2"), Error);
  CHECK_THROWS_AS(parse_verdict("maybe"), Error);
}

TEST_CASE("check and record") {
  SearchConfig cfg;
  const auto targets = make_certifier_targets(cfg);
  Catalog cat;
  auto a = check_and_record(t12(), cat, cfg, targets, 1);
  CHECK(a.is_new);
  CHECK(a.record.gamma2 == 1);
  CHECK(a.record.t10 == Verdict::NotFound);
  CHECK(a.record.t12 == Verdict::Certified);
  CHECK_FALSE(a.record.neither());
  auto o = check_and_record(octahedral_sphere(3), cat, cfg, targets, 2);
  CHECK(o.record.gamma2 == 0);
  CHECK(o.record.t10 == Verdict::Skipped);
  CHECK(o.record.t12 == Verdict::Skipped);
  auto again = check_and_record(relabel(t12(), std::vector<int>{11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0}), cat, cfg,
                                targets, 3);
  CHECK_FALSE(again.is_new);
  CHECK(again.record.hits == 2);
  CHECK(again.record.first_seen == 1);
  CHECK(cat.size() == 2);
  CHECK_THROWS_AS(check_and_record(t10(), cat, cfg, targets, 4), Error);
}

TEST_CASE("catalog persistence") {
  const auto path = temp_path("catalog_test.txt");
  std::remove(path.c_str());
  SearchConfig cfg;
  const auto targets = make_certifier_targets(cfg);
  {
    auto cat = Catalog::open(path);
    check_and_record(t12(), cat, cfg, targets, 1);
    check_and_record(octahedral_sphere(3), cat, cfg, targets, 2);
    check_and_record(octahedral_sphere(3), cat, cfg, targets, 3);
  }
  {
    // Unflushed hits are lost, appended records are not.
    auto cat = Catalog::open(path);
    CHECK(cat.size() == 2);
    CHECK(cat.find(to_hex(canonical_form(octahedral_sphere(3))))->hits == 1);
    cat.touch(to_hex(canonical_form(octahedral_sphere(3))));
    cat.flush();
  }
  auto cat = Catalog::open(path);
  CHECK(cat.find(to_hex(canonical_form(octahedral_sphere(3))))->hits == 2);
  for (const auto& [key, r] : cat.records()) CHECK(r.gamma2 == 16 - 5 * r.n_vertices + r.n_edges);
  {
    std::ofstream out(path, std::ios::app);
    out << "0208 1 1 0 skipped skipped 0 1\n";
  }
  CHECK_THROWS_AS(Catalog::open(path), Error);
  {
    std::ofstream out(path, std::ios::trunc);
    out << "something else\n";
  }
  CHECK_THROWS_AS(Catalog::open(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("runs") {
  SearchConfig cfg;
  cfg.iterations = 0;
  Catalog empty;
  CHECK(run(cfg, empty).new_records == 0);
  CHECK(empty.size() == 0);

  cfg.iterations = 150;
  cfg.window_lo = 12;
  cfg.window_hi = 20;
  cfg.seed = 11;
  std::string texts[2], stats[2];
  for (int k = 0; k < 2; ++k) {
    const auto path = temp_path("run_" + std::to_string(k));
    const auto csv = path + ".csv";
    std::remove(path.c_str());
    cfg.catalog_path = path;
    cfg.stats_path = csv;
    auto cat = Catalog::open(path);
    auto summary = run(cfg, cat);
    CHECK(summary.iterations == 150);
    CHECK(summary.neither.empty());
    texts[k] = slurp(path);
    stats[k] = slurp(csv);
    std::uint64_t hits = 0;
    for (const auto& [key, r] : cat.records()) hits += r.hits;
    CHECK(hits == 150);
    std::remove(path.c_str());
    std::remove(csv.c_str());
  }
  CHECK(texts[0] == texts[1]);
  CHECK(stats[0] == stats[1]);
  CHECK(stats[0].rfind("flagsphere-stats v1\nvertex_count,encounter_index,cumulative_distinct\n", 0) == 0);
}

TEST_CASE("resumed runs accumulate hits") {
  const auto path = temp_path("resume");
  std::remove(path.c_str());
  SearchConfig cfg;
  cfg.iterations = 40;
  cfg.window_lo = 10;
  cfg.window_hi = 14;
  cfg.seed = 5;
  cfg.catalog_path = path;
  {
    auto cat = Catalog::open(path);
    run(cfg, cat);
  }
  auto cat = Catalog::open(path);
  run(cfg, cat);
  std::uint64_t hits = 0;
  const auto reopened = Catalog::open(path);
  for (const auto& [key, r] : reopened.records()) hits += r.hits;
  CHECK(hits == 80);
  std::remove(path.c_str());
}
