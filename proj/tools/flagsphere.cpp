#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>

#include "flagsphere/canonical.hpp"
#include "flagsphere/davis.hpp"
#include "flagsphere/dim2.hpp"
#include "flagsphere/generators.hpp"
#include "flagsphere/io.hpp"
#include "flagsphere/localpic.hpp"
#include "flagsphere/search.hpp"

using namespace flagsphere;
using json = nlohmann::json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUnknown = 2, kInputError = 3, kInternal = 4 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, "bad " + what + " '" + s + "'");
}

Triangulation generate(const std::vector<std::string>& args) {
  if (args.empty()) throw Error(ErrorKind::InvalidInput, "gen needs a generator name");
  const auto& name = args[0];
  auto need = [&](std::size_t k) {
    if (args.size() != k + 1) {
      throw Error(ErrorKind::InvalidInput, name + " takes " + std::to_string(k) + " argument(s)");
    }
  };
  if (name == "t9") return need(0), t9();
  if (name == "t10") return need(0), t10();
  if (name == "t12") return need(0), t12();
  if (name == "s0") return need(0), s0();
  if (name == "octahedral") return need(1), octahedral_sphere(parse_int(args[1], "dimension"));
  if (name == "polygon") return need(1), polygon(parse_int(args[1], "size"));
  if (name == "simplex-boundary") return need(1), simplex_boundary(parse_int(args[1], "dimension"));
  if (name == "join") return need(2), join(read_complex_file(args[1]), read_complex_file(args[2]));
  if (name == "suspension") return need(1), suspension(read_complex_file(args[1]));
  if (name == "barycentric") return need(1), barycentric_subdivision(read_complex_file(args[1]));
  if (name == "double") {
    need(2);
    const auto t = read_complex_file(args[1]);
    const int u = parse_int(args[2], "vertex");
    if (u < 0 || u >= t.num_vertices()) throw Error(ErrorKind::InvalidInput, "vertex out of range");
    return double_along_vertex(t, u).complex;
  }
  throw Error(ErrorKind::InvalidInput, "unknown generator '" + name + "'");
}

bool every_edge_in_square(const Triangulation& t) {
  for (const auto& e : t.edges()) {
    if (!edge_in_square(t, e.u, e.v)) return false;
  }
  return true;
}

json check_report(const Triangulation& t) {
  const auto f = face_vector(t);
  json j;
  j["kind"] = t.kind() == Kind::Flag ? "flag" : "simp";
  j["dim"] = t.dim();
  j["vertices"] = t.num_vertices();
  j["f_vector"] = std::vector<std::int64_t>(f.counts.begin() + 1, f.counts.end());
  j["euler"] = f.euler();
  j["is_flag"] = is_flag(t);
  const auto sphere = verify_sphere(t, t.dim());
  j["sphere"] = {{"ok", sphere.ok}, {"reason", sphere.reason}};
  j["gamma2"] = nullptr;
  j["all_edges_in_squares"] = nullptr;
  if (j["is_flag"].get<bool>()) {
    if (t.dim() == 3) j["gamma2"] = gamma2(t);
    j["all_edges_in_squares"] = every_edge_in_square(t);
  }
  j["suspension"] = nullptr;
  if (auto s = is_suspension(t)) j["suspension"] = {s->first, s->second};
  return j;
}

void print_check(const json& j) {
  std::cout << "kind: " << j["kind"].get<std::string>() << "\ndim: " << j["dim"] << "\nf-vector:";
  for (const auto& x : j["f_vector"]) std::cout << ' ' << x;
  std::cout << "\neuler: " << j["euler"] << "\nflag: " << (j["is_flag"].get<bool>() ? "yes" : "no") << "\nsphere: ";
  if (j["sphere"]["ok"].get<bool>()) {
    std::cout << "S" << j["dim"] << (j["dim"] == 3 ? "-consistent" : "") << '\n';
  } else {
    std::cout << "no (" << j["sphere"]["reason"].get<std::string>() << ")\n";
  }
  if (!j["gamma2"].is_null()) std::cout << "gamma2: " << j["gamma2"] << '\n';
  if (!j["all_edges_in_squares"].is_null()) {
    std::cout << "all edges in squares: " << (j["all_edges_in_squares"].get<bool>() ? "yes" : "no") << '\n';
  }
  std::cout << "suspension: ";
  if (j["suspension"].is_null()) {
    std::cout << "no\n";
  } else {
    std::cout << "yes, poles " << j["suspension"][0] << ' ' << j["suspension"][1] << '\n';
  }
}

json census_report(const Triangulation& t) {
  const auto c = census(t);
  const auto f = face_vector(t);
  json j;
  j["f_vector"] = std::vector<std::int64_t>(f.counts.begin() + 1, f.counts.end());
  std::vector<std::string> cells;
  for (const auto& x : c.cells_by_dim) cells.push_back(x.str());
  j["davis_cells"] = cells;
  j["davis_euler"] = c.euler.str();
  j["gamma2"] = c.gamma2 ? json(*c.gamma2) : json(nullptr);
  return j;
}

std::vector<CertifyTarget> local_targets(const Triangulation& target) {
  const auto key = canonical_form(target);
  for (const auto& d : default_targets()) {
    if (canonical_form(d.complex) == key && d.complex == target) return {d};
  }
  CertifyTarget ct{"target", target, {}};
  for (const auto& e : target.edges()) {
    if (is_almost_omniscient(target, e.u, e.v)) ct.edges.push_back(e);
  }
  if (ct.edges.empty()) throw Error(ErrorKind::InvalidInput, "target has no almost-omniscient edge");
  return {ct};
}

std::string join_keys(const std::map<int, std::uint64_t>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag triangulations of spheres: generation, dominance, Davis invariants and randomized search"};
  app.require_subcommand(1);
  int status = kTrue;

  std::vector<std::string> gen_args;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Write a named complex: t9 | t10 | t12 | s0 | octahedral d | polygon n | "
                                        "simplex-boundary k | join a b | suspension f | barycentric f | double f v");
  gen->add_option("args", gen_args, "generator name and parameters")->required();
  gen->add_option("-o,--output", out_path, "output file (default stdout)");

  std::string file, format = "text";
  auto* check = app.add_subcommand("check", "Report flagness, sphere verdict, f-vector, gamma2, squares, suspension");
  check->add_option("file", file)->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  bool racg = false;
  auto* cen = app.add_subcommand("census", "Davis complex cell counts and Euler characteristic");
  cen->add_option("file", file)->required();
  cen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  cen->add_flag("--racg", racg, "print the right-angled Coxeter presentation instead");

  std::string target_file, method = "brute", map_out;
  bool unit = false;
  std::uint64_t budget = 0;
  auto* dom = app.add_subcommand("dominates", "Search for a nonzero-degree simplicial map source -> target");
  dom->add_option("source", file)->required();
  dom->add_option("target", target_file)->required();
  dom->add_option("--method", method)->check(CLI::IsMember({"brute", "local"}));
  dom->add_flag("--unit-degree", unit, "require degree +-1 (brute force)");
  dom->add_option("--budget", budget, "node budget (default 1e9 brute, 1e7 local)");
  dom->add_option("--map", map_out, "write the witness map here");

  int pu = -1, pv = -1;
  auto* pic = app.add_subcommand("pictures", "Dump the local picture of an edge of a flag 3-sphere");
  pic->add_option("file", file)->required();
  pic->add_option("u", pu)->required();
  pic->add_option("v", pv)->required();

  std::string witness_out;
  auto* red = app.add_subcommand("reduce2d", "Decide positivity for a 2-sphere and print the reduction log");
  red->add_option("file", file)->required();
  red->add_option("--witness", witness_out, "write a degree-one map to T9 here when positive");

  SearchConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string target_sel = "t10,t12";
  auto* srch = app.add_subcommand("search", "Randomized walk from T10 recording simplified complexes in a catalog");
  srch->add_option("--seed", seed, "RNG seed")->required();
  srch->add_option("--iters", cfg.iterations, "iterations N")->capture_default_str();
  srch->add_option("-K,--subdivisions", cfg.subdivisions, "subdivisions per step")->capture_default_str();
  srch->add_option("--lo", cfg.window_lo, "vertex window lower threshold")->capture_default_str();
  srch->add_option("--hi", cfg.window_hi, "vertex window upper threshold")->capture_default_str();
  srch->add_option("--bias", cfg.gamma2_bias_threshold, "gamma2 threshold for big-link collapses")->capture_default_str();
  srch->add_option("--budget", cfg.picture_budget, "picture search node budget")->capture_default_str();
  srch->add_option("--catalog", cfg.catalog_path, "catalog file")->required();
  srch->add_option("--stats", cfg.stats_path, "novelty CSV file");
  srch->add_option("--targets", target_sel, "t10, t12 or t10,t12")->capture_default_str();
  srch->add_option("--workers", cfg.workers, "picture search threads")->capture_default_str();

  auto* cstats = app.add_subcommand("catalog-stats", "Summarize a catalog");
  cstats->add_option("file", file)->required();
  cstats->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kTrue : kInputError;
  }

  try {
    if (*gen) {
      emit(format_complex(generate(gen_args)), out_path);
    } else if (*check) {
      const auto j = check_report(read_complex_file(file));
      if (format == "json") {
        std::cout << j.dump(2) << '\n';
      } else {
        print_check(j);
      }
    } else if (*cen) {
      const auto t = read_complex_file(file);
      if (racg) {
        std::cout << racg_presentation(t);
      } else if (format == "json") {
        std::cout << census_report(t).dump(2) << '\n';
      } else {
        const auto j = census_report(t);
        std::cout << "davis cells by dimension:";
        for (const auto& x : j["davis_cells"]) std::cout << ' ' << x.get<std::string>();
        std::cout << "\ndavis euler: " << j["davis_euler"].get<std::string>() << '\n';
        if (!j["gamma2"].is_null()) std::cout << "gamma2: " << j["gamma2"] << '\n';
      }
    } else if (*dom) {
      const auto s = read_complex_file(file);
      const auto t = read_complex_file(target_file);
      std::optional<VertexMap> map;
      if (method == "brute") {
        const auto r = dominates_bruteforce(s, t, {unit, budget ? budget : 1'000'000'000ULL});
        std::cout << "nodes: " << r.nodes << '\n';
        if (r.status == SearchStatus::Found) map = r.map;
        status = r.status == SearchStatus::Found ? kTrue : r.status == SearchStatus::None ? kFalse : kUnknown;
        std::cout << "verdict: " << (status == kTrue ? "dominates" : status == kFalse ? "none" : "unknown (timeout)")
                  << '\n';
      } else {
        const auto targets = prepare_targets(local_targets(t));
        const auto v = certify_dominance(s, targets, {budget ? budget : kDefaultPictureBudget, 1}).front();
        std::cout << "nodes: " << v.nodes << '\n';
        if (v.certified) {
          map = v.map;
          std::cout << "verdict: certified via edge " << v.source_edge->u << ' ' << v.source_edge->v << '\n';
        } else {
          // A failed local search does not rule out dominance.
          status = kUnknown;
          std::cout << "verdict: unknown (" << (v.timed_out ? "timeout" : "no picture map") << ")\n";
        }
      }
      if (map) {
        std::cout << "degree: " << degree(*map, s, t) << '\n';
        if (!map_out.empty()) write_file(map_out, format_map(*map, t.num_vertices()));
      }
    } else if (*pic) {
      const auto t = read_complex_file(file);
      std::cout << format_picture(extract(t, pu, pv));
      std::cout << "# almost omniscient: " << (is_almost_omniscient(t, pu, pv) ? "yes" : "no") << '\n';
    } else if (*red) {
      const auto t = read_complex_file(file);
      const auto r = positive_sv(t);
      std::cout << format_log(r.log) << "positive: " << (r.positive ? "yes" : "no") << '\n';
      if (r.positive && !witness_out.empty()) write_file(witness_out, format_map(witness_map_to_t9(t), 9));
      status = r.positive ? kTrue : kFalse;
    } else if (*srch) {
      cfg.seed = *seed;
      cfg.check_t10 = target_sel.find("t10") != std::string::npos;
      cfg.check_t12 = target_sel.find("t12") != std::string::npos;
      auto catalog = Catalog::open(cfg.catalog_path);
      const auto before = catalog.size();
      const auto summary = run(cfg, catalog, &std::cerr);
      std::cout << "iterations: " << summary.iterations << "\nnew records: " << summary.new_records
                << "\ncatalog size: " << catalog.size() << " (was " << before << ")\nnew by vertex count: "
                << join_keys(summary.distinct_by_vertices) << "\nmax gamma2: " << summary.max_gamma2
                << "\nneither: " << summary.neither.size() << '\n';
      if (!summary.neither.empty()) {
        std::cerr << "*** " << summary.neither.size()
                  << " record(s) dominate neither T10 nor T12 via local pictures; review them ***\n";
      }
    } else if (*cstats) {
      const auto catalog = Catalog::open(file);
      std::map<int, std::uint64_t> by_n, by_gamma;
      std::map<std::string, std::uint64_t> t10v, t12v;
      std::vector<std::string> neither;
      std::uint64_t hits = 0;
      for (const auto& [key, r] : catalog.records()) {
        ++by_n[r.n_vertices];
        ++by_gamma[static_cast<int>(r.gamma2)];
        ++t10v[to_string(r.t10)];
        ++t12v[to_string(r.t12)];
        hits += r.hits;
        if (r.neither()) neither.push_back(key);
      }
      if (format == "json") {
        json j;
        j["records"] = catalog.size();
        j["hits"] = hits;
        for (const auto& [k, v] : by_n) j["by_vertices"][std::to_string(k)] = v;
        for (const auto& [k, v] : by_gamma) j["by_gamma2"][std::to_string(k)] = v;
        j["t10"] = t10v;
        j["t12"] = t12v;
        j["neither"] = neither;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "records: " << catalog.size() << "\nhits: " << hits << "\nby vertex count: " << join_keys(by_n)
                  << "\nby gamma2: " << join_keys(by_gamma) << "\nT10:";
        for (const auto& [k, v] : t10v) std::cout << ' ' << k << '=' << v;
        std::cout << "\nT12:";
        for (const auto& [k, v] : t12v) std::cout << ' ' << k << '=' << v;
        std::cout << "\nneither: " << neither.size() << '\n';
        for (const auto& k : neither) std::cout << "  " << k << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Timeout:
        return kUnknown;
      case ErrorKind::AssertionFailed:
        return kInternal;
      default:
        return kInputError;
    }
  }
  return status;
}
