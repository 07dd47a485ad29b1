#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bsll/coset_enum.hpp"
#include "bsll/count.hpp"
#include "bsll/serialize.hpp"

namespace bsll {

namespace {

void emit(const json& doc, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << doc.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << text;
  }
}

std::string default_cache_dir() {
  const char* env = std::getenv("BSLL_CACHE");
  return env ? env : "";
}

int cmd_count(int p, int k, const std::string& out_file, const CountOptions& opts) {
  json doc;
  bool ok = false;
  const std::string key = "count-" + count_input_hash(p, k, opts.max_order);
  std::optional<json> cached;
  if (!opts.cache_dir.empty()) cached = cache_load(opts.cache_dir, key);
  if (cached && cached->value("tool_version", "") == kToolVersion) {
    doc = *cached;
    ok = doc["bounds_ok"]["lower_ok"].get<bool>() && doc["bounds_ok"]["upper_ok"].get<bool>() &&
         doc["bounds_ok"]["bracket_ok"].get<bool>();
    doc["timings"] = json{{"cache_hit", 1.0}};
  } else {
    const CountReport rep = count_overlattices(p, k, opts);
    doc = report_to_json(rep);
    ok = rep.lower_ok && rep.upper_ok && rep.bracket_ok;
    if (!opts.cache_dir.empty()) {
      json stored = doc;
      stored.erase("timings");
      cache_store(opts.cache_dir, key, stored);
    }
  }
  emit(doc, out_file);
  return ok ? 0 : 1;
}

int cmd_matrices(int p, int k, bool consistent_only, bool faithful_only,
                 const std::string& out_file, int max_order) {
  json list = json::array();
  for (const auto& a : enumerate_matrices(p, k)) {
    GAGroup g = build_group(a, BuildOptions{max_order, {}});
    bool faithful = false;
    if (g.consistent) {
      ShiftData sd = shift_data(g);
      faithful = is_faithful_loop(sd.group.table, sd.g1, sd.g2, sd.shift).faithful;
    }
    if (consistent_only && !g.consistent) continue;
    if (faithful_only && !faithful) continue;
    json entry{{"rows", a.rows()}, {"consistent", g.consistent}};
    entry["faithful"] = g.consistent ? json(faithful) : json(nullptr);
    list.push_back(std::move(entry));
  }
  emit(json{{"p", p}, {"k", k}, {"matrices", list}}, out_file);
  return 0;
}

int cmd_example(int p, int k, const std::string& matrix_file, int u_flag,
                const std::string& out_file, int max_order) {
  std::ifstream in(matrix_file);
  if (!in) {
    std::cerr << "cannot read " << matrix_file << "\n";
    return 2;
  }
  json mj;
  in >> mj;
  const MatrixA a = matrix_from_json(mj); // invalid entries -> exit 2 below
  if (a.p() != p || a.k() != k) {
    std::cerr << "matrix file is for p=" << a.p() << " k=" << a.k()
              << ", flags say p=" << p << " k=" << k << "\n";
    return 2;
  }
  GAGroup g = build_group(a, BuildOptions{max_order, {}});
  if (!g.consistent) {
    emit(json{{"consistent", false}, {"failure", g.failure}}, out_file);
    return 1;
  }
  ShiftData sd = shift_data(g);
  int u = u_flag;
  if (u < 0) {
    NormalWord w;
    w.exps.assign(k + 1, 0);
    w.exps[0] = w.exps[k] = 1;
    u = w.rank(p);
  }
  if (u >= g.table->order()) {
    std::cerr << "u id " << u << " out of range\n";
    return 2;
  }
  const LoopCovering c = from_shift(sd, u);
  const auto violations = validate(c);
  json vj = json::array();
  for (const auto& v : violations) vj.push_back({{"where", v.where}, {"what", v.what}});
  json doc{{"covering", covering_to_json(c)},
           {"valid", violations.empty()},
           {"violations", vj}};
  if (violations.empty()) doc["sheets"] = sheets(c);
  emit(doc, out_file);
  return violations.empty() ? 0 : 1;
}

int cmd_family(int p, int k, const std::string& out_file, const CountOptions& opts) {
  const FamilyReport rep = lower_bound_family(p, k, opts);
  emit(family_report_to_json(rep), out_file);
  return rep.bound_ok ? 0 : 1;
}

int cmd_ball(int p, int radius, const std::string& format, const std::string& out_file) {
  const GraphOfGroups base = make_loop_base(p);
  const TreeBall ball = universal_ball(edge_indexed(base), 0, radius);
  if (format == "json")
    emit(ball_to_json(ball), out_file);
  else
    emit_text(ball_to_text(ball), out_file);
  return 0;
}

int cmd_faithful(const std::string& gog_file, const std::string& out_file, int max_order) {
  std::ifstream in(gog_file);
  if (!in) {
    std::cerr << "cannot read " << gog_file << "\n";
    return 2;
  }
  json gj;
  in >> gj;
  GraphOfGroups g;
  try {
    g = gog_from_json(gj);
  } catch (const StructureError& e) {
    std::cerr << "error: malformed graph of groups: " << e.what() << "\n";
    return 2;
  }
  const auto violations = validate_gog(g);
  if (!violations.empty()) {
    json vj = json::array();
    for (const auto& v : violations) vj.push_back({{"where", v.where}, {"what", v.what}});
    emit(json{{"faithful", nullptr}, {"violations", vj}}, out_file);
    return 1;
  }
  const auto res = is_faithful(g, max_order);
  json doc{{"faithful", res.faithful}, {"violations", json::array()}};
  if (res.witness) doc["witness"] = family_witness_to_json(*res.witness);
  emit(doc, out_file);
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  try {
    // Collection reaches a fixed point and is idempotent on random words.
    {
      const MatrixA a(2, 3, {{1}, {0, 1}});
      bool ok = true;
      unsigned state = 12345;
      for (int trial = 0; trial < 200 && ok; ++trial) {
        std::vector<Letter> w;
        for (int l = 0; l < 8; ++l) {
          state = state * 1664525u + 1013904223u;
          w.emplace_back(static_cast<int>(state >> 8) % 4,
                         static_cast<int>(state >> 20) % 5 - 2);
        }
        const NormalWord nw = collect(w, a);
        ok = collect(nw.letters(), a).exps == nw.exps;
      }
      check("collect is idempotent", ok);
    }
    // Consistency verdict agrees with coset enumeration for p=2, k <= 3.
    {
      bool ok = true;
      for (int k = 1; k <= 3 && ok; ++k)
        for (const auto& a : enumerate_matrices(2, k)) {
          const GAGroup g = build_group(a);
          const int oracle = order_oracle(a);
          const int expect = 1 << (k + 1);
          if (g.consistent != (oracle == expect)) { ok = false; break; }
        }
      check("consistency matches the coset-enumeration oracle (p=2, k<=3)", ok);
    }
    // Loop faithfulness agrees with the general family search (p=2, k<=2).
    {
      bool ok = true;
      for (int k = 1; k <= 2 && ok; ++k)
        for (const auto& a : enumerate_matrices(2, k)) {
          const GAGroup g = build_group(a);
          if (!g.consistent) continue;
          const ShiftData sd = shift_data(g);
          const auto loop_v = is_faithful_loop(sd.group.table, sd.g1, sd.g2, sd.shift);
          const auto gen_v = is_faithful(assemble_loop(sd.group.table, sd.g1, sd.g2, sd.shift));
          if (loop_v.faithful != gen_v.faithful) { ok = false; break; }
        }
      check("loop faithfulness equals the general search (p=2, k<=2)", ok);
    }
    // The base ball is 2p-regular.
    {
      bool ok = true;
      for (int p : {2, 3}) {
        const auto prof = degree_profile(universal_ball(edge_indexed(make_loop_base(p)), 0, 3));
        ok = ok && prof.size() == 1 && prof.begin()->first == 2 * p;
      }
      check("loop base balls are 2p-regular", ok);
    }
    // The exact base case.
    {
      const CountReport rep = count_overlattices(2, 1);
      check("count p=2 k=1 brackets [1,1]",
            rep.classes_necessary == 1 && rep.classes_sufficient == 1);
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL  selftest aborted: " << e.what() << "\n";
    ++failures;
  }
  return failures == 0 ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"overlattice counting for the loop lattice in a 2p-regular tree"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  int p = 0, k = 0, radius = 0, u_flag = -1, jobs = 1, max_order = 512;
  std::string out_file, cache_dir = default_cache_dir(), matrix_file, gog_file,
              format = "tree";
  bool consistent_only = false, faithful_only = false;

  auto* count = app.add_subcommand("count", "enumerate coverings and bracket the class count");
  count->add_option("--p", p, "prime p")->required();
  count->add_option("--k", k, "sheet exponent: n = p^k")->required();
  count->add_option("--out", out_file, "write the report here instead of stdout");
  count->add_option("--jobs", jobs, "worker threads over matrices")->check(CLI::PositiveNumber);
  count->add_option("--cache", cache_dir, "report cache directory (default $BSLL_CACHE)");
  count->add_option("--max-order", max_order, "desk-scale cap on |H| = p^(k+1)");

  auto* matrices = app.add_subcommand("matrices", "list the relation matrices");
  matrices->add_option("--p", p, "prime p")->required();
  matrices->add_option("--k", k, "sheet exponent")->required();
  matrices->add_option("--out", out_file, "output file");
  matrices->add_option("--max-order", max_order, "desk-scale cap");
  auto* con_flag = matrices->add_flag("--consistent-only", consistent_only,
                                      "keep only consistent presentations");
  matrices->add_flag("--faithful-only", faithful_only, "keep only faithful shift data")
      ->excludes(con_flag);

  auto* example = app.add_subcommand("example", "build one covering from a matrix file");
  example->add_option("--p", p, "prime p")->required();
  example->add_option("--k", k, "sheet exponent")->required();
  example->add_option("--matrix", matrix_file, "matrix file {p, k, rows}")->required();
  example->add_option("--u", u_flag, "element id for u (default: g_0 g_k)");
  example->add_option("--out", out_file, "output file");
  example->add_option("--max-order", max_order, "desk-scale cap");

  auto* family = app.add_subcommand("family", "the explicit lower-bound family");
  family->add_option("--p", p, "prime p")->required();
  family->add_option("--k", k, "sheet exponent, k >= 3")->required();
  family->add_option("--out", out_file, "output file");
  family->add_option("--max-order", max_order, "desk-scale cap");

  auto* ball = app.add_subcommand("ball", "universal-cover ball of the loop base");
  ball->add_option("--p", p, "prime p")->required();
  ball->add_option("--radius", radius, "ball radius")->required();
  ball->add_option("--format", format, "tree or json")
      ->check(CLI::IsMember({"tree", "json"}));
  ball->add_option("--out", out_file, "output file");

  auto* faithful = app.add_subcommand("faithful", "faithfulness of a graph of groups");
  faithful->add_option("--gog", gog_file, "graph-of-groups file")->required();
  faithful->add_option("--out", out_file, "output file");
  faithful->add_option("--max-order", max_order, "desk-scale cap");

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(count) || app.got_subcommand(matrices) ||
        app.got_subcommand(example) || app.got_subcommand(family) ||
        app.got_subcommand(ball)) {
      if (!is_prime(p)) {
        std::cerr << "error: " << p << " is not prime\n";
        return 2;
      }
    }
    if (app.got_subcommand(count)) {
      if (k < 1) {
        std::cerr << "error: k must be at least 1\n";
        return 2;
      }
      return cmd_count(p, k, out_file, CountOptions{max_order, jobs, cache_dir});
    }
    if (app.got_subcommand(matrices))
      return cmd_matrices(p, k, consistent_only, faithful_only, out_file, max_order);
    if (app.got_subcommand(example))
      return cmd_example(p, k, matrix_file, u_flag, out_file, max_order);
    if (app.got_subcommand(family))
      return cmd_family(p, k, out_file, CountOptions{max_order, jobs, cache_dir});
    if (app.got_subcommand(ball)) return cmd_ball(p, radius, format, out_file);
    if (app.got_subcommand(faithful)) return cmd_faithful(gog_file, out_file, max_order);
    if (app.got_subcommand(selftest)) return cmd_selftest();
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace bsll
