#pragma once

#include "treedist/degree_bound.hpp"
#include "treedist/gh.hpp"
#include "treedist/io.hpp"
#include "treedist/optimization.hpp"
#include "treedist/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace treedist {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitOracleCap = 3 };

/// `p` for integers, `p/q (decimal)` otherwise.
inline std::string format_rational(const Rational& r) {
  if (r.is_integer()) return r.str();
  return r.str() + " (" + r.decimal(6) + ")";
}

inline nlohmann::json rational_json(const Rational& r) {
  return {{"exact", r.str()}, {"decimal", r.to_double()}};
}

namespace cli_detail {

struct Input {
  std::string path;
  std::string text;
  ParsedTree tree;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Input load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  try {
    return {path, text, parse_tree_text(text)};
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const TreeError& e) {
    throw InputError(path + ": invalid tree: " + e.what());
  }
}

inline const MergeTree& as_merge(const Input& in) {
  if (auto* t = std::get_if<MergeTree>(&in.tree)) return *t;
  throw InputError(in.path + ": expected a mergetree file");
}

inline const MetricTree& as_metric(const Input& in) {
  if (auto* t = std::get_if<MetricTree>(&in.tree)) return *t;
  throw InputError(in.path + ": expected a metrictree file");
}

inline nlohmann::json describe(const Input& in) {
  nlohmann::json j{{"path", in.path}, {"digest", fnv1a_digest(in.text)}};
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        j["kind"] = std::is_same_v<T, MergeTree> ? "mergetree" : "metrictree";
        j["nodes"] = t.size();
      },
      in.tree);
  return j;
}

inline Rational parse_delta(const std::string& s) {
  Rational d;
  try {
    d = Rational::parse(s);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--delta", e.what());
  }
  if (d < 0) throw CLI::ValidationError("--delta", "must be nonnegative");
  return d;
}

inline Engine parse_engine(const std::string& s) { return s == "slow" ? Engine::Slow : Engine::Fast; }

inline nlohmann::json stats_json(const DecisionStats& s) {
  return {{"levels", s.levels},           {"pairs_inspected", s.pairs_inspected}, {"valid_sets", s.valid_sets},
          {"max_set_size", s.max_set_size}, {"max_children", s.max_children},     {"max_bucket", s.max_bucket},
          {"assignments", s.assignments},   {"index_queries", s.index_queries}};
}

inline nlohmann::json search_json(const SearchStats& s) {
  return {{"candidates", s.candidates},
          {"decide_calls", s.decide_calls},
          {"max_tau_probed", s.max_tau_probed},
          {"tau_star", s.tau_star}};
}

}  // namespace cli_detail

/// Runs the `treedist` command line. `args` excludes the program name.
inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  using nlohmann::json;

  CLI::App app{"Merge-tree interleaving distance and metric-tree Gromov-Hausdorff approximation", "treedist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  bool as_json = false;
  std::string f1, f2, delta_text, engine_text = "fast", method_text = "double-binary";
  bool full_degree = false;
  OracleLimits limits;
  GenOptions gen;
  std::string gen_kind = "mergetree", gen_lo = "0", gen_hi = "8", gen_out;

  // The report pieces a handler fills in.
  std::string command;
  std::vector<Input> inputs;
  json result = json::object();
  json certificate = nullptr;
  json counters = json::object();
  std::vector<std::string> lines;
  std::function<void()> handler;

  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", as_json, "Emit a JSON report"); };
  auto two_files = [&](CLI::App* c, const char* a, const char* b) {
    c->add_option(a, f1, "First tree file")->required()->check(CLI::ExistingFile);
    c->add_option(b, f2, "Second tree file")->required()->check(CLI::ExistingFile);
    json_flag(c);
  };
  auto engine_opt = [&](CLI::App* c) {
    c->add_option("--engine", engine_text, "Decision engine")->check(CLI::IsMember({"slow", "fast"}));
  };
  auto delta_opt = [&](CLI::App* c) { c->add_option("--delta", delta_text, "delta as p, p/q or decimal")->required(); };
  auto oracle_opts = [&](CLI::App* c) {
    c->add_option("--max-states", limits.max_states, "Search-state cap");
    c->add_option("--max-grid", limits.max_grid, "Subdivided-grid cap");
    c->add_option("--max-gh-nodes", limits.max_gh_nodes, "Node cap per metric tree");
  };
  auto on = [&](CLI::App* c, std::string name, std::function<void()> fn) {
    c->callback([&handler, &command, name, fn] {
      command = name;
      handler = fn;
    });
  };

  // validate
  auto* validate = app.add_subcommand("validate", "Parse and validate a tree file");
  validate->add_option("file", f1, "Tree file")->required()->check(CLI::ExistingFile);
  json_flag(validate);
  on(validate, "validate", [&] {
    inputs.push_back(load(f1));
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, MergeTree>) {
            lines.push_back("valid mergetree: " + std::to_string(t.size()) + " nodes, root " + t.id(t.root()));
            result = {{"valid", true}, {"kind", "mergetree"}, {"nodes", t.size()}, {"root", t.id(t.root())}};
          } else {
            lines.push_back("valid metrictree: " + std::to_string(t.size()) + " nodes, " +
                            std::to_string(t.edges().size()) + " edges");
            result = {{"valid", true}, {"kind", "metrictree"}, {"nodes", t.size()}, {"edges", t.edges().size()}};
          }
        },
        inputs[0].tree);
  });

  // interleave
  auto* interleave = app.add_subcommand("interleave", "Interleaving distance between merge trees");
  interleave->require_subcommand(1);
  auto* idecide = interleave->add_subcommand("decide", "Is d_I(T1, T2) <= delta?");
  two_files(idecide, "t1", "t2");
  delta_opt(idecide);
  engine_opt(idecide);
  on(idecide, "interleave decide", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = parse_delta(delta_text);
    DecisionStats st;
    bool yes = decide(as_merge(inputs[0]), as_merge(inputs[1]), d, parse_engine(engine_text), &st);
    lines.push_back(yes ? "yes" : "no");
    result = {{"decision", yes}, {"delta", rational_json(d)}, {"engine", engine_text}};
    counters = stats_json(st);
  });
  auto* icompute = interleave->add_subcommand("compute", "Exact d_I(T1, T2)");
  two_files(icompute, "t1", "t2");
  engine_opt(icompute);
  icompute->add_option("--method", method_text, "Search method")->check(CLI::IsMember({"scan", "double-binary"}));
  on(icompute, "interleave compute", [&] {
    inputs = {load(f1), load(f2)};
    const auto& t1 = as_merge(inputs[0]);
    const auto& t2 = as_merge(inputs[1]);
    SearchStats st;
    Engine eng = parse_engine(engine_text);
    Rational d = method_text == "scan" ? compute_interleaving_scan(t1, t2, eng, &st) : compute_interleaving(t1, t2, eng, &st);
    lines.push_back(format_rational(d));
    result = {{"distance", rational_json(d)}, {"method", method_text}, {"engine", engine_text}};
    counters = search_json(st);
  });

  // gh
  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff approximation between metric trees");
  gh->require_subcommand(1);
  auto* approx = gh->add_subcommand("approx", "mu with bounds mu/14 <= d_GH <= 2 mu");
  two_files(approx, "m1", "m2");
  engine_opt(approx);
  on(approx, "gh approx", [&] {
    inputs = {load(f1), load(f2)};
    GHResult r = approx_gh(as_metric(inputs[0]), as_metric(inputs[1]), parse_engine(engine_text));
    lines.push_back("mu = " + format_rational(r.mu) + ", bounds [" + format_rational(r.lower) + ", " +
                    format_rational(r.upper) + "]");
    lines.push_back("roots " + r.root1 + " " + r.root2);
    result = {{"mu", rational_json(r.mu)}, {"lower", rational_json(r.lower)}, {"upper", rational_json(r.upper)}};
    certificate = {{"root1", r.root1}, {"root2", r.root2}};
    counters = search_json(r.search);
    counters["pair_decides"] = r.pair_decides;
  });

  // tau
  auto* tau = app.add_subcommand("tau", "Degree bounds");
  tau->require_subcommand(1);
  auto* tmerge = tau->add_subcommand("merge", "tau_delta of two merge trees");
  two_files(tmerge, "t1", "t2");
  delta_opt(tmerge);
  tmerge->add_flag("--full", full_degree, "Count the parent edge too");
  on(tmerge, "tau merge", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = parse_delta(delta_text);
    int v = merge_degree_bound(as_merge(inputs[0]), as_merge(inputs[1]), d,
                               full_degree ? DegreeConvention::Full : DegreeConvention::Downward);
    lines.push_back(std::to_string(v));
    result = {{"tau", v}, {"delta", rational_json(d)}, {"convention", full_degree ? "full" : "downward"}};
  });
  auto* tmetric = tau->add_subcommand("metric", "tau-hat_delta of two metric trees");
  two_files(tmetric, "m1", "m2");
  delta_opt(tmetric);
  on(tmetric, "tau metric", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = parse_delta(delta_text);
    int v = metric_degree_bound(as_metric(inputs[0]), as_metric(inputs[1]), d);
    lines.push_back(std::to_string(v));
    result = {{"tau", v}, {"delta", rational_json(d)}};
  });

  // candidates
  auto* cand = app.add_subcommand("candidates", "Candidate delta values");
  cand->require_subcommand(1);
  auto emit_values = [&](const std::vector<Rational>& vs) {
    json arr = json::array();
    for (const auto& v : vs) {
      lines.push_back(format_rational(v));
      arr.push_back(v.str());
    }
    result = {{"count", vs.size()}, {"values", arr}};
  };
  auto* cint = cand->add_subcommand("interleave", "Candidates for d_I");
  two_files(cint, "t1", "t2");
  on(cint, "candidates interleave", [&] {
    inputs = {load(f1), load(f2)};
    emit_values(candidate_set(as_merge(inputs[0]), as_merge(inputs[1])).values);
  });
  auto* cgh = cand->add_subcommand("gh", "Candidates for mu over all root pairs");
  two_files(cgh, "m1", "m2");
  on(cgh, "candidates gh", [&] {
    inputs = {load(f1), load(f2)};
    emit_values(gh_candidates(as_metric(inputs[0]), as_metric(inputs[1])).values);
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force reference answers");
  oracle->require_subcommand(1);
  auto* odecide = oracle->add_subcommand("decide", "Exhaustive map search at delta");
  two_files(odecide, "t1", "t2");
  delta_opt(odecide);
  oracle_opts(odecide);
  on(odecide, "oracle decide", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = parse_delta(delta_text);
    bool yes = brute_force_decide(as_merge(inputs[0]), as_merge(inputs[1]), d, limits);
    lines.push_back(yes ? "yes" : "no");
    result = {{"decision", yes}, {"delta", rational_json(d)}};
  });
  auto* ointer = oracle->add_subcommand("interleave", "Exhaustive d_I");
  two_files(ointer, "t1", "t2");
  oracle_opts(ointer);
  on(ointer, "oracle interleave", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = brute_force_interleaving(as_merge(inputs[0]), as_merge(inputs[1]), limits);
    lines.push_back(format_rational(d));
    result = {{"distance", rational_json(d)}};
  });
  auto* ogh = oracle->add_subcommand("gh", "Exhaustive discrete Gromov-Hausdorff distance");
  two_files(ogh, "m1", "m2");
  oracle_opts(ogh);
  on(ogh, "oracle gh", [&] {
    inputs = {load(f1), load(f2)};
    Rational d = brute_force_gh_discrete(as_metric(inputs[0]), as_metric(inputs[1]), limits);
    lines.push_back(format_rational(d));
    result = {{"distance", rational_json(d)}};
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random tree file");
  gen_cmd->add_option("--kind", gen_kind, "Tree kind")->check(CLI::IsMember({"mergetree", "metrictree"}));
  gen_cmd->add_option("-n,--nodes", gen.n, "Node count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--lo", gen_lo, "Smallest height or length");
  gen_cmd->add_option("--hi", gen_hi, "Largest height or length");
  gen_cmd->add_option("--denominator", gen.denominator, "Grid denominator")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-degree", gen.max_degree, "Degree limit (0 = none)")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("-o,--output", gen_out, "Write to this file instead of stdout");
  json_flag(gen_cmd);
  on(gen_cmd, "gen", [&] {
    try {
      gen.lo = Rational::parse(gen_lo);
      gen.hi = Rational::parse(gen_hi);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--lo/--hi", e.what());
    }
    gen.kind = gen_kind == "mergetree" ? TreeKind::Merge : TreeKind::Metric;
    std::string text;
    try {
      text = serialize(generate_random_tree(gen));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("gen", e.what());
    }
    if (!gen_out.empty()) {
      std::ofstream f(gen_out, std::ios::binary);
      if (!f) throw InputError("cannot write '" + gen_out + "'");
      f << text;
    } else if (!as_json) {
      std::string::size_type start = 0;
      while (start < text.size()) {
        auto nl = text.find('\n', start);
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
      }
    }
    result = {{"kind", gen_kind}, {"digest", fnv1a_digest(text)}, {"text", text}};
  });

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (!handler) throw CLI::CallForHelp();
    handler();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleCap;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleCap;
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (as_json) {
    json in = json::array();
    for (const auto& i : inputs) in.push_back(describe(i));
    json report{{"command", command}, {"inputs", in},        {"result", result}, {"certificate", certificate},
                {"counters", counters}, {"elapsed_ms", elapsed}};
    out << report.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
  return kExitOk;
}

}  // namespace treedist
