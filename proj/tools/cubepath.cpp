#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cubepath/cubepath.hpp"

using namespace cubepath;

namespace {

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  int d = 0;
  std::string a, b, x, y;
  std::string file;
  bool use_stdin = false;
  std::string out, uncovered;
  std::string witnesses = "witnesses-d4.txt";
  std::uint64_t seed = 0;
  int jobs = 1;
  bool trace = false;
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0;
};

TritVector vertex_flag(const Flags& f, const std::string& name, const std::string& text) {
  if (text.empty()) throw usage_error("--" + name + " is required");
  TritVector v;
  try {
    v = TritVector::parse(text);
  } catch (const std::exception& ex) {
    throw usage_error("--" + name + ": " + ex.what());
  }
  if (f.d && v.dim() != f.d)
    throw usage_error("--" + name + " " + text + " does not have dimension " + std::to_string(f.d));
  return v;
}

Configuration config_flags(const Flags& f) {
  auto a = vertex_flag(f, "a", f.a), b = vertex_flag(f, "b", f.b);
  auto x = vertex_flag(f, "x", f.x), y = vertex_flag(f, "y", f.y);
  try {
    return Configuration(a, b, x, y);
  } catch (const std::exception& ex) {
    throw usage_error(ex.what());
  }
}

int dim_flag(const Flags& f) {
  if (!f.d) throw usage_error("--d is required");
  check_dim(f.d);
  return f.d;
}

std::string input_text(const Flags& f) {
  if (f.use_stdin == !f.file.empty()) throw usage_error("give exactly one of --file and --stdin");
  std::ostringstream os;
  if (f.use_stdin) {
    os << std::cin.rdbuf();
  } else {
    std::ifstream is(f.file);
    if (!is) throw usage_error("cannot open " + f.file);
    os << is.rdbuf();
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
  if (!os) throw std::runtime_error("error while writing " + path);
}

WitnessStore open_store(const Flags& f) {
  WitnessStore s = load_store(f.witnesses);
  for (const auto& r : s.rejected) std::cerr << "witness store: rejected " << r << '\n';
  return s;
}

int cmd_vertices(const Flags& f) {
  for (const auto& v : enumerate_vertices(dim_flag(f))) std::cout << v.str() << '\n';
  return 0;
}

int cmd_edges(const Flags& f) {
  for (const auto& e : enumerate_edges(dim_flag(f))) std::cout << e.str() << '\n';
  return 0;
}

int cmd_normalize(const Flags& f) {
  auto n = normalize(config_flags(f));
  std::cout << n.config.str() << '\n';
  std::cout << "swap=" << (n.xy_swapped ? 1 : 0) << '\n';
  return 0;
}

int cmd_classify(const Flags& f) {
  auto c = config_flags(f);
  for (const auto& t : classify(c)) std::cout << t.str() << '\n';
  std::cout << "S=" << (in_S(c) ? "yes" : "no") << " S'=" << (in_Sprime(c) ? "yes" : "no") << '\n';
  return 0;
}

int cmd_verify(const Flags& f) {
  std::istringstream in(input_text(f));
  auto records = read_certificates(in);
  if (records.empty()) {
    std::cout << "no certificate found\n";
    return 1;
  }
  int failures = 0;
  for (const auto& r : records) {
    std::string verdict;
    if (!r.certificate) {
      verdict = r.error;
    } else {
      auto v = verify(*r.certificate);
      verdict = v ? "ok" : v.diagnostic;
      if (v && f.d && r.certificate->dim() != f.d) verdict = "dimension is not " + std::to_string(f.d);
    }
    if (verdict != "ok") ++failures;
    std::cout << "line " << r.line << ": " << verdict << '\n';
  }
  return failures ? 1 : 0;
}

int cmd_search_base(const Flags& f) {
  if (dim_flag(f) != 4) throw usage_error("search-base supports --d 4 only");
  BaseCaseOptions opt;
  opt.seeds = {f.seed};
  opt.jobs = std::max(1, f.jobs);
  opt.exhaustive_limits = SearchLimits{f.budget_nodes, f.budget_secs};
  opt.progress = [](std::size_t covered, std::size_t remaining) {
    std::cerr << "progress covered=" << covered << " remaining=" << remaining << '\n';
  };
  opt.decided = [](const Configuration& c, SearchStatus s, std::uint64_t nodes) {
    std::cerr << "decided " << c.str() << " status=" << to_string(s) << " nodes=" << nodes << '\n';
  };
  auto ledger = run_base_case(opt);
  WitnessStore store;
  store.seed = f.seed;
  store.entries = ledger.covered;
  std::ostringstream ws;
  save(store, ws);
  write_file(f.out.empty() ? f.witnesses : f.out, ws.str());
  std::ostringstream us;
  for (const auto& c : ledger.uncovered) us << c.str() << '\n';
  if (!f.uncovered.empty()) write_file(f.uncovered, us.str());
  std::cout << "covered=" << ledger.covered.size() << " uncovered=" << ledger.uncovered.size()
            << " inconclusive=" << ledger.inconclusive.size() << '\n';
  for (const auto& c : ledger.uncovered)
    std::cout << "uncovered " << c.str() << " nodes=" << ledger.exhaustive_nodes.at(c) << '\n';
  for (const auto& c : ledger.inconclusive) std::cout << "inconclusive " << c.str() << '\n';
  return ledger.inconclusive.empty() ? 0 : 1;
}

int cmd_check_nonexistence(const Flags& f) {
  int d = dim_flag(f);
  if (d > 4) throw usage_error("check-nonexistence supports d <= 4");
  auto r = check_lhp_nonexistence(d, SearchLimits{f.budget_nodes, f.budget_secs});
  if (r.counterexample) {
    std::cout << "d=" << d << " loose Hamilton path found\n";
    write_certificate(std::cout, *r.counterexample);
    return 1;
  }
  if (!r.absent) {
    std::cout << "d=" << d << " undecided within the budget\n";
    return 1;
  }
  std::cout << "d=" << d << " no loose Hamilton path (tail nodes=" << r.tail_nodes << ", line nodes=" << r.line_nodes
            << " over " << r.endpoint_orbits << " endpoint orbits)\n";
  return 0;
}

int cmd_cover(const Flags& f) {
  if (dim_flag(f) < 4) throw usage_error("cover needs --d 4 or more");
  auto c = config_flags(f);
  auto store = open_store(f);
  Builder builder(store, f.trace ? &std::cerr : nullptr);
  write_certificate(std::cout, builder.cover(c));
  return 0;
}

int cmd_lhc(const Flags& f) {
  if (dim_flag(f) < 4) throw usage_error("lhc needs --d 4 or more; smaller cubes have no loose Hamilton path");
  auto a = vertex_flag(f, "a", f.a), b = vertex_flag(f, "b", f.b);
  if (a == b) throw usage_error("--a and --b must differ");
  auto store = open_store(f);
  Builder builder(store, f.trace ? &std::cerr : nullptr);
  write_certificate(std::cout, builder.lhc_path(a, b));
  return 0;
}

int cmd_verify_witnesses(const Flags& f) {
  std::istringstream in(input_text(f));
  auto rep = verify_witness_stream(in);
  for (const auto& d : rep.diagnostics) std::cout << d << '\n';
  std::cout << "records=" << rep.records << " accepted=" << rep.accepted << " covered=" << rep.ledger.covered.size()
            << " uncovered=" << rep.ledger.uncovered.size() << '\n';
  std::ostringstream us;
  for (const auto& c : rep.ledger.uncovered) us << c.str() << '\n';
  if (!f.uncovered.empty()) write_file(f.uncovered, us.str());
  return rep.diagnostics.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loose Hamilton paths in the 3-uniform cube hypergraph Q(d)"};
  app.require_subcommand(1, 1);
  Flags f;
  std::function<int(const Flags&)> run;

  auto add = [&](const std::string& name, const std::string& help, int (*fn)(const Flags&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  auto dim = [&](CLI::App* s) { s->add_option("--d", f.d, "dimension")->check(CLI::Range(1, max_dim)); };
  auto pair = [&](CLI::App* s) {
    s->add_option("--a", f.a, "start vertex");
    s->add_option("--b", f.b, "end vertex");
  };
  auto quad = [&](CLI::App* s) {
    pair(s);
    s->add_option("--x", f.x, "first omitted vertex");
    s->add_option("--y", f.y, "second omitted vertex");
  };
  auto input = [&](CLI::App* s) {
    s->add_option("--file", f.file, "input file");
    s->add_flag("--stdin", f.use_stdin, "read standard input");
  };
  auto budget = [&](CLI::App* s) {
    s->add_option("--budget-nodes", f.budget_nodes, "node limit per exhaustive search (0: none)");
    s->add_option("--budget-secs", f.budget_secs, "time limit per exhaustive search (0: none)");
  };
  auto store = [&](CLI::App* s) {
    s->add_option("--witnesses", f.witnesses, "witness store")->capture_default_str();
    s->add_flag("--trace", f.trace, "one line per recursion frame on standard error");
  };

  dim(add("vertices", "list the vertices of Q(d)", cmd_vertices));
  dim(add("edges", "list the edges of Q(d)", cmd_edges));
  auto* s = add("normalize", "normal form of a 4-configuration", cmd_normalize);
  dim(s), quad(s);
  s = add("classify", "types of a 4-configuration", cmd_classify);
  dim(s), quad(s);
  s = add("verify", "check certificates", cmd_verify);
  dim(s), input(s);
  s = add("search-base", "decide every normalized 4-configuration of Q(4)", cmd_search_base);
  dim(s), budget(s);
  s->add_option("--out", f.out, "witness output (default: the --witnesses path)");
  s->add_option("--uncovered", f.uncovered, "uncovered configurations output");
  s->add_option("--witnesses", f.witnesses, "witness store")->capture_default_str();
  s->add_option("--seed", f.seed, "search ordering seed");
  s->add_option("--jobs", f.jobs, "parallel workers")->check(CLI::PositiveNumber);
  s = add("check-nonexistence", "exhaustive search for a loose Hamilton path", cmd_check_nonexistence);
  dim(s), budget(s);
  s = add("cover", "path from a to b covering all but x and y", cmd_cover);
  dim(s), quad(s), store(s);
  s = add("lhc", "loose Hamilton path from a to b", cmd_lhc);
  dim(s), pair(s), store(s);
  s = add("verify-witnesses", "coverage of Q(4) by a witness file", cmd_verify_witnesses);
  input(s);
  s->add_option("--uncovered", f.uncovered, "uncovered configurations output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run(f);
  } catch (const usage_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
