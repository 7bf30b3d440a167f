// Command-line front end. Exit codes: 0 success, 1 input error, 2 budget exceeded.

#include "cayley/cayley.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace cayley;

namespace {

constexpr int kInputError = 1;
constexpr int kBudgetExit = 2;

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

/// Tiling counts memoized as "k count" lines in $CAYLEY_CACHE_DIR.
class CountCache {
 public:
  CountCache() {
    const char* dir = std::getenv("CAYLEY_CACHE_DIR");
    if (!dir || !*dir) return;
    path_ = std::filesystem::path(dir) / "tiling_counts.txt";
    std::ifstream in(*path_);
    int k;
    std::string value;
    while (in >> k >> value) values_[k] = BigCount(value);
  }

  BigCount tilings(int k) {
    if (auto it = values_.find(k); it != values_.end()) return it->second;
    const BigCount c = count_tilings(k);
    values_[k] = c;
    if (path_) {
      std::filesystem::create_directories(path_->parent_path());
      std::ofstream out(*path_, std::ios::app);
      out << k << ' ' << c << '\n';
    }
    return c;
  }

 private:
  std::optional<std::filesystem::path> path_;
  std::map<int, BigCount> values_;
};

struct Options {
  int k = 1;
  bool triangulations = false;
  std::string format = "json";
  std::size_t max_nodes = kDefaultNodeBudget;
  std::size_t max_lps = kDefaultLpBudget;
  std::string file;
  bool svg = false, ascii = false;
  std::optional<int> zone;
  std::string regime = "all";
  bool labeled = false, with_diameter = false;
  std::string adjacency;
  std::string target;
  bool sweep = false, verdicts = false;
  std::optional<int> random_k;
  std::uint64_t seed = 1;
};

int cmd_count(const Options& o, std::ostream& out) {
  if (o.k < 1) throw DomainError("k must be >= 1");
  CountCache cache;
  const BigCount n = cache.tilings(o.k);
  out << (o.triangulations ? n * factorial(o.k) : n) << '\n';
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.format != "json" && o.format != "key" && o.format != "ascii")
    throw MalformedInput("unknown format '" + o.format + "' (json, key, ascii)");
  std::size_t emitted = 0;
  bool over = false;
  for_each_tiling(o.k, [&](const Tiling& t) {
    if (emitted >= o.max_nodes) {
      over = true;
      return false;
    }
    if (o.format == "json")
      out << serialize(t) << '\n';
    else if (o.format == "key")
      out << key_of(t) << '\n';
    else
      out << render_ascii(with_default_labels(t)) << '\n';
    ++emitted;
    return true;
  });
  if (over) {
    out.flush();
    std::cerr << "enumeration stopped after " << emitted << " tilings (budget --max-nodes)\n";
    return kBudgetExit;
  }
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  const std::string text = read_input(o.file);
  TilingDocument doc;
  try {
    doc = parse_tiling(text);
  } catch (const MalformedInput& e) {
    throw MalformedInput(o.file + ": " + e.what());
  }
  const LabeledTiling lt = doc.labeled();
  if (o.ascii) {
    out << render_ascii(lt, o.zone);
  } else {
    RenderOptions opt;
    opt.zone = o.zone;
    out << render_svg(lt, opt);
  }
  return 0;
}

int cmd_flipgraph(const Options& o, std::ostream& out) {
  const auto regime = regime_from_name(o.regime);
  if (!regime) throw MalformedInput("unknown regime '" + o.regime + "' (all, trapezoid, bistellar)");
  const FlipGraph g = build_flip_graph(o.k, *regime, o.labeled, o.max_nodes);
  const FlipGraphSummary s = summarize(g, o.with_diameter);
  out << to_string(s);
  if (o.with_diameter && !s.diameter) out << " diameter=undefined";
  out << '\n';
  if (!o.adjacency.empty()) {
    std::ofstream adj(o.adjacency);
    if (!adj) throw MalformedInput("cannot write " + o.adjacency);
    write_adjacency(adj, g);
  }
  return 0;
}

std::string witness_json(const LabeledTiling& lt, const Certificate& c) {
  return "{\"tiling\":" + serialize(lt) + ",\"certificate\":" + certificate_json(c) + "}";
}

int cmd_regularity(const Options& o, std::ostream& out) {
  if (o.sweep) {
    int k = 0;
    try {
      k = std::stoi(o.target);
    } catch (const std::exception&) {
      throw MalformedInput("--sweep needs k, got '" + o.target + "'");
    }
    if (k < 1) throw DomainError("k must be >= 1");
    std::optional<std::string> witness;
    const RegularitySweep r = regularity_sweep(k, o.max_lps, 0, [&](const LabeledTiling& lt, const Certificate& c) {
      if (o.verdicts) out << key_of(lt.tiling) << ' ' << verdict_name(c.verdict) << '\n';
      if (!c.regular() && !witness) witness = witness_json(lt, c);
    });
    out << "k=" << k << " lps=" << r.lps << " regular=" << r.regular << " non_regular=" << r.non_regular
        << " complete=" << (r.complete ? "yes" : "no") << '\n';
    if (witness) out << *witness << '\n';
    if (!r.complete) {
      std::cerr << "sweep stopped after " << r.lps << " LPs (budget --max-lps)\n";
      return kBudgetExit;
    }
    return 0;
  }
  const std::string text = read_input(o.target);
  LabeledTiling lt;
  try {
    lt = parse_tiling(text).labeled();
  } catch (const MalformedInput& e) {
    throw MalformedInput(o.target + ": " + e.what());
  }
  const Certificate c = check_regular_triangulation(lt);
  out << verdict_name(c.verdict) << '\n' << witness_json(lt, c) << '\n';
  return 0;
}

int cmd_tropical(const Options& o, std::ostream& out) {
  LiftMatrix m;
  nlohmann::ordered_json doc;
  if (o.random_k) {
    m = random_lift_matrix(*o.random_k, o.seed);
    doc["seed"] = o.seed;
  } else {
    if (o.file.empty()) throw MalformedInput("tropical needs a matrix file or --random k");
    try {
      m = parse_lift_matrix(read_input(o.file));
    } catch (const MalformedInput& e) {
      throw MalformedInput(o.file + ": " + e.what());
    }
  }
  const MixedSubdivision ms = coherent_subdivision(m);
  doc["k"] = m.size();
  doc["matrix"] = nlohmann::ordered_json::parse(lift_matrix_json(m));
  doc["subdivision"] = nlohmann::ordered_json::parse(serialize(ms));
  doc["cells"] = ms.cells.size();
  doc["fine"] = ms.fine();
  if (ms.fine()) {
    // The matrix entries are the heights of the Cayley vertices.
    doc["matrix_witness"] = matrix_certifies(m, ms) ? "REGULAR" : "REJECTED";
  } else {
    Subdivision s{ms.k, {}};
    for (const auto& c : ms.cells) s.cells.push_back(c.support);
    doc["planar_regularity"] = verdict_name(check_regular_planar(s).verdict);
  }
  out << doc.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lozenge tilings, triangulations of Delta^2 x Delta^(k-1), and their regularity"};
  app.require_subcommand(1);
  Options o;
  std::string output;
  app.add_option("-o,--output", output, "Write results to this file instead of stdout");

  auto* count = app.add_subcommand("count", "Number of tilings of T_k");
  count->add_option("k", o.k)->required();
  count->add_flag("--triangulations", o.triangulations, "Count triangulations (k! per tiling)");

  auto* enumerate = app.add_subcommand("enumerate", "All tilings of T_k, one per line");
  enumerate->add_option("k", o.k)->required();
  enumerate->add_option("--format", o.format, "json, key or ascii");
  enumerate->add_option("--max-nodes", o.max_nodes)->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "Draw a tiling document");
  render->add_option("file", o.file, "Tiling JSON, or - for stdin")->required();
  auto* svg = render->add_flag("--svg", o.svg, "SVG 1.1 output (default)");
  render->add_flag("--ascii", o.ascii, "Text output")->excludes(svg);
  render->add_option("--zones", o.zone, "Shade the zone of this label");

  auto* flipgraph = app.add_subcommand("flipgraph", "Flip graph summary");
  flipgraph->add_option("k", o.k)->required();
  flipgraph->add_option("--regime", o.regime, "all, trapezoid or bistellar");
  flipgraph->add_flag("--labeled", o.labeled, "Nodes are labeled tilings");
  flipgraph->add_flag("--diameter", o.with_diameter, "Also compute the diameter");
  flipgraph->add_option("--max-nodes", o.max_nodes)->check(CLI::PositiveNumber);
  flipgraph->add_option("--adjacency", o.adjacency, "Write the adjacency list to this file");

  auto* regularity = app.add_subcommand("regularity", "Regularity of one tiling, or of all tilings of T_k");
  regularity->add_option("target", o.target, "Tiling JSON file (or k with --sweep)")->required();
  regularity->add_flag("--sweep", o.sweep, "Test every tiling of T_k");
  regularity->add_flag("--verdicts", o.verdicts, "Print one verdict line per tiling");
  regularity->add_option("--max-lps", o.max_lps)->check(CLI::PositiveNumber);

  auto* tropical = app.add_subcommand("tropical", "Coherent mixed subdivision of a k x 3 lifting matrix");
  tropical->add_option("file", o.file, "Matrix as CSV or JSON, or - for stdin");
  tropical->add_option("--random", o.random_k, "Use a seeded generic random k x 3 matrix");
  tropical->add_option("--seed", o.seed, "Seed for --random");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::ofstream file_out;
  if (!output.empty()) {
    file_out.open(output, std::ios::binary);
    if (!file_out) {
      std::cerr << "error: cannot write " << output << '\n';
      return kInputError;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file_out;

  try {
    if (count->parsed()) return cmd_count(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (flipgraph->parsed()) return cmd_flipgraph(o, out);
    if (regularity->parsed()) return cmd_regularity(o, out);
    if (tropical->parsed()) return cmd_tropical(o, out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudgetExit;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
