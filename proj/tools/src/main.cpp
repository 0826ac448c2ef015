// isopar-verify: seeded verification campaigns.
//
// Exit codes: 0 every property held, 1 a property violation was found,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "isopar/campaign.hpp"

namespace {

using namespace isopar;
using namespace isopar::campaign;

struct Options {
  std::string field = "prime";
  std::uint32_t prime = 32003;
  std::string q_range = "1:8";
  std::string r_range = "1:6";
  std::optional<std::size_t> k_max;
  std::size_t trials = 500;
  std::uint64_t seed = CampaignConfig{}.seed;
  std::string mode = "mu-param";
  std::string out;
  std::string format = "json";
  unsigned jobs = 0;
  bool no_timing = false;
  std::size_t max_degree = 4;
  std::optional<std::size_t> precision_cap;
  std::string input;
  bool zero = false;
  bool random = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--field", o.field, "prime or rational")->check(CLI::IsMember({"prime", "rational"}));
  cmd->add_option("--prime", o.prime, "odd prime for --field prime");
  cmd->add_option("--k-max", o.k_max, "largest truncation level k");
  cmd->add_option("--trials", o.trials, "number of seeded trials");
  cmd->add_option("--seed", o.seed, "campaign seed");
  cmd->add_option("--out", o.out, "report path (default: stdout)");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", o.jobs, "worker threads (0: hardware concurrency)");
  cmd->add_flag("--no-timing", o.no_timing, "omit wall-time fields");
}

CampaignConfig to_config(const Options& o) {
  CampaignConfig c;
  c.field = o.field == "rational" ? FieldKind::rational : FieldKind::prime;
  c.prime = o.prime;
  c.q_range = parse_range(o.q_range);
  c.r_range = parse_range(o.r_range);
  c.k_max = o.k_max;
  c.trials = o.trials;
  c.seed = o.seed;
  c.mode = parse_generator_mode(o.mode);
  c.max_degree = o.max_degree;
  c.precision_cap = o.precision_cap;
  if (!o.input.empty()) c.input = o.input;
  if (o.zero && o.random) throw UsageError("--zero and --random are exclusive");
  c.variant = o.zero ? CounterexampleVariant::zero : o.random ? CounterexampleVariant::random : CounterexampleVariant::fixed;
  c.jobs = o.jobs;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity verifications over truncated power-series rings"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> cmds;

  auto* skew = cmds["skew"] = app.add_subcommand("skew", "rank sequences of skew families over B_k");
  add_common(skew, o);
  skew->add_option("--q-range", o.q_range, "matrix size range LO:HI");

  auto* iso = cmds["isotropic"] = app.add_subcommand("isotropic", "intersections of isotropic lattice pairs");
  add_common(iso, o);
  iso->add_option("--r-range", o.r_range, "half-rank range LO:HI");
  iso->add_option("--mode", o.mode, "mu-param or cayley");

  auto* tor = cmds["torsion"] = app.add_subcommand("torsion", "torsion profiles of lattice-pair complexes or a matrix file");
  add_common(tor, o);
  tor->add_option("--r-range", o.r_range, "half-rank range LO:HI");
  tor->add_option("--mode", o.mode, "mu-param or cayley");
  tor->add_option("--input", o.input, "polynomial matrix file");
  tor->add_option("--precision-cap", o.precision_cap, "fixed precision for the local elimination");

  auto* bc = cmds["base-change"] = app.add_subcommand("base-change", "base change of random two-term complexes");
  add_common(bc, o);
  bc->add_option("--r-range", o.r_range, "rank range LO:HI");
  bc->add_option("--max-degree", o.max_degree, "largest entry degree");
  bc->add_option("--precision-cap", o.precision_cap, "fixed precision for the local elimination");

  auto* cx = cmds["counterexample"] = app.add_subcommand("counterexample", "odd image dimension over K[x,y]/(x,y)^2");
  add_common(cx, o);
  cx->add_flag("--zero", o.zero, "use the zero matrix");
  cx->add_flag("--random", o.random, "use a random skew matrix of size drawn from --q-range");
  cx->add_option("--q-range", o.q_range, "size range for --random");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (const auto& [name, sub] : cmds)
    if (sub->parsed()) command = name;

  try {
    const auto config = to_config(o);
    const auto report = run_command(command, config);
    const auto text = render(report, o.format == "csv" ? OutputFormat::csv : OutputFormat::json, !o.no_timing);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.out, std::ios::binary);
      if (!out) throw UsageError("cannot write '" + o.out + "'");
      out << text;
    }
    if (report.failures() > 0)
      std::cerr << command << ": " << report.failures() << " of " << report.trials.size() << " trials failed\n";
    return exit_code(report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
