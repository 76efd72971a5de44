// fhknot: invariants, FH orbits and D^3 v checks for long-knot Gauss codes.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fhknot/cli.hpp"

namespace {

using namespace fhknot;
using fhknot::cli::json;

std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else if (c >= '0' && c <= '9') {
      cur.push_back(c);
    } else {
      throw Error(Errc::malformed_input, "bad --labels value '" + text + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-type invariants and Fox-Hatcher cycles of long knots"};
  app.require_subcommand(1);

  std::string catalog;
  std::string code;
  std::string format = "json";
  std::string labels;
  std::string polyline;
  int n = 3;
  double tol = 1e-6;
  double cap = 0.2;
  bool verbose = false;
  bool direct = false;

  auto add_input = [&](CLI::App* sub) {
    auto* c = sub->add_option("--catalog", catalog, "catalog file: name<TAB>code<TAB>v2<TAB>v3");
    sub->add_option("--code", code, "a single Gauss code, e.g. \"O1+ U2+ O3+ U1+ O2+ U3+\"")->excludes(c);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    sub->add_flag("-v,--verbose", verbose, "human-readable table on stderr");
  };

  auto* inv = app.add_subcommand("invariants", "v2, v3, writhe and v for each knot");
  add_input(inv);
  add_common(inv);

  auto* orbits = app.add_subcommand("fh-orbits", "FH orbit decomposition of all n-chord Gauss diagrams");
  orbits->add_option("--n", n, "chord count (0..6)")->check(CLI::Range(0, 6));
  add_common(orbits);

  auto* d3v = app.add_subcommand("d3v", "third differences of v on chosen crossings");
  add_input(d3v);
  d3v->add_option("--labels", labels, "comma-separated crossing labels (default: every 3-subset)");
  add_common(d3v);

  auto* verify = app.add_subcommand("verify", "check a catalog against every property");
  add_input(verify);
  add_common(verify);

  auto* numeric = app.add_subcommand("numeric", "half-integrals, local models and Gauss integrals");
  numeric->add_option("--tol", tol, "quadrature agreement tolerance")->check(CLI::PositiveNumber);
  numeric->add_option("--cap", cap, "polar cap half-angle of the volume form (radians)");
  numeric->add_option("--polyline", polyline, "extra polyline file (`x y z` lines)");
  numeric->add_flag("--direct", direct, "also integrate the local models directly in six dimensions");
  add_common(numeric);

  CLI11_PARSE(app, argc, argv);

  cli::RunReport report;
  try {
    auto inputs = [&]() -> std::vector<CatalogEntry> {
      if (!code.empty()) return cli::single_code(code);
      if (!catalog.empty()) return cli::load_catalog(catalog);
      throw Error(Errc::malformed_input, "give --catalog or --code");
    };
    if (inv->parsed()) {
      report = cli::cmd_invariants(inputs(), code.empty());
    } else if (orbits->parsed()) {
      report = cli::cmd_fh_orbits(n);
    } else if (d3v->parsed()) {
      std::optional<std::vector<int>> chosen;
      if (!labels.empty()) chosen = parse_labels(labels);
      report = cli::cmd_d3v(inputs(), chosen);
    } else if (verify->parsed()) {
      report = cli::cmd_verify(inputs());
    } else if (numeric->parsed()) {
      cli::NumericOptions opt;
      opt.quadrature.tol = tol;
      opt.cap = cap;
      opt.direct = direct;
      if (!polyline.empty()) opt.polyline_path = polyline;
      report = cli::cmd_numeric(opt);
    }
  } catch (const Error& err) {
    std::cerr << "fhknot: " << err.what() << '\n';
    json doc{{"command", app.get_subcommands().front()->get_name()}, {"error", err.what()}, {"passed", false}};
    if (format == "json") std::cout << doc.dump(2) << '\n';
    return 2;
  }

  if (format == "json") std::cout << cli::to_json(report).dump(2) << '\n';
  else cli::write_tsv(std::cout, report);
  if (verbose) cli::write_table(std::cerr, report);
  if (!report.ok()) {
    for (const auto& c : report.checks) {
      if (!c.pass) std::cerr << "fhknot: FAILED " << c.name << ": " << c.detail << '\n';
    }
    return 1;
  }
  return 0;
}
