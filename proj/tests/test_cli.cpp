#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fhknot/cli.hpp"

using namespace fhknot;
using fhknot::cli::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stdout and stderr together.
Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + FHKNOT_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("fhknot_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

bool has_failure_naming(const cli::RunReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (!c.pass && c.name.find(name) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Commands, InvariantsOnCatalog) {
  const auto r = cli::cmd_invariants(cli::load_catalog(FHKNOT_CATALOG));
  EXPECT_TRUE(r.ok());
  bool saw = false;
  for (const auto& row : r.results) {
    if (row["name"] == "3_1+") {
      saw = true;
      EXPECT_EQ(row["v2"], 1);
      EXPECT_EQ(row["v3"], 1);
      EXPECT_EQ(row["w"], 3);
      EXPECT_EQ(row["v"], 3);
    }
  }
  EXPECT_TRUE(saw);
}

TEST(Commands, FhOrbits) {
  const auto one = cli::cmd_fh_orbits(1);
  EXPECT_EQ(one.summary["orbits"], 1);
  const auto two = cli::cmd_fh_orbits(2);
  EXPECT_EQ(two.summary["orbits"], 2);
  EXPECT_EQ(two.summary["diagrams"], 3);
  const auto three = cli::cmd_fh_orbits(3);
  EXPECT_TRUE(three.ok());
  EXPECT_EQ(three.summary["orbits"], 5);
  EXPECT_EQ(three.summary["diagrams"], 15);
  EXPECT_EQ(three.summary["covered_by_types"], 10);
  EXPECT_THROW(cli::cmd_fh_orbits(7), Error);
}

TEST(Commands, D3vTrefoil) {
  const auto r = cli::cmd_d3v(cli::single_code("O1+ U2+ O3+ U1+ O2+ U3+"), std::vector<int>{1, 2, 3});
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_EQ(r.results[0]["dnv"], 6);
  EXPECT_EQ(r.results[0]["type"], "TypeIII");
  EXPECT_EQ(r.results[0]["word"], "(1,2,3,1,2,3)");
  EXPECT_TRUE(r.ok());
}

TEST(Commands, VerifyCatalogPasses) {
  const auto r = cli::cmd_verify(cli::load_catalog(FHKNOT_CATALOG));
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(Commands, VerifyNamesTheCorruptedKnot) {
  auto entries = cli::load_catalog(FHKNOT_CATALOG);
  for (auto& e : entries) {
    if (e.name == "4_1") e.expected_v2 = 5;
  }
  const auto r = cli::cmd_verify(entries);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_failure_naming(r, "4_1"));
  std::size_t failures = 0;
  for (const auto& c : r.checks) failures += !c.pass;
  EXPECT_EQ(failures, 1u);
}

TEST(Rendering, JsonAndTsv) {
  const auto r = cli::cmd_invariants(cli::single_code("O1+ U2- O3- U1+ O4+ U3- O2- U4+"), false);
  const auto doc = cli::to_json(r);
  EXPECT_EQ(doc["command"], "invariants");
  EXPECT_EQ(doc["passed"], true);
  EXPECT_EQ(doc["results"][0]["v2"], -1);
  EXPECT_EQ(json::parse(doc.dump()), doc);

  std::ostringstream tsv;
  cli::write_tsv(tsv, r);
  EXPECT_EQ(tsv.str(), "name\tv2\tv3\tw\tv\ncode\t-1\t0\t0\t0\npassed\ttrue\n");
}

TEST(Executable, ExitCodes) {
  const auto good = run("invariants --catalog \"" FHKNOT_CATALOG "\"");
  EXPECT_EQ(good.status, 0) << good.out;
  EXPECT_TRUE(json::accept(good.out));

  const auto d3v = run("d3v --code \"O1+ U2+ O3+ U1+ O2+ U3+\" --labels 1,2,3 --format tsv");
  EXPECT_EQ(d3v.status, 0);
  EXPECT_NE(d3v.out.find("TypeIII"), std::string::npos);

  const auto bad = run("invariants --code \"O1+ O1+\"");
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.out.find("OverUnderMismatch"), std::string::npos);

  const auto usage = run("fh-orbits --n 9");
  EXPECT_NE(usage.status, 0);
}

TEST(Executable, VerifyFailsOnBadCatalog) {
  std::ifstream in(FHKNOT_CATALOG);
  std::stringstream text;
  text << in.rdbuf();
  std::string s = text.str();
  const std::string from = "3_1-\tO1- U2- O3- U1- O2- U3-\t1\t-1";
  const auto at = s.find(from);
  ASSERT_NE(at, std::string::npos);
  s.replace(at, from.size(), "3_1-\tO1- U2- O3- U1- O2- U3-\t1\t1");
  const auto path = temp_file("bad_catalog.tsv", s);
  const auto r = run("verify --catalog \"" + path + "\"");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("expected v3 3_1-"), std::string::npos) << r.out;
  std::filesystem::remove(path);
}

TEST(Executable, PolylineInput) {
  const auto [a, b] = hopf_clasp(24);
  std::ostringstream text;
  write_polyline(text, a);
  text << '\n';
  write_polyline(text, b);
  const auto path = temp_file("hopf.txt", text.str());
  const auto r = run("numeric --polyline \"" + path + "\"");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("linking"), std::string::npos);
  std::filesystem::remove(path);
}
