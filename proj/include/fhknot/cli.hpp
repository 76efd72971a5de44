#pragma once

// Command implementations behind tools/fhknot.  Each command returns a
// RunReport; rendering and exit status are decided by the caller.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fhknot/codes.hpp"
#include "fhknot/fh.hpp"
#include "fhknot/gauss.hpp"
#include "fhknot/geom.hpp"
#include "fhknot/invariants.hpp"
#include "fhknot/local_models.hpp"

namespace fhknot::cli {

using json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct RunReport {
  explicit RunReport(std::string cmd = {}) : command(std::move(cmd)) {}

  std::string command;
  json results = json::array();
  json summary = json::object();
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  void check(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot open catalog '" + path + "'");
  return parse_catalog(in);
}

/// A single code given on the command line, with no expected values.
inline std::vector<CatalogEntry> single_code(const std::string& text) {
  CatalogEntry e;
  e.name = "code";
  e.code = parse_gauss_code(text);
  return {e};
}

inline std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// ---------------------------------------------------------------------------

inline RunReport cmd_invariants(const std::vector<CatalogEntry>& entries, bool check_expected = true) {
  Stopwatch clock;
  RunReport r{"invariants"};
  for (const auto& e : entries) {
    const auto rep = v_invariant(e.code);
    r.results.push_back({{"name", e.name}, {"v2", rep.v2}, {"v3", rep.v3}, {"w", rep.w}, {"v", rep.v}});
    if (check_expected) {
      r.check("v2 " + e.name, rep.v2 == e.expected_v2,
              "expected " + std::to_string(e.expected_v2) + ", got " + std::to_string(rep.v2));
      r.check("v3 " + e.name, rep.v3 == e.expected_v3,
              "expected " + std::to_string(e.expected_v3) + ", got " + std::to_string(rep.v3));
    }
  }
  r.wall_seconds = clock.seconds();
  return r;
}

inline long long double_factorial_odd(int n) {
  long long p = 1;
  for (int k = 1; k <= 2 * n - 1; k += 2) p *= k;
  return p;
}

inline RunReport cmd_fh_orbits(int n) {
  Stopwatch clock;
  RunReport r{"fh-orbits"};
  if (n < 0 || n > 6) throw Error(Errc::malformed_input, "--n must lie in 0..6");
  const auto orbits = orbit_decomposition(n);
  std::size_t diagrams = 0;
  std::size_t covered = 0;
  for (const auto& o : orbits) {
    diagrams += o.sequence.size();
    json row{{"representative", to_string(o.representative())}, {"period", o.period}};
    json members = json::array();
    for (const auto& w : o.sequence) members.push_back(to_string(w));
    row["members"] = members;
    row["line"] = format_orbit(o);
    if (n == 3) {
      const auto t = classify(o.representative());
      row["type"] = std::string(to_string(t));
      if (t != CycleType::other) covered += o.sequence.size();
    }
    r.results.push_back(row);
    if (n > 0) {
      r.check("period divides 2n: " + to_string(o.representative()), (2 * n) % o.period == 0,
              "period " + std::to_string(o.period));
    }
  }
  r.summary = {{"n", n}, {"orbits", orbits.size()}, {"diagrams", diagrams}};
  r.check("diagram count is (2n-1)!!", static_cast<long long>(diagrams) == double_factorial_odd(n),
          std::to_string(diagrams) + " diagrams");
  if (n == 3) {
    r.summary["covered_by_types"] = covered;
    r.check("five cycles", orbits.size() == 5, std::to_string(orbits.size()) + " cycles");
    r.check("types I-III cover ten diagrams", covered == 10, std::to_string(covered) + " covered");
  }
  r.wall_seconds = clock.seconds();
  return r;
}

inline RunReport cmd_d3v(const std::vector<CatalogEntry>& entries, const std::optional<std::vector<int>>& labels) {
  Stopwatch clock;
  RunReport r{"d3v"};
  for (const auto& e : entries) {
    std::vector<std::vector<int>> subsets;
    if (labels) subsets.push_back(*labels);
    else subsets = label_subsets(e.code.crossing_count(), 3);
    for (const auto& L : subsets) {
      const auto d = dnv(e.code, L);
      json row{{"name", e.name}, {"labels", join(L)}, {"dnv", d}};
      if (L.size() == 3) {
        const auto t = cycle_type(e.code, L);
        row["type"] = std::string(to_string(t));
        row["word"] = to_string(canonical_form(subdiagram(e.code, L)));
        row["predicted"] = d3v_value(t);
        r.check("D3v " + e.name + " {" + join(L) + "}", d == d3v_value(t),
                "dnv " + std::to_string(d) + ", predicted " + std::to_string(d3v_value(t)));
      } else if (L.size() == 4) {
        r.check("D4v " + e.name + " {" + join(L) + "}", d == 0, "dnv " + std::to_string(d));
      }
      r.results.push_back(row);
    }
  }
  r.wall_seconds = clock.seconds();
  return r;
}

/// Every resolution of every crossing, up to this many crossings.
inline constexpr int kMaxResolutionSweep = 8;

inline RunReport cmd_verify(const std::vector<CatalogEntry>& entries) {
  Stopwatch clock;
  RunReport r{"verify"};
  for (const auto& e : entries) {
    const auto& c = e.code;
    const int n = c.crossing_count();
    const auto rep = v_invariant(c);
    json row{{"name", e.name}, {"n", n}, {"v2", rep.v2}, {"v3", rep.v3}, {"w", rep.w}, {"v", rep.v}};

    r.check("expected v2 " + e.name, rep.v2 == e.expected_v2,
            "catalog line " + std::to_string(e.line) + " says " + std::to_string(e.expected_v2) + ", computed " +
                std::to_string(rep.v2));
    r.check("expected v3 " + e.name, rep.v3 == e.expected_v3,
            "catalog line " + std::to_string(e.line) + " says " + std::to_string(e.expected_v3) + ", computed " +
                std::to_string(rep.v3));

    // Casson invariant against the skein oracle on all resolutions.
    std::string bad;
    std::size_t resolutions = 0;
    if (n <= kMaxResolutionSweep) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::map<int, Sign> asg;
        for (int k = 0; k < n; ++k) asg[k + 1] = (mask >> k) & 1u ? -1 : +1;
        const auto x = resolve(c, asg);
        ++resolutions;
        const auto a = v2(x);
        const auto b = conway_a2(x);
        if (a != b && bad.empty()) bad = serialize(x) + ": v2 " + std::to_string(a) + ", a2 " + std::to_string(b);
      }
    }
    r.check("v2 = a2 " + e.name, bad.empty(), bad.empty() ? std::to_string(resolutions) + " resolutions" : bad);

    // Third differences against the cycle-type prediction.
    bad.clear();
    json d3 = json::array();
    for (const auto& L : label_subsets(n, 3)) {
      const auto d = dnv(c, L);
      const auto p = d3v_predicted(c, L);
      d3.push_back({{"labels", join(L)}, {"dnv", d}, {"predicted", p}});
      if (d != p && bad.empty()) bad = "{" + join(L) + "}: dnv " + std::to_string(d) + ", predicted " + std::to_string(p);
    }
    row["d3v"] = d3;
    r.check("D3v = prediction " + e.name, bad.empty(), bad);

    bad.clear();
    std::size_t quads = 0;
    for (const auto& L : label_subsets(n, 4)) {
      ++quads;
      const auto d = dnv(c, L);
      if (d != 0 && bad.empty()) bad = "{" + join(L) + "}: dnv " + std::to_string(d);
    }
    r.check("D4v = 0 " + e.name, bad.empty(), bad.empty() ? std::to_string(quads) + " subsets" : bad);

    // FH cycle on the code.
    bad.clear();
    auto x = c;
    for (int step = 0; step < 2 * n && bad.empty(); ++step) {
      const auto y = fh_move_on_code(x);
      if (canonical_form(underlying_diagram(y)) != canonical_form(fh_move(underlying_diagram(x)))) {
        bad = "step " + std::to_string(step) + ": diagram of moved code differs from moved diagram";
      } else if (writhe(y) != writhe(c)) {
        bad = "step " + std::to_string(step) + ": writhe " + std::to_string(writhe(y));
      } else if (v2(y) != rep.v2 || v3(y) != rep.v3) {
        bad = "step " + std::to_string(step) + ": invariants changed on " + serialize(y);
      }
      x = y;
    }
    if (bad.empty() && n > 0 && canonical_form(underlying_diagram(x)) != canonical_form(underlying_diagram(c))) {
      bad = "2n moves do not return to the starting diagram";
    }
    r.check("FH cycle " + e.name, bad.empty(), bad);

    const auto m = mirror(c);
    r.check("mirror parity " + e.name, v2(m) == rep.v2 && v3(m) == -rep.v3,
            "mirror v2 " + std::to_string(v2(m)) + ", v3 " + std::to_string(v3(m)));
    r.results.push_back(row);
  }
  r.wall_seconds = clock.seconds();
  return r;
}

struct NumericOptions {
  quad::Options quadrature{};
  double cap = 0.2;
  bool direct = false;
  std::optional<std::string> polyline_path;
};

inline RunReport cmd_numeric(const NumericOptions& opt = {}) {
  Stopwatch clock;
  RunReport r{"numeric"};
  auto value_row = [&](std::string name, double value, double expected, double tol) {
    const bool pass = std::abs(value - expected) <= tol;
    r.results.push_back({{"name", name}, {"value", value}, {"expected", expected}, {"tol", tol}});
    r.check(name, pass, "value " + fmt(value, 10) + ", expected " + fmt(expected) + " +- " + fmt(tol));
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& err) {
      r.check(name, false, err.what());
    }
  };

  const Bump bump = Bump::standard();
  const PoleVolumeForm vol(opt.cap);
  HalfIntegrals h{};
  guarded("half-integrals", [&] {
    h = compute_half_integrals(bump, vol, opt.quadrature);
    value_row("half-integral psi1", h.psi1, 0.5, 0.01);
    value_row("half-integral psi2", h.psi2, 0.5, 0.01);
    const PoleVolumeForm narrow(opt.cap / 2);
    value_row("half-integral psi1 half cap", half_integral(PsiKind::one, bump, narrow, opt.quadrature), 0.5, 0.01);
    value_row("half-integral psi2 half cap", half_integral(PsiKind::two, bump, narrow, opt.quadrature), 0.5, 0.01);
  });

  guarded("local models", [&] {
    for (auto kind : kAllLocalKinds) {
      for (const auto& s : all_sign_triples()) {
        const LocalModelSpec spec{kind, s, bump};
        const double signed_value = spec.sign_product() * local_model_integral(spec, h);
        value_row("local " + std::string(to_string(kind)) + " eps=(" + join({s[0], s[1], s[2]}) + ")", signed_value,
                  expected_signed_value(kind), 0.02);
      }
      if (opt.direct) {
        const LocalModelSpec spec{kind, {+1, -1, +1}, bump};
        value_row("local " + std::string(to_string(kind)) + " direct", spec.sign_product() *
                                                                           local_model_integral_direct(spec, vol, 1),
                  expected_signed_value(kind), 0.02);
      }
    }
  });

  guarded("d3v assembly", [&] {
    const auto t = d3v_from_local_models(bump, vol, opt.quadrature);
    value_row("assembled TypeI", t.at(CycleType::type_i), -2.0, 0.2);
    value_row("assembled TypeII", t.at(CycleType::type_ii), 2.0, 0.2);
    value_row("assembled TypeIII", t.at(CycleType::type_iii), 6.0, 0.2);
    value_row("assembled Other", t.at(CycleType::other), 0.0, 0.2);
  });

  guarded("hopf", [&] {
    const auto [a, b] = hopf_clasp();
    value_row("Hopf clasp linking", gauss_linking(a, b), 1.0, 1e-9);
    value_row("mirrored Hopf clasp linking", gauss_linking(mirrored(a), mirrored(b)), -1.0, 1e-9);
  });

  auto half_writhe = [&](const std::string& name, const Polyline3& p) {
    const auto code = diagram_from_polyline(p);
    value_row("self-linking " + name, self_linking_half(p), writhe(code) / 2.0, 0.05);
  };
  guarded("self-linking", [&] {
    half_writhe("trefoil", braid_closure_polyline(2, {1, 1, 1}));
    half_writhe("figure-eight", braid_closure_polyline(3, {1, -2, 1, -2}));
  });

  if (opt.polyline_path) {
    guarded("polyline file", [&] {
      std::ifstream in(*opt.polyline_path);
      if (!in) throw Error(Errc::malformed_input, "cannot open polyline '" + *opt.polyline_path + "'");
      const auto comps = read_polylines(in);
      if (comps.size() == 2) {
        r.results.push_back({{"name", "linking " + *opt.polyline_path}, {"value", gauss_linking(comps[0], comps[1])}});
      } else if (comps.size() == 1) {
        require_long_knot(comps[0]);
        half_writhe(*opt.polyline_path, comps[0]);
      } else {
        throw Error(Errc::malformed_input, "polyline file must hold one or two components");
      }
    });
  }
  r.wall_seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

inline json to_json(const RunReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json doc{{"command", r.command}, {"results", r.results}};
  if (!r.summary.empty()) doc["summary"] = r.summary;
  doc["checks"] = checks;
  doc["passed"] = r.ok();
  doc["wall_time_s"] = r.wall_seconds;
  return doc;
}

inline std::string scalar(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

/// Results as a TSV table (columns from the first row), then one line per check.
inline void write_tsv(std::ostream& out, const RunReport& r) {
  std::vector<std::string> cols;
  for (const auto& row : r.results) {
    for (const auto& [k, v] : row.items()) {
      if (!v.is_structured() && std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
  if (!cols.empty()) out << '\n';
  for (const auto& row : r.results) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "\t" : "") << (row.contains(cols[i]) ? scalar(row[cols[i]]) : "");
    }
    out << '\n';
  }
  for (const auto& c : r.checks) out << "check\t" << c.name << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.detail << '\n';
  out << "passed\t" << (r.ok() ? "true" : "false") << '\n';
}

inline void write_table(std::ostream& err, const RunReport& r) {
  for (const auto& row : r.results) {
    std::string line;
    for (const auto& [k, v] : row.items()) {
      if (v.is_structured()) continue;
      line += k + "=" + scalar(v) + "  ";
    }
    err << line << '\n';
  }
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    if (!c.pass) {
      ++failed;
      err << "FAIL  " << c.name << "  (" << c.detail << ")\n";
    }
  }
  err << r.checks.size() - failed << "/" << r.checks.size() << " checks passed in " << fmt(r.wall_seconds, 3)
      << " s\n";
}

}  // namespace fhknot::cli
