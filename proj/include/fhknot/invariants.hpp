#pragma once

// Finite-type invariants of long knots from Gauss diagram formulas, the
// Conway-polynomial skein oracle for v2, the framed invariant
// v = 6 v3 - w v2 and its crossing-change finite differences.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fhknot/codes.hpp"
#include "fhknot/error.hpp"
#include "fhknot/fh.hpp"
#include "fhknot/gauss.hpp"

namespace fhknot {

/// Based arrow diagram.  Arrows point from the under passage to the over
/// passage; `first[k]` is the strand role at the first endpoint of chord k+1,
/// so `Strand::under` means the arrow points forward along the knot.
struct ArrowPattern {
  CanonicalWord word;
  std::vector<Strand> first;

  int chord_count() const noexcept { return word.chord_count(); }
};

inline ArrowPattern make_pattern(std::initializer_list<int> word, std::string_view first_roles) {
  ArrowPattern p{CanonicalWord(word), {}};
  for (char c : first_roles) p.first.push_back(c == 'O' ? Strand::over : Strand::under);
  if (static_cast<int>(p.first.size()) != p.word.chord_count()) {
    throw Error(Errc::invalid_diagram, "arrow pattern needs one role per chord");
  }
  return p;
}

/// Signed count of order-preserving embeddings of `pattern` into the arrow
/// diagram of `code`; each match is weighted by the product of its signs.
inline long long count_matchings(const SignedGaussCode& code, const ArrowPattern& pattern) {
  const int k = pattern.chord_count();
  const int n = code.crossing_count();
  if (k == 0) return 1;
  if (k > n) return 0;
  long long total = 0;
  std::vector<int> chosen(static_cast<std::size_t>(k));
  std::vector<int> local(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> word;
  std::vector<Strand> roles;
  word.reserve(static_cast<std::size_t>(2 * k));
  auto test = [&] {
    for (int c : chosen) local[static_cast<std::size_t>(c)] = -1;
    word.clear();
    roles.clear();
    int next = 0;
    for (const auto& p : code.passages()) {
      auto& slot = local[static_cast<std::size_t>(p.crossing)];
      if (slot == 0) continue;
      if (slot < 0) {
        slot = ++next;
        roles.push_back(p.strand);
      }
      word.push_back(slot);
    }
    bool match = std::equal(word.begin(), word.end(), pattern.word.symbols().begin()) && roles == pattern.first;
    int weight = 1;
    for (int c : chosen) {
      weight *= code.sign(c);
      local[static_cast<std::size_t>(c)] = 0;
    }
    if (match) total += weight;
  };
  auto rec = [&](auto&& self, int depth, int from) -> void {
    if (depth == k) {
      test();
      return;
    }
    for (int c = from; c <= n - (k - depth - 1); ++c) {
      chosen[static_cast<std::size_t>(depth)] = c;
      self(self, depth + 1, c + 1);
    }
  };
  rec(rec, 0, 1);
  return total;
}

/// Integer combination of arrow-pattern counts divided by `divisor`.
struct GaussDiagramFormula {
  struct Term {
    long long weight;
    ArrowPattern pattern;
  };
  std::vector<Term> terms;
  long long divisor = 1;

  long long numerator(const SignedGaussCode& code) const {
    long long sum = 0;
    for (const auto& t : terms) sum += t.weight * count_matchings(code, t.pattern);
    return sum;
  }
};

namespace formulas {

/// Casson invariant: the crossed pair whose first chord is met under.
inline const GaussDiagramFormula& v2() {
  static const GaussDiagramFormula f{{{1, make_pattern({1, 2, 1, 2}, "UO")}}, 1};
  return f;
}

/// Order-three invariant, v3(right trefoil) = 1.  The terms are the based
/// cuts of the two closed arrow diagrams: the three pairwise crossing chords
/// and the cycle through (1,2,1,3,2,3).
inline const GaussDiagramFormula& v3() {
  static const GaussDiagramFormula f{{
                                         {2, make_pattern({1, 2, 3, 1, 2, 3}, "OUO")},
                                         {2, make_pattern({1, 2, 3, 1, 2, 3}, "UOU")},
                                         {1, make_pattern({1, 2, 1, 3, 2, 3}, "OOU")},
                                         {1, make_pattern({1, 2, 1, 3, 2, 3}, "UOO")},
                                         {1, make_pattern({1, 2, 3, 1, 3, 2}, "OOU")},
                                         {1, make_pattern({1, 2, 3, 1, 3, 2}, "UUO")},
                                         {1, make_pattern({1, 2, 3, 2, 1, 3}, "OUO")},
                                         {1, make_pattern({1, 2, 3, 2, 1, 3}, "UOU")},
                                     },
                                     2};
  return f;
}

}  // namespace formulas

inline int v2(const SignedGaussCode& code) { return static_cast<int>(formulas::v2().numerator(code)); }

inline int v3(const SignedGaussCode& code) {
  const auto& f = formulas::v3();
  const long long num = f.numerator(code);
  // The half-weighted terms pair up on realizable diagrams.
  if (num % f.divisor != 0) {
    throw Error(Errc::invalid_diagram, "v3 numerator " + std::to_string(num) + " is odd; code is not realizable");
  }
  return static_cast<int>(num / f.divisor);
}

// ---------------------------------------------------------------------------
// Conway polynomial by the skein relation  C(L+) - C(L-) = z C(L0).

/// Coefficients in z, index = degree.
using ZPolynomial = std::vector<long long>;

namespace detail {

struct LinkDiagram {
  // components[0] is the long component; the others are closed.
  std::vector<std::vector<Passage>> components;
};

inline void trim(ZPolynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::string normalize_key(LinkDiagram& d) {
  std::map<int, int> relabel;
  std::string key;
  for (auto& comp : d.components) {
    for (auto& p : comp) {
      auto [it, inserted] = relabel.try_emplace(p.crossing, static_cast<int>(relabel.size()) + 1);
      p.crossing = it->second;
      key.push_back(p.strand == Strand::over ? 'O' : 'U');
      key += std::to_string(p.crossing);
      key.push_back(p.sign > 0 ? '+' : '-');
    }
    key.push_back('|');
  }
  return key;
}

class ConwaySkein {
 public:
  explicit ConwaySkein(std::size_t budget) : budget_(budget) {}

  ZPolynomial eval(LinkDiagram d) {
    auto key = normalize_key(d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++evaluations_ > budget_) {
      throw Error(Errc::recursion_budget_exceeded, "more than " + std::to_string(budget_) + " skein evaluations");
    }
    ZPolynomial result = eval_uncached(d);
    trim(result);
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  ZPolynomial eval_uncached(const LinkDiagram& d) {
    // Descending: traversing components in order, every crossing is first met over.
    std::set<int> seen;
    int bad = 0;
    for (const auto& comp : d.components) {
      for (const auto& p : comp) {
        if (seen.insert(p.crossing).second && p.strand == Strand::under) {
          bad = p.crossing;
          break;
        }
      }
      if (bad) break;
    }
    if (!bad) return d.components.size() == 1 ? ZPolynomial{1} : ZPolynomial{};

    Sign s = 0;
    LinkDiagram switched = d;
    for (auto& comp : switched.components) {
      for (auto& p : comp) {
        if (p.crossing == bad) {
          p.strand = opposite(p.strand);
          s = p.sign;
          p.sign = -p.sign;
        }
      }
    }
    ZPolynomial result = eval(std::move(switched));
    ZPolynomial smoothed = eval(smooth(d, bad));
    if (result.size() < smoothed.size() + 1) result.resize(smoothed.size() + 1, 0);
    for (std::size_t i = 0; i < smoothed.size(); ++i) result[i + 1] += s * smoothed[i];
    return result;
  }

  static LinkDiagram smooth(const LinkDiagram& d, int crossing) {
    std::vector<std::pair<std::size_t, std::size_t>> at;  // (component, index)
    for (std::size_t c = 0; c < d.components.size(); ++c) {
      for (std::size_t i = 0; i < d.components[c].size(); ++i) {
        if (d.components[c][i].crossing == crossing) at.emplace_back(c, i);
      }
    }
    LinkDiagram out;
    const auto [ci, a] = at[0];
    const auto [cj, b] = at[1];
    const auto& x = d.components[ci];
    if (ci == cj) {
      // One component splits into the outer part and a closed loop.
      std::vector<Passage> outer(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(a));
      outer.insert(outer.end(), x.begin() + static_cast<std::ptrdiff_t>(b) + 1, x.end());
      std::vector<Passage> inner(x.begin() + static_cast<std::ptrdiff_t>(a) + 1,
                                 x.begin() + static_cast<std::ptrdiff_t>(b));
      out = d;
      out.components[ci] = std::move(outer);
      out.components.push_back(std::move(inner));
      return out;
    }
    // Two components merge; run along x, around y, then finish x.
    const auto& y = d.components[cj];
    std::vector<Passage> merged(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(a));
    merged.insert(merged.end(), y.begin() + static_cast<std::ptrdiff_t>(b) + 1, y.end());
    merged.insert(merged.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(b));
    merged.insert(merged.end(), x.begin() + static_cast<std::ptrdiff_t>(a) + 1, x.end());
    out = d;
    out.components[ci] = std::move(merged);
    out.components.erase(out.components.begin() + static_cast<std::ptrdiff_t>(cj));
    return out;
  }

  std::size_t budget_;
  std::size_t evaluations_ = 0;
  std::unordered_map<std::string, ZPolynomial> memo_;
};

}  // namespace detail

inline ZPolynomial conway_polynomial(const SignedGaussCode& code, std::size_t budget = 1'000'000) {
  detail::LinkDiagram d;
  d.components.emplace_back(code.passages().begin(), code.passages().end());
  detail::ConwaySkein skein(budget);
  return skein.eval(std::move(d));
}

/// z^2 coefficient of the Conway polynomial; equals v2 on realizable codes.
inline long long conway_a2(const SignedGaussCode& code, std::size_t budget = 1'000'000) {
  auto p = conway_polynomial(code, budget);
  return p.size() > 2 ? p[2] : 0;
}

// ---------------------------------------------------------------------------

struct InvariantReport {
  int v2 = 0;
  int v3 = 0;
  int w = 0;
  int v = 0;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

inline InvariantReport v_invariant(const SignedGaussCode& code) {
  InvariantReport r;
  r.v2 = v2(code);
  r.v3 = v3(code);
  r.w = writhe(code);
  r.v = 6 * r.v3 - r.w * r.v2;
  return r;
}

namespace detail {

inline void require_distinct_labels(const SignedGaussCode& code, std::span<const int> labels) {
  std::set<int> s;
  for (int l : labels) {
    code.require_label(l);
    if (!s.insert(l).second) throw Error(Errc::unknown_label, "crossing " + std::to_string(l) + " chosen twice");
  }
}

}  // namespace detail

/// Alternating sum of v over all 2^n sign resolutions of the chosen crossings.
inline long long dnv(const SignedGaussCode& code, std::span<const int> labels) {
  detail::require_distinct_labels(code, labels);
  const std::size_t n = labels.size();
  long long total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::map<int, Sign> assignment;
    int parity = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Sign e = (mask >> i) & 1u ? -1 : +1;
      assignment[labels[i]] = e;
      parity *= e;
    }
    total += parity * v_invariant(resolve(code, assignment)).v;
  }
  return total;
}

inline long long dnv(const SignedGaussCode& code, std::initializer_list<int> labels) {
  return dnv(code, std::span<const int>(labels.begin(), labels.size()));
}

inline CycleType cycle_type(const SignedGaussCode& code, std::span<const int> labels) {
  if (labels.size() != 3) {
    throw Error(Errc::wrong_chord_count, "need exactly 3 crossings, got " + std::to_string(labels.size()));
  }
  detail::require_distinct_labels(code, labels);
  return classify(subdiagram(code, labels));
}

constexpr int d3v_value(CycleType t) noexcept {
  switch (t) {
    case CycleType::type_i: return -2;
    case CycleType::type_ii: return 2;
    case CycleType::type_iii: return 6;
    case CycleType::other: return 0;
  }
  return 0;
}

/// Third difference predicted from the cycle type of the chosen crossings.
inline int d3v_predicted(const SignedGaussCode& code, std::span<const int> labels) {
  return d3v_value(cycle_type(code, labels));
}

inline int d3v_predicted(const SignedGaussCode& code, std::initializer_list<int> labels) {
  return d3v_predicted(code, std::span<const int>(labels.begin(), labels.size()));
}

/// All k-subsets of 1..n in lexicographic order.
inline std::vector<std::vector<int>> label_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int c = from; c <= n; ++c) {
      cur.push_back(c);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace fhknot
