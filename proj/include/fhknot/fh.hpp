#pragma once

// Fox-Hatcher moves.  On a diagram the move drags the leftmost crossing's
// arc around the sphere so that it reappears as the rightmost crossing; on
// a Gauss diagram it moves the leftmost vertex to the rightmost position.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fhknot/codes.hpp"
#include "fhknot/error.hpp"
#include "fhknot/gauss.hpp"

namespace fhknot {

inline CanonicalWord fh_move(const CanonicalWord& w) {
  if (w.size() == 0) throw Error(Errc::empty_diagram, "FH move needs at least one chord");
  std::vector<int> shifted(w.symbols().begin() + 1, w.symbols().end());
  shifted.push_back(w[0]);
  return CanonicalWord(shifted);
}

inline GaussDiagram fh_move(const GaussDiagram& g) {
  if (g.size() == 0) throw Error(Errc::empty_diagram, "FH move needs at least one chord");
  const int m = static_cast<int>(g.size());
  std::vector<int> partner(g.size());
  const int former = g.partner(0) - 1;  // new index of old position 1's partner
  for (int i = 1; i < m; ++i) {
    int j = g.partner(static_cast<std::size_t>(i));
    partner[static_cast<std::size_t>(i - 1)] = (j == 0) ? m - 1 : j - 1;
  }
  partner[static_cast<std::size_t>(m - 1)] = former;
  return GaussDiagram(std::move(partner));
}

/// The leftmost passage is removed and re-created as the last passage.  The
/// moving strand keeps its over/under role and the newborn crossing keeps
/// the sign of the removed one, so the writhe is preserved.
inline SignedGaussCode fh_move_on_code(const SignedGaussCode& code) {
  if (code.empty()) throw Error(Errc::empty_diagram, "FH move needs at least one crossing");
  std::vector<Passage> out(code.passages().begin() + 1, code.passages().end());
  out.push_back(code[0]);
  return SignedGaussCode(std::move(out));
}

struct FHOrbit {
  int period = 0;
  /// sequence[i+1] = fh_move(sequence[i]); sequence[0] is the least member.
  std::vector<CanonicalWord> sequence;

  const CanonicalWord& representative() const { return sequence.front(); }
  bool contains(const CanonicalWord& w) const {
    return std::find(sequence.begin(), sequence.end(), w) != sequence.end();
  }
};

inline FHOrbit fh_orbit(const CanonicalWord& start) {
  FHOrbit orbit;
  if (start.size() == 0) {
    orbit.period = 1;
    orbit.sequence.push_back(start);
    return orbit;
  }
  auto w = start;
  do {
    orbit.sequence.push_back(w);
    w = fh_move(w);
  } while (w != start);
  orbit.period = static_cast<int>(orbit.sequence.size());
  auto least = std::min_element(orbit.sequence.begin(), orbit.sequence.end());
  std::rotate(orbit.sequence.begin(), least, orbit.sequence.end());
  return orbit;
}

inline FHOrbit fh_orbit(const GaussDiagram& g) { return fh_orbit(canonical_form(g)); }

/// The 2n words met along a full FH cycle starting at `start` (with
/// repetitions when the period is a proper divisor of 2n).
inline std::vector<CanonicalWord> fh_cycle_words(const CanonicalWord& start) {
  std::vector<CanonicalWord> out;
  auto w = start;
  for (std::size_t i = 0; i < start.size(); ++i) {
    out.push_back(w);
    w = fh_move(w);
  }
  return out;
}

/// How often each member occurs in a full 2n-step FH cycle.
inline std::map<CanonicalWord, int> cycle_multiplicities(const CanonicalWord& start) {
  std::map<CanonicalWord, int> out;
  for (const auto& w : fh_cycle_words(start)) ++out[w];
  return out;
}

/// Disjoint FH orbits covering every n-chord diagram, ordered by representative.
inline std::vector<FHOrbit> orbit_decomposition(int n) {
  std::vector<FHOrbit> orbits;
  std::vector<CanonicalWord> seen;
  for (const auto& w : enumerate_words(n)) {
    if (std::binary_search(seen.begin(), seen.end(), w)) continue;
    auto orbit = fh_orbit(w);
    seen.insert(seen.end(), orbit.sequence.begin(), orbit.sequence.end());
    std::sort(seen.begin(), seen.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

enum class CycleType { type_i, type_ii, type_iii, other };

constexpr std::string_view to_string(CycleType t) noexcept {
  switch (t) {
    case CycleType::type_i: return "TypeI";
    case CycleType::type_ii: return "TypeII";
    case CycleType::type_iii: return "TypeIII";
    case CycleType::other: return "Other";
  }
  return "Other";
}

/// Anchor diagrams of the three contributing 3-chord cycles.
namespace anchors {
inline const CanonicalWord type_i{1, 2, 2, 3, 1, 3};
inline const CanonicalWord type_ii{1, 2, 1, 3, 2, 3};
inline const CanonicalWord type_iii{1, 2, 3, 1, 2, 3};
}  // namespace anchors

inline CycleType classify(const CanonicalWord& w) {
  if (w.chord_count() != 3) {
    throw Error(Errc::wrong_chord_count, "classification needs 3 chords, got " + std::to_string(w.chord_count()));
  }
  static const FHOrbit type_i = fh_orbit(anchors::type_i);
  static const FHOrbit type_ii = fh_orbit(anchors::type_ii);
  static const FHOrbit type_iii = fh_orbit(anchors::type_iii);
  if (type_iii.contains(w)) return CycleType::type_iii;
  if (type_ii.contains(w)) return CycleType::type_ii;
  if (type_i.contains(w)) return CycleType::type_i;
  return CycleType::other;
}

inline CycleType classify(const GaussDiagram& g) { return classify(canonical_form(g)); }

/// `period=<p> members=<word>;<word>;...`
inline std::string format_orbit(const FHOrbit& orbit) {
  std::string out = "period=" + std::to_string(orbit.period) + " members=";
  for (std::size_t i = 0; i < orbit.sequence.size(); ++i) {
    if (i) out.push_back(';');
    out += to_string(orbit.sequence[i]);
  }
  return out;
}

}  // namespace fhknot
