#pragma once

// Signed Gauss codes of long-knot diagrams.
//
// A long-knot diagram is read from the left tail to the right tail; every
// time the strand passes through a crossing we record one passage
// (over/under, crossing label, crossing sign).  The text form is a
// whitespace-separated word of tokens `O<k><s>` / `U<k><s>` with s in {+,-},
// e.g. the standard right-handed trefoil is "O1+ U2+ O3+ U1+ O2+ U3+".

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fhknot/error.hpp"

namespace fhknot {

enum class Strand : unsigned char { over, under };

constexpr Strand opposite(Strand s) noexcept { return s == Strand::over ? Strand::under : Strand::over; }

/// Crossing sign, +1 or -1.
using Sign = int;

struct Passage {
  Strand strand = Strand::over;
  int crossing = 1;
  Sign sign = +1;

  friend bool operator==(const Passage&, const Passage&) = default;
  friend auto operator<=>(const Passage&, const Passage&) = default;
};

/// Validated signed Gauss code.  Labels are normalized to 1..n in order of
/// first appearance, so two codes compare equal iff they describe the same
/// labelled diagram up to relabelling.
class SignedGaussCode {
 public:
  SignedGaussCode() = default;

  /// Validates and normalizes.  Throws Error on any invariant violation.
  explicit SignedGaussCode(std::vector<Passage> passages) : passages_(std::move(passages)) {
    validate_and_normalize();
  }

  std::span<const Passage> passages() const noexcept { return passages_; }
  std::size_t size() const noexcept { return passages_.size(); }
  bool empty() const noexcept { return passages_.empty(); }
  int crossing_count() const noexcept { return static_cast<int>(passages_.size() / 2); }
  const Passage& operator[](std::size_t i) const { return passages_[i]; }

  bool has_label(int label) const noexcept { return label >= 1 && label <= crossing_count(); }

  /// Positions (0-based) of the two passages of `label`, first visit first.
  std::pair<std::size_t, std::size_t> positions(int label) const {
    require_label(label);
    return positions_[static_cast<std::size_t>(label - 1)];
  }

  Sign sign(int label) const { return passages_[positions(label).first].sign; }

  /// Strand role at the first visit of `label` along the long knot.
  Strand first_strand(int label) const { return passages_[positions(label).first].strand; }

  void require_label(int label) const {
    if (!has_label(label)) {
      throw Error(Errc::unknown_label, "crossing " + std::to_string(label) + " not in code");
    }
  }

  friend bool operator==(const SignedGaussCode& a, const SignedGaussCode& b) {
    return a.passages_ == b.passages_;
  }

 private:
  void validate_and_normalize() {
    if (passages_.size() % 2 != 0) {
      throw Error(Errc::label_count_not_two, "odd number of passages");
    }
    std::map<int, int> relabel;  // original label -> order of first appearance
    for (auto& p : passages_) {
      if (p.crossing < 1) throw Error(Errc::malformed_token, "non-positive crossing label");
      if (p.sign != 1 && p.sign != -1) throw Error(Errc::malformed_token, "sign must be +1 or -1");
      auto [it, inserted] = relabel.try_emplace(p.crossing, static_cast<int>(relabel.size()) + 1);
      p.crossing = it->second;
    }
    positions_.assign(relabel.size(), {0, 0});
    std::vector<int> count(relabel.size(), 0);
    for (std::size_t i = 0; i < passages_.size(); ++i) {
      auto k = static_cast<std::size_t>(passages_[i].crossing - 1);
      if (count[k] == 0) positions_[k].first = i;
      else if (count[k] == 1) positions_[k].second = i;
      ++count[k];
    }
    for (std::size_t k = 0; k < count.size(); ++k) {
      const auto label = std::to_string(k + 1);
      if (count[k] != 2) {
        throw Error(Errc::label_count_not_two,
                    "crossing " + label + " occurs " + std::to_string(count[k]) + " times");
      }
      const auto& a = passages_[positions_[k].first];
      const auto& b = passages_[positions_[k].second];
      if (a.strand == b.strand) {
        throw Error(Errc::over_under_mismatch, "crossing " + label + " has two " +
                                                   (a.strand == Strand::over ? "overs" : "unders"));
      }
      if (a.sign != b.sign) throw Error(Errc::sign_mismatch, "crossing " + label + " has disagreeing signs");
    }
  }

  std::vector<Passage> passages_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

namespace detail {

inline Passage parse_token(std::string_view tok) {
  auto bad = [&] { return Error(Errc::malformed_token, "'" + std::string(tok) + "'"); };
  if (tok.size() < 3) throw bad();
  Passage p;
  switch (tok.front()) {
    case 'O': case 'o': p.strand = Strand::over; break;
    case 'U': case 'u': p.strand = Strand::under; break;
    default: throw bad();
  }
  switch (tok.back()) {
    case '+': p.sign = +1; break;
    case '-': p.sign = -1; break;
    default: throw bad();
  }
  auto digits = tok.substr(1, tok.size() - 2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw bad();
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p.crossing);
  if (ec != std::errc{} || p.crossing < 1) throw bad();
  return p;
}

}  // namespace detail

/// Parses a whitespace-separated token word.  Unicode minus (U+2212) is
/// accepted as a sign.  Text after `#` is ignored.
inline SignedGaussCode parse_gauss_code(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') break;
    if (text.substr(i, 3) == "\xE2\x88\x92") {
      cleaned.push_back('-');
      i += 2;
      continue;
    }
    cleaned.push_back(text[i]);
  }
  std::vector<Passage> passages;
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) passages.push_back(detail::parse_token(tok));
  return SignedGaussCode(std::move(passages));
}

inline std::string serialize(const SignedGaussCode& code) {
  std::string out;
  for (const auto& p : code.passages()) {
    if (!out.empty()) out.push_back(' ');
    out.push_back(p.strand == Strand::over ? 'O' : 'U');
    out += std::to_string(p.crossing);
    out.push_back(p.sign > 0 ? '+' : '-');
  }
  return out;
}

/// Blackboard framing number: one sign per crossing.
inline int writhe(const SignedGaussCode& code) {
  int w = 0;
  for (const auto& p : code.passages()) {
    if (p.strand == Strand::over) w += p.sign;
  }
  return w;
}

/// Swaps over/under at both passages of `label` and flips its sign.
inline SignedGaussCode crossing_change(const SignedGaussCode& code, int label) {
  code.require_label(label);
  std::vector<Passage> out(code.passages().begin(), code.passages().end());
  for (auto& p : out) {
    if (p.crossing == label) {
      p.strand = opposite(p.strand);
      p.sign = -p.sign;
    }
  }
  return SignedGaussCode(std::move(out));
}

/// Sets every assigned crossing to the requested sign by crossing changes.
inline SignedGaussCode resolve(const SignedGaussCode& code, const std::map<int, Sign>& assignment) {
  std::vector<Passage> out(code.passages().begin(), code.passages().end());
  for (const auto& [label, target] : assignment) {
    code.require_label(label);
    if (target != 1 && target != -1) throw Error(Errc::malformed_input, "resolution sign must be +1 or -1");
    if (code.sign(label) == target) continue;
    for (auto& p : out) {
      if (p.crossing == label) {
        p.strand = opposite(p.strand);
        p.sign = -p.sign;
      }
    }
  }
  return SignedGaussCode(std::move(out));
}

/// Mirror image through the diagram plane: every crossing changed.
inline SignedGaussCode mirror(const SignedGaussCode& code) {
  std::vector<Passage> out(code.passages().begin(), code.passages().end());
  for (auto& p : out) {
    p.strand = opposite(p.strand);
    p.sign = -p.sign;
  }
  return SignedGaussCode(std::move(out));
}

// ---------------------------------------------------------------------------
// Catalog files: `name<TAB>gauss_code<TAB>expected_v2<TAB>expected_v3`

struct CatalogEntry {
  std::string name;
  SignedGaussCode code;
  int expected_v2 = 0;
  int expected_v3 = 0;
  int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline int parse_int_field(std::string_view field, int line) {
  field = trim(field);
  int value = 0;
  const char* first = field.data();
  if (!field.empty() && field.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(Errc::malformed_input, "line " + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail

inline std::vector<CatalogEntry> parse_catalog(std::istream& in) {
  std::vector<CatalogEntry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    if (detail::trim(text).empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = text.find('\t', start);
      fields.push_back(text.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw Error(Errc::malformed_input,
                  "line " + std::to_string(line) + ": expected 4 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    CatalogEntry e;
    e.name = std::string(detail::trim(fields[0]));
    e.line = line;
    try {
      e.code = parse_gauss_code(fields[1]);
    } catch (const Error& err) {
      std::string_view what = err.what();
      what.remove_prefix(errc_name(err.code()).size() + 2);
      throw Error(err.code(), "line " + std::to_string(line) + ": " + std::string(what));
    }
    e.expected_v2 = detail::parse_int_field(fields[2], line);
    e.expected_v3 = detail::parse_int_field(fields[3], line);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_catalog(in);
}

}  // namespace fhknot
