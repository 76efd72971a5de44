#pragma once

// Linear Gauss diagrams: perfect pairings of the ordered positions 1..2n.
//
// Because the positions are totally ordered, two diagrams are isomorphic
// iff their words agree after numbering chords by first occurrence, so the
// canonical word is a complete invariant.

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fhknot/codes.hpp"
#include "fhknot/error.hpp"

namespace fhknot {

/// Chord symbols 1..n, numbered by first occurrence, each appearing twice.
class CanonicalWord {
 public:
  CanonicalWord() = default;

  /// Accepts any word in which every symbol appears exactly twice and
  /// relabels it by first occurrence.
  explicit CanonicalWord(std::span<const int> symbols) {
    std::vector<int> from;
    word_.reserve(symbols.size());
    for (int s : symbols) {
      auto it = std::find(from.begin(), from.end(), s);
      if (it == from.end()) {
        from.push_back(s);
        word_.push_back(static_cast<int>(from.size()));
      } else {
        word_.push_back(static_cast<int>(it - from.begin()) + 1);
      }
    }
    std::vector<int> count(from.size(), 0);
    for (int s : word_) ++count[static_cast<std::size_t>(s - 1)];
    if (std::any_of(count.begin(), count.end(), [](int c) { return c != 2; })) {
      throw Error(Errc::invalid_diagram, "every chord symbol must appear exactly twice");
    }
  }

  CanonicalWord(std::initializer_list<int> symbols)
      : CanonicalWord(std::span<const int>(symbols.begin(), symbols.size())) {}

  std::span<const int> symbols() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }
  int chord_count() const noexcept { return static_cast<int>(word_.size() / 2); }
  int operator[](std::size_t i) const { return word_[i]; }

  friend bool operator==(const CanonicalWord&, const CanonicalWord&) = default;
  friend auto operator<=>(const CanonicalWord&, const CanonicalWord&) = default;

 private:
  std::vector<int> word_;
};

/// `(1,2,3,1,2,3)`
inline std::string to_string(const CanonicalWord& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(w[i]);
  }
  out.push_back(')');
  return out;
}

/// Accepts `(1,2,1,2)`, `1,2,1,2`, `1 2 1 2` or `1212`.
inline CanonicalWord parse_word(std::string_view text) {
  std::vector<int> symbols;
  bool has_separator = text.find_first_of(", ") != std::string_view::npos;
  int current = -1;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      if (has_separator) {
        current = (current < 0 ? 0 : current * 10) + (c - '0');
      } else {
        symbols.push_back(c - '0');
      }
    } else if (c == ',' || c == ' ' || c == '(' || c == ')') {
      if (current >= 0) symbols.push_back(current);
      current = -1;
    } else {
      throw Error(Errc::malformed_input, "bad character in diagram word: '" + std::string(text) + "'");
    }
  }
  if (current >= 0) symbols.push_back(current);
  return CanonicalWord(symbols);
}

/// Perfect pairing of positions 0..2n-1 (0-based internally).
class GaussDiagram {
 public:
  GaussDiagram() = default;

  /// `partner[i]` is the position paired with i.
  explicit GaussDiagram(std::vector<int> partner) : partner_(std::move(partner)) {
    const int m = static_cast<int>(partner_.size());
    for (int i = 0; i < m; ++i) {
      int j = partner_[static_cast<std::size_t>(i)];
      if (j < 0 || j >= m || j == i || partner_[static_cast<std::size_t>(j)] != i) {
        throw Error(Errc::invalid_diagram, "pairing is not a perfect matching");
      }
    }
  }

  /// From 1-based pairs, e.g. {{1,4},{2,5},{3,6}}.
  static GaussDiagram from_pairs(std::span<const std::pair<int, int>> pairs) {
    std::vector<int> partner(pairs.size() * 2, -1);
    for (auto [a, b] : pairs) {
      if (a < 1 || b < 1 || a > static_cast<int>(partner.size()) || b > static_cast<int>(partner.size()) ||
          partner[static_cast<std::size_t>(a - 1)] != -1 || partner[static_cast<std::size_t>(b - 1)] != -1) {
        throw Error(Errc::invalid_diagram, "pairs do not partition 1..2n");
      }
      partner[static_cast<std::size_t>(a - 1)] = b - 1;
      partner[static_cast<std::size_t>(b - 1)] = a - 1;
    }
    return GaussDiagram(std::move(partner));
  }

  static GaussDiagram from_pairs(std::initializer_list<std::pair<int, int>> pairs) {
    return from_pairs(std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
  }

  static GaussDiagram from_word(const CanonicalWord& w) {
    std::vector<int> partner(w.size(), -1);
    std::vector<int> first(static_cast<std::size_t>(w.chord_count()) + 1, -1);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto s = static_cast<std::size_t>(w[i]);
      if (first[s] < 0) {
        first[s] = static_cast<int>(i);
      } else {
        partner[i] = first[s];
        partner[static_cast<std::size_t>(first[s])] = static_cast<int>(i);
      }
    }
    return GaussDiagram(std::move(partner));
  }

  int chord_count() const noexcept { return static_cast<int>(partner_.size() / 2); }
  std::size_t size() const noexcept { return partner_.size(); }
  int partner(std::size_t position) const { return partner_.at(position); }
  std::span<const int> partners() const noexcept { return partner_; }

  friend bool operator==(const GaussDiagram&, const GaussDiagram&) = default;

 private:
  std::vector<int> partner_;
};

inline CanonicalWord canonical_form(const GaussDiagram& d) {
  std::vector<int> word(d.size(), 0);
  int next = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto j = static_cast<std::size_t>(d.partner(i));
    if (j > i) word[i] = ++next;
    else word[i] = word[j];
  }
  return CanonicalWord(word);
}

inline GaussDiagram underlying_diagram(const SignedGaussCode& code) {
  std::vector<int> partner(code.size());
  for (int label = 1; label <= code.crossing_count(); ++label) {
    auto [a, b] = code.positions(label);
    partner[a] = static_cast<int>(b);
    partner[b] = static_cast<int>(a);
  }
  return GaussDiagram(std::move(partner));
}

/// Chord pattern induced on the chosen crossings, compressed to 1..2k.
inline GaussDiagram subdiagram(const SignedGaussCode& code, std::span<const int> labels) {
  std::set<int> chosen;
  for (int l : labels) {
    code.require_label(l);
    chosen.insert(l);
  }
  std::vector<int> word;
  for (const auto& p : code.passages()) {
    if (chosen.count(p.crossing)) word.push_back(p.crossing);
  }
  return GaussDiagram::from_word(CanonicalWord(word));
}

inline GaussDiagram subdiagram(const SignedGaussCode& code, std::initializer_list<int> labels) {
  return subdiagram(code, std::span<const int>(labels.begin(), labels.size()));
}

inline bool respects(const SignedGaussCode& code, std::span<const int> labels, const GaussDiagram& g) {
  return canonical_form(subdiagram(code, labels)) == canonical_form(g);
}

inline bool respects(const SignedGaussCode& code, std::span<const int> labels, const CanonicalWord& g) {
  return canonical_form(subdiagram(code, labels)) == g;
}

/// All canonical words with n chords in lexicographic order.
inline std::vector<CanonicalWord> enumerate_words(int n) {
  std::vector<CanonicalWord> out;
  if (n < 0) return out;
  std::vector<int> word;
  std::vector<int> open;  // open chord symbols, ascending
  word.reserve(static_cast<std::size_t>(2 * n));
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(word.size()) == 2 * n) {
      out.emplace_back(word);
      return;
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      int s = open[k];
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
      word.push_back(s);
      self(self, next);
      word.pop_back();
      open.insert(open.begin() + static_cast<std::ptrdiff_t>(k), s);
    }
    if (next <= n) {
      open.push_back(next);
      word.push_back(next);
      self(self, next + 1);
      word.pop_back();
      open.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// One diagram per isomorphism class, ordered by canonical word.
inline std::vector<GaussDiagram> enumerate(int n) {
  std::vector<GaussDiagram> out;
  for (const auto& w : enumerate_words(n)) out.push_back(GaussDiagram::from_word(w));
  return out;
}

}  // namespace fhknot
