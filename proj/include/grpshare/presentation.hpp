#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "free_group.hpp"

namespace grpshare {

/// <x1..xm | r1, r2, ...>. Relators are nonempty and cyclically reduced.
class Presentation {
 public:
  explicit Presentation(Alphabet alphabet, std::vector<Word> relators = {})
      : alphabet_(alphabet), relators_(std::move(relators)) {
    for (const auto& r : relators_) {
      detail::require(r.alphabet() == alphabet_, "relator alphabet differs from presentation");
      detail::require(!r.empty(), "relators must be nonempty");
      detail::require(is_cyclically_reduced(r), "relator " + to_string(r) + " is not cyclically reduced");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t rank() const { return alphabet_.rank(); }
  const std::vector<Word>& relators() const { return relators_; }
  const Word& relator(std::size_t i) const { return relators_.at(i); }

  std::size_t total_length() const {
    return std::accumulate(relators_.begin(), relators_.end(), std::size_t{0},
                           [](std::size_t acc, const Word& r) { return acc + r.size(); });
  }

  std::size_t max_relator_length() const {
    std::size_t best = 0;
    for (const auto& r : relators_) {
      best = std::max(best, r.size());
    }
    return best;
  }

  bool operator==(const Presentation&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

// ---------------------------------------------------------------------------
// Text format:
//   generators <m>
//   relator <word>
//   ...
// Lines starting with '#' and blank lines are ignored.

inline std::string to_string(const Presentation& p) {
  std::string out = "generators " + std::to_string(p.rank()) + "\n";
  for (const auto& r : p.relators()) {
    out += "relator " + to_string(r) + "\n";
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits "keyword rest" at the first blank.
inline std::pair<std::string_view, std::string_view> split_keyword(std::string_view line) {
  auto sp = line.find_first_of(" \t");
  if (sp == std::string_view::npos) {
    return {line, {}};
  }
  return {line.substr(0, sp), trim(line.substr(sp + 1))};
}

inline std::size_t parse_count(std::string_view text, const std::string& what) {
  if (text.empty() || text.size() > 18 ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("bad " + what + " '" + std::string(text) + "'");
  }
  return std::stoull(std::string(text));
}

// Shared by the presentation and breakdown readers. `extra` handles keywords
// other than generators/relator and returns false for unknown ones.
template <typename ExtraLine>
Presentation parse_presentation_lines(std::string_view text, ExtraLine&& extra) {
  std::optional<Alphabet> alphabet;
  std::vector<Word> relators;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    auto [key, rest] = split_keyword(line);
    auto where = " (line " + std::to_string(line_no) + ")";
    if (key == "generators") {
      if (alphabet) {
        throw ParseError("duplicate generators line" + where);
      }
      auto m = parse_count(rest, "generator count");
      if (m == 0) {
        throw ParseError("generator count must be positive" + where);
      }
      alphabet.emplace(m);
    } else if (key == "relator") {
      if (!alphabet) {
        throw ParseError("relator before generators line" + where);
      }
      auto w = parse_word(rest, *alphabet);
      if (w.empty()) {
        throw ParseError("empty relator" + where);
      }
      if (!is_cyclically_reduced(w)) {
        throw ParseError("relator is not cyclically reduced" + where);
      }
      relators.push_back(std::move(w));
    } else if (!alphabet || !extra(key, rest, *alphabet)) {
      throw ParseError("unexpected line '" + std::string(line) + "'" + where);
    }
  }
  if (!alphabet) {
    throw ParseError("missing generators line");
  }
  return Presentation(*alphabet, std::move(relators));
}

}  // namespace detail

inline Presentation parse_presentation(std::string_view text) {
  return detail::parse_presentation_lines(
      text, [](std::string_view, std::string_view, const Alphabet&) { return false; });
}

inline std::ostream& operator<<(std::ostream& os, const Presentation& p) { return os << to_string(p); }

}  // namespace grpshare
