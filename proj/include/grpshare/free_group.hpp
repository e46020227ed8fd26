#pragma once

// Elements of the free group F_m on generators x1..xm, kept freely reduced.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace grpshare {

/// Number of free generators. Always at least one.
class Alphabet {
 public:
  explicit Alphabet(std::size_t rank) : rank_(rank) {
    detail::require(rank >= 1, "alphabet rank must be at least 1");
  }

  std::size_t rank() const { return rank_; }

  auto operator<=>(const Alphabet&) const = default;

 private:
  std::size_t rank_;
};

/// A generator x_i or its inverse. Stored as the signed index +i / -i.
class Letter {
 public:
  constexpr Letter(std::size_t generator, bool inverse = false)
      : value_(inverse ? -static_cast<std::int32_t>(generator) : static_cast<std::int32_t>(generator)) {
    if (generator == 0) {
      throw PreconditionError("generator index must be at least 1");
    }
  }

  static constexpr Letter from_signed(std::int32_t value) {
    return Letter(static_cast<std::size_t>(value < 0 ? -value : value), value < 0);
  }

  constexpr std::size_t generator() const {
    return static_cast<std::size_t>(value_ < 0 ? -value_ : value_);
  }
  constexpr bool is_inverse() const { return value_ < 0; }
  constexpr Letter inverse() const { return from_signed(-value_); }
  constexpr std::int32_t signed_value() const { return value_; }
  constexpr bool cancels(Letter other) const { return value_ == -other.value_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::int32_t value_;
};

class Word;
Word reduce(Alphabet alphabet, std::span<const Letter> raw);

/// A freely reduced word over an alphabet; the empty word is the identity.
class Word {
 public:
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
  Word(Alphabet alphabet, std::initializer_list<Letter> letters)
      : Word(reduce(alphabet, std::span<const Letter>(letters.begin(), letters.size()))) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  bool mentions(std::size_t generator) const {
    return std::any_of(letters_.begin(), letters_.end(),
                       [&](Letter l) { return l.generator() == generator; });
  }

  /// Same letters viewed over a larger (or equal) alphabet.
  Word over(Alphabet wider) const {
    for (auto l : letters_) {
      detail::require(l.generator() <= wider.rank(), "word does not fit the target alphabet");
    }
    Word w(wider);
    w.letters_ = letters_;
    return w;
  }

  /// Letters [pos, pos + len) as a word; the slice of a reduced word is reduced.
  Word subword(std::size_t pos, std::size_t len) const {
    Word w(alphabet_);
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return w;
  }

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& other) const {
    if (auto c = letters_ <=> other.letters_; c != 0) {
      return c;
    }
    return alphabet_.rank() <=> other.alphabet_.rank();
  }

 private:
  friend Word reduce(Alphabet alphabet, std::span<const Letter> raw);

  std::vector<Letter> letters_;
  Alphabet alphabet_;
};

/// Free reduction: cancels adjacent x x^-1 pairs with a stack pass.
inline Word reduce(Alphabet alphabet, std::span<const Letter> raw) {
  Word w(alphabet);
  w.letters_.reserve(raw.size());
  for (auto l : raw) {
    if (l.generator() > alphabet.rank()) {
      throw PreconditionError("letter x" + std::to_string(l.generator()) +
                              " outside alphabet of rank " + std::to_string(alphabet.rank()));
    }
    if (!w.letters_.empty() && w.letters_.back().cancels(l)) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !w.front().cancels(w.back());
}

/// Strips the conjugating prefix/suffix so first and last letters do not cancel.
inline Word cyclically_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo].cancels(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return w.subword(lo, hi - lo);
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return reduce(w.alphabet(), out);
}

inline Word concat(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) {
    throw PreconditionError("alphabet mismatch in concat");
  }
  std::vector<Letter> raw(a.letters().begin(), a.letters().end());
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return reduce(a.alphabet(), raw);
}

inline Word operator*(const Word& a, const Word& b) { return concat(a, b); }

/// h^-1 w h
inline Word conjugate(const Word& w, const Word& h) {
  if (w.alphabet() != h.alphabet()) {
    throw PreconditionError("alphabet mismatch in conjugate");
  }
  return invert(h) * w * h;
}

/// Rotation starting at position `shift`.
inline Word rotate(const Word& w, std::size_t shift) {
  if (w.empty()) {
    return w;
  }
  shift %= w.size();
  std::vector<Letter> raw(w.letters().begin(), w.letters().end());
  std::rotate(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(shift), raw.end());
  return reduce(w.alphabet(), raw);
}

/// All distinct rotations of a cyclically reduced word, in rotation order.
inline std::vector<Word> cyclic_permutations(const Word& w) {
  detail::require(is_cyclically_reduced(w), "cyclic_permutations needs a cyclically reduced word");
  std::vector<Word> out;
  if (w.empty()) {
    out.push_back(w);
    return out;
  }
  for (std::size_t s = 0; s < w.size(); ++s) {
    auto r = rotate(w, s);
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Non-backtracking random walk: the first letter is uniform over the 2m
/// letters, each later letter uniform over the 2m-1 that do not cancel.
template <std::uniform_random_bit_generator Rng>
Word random_reduced_word(std::size_t length, Alphabet alphabet, Rng& rng) {
  const auto m = alphabet.rank();
  std::vector<Letter> letters;
  letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const bool first = letters.empty();
    std::uniform_int_distribution<std::size_t> pick(0, first ? 2 * m - 1 : 2 * m - 2);
    auto idx = pick(rng);
    if (!first) {
      // Skip over the one letter that would cancel the previous one.
      auto banned = letters.back().inverse();
      auto banned_idx = 2 * (banned.generator() - 1) + (banned.is_inverse() ? 1 : 0);
      if (idx >= banned_idx) {
        ++idx;
      }
    }
    letters.emplace_back(idx / 2 + 1, idx % 2 == 1);
  }
  return reduce(alphabet, letters);
}

/// Uniform over cyclically reduced words of the given length (rejection on
/// random_reduced_word).
template <std::uniform_random_bit_generator Rng>
Word random_cyclically_reduced_word(std::size_t length, Alphabet alphabet, Rng& rng) {
  for (;;) {
    auto w = random_reduced_word(length, alphabet, rng);
    if (is_cyclically_reduced(w)) {
      return w;
    }
  }
}

// ---------------------------------------------------------------------------
// Text form: "x1 x2^-1 x3", empty string for the identity.

inline std::string to_string(Letter l) {
  auto s = "x" + std::to_string(l.generator());
  if (l.is_inverse()) {
    s += "^-1";
  }
  return s;
}

inline std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += to_string(w[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << to_string(w); }

namespace detail {

inline Letter parse_letter(std::string_view tok, Alphabet alphabet) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad letter '" + std::string(tok) + "': " + why);
  };
  if (tok.size() < 2 || tok[0] != 'x') {
    throw fail("expected x<i> or x<i>^-1");
  }
  bool inverse = false;
  auto digits = tok.substr(1);
  if (digits.size() > 3 && digits.substr(digits.size() - 3) == "^-1") {
    inverse = true;
    digits.remove_suffix(3);
  }
  if (digits.empty() || digits.size() > 9 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw fail("expected x<i> or x<i>^-1");
  }
  std::size_t index = std::stoul(std::string(digits));
  if (index == 0 || index > alphabet.rank()) {
    throw fail("generator index outside 1.." + std::to_string(alphabet.rank()));
  }
  return Letter(index, inverse);
}

}  // namespace detail

/// Parses whitespace separated letters and freely reduces the result.
inline Word parse_word(std::string_view text, Alphabet alphabet) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) {
      ++i;
    }
    auto start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') {
      ++i;
    }
    if (i > start) {
      raw.push_back(detail::parse_letter(text.substr(start, i - start), alphabet));
    }
  }
  return reduce(alphabet, raw);
}

}  // namespace grpshare
