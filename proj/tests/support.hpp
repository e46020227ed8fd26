#pragma once

// Shared helpers for the test suites: word literals, hand-rolled random
// generators and small independent oracles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "grpshare/grpshare.hpp"

namespace testing_support {

using namespace grpshare;

inline Word W(std::size_t rank, const std::string& text) { return parse_word(text, Alphabet(rank)); }

inline Presentation P(std::size_t rank, const std::vector<std::string>& relators) {
  std::vector<Word> rs;
  for (const auto& r : relators) {
    rs.push_back(W(rank, r));
  }
  return Presentation(Alphabet(rank), rs);
}

/// x1^k over rank `rank`.
inline Word power(std::size_t rank, int k, std::size_t gen = 1) {
  std::vector<Letter> raw;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) {
    raw.emplace_back(gen, k < 0);
  }
  return reduce(Alphabet(rank), raw);
}

/// Unreduced letter sequence with uniform letters.
template <typename Rng>
std::vector<Letter> random_letters(std::size_t length, std::size_t rank, Rng& rng) {
  std::uniform_int_distribution<std::size_t> gen(1, rank);
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < length; ++i) {
    out.emplace_back(gen(rng), inv(rng));
  }
  return out;
}

/// Exponent sum of generator `gen`.
inline long exponent_sum(const Word& w, std::size_t gen = 1) {
  long s = 0;
  for (auto l : w.letters()) {
    if (l.generator() == gen) {
      s += l.is_inverse() ? -1 : 1;
    }
  }
  return s;
}

/// Naive free reduction by repeated scanning, independent of the stack pass.
inline std::vector<Letter> naive_reduce(std::vector<Letter> raw) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
      if (raw[i].generator() == raw[i + 1].generator() && raw[i].is_inverse() != raw[i + 1].is_inverse()) {
        raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(i), raw.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return raw;
}

inline std::vector<Letter> letters_of(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

/// Sorted multiset of rotations, used to compare cyclic words.
inline std::vector<std::vector<Letter>> rotation_multiset(const Word& w) {
  std::vector<std::vector<Letter>> out;
  auto ls = letters_of(w);
  for (std::size_t s = 0; s < ls.size(); ++s) {
    std::vector<Letter> r(ls.begin() + static_cast<std::ptrdiff_t>(s), ls.end());
    r.insert(r.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(s));
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Default platform group used across suites.
inline Presentation sample_group(std::uint64_t seed, std::size_t rank = 3, std::size_t relators = 3,
                                 std::size_t length = 40) {
  std::mt19937_64 rng(seed);
  return random_platform_group(PlatformParams{rank, relators, length, kDehnLambda, kDefaultMaxAttempts}, rng);
}

}  // namespace testing_support
