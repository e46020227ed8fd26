#pragma once

// Symmetrized relator sets, pieces and the metric small cancellation
// condition C'(lambda), plus rejection sampling of platform groups.

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "free_group.hpp"
#include "presentation.hpp"
#include "rational.hpp"

namespace grpshare {

inline constexpr Rational kDehnLambda{1, 6};
inline constexpr std::size_t kDefaultMaxAttempts = 1000;

/// Relators closed under inversion and cyclic permutation. Members are kept
/// sorted and distinct.
class SymmetrizedSet {
 public:
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains(const Word& w) const {
    return std::binary_search(members_.begin(), members_.end(), w);
  }

  /// Recomputes the closure of the members and compares.
  bool is_closed() const;

  bool operator==(const SymmetrizedSet&) const = default;

 private:
  friend SymmetrizedSet symmetrize(Alphabet alphabet, std::span<const Word> relators);

  explicit SymmetrizedSet(Alphabet alphabet) : alphabet_(alphabet) {}

  Alphabet alphabet_;
  std::vector<Word> members_;
};

inline SymmetrizedSet symmetrize(Alphabet alphabet, std::span<const Word> relators) {
  SymmetrizedSet out(alphabet);
  for (const auto& raw : relators) {
    detail::require(raw.alphabet() == alphabet, "relator alphabet mismatch");
    detail::require(!raw.empty(), "cannot symmetrize an empty relator");
    auto r = cyclically_reduce(raw);
    for (const auto& base : {r, invert(r)}) {
      for (auto& rot : cyclic_permutations(base)) {
        out.members_.push_back(std::move(rot));
      }
    }
  }
  std::sort(out.members_.begin(), out.members_.end());
  out.members_.erase(std::unique(out.members_.begin(), out.members_.end()), out.members_.end());
  return out;
}

inline SymmetrizedSet symmetrize(const Presentation& p) { return symmetrize(p.alphabet(), p.relators()); }

inline bool SymmetrizedSet::is_closed() const {
  for (const auto& m : members_) {
    if (!is_cyclically_reduced(m)) {
      return false;
    }
  }
  return symmetrize(alphabet_, members_) == *this;
}

namespace detail {

inline std::size_t common_prefix(const Word& a, const Word& b) {
  auto n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) {
    ++i;
  }
  return i;
}

// For each member, the longest piece that is a prefix of it. In sorted order
// the longest common prefix of a member with any other member is attained at
// one of its two neighbours.
inline std::vector<std::pair<std::size_t, std::size_t>> longest_piece_prefixes(const SymmetrizedSet& s) {
  const auto& m = s.members();
  std::vector<std::pair<std::size_t, std::size_t>> out(m.size(), {0, 0});
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    auto len = common_prefix(m[i], m[i + 1]);
    if (len > out[i].first) {
      out[i] = {len, i + 1};
    }
    if (len > out[i + 1].first) {
      out[i + 1] = {len, i};
    }
  }
  return out;
}

}  // namespace detail

struct PieceWitness {
  Word piece;
  Word relator;        // the member whose ratio is reported
  Word other_relator;  // a distinct member sharing the piece as prefix
};

/// Longest piece of a symmetrized set. `piece` is empty when no two distinct
/// members share a first letter.
struct MaxPiece {
  std::size_t length = 0;
  std::optional<PieceWitness> witness;
};

inline MaxPiece max_piece(const SymmetrizedSet& s) {
  MaxPiece best;
  auto prefixes = detail::longest_piece_prefixes(s);
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    auto [len, j] = prefixes[i];
    if (len > best.length) {
      const auto& r = s.members()[i];
      best.length = len;
      best.witness = PieceWitness{r.subword(0, len), r, s.members()[j]};
    }
  }
  return best;
}

struct CancellationReport {
  Rational lambda_bound;
  Rational max_piece_ratio;  // max over members r of |longest piece prefix of r| / |r|
  std::optional<PieceWitness> witness;
  bool satisfied = false;
};

inline CancellationReport check_small_cancellation(const SymmetrizedSet& s, Rational lambda) {
  detail::require(Rational(0) < lambda && lambda < Rational(1), "lambda must lie in (0, 1)");
  CancellationReport report{lambda, Rational(0), std::nullopt, false};
  auto prefixes = detail::longest_piece_prefixes(s);
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    auto [len, j] = prefixes[i];
    if (len == 0) {
      continue;
    }
    const auto& r = s.members()[i];
    Rational ratio(static_cast<std::int64_t>(len), static_cast<std::int64_t>(r.size()));
    if (ratio > report.max_piece_ratio) {
      report.max_piece_ratio = ratio;
      report.witness = PieceWitness{r.subword(0, len), r, s.members()[j]};
    }
  }
  report.satisfied = report.max_piece_ratio < lambda;
  return report;
}

inline CancellationReport check_small_cancellation(const Presentation& p, Rational lambda = kDehnLambda) {
  return check_small_cancellation(symmetrize(p), lambda);
}

/// True when some relator is a cyclic permutation of another one or of its
/// inverse. Such presentations carry fewer independent relators than asked.
inline bool has_redundant_relators(const Presentation& p) {
  const auto& rs = p.relators();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    auto closure = symmetrize(p.alphabet(), std::span<const Word>(&rs[i], 1));
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (closure.contains(cyclically_reduce(rs[j]))) {
        return true;
      }
    }
  }
  return false;
}

struct PlatformParams {
  std::size_t rank = 3;
  std::size_t relator_count = 3;
  std::size_t relator_length = 40;
  Rational lambda = kDehnLambda;
  std::size_t max_attempts = kDefaultMaxAttempts;
};

/// Draws `relator_count` random cyclically reduced words and retries until
/// the presentation satisfies C'(lambda) with no redundant relators.
template <std::uniform_random_bit_generator Rng>
Presentation random_platform_group(const PlatformParams& params, Rng& rng) {
  detail::require(params.relator_length > 6, "relator length must exceed 6");
  detail::require(params.relator_count >= 1, "need at least one relator");
  detail::require(params.max_attempts >= 1, "max_attempts must be at least 1");
  detail::require(Rational(0) < params.lambda && params.lambda < Rational(1), "lambda must lie in (0, 1)");
  Alphabet alphabet(params.rank);
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    std::vector<Word> relators;
    relators.reserve(params.relator_count);
    for (std::size_t i = 0; i < params.relator_count; ++i) {
      relators.push_back(random_cyclically_reduced_word(params.relator_length, alphabet, rng));
    }
    Presentation p(alphabet, std::move(relators));
    if (!has_redundant_relators(p) && check_small_cancellation(p, params.lambda).satisfied) {
      return p;
    }
  }
  throw BudgetExhausted("no C'(" + params.lambda.to_string() + ") presentation found in " +
                        std::to_string(params.max_attempts) + " attempts");
}

}  // namespace grpshare
