#pragma once

// Dehn's algorithm for C'(1/6) presentations and construction of words that
// are (or are not) trivial in such a group.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "free_group.hpp"
#include "presentation.hpp"
#include "small_cancellation.hpp"

namespace grpshare {

/// Prefix tree over the members of a symmetrized set. Every node remembers
/// the shortest member passing through it, so "is this subword more than
/// half of some relator" is answered during a single walk.
class RelatorIndex {
 public:
  struct Match {
    std::size_t length;  // letters of the scanned word consumed
    std::size_t member;  // index into members()
  };

  explicit RelatorIndex(SymmetrizedSet set) : set_(std::move(set)) {
    nodes_.emplace_back();
    const auto& members = set_.members();
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
      std::uint32_t node = 0;
      for (auto l : members[mi].letters()) {
        auto child = find_child(node, l);
        if (!child) {
          child = static_cast<std::uint32_t>(nodes_.size());
          nodes_[node].children.emplace_back(l, *child);
          nodes_.emplace_back();
        }
        node = *child;
        auto& best = nodes_[node].shortest;
        if (best == kNone || members[mi].size() < members[best].size()) {
          best = static_cast<std::uint32_t>(mi);
        }
      }
      max_length_ = std::max(max_length_, members[mi].size());
    }
  }

  const SymmetrizedSet& set() const { return set_; }
  const std::vector<Word>& members() const { return set_.members(); }
  std::size_t max_member_length() const { return max_length_; }

  /// Longest u = letters[pos, pos+len) that is a prefix of some member r
  /// with 2|u| > |r|. Among members sharing u, the shortest is chosen.
  std::optional<Match> longest_long_prefix(std::span<const Letter> letters, std::size_t pos) const {
    std::optional<Match> found;
    std::uint32_t node = 0;
    for (std::size_t depth = 1; pos + depth <= letters.size(); ++depth) {
      auto child = find_child(node, letters[pos + depth - 1]);
      if (!child) {
        break;
      }
      node = *child;
      auto member = nodes_[node].shortest;
      if (2 * depth > members()[member].size()) {
        found = Match{depth, member};
      }
    }
    return found;
  }

  /// Whether some suffix of letters[0, end] is more than half of a member.
  /// Suffixes ending earlier are assumed to have been checked already.
  bool long_piece_ends_at(std::span<const Letter> letters, std::size_t end) const {
    auto first = end + 1 > max_length_ ? end + 1 - max_length_ : 0;
    for (std::size_t start = first; start <= end; ++start) {
      std::uint32_t node = 0;
      bool walked = true;
      for (std::size_t i = start; i <= end; ++i) {
        auto child = find_child(node, letters[i]);
        if (!child) {
          walked = false;
          break;
        }
        node = *child;
      }
      if (walked && 2 * (end - start + 1) > members()[nodes_[node].shortest].size()) {
        return true;
      }
    }
    return false;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::vector<std::pair<Letter, std::uint32_t>> children;
    std::uint32_t shortest = kNone;
  };

  std::optional<std::uint32_t> find_child(std::uint32_t node, Letter l) const {
    for (const auto& [letter, child] : nodes_[node].children) {
      if (letter == l) {
        return child;
      }
    }
    return std::nullopt;
  }

  SymmetrizedSet set_;
  std::vector<Node> nodes_;
  std::size_t max_length_ = 0;
};

struct DehnStep {
  std::size_t position;
  Word replaced;     // u, more than half of `relator`
  Word replacement;  // v^-1 where relator = u v
  Word relator;
};

struct DehnTrace {
  std::vector<DehnStep> steps;
  Word final_word;
  bool is_trivial = false;
};

/// One factor h^-1 r^e h of a product of conjugates of relators.
struct ConjugateFactor {
  std::size_t relator;  // index into the presentation's relators
  bool inverted;
  Word conjugator;
};

/// A word together with its expression as a product of conjugates.
struct TrivialWord {
  Word word;
  std::vector<ConjugateFactor> factors;
};

/// Rebuilds the product of conjugates over `relators`.
inline Word evaluate_factors(Alphabet alphabet, std::span<const Word> relators,
                             std::span<const ConjugateFactor> factors) {
  Word out(alphabet);
  for (const auto& f : factors) {
    const auto& r = relators[f.relator];
    out = out * conjugate(f.inverted ? invert(r) : r, f.conjugator);
  }
  return out;
}

/// A presentation together with the index used for its word problem. Build
/// it once per participant group; all members are const and thread-safe.
class PlatformGroup {
 public:
  /// With `verify` set the constructor rejects presentations outside C'(1/6).
  explicit PlatformGroup(Presentation p, bool verify = false)
      : presentation_(std::move(p)), index_(symmetrize(presentation_)) {
    if (verify && !check_small_cancellation(index_.set(), kDehnLambda).satisfied) {
      throw PreconditionError("presentation does not satisfy C'(1/6)");
    }
  }

  const Presentation& presentation() const { return presentation_; }
  const Alphabet& alphabet() const { return presentation_.alphabet(); }
  const RelatorIndex& index() const { return index_; }

  /// Leftmost position first, then the longest long piece starting there.
  DehnTrace dehn(const Word& w) const {
    if (w.alphabet() != alphabet()) {
      throw PreconditionError("alphabet mismatch in Dehn's algorithm");
    }
    DehnTrace trace{{}, w, false};
    auto& current = trace.final_word;
    std::size_t scan_from = 0;
    for (;;) {
      auto letters = current.letters();
      std::optional<RelatorIndex::Match> match;
      std::size_t pos = scan_from;
      for (; pos < letters.size(); ++pos) {
        match = index_.longest_long_prefix(letters, pos);
        if (match) {
          break;
        }
      }
      if (!match) {
        break;
      }
      const auto& r = index_.members()[match->member];
      auto replaced = current.subword(pos, match->length);
      auto replacement = invert(r.subword(match->length, r.size() - match->length));
      std::vector<Letter> raw(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(pos));
      raw.insert(raw.end(), replacement.letters().begin(), replacement.letters().end());
      raw.insert(raw.end(), letters.begin() + static_cast<std::ptrdiff_t>(pos + match->length), letters.end());
      auto next = reduce(alphabet(), raw);
      // Nothing matched before `pos`; a new match must reach past the part
      // of the word that did not change.
      auto unchanged = std::min(pos, detail::common_prefix(current, next));
      scan_from = unchanged > index_.max_member_length() ? unchanged - index_.max_member_length() : 0;
      trace.steps.push_back(DehnStep{pos, std::move(replaced), std::move(replacement), r});
      current = std::move(next);
    }
    trace.is_trivial = current.empty();
    return trace;
  }

  bool is_trivial(const Word& w) const { return dehn(w).is_trivial; }

  /// Product of `factor_count` conjugates h^-1 r^(+-1) h with random relators
  /// and conjugators of length `conj_length`; resampled if it collapses.
  template <std::uniform_random_bit_generator Rng>
  TrivialWord make_trivial_word(std::size_t factor_count, std::size_t conj_length, Rng& rng,
                                std::size_t max_attempts = kDefaultMaxAttempts) const {
    detail::require(factor_count >= 1, "factor_count must be at least 1");
    const auto& relators = presentation_.relators();
    detail::require(!relators.empty(), "presentation has no relators");
    std::uniform_int_distribution<std::size_t> pick_relator(0, relators.size() - 1);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
      TrivialWord out{Word(alphabet()), {}};
      for (std::size_t k = 0; k < factor_count; ++k) {
        auto rel = pick_relator(rng);
        bool inv = coin(rng);
        out.factors.push_back(ConjugateFactor{rel, inv, random_reduced_word(conj_length, alphabet(), rng)});
      }
      out.word = evaluate_factors(alphabet(), relators, out.factors);
      if (!out.word.empty()) {
        return out;
      }
    }
    throw BudgetExhausted("trivial word kept collapsing to the empty word");
  }

  /// Random reduced word of exactly `target_length` letters with no subword
  /// longer than half of any symmetrized relator, hence nontrivial in a
  /// C'(1/6) group. Depth-first with random letter order.
  template <std::uniform_random_bit_generator Rng>
  Word make_nontrivial_word(std::size_t target_length, Rng& rng) const {
    detail::require(target_length >= 1, "target_length must be at least 1");
    const auto m = alphabet().rank();
    auto candidates = [&](std::optional<Letter> prev) {
      std::vector<Letter> out;
      for (std::size_t g = 1; g <= m; ++g) {
        for (bool inv : {false, true}) {
          Letter l(g, inv);
          if (!prev || !prev->cancels(l)) {
            out.push_back(l);
          }
        }
      }
      std::shuffle(out.begin(), out.end(), rng);
      return out;
    };

    std::vector<Letter> word;
    std::vector<std::vector<Letter>> options;
    options.push_back(candidates(std::nullopt));
    std::size_t budget = kDefaultMaxAttempts + 64 * target_length;
    while (word.size() < target_length) {
      if (budget-- == 0) {
        throw BudgetExhausted("nontrivial word construction exceeded its budget");
      }
      auto& opts = options.back();
      if (opts.empty()) {
        options.pop_back();
        if (word.empty()) {
          throw BudgetExhausted("nontrivial word construction stuck: every extension is forbidden");
        }
        word.pop_back();
        continue;
      }
      auto l = opts.back();
      opts.pop_back();
      word.push_back(l);
      if (index_.long_piece_ends_at(word, word.size() - 1)) {
        word.pop_back();
        continue;
      }
      if (word.size() < target_length) {
        options.push_back(candidates(l));
      }
    }
    return reduce(alphabet(), word);
  }

 private:
  Presentation presentation_;
  RelatorIndex index_;
};

// Free-function forms; each builds the index for a single call.

inline DehnTrace dehn_is_trivial(const Presentation& p, const Word& w) { return PlatformGroup(p).dehn(w); }

template <std::uniform_random_bit_generator Rng>
Word make_trivial_word(const Presentation& p, std::size_t factor_count, std::size_t conj_length, Rng& rng) {
  return PlatformGroup(p).make_trivial_word(factor_count, conj_length, rng).word;
}

template <std::uniform_random_bit_generator Rng>
Word make_nontrivial_word(const Presentation& p, std::size_t target_length, Rng& rng) {
  return PlatformGroup(p).make_nontrivial_word(target_length, rng);
}

}  // namespace grpshare
