#pragma once

// Tietze transformations on presentations and the relator breakdown that
// rewrites any presentation into an isomorphic one with relators of length
// at most 3.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "free_group.hpp"
#include "presentation.hpp"

namespace grpshare {

/// T1: add x_{m+1} together with the relator x_{m+1} s^-1.
struct AddGenerator {
  Word definition;
};

/// T2: drop a generator that occurs exactly once, in a single relator.
struct CancelGenerator {
  std::size_t generator;
};

/// Elementary Nielsen automorphism of the free group.
struct NielsenMove {
  enum class Kind { invert, multiply_right };
  Kind kind;
  std::size_t target;  // x_target
  std::size_t by = 0;  // multiply_right: x_target -> x_target x_by
};

/// T3: the composition of `moves`, applied left to right.
struct ApplyAutomorphism {
  std::vector<NielsenMove> moves;
};

/// The T4' replacements of relator r_i.
enum class RelatorRewrite {
  inverse,                // r_i^-1
  right_multiply,         // r_i r_j
  right_multiply_inverse, // r_i r_j^-1
  left_multiply,          // r_j r_i
  left_multiply_inverse,  // r_j r_i^-1
  conjugate,              // x_k^-1 r_i x_k
  conjugate_inverse,      // x_k r_i x_k^-1
};

/// T4': relator indices are 0-based; `other` is j for the products and the
/// generator k for the conjugations.
struct RewriteRelator {
  std::size_t relator;
  RelatorRewrite kind;
  std::size_t other = 0;
};

using TietzeMove = std::variant<AddGenerator, CancelGenerator, ApplyAutomorphism, RewriteRelator>;

inline Presentation apply_t1(const Presentation& p, const Word& s) {
  for (auto l : s.letters()) {
    detail::require(l.generator() <= p.rank(), "definition uses letters outside the alphabet");
  }
  Alphabet wider(p.rank() + 1);
  std::vector<Word> relators;
  for (const auto& r : p.relators()) {
    relators.push_back(r.over(wider));
  }
  Word y(wider, {Letter(wider.rank())});
  relators.push_back(y * invert(s.over(wider)));
  return Presentation(wider, std::move(relators));
}

inline Presentation apply_t2(const Presentation& p, std::size_t generator) {
  detail::require(generator >= 1 && generator <= p.rank(), "generator out of range");
  detail::require(p.rank() >= 2, "cannot cancel the only generator");
  std::optional<std::size_t> defining;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const auto& r = p.relators()[i];
    auto uses = std::count_if(r.letters().begin(), r.letters().end(),
                              [&](Letter l) { return l.generator() == generator; });
    if (uses == 0) {
      continue;
    }
    if (uses > 1 || defining) {
      throw PreconditionError("x" + std::to_string(generator) + " occurs outside its defining relator");
    }
    defining = i;
  }
  if (!defining) {
    throw PreconditionError("no defining relator for x" + std::to_string(generator));
  }
  Alphabet narrower(p.rank() - 1);
  std::vector<Word> relators;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i == *defining) {
      continue;
    }
    std::vector<Letter> renamed;
    for (auto l : p.relators()[i].letters()) {
      auto g = l.generator() > generator ? l.generator() - 1 : l.generator();
      renamed.emplace_back(g, l.is_inverse());
    }
    relators.push_back(reduce(narrower, renamed));
  }
  return Presentation(narrower, std::move(relators));
}

namespace detail {

inline Word apply_nielsen(const Word& w, const NielsenMove& move) {
  std::vector<Letter> out;
  for (auto l : w.letters()) {
    if (l.generator() != move.target) {
      out.push_back(l);
    } else if (move.kind == NielsenMove::Kind::invert) {
      out.push_back(l.inverse());
    } else if (!l.is_inverse()) {
      out.push_back(l);
      out.emplace_back(move.by);
    } else {
      out.emplace_back(move.by, true);
      out.push_back(l);
    }
  }
  return reduce(w.alphabet(), out);
}

}  // namespace detail

inline Presentation apply_t3(const Presentation& p, std::span<const NielsenMove> moves) {
  for (const auto& m : moves) {
    detail::require(m.target >= 1 && m.target <= p.rank(), "automorphism target out of range");
    if (m.kind == NielsenMove::Kind::multiply_right) {
      detail::require(m.by >= 1 && m.by <= p.rank() && m.by != m.target,
                      "x_i -> x_i x_j needs a distinct j in range");
    }
  }
  std::vector<Word> relators;
  for (auto r : p.relators()) {
    for (const auto& m : moves) {
      r = detail::apply_nielsen(r, m);
    }
    relators.push_back(cyclically_reduce(r));
  }
  return Presentation(p.alphabet(), std::move(relators));
}

inline Presentation apply_t3(const Presentation& p, const NielsenMove& move) {
  return apply_t3(p, std::span<const NielsenMove>(&move, 1));
}

inline Presentation apply_t4prime(const Presentation& p, const RewriteRelator& move) {
  const auto& rs = p.relators();
  detail::require(move.relator < rs.size(), "relator index out of range");
  const auto& ri = rs[move.relator];
  auto other_relator = [&]() -> const Word& {
    detail::require(move.other < rs.size(), "second relator index out of range");
    detail::require(move.other != move.relator, "T4' products need two distinct relators");
    return rs[move.other];
  };
  auto conjugator = [&]() {
    detail::require(move.other >= 1 && move.other <= p.rank(), "conjugating generator out of range");
    return Word(p.alphabet(), {Letter(move.other)});
  };
  Word replaced(p.alphabet());
  switch (move.kind) {
    case RelatorRewrite::inverse:
      replaced = invert(ri);
      break;
    case RelatorRewrite::right_multiply:
      replaced = ri * other_relator();
      break;
    case RelatorRewrite::right_multiply_inverse:
      replaced = ri * invert(other_relator());
      break;
    case RelatorRewrite::left_multiply:
      replaced = other_relator() * ri;
      break;
    case RelatorRewrite::left_multiply_inverse:
      replaced = other_relator() * invert(ri);
      break;
    case RelatorRewrite::conjugate:
      replaced = conjugate(ri, conjugator());
      break;
    case RelatorRewrite::conjugate_inverse:
      replaced = conjugate(ri, invert(conjugator()));
      break;
  }
  replaced = cyclically_reduce(replaced);
  detail::require(!replaced.empty(), "T4' move would produce an empty relator");
  auto relators = rs;
  relators[move.relator] = std::move(replaced);
  return Presentation(p.alphabet(), std::move(relators));
}

inline Presentation apply_move(const Presentation& p, const TietzeMove& move) {
  return std::visit(
      [&](const auto& m) -> Presentation {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AddGenerator>) {
          return apply_t1(p, m.definition);
        } else if constexpr (std::is_same_v<M, CancelGenerator>) {
          return apply_t2(p, m.generator);
        } else if constexpr (std::is_same_v<M, ApplyAutomorphism>) {
          return apply_t3(p, m.moves);
        } else {
          return apply_t4prime(p, m);
        }
      },
      move);
}

inline Presentation replay(Presentation p, std::span<const TietzeMove> moves) {
  for (const auto& m : moves) {
    p = apply_move(p, m);
  }
  return p;
}

// ---------------------------------------------------------------------------

/// Introduced generators and the words they stand for, in introduction
/// order. Generators 1..base_rank are the original ones.
class GeneratorDefinitions {
 public:
  explicit GeneratorDefinitions(std::size_t base_rank) : base_rank_(base_rank) {}

  std::size_t base_rank() const { return base_rank_; }
  const std::vector<std::pair<std::size_t, Word>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void define(std::size_t generator, Word definition) {
    detail::require(generator > base_rank_, "cannot redefine an original generator");
    for (const auto& [g, w] : entries_) {
      detail::require(g != generator, "generator x" + std::to_string(generator) + " defined twice");
    }
    entries_.emplace_back(generator, std::move(definition));
  }

  const Word* find(std::size_t generator) const {
    for (const auto& [g, w] : entries_) {
      if (g == generator) {
        return &w;
      }
    }
    return nullptr;
  }

  bool operator==(const GeneratorDefinitions&) const = default;

 private:
  std::size_t base_rank_;
  std::vector<std::pair<std::size_t, Word>> entries_;
};

/// Substitutes definitions until only original generators remain.
inline Word expand_word(const Word& w, const GeneratorDefinitions& defs) {
  Alphabet base(defs.base_rank());
  enum class State { fresh, active, done };
  std::map<std::size_t, State> state;
  std::map<std::size_t, Word> expanded;

  auto expand_generator = [&](auto&& self, std::size_t g) -> const Word& {
    auto& st = state[g];
    if (st == State::done) {
      return expanded.at(g);
    }
    if (st == State::active) {
      throw PreconditionError("cyclic generator definitions through x" + std::to_string(g));
    }
    const Word* def = defs.find(g);
    if (!def) {
      throw PreconditionError("unknown generator x" + std::to_string(g));
    }
    st = State::active;
    std::vector<Letter> raw;
    for (auto l : def->letters()) {
      if (l.generator() <= defs.base_rank()) {
        raw.push_back(l);
      } else {
        const auto& sub = self(self, l.generator());
        auto piece = l.is_inverse() ? invert(sub) : sub;
        raw.insert(raw.end(), piece.letters().begin(), piece.letters().end());
      }
    }
    auto result = reduce(base, raw);
    state[g] = State::done;
    return expanded.emplace(g, std::move(result)).first->second;
  };

  std::vector<Letter> raw;
  for (auto l : w.letters()) {
    if (l.generator() <= defs.base_rank()) {
      raw.push_back(l);
    } else {
      const auto& sub = expand_generator(expand_generator, l.generator());
      auto piece = l.is_inverse() ? invert(sub) : sub;
      raw.insert(raw.end(), piece.letters().begin(), piece.letters().end());
    }
  }
  return reduce(base, raw);
}

struct BreakdownResult {
  Presentation presentation;
  GeneratorDefinitions definitions;
  std::vector<TietzeMove> moves;
};

/// While some relator r = a b u has length >= 4 (first such relator, two
/// leftmost letters), add g = a b and rewrite r as g u. The defining relator
/// g^-1 a b is appended. Each split is logged as the moves
///   T1(a b), T4'(r <- q r), T4'(q <- q^-1), T4'(q <- g^-1 q g)
/// where q is the new relator g b^-1 a^-1.
inline BreakdownResult break_relators(const Presentation& input) {
  BreakdownResult out{input, GeneratorDefinitions(input.rank()), {}};
  auto& p = out.presentation;
  for (;;) {
    const auto& rs = p.relators();
    auto it = std::find_if(rs.begin(), rs.end(), [](const Word& r) { return r.size() >= 4; });
    if (it == rs.end()) {
      break;
    }
    auto target = static_cast<std::size_t>(it - rs.begin());
    auto pair = it->subword(0, 2);
    auto new_index = rs.size();
    auto g = p.rank() + 1;

    std::vector<TietzeMove> step{
        AddGenerator{pair},
        RewriteRelator{target, RelatorRewrite::left_multiply, new_index},
        RewriteRelator{new_index, RelatorRewrite::inverse, 0},
        RewriteRelator{new_index, RelatorRewrite::conjugate, g},
    };
    p = replay(p, step);
    out.definitions.define(g, pair.over(p.alphabet()));
    out.moves.insert(out.moves.end(), step.begin(), step.end());
  }
  // Definitions live over the final alphabet, as they do when parsed back.
  GeneratorDefinitions widened(input.rank());
  for (const auto& [g, w] : out.definitions.entries()) {
    widened.define(g, w.over(p.alphabet()));
  }
  out.definitions = std::move(widened);
  return out;
}

// ---------------------------------------------------------------------------
// Serialized as the presentation followed by "define x<k> := <word>" lines.

inline std::string to_string(const BreakdownResult& b) {
  auto out = to_string(b.presentation);
  for (const auto& [g, w] : b.definitions.entries()) {
    out += "define x" + std::to_string(g) + " := " + to_string(w) + "\n";
  }
  return out;
}

struct ParsedBreakdown {
  Presentation presentation;
  GeneratorDefinitions definitions;
};

/// Reads a presentation file that may carry define lines.
inline ParsedBreakdown parse_breakdown(std::string_view text) {
  std::vector<std::pair<std::size_t, Word>> defines;
  auto p = detail::parse_presentation_lines(text, [&](std::string_view key, std::string_view rest,
                                                      const Alphabet& alphabet) {
    if (key != "define") {
      return false;
    }
    auto assign = rest.find(":=");
    if (assign == std::string_view::npos) {
      throw ParseError("define line without ':='");
    }
    auto lhs = detail::trim(rest.substr(0, assign));
    auto letter = detail::parse_letter(lhs, alphabet);
    if (letter.is_inverse()) {
      throw ParseError("define target must be a generator");
    }
    defines.emplace_back(letter.generator(), parse_word(detail::trim(rest.substr(assign + 2)), alphabet));
    return true;
  });
  std::size_t base = p.rank();
  for (const auto& [g, w] : defines) {
    base = std::min(base, g - 1);
  }
  GeneratorDefinitions defs(base);
  for (auto& [g, w] : defines) {
    defs.define(g, std::move(w));
  }
  return ParsedBreakdown{std::move(p), std::move(defs)};
}

}  // namespace grpshare
