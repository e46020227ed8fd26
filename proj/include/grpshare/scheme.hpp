#pragma once

// Dealer and participant sides of the two sharing schemes: the (n,n) scheme
// over bit columns and the hybrid (t,n) scheme that ships Shamir shares as
// columns of words. A word column entry is trivial in the recipient's group
// exactly when the corresponding share bit is 1.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dehn.hpp"
#include "error.hpp"
#include "field.hpp"
#include "free_group.hpp"
#include "presentation.hpp"
#include "small_cancellation.hpp"

namespace grpshare {

/// Fixed-width column of bits, index 0 first (most significant when the
/// column encodes an integer).
class BitColumn {
 public:
  BitColumn() = default;
  explicit BitColumn(std::size_t width) : bits_(width, 0) {}
  explicit BitColumn(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      detail::require(b <= 1, "bit column entries must be 0 or 1");
    }
  }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool bit) { bits_.at(i) = bit ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  BitColumn& operator^=(const BitColumn& other) {
    detail::require(size() == other.size(), "bit column width mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      bits_[i] ^= other.bits_[i];
    }
    return *this;
  }
  friend BitColumn operator^(BitColumn a, const BitColumn& b) { return a ^= b; }

  bool operator==(const BitColumn&) const = default;

  /// "0101..." form.
  std::string to_string() const {
    std::string s;
    for (auto b : bits_) {
      s += b ? '1' : '0';
    }
    return s;
  }

  /// Four bits per hex digit, big-endian.
  static BitColumn from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) {
      hex.remove_prefix(2);
    }
    if (hex.empty()) {
      throw ParseError("empty hex secret");
    }
    BitColumn c(4 * hex.size());
    for (std::size_t i = 0; i < hex.size(); ++i) {
      int v = 0;
      char ch = hex[i];
      if (ch >= '0' && ch <= '9') {
        v = ch - '0';
      } else if (ch >= 'a' && ch <= 'f') {
        v = ch - 'a' + 10;
      } else if (ch >= 'A' && ch <= 'F') {
        v = ch - 'A' + 10;
      } else {
        throw ParseError("bad hex digit '" + std::string(1, ch) + "'");
      }
      for (int b = 0; b < 4; ++b) {
        c.set(4 * i + static_cast<std::size_t>(b), (v >> (3 - b)) & 1);
      }
    }
    return c;
  }

  /// Inverse of from_hex; the width must be a multiple of 4.
  std::string to_hex() const {
    detail::require(size() % 4 == 0, "hex form needs a width divisible by 4");
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < size(); i += 4) {
      int v = (bits_[i] << 3) | (bits_[i + 1] << 2) | (bits_[i + 2] << 1) | bits_[i + 3];
      s += kDigits[v];
    }
    return s;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

template <std::uniform_random_bit_generator Rng>
BitColumn random_column(std::size_t width, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  BitColumn c(width);
  for (std::size_t i = 0; i < width; ++i) {
    c.set(i, coin(rng));
  }
  return c;
}

/// n columns whose XOR is `secret`; the first n-1 are uniform.
template <std::uniform_random_bit_generator Rng>
std::vector<BitColumn> split_secret(const BitColumn& secret, std::size_t n, Rng& rng) {
  detail::require(n >= 2, "splitting needs at least 2 participants");
  std::vector<BitColumn> shares;
  BitColumn last = secret;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    shares.push_back(random_column(secret.size(), rng));
    last ^= shares.back();
  }
  shares.push_back(std::move(last));
  return shares;
}

inline BitColumn recover_secret_nn(std::span<const BitColumn> columns) {
  detail::require(columns.size() >= 2, "recovery needs at least 2 columns");
  BitColumn acc = columns.front();
  for (std::size_t j = 1; j < columns.size(); ++j) {
    acc ^= columns[j];
  }
  return acc;
}

inline BitColumn int_to_column(std::uint64_t y, std::size_t width) {
  detail::require(width <= 64, "columns wider than 64 bits do not hold an integer");
  detail::require(width == 64 || y < (std::uint64_t{1} << width), "value does not fit the column width");
  BitColumn c(width);
  for (std::size_t i = 0; i < width; ++i) {
    c.set(i, (y >> (width - 1 - i)) & 1);
  }
  return c;
}

inline std::uint64_t column_to_int(const BitColumn& c) {
  detail::require(c.size() <= 64, "columns wider than 64 bits do not hold an integer");
  std::uint64_t y = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    y = (y << 1) | c[i];
  }
  return y;
}

/// Smallest k with 2^k > p - 1.
inline std::size_t column_width_for(const PrimeModulus& p) {
  std::size_t k = 0;
  while (k < 64 && (std::uint64_t{1} << k) <= p.value() - 1) {
    ++k;
  }
  return std::max<std::size_t>(k, 1);
}

/// Shape of the trivial words used for encoding; factor count and conjugator
/// length are drawn uniformly from the closed ranges for every entry.
struct WordParams {
  std::size_t min_factors = 2;
  std::size_t max_factors = 4;
  std::size_t min_conjugator = 3;
  std::size_t max_conjugator = 8;
};

/// k words addressed to one participant (1-based).
struct WordColumn {
  std::size_t participant = 0;
  std::vector<Word> words;

  std::size_t size() const { return words.size(); }
  bool operator==(const WordColumn&) const = default;
};

/// Every entry first draws a trivial word; a 0 bit then gets a nontrivial
/// word of the same length, so entry lengths do not depend on the bit.
template <std::uniform_random_bit_generator Rng>
WordColumn encode_column(const BitColumn& share, const PlatformGroup& group, std::size_t participant,
                         const WordParams& params, Rng& rng) {
  detail::require(params.min_factors >= 1 && params.min_factors <= params.max_factors,
                  "bad factor range");
  detail::require(params.min_conjugator <= params.max_conjugator, "bad conjugator range");
  std::uniform_int_distribution<std::size_t> factors(params.min_factors, params.max_factors);
  std::uniform_int_distribution<std::size_t> conj(params.min_conjugator, params.max_conjugator);
  WordColumn out{participant, {}};
  out.words.reserve(share.size());
  for (std::size_t i = 0; i < share.size(); ++i) {
    auto f = factors(rng);
    auto c = conj(rng);
    auto trivial = group.make_trivial_word(f, c, rng);
    if (share[i]) {
      out.words.push_back(std::move(trivial.word));
    } else {
      out.words.push_back(group.make_nontrivial_word(trivial.word.size(), rng));
    }
  }
  return out;
}

template <std::uniform_random_bit_generator Rng>
WordColumn encode_column(const BitColumn& share, const Presentation& g, std::size_t participant,
                         const WordParams& params, Rng& rng) {
  return encode_column(share, PlatformGroup(g, true), participant, params, rng);
}

inline BitColumn decode_column(const WordColumn& column, const PlatformGroup& group) {
  BitColumn bits(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    bits.set(i, group.is_trivial(column.words[i]));
  }
  return bits;
}

inline BitColumn decode_column(const WordColumn& column, const Presentation& g) {
  return decode_column(column, PlatformGroup(g));
}

/// Public session parameters.
struct SessionConfig {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t k = 0;
  std::optional<PrimeModulus> p;  // hybrid scheme only
  PlatformParams group;
  WordParams words;

  /// Configuration for the hybrid scheme with the default column width.
  static SessionConfig hybrid(std::size_t n, std::size_t t, PrimeModulus p) {
    SessionConfig cfg;
    cfg.n = n;
    cfg.t = t;
    cfg.k = column_width_for(p);
    cfg.p = p;
    return cfg;
  }

  void validate_hybrid() const {
    detail::require(p.has_value(), "hybrid scheme needs a prime modulus");
    detail::require(t >= 1 && t <= n, "need 1 <= t <= n");
    detail::require(n < p->value(), "need n < p");
    detail::require(k >= column_width_for(*p) && k <= 64, "column width too small for p");
  }
};

/// Dealer side of the (n,n) scheme over already generated groups.
template <std::uniform_random_bit_generator Rng>
std::vector<WordColumn> deal_nn(const BitColumn& secret, std::span<const PlatformGroup> groups,
                                const WordParams& params, Rng& rng) {
  auto shares = split_secret(secret, groups.size(), rng);
  std::vector<WordColumn> out;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    out.push_back(encode_column(shares[j], groups[j], j + 1, params, rng));
  }
  return out;
}

/// Dealer side of the hybrid scheme with a fixed polynomial.
template <std::uniform_random_bit_generator Rng>
std::vector<WordColumn> deal_tn_with_polynomial(const Polynomial& f, const SessionConfig& cfg,
                                                std::span<const PlatformGroup> groups, Rng& rng) {
  cfg.validate_hybrid();
  detail::require(groups.size() == cfg.n, "need one group per participant");
  std::vector<WordColumn> out;
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    auto y = poly_eval(f, j, *cfg.p);
    out.push_back(encode_column(int_to_column(y, cfg.k), groups[j - 1], j, cfg.words, rng));
  }
  return out;
}

template <std::uniform_random_bit_generator Rng>
std::vector<WordColumn> deal_tn(std::uint64_t secret, const SessionConfig& cfg,
                                std::span<const PlatformGroup> groups, Rng& rng) {
  cfg.validate_hybrid();
  auto f = random_polynomial(secret, cfg.t, *cfg.p, rng);
  return deal_tn_with_polynomial(f, cfg, groups, rng);
}

inline SharePoint recover_share(const WordColumn& column, const PlatformGroup& group, const PrimeModulus& p) {
  auto y = column_to_int(decode_column(column, group));
  if (y >= p.value()) {
    throw DataError("decoded share " + std::to_string(y) + " is not below p = " + std::to_string(p.value()) +
                    " (wrong group or corrupted column)");
  }
  return SharePoint{column.participant, y};
}

// ---------------------------------------------------------------------------
// Share bundle:
//   share-bundle participant=<j> k=<k>
//   w1 <word>
//   ...

inline std::string to_string(const WordColumn& column) {
  std::string out = "share-bundle participant=" + std::to_string(column.participant) +
                    " k=" + std::to_string(column.size()) + "\n";
  for (std::size_t i = 0; i < column.size(); ++i) {
    out += "w" + std::to_string(i + 1) + " " + to_string(column.words[i]) + "\n";
  }
  return out;
}

inline WordColumn parse_share_bundle(std::string_view text, Alphabet alphabet) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (!line.empty()) {
      lines.push_back(line);
    }
  }
  if (lines.empty()) {
    throw ParseError("empty share bundle");
  }
  auto field = [&](std::string_view tok, std::string_view key) {
    if (!tok.starts_with(key)) {
      throw ParseError("share bundle header: expected " + std::string(key));
    }
    return detail::parse_count(tok.substr(key.size()), std::string(key));
  };
  auto header = lines.front();
  auto [magic, rest] = detail::split_keyword(header);
  if (magic != "share-bundle") {
    throw ParseError("missing share-bundle header");
  }
  auto [first, second] = detail::split_keyword(rest);
  WordColumn column;
  column.participant = field(first, "participant=");
  auto k = field(detail::trim(second), "k=");
  if (lines.size() != k + 1) {
    throw ParseError("share bundle declares k=" + std::to_string(k) + " but has " +
                     std::to_string(lines.size() - 1) + " words");
  }
  for (std::size_t i = 1; i <= k; ++i) {
    auto [tag, word] = detail::split_keyword(lines[i]);
    if (tag != "w" + std::to_string(i)) {
      throw ParseError("expected w" + std::to_string(i) + " in share bundle");
    }
    column.words.push_back(parse_word(word, alphabet));
  }
  return column;
}

}  // namespace grpshare
