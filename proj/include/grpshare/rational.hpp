#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace grpshare {

// Small exact rational used for cancellation bounds and piece ratios.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) {
      throw PreconditionError("rational with zero denominator");
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  constexpr bool operator==(const Rational&) const = default;
  constexpr std::strong_ordering operator<=>(const Rational& other) const {
    auto lhs = static_cast<__int128>(num_) * other.den_;
    auto rhs = static_cast<__int128>(other.num_) * den_;
    return lhs <=> rhs;
  }

  // a < this * b, for integer b; the form the small cancellation test needs.
  constexpr bool times_exceeds(std::int64_t a, std::int64_t b) const {
    return static_cast<__int128>(a) * den_ < static_cast<__int128>(num_) * b;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) {
      return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a/b" or a plain integer.
  static Rational parse(std::string_view text) {
    auto to_int = [&](std::string_view part) {
      if (part.empty()) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(std::string(part), &used);
      } catch (const std::exception&) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
      if (used != part.size()) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
      return static_cast<std::int64_t>(value);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(to_int(text));
    }
    auto den = to_int(text.substr(slash + 1));
    if (den == 0) {
      throw ParseError("rational with zero denominator");
    }
    return Rational(to_int(text.substr(0, slash)), den);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace grpshare
