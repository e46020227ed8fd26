#pragma once

// Arithmetic in Z_p and the Shamir layer on top of it.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace grpshare {

/// A prime p below 2^32, checked by trial division on construction. Residues
/// are plain integers in [0, p).
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p) : p_(p) {
    detail::require(p < (std::uint64_t{1} << 32), "modulus must be below 2^32");
    detail::require(is_prime(p), std::to_string(p) + " is not prime");
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  std::uint64_t value() const { return p_; }

  std::uint64_t reduce(std::int64_t x) const {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t neg(std::uint64_t a) const { return (p_ - a) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }

  /// Inverse by the extended Euclidean algorithm.
  std::uint64_t inv(std::uint64_t a) const {
    detail::require(a % p_ != 0, "zero has no inverse");
    std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(a % p_);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      auto q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    return reduce(s0);
  }

  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

  bool operator==(const PrimeModulus&) const = default;

 private:
  std::uint64_t p_;
};

/// Coefficients c0 + c1 x + ... mod p, lowest degree first.
struct Polynomial {
  std::vector<std::uint64_t> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  std::uint64_t constant_term() const { return coefficients.empty() ? 0 : coefficients.front(); }
};

/// (index, value) with index >= 1; index 0 is where the secret lives.
struct SharePoint {
  std::uint64_t index;
  std::uint64_t value;

  bool operator==(const SharePoint&) const = default;
};

/// Degree exactly t-1 with f(0) = secret: middle coefficients uniform,
/// leading coefficient uniform over the nonzero residues.
template <std::uniform_random_bit_generator Rng>
Polynomial random_polynomial(std::uint64_t secret, std::size_t t, const PrimeModulus& p, Rng& rng) {
  detail::require(t >= 1 && t <= p.value() - 1, "threshold must lie in [1, p-1]");
  detail::require(secret < p.value(), "secret must lie in [0, p)");
  Polynomial f{{secret}};
  std::uniform_int_distribution<std::uint64_t> any(0, p.value() - 1);
  std::uniform_int_distribution<std::uint64_t> nonzero(1, p.value() - 1);
  for (std::size_t i = 1; i < t; ++i) {
    f.coefficients.push_back(i + 1 == t ? nonzero(rng) : any(rng));
  }
  return f;
}

/// Horner evaluation.
inline std::uint64_t poly_eval(const Polynomial& f, std::uint64_t x, const PrimeModulus& p) {
  detail::require(x < p.value(), "evaluation point must lie in [0, p)");
  std::uint64_t acc = 0;
  for (auto it = f.coefficients.rbegin(); it != f.coefficients.rend(); ++it) {
    acc = p.add(p.mul(acc, x), *it % p.value());
  }
  return acc;
}

/// c_i = prod_{j != i} (-x_j) / (x_i - x_j): the weights with
/// f(0) = sum_i c_i f(x_i) for every f of degree < indices.size().
inline std::vector<std::uint64_t> lagrange_coefficients(std::span<const std::uint64_t> indices,
                                                        const PrimeModulus& p) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    detail::require(indices[i] % p.value() != 0, "share index must be nonzero mod p");
    for (std::size_t j = 0; j < i; ++j) {
      detail::require(indices[i] % p.value() != indices[j] % p.value(), "duplicate share index");
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    auto xi = indices[i] % p.value();
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (j == i) {
        continue;
      }
      auto xj = indices[j] % p.value();
      num = p.mul(num, p.neg(xj));
      den = p.mul(den, p.sub(xi, xj));
    }
    out.push_back(p.div(num, den));
  }
  return out;
}

inline std::uint64_t interpolate_at_zero(std::span<const SharePoint> points, const PrimeModulus& p) {
  detail::require(!points.empty(), "need at least one share");
  std::vector<std::uint64_t> indices;
  for (const auto& s : points) {
    indices.push_back(s.index);
  }
  auto c = lagrange_coefficients(indices, p);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    acc = p.add(acc, p.mul(c[i], points[i].value % p.value()));
  }
  return acc;
}

}  // namespace grpshare
