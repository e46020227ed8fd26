#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace grpshare;

namespace {

const PrimeModulus k11(11);

TEST(PrimeModulus, AcceptsPrimesOnly) {
  EXPECT_NO_THROW(PrimeModulus(2));
  EXPECT_NO_THROW(PrimeModulus(8191));
  EXPECT_NO_THROW(PrimeModulus(4294967291ULL));
  EXPECT_THROW(PrimeModulus(1), PreconditionError);
  EXPECT_THROW(PrimeModulus(91), PreconditionError);
  EXPECT_THROW(PrimeModulus(4294967311ULL), PreconditionError);
}

TEST(PrimeModulus, PrimalityMatchesSieve) {
  std::vector<bool> composite(2000, false);
  for (std::size_t i = 2; i < composite.size(); ++i) {
    for (std::size_t j = 2 * i; j < composite.size(); j += i) {
      composite[j] = true;
    }
  }
  for (std::size_t n = 0; n < composite.size(); ++n) {
    EXPECT_EQ(PrimeModulus::is_prime(n), n >= 2 && !composite[n]) << n;
  }
}

TEST(PrimeModulus, InverseByExhaustiveSearch) {
  for (std::uint64_t p : {2ULL, 3ULL, 11ULL, 101ULL, 8191ULL}) {
    PrimeModulus m(p);
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(p, 300); ++a) {
      auto inv = m.inv(a);
      EXPECT_EQ(a * inv % p, 1u);
    }
    EXPECT_THROW(m.inv(0), PreconditionError);
  }
  PrimeModulus big(4294967291ULL);
  EXPECT_EQ(big.mul(123456789, big.inv(123456789)), 1u);
}

TEST(RandomPolynomial, ThresholdOneIsConstant) {
  std::mt19937_64 rng(70);
  auto f = random_polynomial(7, 1, k11, rng);
  EXPECT_EQ(f.degree(), 0u);
  for (std::uint64_t x = 1; x < 11; ++x) {
    EXPECT_EQ(poly_eval(f, x, k11), 7u);
  }
}

TEST(RandomPolynomial, ContractForThresholdThree) {
  std::mt19937_64 rng(71);
  auto f = random_polynomial(5, 3, k11, rng);
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_EQ(f.constant_term(), 5u);
  EXPECT_EQ(poly_eval(f, 0, k11), 5u);
  EXPECT_NE(f.coefficients.back(), 0u);
}

TEST(RandomPolynomial, LeadingCoefficientNeverZero) {
  PrimeModulus p(3);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    std::mt19937_64 rng(seed);
    auto f = random_polynomial(seed % 3, 2, p, rng);
    ASSERT_NE(f.coefficients.back(), 0u);
  }
}

TEST(RandomPolynomial, MiddleCoefficientsUniform) {
  std::vector<int> counts(11, 0);
  std::mt19937_64 rng(72);
  const int trials = 22000;
  for (int i = 0; i < trials; ++i) {
    ++counts[random_polynomial(0, 3, k11, rng).coefficients[1]];
  }
  for (auto c : counts) {
    EXPECT_NEAR(c / double(trials), 1.0 / 11, 0.01);
  }
}

TEST(RandomPolynomial, RangeErrors) {
  std::mt19937_64 rng(73);
  EXPECT_THROW(random_polynomial(1, 0, k11, rng), PreconditionError);
  EXPECT_THROW(random_polynomial(1, 11, k11, rng), PreconditionError);
  EXPECT_THROW(random_polynomial(11, 2, k11, rng), PreconditionError);
}

TEST(PolyEval, WorkedExample) {
  Polynomial f{{5, 3, 2}};
  EXPECT_EQ(poly_eval(f, 1, k11), 10u);
  EXPECT_EQ(poly_eval(f, 2, k11), 8u);
  EXPECT_EQ(poly_eval(f, 3, k11), 10u);
  EXPECT_EQ(poly_eval(f, 0, k11), 5u);
  EXPECT_THROW(poly_eval(f, 11, k11), PreconditionError);
}

TEST(PolyEval, MatchesDirectPowerSum) {
  std::mt19937_64 rng(74);
  PrimeModulus p(8191);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_polynomial(rng() % 8191, 1 + trial % 8, p, rng);
    std::uint64_t x = rng() % 8191;
    std::uint64_t direct = 0, xp = 1;
    for (auto c : f.coefficients) {
      direct = (direct + c * xp) % 8191;
      xp = xp * x % 8191;
    }
    EXPECT_EQ(poly_eval(f, x, p), direct);
  }
}

TEST(Lagrange, TwoPoints) {
  for (std::uint64_t p : {5ULL, 11ULL, 8191ULL}) {
    std::vector<std::uint64_t> idx{1, 2};
    auto c = lagrange_coefficients(idx, PrimeModulus(p));
    EXPECT_EQ(c, (std::vector<std::uint64_t>{2, p - 1}));
  }
}

TEST(Lagrange, CoefficientsSumToOne) {
  std::mt19937_64 rng(75);
  PrimeModulus p(8191);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::uint64_t> picked;
    while (picked.size() < 1 + trial % 8) {
      picked.insert(1 + rng() % 8190);
    }
    std::vector<std::uint64_t> idx(picked.begin(), picked.end());
    auto c = lagrange_coefficients(idx, p);
    std::uint64_t sum = 0;
    for (auto x : c) {
      sum = p.add(sum, x);
    }
    EXPECT_EQ(sum, 1u);
  }
}

TEST(Lagrange, ThreePointsAgainstEvaluations) {
  std::vector<std::uint64_t> idx{1, 2, 3};
  auto c = lagrange_coefficients(idx, k11);
  EXPECT_EQ((c[0] * 10 + c[1] * 8 + c[2] * 10) % 11, 5u);
}

TEST(Lagrange, Errors) {
  std::vector<std::uint64_t> dup{1, 2, 1};
  EXPECT_THROW(lagrange_coefficients(dup, k11), PreconditionError);
  std::vector<std::uint64_t> zero{0, 2};
  EXPECT_THROW(lagrange_coefficients(zero, k11), PreconditionError);
  std::vector<std::uint64_t> wraps{1, 12};
  EXPECT_THROW(lagrange_coefficients(wraps, k11), PreconditionError);
}

TEST(Interpolate, WorkedExample) {
  std::vector<SharePoint> pts{{1, 10}, {2, 8}, {3, 10}};
  EXPECT_EQ(interpolate_at_zero(pts, k11), 5u);
}

TEST(Interpolate, SinglePoint) {
  std::vector<SharePoint> pts{{1, 9}};
  EXPECT_EQ(interpolate_at_zero(pts, k11), 9u);
  EXPECT_THROW(interpolate_at_zero(std::span<const SharePoint>{}, k11), PreconditionError);
}

TEST(Interpolate, AnyThresholdSubsetRecovers) {
  std::mt19937_64 rng(76);
  PrimeModulus p(8191);
  for (int seed = 0; seed < 100; ++seed) {
    std::size_t t = 1 + seed % 8;
    std::size_t n = t + 1 + seed % 4;
    auto secret = rng() % 8191;
    auto f = random_polynomial(secret, t, p, rng);
    std::vector<SharePoint> all;
    for (std::uint64_t i = 1; i <= n; ++i) {
      all.push_back({i, poly_eval(f, i, p)});
    }
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<SharePoint> subset(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(t));
    EXPECT_EQ(interpolate_at_zero(subset, p), secret);
    EXPECT_EQ(interpolate_at_zero(all, p), secret);
  }
}

TEST(Interpolate, CoefficientsIndependentOfValues) {
  std::vector<std::uint64_t> idx{2, 5, 7};
  auto c = lagrange_coefficients(idx, k11);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SharePoint> pts;
    std::uint64_t expect = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto y = rng() % 11;
      pts.push_back({idx[i], y});
      expect = (expect + c[i] * y) % 11;
    }
    EXPECT_EQ(interpolate_at_zero(pts, k11), expect);
  }
}

// For t-1 shares of a polynomial over Z_p, enumerate every (a_1..a_{t-1});
// the first share fixes a_0, the rest must agree. Returns which secrets
// occur, split by whether the top coefficient is nonzero.
struct Candidates {
  std::set<std::uint64_t> any_degree;
  std::set<std::uint64_t> exact_degree;
};

Candidates consistent_secrets(const std::vector<SharePoint>& shares, std::size_t t, std::uint64_t p) {
  Candidates out;
  std::vector<std::uint64_t> a(t, 0);
  std::uint64_t combos = 1;
  for (std::size_t i = 1; i < t; ++i) {
    combos *= p;
  }
  for (std::uint64_t code = 0; code < combos; ++code) {
    auto c = code;
    for (std::size_t i = 1; i < t; ++i) {
      a[i] = c % p;
      c /= p;
    }
    auto tail = [&](std::uint64_t x) {
      std::uint64_t acc = 0, xp = x % p;
      for (std::size_t i = 1; i < t; ++i) {
        acc = (acc + a[i] * xp) % p;
        xp = xp * x % p;
      }
      return acc;
    };
    std::uint64_t a0 = shares.empty() ? 0 : (shares[0].value + p - tail(shares[0].index)) % p;
    bool ok = true;
    for (std::size_t s = 1; s < shares.size() && ok; ++s) {
      ok = (a0 + tail(shares[s].index)) % p == shares[s].value;
    }
    if (!ok) {
      continue;
    }
    if (shares.empty()) {
      for (std::uint64_t v = 0; v < p; ++v) {
        out.any_degree.insert(v);
        if (t == 1 || a[t - 1] != 0) {
          out.exact_degree.insert(v);
        }
      }
      continue;
    }
    out.any_degree.insert(a0);
    if (t == 1 || a[t - 1] != 0) {
      out.exact_degree.insert(a0);
    }
  }
  return out;
}

TEST(Secrecy, EveryCandidateSecretStaysConsistent) {
  std::mt19937_64 rng(78);
  for (std::uint64_t p : {5ULL, 11ULL, 13ULL}) {
    PrimeModulus m(p);
    for (std::size_t t = 2; t <= 4; ++t) {
      for (int trial = 0; trial < 5; ++trial) {
        auto f = random_polynomial(rng() % p, t, m, rng);
        std::vector<std::uint64_t> xs;
        for (std::uint64_t i = 1; i < p; ++i) {
          xs.push_back(i);
        }
        std::shuffle(xs.begin(), xs.end(), rng);
        std::vector<SharePoint> shares;
        for (std::size_t i = 0; i + 1 < t; ++i) {
          shares.push_back({xs[i], poly_eval(f, xs[i], m)});
        }
        auto c = consistent_secrets(shares, t, p);
        EXPECT_EQ(c.any_degree.size(), p);
        // Requiring degree exactly t-1 rules out exactly one candidate:
        // the value at 0 of the lower degree interpolant of the shares.
        EXPECT_EQ(c.exact_degree.size(), p - 1);
        auto excluded = interpolate_at_zero(shares, m);
        EXPECT_EQ(c.exact_degree.count(excluded), 0u);
      }
    }
  }
}

}  // namespace
