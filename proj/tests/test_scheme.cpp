#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "support.hpp"

using namespace grpshare;

namespace {

BitColumn bits(std::initializer_list<int> b) {
  std::vector<std::uint8_t> v;
  for (int x : b) {
    v.push_back(static_cast<std::uint8_t>(x));
  }
  return BitColumn(v);
}

std::vector<PlatformGroup> groups_for(std::size_t n, std::uint64_t seed) {
  std::vector<PlatformGroup> out;
  for (std::size_t j = 0; j < n; ++j) {
    out.emplace_back(testing_support::sample_group(seed * 100 + j));
  }
  return out;
}

TEST(SplitSecret, XorIdentityExample) {
  auto c = bits({1, 0, 1});
  auto c1 = bits({0, 1, 1});
  EXPECT_EQ(c ^ c1, bits({1, 1, 0}));
  std::mt19937_64 rng(80);
  auto shares = split_secret(c, 2, rng);
  EXPECT_EQ(shares[1], c ^ shares[0]);
}

TEST(SplitSecret, FiveWayRecombines) {
  std::mt19937_64 rng(81);
  for (int seed = 0; seed < 100; ++seed) {
    auto c = random_column(1 + seed % 64, rng);
    auto shares = split_secret(c, 5, rng);
    ASSERT_EQ(shares.size(), 5u);
    EXPECT_EQ(recover_secret_nn(shares), c);
  }
}

TEST(SplitSecret, AllZero) {
  std::mt19937_64 rng(82);
  BitColumn zero(16);
  EXPECT_EQ(recover_secret_nn(split_secret(zero, 4, rng)), zero);
}

TEST(SplitSecret, SingleParticipantRejected) {
  std::mt19937_64 rng(83);
  EXPECT_THROW(split_secret(BitColumn(8), 1, rng), PreconditionError);
}

TEST(SplitSecret, LeadingSharesUniform) {
  std::mt19937_64 rng(84);
  auto c = bits({1, 1, 1, 1});
  std::vector<int> ones(4, 0);
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    auto shares = split_secret(c, 3, rng);
    for (std::size_t b = 0; b < 4; ++b) {
      ones[b] += shares[1][b];
    }
  }
  for (auto o : ones) {
    EXPECT_NEAR(o / double(trials), 0.5, 0.03);
  }
}

TEST(RecoverNN, Errors) {
  std::vector<BitColumn> one{BitColumn(4)};
  EXPECT_THROW(recover_secret_nn(one), PreconditionError);
  std::vector<BitColumn> mixed{BitColumn(4), BitColumn(5)};
  EXPECT_THROW(recover_secret_nn(mixed), PreconditionError);
}

TEST(RecoverNN, FlippedBitPropagates) {
  std::mt19937_64 rng(85);
  auto c = random_column(32, rng);
  auto shares = split_secret(c, 4, rng);
  for (std::size_t b = 0; b < 32; ++b) {
    auto tampered = shares;
    tampered[2].set(b, !tampered[2][b]);
    auto out = recover_secret_nn(tampered);
    for (std::size_t i = 0; i < 32; ++i) {
      EXPECT_EQ(out[i] != c[i], i == b);
    }
  }
}

TEST(BitColumnHex, RoundTripAndErrors) {
  auto c = BitColumn::from_hex("0xDeadBEEF");
  EXPECT_EQ(c.size(), 32u);
  EXPECT_EQ(c.to_hex(), "deadbeef");
  EXPECT_EQ(BitColumn::from_hex("5").to_string(), "0101");
  EXPECT_THROW(BitColumn::from_hex("xyz"), ParseError);
  EXPECT_THROW(BitColumn::from_hex(""), ParseError);
  EXPECT_THROW(BitColumn(3).to_hex(), PreconditionError);
  EXPECT_THROW(BitColumn(std::vector<std::uint8_t>{0, 2}), PreconditionError);
}

TEST(IntColumn, Examples) {
  EXPECT_EQ(int_to_column(5, 4), bits({0, 1, 0, 1}));
  EXPECT_EQ(int_to_column(0, 6), BitColumn(6));
  EXPECT_THROW(int_to_column(16, 4), PreconditionError);
  EXPECT_THROW(int_to_column(0, 65), PreconditionError);
  EXPECT_EQ(column_to_int(int_to_column(~std::uint64_t{0}, 64)), ~std::uint64_t{0});
}

TEST(IntColumn, ExhaustiveRoundTrip) {
  for (std::size_t k = 1; k <= 16; ++k) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << k); ++y) {
      ASSERT_EQ(column_to_int(int_to_column(y, k)), y);
    }
  }
}

TEST(ColumnWidth, SmallestSufficientWidth) {
  EXPECT_EQ(column_width_for(PrimeModulus(2)), 1u);
  EXPECT_EQ(column_width_for(PrimeModulus(3)), 2u);
  EXPECT_EQ(column_width_for(PrimeModulus(5)), 3u);
  EXPECT_EQ(column_width_for(PrimeModulus(11)), 4u);
  EXPECT_EQ(column_width_for(PrimeModulus(17)), 5u);
  EXPECT_EQ(column_width_for(PrimeModulus(8191)), 13u);
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 101ULL, 8191ULL, 65537ULL}) {
    auto k = column_width_for(PrimeModulus(p));
    EXPECT_GT(std::uint64_t{1} << k, p - 1);
    EXPECT_LE(std::uint64_t{1} << (k - 1), p - 1);
  }
}

TEST(EncodeColumn, AllOnesDecodeTrivial) {
  PlatformGroup g(testing_support::sample_group(86));
  std::mt19937_64 rng(86);
  BitColumn ones(std::vector<std::uint8_t>(24, 1));
  auto col = encode_column(ones, g, 1, WordParams{}, rng);
  ASSERT_EQ(col.size(), 24u);
  for (const auto& w : col.words) {
    EXPECT_TRUE(g.is_trivial(w));
  }
}

TEST(EncodeColumn, AllZerosDecodeNontrivial) {
  PlatformGroup g(testing_support::sample_group(87));
  std::mt19937_64 rng(87);
  auto col = encode_column(BitColumn(24), g, 1, WordParams{}, rng);
  for (const auto& w : col.words) {
    EXPECT_FALSE(w.empty());
    EXPECT_FALSE(g.is_trivial(w));
  }
}

TEST(EncodeColumn, RoundTrip) {
  auto p = testing_support::sample_group(88);
  PlatformGroup g(p);
  std::mt19937_64 rng(88);
  for (int i = 0; i < 100; ++i) {
    auto share = random_column(16, rng);
    auto col = encode_column(share, g, 3, WordParams{}, rng);
    EXPECT_EQ(col.participant, 3u);
    EXPECT_EQ(decode_column(col, g), share);
  }
  auto share = random_column(8, rng);
  EXPECT_EQ(decode_column(encode_column(share, p, 1, WordParams{}, rng), p), share);
}

TEST(EncodeColumn, PresentationFormVerifiesSmallCancellation) {
  std::mt19937_64 rng(89);
  auto bad = testing_support::P(2, {"x1 x2", "x1 x2^-1"});
  EXPECT_THROW(encode_column(BitColumn(4), bad, 1, WordParams{}, rng), PreconditionError);
}

TEST(EncodeColumn, BadWordParams) {
  PlatformGroup g(testing_support::sample_group(90));
  std::mt19937_64 rng(90);
  EXPECT_THROW(encode_column(BitColumn(4), g, 1, WordParams{0, 2, 3, 8}, rng), PreconditionError);
  EXPECT_THROW(encode_column(BitColumn(4), g, 1, WordParams{3, 2, 3, 8}, rng), PreconditionError);
  EXPECT_THROW(encode_column(BitColumn(4), g, 1, WordParams{2, 4, 9, 8}, rng), PreconditionError);
}

TEST(EncodeColumn, LengthsDoNotDependOnBit) {
  // Two-sample Kolmogorov-Smirnov on entry lengths for 0 and 1 bits.
  PlatformGroup g(testing_support::sample_group(91));
  std::mt19937_64 rng(91);
  std::vector<double> zero, one;
  for (int i = 0; i < 60; ++i) {
    auto share = random_column(32, rng);
    auto col = encode_column(share, g, 1, WordParams{}, rng);
    for (std::size_t b = 0; b < share.size(); ++b) {
      (share[b] ? one : zero).push_back(static_cast<double>(col.words[b].size()));
    }
  }
  std::sort(zero.begin(), zero.end());
  std::sort(one.begin(), one.end());
  double d = 0;
  for (double x : zero) {
    auto fz = (std::upper_bound(zero.begin(), zero.end(), x) - zero.begin()) / double(zero.size());
    auto fo = (std::upper_bound(one.begin(), one.end(), x) - one.begin()) / double(one.size());
    d = std::max(d, std::abs(fz - fo));
  }
  double n = zero.size(), m = one.size();
  EXPECT_LT(d, 1.63 * std::sqrt((n + m) / (n * m)));
}

TEST(DecodeColumn, EmptyWordsAreOnes) {
  PlatformGroup g(testing_support::sample_group(92));
  WordColumn col{1, std::vector<Word>(5, Word(Alphabet(3)))};
  EXPECT_EQ(decode_column(col, g), BitColumn(std::vector<std::uint8_t>(5, 1)));
}

TEST(DecodeColumn, SingleLettersAreZeros) {
  PlatformGroup g(testing_support::sample_group(93));
  WordColumn col{1, {testing_support::W(3, "x1"), testing_support::W(3, "x2^-1"), testing_support::W(3, "x3")}};
  EXPECT_EQ(decode_column(col, g), BitColumn(3));
}

TEST(DecodeColumn, AlphabetMismatch) {
  PlatformGroup g(testing_support::sample_group(94));
  WordColumn col{1, {testing_support::W(2, "x1")}};
  EXPECT_THROW(decode_column(col, g), PreconditionError);
}

TEST(DealNN, RoundTrip) {
  auto groups = groups_for(4, 95);
  std::mt19937_64 rng(95);
  for (int i = 0; i < 10; ++i) {
    auto secret = random_column(32, rng);
    auto cols = deal_nn(secret, groups, WordParams{}, rng);
    std::vector<BitColumn> decoded;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      EXPECT_EQ(cols[j].participant, j + 1);
      decoded.push_back(decode_column(cols[j], groups[j]));
    }
    EXPECT_EQ(recover_secret_nn(decoded), secret);
  }
}

TEST(SessionConfigHybrid, Validation) {
  auto cfg = SessionConfig::hybrid(5, 3, PrimeModulus(8191));
  EXPECT_EQ(cfg.k, 13u);
  EXPECT_NO_THROW(cfg.validate_hybrid());
  auto bad = cfg;
  bad.t = 6;
  EXPECT_THROW(bad.validate_hybrid(), PreconditionError);
  bad = cfg;
  bad.t = 0;
  EXPECT_THROW(bad.validate_hybrid(), PreconditionError);
  bad = cfg;
  bad.k = 12;
  EXPECT_THROW(bad.validate_hybrid(), PreconditionError);
  auto small = SessionConfig::hybrid(11, 2, PrimeModulus(11));
  EXPECT_THROW(small.validate_hybrid(), PreconditionError);
  SessionConfig none;
  EXPECT_THROW(none.validate_hybrid(), PreconditionError);
}

TEST(DealTN, ThresholdOneGivesSecretEverywhere) {
  auto groups = groups_for(3, 96);
  std::mt19937_64 rng(96);
  auto cfg = SessionConfig::hybrid(3, 1, PrimeModulus(11));
  auto cols = deal_tn(7, cfg, groups, rng);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(recover_share(cols[j], groups[j], *cfg.p), (SharePoint{j + 1, 7}));
  }
}

TEST(DealTN, FixedPolynomialSharesMatchEvaluations) {
  auto groups = groups_for(3, 97);
  std::mt19937_64 rng(97);
  auto cfg = SessionConfig::hybrid(3, 3, PrimeModulus(11));
  auto cols = deal_tn_with_polynomial(Polynomial{{5, 3, 2}}, cfg, groups, rng);
  std::vector<SharePoint> got;
  for (std::size_t j = 0; j < 3; ++j) {
    got.push_back(recover_share(cols[j], groups[j], *cfg.p));
  }
  EXPECT_EQ(got, (std::vector<SharePoint>{{1, 10}, {2, 8}, {3, 10}}));
  EXPECT_EQ(interpolate_at_zero(got, *cfg.p), 5u);
}

TEST(DealTN, AnyThresholdSubsetRecovers) {
  auto groups = groups_for(5, 98);
  auto cfg = SessionConfig::hybrid(5, 3, PrimeModulus(8191));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    auto secret = rng() % 8191;
    auto cols = deal_tn(secret, cfg, groups, rng);
    std::vector<std::size_t> order{0, 1, 2, 3, 4};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<SharePoint> pts;
    for (std::size_t i = 0; i < cfg.t; ++i) {
      pts.push_back(recover_share(cols[order[i]], groups[order[i]], *cfg.p));
    }
    EXPECT_EQ(interpolate_at_zero(pts, *cfg.p), secret);
  }
}

TEST(DealTN, Preconditions) {
  auto groups = groups_for(3, 99);
  std::mt19937_64 rng(99);
  auto cfg = SessionConfig::hybrid(3, 2, PrimeModulus(11));
  EXPECT_THROW(deal_tn(11, cfg, groups, rng), PreconditionError);
  auto four = SessionConfig::hybrid(4, 2, PrimeModulus(11));
  EXPECT_THROW(deal_tn(1, four, groups, rng), PreconditionError);
}

TEST(RecoverShare, WrongGroupMisdecodes) {
  auto groups = groups_for(2, 100);
  auto cfg = SessionConfig::hybrid(2, 2, PrimeModulus(8191));
  int mismatches = 0;
  const int trials = 50;
  for (int seed = 0; seed < trials; ++seed) {
    std::mt19937_64 rng(seed);
    auto cols = deal_tn(rng() % 8191, cfg, groups, rng);
    auto right = recover_share(cols[0], groups[0], *cfg.p);
    auto wrong = column_to_int(decode_column(cols[0], groups[1]));
    mismatches += wrong != right.value;
  }
  EXPECT_GE(mismatches, trials - 1);
}

TEST(RecoverShare, AllZeroColumnIsZero) {
  PlatformGroup g(testing_support::sample_group(101));
  WordColumn col{2, std::vector<Word>(4, testing_support::W(3, "x2"))};
  EXPECT_EQ(recover_share(col, g, PrimeModulus(11)), (SharePoint{2, 0}));
}

TEST(RecoverShare, ValueAtLeastPIsDataError) {
  PlatformGroup g(testing_support::sample_group(102));
  WordColumn col{1, std::vector<Word>(4, Word(Alphabet(3)))};
  EXPECT_THROW(recover_share(col, g, PrimeModulus(11)), DataError);
}

TEST(NoRepeat, DealingManySecretsNeverRepeatsAWord) {
  auto groups = groups_for(3, 103);
  std::mt19937_64 rng(103);
  std::set<Word> seen;
  std::size_t total = 0;
  for (int i = 0; i < 20; ++i) {
    auto secret = random_column(16, rng);
    for (const auto& col : deal_nn(secret, groups, WordParams{}, rng)) {
      for (const auto& w : col.words) {
        seen.insert(w);
        ++total;
      }
    }
  }
  EXPECT_EQ(seen.size(), total);
}

TEST(ShareBundle, RoundTrip) {
  PlatformGroup g(testing_support::sample_group(104));
  std::mt19937_64 rng(104);
  auto col = encode_column(random_column(8, rng), g, 4, WordParams{}, rng);
  auto text = to_string(col);
  EXPECT_EQ(text.rfind("share-bundle participant=4 k=8\nw1 ", 0), 0u);
  EXPECT_EQ(parse_share_bundle(text, Alphabet(3)), col);
  WordColumn with_empty{1, {Word(Alphabet(3)), testing_support::W(3, "x1")}};
  EXPECT_EQ(parse_share_bundle(to_string(with_empty), Alphabet(3)), with_empty);
}

TEST(ShareBundle, Errors) {
  Alphabet a(3);
  EXPECT_THROW(parse_share_bundle("", a), ParseError);
  EXPECT_THROW(parse_share_bundle("bundle participant=1 k=1\nw1 x1\n", a), ParseError);
  EXPECT_THROW(parse_share_bundle("share-bundle participant=1 k=2\nw1 x1\n", a), ParseError);
  EXPECT_THROW(parse_share_bundle("share-bundle participant=1 k=1\nw2 x1\n", a), ParseError);
  EXPECT_THROW(parse_share_bundle("share-bundle participant=x k=1\nw1 x1\n", a), ParseError);
  EXPECT_THROW(parse_share_bundle("share-bundle participant=1 k=1\nw1 x4\n", a), ParseError);
}

}  // namespace
