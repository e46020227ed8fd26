#pragma once

// Subcommands of the grpshare tool. Each command throws on failure; run_cli
// maps exceptions to exit codes:
//   0 ok, 1 usage, 2 precondition or data error, 3 budget exhausted.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "grpshare/grpshare.hpp"

namespace grpshare::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string seed_commitment(std::uint64_t seed) {
  auto text = "grpshare-seed:" + std::to_string(seed);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kDigits[digest[i] >> 4];
    hex += kDigits[digest[i] & 0xf];
  }
  return hex;
}

struct GroupShape {
  std::size_t rank = 3;
  std::size_t relators = 3;
  std::size_t length = 40;
  std::string lambda = "1/6";
  std::size_t max_attempts = kDefaultMaxAttempts;

  PlatformParams params() const {
    if (length <= 6) {
      throw UsageError("--length must exceed 6");
    }
    if (rank < 1 || relators < 1 || max_attempts < 1) {
      throw UsageError("--rank, --relators and --max-attempts must be positive");
    }
    Rational l;
    try {
      l = Rational::parse(lambda);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--lambda: ") + e.what());
    }
    if (!(Rational(0) < l && l < Rational(1))) {
      throw UsageError("--lambda must lie in (0, 1)");
    }
    return PlatformParams{rank, relators, length, l, max_attempts};
  }
};

inline void print_report(std::ostream& out, const CancellationReport& r) {
  out << "lambda " << r.lambda_bound << "\n"
      << "max-piece-ratio " << r.max_piece_ratio << "\n"
      << "satisfied " << (r.satisfied ? "true" : "false") << "\n";
  if (r.witness) {
    out << "witness-piece " << to_string(r.witness->piece) << "\n"
        << "witness-relator " << to_string(r.witness->relator) << "\n"
        << "witness-other " << to_string(r.witness->other_relator) << "\n";
  }
}

// ---------------------------------------------------------------------------

struct GenGroupOptions {
  GroupShape shape;
  std::uint64_t seed = 1;
  std::string out;
};

inline int gen_group(const GenGroupOptions& opt, std::ostream& out) {
  auto params = opt.shape.params();
  std::mt19937_64 rng(opt.seed);
  auto p = random_platform_group(params, rng);
  if (opt.out.empty()) {
    out << to_string(p);
  } else {
    write_text_file(opt.out, to_string(p));
    out << "wrote " << opt.out << "\n";
  }
  print_report(out, check_small_cancellation(p, params.lambda));
  return kOk;
}

// ---------------------------------------------------------------------------

struct DealOptions {
  std::string mode = "nn";
  std::string secret;
  std::size_t n = 0;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> p;
  std::uint64_t seed = 1;
  std::string session_dir;
  GroupShape shape;
};

inline std::uint64_t parse_decimal_secret(const std::string& text) {
  if (text.empty() || text.size() > 19 || !std::all_of(text.begin(), text.end(), [](char c) {
        return c >= '0' && c <= '9';
      })) {
    throw PreconditionError("tn secret must be a decimal residue, got '" + text + "'");
  }
  return std::stoull(text);
}

inline int deal(const DealOptions& opt, std::ostream& out) {
  if (opt.mode != "nn" && opt.mode != "tn") {
    throw UsageError("--mode must be nn or tn");
  }
  if (opt.n < 2) {
    throw UsageError("--n must be at least 2");
  }
  if (opt.session_dir.empty()) {
    throw UsageError("--session-dir is required");
  }
  auto params = opt.shape.params();

  Manifest manifest;
  manifest.n = opt.n;
  manifest.rank = params.rank;
  manifest.relators = params.relator_count;
  manifest.relator_length = params.relator_length;
  manifest.lambda = params.lambda;
  manifest.seed_commitment = seed_commitment(opt.seed);

  BitColumn secret_bits;
  SessionConfig cfg;
  std::uint64_t secret_value = 0;
  if (opt.mode == "nn") {
    if (opt.t && *opt.t != opt.n) {
      throw UsageError("nn mode has t = n");
    }
    try {
      secret_bits = BitColumn::from_hex(opt.secret);
    } catch (const ParseError& e) {
      throw PreconditionError(std::string("nn secret: ") + e.what());
    }
    manifest.mode = SchemeMode::nn;
    manifest.t = opt.n;
    manifest.k = secret_bits.size();
  } else {
    if (!opt.t || !opt.p) {
      throw UsageError("tn mode needs --t and --p");
    }
    if (*opt.t < 1 || *opt.t > opt.n) {
      throw UsageError("need 1 <= t <= n");
    }
    PrimeModulus p(*opt.p);
    secret_value = parse_decimal_secret(opt.secret);
    detail::require(secret_value < p.value(), "secret must lie in [0, p)");
    cfg = SessionConfig::hybrid(opt.n, *opt.t, p);
    cfg.validate_hybrid();
    manifest.mode = SchemeMode::tn;
    manifest.t = *opt.t;
    manifest.p = p.value();
    manifest.k = cfg.k;
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<PlatformGroup> groups;
  for (std::size_t j = 0; j < opt.n; ++j) {
    groups.emplace_back(random_platform_group(params, rng));
  }
  auto columns = opt.mode == "nn" ? deal_nn(secret_bits, groups, WordParams{}, rng)
                                  : deal_tn(secret_value, cfg, groups, rng);

  SessionStore store(opt.session_dir);
  store.write_manifest(manifest);
  for (std::size_t j = 1; j <= opt.n; ++j) {
    store.write_presentation(j, groups[j - 1].presentation());
    store.write_bundle(columns[j - 1]);
  }
  out << "dealt " << opt.mode << " secret to " << opt.n << " participants (t=" << manifest.t
      << ", k=" << manifest.k << ") in " << opt.session_dir << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct RecoverOptions {
  std::string session_dir;
  std::vector<std::size_t> participants;  // empty: everyone
  bool secure_sum = false;
  std::uint64_t seed = 1;
};

inline int recover(const RecoverOptions& opt, std::ostream& out) {
  if (opt.session_dir.empty()) {
    throw UsageError("--session-dir is required");
  }
  SessionStore store(opt.session_dir);
  auto manifest = store.read_manifest();

  std::vector<std::size_t> who = opt.participants;
  if (who.empty()) {
    for (std::size_t j = 1; j <= manifest.n; ++j) {
      who.push_back(j);
    }
  }
  std::set<std::size_t> distinct(who.begin(), who.end());
  if (distinct.size() != who.size()) {
    throw UsageError("participants listed twice");
  }
  for (auto j : who) {
    if (j < 1 || j > manifest.n) {
      throw UsageError("participant " + std::to_string(j) + " outside 1.." + std::to_string(manifest.n));
    }
  }
  if (who.size() < manifest.t) {
    throw DataError("insufficient shares: " + std::to_string(who.size()) + " given, " +
                    std::to_string(manifest.t) + " needed");
  }
  for (auto j : who) {
    if (!store.has_participant(j)) {
      throw DataError("participant " + std::to_string(j) + " has no presentation or bundle in the session");
    }
  }

  std::vector<BitColumn> decoded;
  for (auto j : who) {
    PlatformGroup group(store.read_presentation(j, manifest));
    decoded.push_back(decode_column(store.read_bundle(j, manifest), group));
  }

  std::optional<Transcript> transcript;
  std::string secret;
  std::mt19937_64 rng(opt.seed);
  if (manifest.mode == SchemeMode::nn) {
    BitColumn result;
    if (opt.secure_sum) {
      auto [sum, tr] = run_secure_sum(decoded, rng, who);
      result = std::move(sum);
      transcript = std::move(tr);
    } else {
      result = recover_secret_nn(decoded);
    }
    secret = result.size() % 4 == 0 ? result.to_hex() : result.to_string();
  } else {
    PrimeModulus p(*manifest.p);
    std::vector<SharePoint> shares;
    for (std::size_t i = 0; i < who.size(); ++i) {
      auto y = column_to_int(decoded[i]);
      if (y >= p.value()) {
        throw DataError("participant " + std::to_string(who[i]) + " decoded a share outside Z_p");
      }
      shares.push_back(SharePoint{who[i], y});
    }
    std::uint64_t value = 0;
    if (opt.secure_sum) {
      auto [v, tr] = run_secure_linear_combination(shares, p, rng);
      value = v;
      transcript = std::move(tr);
    } else {
      value = interpolate_at_zero(shares, p);
    }
    secret = std::to_string(value);
  }

  out << "secret " << secret << "\n";
  if (transcript) {
    std::string name = "recover";
    for (auto j : who) {
      name += "-" + std::to_string(j);
    }
    store.write_transcript(name, *transcript);
    out << "transcript " << (store.transcript_dir() / (name + ".txt")).string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct TietzeOptions {
  std::string in;
  std::string out;
};

inline int tietze_break(const TietzeOptions& opt, std::ostream& out) {
  auto p = parse_presentation(read_text_file(opt.in));
  auto b = break_relators(p);
  auto text = to_string(b);
  if (opt.out.empty()) {
    out << text;
  } else {
    write_text_file(opt.out, text);
  }
  auto before = p.total_length();
  auto after = b.presentation.total_length();
  Rational ratio = before == 0 ? Rational(1)
                               : Rational(static_cast<std::int64_t>(after), static_cast<std::int64_t>(before));
  out << "before generators=" << p.rank() << " relators=" << p.relators().size() << " total=" << before
      << " max=" << p.max_relator_length() << "\n"
      << "after generators=" << b.presentation.rank() << " relators=" << b.presentation.relators().size()
      << " total=" << after << " max=" << b.presentation.max_relator_length() << "\n"
      << "ratio " << ratio << " (" << ratio.to_double() << ")\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct InspectOptions {
  std::string in;
  std::optional<std::string> word;
};

inline int inspect(const InspectOptions& opt, std::ostream& out) {
  auto p = parse_presentation(read_text_file(opt.in));
  auto report = check_small_cancellation(p, kDehnLambda);
  if (!opt.word) {
    out << "generators " << p.rank() << "\n"
        << "relators " << p.relators().size() << "\n"
        << "total-length " << p.total_length() << "\n";
    print_report(out, report);
    return kOk;
  }
  auto w = parse_word(*opt.word, p.alphabet());
  auto trace = PlatformGroup(p).dehn(w);
  out << "word " << to_string(w) << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out << "step " << i + 1 << " at " << s.position << ": " << to_string(s.replaced) << " -> "
        << to_string(s.replacement) << " (relator " << to_string(s.relator) << ")\n";
  }
  out << "final " << to_string(trace.final_word) << "\n"
      << "steps " << trace.steps.size() << "\n"
      << "verdict " << (trace.is_trivial ? "trivial" : "nontrivial") << "\n";
  if (!report.satisfied && !trace.is_trivial) {
    out << "note: presentation is not C'(1/6), a nontrivial verdict is not conclusive\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

inline void add_shape_flags(CLI::App* cmd, GroupShape& shape) {
  cmd->add_option("--rank", shape.rank, "number of generators")->capture_default_str();
  cmd->add_option("--relators", shape.relators, "relators per group")->capture_default_str();
  cmd->add_option("--length", shape.length, "relator length, > 6")->capture_default_str();
  cmd->add_option("--lambda", shape.lambda, "small cancellation bound a/b")->capture_default_str();
  cmd->add_option("--max-attempts", shape.max_attempts, "rejection sampling budget")->capture_default_str();
}

/// Full command line entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"secret sharing over small cancellation groups", "grpshare"};
  app.require_subcommand(1);

  GenGroupOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-group", "sample a C'(lambda) presentation");
  add_shape_flags(gen_cmd, gen.shape);
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "presentation file (stdout if omitted)");

  DealOptions dl;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> p;
  auto* deal_cmd = app.add_subcommand("deal", "deal a secret into a session directory");
  deal_cmd->add_option("--mode", dl.mode, "nn or tn")->capture_default_str();
  deal_cmd->add_option("--secret", dl.secret, "hex bits (nn) or decimal residue (tn)")->required();
  deal_cmd->add_option("--n", dl.n, "participants")->required();
  deal_cmd->add_option("--t", t, "threshold (tn)");
  deal_cmd->add_option("--p", p, "prime modulus (tn)");
  deal_cmd->add_option("--seed", dl.seed)->capture_default_str();
  deal_cmd->add_option("--session-dir", dl.session_dir)->required();
  add_shape_flags(deal_cmd, dl.shape);

  RecoverOptions rc;
  std::string participants;
  auto* recover_cmd = app.add_subcommand("recover", "recover the secret from a session");
  recover_cmd->add_option("--session-dir", rc.session_dir)->required();
  recover_cmd->add_option("--participants", participants, "comma separated list, default all");
  recover_cmd->add_flag("--secure-sum", rc.secure_sum, "recombine over the masked ring");
  recover_cmd->add_option("--seed", rc.seed, "mask seed for --secure-sum")->capture_default_str();

  TietzeOptions tz;
  auto* tietze_cmd = app.add_subcommand("tietze-break", "rewrite to relators of length at most 3");
  tietze_cmd->add_option("--in", tz.in)->required();
  tietze_cmd->add_option("--out", tz.out, "output file (stdout if omitted)");

  InspectOptions ins;
  std::string word;
  auto* inspect_cmd = app.add_subcommand("inspect", "cancellation report or Dehn trace");
  inspect_cmd->add_option("--in", ins.in)->required();
  auto* word_opt = inspect_cmd->add_option("--word", word, "word to decide");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    auto code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  return guarded(err, [&]() -> int {
    if (*gen_cmd) {
      return gen_group(gen, out);
    }
    if (*deal_cmd) {
      dl.t = t;
      dl.p = p;
      return deal(dl, out);
    }
    if (*recover_cmd) {
      std::size_t start = 0;
      while (start < participants.size()) {
        auto comma = participants.find(',', start);
        auto tok = participants.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        start = comma == std::string::npos ? participants.size() : comma + 1;
        if (tok.empty() || tok.size() > 9 ||
            !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          throw UsageError("bad participant '" + tok + "' in --participants");
        }
        rc.participants.push_back(std::stoul(tok));
      }
      return recover(rc, out);
    }
    if (*tietze_cmd) {
      return tietze_break(tz, out);
    }
    if (word_opt->count() > 0) {
      ins.word = word;
    }
    return inspect(ins, out);
  });
}

}  // namespace grpshare::cli
