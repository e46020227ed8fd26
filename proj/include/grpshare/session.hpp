#pragma once

// On-disk session layout used by the command line tool:
//
//   <dir>/manifest.txt                 public parameters, "key value" lines
//   <dir>/secure/participant-<j>.txt   long-term presentation of P_j
//   <dir>/open/bundle-<j>.txt          share bundle addressed to P_j
//   <dir>/transcripts/<name>.txt       secure-sum transcripts
//
// secure/ models the secure channel and open/ the open one; an eavesdropper
// gets open/ and transcripts/ only.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "error.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "secure_sum.hpp"

namespace grpshare {

enum class SchemeMode { nn, tn };

struct Manifest {
  SchemeMode mode = SchemeMode::nn;
  std::size_t n = 0;
  std::size_t t = 0;
  std::optional<std::uint64_t> p;
  std::size_t k = 0;
  std::size_t rank = 0;
  std::size_t relators = 0;
  std::size_t relator_length = 0;
  Rational lambda = kDehnLambda;
  std::string seed_commitment;

  bool operator==(const Manifest&) const = default;
};

inline std::string to_string(const Manifest& m) {
  std::ostringstream os;
  os << "mode " << (m.mode == SchemeMode::nn ? "nn" : "tn") << "\n"
     << "n " << m.n << "\n"
     << "t " << m.t << "\n"
     << "p " << (m.p ? std::to_string(*m.p) : std::string("none")) << "\n"
     << "k " << m.k << "\n"
     << "rank " << m.rank << "\n"
     << "relators " << m.relators << "\n"
     << "relator-length " << m.relator_length << "\n"
     << "lambda " << m.lambda << "\n"
     << "seed-commitment " << m.seed_commitment << "\n";
  return os.str();
}

inline Manifest parse_manifest(std::string_view text) {
  Manifest m;
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned seen = 0;
  auto mark = [&](unsigned bit) {
    if (seen & bit) {
      throw ParseError("duplicate manifest key in '" + line + "'");
    }
    seen |= bit;
  };
  while (std::getline(in, line)) {
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') {
      continue;
    }
    auto [key, value] = detail::split_keyword(trimmed);
    if (key == "mode") {
      mark(1);
      if (value == "nn") {
        m.mode = SchemeMode::nn;
      } else if (value == "tn") {
        m.mode = SchemeMode::tn;
      } else {
        throw ParseError("unknown mode '" + std::string(value) + "'");
      }
    } else if (key == "n") {
      mark(2);
      m.n = detail::parse_count(value, "n");
    } else if (key == "t") {
      mark(4);
      m.t = detail::parse_count(value, "t");
    } else if (key == "p") {
      mark(8);
      if (value != "none") {
        m.p = detail::parse_count(value, "p");
      }
    } else if (key == "k") {
      mark(16);
      m.k = detail::parse_count(value, "k");
    } else if (key == "rank") {
      mark(32);
      m.rank = detail::parse_count(value, "rank");
    } else if (key == "relators") {
      mark(64);
      m.relators = detail::parse_count(value, "relators");
    } else if (key == "relator-length") {
      mark(128);
      m.relator_length = detail::parse_count(value, "relator-length");
    } else if (key == "lambda") {
      mark(256);
      m.lambda = Rational::parse(value);
    } else if (key == "seed-commitment") {
      mark(512);
      m.seed_commitment = std::string(value);
    } else {
      throw ParseError("unknown manifest key '" + std::string(key) + "'");
    }
  }
  if ((seen & 63) != 63) {
    throw ParseError("manifest is missing one of mode, n, t, p, k, rank");
  }
  if (m.mode == SchemeMode::tn && !m.p) {
    throw ParseError("tn manifest without p");
  }
  return m;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
  out << text;
}

class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path manifest_path() const { return root_ / "manifest.txt"; }
  std::filesystem::path secure_dir() const { return root_ / "secure"; }
  std::filesystem::path open_dir() const { return root_ / "open"; }
  std::filesystem::path transcript_dir() const { return root_ / "transcripts"; }
  std::filesystem::path presentation_path(std::size_t j) const {
    return secure_dir() / ("participant-" + std::to_string(j) + ".txt");
  }
  std::filesystem::path bundle_path(std::size_t j) const {
    return open_dir() / ("bundle-" + std::to_string(j) + ".txt");
  }

  void write_manifest(const Manifest& m) const { write_text_file(manifest_path(), to_string(m)); }
  Manifest read_manifest() const { return parse_manifest(read_text_file(manifest_path())); }

  void write_presentation(std::size_t j, const Presentation& p) const {
    write_text_file(presentation_path(j), to_string(p));
  }

  void write_bundle(const WordColumn& column) const {
    write_text_file(bundle_path(column.participant), to_string(column));
  }

  void write_transcript(const std::string& name, const Transcript& tr) const {
    write_text_file(transcript_dir() / (name + ".txt"), to_string(tr));
  }

  bool has_participant(std::size_t j) const {
    return std::filesystem::exists(presentation_path(j)) && std::filesystem::exists(bundle_path(j));
  }

  /// Presentation of P_j, checked against the manifest rank.
  Presentation read_presentation(std::size_t j, const Manifest& m) const {
    auto p = parse_presentation(read_text_file(presentation_path(j)));
    if (p.rank() != m.rank) {
      throw DataError("participant " + std::to_string(j) + " presentation has rank " + std::to_string(p.rank()) +
                      ", manifest says " + std::to_string(m.rank));
    }
    return p;
  }

  /// Bundle of P_j, checked against the manifest width and its own header.
  WordColumn read_bundle(std::size_t j, const Manifest& m) const {
    auto column = parse_share_bundle(read_text_file(bundle_path(j)), Alphabet(m.rank));
    if (column.participant != j) {
      throw DataError("bundle-" + std::to_string(j) + " is addressed to participant " +
                      std::to_string(column.participant));
    }
    if (column.size() != m.k) {
      throw DataError("bundle-" + std::to_string(j) + " has k=" + std::to_string(column.size()) +
                      ", manifest says " + std::to_string(m.k));
    }
    return column;
  }

 private:
  std::filesystem::path root_;
};

}  // namespace grpshare
