#pragma once

// Masked ring summation. P1 starts the ring with N1 + C1, every P_i adds
// N_i + C_i and forwards, P_n closes the ring back to P1. P1 removes N1 and
// broadcasts S = sum C + sum_{i>=2} N_i; then P2..Pn each broadcast the
// running value with their own mask removed, the last broadcast being the
// sum. Values are vectors over Z_q: q = 2 gives XOR of bit columns, q = p
// gives the Lagrange-weighted combination of Shamir shares.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "scheme.hpp"

namespace grpshare {

enum class Channel { secure_ring, broadcast };

inline constexpr std::size_t kBroadcast = 0;    // Message::to for broadcasts
inline constexpr std::size_t kEavesdropper = 0; // audit observer with open-channel view only

struct Message {
  std::size_t round;
  std::size_t from;  // ring position, 1-based
  std::size_t to;    // ring position or kBroadcast
  Channel channel;
  std::vector<std::uint64_t> payload;

  bool operator==(const Message&) const = default;
};

/// Private inputs and masks of one participant.
struct ParticipantState {
  std::vector<std::uint64_t> input;
  std::vector<std::uint64_t> mask;

  bool operator==(const ParticipantState&) const = default;
};

struct Transcript {
  std::uint64_t modulus = 2;
  std::size_t width = 0;
  std::vector<std::size_t> labels;  // participant id at each ring position
  std::vector<Message> messages;
  std::vector<ParticipantState> participants;
  std::vector<std::uint64_t> output;

  std::size_t participant_count() const { return participants.size(); }
  bool complete() const {
    return participants.size() >= 2 && messages.size() == 2 * participants.size() &&
           labels.size() == participants.size();
  }

  bool operator==(const Transcript&) const = default;
};

namespace detail {

// All message payloads for given inputs and masks, in round order.
inline std::vector<std::vector<std::uint64_t>> ring_payloads(std::span<const std::vector<std::uint64_t>> inputs,
                                                             std::span<const std::vector<std::uint64_t>> masks,
                                                             std::uint64_t q, std::size_t width) {
  const auto n = inputs.size();
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> acc(width, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < width; ++e) {
      acc[e] = (acc[e] + masks[i][e] + inputs[i][e]) % q;
    }
    out.push_back(acc);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < width; ++e) {
      acc[e] = (acc[e] + q - masks[i][e]) % q;
    }
    out.push_back(acc);
  }
  return out;
}

inline std::vector<Message> ring_messages(std::vector<std::vector<std::uint64_t>> payloads, std::size_t n) {
  std::vector<Message> out;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Message m{i + 1, 0, 0, Channel::secure_ring, std::move(payloads[i])};
    if (i < n) {
      m.from = i + 1;
      m.to = i + 1 == n ? 1 : i + 2;
    } else {
      m.from = i - n + 1;
      m.to = kBroadcast;
      m.channel = Channel::broadcast;
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Runs the ring for any n >= 2; callers enforce their own minimum.
template <std::uniform_random_bit_generator Rng>
Transcript run_ring(std::vector<std::vector<std::uint64_t>> inputs, std::uint64_t q, std::vector<std::size_t> labels,
                    Rng& rng) {
  require(inputs.size() >= 2, "ring needs at least 2 participants");
  require(q >= 2, "modulus must be at least 2");
  const auto width = inputs.front().size();
  Transcript tr;
  tr.modulus = q;
  tr.width = width;
  tr.labels = std::move(labels);
  require(tr.labels.size() == inputs.size(), "one label per participant");
  std::uniform_int_distribution<std::uint64_t> residue(0, q - 1);
  std::vector<std::vector<std::uint64_t>> masks;
  for (auto& in : inputs) {
    require(in.size() == width, "input width mismatch");
    std::vector<std::uint64_t> mask(width);
    for (auto& x : mask) {
      x = residue(rng);
    }
    for (auto& x : in) {
      x %= q;
    }
    masks.push_back(mask);
    tr.participants.push_back(ParticipantState{in, std::move(mask)});
  }
  tr.messages = ring_messages(ring_payloads(inputs, masks, q, width), inputs.size());
  tr.output = tr.messages.back().payload;
  return tr;
}

inline std::vector<std::size_t> default_labels(std::size_t n) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i + 1;
  }
  return labels;
}

}  // namespace detail

/// XOR of the input columns computed over the masked ring; n >= 3.
template <std::uniform_random_bit_generator Rng>
std::pair<BitColumn, Transcript> run_secure_sum(std::span<const BitColumn> inputs, Rng& rng,
                                                std::vector<std::size_t> labels = {}) {
  detail::require(inputs.size() >= 3, "secure sum needs at least 3 participants");
  std::vector<std::vector<std::uint64_t>> values;
  for (const auto& c : inputs) {
    detail::require(c.size() == inputs.front().size(), "bit column width mismatch");
    values.emplace_back(c.bits().begin(), c.bits().end());
  }
  if (labels.empty()) {
    labels = detail::default_labels(inputs.size());
  }
  auto tr = detail::run_ring(std::move(values), 2, std::move(labels), rng);
  std::vector<std::uint8_t> bits(tr.output.begin(), tr.output.end());
  return {BitColumn(std::move(bits)), std::move(tr)};
}

/// f(0) = sum c_i y_i mod p over the masked ring; each participant feeds
/// c_i y_i for the public Lagrange weight c_i. Needs t >= 3 shares.
template <std::uniform_random_bit_generator Rng>
std::pair<std::uint64_t, Transcript> run_secure_linear_combination(std::span<const SharePoint> shares,
                                                                   const PrimeModulus& p, Rng& rng) {
  detail::require(shares.size() >= 3, "secure combination needs t >= 3 shares");
  std::vector<std::uint64_t> indices;
  std::vector<std::size_t> labels;
  for (const auto& s : shares) {
    indices.push_back(s.index);
    labels.push_back(static_cast<std::size_t>(s.index));
  }
  auto c = lagrange_coefficients(indices, p);
  std::vector<std::vector<std::uint64_t>> values;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    values.push_back({p.mul(c[i], shares[i].value % p.value())});
  }
  auto tr = detail::run_ring(std::move(values), p.value(), std::move(labels), rng);
  return {tr.output.front(), std::move(tr)};
}

/// Recomputes every message from the private state and checks it against the
/// log; returns the output.
inline std::vector<std::uint64_t> replay(const Transcript& tr) {
  if (!tr.complete()) {
    throw DataError("incomplete transcript");
  }
  std::vector<std::vector<std::uint64_t>> inputs, masks;
  for (const auto& st : tr.participants) {
    inputs.push_back(st.input);
    masks.push_back(st.mask);
  }
  auto expected = detail::ring_messages(detail::ring_payloads(inputs, masks, tr.modulus, tr.width),
                                        tr.participants.size());
  if (expected != tr.messages || expected.back().payload != tr.output) {
    throw DataError("transcript does not replay");
  }
  return tr.output;
}

struct Exposure {
  std::size_t participant;         // ring position
  std::size_t determined_entries;  // entries of the input pinned down by the view
  bool fully_determined;
};

struct PrivacyReport {
  std::size_t observer;  // ring position, or kEavesdropper
  std::vector<Exposure> exposures;

  std::vector<std::size_t> determined() const {
    std::vector<std::size_t> out;
    for (const auto& e : exposures) {
      if (e.fully_determined) {
        out.push_back(e.participant);
      }
    }
    return out;
  }

  bool reveals_nothing() const {
    for (const auto& e : exposures) {
      if (e.determined_entries > 0) {
        return false;
      }
    }
    return true;
  }
};

/// For each entry, enumerates every (input, mask) assignment of the parties
/// the observer cannot see into and keeps those that reproduce the
/// observer's view. An input entry is determined when all surviving
/// assignments agree on it. The eavesdropper sees broadcasts only.
inline PrivacyReport transcript_privacy_audit(const Transcript& tr, std::size_t observer,
                                              std::uint64_t max_assignments = std::uint64_t{1} << 24) {
  if (!tr.complete()) {
    throw DataError("incomplete transcript");
  }
  const auto n = tr.participant_count();
  const auto q = tr.modulus;
  detail::require(observer <= n, "observer out of range");

  std::vector<std::size_t> visible;
  for (std::size_t m = 0; m < tr.messages.size(); ++m) {
    const auto& msg = tr.messages[m];
    bool seen = msg.channel == Channel::broadcast ||
                (observer != kEavesdropper && (msg.from == observer || msg.to == observer));
    if (seen) {
      visible.push_back(m);
    }
  }
  std::vector<std::size_t> unknown;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i != observer) {
      unknown.push_back(i);
    }
  }
  std::uint64_t per_party = q * q;
  std::uint64_t total = 1;
  for (std::size_t u = 0; u < unknown.size(); ++u) {
    if (total > max_assignments / per_party) {
      throw BudgetExhausted("privacy audit enumeration too large");
    }
    total *= per_party;
  }

  std::vector<std::size_t> determined(n + 1, 0);
  std::vector<std::vector<std::uint64_t>> in(n, std::vector<std::uint64_t>(1)), mask(n, std::vector<std::uint64_t>(1));
  for (std::size_t e = 0; e < tr.width; ++e) {
    if (observer != kEavesdropper) {
      in[observer - 1][0] = tr.participants[observer - 1].input[e];
      mask[observer - 1][0] = tr.participants[observer - 1].mask[e];
    }
    // seen[u][v]: some consistent completion gives party unknown[u] input v
    std::vector<std::vector<bool>> seen(unknown.size(), std::vector<bool>(q, false));
    for (std::uint64_t code = 0; code < total; ++code) {
      auto c = code;
      for (auto party : unknown) {
        in[party - 1][0] = c % q;
        c /= q;
        mask[party - 1][0] = c % q;
        c /= q;
      }
      auto payloads = detail::ring_payloads(in, mask, q, 1);
      bool consistent = true;
      for (auto m : visible) {
        if (payloads[m][0] != tr.messages[m].payload[e]) {
          consistent = false;
          break;
        }
      }
      if (consistent) {
        for (std::size_t u = 0; u < unknown.size(); ++u) {
          seen[u][in[unknown[u] - 1][0]] = true;
        }
      }
    }
    for (std::size_t u = 0; u < unknown.size(); ++u) {
      if (std::count(seen[u].begin(), seen[u].end(), true) == 1) {
        ++determined[unknown[u]];
      }
    }
  }

  PrivacyReport report{observer, {}};
  for (auto party : unknown) {
    report.exposures.push_back(Exposure{party, determined[party], determined[party] == tr.width});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Export: one line per message, "round <r> <from>-><to|*> <payload-hex>".
// Over Z_2 the payload bits are packed big-endian into hex digits (zero
// padded at the end); otherwise residues are written in hex, ':' separated.

inline std::string payload_hex(const std::vector<std::uint64_t>& payload, std::uint64_t modulus) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  if (modulus == 2) {
    for (std::size_t i = 0; i < payload.size(); i += 4) {
      int v = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        v = (v << 1) | (i + b < payload.size() ? static_cast<int>(payload[i + b] & 1) : 0);
      }
      s += kDigits[v];
    }
    return s;
  }
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (i > 0) {
      s += ':';
    }
    std::string digits;
    auto x = payload[i];
    do {
      digits.insert(digits.begin(), kDigits[x & 0xf]);
      x >>= 4;
    } while (x != 0);
    s += digits;
  }
  return s;
}

inline std::string to_string(const Transcript& tr) {
  std::string out;
  for (const auto& m : tr.messages) {
    out += "round " + std::to_string(m.round) + " " + std::to_string(tr.labels[m.from - 1]) + "->" +
           (m.to == kBroadcast ? std::string("*") : std::to_string(tr.labels[m.to - 1])) + " " +
           payload_hex(m.payload, tr.modulus) + "\n";
  }
  return out;
}

}  // namespace grpshare
