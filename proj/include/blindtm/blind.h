/*
 * Copyright 2026 The blindtm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef BLINDTM_BLIND_H_
#define BLINDTM_BLIND_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "blindtm/digest.h"
#include "blindtm/group.h"
#include "blindtm/hpkeet.h"
#include "blindtm/random.h"
#include "blindtm/tm.h"

// Blind Turing machines: a compiled machine whose state, tape and
// transition effects are HPKEET ciphertexts. The executor selects rules by
// unblinding commitments with the token and applies them by homomorphic
// addition of encrypted differences; every logical step is a full sweep of
// the tape so the access pattern depends only on (B, T).
namespace blindtm::blind {

// Secret injective assignment of random exponents to states and symbols,
// plus the commitment lookup tables used to decode decrypted cells.
class Encoding {
 public:
  // Codes are uniform in [0, q) and pairwise distinct across states and
  // symbols. Throws ValidationError when q cannot hold that many codes.
  static Encoding Make(const tm::TmSpec& spec, const Group& group,
                       Random& rng);
  // Rebuilds the decode tables; rejects non-injective code sets.
  static Encoding FromCodes(const Group& group, std::string id,
                            std::map<tm::State, Scalar> state_codes,
                            std::map<tm::Symbol, Scalar> symbol_codes,
                            tm::State start, tm::Symbol blank);

  const Group& group() const { return group_; }
  // Random public handle binding programs and tapes to this encoding.
  const std::string& id() const { return id_; }
  const tm::State& start() const { return start_; }
  const tm::Symbol& blank() const { return blank_; }
  const std::map<tm::State, Scalar>& state_codes() const {
    return state_codes_;
  }
  const std::map<tm::Symbol, Scalar>& symbol_codes() const {
    return symbol_codes_;
  }

  // Throw ValidationError for names outside the encoding.
  const Scalar& StateCode(const tm::State& state) const;
  const Scalar& SymbolCode(const tm::Symbol& symbol) const;

  std::optional<tm::State> DecodeState(const GroupElement& commitment) const;
  std::optional<tm::Symbol> DecodeSymbol(const GroupElement& commitment) const;

 private:
  Encoding(Group group, std::string id, std::map<tm::State, Scalar> states,
           std::map<tm::Symbol, Scalar> symbols, tm::State start,
           tm::Symbol blank);

  Group group_;
  std::string id_;
  std::map<tm::State, Scalar> state_codes_;
  std::map<tm::Symbol, Scalar> symbol_codes_;
  tm::State start_;
  tm::Symbol blank_;
  // Keyed by the hex of g^code.
  std::unordered_map<std::string, tm::State> decode_state_;
  std::unordered_map<std::string, tm::Symbol> decode_symbol_;
};

using TableKey = Digest;

struct TableKeyHash {
  std::size_t operator()(const TableKey& k) const;
};

// SHA-256 over the salt and the fixed-width commitments to state and symbol.
TableKey TransitionKey(const Group& group, std::uint32_t salt,
                       const GroupElement& state_commitment,
                       const GroupElement& symbol_commitment);

struct ProgramEntry {
  hpkeet::Ciphertext delta_state;   // Enc(C(p) - C(q))
  hpkeet::Ciphertext delta_symbol;  // Enc(C(s') - C(s))
  tm::Move move = tm::Move::kStay;
};

struct BlindProgram {
  explicit BlindProgram(hpkeet::PublicKey key) : pk(std::move(key)) {}

  hpkeet::PublicKey pk;
  std::string encoding_id;
  std::uint32_t salt = 0;
  std::unordered_map<TableKey, ProgramEntry, TableKeyHash> table;
  hpkeet::Ciphertext enc_start;
  // Hex of g^C(h) for every halting state h.
  std::unordered_set<std::string> halt_commitments;
  tm::Polynomial time_bound;
  tm::Polynomial space_bound;

  const Group& group() const { return pk.group; }
  const std::string& fingerprint() const { return pk.group.fingerprint(); }
};

// One table entry per rule. Throws ValidationError if the encoding does not
// cover the machine.
BlindProgram Compile(const tm::TmSpec& spec, const Encoding& encoding,
                     const hpkeet::PublicKey& pk, Random& rng);

struct EncryptedConfiguration {
  std::string fingerprint;
  std::string encoding_id;
  std::uint64_t input_length = 0;
  std::int64_t bound = 0;  // cells cover [-bound, bound]
  std::int64_t head = 0;
  std::uint64_t logical_step = 0;
  hpkeet::Ciphertext state;
  std::vector<hpkeet::Ciphertext> cells;

  hpkeet::Ciphertext& Cell(std::int64_t position) {
    return cells.at(static_cast<std::size_t>(position + bound));
  }
  const hpkeet::Ciphertext& Cell(std::int64_t position) const {
    return cells.at(static_cast<std::size_t>(position + bound));
  }
};

// Input at cells 0..n-1, fresh blank encryptions elsewhere in [-B, B],
// fresh encryption of the start state, head at 0. Requires n <= B.
EncryptedConfiguration EncryptTape(std::string_view input,
                                   const Encoding& encoding,
                                   const hpkeet::PublicKey& pk,
                                   std::int64_t bound, Random& rng);

// Positions touched by the executor: T full left-to-right passes over
// [-B, B]. Depends on nothing but (B, T).
std::vector<std::int64_t> SweepSchedule(std::int64_t bound,
                                        std::uint64_t steps);

// Hooks for tests and the CLI's head-trace log.
struct RunObserver {
  std::function<void(std::int64_t position)> on_touch;
  // Every ciphertext the executor writes, state or cell.
  std::function<void(const hpkeet::Ciphertext&)> on_write;
};

struct Selection {
  bool halted = false;
  const ProgramEntry* entry = nullptr;  // null when halted
};

// Unblinds state and cell with the token, then performs one keyed table
// lookup. Throws StuckError-like ValidationError on a miss.
Selection SelectTransition(const BlindProgram& program,
                           const hpkeet::Token& token,
                           const hpkeet::Ciphertext& state,
                           const hpkeet::Ciphertext& cell,
                           std::uint64_t logical_step);

// Runs until logical_step == T(n). Throws FingerprintMismatch when program,
// token and configuration disagree, tm::MachineError on a lookup miss
// (naming only the logical step) or when the machine has not halted after
// T(n) steps or leaves [-B, B].
EncryptedConfiguration BlindRun(const BlindProgram& program,
                                const hpkeet::Token& token,
                                const EncryptedConfiguration& conf,
                                Random& rng,
                                const RunObserver* observer = nullptr);

// Decrypts and decodes every cell, strips surrounding blanks. Throws
// CryptoError on a cell that fails to decrypt or decode.
std::string DecryptTape(const hpkeet::SecretKey& sk, const Encoding& encoding,
                        const EncryptedConfiguration& conf);
tm::State DecryptState(const hpkeet::SecretKey& sk, const Encoding& encoding,
                       const EncryptedConfiguration& conf);

// Negative control: transitions by substitution. Entries carry absolute
// Enc(C(p)) and Enc(C(s')) that are copied verbatim onto the tape, so equal
// rules always leave equal bytes behind.
struct ReplacementEntry {
  hpkeet::Ciphertext next_state;
  hpkeet::Ciphertext write_symbol;
  tm::Move move = tm::Move::kStay;
};

struct ReplacementProgram {
  explicit ReplacementProgram(hpkeet::PublicKey key) : pk(std::move(key)) {}

  hpkeet::PublicKey pk;
  std::string encoding_id;
  std::uint32_t salt = 0;
  std::unordered_map<TableKey, ReplacementEntry, TableKeyHash> table;
  std::unordered_set<std::string> halt_commitments;
  tm::Polynomial time_bound;
  tm::Polynomial space_bound;

  // Byte images of every ciphertext in the table, in key order.
  std::vector<std::vector<std::uint8_t>> TableBytes() const;
};

ReplacementProgram CompileReplacing(const tm::TmSpec& spec,
                                    const Encoding& encoding,
                                    const hpkeet::PublicKey& pk, Random& rng);

struct LeakyTrace {
  // Byte images of state and cell writes, in execution order.
  std::vector<std::vector<std::uint8_t>> writes;
  EncryptedConfiguration final_configuration;
};

LeakyTrace LeakyRun(const ReplacementProgram& program,
                    const hpkeet::Token& token,
                    const EncryptedConfiguration& conf);

// What a token-less observer extracts from a write sequence: each write is
// labelled with the index of its first occurrence in `reference ++ writes`.
// Writes that match published table bytes get small labels; fresh
// ciphertexts get labels that only reflect their position.
std::vector<std::size_t> RepetitionFingerprint(
    const std::vector<std::vector<std::uint8_t>>& reference,
    const std::vector<std::vector<std::uint8_t>>& writes);

}  // namespace blindtm::blind

#endif  // BLINDTM_BLIND_H_
