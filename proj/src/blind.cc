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


#include "blindtm/blind.h"

#include <algorithm>
#include <cstring>
#include <set>

#include "blindtm/errors.h"
#include "blindtm/op_counter.h"

namespace blindtm::blind {

namespace {

constexpr int kMaxCodeAttempts = 1000;
constexpr std::uint32_t kMaxSalts = 16;

std::string RandomId(Random& rng) {
  std::array<std::uint8_t, 16> bytes;
  rng.Fill(bytes);
  return HexEncode(bytes);
}

std::string CommitmentKey(const GroupElement& commitment) {
  return ToHex(commitment.value());
}

}  // namespace

Encoding::Encoding(Group group, std::string id,
                   std::map<tm::State, Scalar> states,
                   std::map<tm::Symbol, Scalar> symbols, tm::State start,
                   tm::Symbol blank)
    : group_(std::move(group)),
      id_(std::move(id)),
      state_codes_(std::move(states)),
      symbol_codes_(std::move(symbols)),
      start_(std::move(start)),
      blank_(std::move(blank)) {
  std::set<mpz_class> seen;
  for (const auto& [name, code] : state_codes_) {
    if (!seen.insert(code.value()).second) {
      throw ValidationError("encoding is not injective");
    }
    decode_state_[CommitmentKey(group_.Commit(code))] = name;
  }
  for (const auto& [name, code] : symbol_codes_) {
    if (!seen.insert(code.value()).second) {
      throw ValidationError("encoding is not injective");
    }
    decode_symbol_[CommitmentKey(group_.Commit(code))] = name;
  }
  if (!state_codes_.contains(start_)) {
    throw ValidationError("encoding lacks the start state");
  }
  if (!symbol_codes_.contains(blank_)) {
    throw ValidationError("encoding lacks the blank symbol");
  }
}

Encoding Encoding::Make(const tm::TmSpec& spec, const Group& group,
                        Random& rng) {
  const std::size_t needed = spec.states.size() + spec.tape_alphabet.size();
  if (mpz_class(static_cast<unsigned long>(needed)) > group.q()) {
    throw ValidationError("group order too small for an injective encoding");
  }
  std::set<mpz_class> used;
  auto draw = [&]() {
    for (int i = 0; i < kMaxCodeAttempts; ++i) {
      Scalar s = group.RandomScalar(rng);
      if (used.insert(s.value()).second) return s;
    }
    throw ValidationError("group order too small for an injective encoding");
  };
  std::map<tm::State, Scalar> states;
  for (const tm::State& s : spec.states) states.emplace(s, draw());
  std::map<tm::Symbol, Scalar> symbols;
  for (const tm::Symbol& s : spec.tape_alphabet) symbols.emplace(s, draw());
  return Encoding(group, RandomId(rng), std::move(states), std::move(symbols),
                  spec.start, spec.blank);
}

Encoding Encoding::FromCodes(const Group& group, std::string id,
                             std::map<tm::State, Scalar> state_codes,
                             std::map<tm::Symbol, Scalar> symbol_codes,
                             tm::State start, tm::Symbol blank) {
  return Encoding(group, std::move(id), std::move(state_codes),
                  std::move(symbol_codes), std::move(start), std::move(blank));
}

const Scalar& Encoding::StateCode(const tm::State& state) const {
  auto it = state_codes_.find(state);
  if (it == state_codes_.end()) {
    throw ValidationError("state '" + state + "' is not encoded");
  }
  return it->second;
}

const Scalar& Encoding::SymbolCode(const tm::Symbol& symbol) const {
  auto it = symbol_codes_.find(symbol);
  if (it == symbol_codes_.end()) {
    throw ValidationError("symbol '" + symbol + "' is not encoded");
  }
  return it->second;
}

std::optional<tm::State> Encoding::DecodeState(
    const GroupElement& commitment) const {
  auto it = decode_state_.find(CommitmentKey(commitment));
  if (it == decode_state_.end()) return std::nullopt;
  return it->second;
}

std::optional<tm::Symbol> Encoding::DecodeSymbol(
    const GroupElement& commitment) const {
  auto it = decode_symbol_.find(CommitmentKey(commitment));
  if (it == decode_symbol_.end()) return std::nullopt;
  return it->second;
}

std::size_t TableKeyHash::operator()(const TableKey& k) const {
  std::size_t h;
  std::memcpy(&h, k.data(), sizeof(h));
  return h;
}

TableKey TransitionKey(const Group& group, std::uint32_t salt,
                       const GroupElement& state_commitment,
                       const GroupElement& symbol_commitment) {
  static constexpr char kTag[] = "blindtm/transition/";
  std::vector<std::uint8_t> input(kTag, kTag + sizeof(kTag) - 1);
  for (int i = 3; i >= 0; --i) {
    input.push_back(static_cast<std::uint8_t>(salt >> (8 * i)));
  }
  group.AppendFixedWidth(state_commitment, input);
  group.AppendFixedWidth(symbol_commitment, input);
  return Sha256(input);
}

namespace {

struct KeyedRule {
  const tm::RuleKey* key;
  const tm::Rule* rule;
  GroupElement state_commitment;
  GroupElement symbol_commitment;
};

// Commitments for every rule's left-hand side, and the first salt under
// which all table keys are distinct.
std::pair<std::vector<KeyedRule>, std::uint32_t> KeyRules(
    const tm::TmSpec& spec, const Encoding& encoding, const Group& group) {
  std::vector<KeyedRule> rules;
  for (const auto& [key, rule] : spec.delta) {
    rules.push_back({&key, &rule, group.Commit(encoding.StateCode(key.first)),
                     group.Commit(encoding.SymbolCode(key.second))});
  }
  for (std::uint32_t salt = 0; salt < kMaxSalts; ++salt) {
    std::set<TableKey> keys;
    bool distinct = true;
    for (const KeyedRule& r : rules) {
      distinct &= keys.insert(TransitionKey(group, salt, r.state_commitment,
                                            r.symbol_commitment))
                      .second;
    }
    if (distinct) return {std::move(rules), salt};
  }
  throw Error("transition keys collide under every salt");
}

std::unordered_set<std::string> HaltCommitments(const tm::TmSpec& spec,
                                                const Encoding& encoding,
                                                const Group& group) {
  std::unordered_set<std::string> out;
  for (const tm::State& h : spec.halt) {
    out.insert(CommitmentKey(group.Commit(encoding.StateCode(h))));
  }
  return out;
}

void CheckEncodingCovers(const tm::TmSpec& spec, const Encoding& encoding,
                         const hpkeet::PublicKey& pk) {
  if (encoding.group().fingerprint() != pk.group.fingerprint()) {
    throw FingerprintMismatch("encoding and public key use different groups");
  }
  for (const tm::State& s : spec.states) encoding.StateCode(s);
  for (const tm::Symbol& s : spec.tape_alphabet) encoding.SymbolCode(s);
}

}  // namespace

BlindProgram Compile(const tm::TmSpec& spec, const Encoding& encoding,
                     const hpkeet::PublicKey& pk, Random& rng) {
  spec.Validate();
  CheckEncodingCovers(spec, encoding, pk);
  const Group& group = pk.group;
  BlindProgram program{pk};
  program.encoding_id = encoding.id();
  auto [rules, salt] = KeyRules(spec, encoding, group);
  program.salt = salt;
  for (const KeyedRule& r : rules) {
    Scalar delta_state =
        group.Sub(encoding.StateCode(r.rule->next),
                  encoding.StateCode(r.key->first));
    Scalar delta_symbol =
        group.Sub(encoding.SymbolCode(r.rule->write),
                  encoding.SymbolCode(r.key->second));
    program.table.emplace(
        TransitionKey(group, salt, r.state_commitment, r.symbol_commitment),
        ProgramEntry{hpkeet::Encrypt(pk, delta_state, rng),
                     hpkeet::Encrypt(pk, delta_symbol, rng), r.rule->move});
  }
  program.enc_start = hpkeet::Encrypt(pk, encoding.StateCode(spec.start), rng);
  program.halt_commitments = HaltCommitments(spec, encoding, group);
  program.time_bound = spec.time_bound;
  program.space_bound = spec.space_bound;
  return program;
}

EncryptedConfiguration EncryptTape(std::string_view input,
                                   const Encoding& encoding,
                                   const hpkeet::PublicKey& pk,
                                   std::int64_t bound, Random& rng) {
  if (encoding.group().fingerprint() != pk.group.fingerprint()) {
    throw FingerprintMismatch("encoding and public key use different groups");
  }
  std::vector<tm::Symbol> symbols = tm::SplitSymbols(input);
  if (bound < 1) throw ValidationError("tape bound must be at least 1");
  if (static_cast<std::int64_t>(symbols.size()) > bound) {
    throw ValidationError("input longer than the tape bound");
  }
  for (const tm::Symbol& s : symbols) {
    if (s == encoding.blank() || !encoding.symbol_codes().contains(s)) {
      throw ValidationError("input symbol '" + s + "' is not in the alphabet");
    }
  }
  EncryptedConfiguration conf;
  conf.fingerprint = pk.group.fingerprint();
  conf.encoding_id = encoding.id();
  conf.input_length = symbols.size();
  conf.bound = bound;
  conf.head = 0;
  conf.logical_step = 0;
  conf.state = hpkeet::Encrypt(pk, encoding.StateCode(encoding.start()), rng);
  conf.cells.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (std::int64_t pos = -bound; pos <= bound; ++pos) {
    const tm::Symbol& s =
        pos >= 0 && pos < static_cast<std::int64_t>(symbols.size())
            ? symbols[static_cast<std::size_t>(pos)]
            : encoding.blank();
    conf.cells.push_back(hpkeet::Encrypt(pk, encoding.SymbolCode(s), rng));
  }
  return conf;
}

std::vector<std::int64_t> SweepSchedule(std::int64_t bound,
                                        std::uint64_t steps) {
  std::vector<std::int64_t> out;
  out.reserve(steps * static_cast<std::uint64_t>(2 * bound + 1));
  for (std::uint64_t t = 0; t < steps; ++t) {
    for (std::int64_t pos = -bound; pos <= bound; ++pos) out.push_back(pos);
  }
  return out;
}

namespace {

bool IsHaltCommitment(const std::unordered_set<std::string>& halts,
                      const GroupElement& commitment) {
  return halts.contains(CommitmentKey(commitment));
}

void CheckBinding(const std::string& program_fingerprint,
                  const std::string& program_encoding,
                  const hpkeet::Token& token,
                  const EncryptedConfiguration& conf) {
  if (token.group.fingerprint() != program_fingerprint) {
    throw FingerprintMismatch("token and program use different groups");
  }
  if (conf.fingerprint != program_fingerprint) {
    throw FingerprintMismatch("tape and program use different groups");
  }
  if (conf.encoding_id != program_encoding) {
    throw FingerprintMismatch("tape and program use different encodings");
  }
  if (conf.bound < 1 ||
      conf.cells.size() != static_cast<std::size_t>(2 * conf.bound + 1)) {
    throw ValidationError("tape does not cover [-B, B]");
  }
  if (conf.head < -conf.bound || conf.head > conf.bound) {
    throw ValidationError("head outside the tape");
  }
}

std::int64_t Moved(std::int64_t head, tm::Move move) {
  switch (move) {
    case tm::Move::kLeft:
      return head - 1;
    case tm::Move::kRight:
      return head + 1;
    case tm::Move::kStay:
      return head;
  }
  return head;
}

[[noreturn]] void ThrowMiss(std::uint64_t logical_step) {
  throw tm::MachineError("no transition applies at logical step " +
                         std::to_string(logical_step));
}

}  // namespace

Selection SelectTransition(const BlindProgram& program,
                           const hpkeet::Token& token,
                           const hpkeet::Ciphertext& state,
                           const hpkeet::Ciphertext& cell,
                           std::uint64_t logical_step) {
  GroupElement state_commitment = hpkeet::Unblind(token, state);
  GroupElement symbol_commitment = hpkeet::Unblind(token, cell);
  if (IsHaltCommitment(program.halt_commitments, state_commitment)) {
    return {true, nullptr};
  }
  op_counter_internal::CountTableLookup();
  auto it = program.table.find(TransitionKey(
      program.group(), program.salt, state_commitment, symbol_commitment));
  if (it == program.table.end()) ThrowMiss(logical_step);
  return {false, &it->second};
}

EncryptedConfiguration BlindRun(const BlindProgram& program,
                                const hpkeet::Token& token,
                                const EncryptedConfiguration& conf,
                                Random& rng, const RunObserver* observer) {
  CheckBinding(program.fingerprint(), program.encoding_id, token, conf);
  const Group& group = program.group();
  const hpkeet::PublicKey& pk = program.pk;
  const std::uint64_t total = program.time_bound.Evaluate(conf.input_length);

  auto touch = [&](std::int64_t pos) {
    if (observer && observer->on_touch) observer->on_touch(pos);
  };
  auto wrote = [&](const hpkeet::Ciphertext& c) {
    if (observer && observer->on_write) observer->on_write(c);
  };

  EncryptedConfiguration out = conf;
  while (out.logical_step < total) {
    const std::int64_t head = out.head;
    std::int64_t next_head = head;
    for (std::int64_t pos = -out.bound; pos <= out.bound; ++pos) {
      touch(pos);
      hpkeet::Ciphertext& cell = out.Cell(pos);
      if (pos != head) {
        cell = hpkeet::Rerandomize(pk, cell, rng);
        wrote(cell);
        continue;
      }
      Selection sel =
          SelectTransition(program, token, out.state, cell, out.logical_step);
      if (sel.halted) {
        out.state = hpkeet::Rerandomize(pk, out.state, rng);
        cell = hpkeet::Rerandomize(pk, cell, rng);
      } else {
        out.state = hpkeet::Rerandomize(
            pk, hpkeet::HomAdd(group, out.state, sel.entry->delta_state), rng);
        cell = hpkeet::Rerandomize(
            pk, hpkeet::HomAdd(group, cell, sel.entry->delta_symbol), rng);
        next_head = Moved(head, sel.entry->move);
      }
      wrote(out.state);
      wrote(cell);
    }
    if (next_head < -out.bound || next_head > out.bound) {
      throw tm::MachineError("head left [-B, B] at logical step " +
                             std::to_string(out.logical_step));
    }
    out.head = next_head;
    ++out.logical_step;
  }
  if (!IsHaltCommitment(program.halt_commitments,
                        hpkeet::Unblind(token, out.state))) {
    throw tm::MachineError("machine did not halt within T(n) = " +
                           std::to_string(total) + " steps");
  }
  return out;
}

std::string DecryptTape(const hpkeet::SecretKey& sk, const Encoding& encoding,
                        const EncryptedConfiguration& conf) {
  if (sk.group.fingerprint() != conf.fingerprint) {
    throw FingerprintMismatch("key and tape use different groups");
  }
  if (encoding.id() != conf.encoding_id) {
    throw FingerprintMismatch("encoding and tape do not belong together");
  }
  std::vector<tm::Symbol> symbols;
  symbols.reserve(conf.cells.size());
  for (std::size_t i = 0; i < conf.cells.size(); ++i) {
    const std::int64_t pos = static_cast<std::int64_t>(i) - conf.bound;
    auto commitment = hpkeet::Decrypt(sk, conf.cells[i]);
    if (!commitment) {
      throw CryptoError("tape cell " + std::to_string(pos) +
                        " does not decrypt");
    }
    auto symbol = encoding.DecodeSymbol(*commitment);
    if (!symbol) {
      throw CryptoError("tape cell " + std::to_string(pos) +
                        " decrypts outside the symbol table");
    }
    symbols.push_back(std::move(*symbol));
  }
  auto first = std::find_if(symbols.begin(), symbols.end(), [&](const auto& s) {
    return s != encoding.blank();
  });
  auto last = std::find_if(symbols.rbegin(), symbols.rend(), [&](const auto& s) {
                return s != encoding.blank();
              }).base();
  std::string out;
  for (auto it = first; it < last; ++it) out += *it;
  return out;
}

tm::State DecryptState(const hpkeet::SecretKey& sk, const Encoding& encoding,
                       const EncryptedConfiguration& conf) {
  auto commitment = hpkeet::Decrypt(sk, conf.state);
  if (!commitment) throw CryptoError("state does not decrypt");
  auto state = encoding.DecodeState(*commitment);
  if (!state) throw CryptoError("state decrypts outside the state table");
  return *state;
}

ReplacementProgram CompileReplacing(const tm::TmSpec& spec,
                                    const Encoding& encoding,
                                    const hpkeet::PublicKey& pk, Random& rng) {
  spec.Validate();
  CheckEncodingCovers(spec, encoding, pk);
  const Group& group = pk.group;
  ReplacementProgram program{pk};
  program.encoding_id = encoding.id();
  auto [rules, salt] = KeyRules(spec, encoding, group);
  program.salt = salt;
  for (const KeyedRule& r : rules) {
    program.table.emplace(
        TransitionKey(group, salt, r.state_commitment, r.symbol_commitment),
        ReplacementEntry{
            hpkeet::Encrypt(pk, encoding.StateCode(r.rule->next), rng),
            hpkeet::Encrypt(pk, encoding.SymbolCode(r.rule->write), rng),
            r.rule->move});
  }
  program.halt_commitments = HaltCommitments(spec, encoding, group);
  program.time_bound = spec.time_bound;
  program.space_bound = spec.space_bound;
  return program;
}

std::vector<std::vector<std::uint8_t>> ReplacementProgram::TableBytes() const {
  std::vector<const std::pair<const TableKey, ReplacementEntry>*> sorted;
  for (const auto& kv : table) sorted.push_back(&kv);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->first < b->first; });
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto* kv : sorted) {
    out.push_back(hpkeet::ToBytes(pk.group, kv->second.next_state));
    out.push_back(hpkeet::ToBytes(pk.group, kv->second.write_symbol));
  }
  return out;
}

LeakyTrace LeakyRun(const ReplacementProgram& program,
                    const hpkeet::Token& token,
                    const EncryptedConfiguration& conf) {
  CheckBinding(program.pk.group.fingerprint(), program.encoding_id, token,
               conf);
  const Group& group = program.pk.group;
  const std::uint64_t total = program.time_bound.Evaluate(conf.input_length);
  LeakyTrace trace;
  EncryptedConfiguration& out = trace.final_configuration;
  out = conf;
  while (out.logical_step < total) {
    hpkeet::Ciphertext& cell = out.Cell(out.head);
    GroupElement state_commitment = hpkeet::Unblind(token, out.state);
    if (!IsHaltCommitment(program.halt_commitments, state_commitment)) {
      GroupElement symbol_commitment = hpkeet::Unblind(token, cell);
      op_counter_internal::CountTableLookup();
      auto it = program.table.find(TransitionKey(
          group, program.salt, state_commitment, symbol_commitment));
      if (it == program.table.end()) ThrowMiss(out.logical_step);
      out.state = it->second.next_state;
      cell = it->second.write_symbol;
      trace.writes.push_back(hpkeet::ToBytes(group, out.state));
      trace.writes.push_back(hpkeet::ToBytes(group, cell));
      const std::int64_t next = Moved(out.head, it->second.move);
      if (next < -out.bound || next > out.bound) {
        throw tm::MachineError("head left [-B, B] at logical step " +
                               std::to_string(out.logical_step));
      }
      out.head = next;
    }
    ++out.logical_step;
  }
  return trace;
}

std::vector<std::size_t> RepetitionFingerprint(
    const std::vector<std::vector<std::uint8_t>>& reference,
    const std::vector<std::vector<std::uint8_t>>& writes) {
  std::map<std::vector<std::uint8_t>, std::size_t> first;
  std::size_t next_label = 0;
  for (const auto& r : reference) first.try_emplace(r, next_label++);
  std::vector<std::size_t> out;
  out.reserve(writes.size());
  for (const auto& w : writes) {
    auto [it, inserted] = first.try_emplace(w, next_label);
    if (inserted) ++next_label;
    out.push_back(it->second);
  }
  return out;
}

}  // namespace blindtm::blind
