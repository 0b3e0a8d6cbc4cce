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

#include <gtest/gtest.h>

#include <set>

#include "blindtm/errors.h"
#include "blindtm/op_counter.h"
#include "test_util.h"

namespace blindtm::blind {
namespace {

using testing::Machine;
using testing::TestGroup;

class BlindTest : public ::testing::Test {
 protected:
  BlindTest()
      : group_(TestGroup(96)),
        rng_(Random::FromSeed(31)),
        keys_(hpkeet::Keygen(group_, rng_)),
        token_(hpkeet::Authorize(keys_.sk)) {}

  struct Compiled {
    tm::TmSpec spec;
    Encoding encoding;
    BlindProgram program;
  };

  Compiled CompileMachine(const std::string& name) {
    tm::TmSpec spec = Machine(name);
    Encoding encoding = Encoding::Make(spec, group_, rng_);
    BlindProgram program = Compile(spec, encoding, keys_.pk, rng_);
    return {std::move(spec), std::move(encoding), std::move(program)};
  }

  EncryptedConfiguration Tape(const Compiled& c, const std::string& input) {
    std::int64_t bound =
        static_cast<std::int64_t>(c.spec.space_bound.Evaluate(input.size()));
    return EncryptTape(input, c.encoding, keys_.pk, bound, rng_);
  }

  Group group_;
  Random rng_;
  hpkeet::Keys keys_;
  hpkeet::Token token_;
};

TEST_F(BlindTest, EncodingIsInjectiveAndDecodes) {
  tm::TmSpec spec = Machine("unary_add");
  Encoding e = Encoding::Make(spec, group_, rng_);
  std::set<GroupElement, bool (*)(const GroupElement&, const GroupElement&)>
      commitments([](const GroupElement& a, const GroupElement& b) {
        return a.value() < b.value();
      });
  for (const auto& [name, code] : e.state_codes()) {
    commitments.insert(group_.Commit(code));
    EXPECT_EQ(e.DecodeState(group_.Commit(code)), name);
  }
  for (const auto& [name, code] : e.symbol_codes()) {
    commitments.insert(group_.Commit(code));
    EXPECT_EQ(e.DecodeSymbol(group_.Commit(code)), name);
  }
  EXPECT_EQ(commitments.size(),
            spec.states.size() + spec.tape_alphabet.size());
  EXPECT_FALSE(e.DecodeSymbol(group_.Commit(e.StateCode(spec.start))));
}

TEST_F(BlindTest, IndependentEncodingsShareNoCodes) {
  tm::TmSpec spec = Machine("increment");
  for (int i = 0; i < 100; ++i) {
    Encoding a = Encoding::Make(spec, group_, rng_);
    Encoding b = Encoding::Make(spec, group_, rng_);
    std::set<mpz_class> codes;
    for (const auto& [n, c] : a.state_codes()) codes.insert(c.value());
    for (const auto& [n, c] : a.symbol_codes()) codes.insert(c.value());
    for (const auto& [n, c] : b.state_codes()) {
      ASSERT_FALSE(codes.contains(c.value()));
    }
    for (const auto& [n, c] : b.symbol_codes()) {
      ASSERT_FALSE(codes.contains(c.value()));
    }
  }
}

TEST_F(BlindTest, EncodingNeedsRoomInTheGroup) {
  // Nine states and three symbols need twelve codes; Z_11 has eleven.
  tm::TmSpec spec = tm::ParseTm(
      "#states a b c d e f g h i\n#start a\n#halt i\n#alphabet 0 1 _\n"
      "#input 0 1\n#time 1\n#space 1 1\na 0 -> i 0 S\n");
  EXPECT_THROW(Encoding::Make(spec, testing::ToyGroup(), rng_),
               ValidationError);
}

TEST_F(BlindTest, CompiledTableMatchesRules) {
  Compiled c = CompileMachine("increment");
  EXPECT_EQ(c.program.table.size(), c.spec.delta.size());
  for (const auto& [key, rule] : c.spec.delta) {
    const Scalar& q = c.encoding.StateCode(key.first);
    const Scalar& s = c.encoding.SymbolCode(key.second);
    auto it = c.program.table.find(TransitionKey(
        group_, c.program.salt, group_.Commit(q), group_.Commit(s)));
    ASSERT_NE(it, c.program.table.end());
    const ProgramEntry& entry = it->second;
    EXPECT_EQ(hpkeet::Decrypt(keys_.sk, entry.delta_state),
              group_.Commit(group_.Sub(c.encoding.StateCode(rule.next), q)));
    EXPECT_EQ(entry.move, rule.move);
    // Applying the deltas lands on the next state and the written symbol.
    hpkeet::Ciphertext state = hpkeet::Encrypt(keys_.pk, q, rng_);
    hpkeet::Ciphertext cell = hpkeet::Encrypt(keys_.pk, s, rng_);
    EXPECT_EQ(hpkeet::Decrypt(keys_.sk,
                              hpkeet::HomAdd(group_, state, entry.delta_state)),
              group_.Commit(c.encoding.StateCode(rule.next)));
    EXPECT_EQ(hpkeet::Decrypt(keys_.sk,
                              hpkeet::HomAdd(group_, cell, entry.delta_symbol)),
              group_.Commit(c.encoding.SymbolCode(rule.write)));
  }
}

TEST_F(BlindTest, SelfLoopRuleHasZeroStateDelta) {
  Compiled c = CompileMachine("increment");
  for (const auto& [key, rule] : c.spec.delta) {
    if (rule.next != key.first) continue;
    Selection sel = SelectTransition(
        c.program, token_,
        hpkeet::Encrypt(keys_.pk, c.encoding.StateCode(key.first), rng_),
        hpkeet::Encrypt(keys_.pk, c.encoding.SymbolCode(key.second), rng_), 0);
    ASSERT_FALSE(sel.halted);
    EXPECT_EQ(hpkeet::Decrypt(keys_.sk, sel.entry->delta_state),
              group_.Identity());
  }
}

TEST_F(BlindTest, EncryptTapeLayout) {
  Compiled c = CompileMachine("increment");
  EncryptedConfiguration conf =
      EncryptTape("10", c.encoding, keys_.pk, 4, rng_);
  EXPECT_EQ(conf.cells.size(), 9u);
  EXPECT_EQ(conf.head, 0);
  EXPECT_EQ(conf.input_length, 2u);
  EXPECT_EQ(DecryptTape(keys_.sk, c.encoding, conf), "10");
  EXPECT_EQ(DecryptState(keys_.sk, c.encoding, conf), "scan");
  EncryptedConfiguration again =
      EncryptTape("10", c.encoding, keys_.pk, 4, rng_);
  for (std::size_t i = 0; i < conf.cells.size(); ++i) {
    EXPECT_NE(hpkeet::ToBytes(group_, conf.cells[i]),
              hpkeet::ToBytes(group_, again.cells[i]));
  }
  EXPECT_THROW(EncryptTape("10101", c.encoding, keys_.pk, 4, rng_),
               ValidationError);
  EXPECT_THROW(EncryptTape("12", c.encoding, keys_.pk, 4, rng_),
               ValidationError);
}

TEST_F(BlindTest, SweepScheduleDependsOnlyOnShape) {
  std::vector<std::int64_t> s = SweepSchedule(2, 3);
  EXPECT_EQ(s.size(), 15u);
  EXPECT_EQ(s, SweepSchedule(2, 3));
  EXPECT_EQ(s.front(), -2);
  EXPECT_EQ(s[4], 2);
  EXPECT_EQ(s[5], -2);
}

TEST_F(BlindTest, IncrementPipeline) {
  Compiled c = CompileMachine("increment");
  EncryptedConfiguration conf = Tape(c, "111");
  EncryptedConfiguration out = BlindRun(c.program, token_, conf, rng_);
  EXPECT_EQ(DecryptTape(keys_.sk, c.encoding, out), "1000");
  EXPECT_EQ(DecryptState(keys_.sk, c.encoding, out), "done");
  EXPECT_EQ(out.logical_step, c.spec.time_bound.Evaluate(3));
}

TEST_F(BlindTest, TouchSequenceIndependentOfContent) {
  Compiled c = CompileMachine("increment");
  std::vector<std::vector<std::int64_t>> traces;
  for (const char* w : {"10", "01", "11", "00"}) {
    std::vector<std::int64_t> touches;
    RunObserver obs;
    obs.on_touch = [&](std::int64_t p) { touches.push_back(p); };
    EncryptedConfiguration out = BlindRun(c.program, token_, Tape(c, w), rng_,
                                          &obs);
    EXPECT_EQ(out.logical_step, c.spec.time_bound.Evaluate(2)) << w;
    traces.push_back(std::move(touches));
  }
  for (const auto& t : traces) EXPECT_EQ(t, traces.front());
  std::int64_t bound =
      static_cast<std::int64_t>(c.spec.space_bound.Evaluate(2));
  EXPECT_EQ(traces.front(),
            SweepSchedule(bound, c.spec.time_bound.Evaluate(2)));
}

TEST_F(BlindTest, EveryWriteIsFresh) {
  Compiled c = CompileMachine("parity");
  EncryptedConfiguration conf = Tape(c, "1011");
  std::set<std::vector<std::uint8_t>> seen;
  std::size_t collisions = 0;
  auto record = [&](const hpkeet::Ciphertext& x) {
    if (!seen.insert(hpkeet::ToBytes(group_, x)).second) ++collisions;
  };
  record(conf.state);
  for (const auto& cell : conf.cells) record(cell);
  RunObserver obs;
  obs.on_write = record;
  BlindRun(c.program, token_, conf, rng_, &obs);
  EXPECT_EQ(collisions, 0u);
  EXPECT_GT(seen.size(), conf.cells.size() * 5);
}

TEST_F(BlindTest, StuckMachineNamesOnlyTheStep) {
  tm::TmSpec spec = tm::ParseTm(
      "#start a\n#halt h\n#alphabet 0 1 _\n#input 0 1\n#time 1 2\n#space 1 1\n"
      "a 1 -> a 1 R\na _ -> h _ S\n");
  Encoding encoding = Encoding::Make(spec, group_, rng_);
  BlindProgram program = Compile(spec, encoding, keys_.pk, rng_);
  EncryptedConfiguration conf =
      EncryptTape("10", encoding, keys_.pk, 3, rng_);
  try {
    BlindRun(program, token_, conf, rng_);
    FAIL() << "expected a stuck machine";
  } catch (const tm::MachineError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("logical step 1"), std::string::npos) << msg;
    EXPECT_EQ(msg.find("'0'"), std::string::npos) << msg;
  }
}

TEST_F(BlindTest, NonHaltingWithinBoundIsAnError) {
  tm::TmSpec spec = Machine("increment");
  spec.time_bound = tm::Polynomial({1});
  Encoding encoding = Encoding::Make(spec, group_, rng_);
  BlindProgram program = Compile(spec, encoding, keys_.pk, rng_);
  EncryptedConfiguration conf =
      EncryptTape("11", encoding, keys_.pk, 4, rng_);
  EXPECT_THROW(BlindRun(program, token_, conf, rng_), tm::MachineError);
}

TEST_F(BlindTest, MismatchedArtifactsRejected) {
  Compiled c = CompileMachine("parity");
  Compiled other = CompileMachine("parity");
  EncryptedConfiguration conf = Tape(other, "1");
  EXPECT_THROW(BlindRun(c.program, token_, conf, rng_), FingerprintMismatch);
  Random r2 = Random::FromSeed(2);
  hpkeet::Keys foreign = hpkeet::Keygen(TestGroup(64), r2);
  EXPECT_THROW(
      BlindRun(c.program, hpkeet::Authorize(foreign.sk), Tape(c, "1"), rng_),
      FingerprintMismatch);
  EXPECT_THROW(DecryptTape(keys_.sk, other.encoding, Tape(c, "1")),
               FingerprintMismatch);
}

TEST_F(BlindTest, TamperedCellIsCorruption) {
  Compiled c = CompileMachine("parity");
  EncryptedConfiguration conf = Tape(c, "11");
  conf.Cell(1).c2 = group_.Mul(conf.Cell(1).c2, group_.g());
  EXPECT_THROW(DecryptTape(keys_.sk, c.encoding, conf), CryptoError);
  EncryptedConfiguration foreign = Tape(c, "11");
  foreign.Cell(0) = hpkeet::Encrypt(keys_.pk, group_.MakeScalar(12345), rng_);
  EXPECT_THROW(DecryptTape(keys_.sk, c.encoding, foreign), CryptoError);
}

TEST_F(BlindTest, SelectionCountsTwoUnblindsAndOneLookup) {
  Compiled c = CompileMachine("parity");
  EncryptedConfiguration conf = Tape(c, "1");
  OpCountWindow w;
  Selection sel = SelectTransition(c.program, token_, conf.state,
                                   conf.Cell(0), 0);
  OpCounts d = w.Delta();
  ASSERT_FALSE(sel.halted);
  EXPECT_EQ(d.base_decrypt, 2u);
  EXPECT_EQ(d.exp, 2u);
  EXPECT_EQ(d.inv, 2u);
  EXPECT_EQ(d.mul, 2u);
  EXPECT_EQ(d.table_lookups, 1u);
  EXPECT_EQ(d.table_scans, 0u);
}

TEST_F(BlindTest, ReplacementTraceCopiesTableBytes) {
  tm::TmSpec spec = Machine("single_step");
  Encoding encoding = Encoding::Make(spec, group_, rng_);
  ReplacementProgram program = CompileReplacing(spec, encoding, keys_.pk, rng_);
  EncryptedConfiguration conf =
      EncryptTape("0", encoding, keys_.pk, 1, rng_);
  LeakyTrace trace = LeakyRun(program, token_, conf);
  std::vector<std::vector<std::uint8_t>> table = program.TableBytes();
  ASSERT_EQ(trace.writes.size(), 2u);
  for (const auto& w : trace.writes) {
    EXPECT_NE(std::find(table.begin(), table.end(), w), table.end());
  }
  EXPECT_EQ(DecryptTape(keys_.sk, encoding, trace.final_configuration), "1");
}

TEST_F(BlindTest, RepetitionFingerprintSeparatesLeakyButNotBlindRuns) {
  tm::TmSpec spec = Machine("parity");
  Encoding encoding = Encoding::Make(spec, group_, rng_);
  ReplacementProgram leaky = CompileReplacing(spec, encoding, keys_.pk, rng_);
  BlindProgram program = Compile(spec, encoding, keys_.pk, rng_);
  auto reference = leaky.TableBytes();
  auto leaky_print = [&](const std::string& w) {
    EncryptedConfiguration conf = EncryptTape(w, encoding, keys_.pk, 3, rng_);
    return RepetitionFingerprint(reference, LeakyRun(leaky, token_, conf).writes);
  };
  auto blind_print = [&](const std::string& w) {
    EncryptedConfiguration conf = EncryptTape(w, encoding, keys_.pk, 3, rng_);
    std::vector<std::vector<std::uint8_t>> writes;
    RunObserver obs;
    obs.on_write = [&](const hpkeet::Ciphertext& x) {
      writes.push_back(hpkeet::ToBytes(group_, x));
    };
    BlindRun(program, token_, conf, rng_, &obs);
    return RepetitionFingerprint(reference, writes);
  };
  EXPECT_NE(leaky_print("01"), leaky_print("10"));
  EXPECT_EQ(blind_print("01"), blind_print("10"));
}

TEST(RepetitionFingerprintTest, LabelsFirstOccurrence) {
  std::vector<std::vector<std::uint8_t>> ref = {{1}, {2}};
  std::vector<std::vector<std::uint8_t>> writes = {{2}, {3}, {3}, {1}, {4}};
  EXPECT_EQ(RepetitionFingerprint(ref, writes),
            (std::vector<std::size_t>{1, 2, 2, 0, 3}));
}

}  // namespace
}  // namespace blindtm::blind
