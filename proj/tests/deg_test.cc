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


#include "blindtm/deg.h"

#include <gtest/gtest.h>

#include "blindtm/op_counter.h"
#include "oracle/toy_oracle.h"
#include "test_util.h"

namespace blindtm::deg {
namespace {

using testing::TestGroup;
using testing::ToyGroup;

TEST(DegTest, ToyKeysMatchOracle) {
  const Group& g = ToyGroup();
  KeyPair kp = KeypairFromSecrets(g, g.MakeScalar(3), g.MakeScalar(5));
  EXPECT_EQ(kp.pk.y1.value(), oracle::SlowPow(2, 3, 23));
  EXPECT_EQ(kp.pk.y2.value(), oracle::SlowPow(2, 5, 23));
  EXPECT_EQ(kp.pk.y1.value(), 8);
  EXPECT_EQ(kp.pk.y2.value(), 9);
}

TEST(DegTest, ToyEncryptionMatchesOracle) {
  const Group& g = ToyGroup();
  KeyPair kp = KeypairFromSecrets(g, g.MakeScalar(3), g.MakeScalar(5));
  Ciphertext c =
      EncryptWithRandomness(g, kp.pk, g.Element(9), g.MakeScalar(2));
  oracle::ToyDegCiphertext want = oracle::ToyDegEncrypt(23, 2, 3, 5, 2, 9);
  EXPECT_EQ(c.u.value(), want.u);
  EXPECT_EQ(c.v.value(), want.v);
  EXPECT_EQ(c.w.value(), want.w);
  EXPECT_EQ(Decrypt(g, kp.sk, c).message.value(), 9);
}

TEST(DegTest, ToyExhaustiveRoundTripAndHomomorphism) {
  const Group& g = ToyGroup();
  KeyPair kp = KeypairFromSecrets(g, g.MakeScalar(3), g.MakeScalar(5));
  std::vector<std::uint64_t> members = oracle::SubgroupMembers(23, 11);
  for (std::uint64_t m : members) {
    for (std::int64_t r = 0; r < 11; ++r) {
      Ciphertext c =
          EncryptWithRandomness(g, kp.pk, g.Element(m), g.MakeScalar(r));
      DecryptResult d = Decrypt(g, kp.sk, c);
      ASSERT_TRUE(d.ok());
      EXPECT_EQ(d.message.value(), m);
    }
  }
  Random rng = Random::FromSeed(1);
  for (std::uint64_t a : members) {
    for (std::uint64_t b : members) {
      Ciphertext prod = HomMul(g, Encrypt(g, kp.pk, g.Element(a), rng),
                               Encrypt(g, kp.pk, g.Element(b), rng));
      EXPECT_EQ(Decrypt(g, kp.sk, prod).message.value(),
                oracle::MulMod(a, b, 23));
    }
  }
  // Exponent view: E(g^2) * E(g^3) opens to g^5.
  Ciphertext sum =
      HomMul(g, Encrypt(g, kp.pk, g.Commit(g.MakeScalar(2)), rng),
             Encrypt(g, kp.pk, g.Commit(g.MakeScalar(3)), rng));
  EXPECT_EQ(Decrypt(g, kp.sk, sum).message.value(),
            oracle::SlowPow(2, 5, 23));
}

TEST(DegTest, KeygenProducesDistinctConsistentKeys) {
  const Group& g = TestGroup(96);
  Random rng = Random::FromSeed(2);
  KeyPair a = Keygen(g, rng);
  KeyPair b = Keygen(g, rng);
  EXPECT_EQ(g.Commit(a.sk.x1), a.pk.y1);
  EXPECT_EQ(g.Commit(a.sk.x2), a.pk.y2);
  EXPECT_NE(a.sk.x1, a.sk.x2);
  EXPECT_NE(a.sk.x1, b.sk.x1);
}

TEST(DegTest, RandomRoundTripsAndProducts) {
  const Group& g = TestGroup(96);
  Random rng = Random::FromSeed(3);
  KeyPair kp = Keygen(g, rng);
  for (int i = 0; i < 500; ++i) {
    GroupElement m1 = g.Commit(g.RandomScalar(rng));
    GroupElement m2 = g.Commit(g.RandomScalar(rng));
    Ciphertext c1 = Encrypt(g, kp.pk, m1, rng);
    Ciphertext c2 = Encrypt(g, kp.pk, m2, rng);
    ASSERT_EQ(DecryptOrNone(g, kp.sk, c1), m1);
    ASSERT_EQ(DecryptOrNone(g, kp.sk, HomMul(g, c1, c2)), g.Mul(m1, m2));
  }
}

TEST(DegTest, EncryptionIsProbabilisticAndRerandomizationPreserves) {
  const Group& g = TestGroup(96);
  Random rng = Random::FromSeed(4);
  KeyPair kp = Keygen(g, rng);
  GroupElement m = g.Commit(g.MakeScalar(7));
  Ciphertext a = Encrypt(g, kp.pk, m, rng);
  EXPECT_NE(a, Encrypt(g, kp.pk, m, rng));
  Ciphertext b = Rerandomize(g, kp.pk, a, rng);
  EXPECT_NE(a.u, b.u);
  EXPECT_NE(a.v, b.v);
  EXPECT_NE(a.w, b.w);
  EXPECT_EQ(DecryptOrNone(g, kp.sk, b), m);
}

TEST(DegTest, TagCheckRejectsTamperedUOrV) {
  const Group& g = TestGroup(96);
  Random rng = Random::FromSeed(5);
  KeyPair kp = Keygen(g, rng);
  GroupElement m = g.Commit(g.MakeScalar(11));
  for (int i = 0; i < 50; ++i) {
    Ciphertext c = Encrypt(g, kp.pk, m, rng);
    Ciphertext tv = c;
    tv.v = g.Mul(tv.v, g.g());
    EXPECT_EQ(Decrypt(g, kp.sk, tv).status, DecryptStatus::kInvalidTag);
    Ciphertext tu = c;
    tu.u = g.Mul(tu.u, g.g());
    EXPECT_EQ(Decrypt(g, kp.sk, tu).status, DecryptStatus::kInvalidTag);
    // w carries no tag: tampering it is malleability, not an error.
    Ciphertext tw = c;
    tw.w = g.Mul(tw.w, g.g());
    DecryptResult d = Decrypt(g, kp.sk, tw);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(d.message, g.Mul(m, g.g()));
  }
}

TEST(DegTest, CountsOneBaseOperationPerCall) {
  const Group& g = TestGroup(64);
  Random rng = Random::FromSeed(6);
  OpCountWindow kg;
  KeyPair kp = Keygen(g, rng);
  OpCounts expected_kg;
  expected_kg.base_keygen = 1;
  EXPECT_EQ(kg.Delta(), expected_kg);
  GroupElement m = g.Commit(g.MakeScalar(1));
  OpCountWindow enc;
  Ciphertext c = Encrypt(g, kp.pk, m, rng);
  OpCounts expected_enc;
  expected_enc.base_encrypt = 1;
  EXPECT_EQ(enc.Delta(), expected_enc);
  OpCountWindow dec;
  Decrypt(g, kp.sk, c);
  OpCounts expected_dec;
  expected_dec.base_decrypt = 1;
  EXPECT_EQ(dec.Delta(), expected_dec);
  OpCountWindow mul;
  HomMul(g, c, c);
  OpCounts expected_mul;
  expected_mul.mul = 1;
  EXPECT_EQ(mul.Delta(), expected_mul);
}

}  // namespace
}  // namespace blindtm::deg
