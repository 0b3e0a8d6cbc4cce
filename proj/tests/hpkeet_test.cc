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


#include "blindtm/hpkeet.h"

#include <gtest/gtest.h>

#include <cmath>

#include "blindtm/errors.h"
#include "blindtm/op_counter.h"
#include "oracle/toy_oracle.h"
#include "test_util.h"

namespace blindtm::hpkeet {
namespace {

using testing::TestGroup;
using testing::ToyGroup;

class HpkeetTest : public ::testing::Test {
 protected:
  HpkeetTest()
      : group_(TestGroup(96)),
        rng_(Random::FromSeed(11)),
        keys_(Keygen(group_, rng_)),
        token_(Authorize(keys_.sk)) {}

  Ciphertext Enc(std::int64_t m) {
    return Encrypt(keys_.pk, group_.MakeScalar(m), rng_);
  }

  Group group_;
  Random rng_;
  Keys keys_;
  Token token_;
};

TEST(HpkeetToyTest, BlindedCommitmentMatchesOracle) {
  const Group& g = ToyGroup();
  Keys keys = KeysFromSecrets(
      g, deg::KeypairFromSecrets(g, g.MakeScalar(3), g.MakeScalar(5)).sk,
      deg::KeypairFromSecrets(g, g.MakeScalar(4), g.MakeScalar(7)).sk);
  Random rng = Random::FromSeed(1);
  Ciphertext c =
      EncryptWithRandomness(keys.pk, g.MakeScalar(5), g.MakeScalar(2), rng);
  std::uint64_t h = g.h().value().get_ui();
  EXPECT_EQ(c.c2.value(), oracle::MulMod(oracle::SlowPow(2, 5, 23),
                                         oracle::SlowPow(h, 2, 23), 23));
  EXPECT_EQ(Decrypt(keys.sk, c)->value(), oracle::SlowPow(2, 5, 23));
  EXPECT_EQ(Unblind(Authorize(keys.sk), c).value(), oracle::SlowPow(2, 5, 23));
}

TEST_F(HpkeetTest, KeyHalvesAreIndependentPairs) {
  EXPECT_NE(keys_.sk.sk1.x1, keys_.sk.sk2.x1);
  EXPECT_EQ(group_.Commit(keys_.sk.sk1.x1), keys_.pk.pk1.y1);
  EXPECT_EQ(group_.Commit(keys_.sk.sk2.x2), keys_.pk.pk2.y2);
  EXPECT_EQ(token_.sk2, keys_.sk.sk2);
}

TEST_F(HpkeetTest, RoundTrip) {
  for (int i = 0; i < 500; ++i) {
    Scalar m = group_.RandomScalar(rng_);
    ASSERT_EQ(Decrypt(keys_.sk, Encrypt(keys_.pk, m, rng_)),
              group_.Commit(m));
  }
}

TEST_F(HpkeetTest, TokenOpensC3ButNotC1) {
  int c1_rejected = 0;
  for (int i = 0; i < 100; ++i) {
    Ciphertext c = Enc(i);
    EXPECT_TRUE(deg::Decrypt(group_, token_.sk2, c.c3).ok());
    if (!deg::Decrypt(group_, token_.sk2, c.c1).ok()) ++c1_rejected;
  }
  EXPECT_EQ(c1_rejected, 100);
}

TEST_F(HpkeetTest, DecryptRejectsTamperingAndSplicing) {
  Ciphertext c = Enc(5);
  Ciphertext bad = c;
  bad.c2 = group_.Mul(bad.c2, group_.g());
  EXPECT_FALSE(Decrypt(keys_.sk, bad).has_value());
  for (int i = 0; i < 100; ++i) {
    Ciphertext a = Enc(i);
    Ciphertext b = Enc(i + 1000);
    Ciphertext spliced{a.c1, b.c2, b.c3};
    EXPECT_FALSE(Decrypt(keys_.sk, spliced).has_value());
  }
}

TEST_F(HpkeetTest, CompareSemantics) {
  Ciphertext five = Enc(5);
  EXPECT_TRUE(Compare(token_, five, Enc(5)));
  EXPECT_FALSE(Compare(token_, five, Enc(7)));
  EXPECT_TRUE(Compare(token_, five, five));
  for (int i = 0; i < 200; ++i) {
    Scalar m1 = group_.RandomScalar(rng_);
    Scalar m2 = group_.Add(m1, group_.MakeScalar(1 + i));
    EXPECT_FALSE(Compare(token_, Encrypt(keys_.pk, m1, rng_),
                         Encrypt(keys_.pk, m2, rng_)));
  }
}

TEST_F(HpkeetTest, CompareErrorIsNotFalse) {
  Ciphertext a = Enc(1);
  Ciphertext broken = a;
  broken.c3.v = group_.Mul(broken.c3.v, group_.g());
  EXPECT_THROW(Compare(token_, a, broken), CryptoError);
  EXPECT_THROW(Unblind(token_, broken), CryptoError);
}

TEST_F(HpkeetTest, HomomorphicAddition) {
  EXPECT_EQ(Decrypt(keys_.sk, HomAdd(group_, Enc(2), Enc(3))),
            group_.Commit(group_.MakeScalar(5)));
  Ciphertext c = Enc(42);
  EXPECT_EQ(Decrypt(keys_.sk, HomAdd(group_, c, Enc(0))),
            Decrypt(keys_.sk, c));
  Scalar top = group_.MakeScalar(group_.q() - 1);
  Ciphertext wrap = HomAdd(group_, Encrypt(keys_.pk, top, rng_), Enc(2));
  EXPECT_EQ(Decrypt(keys_.sk, wrap), group_.g());
  Ciphertext a = Enc(10), b = Enc(20), d = Enc(30);
  EXPECT_EQ(Decrypt(keys_.sk, HomAdd(group_, a, b)),
            Decrypt(keys_.sk, HomAdd(group_, b, a)));
  EXPECT_EQ(Decrypt(keys_.sk, HomAdd(group_, HomAdd(group_, a, b), d)),
            Decrypt(keys_.sk, HomAdd(group_, a, HomAdd(group_, b, d))));
}

TEST_F(HpkeetTest, RerandomizationPreservesPlaintextAndChangesBytes) {
  Ciphertext c = Enc(9);
  for (int i = 0; i < 200; ++i) {
    Ciphertext r = Rerandomize(keys_.pk, c, rng_);
    ASSERT_NE(ToBytes(group_, r), ToBytes(group_, c));
    ASSERT_NE(r.c1.u, c.c1.u);
    ASSERT_NE(r.c2, c.c2);
    ASSERT_NE(r.c3.w, c.c3.w);
    ASSERT_TRUE(Compare(token_, c, r));
  }
  Ciphertext chain = c;
  for (int i = 0; i < 50; ++i) chain = Rerandomize(keys_.pk, chain, rng_);
  EXPECT_EQ(Decrypt(keys_.sk, chain), group_.Commit(group_.MakeScalar(9)));
}

TEST_F(HpkeetTest, UnblindAgreesWithDecrypt) {
  for (int i = 0; i < 200; ++i) {
    Scalar m = group_.RandomScalar(rng_);
    Ciphertext c = Encrypt(keys_.pk, m, rng_);
    ASSERT_EQ(Unblind(token_, c), *Decrypt(keys_.sk, c));
    ASSERT_EQ(Unblind(token_, c), group_.Commit(m));
  }
}

TEST_F(HpkeetTest, ByteImageHasSevenFixedWidthElements) {
  EXPECT_EQ(ToBytes(group_, Enc(1)).size(), 7 * group_.element_bytes());
}

TEST(MinEntropyTest, UnionBound) {
  EXPECT_DOUBLE_EQ(MinEntropyBound(1, 1).required_bits, 0);
  EXPECT_DOUBLE_EQ(
      MinEntropyBound(std::ldexp(1.0, 40), std::ldexp(1.0, -40)).required_bits,
      80);
  EXPECT_DOUBLE_EQ(
      MinEntropyBound(std::ldexp(1.0, 20), std::ldexp(1.0, -20)).required_bits,
      40);
  MinEntropyReport r = MinEntropyBound(8, 0.5);
  EXPECT_DOUBLE_EQ(r.trial_budget, 8);
  EXPECT_DOUBLE_EQ(r.target_advantage, 0.5);
  EXPECT_DOUBLE_EQ(r.required_bits, 4);
  EXPECT_THROW(MinEntropyBound(0, 0.5), UsageError);
  EXPECT_THROW(MinEntropyBound(1, 0), UsageError);
  EXPECT_THROW(MinEntropyBound(1, 1.5), UsageError);
}

}  // namespace
}  // namespace blindtm::hpkeet
