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


#include "blindtm/random.h"

#include <gtest/gtest.h>

#include <map>

#include "blindtm/digest.h"
#include "blindtm/errors.h"

namespace blindtm {
namespace {

TEST(RandomTest, SeededStreamsReproduce) {
  Random a = Random::FromSeed(99);
  Random b = Random::FromSeed(99);
  for (int i = 0; i < 2000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
  Random c = Random::FromSeed(100);
  EXPECT_NE(Random::FromSeed(99).NextU64(), c.NextU64());
}

TEST(RandomTest, ForkIsIndependentAndDoesNotAdvanceParent) {
  Random a = Random::FromSeed(5);
  Random b = Random::FromSeed(5);
  Random child = a.Fork(1);
  EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(child.NextU64(), a.Fork(2).NextU64());
  EXPECT_EQ(Random::FromSeed(5).Fork(1).NextU64(),
            Random::FromSeed(5).Fork(1).NextU64());
}

TEST(RandomTest, UniformBelowStaysInRangeAndCoversIt) {
  Random rng = Random::FromSeed(3);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 6000; ++i) {
    std::uint64_t v = rng.UniformBelow(std::uint64_t{6});
    ASSERT_LT(v, 6u);
    ++hist[v];
  }
  ASSERT_EQ(hist.size(), 6u);
  // Each bucket expects 1000; 5 sigma is about 150.
  for (const auto& [v, n] : hist) EXPECT_NEAR(n, 1000, 150) << v;
  mpz_class bound("123456789012345678901234567890");
  for (int i = 0; i < 200; ++i) {
    mpz_class v = rng.UniformBelow(bound);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, bound);
  }
}

TEST(RandomTest, ExactBitsSetsTopBit) {
  Random rng = Random::FromSeed(4);
  for (std::size_t bits : {1u, 7u, 64u, 65u, 200u}) {
    EXPECT_EQ(mpz_sizeinbase(rng.ExactBits(bits).get_mpz_t(), 2), bits);
  }
}

TEST(DigestTest, KnownAnswer) {
  EXPECT_EQ(HexEncode(Sha256(std::string_view("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(HexDecode("00ff10"), (std::vector<std::uint8_t>{0, 255, 16}));
  EXPECT_THROW(HexDecode("abc"), ParseError);
  EXPECT_THROW(HexDecode("zz"), ParseError);
}

}  // namespace
}  // namespace blindtm
