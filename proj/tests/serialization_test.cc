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


#include "blindtm/serialization.h"

#include <gtest/gtest.h>

#include "blindtm/errors.h"
#include "test_util.h"

namespace blindtm::serialization {
namespace {

using testing::Machine;
using testing::TestGroup;

class SerializationTest : public ::testing::Test {
 protected:
  SerializationTest()
      : group_(TestGroup(96)),
        rng_(Random::FromSeed(41)),
        keys_(hpkeet::Keygen(group_, rng_)) {}

  Group group_;
  Random rng_;
  hpkeet::Keys keys_;
};

TEST_F(SerializationTest, ParamsRoundTrip) {
  Group g = GroupFromJson(ParamsToJson(group_.params()));
  EXPECT_EQ(g.fingerprint(), group_.fingerprint());
  Json bad = ParamsToJson(group_.params());
  bad["h"] = ToHex(group_.g().value());
  EXPECT_THROW(GroupFromJson(bad), ValidationError);
}

TEST_F(SerializationTest, KeysAndTokenRoundTrip) {
  Json doc = KeysDocument(keys_);
  EXPECT_EQ(doc["kind"], kind::kKeys);
  EXPECT_EQ(doc["version"], kFormatVersion);
  EXPECT_EQ(doc["fingerprint"], group_.fingerprint());
  hpkeet::Keys back = KeysFromDocument(Json::parse(doc.dump()));
  EXPECT_EQ(back.sk.sk1, keys_.sk.sk1);
  EXPECT_EQ(back.pk.pk2, keys_.pk.pk2);

  Json token = TokenDocument(hpkeet::Authorize(keys_.sk));
  std::string text = token.dump();
  EXPECT_FALSE(token.contains("sk1"));
  EXPECT_FALSE(token.contains("secret_key"));
  EXPECT_EQ(text.find(ToHex(keys_.sk.sk1.x1.value())), std::string::npos);
  EXPECT_NE(text.find("SECRET"), std::string::npos);
  EXPECT_EQ(TokenFromDocument(Json::parse(text)).sk2, keys_.sk.sk2);
  token["sk1"] = "1";
  EXPECT_THROW(TokenFromDocument(token), ValidationError);
}

TEST_F(SerializationTest, TamperedKeysRejected) {
  Json doc = KeysDocument(keys_);
  doc["public"]["pk1"]["y1"] = ToHex(group_.g().value());
  EXPECT_THROW(KeysFromDocument(doc), ValidationError);
  Json wrong_kind = KeysDocument(keys_);
  wrong_kind["kind"] = kind::kToken;
  EXPECT_THROW(KeysFromDocument(wrong_kind), ValidationError);
  Json wrong_fp = KeysDocument(keys_);
  wrong_fp["fingerprint"] = "00";
  EXPECT_THROW(KeysFromDocument(wrong_fp), FingerprintMismatch);
  Json missing = KeysDocument(keys_);
  missing.erase("secret_key");
  EXPECT_THROW(KeysFromDocument(missing), ParseError);
}

TEST_F(SerializationTest, CiphertextShapeAndMembership) {
  hpkeet::Ciphertext c =
      hpkeet::Encrypt(keys_.pk, group_.MakeScalar(17), rng_);
  Json j = CiphertextToJson(c);
  EXPECT_TRUE(j["c1"].contains("u"));
  EXPECT_TRUE(j["c3"].contains("w"));
  EXPECT_TRUE(j["c2"].is_string());
  EXPECT_EQ(CiphertextFromJson(group_, j), c);
  Json outside = j;
  // p - 1 has order 2, so it is never in the odd-order subgroup.
  outside["c2"] = ToHex(group_.p() - 1);
  EXPECT_THROW(CiphertextFromJson(group_, outside), ValidationError);
  Json doc = CiphertextDocument(group_, c);
  EXPECT_EQ(CiphertextFromDocument(group_, doc), c);
  EXPECT_THROW(CiphertextFromDocument(TestGroup(64), doc), FingerprintMismatch);
}

TEST_F(SerializationTest, ScalarMustBeReduced) {
  EXPECT_THROW(ScalarFromJson(group_, ToHex(group_.q())), ValidationError);
  EXPECT_EQ(ScalarFromJson(group_, "a").value(), 10);
}

TEST_F(SerializationTest, BlindArtifactsRoundTrip) {
  tm::TmSpec spec = Machine("increment");
  blind::Encoding encoding = blind::Encoding::Make(spec, group_, rng_);
  blind::BlindProgram program =
      blind::Compile(spec, encoding, keys_.pk, rng_);

  Json enc_doc = EncodingDocument(encoding);
  EXPECT_NE(enc_doc.dump().find("SECRET"), std::string::npos);
  blind::Encoding enc_back =
      EncodingFromDocument(group_, Json::parse(enc_doc.dump()));
  EXPECT_EQ(enc_back.id(), encoding.id());
  EXPECT_EQ(enc_back.StateCode("carry"), encoding.StateCode("carry"));

  Json prog_doc = ProgramDocument(program);
  blind::BlindProgram prog_back =
      ProgramFromDocument(Json::parse(prog_doc.dump()));
  EXPECT_EQ(prog_back.table.size(), program.table.size());
  EXPECT_EQ(prog_back.salt, program.salt);
  EXPECT_EQ(prog_back.halt_commitments, program.halt_commitments);
  EXPECT_EQ(prog_back.time_bound, program.time_bound);
  EXPECT_EQ(ProgramDocument(prog_back), prog_doc);

  blind::EncryptedConfiguration conf =
      blind::EncryptTape("101", encoding, keys_.pk, 5, rng_);
  Json tape_doc = TapeDocument(conf);
  blind::EncryptedConfiguration tape_back =
      TapeFromDocument(group_, Json::parse(tape_doc.dump()));
  EXPECT_EQ(tape_back.cells, conf.cells);
  EXPECT_EQ(tape_back.bound, 5);
  hpkeet::Token token = hpkeet::Authorize(keys_.sk);
  blind::EncryptedConfiguration out =
      blind::BlindRun(prog_back, token, tape_back, rng_);
  EXPECT_EQ(blind::DecryptTape(keys_.sk, enc_back, out), "110");

  Json short_tape = tape_doc;
  short_tape["cells"].erase(0);
  EXPECT_THROW(TapeFromDocument(group_, short_tape), ValidationError);
}

TEST_F(SerializationTest, MalformedHexRejected) {
  hpkeet::Ciphertext c = hpkeet::Encrypt(keys_.pk, group_.MakeScalar(1), rng_);
  Json j = CiphertextToJson(c);
  j["c2"] = "0" + j["c2"].get<std::string>();
  EXPECT_THROW(CiphertextFromJson(group_, j), ParseError);
  j["c2"] = 5;
  EXPECT_THROW(CiphertextFromJson(group_, j), ParseError);
}

}  // namespace
}  // namespace blindtm::serialization
