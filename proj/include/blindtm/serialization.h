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


#ifndef BLINDTM_SERIALIZATION_H_
#define BLINDTM_SERIALIZATION_H_

#include <filesystem>
#include <string>

#include "blindtm/blind.h"
#include "blindtm/group.h"
#include "blindtm/hpkeet.h"
#include "json.hpp"

// JSON envelopes for every artifact exchanged between the data owner and
// the service provider. Each document carries
//   {"kind": ..., "version": 1, "fingerprint": <group fingerprint>, ...}
// and all integers are lowercase big-endian hex without leading zeros.
// Readers validate subgroup membership of every element they accept.
namespace blindtm::serialization {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace kind {
inline constexpr char kParams[] = "group-params";
inline constexpr char kKeys[] = "hpkeet-keys";
inline constexpr char kPublicKey[] = "hpkeet-public-key";
inline constexpr char kToken[] = "hpkeet-token";
inline constexpr char kCiphertext[] = "hpkeet-ciphertext";
inline constexpr char kEncoding[] = "blind-encoding";
inline constexpr char kProgram[] = "blind-program";
inline constexpr char kTape[] = "encrypted-configuration";
inline constexpr char kManifest[] = "session-manifest";
}  // namespace kind

Json ParamsToJson(const GroupParams& params);
Group GroupFromJson(const Json& j);

Json ScalarToJson(const Scalar& s);
Scalar ScalarFromJson(const Group& group, const Json& j);  // rejects >= q
Json ElementToJson(const GroupElement& e);
GroupElement ElementFromJson(const Group& group, const Json& j);

Json CiphertextToJson(const hpkeet::Ciphertext& c);
hpkeet::Ciphertext CiphertextFromJson(const Group& group, const Json& j);

// Top-level documents.
Json KeysDocument(const hpkeet::Keys& keys);
hpkeet::Keys KeysFromDocument(const Json& doc);
Json PublicKeyDocument(const hpkeet::PublicKey& pk);
hpkeet::PublicKey PublicKeyFromDocument(const Json& doc);
// Carries sk2 only.
Json TokenDocument(const hpkeet::Token& token);
hpkeet::Token TokenFromDocument(const Json& doc);
Json CiphertextDocument(const Group& group, const hpkeet::Ciphertext& c);
hpkeet::Ciphertext CiphertextFromDocument(const Group& group, const Json& doc);
Json EncodingDocument(const blind::Encoding& encoding);
blind::Encoding EncodingFromDocument(const Group& group, const Json& doc);
Json ProgramDocument(const blind::BlindProgram& program);
blind::BlindProgram ProgramFromDocument(const Json& doc);
Json TapeDocument(const blind::EncryptedConfiguration& conf);
blind::EncryptedConfiguration TapeFromDocument(const Group& group,
                                               const Json& doc);

// Throws ValidationError unless doc is an envelope of `kind` in the current
// version; returns its fingerprint.
std::string CheckEnvelope(const Json& doc, const std::string& kind);

Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& doc);

}  // namespace blindtm::serialization

#endif  // BLINDTM_SERIALIZATION_H_
