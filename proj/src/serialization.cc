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

#include <algorithm>
#include <fstream>

#include "blindtm/errors.h"

namespace blindtm::serialization {

namespace {

constexpr char kSecretMarker[] =
    "SECRET: do not hand this file to the service provider";
constexpr char kTokenMarker[] =
    "SECRET: comparison token, share only with the authorised executor";

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_string()) {
    throw ParseError(std::string("field '") + name + "' must be a string");
  }
  return v.get<std::string>();
}

template <typename T>
T IntField(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + name + "' must be an integer");
  }
  return v.get<T>();
}

mpz_class HexValue(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a hex string");
  return FromHex(j.get<std::string>());
}

Json Envelope(const char* kind, const std::string& fingerprint) {
  return Json{{"kind", kind},
              {"version", kFormatVersion},
              {"fingerprint", fingerprint}};
}

Json DegPublicToJson(const deg::PublicKey& pk) {
  return Json{{"y1", ElementToJson(pk.y1)}, {"y2", ElementToJson(pk.y2)}};
}

deg::PublicKey DegPublicFromJson(const Group& group, const Json& j) {
  return {ElementFromJson(group, Field(j, "y1")),
          ElementFromJson(group, Field(j, "y2"))};
}

Json DegSecretToJson(const deg::SecretKey& sk) {
  return Json{{"x1", ScalarToJson(sk.x1)}, {"x2", ScalarToJson(sk.x2)}};
}

deg::SecretKey DegSecretFromJson(const Group& group, const Json& j) {
  return {ScalarFromJson(group, Field(j, "x1")),
          ScalarFromJson(group, Field(j, "x2"))};
}

Json DegCiphertextToJson(const deg::Ciphertext& c) {
  return Json{{"u", ElementToJson(c.u)},
              {"v", ElementToJson(c.v)},
              {"w", ElementToJson(c.w)}};
}

deg::Ciphertext DegCiphertextFromJson(const Group& group, const Json& j) {
  return {ElementFromJson(group, Field(j, "u")),
          ElementFromJson(group, Field(j, "v")),
          ElementFromJson(group, Field(j, "w"))};
}

Group GroupFromEnvelope(const Json& doc, const char* kind) {
  std::string fingerprint = CheckEnvelope(doc, kind);
  Group group = GroupFromJson(Field(doc, "params"));
  if (group.fingerprint() != fingerprint) {
    throw FingerprintMismatch("envelope fingerprint does not match its params");
  }
  return group;
}

void RequireFingerprint(const Group& group, const std::string& fingerprint) {
  if (group.fingerprint() != fingerprint) {
    throw FingerprintMismatch("document belongs to a different group");
  }
}

Json PolynomialToJson(const tm::Polynomial& p) {
  return Json(p.coefficients());
}

tm::Polynomial PolynomialFromJson(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("bound polynomial must be a non-empty array");
  }
  std::vector<std::uint64_t> coefficients;
  for (const Json& c : j) {
    if (!c.is_number_unsigned()) {
      throw ParseError("bound coefficients must be nonnegative integers");
    }
    coefficients.push_back(c.get<std::uint64_t>());
  }
  return tm::Polynomial(std::move(coefficients));
}

}  // namespace

std::string CheckEnvelope(const Json& doc, const std::string& kind) {
  std::string actual = StringField(doc, "kind");
  if (actual != kind) {
    throw ValidationError("expected a '" + kind + "' document, got '" + actual +
                          "'");
  }
  if (IntField<int>(doc, "version") != kFormatVersion) {
    throw ValidationError("unsupported format version");
  }
  return StringField(doc, "fingerprint");
}

Json ParamsToJson(const GroupParams& params) {
  return Json{{"p", ToHex(params.p)},
              {"q", ToHex(params.q)},
              {"g", ToHex(params.g)},
              {"h", ToHex(params.h)}};
}

Group GroupFromJson(const Json& j) {
  return Group::FromParams({HexValue(Field(j, "p")), HexValue(Field(j, "q")),
                            HexValue(Field(j, "g")), HexValue(Field(j, "h"))});
}

Json ScalarToJson(const Scalar& s) { return ToHex(s.value()); }

Scalar ScalarFromJson(const Group& group, const Json& j) {
  mpz_class v = HexValue(j);
  if (v >= group.q()) throw ValidationError("scalar not reduced modulo q");
  return group.MakeScalar(v);
}

Json ElementToJson(const GroupElement& e) { return ToHex(e.value()); }

GroupElement ElementFromJson(const Group& group, const Json& j) {
  return group.Element(HexValue(j));
}

Json CiphertextToJson(const hpkeet::Ciphertext& c) {
  return Json{{"c1", DegCiphertextToJson(c.c1)},
              {"c2", ElementToJson(c.c2)},
              {"c3", DegCiphertextToJson(c.c3)}};
}

hpkeet::Ciphertext CiphertextFromJson(const Group& group, const Json& j) {
  return {DegCiphertextFromJson(group, Field(j, "c1")),
          ElementFromJson(group, Field(j, "c2")),
          DegCiphertextFromJson(group, Field(j, "c3"))};
}

Json KeysDocument(const hpkeet::Keys& keys) {
  const Group& group = keys.pk.group;
  Json doc = Envelope(kind::kKeys, group.fingerprint());
  doc["secret"] = kSecretMarker;
  doc["params"] = ParamsToJson(group.params());
  doc["public"] = {{"pk1", DegPublicToJson(keys.pk.pk1)},
                   {"pk2", DegPublicToJson(keys.pk.pk2)}};
  doc["secret_key"] = {{"sk1", DegSecretToJson(keys.sk.sk1)},
                       {"sk2", DegSecretToJson(keys.sk.sk2)}};
  return doc;
}

hpkeet::Keys KeysFromDocument(const Json& doc) {
  Group group = GroupFromEnvelope(doc, kind::kKeys);
  const Json& secret = Field(doc, "secret_key");
  hpkeet::Keys keys = hpkeet::KeysFromSecrets(
      group, DegSecretFromJson(group, Field(secret, "sk1")),
      DegSecretFromJson(group, Field(secret, "sk2")));
  const Json& pub = Field(doc, "public");
  if (DegPublicFromJson(group, Field(pub, "pk1")) != keys.pk.pk1 ||
      DegPublicFromJson(group, Field(pub, "pk2")) != keys.pk.pk2) {
    throw ValidationError("public key does not match the secret key");
  }
  return keys;
}

Json PublicKeyDocument(const hpkeet::PublicKey& pk) {
  Json doc = Envelope(kind::kPublicKey, pk.group.fingerprint());
  doc["params"] = ParamsToJson(pk.group.params());
  doc["pk1"] = DegPublicToJson(pk.pk1);
  doc["pk2"] = DegPublicToJson(pk.pk2);
  return doc;
}

hpkeet::PublicKey PublicKeyFromDocument(const Json& doc) {
  Group group = GroupFromEnvelope(doc, kind::kPublicKey);
  return {group, DegPublicFromJson(group, Field(doc, "pk1")),
          DegPublicFromJson(group, Field(doc, "pk2"))};
}

Json TokenDocument(const hpkeet::Token& token) {
  Json doc = Envelope(kind::kToken, token.group.fingerprint());
  doc["secret"] = kTokenMarker;
  doc["params"] = ParamsToJson(token.group.params());
  doc["sk2"] = DegSecretToJson(token.sk2);
  return doc;
}

hpkeet::Token TokenFromDocument(const Json& doc) {
  Group group = GroupFromEnvelope(doc, kind::kToken);
  if (doc.contains("sk1") || doc.contains("secret_key")) {
    throw ValidationError("token document must not carry sk1");
  }
  return {group, DegSecretFromJson(group, Field(doc, "sk2"))};
}

Json CiphertextDocument(const Group& group, const hpkeet::Ciphertext& c) {
  Json doc = Envelope(kind::kCiphertext, group.fingerprint());
  doc["ciphertext"] = CiphertextToJson(c);
  return doc;
}

hpkeet::Ciphertext CiphertextFromDocument(const Group& group, const Json& doc) {
  RequireFingerprint(group, CheckEnvelope(doc, kind::kCiphertext));
  return CiphertextFromJson(group, Field(doc, "ciphertext"));
}

Json EncodingDocument(const blind::Encoding& encoding) {
  Json doc = Envelope(kind::kEncoding, encoding.group().fingerprint());
  doc["secret"] = kSecretMarker;
  doc["id"] = encoding.id();
  doc["start"] = encoding.start();
  doc["blank"] = encoding.blank();
  Json states = Json::object();
  for (const auto& [name, code] : encoding.state_codes()) {
    states[name] = ScalarToJson(code);
  }
  Json symbols = Json::object();
  for (const auto& [name, code] : encoding.symbol_codes()) {
    symbols[name] = ScalarToJson(code);
  }
  doc["states"] = std::move(states);
  doc["symbols"] = std::move(symbols);
  return doc;
}

blind::Encoding EncodingFromDocument(const Group& group, const Json& doc) {
  RequireFingerprint(group, CheckEnvelope(doc, kind::kEncoding));
  std::map<tm::State, Scalar> states;
  for (const auto& [name, code] : Field(doc, "states").items()) {
    states.emplace(name, ScalarFromJson(group, code));
  }
  std::map<tm::Symbol, Scalar> symbols;
  for (const auto& [name, code] : Field(doc, "symbols").items()) {
    symbols.emplace(name, ScalarFromJson(group, code));
  }
  return blind::Encoding::FromCodes(group, StringField(doc, "id"),
                                    std::move(states), std::move(symbols),
                                    StringField(doc, "start"),
                                    StringField(doc, "blank"));
}

Json ProgramDocument(const blind::BlindProgram& program) {
  const Group& group = program.group();
  Json doc = Envelope(kind::kProgram, group.fingerprint());
  doc["params"] = ParamsToJson(group.params());
  doc["public_key"] = {{"pk1", DegPublicToJson(program.pk.pk1)},
                       {"pk2", DegPublicToJson(program.pk.pk2)}};
  doc["encoding_id"] = program.encoding_id;
  doc["salt"] = program.salt;
  doc["time"] = PolynomialToJson(program.time_bound);
  doc["space"] = PolynomialToJson(program.space_bound);
  doc["start"] = CiphertextToJson(program.enc_start);
  std::vector<std::string> halts(program.halt_commitments.begin(),
                                 program.halt_commitments.end());
  std::sort(halts.begin(), halts.end());
  doc["halt"] = halts;
  std::vector<const std::pair<const blind::TableKey, blind::ProgramEntry>*>
      sorted;
  for (const auto& kv : program.table) sorted.push_back(&kv);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->first < b->first; });
  Json entries = Json::array();
  for (const auto* kv : sorted) {
    entries.push_back(
        {{"key", HexEncode(kv->first)},
         {"delta_state", CiphertextToJson(kv->second.delta_state)},
         {"delta_symbol", CiphertextToJson(kv->second.delta_symbol)},
         {"move", std::string(1, tm::MoveToChar(kv->second.move))}});
  }
  doc["entries"] = std::move(entries);
  return doc;
}

blind::BlindProgram ProgramFromDocument(const Json& doc) {
  Group group = GroupFromEnvelope(doc, kind::kProgram);
  const Json& pk = Field(doc, "public_key");
  blind::BlindProgram program{
      hpkeet::PublicKey{group, DegPublicFromJson(group, Field(pk, "pk1")),
                        DegPublicFromJson(group, Field(pk, "pk2"))}};
  program.encoding_id = StringField(doc, "encoding_id");
  program.salt = IntField<std::uint32_t>(doc, "salt");
  program.time_bound = PolynomialFromJson(Field(doc, "time"));
  program.space_bound = PolynomialFromJson(Field(doc, "space"));
  program.enc_start = CiphertextFromJson(group, Field(doc, "start"));
  for (const Json& h : Field(doc, "halt")) {
    program.halt_commitments.insert(ToHex(ElementFromJson(group, h).value()));
  }
  for (const Json& e : Field(doc, "entries")) {
    std::vector<std::uint8_t> key_bytes = HexDecode(StringField(e, "key"));
    if (key_bytes.size() != blind::TableKey{}.size()) {
      throw ParseError("transition key must be 32 bytes");
    }
    blind::TableKey key;
    std::copy(key_bytes.begin(), key_bytes.end(), key.begin());
    std::string move = StringField(e, "move");
    if (move.size() != 1) throw ParseError("move must be one of L, R, S");
    blind::ProgramEntry entry{
        CiphertextFromJson(group, Field(e, "delta_state")),
        CiphertextFromJson(group, Field(e, "delta_symbol")),
        tm::MoveFromChar(move[0])};
    if (!program.table.emplace(key, std::move(entry)).second) {
      throw ValidationError("duplicate transition key in program");
    }
  }
  return program;
}

Json TapeDocument(const blind::EncryptedConfiguration& conf) {
  Json doc = Envelope(kind::kTape, conf.fingerprint);
  doc["encoding_id"] = conf.encoding_id;
  doc["input_length"] = conf.input_length;
  doc["bound"] = conf.bound;
  doc["head"] = conf.head;
  doc["logical_step"] = conf.logical_step;
  doc["state"] = CiphertextToJson(conf.state);
  Json cells = Json::array();
  for (const auto& c : conf.cells) cells.push_back(CiphertextToJson(c));
  doc["cells"] = std::move(cells);
  return doc;
}

blind::EncryptedConfiguration TapeFromDocument(const Group& group,
                                               const Json& doc) {
  blind::EncryptedConfiguration conf;
  conf.fingerprint = CheckEnvelope(doc, kind::kTape);
  RequireFingerprint(group, conf.fingerprint);
  conf.encoding_id = StringField(doc, "encoding_id");
  conf.input_length = IntField<std::uint64_t>(doc, "input_length");
  conf.bound = IntField<std::int64_t>(doc, "bound");
  conf.head = IntField<std::int64_t>(doc, "head");
  conf.logical_step = IntField<std::uint64_t>(doc, "logical_step");
  conf.state = CiphertextFromJson(group, Field(doc, "state"));
  for (const Json& c : Field(doc, "cells")) {
    conf.cells.push_back(CiphertextFromJson(group, c));
  }
  if (conf.bound < 1 ||
      conf.cells.size() != static_cast<std::size_t>(2 * conf.bound + 1)) {
    throw ValidationError("tape cell count does not match its bound");
  }
  if (conf.head < -conf.bound || conf.head > conf.bound) {
    throw ValidationError("tape head outside [-B, B]");
  }
  return conf;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw UsageError("failed writing " + path.string());
}

}  // namespace blindtm::serialization
