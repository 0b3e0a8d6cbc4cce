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


#include "blindtm/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "blindtm/bench.h"
#include "blindtm/errors.h"
#include "blindtm/games.h"
#include "blindtm/group.h"

namespace blindtm::cli {

namespace {

namespace fs = std::filesystem;
namespace ser = serialization;
using ser::Json;

constexpr char kRejected[] = "<rejected>";

Random RngFor(const std::optional<std::uint64_t>& seed) {
  return seed ? Random::FromSeed(*seed) : Random::FromEntropy();
}

hpkeet::Keys LoadKeys(const fs::path& path) {
  return ser::KeysFromDocument(ser::ReadJsonFile(path));
}

hpkeet::Token LoadToken(const fs::path& path) {
  return ser::TokenFromDocument(ser::ReadJsonFile(path));
}

hpkeet::PublicKey LoadPublicKey(const fs::path& path) {
  Json doc = ser::ReadJsonFile(path);
  if (doc.is_object() && doc.value("kind", "") == ser::kind::kKeys) {
    return ser::KeysFromDocument(doc).pk;
  }
  return ser::PublicKeyFromDocument(doc);
}

blind::BlindProgram LoadProgram(const fs::path& path) {
  return ser::ProgramFromDocument(ser::ReadJsonFile(path));
}

blind::Encoding LoadEncoding(const Group& group, const fs::path& path) {
  return ser::EncodingFromDocument(group, ser::ReadJsonFile(path));
}

blind::EncryptedConfiguration LoadTape(const Group& group,
                                       const fs::path& path) {
  return ser::TapeFromDocument(group, ser::ReadJsonFile(path));
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
  if (!f) throw UsageError("failed writing " + path.string());
}

std::int64_t BoundFor(const tm::Polynomial& space, std::size_t n) {
  std::uint64_t b = space.Evaluate(n);
  if (b > static_cast<std::uint64_t>(INT32_MAX)) {
    throw ValidationError("space bound too large");
  }
  return static_cast<std::int64_t>(b);
}

std::size_t InputLength(std::string_view input) {
  return tm::SplitSymbols(input).size();
}

void RequireSameEncoding(const blind::BlindProgram& program,
                         const std::string& encoding_id) {
  if (program.encoding_id != encoding_id) {
    throw FingerprintMismatch("program and encoding belong to different "
                              "compilations");
  }
}

Json ResultJson(const std::string& game, const std::string& adversary,
                const games::GameResult& r) {
  return Json{{"game", game},
              {"adversary", adversary},
              {"trials", r.trials},
              {"wins", r.wins},
              {"aborted", r.aborted},
              {"advantage_estimate", r.advantage_estimate},
              {"std_error", r.std_error}};
}

// Options shared by the subcommands; CLI11 binds into these.
struct Options {
  std::optional<std::uint64_t> seed;
  std::size_t bits = 256;
  std::string keys, public_key, token, out, out_public, in, a, b, value;
  std::string tm_path, program, encoding, tape, out_program, out_encoding;
  std::string input, trace_log, csv, json_out, check;
  std::vector<std::string> inputs;
  std::optional<std::size_t> max_len;
  std::vector<std::size_t> bits_list{256, 512, 2048};
  std::size_t iters = 10;
  std::string game = "ind", adversary, mode = "fresh";
  std::uint64_t trials = 1000;
  std::size_t n = 16, budget = 8;
  bool show_state = false;
};

int CmdKeygen(const Options& o, std::ostream& out) {
  if (o.bits < 16 || o.bits > 8192) {
    throw UsageError("--bits must be between 16 and 8192");
  }
  Random rng = RngFor(o.seed);
  Group group = Group::Generate(o.bits, rng);
  hpkeet::Keys keys = hpkeet::Keygen(group, rng);
  ser::WriteJsonFile(o.out, ser::KeysDocument(keys));
  if (!o.out_public.empty()) {
    ser::WriteJsonFile(o.out_public, ser::PublicKeyDocument(keys.pk));
  }
  out << "fingerprint " << group.fingerprint() << "\n";
  return kExitOk;
}

int CmdToken(const Options& o, std::ostream& out) {
  hpkeet::Keys keys = LoadKeys(o.keys);
  ser::WriteJsonFile(o.out, ser::TokenDocument(hpkeet::Authorize(keys.sk)));
  out << "token written to " << o.out << "\n";
  return kExitOk;
}

int CmdEncrypt(const Options& o, std::ostream& out) {
  hpkeet::PublicKey pk = LoadPublicKey(o.public_key.empty() ? o.keys
                                                            : o.public_key);
  mpz_class v;
  if (v.set_str(o.value, 10) != 0 || v < 0 || v >= pk.group.q()) {
    throw UsageError("--value must be a decimal integer in [0, q)");
  }
  Random rng = RngFor(o.seed);
  hpkeet::Ciphertext c = hpkeet::Encrypt(pk, pk.group.MakeScalar(v), rng);
  ser::WriteJsonFile(o.out, ser::CiphertextDocument(pk.group, c));
  out << "ciphertext written to " << o.out << "\n";
  return kExitOk;
}

int CmdDecrypt(const Options& o, std::ostream& out) {
  hpkeet::Keys keys = LoadKeys(o.keys);
  const Group& group = keys.pk.group;
  hpkeet::Ciphertext c =
      ser::CiphertextFromDocument(group, ser::ReadJsonFile(o.in));
  std::optional<GroupElement> m = hpkeet::Decrypt(keys.sk, c);
  if (!m) throw CryptoError("ciphertext does not decrypt");
  out << "commitment " << ToHex(m->value()) << "\n";
  if (!o.encoding.empty()) {
    blind::Encoding encoding = LoadEncoding(group, o.encoding);
    if (auto s = encoding.DecodeState(*m)) out << "state " << *s << "\n";
    if (auto s = encoding.DecodeSymbol(*m)) out << "symbol " << *s << "\n";
  }
  return kExitOk;
}

int CmdCompare(const Options& o, std::ostream& out) {
  hpkeet::Token token = LoadToken(o.token);
  hpkeet::Ciphertext a =
      ser::CiphertextFromDocument(token.group, ser::ReadJsonFile(o.a));
  hpkeet::Ciphertext b =
      ser::CiphertextFromDocument(token.group, ser::ReadJsonFile(o.b));
  out << (hpkeet::Compare(token, a, b) ? "equal" : "not equal") << "\n";
  return kExitOk;
}

int CmdCompile(const Options& o, std::ostream& out) {
  tm::TmSpec spec = tm::LoadTm(o.tm_path);
  hpkeet::PublicKey pk = LoadPublicKey(o.public_key.empty() ? o.keys
                                                            : o.public_key);
  Random rng = RngFor(o.seed);
  blind::Encoding encoding = blind::Encoding::Make(spec, pk.group, rng);
  blind::BlindProgram program = blind::Compile(spec, encoding, pk, rng);
  ser::WriteJsonFile(o.out_program, ser::ProgramDocument(program));
  ser::WriteJsonFile(o.out_encoding, ser::EncodingDocument(encoding));
  out << "compiled " << program.table.size() << " transitions\n";
  return kExitOk;
}

int CmdEncryptTape(const Options& o, std::ostream& out) {
  blind::BlindProgram program = LoadProgram(o.program);
  blind::Encoding encoding = LoadEncoding(program.group(), o.encoding);
  RequireSameEncoding(program, encoding.id());
  Random rng = RngFor(o.seed);
  std::int64_t bound = BoundFor(program.space_bound, InputLength(o.input));
  blind::EncryptedConfiguration conf =
      blind::EncryptTape(o.input, encoding, program.pk, bound, rng);
  ser::WriteJsonFile(o.out, ser::TapeDocument(conf));
  out << "tape of " << conf.cells.size() << " cells written to " << o.out
      << "\n";
  return kExitOk;
}

int CmdRun(const Options& o, std::ostream& out) {
  blind::BlindProgram program = LoadProgram(o.program);
  hpkeet::Token token = LoadToken(o.token);
  blind::EncryptedConfiguration conf = LoadTape(program.group(), o.tape);
  if (conf.encoding_id != program.encoding_id) {
    throw FingerprintMismatch("tape and program belong to different "
                              "compilations");
  }
  Random rng = RngFor(o.seed);
  std::vector<std::int64_t> touches;
  blind::RunObserver observer;
  observer.on_touch = [&](std::int64_t p) { touches.push_back(p); };
  blind::EncryptedConfiguration result =
      blind::BlindRun(program, token, conf, rng, &observer);
  ser::WriteJsonFile(o.out, ser::TapeDocument(result));
  if (!o.trace_log.empty()) {
    WriteText(o.trace_log,
              HeadTraceLog(conf.bound, result.logical_step, touches));
  }
  out << "ran " << result.logical_step << " steps over " << conf.cells.size()
      << " cells\n";
  return kExitOk;
}

int CmdDecryptTape(const Options& o, std::ostream& out) {
  hpkeet::Keys keys = LoadKeys(o.keys);
  const Group& group = keys.pk.group;
  blind::Encoding encoding = LoadEncoding(group, o.encoding);
  blind::EncryptedConfiguration conf = LoadTape(group, o.tape);
  if (conf.encoding_id != encoding.id()) {
    throw FingerprintMismatch("tape and encoding belong to different "
                              "compilations");
  }
  if (o.show_state) {
    out << "state " << blind::DecryptState(keys.sk, encoding, conf) << "\n";
  }
  out << blind::DecryptTape(keys.sk, encoding, conf) << "\n";
  return kExitOk;
}

int CmdVerify(const Options& o, std::ostream& out) {
  tm::TmSpec spec = tm::LoadTm(o.tm_path);
  std::vector<std::string> inputs = o.inputs;
  if (o.max_len) {
    for (std::string& w : tm::AllInputs(spec, *o.max_len)) {
      inputs.push_back(std::move(w));
    }
  }
  if (inputs.empty()) throw UsageError("give --inputs or --max-len");
  Random rng = RngFor(o.seed);
  bool supplied = !o.keys.empty() || !o.encoding.empty() || !o.program.empty();
  if (supplied && (o.keys.empty() || o.encoding.empty() || o.program.empty())) {
    throw UsageError("--keys, --encoding and --program go together");
  }
  std::optional<hpkeet::Keys> keys;
  if (supplied) {
    keys = LoadKeys(o.keys);
  } else {
    keys = hpkeet::Keygen(Group::Generate(o.bits, rng), rng);
  }
  std::optional<blind::Encoding> encoding;
  std::optional<blind::BlindProgram> program;
  if (supplied) {
    program = LoadProgram(o.program);
    if (program->fingerprint() != keys->pk.group.fingerprint()) {
      throw FingerprintMismatch("program and keys use different groups");
    }
    encoding = LoadEncoding(keys->pk.group, o.encoding);
    RequireSameEncoding(*program, encoding->id());
  } else {
    encoding = blind::Encoding::Make(spec, keys->pk.group, rng);
    program = blind::Compile(spec, *encoding, keys->pk, rng);
  }
  VerifyReport report =
      VerifyMachine(spec, inputs, *keys, *encoding, *program, rng);
  for (const VerifyCase& c : report.cases) {
    if (c.ok()) continue;
    out << "MISMATCH input=\"" << c.input << "\" expected=\"" << c.expected
        << "\" actual=\"" << c.actual << "\"";
    if (!c.error.empty()) out << " error=\"" << c.error << "\"";
    out << "\n";
  }
  out << report.cases.size() << " inputs, " << report.mismatches()
      << " mismatches\n";
  if (report.mismatches() != 0) {
    throw VerificationMismatch("blind and plaintext runs disagree");
  }
  return kExitOk;
}

int CmdBench(const Options& o, std::ostream& out) {
  Random rng = RngFor(o.seed);
  bench::BenchReport report = bench::RunBench(o.bits_list, o.iters, rng);
  out << report.ToTable();
  if (!o.csv.empty()) WriteText(o.csv, report.ToCsv());
  if (!report.AllCountsMatch()) {
    throw VerificationMismatch("operation counts differ from the table");
  }
  return kExitOk;
}

int CmdGames(const Options& o, std::ostream& out) {
  Random rng = RngFor(o.seed);
  Group group = Group::Generate(o.bits, rng);
  hpkeet::Keys keys = hpkeet::Keygen(group, rng);
  Random game_rng = rng.Fork(1);
  games::GameResult result;
  std::string adversary = o.adversary;
  if (o.game == "ow") {
    if (adversary.empty()) adversary = "random-guess";
    // A four-symbol encoding whose codes the adversary may or may not know.
    std::vector<Scalar> codes;
    for (int i = 0; i < 4; ++i) codes.push_back(group.RandomScalar(rng));
    if (adversary == "random-guess") {
      mpz_class space = mpz_class(1) << 32;
      games::RandomGuessOw adv(space);
      result = games::RunOwGame(keys, adv, games::PlaintextDomain::Below(space),
                                o.budget, o.trials, game_rng);
    } else if (adversary == "trial-known") {
      games::TrialEncryptionOw adv(codes);
      result = games::RunOwGame(keys, adv, games::PlaintextDomain::Listed(codes),
                                o.budget, o.trials, game_rng);
    } else if (adversary == "trial-secret") {
      games::TrialEncryptionOw adv(codes);
      result = games::RunOwGame(keys, adv,
                                games::PlaintextDomain::Below(group.q()),
                                o.budget, o.trials, game_rng);
    } else {
      throw UsageError("unknown OW adversary '" + adversary + "'");
    }
  } else if (o.game == "ind" || o.game == "multi") {
    if (adversary.empty()) adversary = "coin-flip";
    std::unique_ptr<games::IndAdversary> adv;
    if (adversary == "coin-flip") {
      adv = std::make_unique<games::CoinFlipInd>();
    } else if (adversary == "token-granted") {
      adv = std::make_unique<games::TokenGrantedInd>(
          keys.pk, hpkeet::Authorize(keys.sk));
    } else if (adversary == "byte-equality") {
      adv = std::make_unique<games::ByteEqualityInd>();
    } else {
      throw UsageError("unknown IND adversary '" + adversary + "'");
    }
    if (o.game == "ind") {
      result = games::RunIndGame(keys, *adv, o.budget, o.trials, game_rng);
    } else {
      if (o.mode != "fresh" && o.mode != "chain") {
        throw UsageError("--mode must be fresh or chain");
      }
      games::ChallengeMode mode = o.mode == "fresh"
                                      ? games::ChallengeMode::kFresh
                                      : games::ChallengeMode::kRerandomizedChain;
      result = games::RunMultiChallengeInd(keys, *adv, o.n, mode, o.budget,
                                           o.trials, game_rng);
    }
  } else {
    throw UsageError("--game must be ow, ind or multi");
  }
  char line[160];
  std::snprintf(line, sizeof(line), "%-6s %-16s %8s %8s %8s %12s %10s\n",
                "game", "adversary", "trials", "wins", "aborted", "advantage",
                "std_err");
  out << line;
  std::snprintf(line, sizeof(line),
                "%-6s %-16s %8llu %8llu %8llu %12.6f %10.6f\n", o.game.c_str(),
                adversary.c_str(),
                static_cast<unsigned long long>(result.trials),
                static_cast<unsigned long long>(result.wins),
                static_cast<unsigned long long>(result.aborted),
                result.advantage_estimate, result.std_error);
  out << line;
  Json doc = ResultJson(o.game, adversary, result);
  out << doc.dump() << "\n";
  if (!o.json_out.empty()) ser::WriteJsonFile(o.json_out, doc);
  return kExitOk;
}

int CmdManifest(const Options& o, std::ostream& out) {
  if (!o.check.empty()) {
    Manifest::FromJson(ser::ReadJsonFile(o.check)).Check();
    out << "manifest consistent\n";
    return kExitOk;
  }
  if (o.out.empty()) throw UsageError("give --out or --check");
  std::map<std::string, fs::path> files;
  if (!o.keys.empty()) files["keys"] = o.keys;
  if (!o.public_key.empty()) files["public-key"] = o.public_key;
  if (!o.token.empty()) files["token"] = o.token;
  if (!o.encoding.empty()) files["encoding"] = o.encoding;
  if (!o.program.empty()) files["program"] = o.program;
  if (!o.tape.empty()) files["tape"] = o.tape;
  if (files.empty()) throw UsageError("manifest needs at least one file");
  Manifest manifest = Manifest::Build(files);
  ser::WriteJsonFile(o.out, manifest.ToJson());
  out << "manifest of " << files.size() << " files written to " << o.out
      << "\n";
  return kExitOk;
}

}  // namespace

Manifest Manifest::Build(const std::map<std::string, fs::path>& files) {
  Manifest m;
  for (const auto& [role, path] : files) {
    Json doc = ser::ReadJsonFile(path);
    std::string fingerprint;
    if (doc.is_object() && doc.contains("fingerprint") &&
        doc["fingerprint"].is_string()) {
      fingerprint = doc["fingerprint"].get<std::string>();
    } else {
      throw ValidationError(path.string() + " is not a blindtm document");
    }
    m.entries[role] = {path, fingerprint};
  }
  const std::string* first = nullptr;
  for (const auto& [role, entry] : m.entries) {
    if (first == nullptr) {
      first = &entry.fingerprint;
    } else if (entry.fingerprint != *first) {
      throw FingerprintMismatch("manifest entry '" + role +
                                "' uses a different group");
    }
  }
  return m;
}

Json Manifest::ToJson() const {
  std::string fingerprint =
      entries.empty() ? std::string() : entries.begin()->second.fingerprint;
  Json files = Json::object();
  for (const auto& [role, entry] : entries) {
    files[role] = {{"path", entry.path.string()},
                   {"fingerprint", entry.fingerprint}};
  }
  return Json{{"kind", ser::kind::kManifest},
              {"version", ser::kFormatVersion},
              {"fingerprint", fingerprint},
              {"files", files}};
}

Manifest Manifest::FromJson(const Json& doc) {
  std::string fingerprint = ser::CheckEnvelope(doc, ser::kind::kManifest);
  if (!doc.contains("files") || !doc["files"].is_object()) {
    throw ParseError("manifest lacks a files object");
  }
  Manifest m;
  for (const auto& [role, entry] : doc["files"].items()) {
    if (!entry.is_object() || !entry.contains("path") ||
        !entry.contains("fingerprint")) {
      throw ParseError("manifest entry '" + role + "' is malformed");
    }
    std::string fp = entry["fingerprint"].get<std::string>();
    if (fp != fingerprint) {
      throw FingerprintMismatch("manifest entry '" + role +
                                "' uses a different group");
    }
    m.entries[role] = {entry["path"].get<std::string>(), fp};
  }
  return m;
}

void Manifest::Check() const {
  std::map<std::string, fs::path> files;
  for (const auto& [role, entry] : entries) files[role] = entry.path;
  Manifest current = Build(files);
  for (const auto& [role, entry] : entries) {
    if (current.entries.at(role).fingerprint != entry.fingerprint) {
      throw FingerprintMismatch("file for '" + role +
                                "' changed since the manifest was written");
    }
  }
}

std::size_t VerifyReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(),
                    [](const VerifyCase& c) { return !c.ok(); }));
}

VerifyReport VerifyMachine(const tm::TmSpec& spec,
                           const std::vector<std::string>& inputs,
                           const hpkeet::Keys& keys,
                           const blind::Encoding& encoding,
                           const blind::BlindProgram& program, Random& rng) {
  hpkeet::Token token = hpkeet::Authorize(keys.sk);
  VerifyReport report;
  for (const std::string& input : inputs) {
    VerifyCase c;
    c.input = input;
    std::size_t n = InputLength(input);
    try {
      tm::RunResult plain = tm::Run(spec, input, spec.time_bound.Evaluate(n));
      c.expected = plain.halted ? plain.Output(spec) : kRejected;
    } catch (const tm::MachineError&) {
      c.expected = kRejected;
    }
    try {
      std::int64_t bound = BoundFor(program.space_bound, n);
      blind::EncryptedConfiguration conf =
          blind::EncryptTape(input, encoding, program.pk, bound, rng);
      blind::EncryptedConfiguration result =
          blind::BlindRun(program, token, conf, rng);
      c.actual = blind::DecryptTape(keys.sk, encoding, result);
    } catch (const tm::MachineError& e) {
      c.actual = kRejected;
      if (c.expected != kRejected) c.error = e.what();
    } catch (const Error& e) {
      c.error = e.what();
    }
    report.cases.push_back(std::move(c));
  }
  return report;
}

std::string HeadTraceLog(std::int64_t bound, std::uint64_t steps,
                         const std::vector<std::int64_t>& touches) {
  std::ostringstream out;
  out << "blindtm head trace\nbound " << bound << "\nsteps " << steps << "\n";
  std::size_t width = static_cast<std::size_t>(2 * bound + 1);
  for (std::size_t i = 0; i < touches.size(); ++i) {
    if (i % width == 0) out << "step " << i / width << ":";
    out << ' ' << touches[i];
    if (i % width == width - 1 || i + 1 == touches.size()) out << '\n';
  }
  return out.str();
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Blind Turing machines over homomorphic equality-test "
               "encryption",
               "blindtm"};
  app.require_subcommand(1);
  Options o;

  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Deterministic RNG seed");
  };

  CLI::App* keygen = app.add_subcommand("keygen", "Generate group and keys");
  keygen->add_option("--bits", o.bits, "Modulus size in bits");
  keygen->add_option("--out", o.out, "Key file (SECRET)")->required();
  keygen->add_option("--out-public", o.out_public, "Public key file");
  seed(keygen);

  CLI::App* token = app.add_subcommand("token", "Derive the comparison token");
  token->add_option("--keys", o.keys, "Key file")->required();
  token->add_option("--out", o.out, "Token file")->required();

  CLI::App* encrypt = app.add_subcommand("encrypt", "Encrypt an integer");
  encrypt->add_option("--keys", o.keys, "Key file");
  encrypt->add_option("--public", o.public_key, "Public key file");
  encrypt->add_option("--value", o.value, "Plaintext in [0, q)")->required();
  encrypt->add_option("--out", o.out, "Ciphertext file")->required();
  seed(encrypt);

  CLI::App* decrypt = app.add_subcommand("decrypt", "Decrypt to a commitment");
  decrypt->add_option("--keys", o.keys, "Key file")->required();
  decrypt->add_option("--in", o.in, "Ciphertext file")->required();
  decrypt->add_option("--encoding", o.encoding, "Decode with this encoding");

  CLI::App* compare = app.add_subcommand("compare", "Equality test");
  compare->add_option("--token", o.token, "Token file")->required();
  compare->add_option("--a", o.a, "First ciphertext")->required();
  compare->add_option("--b", o.b, "Second ciphertext")->required();

  CLI::App* compile = app.add_subcommand("compile", "Compile a blind machine");
  compile->add_option("--tm", o.tm_path, "Machine description")->required();
  compile->add_option("--keys", o.keys, "Key file");
  compile->add_option("--public", o.public_key, "Public key file");
  compile->add_option("--out-program", o.out_program, "Program file")
      ->required();
  compile->add_option("--out-encoding", o.out_encoding, "Encoding (SECRET)")
      ->required();
  seed(compile);

  CLI::App* encrypt_tape =
      app.add_subcommand("encrypt-tape", "Encrypt an input tape");
  encrypt_tape->add_option("--program", o.program, "Program file")->required();
  encrypt_tape->add_option("--encoding", o.encoding, "Encoding file")
      ->required();
  encrypt_tape->add_option("--input", o.input, "Input word");
  encrypt_tape->add_option("--out", o.out, "Tape file")->required();
  seed(encrypt_tape);

  CLI::App* run = app.add_subcommand("run", "Execute a blind program");
  run->add_option("--program", o.program, "Program file")->required();
  run->add_option("--token", o.token, "Token file")->required();
  run->add_option("--tape", o.tape, "Encrypted tape")->required();
  run->add_option("--out", o.out, "Result tape")->required();
  run->add_option("--trace-log", o.trace_log, "Head-trace log");
  seed(run);

  CLI::App* decrypt_tape =
      app.add_subcommand("decrypt-tape", "Decrypt a result tape");
  decrypt_tape->add_option("--keys", o.keys, "Key file")->required();
  decrypt_tape->add_option("--encoding", o.encoding, "Encoding file")
      ->required();
  decrypt_tape->add_option("--tape", o.tape, "Encrypted tape")->required();
  decrypt_tape->add_flag("--state", o.show_state, "Also print the state");

  CLI::App* verify =
      app.add_subcommand("verify", "Compare blind and plaintext runs");
  verify->add_option("--tm", o.tm_path, "Machine description")->required();
  verify->add_option("--inputs", o.inputs, "Comma-separated words")
      ->delimiter(',');
  verify->add_option("--max-len", o.max_len, "All inputs up to this length");
  verify->add_option("--bits", o.bits, "Group size when generating keys");
  verify->add_option("--keys", o.keys, "Existing key file");
  verify->add_option("--encoding", o.encoding, "Existing encoding file");
  verify->add_option("--program", o.program, "Existing program file");
  seed(verify);

  CLI::App* bench = app.add_subcommand("bench", "Time and count operations");
  bench->add_option("--bits-list", o.bits_list, "Key sizes")->delimiter(',');
  bench->add_option("--iters", o.iters, "Iterations per operation");
  bench->add_option("--csv", o.csv, "CSV output file");
  seed(bench);

  CLI::App* games = app.add_subcommand("games", "Run a security experiment");
  games->add_option("--game", o.game, "ow, ind or multi");
  games->add_option("--adversary", o.adversary,
                    "ow: random-guess, trial-known, trial-secret; "
                    "ind/multi: coin-flip, token-granted, byte-equality");
  games->add_option("--trials", o.trials, "Number of trials");
  games->add_option("--bits", o.bits, "Group size");
  games->add_option("--n", o.n, "Challenges per trial (multi)");
  games->add_option("--mode", o.mode, "fresh or chain (multi)");
  games->add_option("--budget", o.budget, "Oracle query budget");
  games->add_option("--json", o.json_out, "Result file");
  seed(games);

  CLI::App* manifest =
      app.add_subcommand("manifest", "Bind session files together");
  manifest->add_option("--out", o.out, "Manifest file to write");
  manifest->add_option("--check", o.check, "Manifest file to check");
  manifest->add_option("--keys", o.keys, "Key file");
  manifest->add_option("--public", o.public_key, "Public key file");
  manifest->add_option("--token", o.token, "Token file");
  manifest->add_option("--encoding", o.encoding, "Encoding file");
  manifest->add_option("--program", o.program, "Program file");
  manifest->add_option("--tape", o.tape, "Tape file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*keygen) {
      o.bits = keygen->count("--bits") ? o.bits : 256;
      return CmdKeygen(o, out);
    }
    if (*token) return CmdToken(o, out);
    if (*encrypt || *compile) {
      if (o.keys.empty() == o.public_key.empty()) {
        throw UsageError("give exactly one of --keys and --public");
      }
      return *encrypt ? CmdEncrypt(o, out) : CmdCompile(o, out);
    }
    if (*decrypt) return CmdDecrypt(o, out);
    if (*compare) return CmdCompare(o, out);
    if (*encrypt_tape) return CmdEncryptTape(o, out);
    if (*run) return CmdRun(o, out);
    if (*decrypt_tape) return CmdDecryptTape(o, out);
    if (*verify) {
      if (!verify->count("--bits")) o.bits = 64;
      return CmdVerify(o, out);
    }
    if (*bench) return CmdBench(o, out);
    if (*games) {
      if (!games->count("--bits")) o.bits = 96;
      return CmdGames(o, out);
    }
    if (*manifest) return CmdManifest(o, out);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const games::ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CryptoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCrypto;
  } catch (const VerificationMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Json::exception& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace blindtm::cli
