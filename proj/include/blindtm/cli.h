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


#ifndef BLINDTM_CLI_H_
#define BLINDTM_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "blindtm/blind.h"
#include "blindtm/hpkeet.h"
#include "blindtm/random.h"
#include "blindtm/serialization.h"
#include "blindtm/tm.h"

// The blindtm command-line tool: key management, machine compilation, the
// data-owner / service-provider hand-off through files, and the
// verification, benchmark and security-game harnesses.
namespace blindtm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitCrypto = 3,
  kExitMismatch = 4,
};

// Binds the files of one session. Every entry is a role ("keys", "token",
// "encoding", "program", "tape", ...) mapped to a path and the fingerprint
// found in that file.
struct Manifest {
  struct Entry {
    std::filesystem::path path;
    std::string fingerprint;
  };
  std::map<std::string, Entry> entries;

  // Reads each file's envelope. Throws FingerprintMismatch unless all
  // fingerprints agree.
  static Manifest Build(
      const std::map<std::string, std::filesystem::path>& files);
  serialization::Json ToJson() const;
  static Manifest FromJson(const serialization::Json& doc);
  // Re-reads every file and checks it still carries its recorded
  // fingerprint and that all fingerprints agree.
  void Check() const;
};

struct VerifyCase {
  std::string input;
  std::string expected;
  std::string actual;
  // Set when the blind pipeline threw.
  std::string error;
  bool ok() const { return error.empty() && expected == actual; }
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  std::size_t mismatches() const;
};

// Plaintext reference run versus encrypt-tape / blind run / decrypt for
// every input. Inputs on which the plaintext machine does not halt within
// T(n) expect the blind run to fail.
VerifyReport VerifyMachine(const tm::TmSpec& spec,
                           const std::vector<std::string>& inputs,
                           const hpkeet::Keys& keys,
                           const blind::Encoding& encoding,
                           const blind::BlindProgram& program, Random& rng);

// One newline-terminated line per logical step listing the touched
// positions, preceded by a header with B and T.
std::string HeadTraceLog(std::int64_t bound, std::uint64_t steps,
                         const std::vector<std::int64_t>& touches);

// Entry point shared by the binary and the tests. `args` excludes argv[0].
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace blindtm::cli

#endif  // BLINDTM_CLI_H_
