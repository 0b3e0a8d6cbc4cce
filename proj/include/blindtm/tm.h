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


#ifndef BLINDTM_TM_H_
#define BLINDTM_TM_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blindtm/errors.h"

// Deterministic single-tape Turing machines over a two-way infinite tape.
// This is the plaintext reference that every blind execution is checked
// against.
namespace blindtm::tm {

using State = std::string;
// One UTF-8 code point.
using Symbol = std::string;

enum class Move { kLeft, kRight, kStay };

char MoveToChar(Move m);
Move MoveFromChar(char c);  // throws ParseError

// Polynomial with nonnegative integer coefficients, highest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::uint64_t> coefficients);

  const std::vector<std::uint64_t>& coefficients() const {
    return coefficients_;
  }
  std::size_t degree() const;
  // Throws ValidationError on 64-bit overflow.
  std::uint64_t Evaluate(std::uint64_t n) const;
  std::string ToString() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<std::uint64_t> coefficients_;
};

struct Rule {
  State next;
  Symbol write;
  Move move = Move::kStay;
  friend bool operator==(const Rule&, const Rule&) = default;
};

using RuleKey = std::pair<State, Symbol>;

struct TmSpec {
  std::vector<State> states;
  std::vector<Symbol> tape_alphabet;
  std::vector<Symbol> input_alphabet;
  Symbol blank = "_";
  State start;
  std::set<State> halt;
  std::map<RuleKey, Rule> delta;
  Polynomial time_bound;
  Polynomial space_bound;

  const Rule* Find(const State& state, const Symbol& symbol) const;
  bool IsHalting(const State& state) const { return halt.contains(state); }
  // Throws ValidationError naming the first broken invariant.
  void Validate() const;
};

// Thrown for line-level DSL problems.
class TmParseError : public ParseError {
 public:
  TmParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Step from a halting state, or no rule for (state, symbol).
class MachineError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StuckError : public MachineError {
 public:
  StuckError(const State& state, const Symbol& symbol, std::uint64_t step);
};

TmSpec ParseTm(std::string_view text);
TmSpec LoadTm(const std::filesystem::path& path);
// Writes the DSL form; ParseTm(FormatTm(s)) reproduces s.
std::string FormatTm(const TmSpec& spec);

// Splits a word into code points. Throws ParseError on malformed UTF-8.
std::vector<Symbol> SplitSymbols(std::string_view word);

struct Configuration {
  State state;
  std::map<std::int64_t, Symbol> tape;  // absent cells are blank
  std::int64_t head = 0;

  const Symbol& Read(const Symbol& blank) const;
  void Write(const Symbol& symbol, const Symbol& blank);
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Input laid out at cells 0..n-1, head on cell 0. Throws ValidationError on
// symbols outside the input alphabet.
Configuration InitialConfiguration(const TmSpec& spec, std::string_view input);

Configuration Step(const TmSpec& spec, const Configuration& conf);

// Non-blank span of the tape with leading and trailing blanks removed.
std::string TapeContents(const TmSpec& spec, const Configuration& conf);

struct TraceEntry {
  State state;
  std::int64_t head = 0;
  Symbol written;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RunResult {
  Configuration final_configuration;
  std::uint64_t steps = 0;
  bool halted = false;
  std::int64_t min_head = 0;
  std::int64_t max_head = 0;
  std::vector<TraceEntry> trace;

  std::string Output(const TmSpec& spec) const {
    return TapeContents(spec, final_configuration);
  }
};

// Steps until a halting state or `max_steps`. A missing rule throws
// StuckError.
RunResult Run(const TmSpec& spec, std::string_view input,
              std::uint64_t max_steps, bool record_trace = false);

struct BoundViolation {
  std::string input;
  std::string reason;
};

struct BoundsReport {
  std::size_t inputs_checked = 0;
  std::uint64_t max_steps_seen = 0;
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Runs every input and checks steps <= T(|w|), |w| <= B(|w|) and that the
// head stays within [-B(|w|), B(|w|)].
BoundsReport CheckBounds(const TmSpec& spec,
                         const std::vector<std::string>& inputs);

// All words over the input alphabet of length 0..max_len, shortest first.
std::vector<std::string> AllInputs(const TmSpec& spec, std::size_t max_len);

}  // namespace blindtm::tm

#endif  // BLINDTM_TM_H_
