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


#include "blindtm/tm.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace blindtm::tm {

char MoveToChar(Move m) {
  switch (m) {
    case Move::kLeft:
      return 'L';
    case Move::kRight:
      return 'R';
    case Move::kStay:
      return 'S';
  }
  return 'S';
}

Move MoveFromChar(char c) {
  switch (c) {
    case 'L':
      return Move::kLeft;
    case 'R':
      return Move::kRight;
    case 'S':
      return Move::kStay;
  }
  throw ParseError(std::string("move must be L, R or S, got '") + c + "'");
}

Polynomial::Polynomial(std::vector<std::uint64_t> coefficients)
    : coefficients_(std::move(coefficients)) {}

std::size_t Polynomial::degree() const {
  return coefficients_.empty() ? 0 : coefficients_.size() - 1;
}

std::uint64_t Polynomial::Evaluate(std::uint64_t n) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 0;
  for (std::uint64_t c : coefficients_) {
    if (n != 0 && acc > kMax / n) throw ValidationError("bound overflows");
    acc *= n;
    if (acc > kMax - c) throw ValidationError("bound overflows");
    acc += c;
  }
  return acc;
}

std::string Polynomial::ToString() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out << ' ';
    out << coefficients_[i];
  }
  return out.str();
}

const Rule* TmSpec::Find(const State& state, const Symbol& symbol) const {
  auto it = delta.find({state, symbol});
  return it == delta.end() ? nullptr : &it->second;
}

namespace {

template <typename T>
bool Contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool PolynomialAtLeastOne(const Polynomial& p) {
  // Nonnegative coefficients make p nondecreasing on N, so p(0) decides.
  return !p.coefficients().empty() && p.coefficients().back() >= 1;
}

}  // namespace

void TmSpec::Validate() const {
  if (start.empty()) throw ValidationError("missing start state");
  if (!Contains(states, start)) {
    throw ValidationError("start state '" + start + "' is not a state");
  }
  if (halt.empty()) throw ValidationError("no halting state");
  for (const State& h : halt) {
    if (!Contains(states, h)) {
      throw ValidationError("halting state '" + h + "' is not a state");
    }
  }
  if (!Contains(tape_alphabet, blank)) {
    throw ValidationError("blank symbol missing from tape alphabet");
  }
  for (const Symbol& s : input_alphabet) {
    if (!Contains(tape_alphabet, s)) {
      throw ValidationError("input symbol '" + s + "' not in tape alphabet");
    }
    if (s == blank) throw ValidationError("blank cannot be an input symbol");
  }
  for (const auto& [key, rule] : delta) {
    if (!Contains(states, key.first) || !Contains(states, rule.next)) {
      throw ValidationError("transition references an unknown state");
    }
    if (!Contains(tape_alphabet, key.second) ||
        !Contains(tape_alphabet, rule.write)) {
      throw ValidationError("transition references an unknown symbol");
    }
    if (IsHalting(key.first)) {
      throw ValidationError("transition out of halting state '" + key.first +
                            "'");
    }
  }
  if (!PolynomialAtLeastOne(time_bound)) {
    throw ValidationError("time bound T(n) must be at least 1");
  }
  if (!PolynomialAtLeastOne(space_bound)) {
    throw ValidationError("space bound B(n) must be at least 1");
  }
}

TmParseError::TmParseError(int line, const std::string& what)
    : ParseError("line " + std::to_string(line) + ": " + what), line_(line) {}

StuckError::StuckError(const State& state, const Symbol& symbol,
                       std::uint64_t step)
    : MachineError("no transition for (" + state + ", " + symbol +
                   ") at step " + std::to_string(step)) {}

std::vector<Symbol> SplitSymbols(std::string_view word) {
  std::vector<Symbol> out;
  std::size_t i = 0;
  while (i < word.size()) {
    unsigned char lead = static_cast<unsigned char>(word[i]);
    std::size_t len = lead < 0x80           ? 1
                      : (lead >> 5) == 0x6  ? 2
                      : (lead >> 4) == 0xe  ? 3
                      : (lead >> 3) == 0x1e ? 4
                                            : 0;
    if (len == 0 || i + len > word.size()) {
      throw ParseError("malformed UTF-8 in word");
    }
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(word[i + k]) & 0xc0) != 0x80) {
        throw ParseError("malformed UTF-8 in word");
      }
    }
    out.emplace_back(word.substr(i, len));
    i += len;
  }
  return out;
}

namespace {

std::vector<std::string> Tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

Symbol ParseSymbol(int line, const std::string& token) {
  std::vector<Symbol> parts;
  try {
    parts = SplitSymbols(token);
  } catch (const ParseError&) {
    throw TmParseError(line, "malformed symbol '" + token + "'");
  }
  if (parts.size() != 1) {
    throw TmParseError(line, "symbol must be a single character: '" + token +
                                 "'");
  }
  return parts[0];
}

Polynomial ParsePolynomial(int line, const std::vector<std::string>& tokens) {
  if (tokens.size() < 2) {
    throw TmParseError(line, tokens[0] + " needs at least one coefficient");
  }
  std::vector<std::uint64_t> coefficients;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) {
      throw TmParseError(line, "coefficient must be a nonnegative integer: '" +
                                   t + "'");
    }
    try {
      coefficients.push_back(std::stoull(t));
    } catch (const std::exception&) {
      throw TmParseError(line, "coefficient out of range: '" + t + "'");
    }
  }
  return Polynomial(std::move(coefficients));
}

std::size_t ParseDegree(int line, const std::vector<std::string>& tokens) {
  if (tokens.size() != 2 ||
      !std::all_of(tokens[1].begin(), tokens[1].end(), ::isdigit)) {
    throw TmParseError(line, tokens[0] + " takes one nonnegative integer");
  }
  return std::stoull(tokens[1]);
}

struct Declared {
  std::optional<std::vector<State>> states;
  std::optional<std::vector<Symbol>> alphabet;
  std::optional<std::vector<Symbol>> input;
};

}  // namespace

TmSpec ParseTm(std::string_view text) {
  TmSpec spec;
  Declared declared;
  std::optional<Symbol> blank;
  std::optional<Polynomial> time_bound, space_bound;
  std::optional<std::size_t> time_degree, space_degree;
  int time_line = 0, space_line = 0;
  // Order of first mention, for inferred sets.
  std::vector<State> seen_states;
  std::vector<Symbol> seen_symbols;
  auto note_state = [&](const State& s) {
    if (!Contains(seen_states, s)) seen_states.push_back(s);
  };
  auto note_symbol = [&](const Symbol& s) {
    if (!Contains(seen_symbols, s)) seen_symbols.push_back(s);
  };
  std::map<RuleKey, int> rule_lines;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (head[0] == '#') {
      if (head == "#" || head.rfind("##", 0) == 0) continue;  // comment
      const std::string directive = head.substr(1);
      if (directive == "start") {
        if (tokens.size() != 2) throw TmParseError(lineno, "#start takes one state");
        if (!spec.start.empty()) throw TmParseError(lineno, "duplicate #start");
        spec.start = tokens[1];
        note_state(spec.start);
      } else if (directive == "halt") {
        if (tokens.size() < 2) throw TmParseError(lineno, "#halt needs a state");
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          spec.halt.insert(tokens[i]);
          note_state(tokens[i]);
        }
      } else if (directive == "blank") {
        if (tokens.size() != 2) throw TmParseError(lineno, "#blank takes one symbol");
        if (blank) throw TmParseError(lineno, "duplicate #blank");
        blank = ParseSymbol(lineno, tokens[1]);
      } else if (directive == "time") {
        if (time_bound) throw TmParseError(lineno, "duplicate #time");
        time_bound = ParsePolynomial(lineno, tokens);
        time_line = lineno;
      } else if (directive == "space") {
        if (space_bound) throw TmParseError(lineno, "duplicate #space");
        space_bound = ParsePolynomial(lineno, tokens);
        space_line = lineno;
      } else if (directive == "timedeg") {
        time_degree = ParseDegree(lineno, tokens);
      } else if (directive == "spacedeg") {
        space_degree = ParseDegree(lineno, tokens);
      } else if (directive == "states") {
        std::vector<State> s(tokens.begin() + 1, tokens.end());
        declared.states = std::move(s);
      } else if (directive == "alphabet" || directive == "input") {
        std::vector<Symbol> syms;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          syms.push_back(ParseSymbol(lineno, tokens[i]));
        }
        (directive == "alphabet" ? declared.alphabet : declared.input) =
            std::move(syms);
      } else {
        throw TmParseError(lineno, "unknown directive '" + head + "'");
      }
      continue;
    }
    if (tokens.size() != 6 || tokens[2] != "->") {
      throw TmParseError(lineno,
                         "expected rule 'state symbol -> state symbol move'");
    }
    if (tokens[5].size() != 1) {
      throw TmParseError(lineno, "move must be L, R or S");
    }
    Move move;
    try {
      move = MoveFromChar(tokens[5][0]);
    } catch (const ParseError& e) {
      throw TmParseError(lineno, e.what());
    }
    RuleKey key{tokens[0], ParseSymbol(lineno, tokens[1])};
    Rule rule{tokens[3], ParseSymbol(lineno, tokens[4]), move};
    if (auto it = rule_lines.find(key); it != rule_lines.end()) {
      throw TmParseError(lineno, "duplicate transition for (" + key.first +
                                     ", " + key.second + "), first at line " +
                                     std::to_string(it->second));
    }
    rule_lines[key] = lineno;
    note_state(key.first);
    note_state(rule.next);
    note_symbol(key.second);
    note_symbol(rule.write);
    spec.delta.emplace(std::move(key), std::move(rule));
  }

  const int end = lineno + 1;
  if (spec.start.empty()) throw TmParseError(end, "missing start directive");
  if (spec.halt.empty()) throw TmParseError(end, "missing halt directive");
  if (!time_bound) throw TmParseError(end, "missing time directive");
  if (!space_bound) throw TmParseError(end, "missing space directive");
  if (time_degree && *time_degree != time_bound->degree()) {
    throw TmParseError(time_line, "#time coefficients disagree with #timedeg");
  }
  if (space_degree && *space_degree != space_bound->degree()) {
    throw TmParseError(space_line,
                       "#space coefficients disagree with #spacedeg");
  }
  spec.blank = blank.value_or("_");
  spec.time_bound = *time_bound;
  spec.space_bound = *space_bound;

  if (declared.states) {
    spec.states = *declared.states;
    for (const State& s : seen_states) {
      if (!Contains(spec.states, s)) {
        int at = 0;
        for (const auto& [k, l] : rule_lines) {
          if (k.first == s || spec.delta.at(k).next == s) at = at ? at : l;
        }
        throw TmParseError(at ? at : end, "unknown state '" + s + "'");
      }
    }
  } else {
    spec.states = seen_states;
  }

  if (declared.alphabet) {
    spec.tape_alphabet = *declared.alphabet;
    if (!Contains(spec.tape_alphabet, spec.blank)) {
      spec.tape_alphabet.push_back(spec.blank);
    }
    for (const Symbol& s : seen_symbols) {
      if (!Contains(spec.tape_alphabet, s)) {
        int at = 0;
        for (const auto& [k, l] : rule_lines) {
          if (k.second == s || spec.delta.at(k).write == s) at = at ? at : l;
        }
        throw TmParseError(at ? at : end, "unknown symbol '" + s + "'");
      }
    }
  } else {
    spec.tape_alphabet = seen_symbols;
    if (!Contains(spec.tape_alphabet, spec.blank)) {
      spec.tape_alphabet.push_back(spec.blank);
    }
  }

  if (declared.input) {
    spec.input_alphabet = *declared.input;
    for (const Symbol& s : spec.input_alphabet) {
      if (!Contains(spec.tape_alphabet, s)) {
        throw TmParseError(end, "unknown symbol '" + s + "' in #input");
      }
    }
  } else {
    for (const Symbol& s : spec.tape_alphabet) {
      if (s != spec.blank) spec.input_alphabet.push_back(s);
    }
  }

  for (const auto& [key, l] : rule_lines) {
    if (spec.IsHalting(key.first)) {
      throw TmParseError(l, "transition out of halting state '" + key.first +
                                "'");
    }
  }
  try {
    spec.Validate();
  } catch (const ValidationError& e) {
    throw TmParseError(end, e.what());
  }
  return spec;
}

TmSpec LoadTm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open machine file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseTm(buf.str());
}

std::string FormatTm(const TmSpec& spec) {
  std::ostringstream out;
  out << "#states";
  for (const State& s : spec.states) out << ' ' << s;
  out << "\n#alphabet";
  for (const Symbol& s : spec.tape_alphabet) out << ' ' << s;
  out << "\n#input";
  for (const Symbol& s : spec.input_alphabet) out << ' ' << s;
  out << "\n#blank " << spec.blank << "\n#start " << spec.start << "\n#halt";
  for (const State& h : spec.halt) out << ' ' << h;
  out << "\n#time " << spec.time_bound.ToString() << "\n#space "
      << spec.space_bound.ToString() << "\n";
  for (const auto& [key, rule] : spec.delta) {
    out << key.first << ' ' << key.second << " -> " << rule.next << ' '
        << rule.write << ' ' << MoveToChar(rule.move) << "\n";
  }
  return out.str();
}

const Symbol& Configuration::Read(const Symbol& blank) const {
  auto it = tape.find(head);
  return it == tape.end() ? blank : it->second;
}

void Configuration::Write(const Symbol& symbol, const Symbol& blank) {
  if (symbol == blank) {
    tape.erase(head);
  } else {
    tape[head] = symbol;
  }
}

Configuration InitialConfiguration(const TmSpec& spec, std::string_view input) {
  Configuration conf;
  conf.state = spec.start;
  std::int64_t i = 0;
  for (const Symbol& s : SplitSymbols(input)) {
    if (!Contains(spec.input_alphabet, s)) {
      throw ValidationError("input symbol '" + s +
                            "' is not in the input alphabet");
    }
    conf.tape[i++] = s;
  }
  return conf;
}

Configuration Step(const TmSpec& spec, const Configuration& conf) {
  if (spec.IsHalting(conf.state)) {
    throw MachineError("cannot step from halting state '" + conf.state + "'");
  }
  const Symbol& read = conf.Read(spec.blank);
  const Rule* rule = spec.Find(conf.state, read);
  if (rule == nullptr) throw StuckError(conf.state, read, 0);
  Configuration next = conf;
  next.Write(rule->write, spec.blank);
  next.state = rule->next;
  if (rule->move == Move::kLeft) --next.head;
  if (rule->move == Move::kRight) ++next.head;
  return next;
}

std::string TapeContents(const TmSpec& spec, const Configuration& conf) {
  if (conf.tape.empty()) return "";
  // Blanks are never stored, so the first and last entries are non-blank.
  std::int64_t lo = conf.tape.begin()->first;
  std::int64_t hi = conf.tape.rbegin()->first;
  std::string out;
  for (std::int64_t i = lo; i <= hi; ++i) {
    auto it = conf.tape.find(i);
    out += it == conf.tape.end() ? spec.blank : it->second;
  }
  return out;
}

RunResult Run(const TmSpec& spec, std::string_view input,
              std::uint64_t max_steps, bool record_trace) {
  RunResult result;
  Configuration conf = InitialConfiguration(spec, input);
  while (!spec.IsHalting(conf.state) && result.steps < max_steps) {
    const Symbol& read = conf.Read(spec.blank);
    const Rule* rule = spec.Find(conf.state, read);
    if (rule == nullptr) throw StuckError(conf.state, read, result.steps);
    if (record_trace) {
      result.trace.push_back({conf.state, conf.head, rule->write});
    }
    conf = Step(spec, conf);
    ++result.steps;
    result.min_head = std::min(result.min_head, conf.head);
    result.max_head = std::max(result.max_head, conf.head);
  }
  result.halted = spec.IsHalting(conf.state);
  result.final_configuration = std::move(conf);
  return result;
}

BoundsReport CheckBounds(const TmSpec& spec,
                         const std::vector<std::string>& inputs) {
  BoundsReport report;
  for (const std::string& input : inputs) {
    ++report.inputs_checked;
    const std::uint64_t n = SplitSymbols(input).size();
    const std::uint64_t time = spec.time_bound.Evaluate(n);
    const std::int64_t space =
        static_cast<std::int64_t>(spec.space_bound.Evaluate(n));
    if (static_cast<std::int64_t>(n) > space) {
      report.violations.push_back({input, "input longer than B(n)"});
      continue;
    }
    RunResult r;
    try {
      r = Run(spec, input, time);
    } catch (const StuckError& e) {
      report.violations.push_back({input, e.what()});
      continue;
    }
    report.max_steps_seen = std::max(report.max_steps_seen, r.steps);
    if (!r.halted) {
      report.violations.push_back(
          {input, "did not halt within T(n) = " + std::to_string(time)});
      continue;
    }
    if (r.min_head < -space || r.max_head > space) {
      report.violations.push_back(
          {input, "head left [-B(n), B(n)] with B(n) = " +
                      std::to_string(space)});
    }
  }
  return report;
}

std::vector<std::string> AllInputs(const TmSpec& spec, std::size_t max_len) {
  std::vector<std::string> out = {""};
  std::vector<std::string> frontier = {""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& w : frontier) {
      for (const Symbol& s : spec.input_alphabet) next.push_back(w + s);
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace blindtm::tm
