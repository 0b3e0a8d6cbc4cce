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


#include "blindtm/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "blindtm/blind.h"
#include "blindtm/errors.h"
#include "blindtm/group.h"
#include "blindtm/hpkeet.h"
#include "blindtm/tm.h"

namespace blindtm::bench {

namespace {

constexpr char kProbeMachine[] =
    "#start s\n"
    "#halt h\n"
    "#alphabet 0 1 _\n"
    "#input 0 1\n"
    "#time 2\n"
    "#space 1\n"
    "s 0 -> h 1 S\n"
    "s 1 -> h 0 S\n"
    "s _ -> h 1 S\n";

OpCounts Unblind() {
  OpCounts c;
  c.base_decrypt = 1;
  c.exp = 1;
  c.inv = 1;
  c.mul = 1;
  return c;
}

BenchRow Measure(std::string op, std::size_t bits, std::size_t iters,
                 const std::function<void()>& fn) {
  BenchRow row;
  row.op = std::move(op);
  row.bits = bits;
  row.expected = ExpectedOpCounts(row.op);
  {
    OpCountWindow window;
    fn();
    row.counts = window.Delta();
  }
  double total = 0;
  row.min_ms = std::numeric_limits<double>::infinity();
  row.max_ms = 0;
  for (std::size_t i = 0; i < iters; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    total += elapsed.count();
    row.min_ms = std::min(row.min_ms, elapsed.count());
    row.max_ms = std::max(row.max_ms, elapsed.count());
  }
  if (iters == 0) row.min_ms = 0;
  row.mean_ms = iters == 0 ? 0 : total / static_cast<double>(iters);
  return row;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

OpCounts ExpectedOpCounts(std::string_view op) {
  OpCounts c;
  if (op == "enc") {
    c.base_encrypt = 2;
    c.exp = 2;
    c.mul = 1;
  } else if (op == "dec") {
    // The exponentiation is the subgroup check on c2.
    c.base_decrypt = 2;
    c.exp = 1;
    c.mul = 1;
  } else if (op == "com") {
    c = Unblind() + Unblind();
  } else if (op == "transition-selection") {
    c = Unblind() + Unblind();
    c.table_lookups = 1;
  } else if (op == "tape-manipulation") {
    c.mul = 3;
  } else {
    throw UsageError("unknown benchmark operation '" + std::string(op) + "'");
  }
  return c;
}

bool BenchReport::AllCountsMatch() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.counts_match(); });
}

std::string BenchReport::ToCsv() const {
  std::ostringstream out;
  out << "op,bits,mean_ms,min_ms,max_ms,exp,mul,inv,E,D\n";
  for (const BenchRow& r : rows) {
    out << r.op << ',' << r.bits << ',' << Fixed(r.mean_ms) << ','
        << Fixed(r.min_ms) << ',' << Fixed(r.max_ms) << ',' << r.counts.exp
        << ',' << r.counts.mul << ',' << r.counts.inv << ','
        << r.counts.base_encrypt << ',' << r.counts.base_decrypt << '\n';
  }
  return out.str();
}

std::string BenchReport::ToTable() const {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof(line), "%-22s %6s %10s %10s %10s  %-52s %s\n",
                "operation", "bits", "mean ms", "min ms", "max ms", "counts",
                "table");
  out << line;
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-22s %6zu %10.4f %10.4f %10.4f  %-52s %s\n",
                  r.op.c_str(), r.bits, r.mean_ms, r.min_ms, r.max_ms,
                  r.counts.ToString().c_str(),
                  r.counts_match() ? "ok" : "MISMATCH");
    out << line;
  }
  return out.str();
}

BenchReport RunBench(const std::vector<std::size_t>& bits_list,
                     std::size_t iters, Random& rng) {
  BenchReport report;
  tm::TmSpec probe = tm::ParseTm(kProbeMachine);
  for (std::size_t bits : bits_list) {
    Group group = Group::Generate(bits, rng);
    hpkeet::Keys keys = hpkeet::Keygen(group, rng);
    hpkeet::Token token = hpkeet::Authorize(keys.sk);
    Scalar m = group.RandomScalar(rng);
    hpkeet::Ciphertext a = hpkeet::Encrypt(keys.pk, m, rng);
    hpkeet::Ciphertext b = hpkeet::Encrypt(keys.pk, m, rng);

    report.rows.push_back(Measure("enc", bits, iters, [&] {
      hpkeet::Encrypt(keys.pk, m, rng);
    }));
    report.rows.push_back(Measure("dec", bits, iters, [&] {
      if (!hpkeet::Decrypt(keys.sk, a)) throw CryptoError("bench decrypt");
    }));
    report.rows.push_back(Measure("com", bits, iters, [&] {
      if (!hpkeet::Compare(token, a, b)) throw CryptoError("bench compare");
    }));

    blind::Encoding encoding = blind::Encoding::Make(probe, group, rng);
    blind::BlindProgram program =
        blind::Compile(probe, encoding, keys.pk, rng);
    blind::EncryptedConfiguration conf =
        blind::EncryptTape("1", encoding, keys.pk, 1, rng);
    report.rows.push_back(
        Measure("transition-selection", bits, iters, [&] {
          blind::Selection s = blind::SelectTransition(
              program, token, conf.state, conf.Cell(0), 0);
          if (s.halted || s.entry == nullptr) {
            throw CryptoError("bench selection");
          }
        }));
    const blind::ProgramEntry* entry =
        blind::SelectTransition(program, token, conf.state, conf.Cell(0), 0)
            .entry;
    report.rows.push_back(Measure("tape-manipulation", bits, iters, [&] {
      hpkeet::HomAdd(group, conf.Cell(0), entry->delta_symbol);
    }));
  }
  return report;
}

}  // namespace blindtm::bench
