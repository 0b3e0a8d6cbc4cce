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


#ifndef BLINDTM_OP_COUNTER_H_
#define BLINDTM_OP_COUNTER_H_

#include <cstdint>
#include <string>

namespace blindtm {

// Group-operation tallies in the vocabulary of the complexity table:
// e/i/m are exponentiations, inversions and multiplications in the
// ciphertext group; G/E/D are invocations of the base cipher's key
// generation, encryption and decryption. Work performed *inside* a base
// cipher call is attributed to that call only, so an HPKEET encryption
// reads as "2 E + 2 e + 1 m" rather than a flat exponentiation count.
struct OpCounts {
  std::uint64_t exp = 0;
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t base_keygen = 0;
  std::uint64_t base_encrypt = 0;
  std::uint64_t base_decrypt = 0;
  // Transition-table accesses: keyed lookups versus linear scans.
  std::uint64_t table_lookups = 0;
  std::uint64_t table_scans = 0;

  OpCounts& operator+=(const OpCounts& other);
  friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
  friend OpCounts operator-(const OpCounts& a, const OpCounts& b);
  friend bool operator==(const OpCounts&, const OpCounts&) = default;

  std::uint64_t GroupOps() const { return exp + mul + inv; }
  std::string ToString() const;
};

// Counters are thread-local; callers merge snapshots from several threads
// with operator+.
OpCounts CurrentOpCounts();
void ResetOpCounts();

namespace op_counter_internal {
void CountExp();
void CountMul();
void CountInv();
void CountTableLookup();
void CountTableScan();
}  // namespace op_counter_internal

enum class BaseOp { kKeygen, kEncrypt, kDecrypt };

// Marks the dynamic extent of one base-cipher call. Only the outermost
// scope is tallied, and group operations issued while any scope is open are
// not.
class BaseOpScope {
 public:
  explicit BaseOpScope(BaseOp op);
  ~BaseOpScope();
  BaseOpScope(const BaseOpScope&) = delete;
  BaseOpScope& operator=(const BaseOpScope&) = delete;
};

// A product of two base ciphertexts is one multiplication in the ciphertext
// group, however many big-integer products it takes.
class CompositeMulScope {
 public:
  CompositeMulScope();
  ~CompositeMulScope();
  CompositeMulScope(const CompositeMulScope&) = delete;
  CompositeMulScope& operator=(const CompositeMulScope&) = delete;
};

// Measures the operations issued by the current thread between
// construction and Delta().
class OpCountWindow {
 public:
  OpCountWindow() : start_(CurrentOpCounts()) {}
  OpCounts Delta() const { return CurrentOpCounts() - start_; }

 private:
  OpCounts start_;
};

}  // namespace blindtm

#endif  // BLINDTM_OP_COUNTER_H_
