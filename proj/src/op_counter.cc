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


#include "blindtm/op_counter.h"

#include <sstream>

namespace blindtm {
namespace {

thread_local OpCounts tls_counts;
thread_local int tls_suppress_depth = 0;

}  // namespace

OpCounts& OpCounts::operator+=(const OpCounts& other) {
  exp += other.exp;
  mul += other.mul;
  inv += other.inv;
  base_keygen += other.base_keygen;
  base_encrypt += other.base_encrypt;
  base_decrypt += other.base_decrypt;
  table_lookups += other.table_lookups;
  table_scans += other.table_scans;
  return *this;
}

OpCounts operator-(const OpCounts& a, const OpCounts& b) {
  OpCounts d;
  d.exp = a.exp - b.exp;
  d.mul = a.mul - b.mul;
  d.inv = a.inv - b.inv;
  d.base_keygen = a.base_keygen - b.base_keygen;
  d.base_encrypt = a.base_encrypt - b.base_encrypt;
  d.base_decrypt = a.base_decrypt - b.base_decrypt;
  d.table_lookups = a.table_lookups - b.table_lookups;
  d.table_scans = a.table_scans - b.table_scans;
  return d;
}

std::string OpCounts::ToString() const {
  std::ostringstream out;
  out << "G=" << base_keygen << " E=" << base_encrypt << " D=" << base_decrypt
      << " e=" << exp << " i=" << inv << " m=" << mul
      << " lookups=" << table_lookups << " scans=" << table_scans;
  return out.str();
}

OpCounts CurrentOpCounts() { return tls_counts; }

void ResetOpCounts() { tls_counts = OpCounts{}; }

namespace op_counter_internal {

void CountExp() {
  if (tls_suppress_depth == 0) ++tls_counts.exp;
}
void CountMul() {
  if (tls_suppress_depth == 0) ++tls_counts.mul;
}
void CountInv() {
  if (tls_suppress_depth == 0) ++tls_counts.inv;
}
void CountTableLookup() { ++tls_counts.table_lookups; }
void CountTableScan() { ++tls_counts.table_scans; }

}  // namespace op_counter_internal

BaseOpScope::BaseOpScope(BaseOp op) {
  if (tls_suppress_depth == 0) {
    switch (op) {
      case BaseOp::kKeygen:
        ++tls_counts.base_keygen;
        break;
      case BaseOp::kEncrypt:
        ++tls_counts.base_encrypt;
        break;
      case BaseOp::kDecrypt:
        ++tls_counts.base_decrypt;
        break;
    }
  }
  ++tls_suppress_depth;
}

BaseOpScope::~BaseOpScope() { --tls_suppress_depth; }

CompositeMulScope::CompositeMulScope() {
  op_counter_internal::CountMul();
  ++tls_suppress_depth;
}

CompositeMulScope::~CompositeMulScope() { --tls_suppress_depth; }

}  // namespace blindtm
