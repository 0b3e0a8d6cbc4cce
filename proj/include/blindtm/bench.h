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


#ifndef BLINDTM_BENCH_H_
#define BLINDTM_BENCH_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "blindtm/op_counter.h"
#include "blindtm/random.h"

// Wall-clock timings (advisory) and exact group-operation counts (asserted)
// for the HPKEET and blind-executor primitives.
namespace blindtm::bench {

// Operation names, in report order.
inline constexpr std::string_view kOperations[] = {
    "enc", "dec", "com", "transition-selection", "tape-manipulation"};

// Counts from the complexity table. Throws UsageError for unknown names.
OpCounts ExpectedOpCounts(std::string_view op);

struct BenchRow {
  std::string op;
  std::size_t bits = 0;
  double mean_ms = 0;
  double min_ms = 0;
  double max_ms = 0;
  OpCounts counts;
  OpCounts expected;
  bool counts_match() const { return counts == expected; }
};

struct BenchReport {
  std::vector<BenchRow> rows;

  bool AllCountsMatch() const;
  // Header: op,bits,mean_ms,min_ms,max_ms,exp,mul,inv,E,D
  std::string ToCsv() const;
  std::string ToTable() const;
};

// Generates one group per size from `rng` and measures every operation
// `iters` times. Counts come from one extra, untimed call.
BenchReport RunBench(const std::vector<std::size_t>& bits_list,
                     std::size_t iters, Random& rng);

}  // namespace blindtm::bench

#endif  // BLINDTM_BENCH_H_
