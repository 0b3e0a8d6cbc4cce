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


#ifndef BLINDTM_TESTS_ORACLE_TOY_ORACLE_H_
#define BLINDTM_TESTS_ORACLE_TOY_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

// Brute-force reference arithmetic and reference machine semantics. Nothing
// here touches the library: exponentiation is repeated multiplication,
// inversion is exhaustive search, and machine outputs come from integer
// arithmetic rather than from running a Turing machine.
namespace blindtm::oracle {

inline std::uint64_t MulMod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) %
                                    p);
}

// Repeated multiplication; only for toy exponents.
inline std::uint64_t SlowPow(std::uint64_t base, std::uint64_t e,
                             std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  for (std::uint64_t i = 0; i < e; ++i) acc = MulMod(acc, base, p);
  return acc;
}

inline std::uint64_t SlowInverse(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x) {
    if (MulMod(a, x, p) == 1) return x;
  }
  return 0;
}

// Members of the order-q subgroup of Z_p^*, by enumeration.
inline std::vector<std::uint64_t> SubgroupMembers(std::uint64_t p,
                                                  std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x < p; ++x) {
    if (SlowPow(x, q, p) == 1) out.push_back(x);
  }
  return out;
}

struct ToyDegCiphertext {
  std::uint64_t u, v, w;
};

inline ToyDegCiphertext ToyDegEncrypt(std::uint64_t p, std::uint64_t g,
                                      std::uint64_t x1, std::uint64_t x2,
                                      std::uint64_t r, std::uint64_t msg) {
  std::uint64_t y1 = SlowPow(g, x1, p);
  std::uint64_t y2 = SlowPow(g, x2, p);
  return {SlowPow(g, r, p), SlowPow(y1, r, p),
          MulMod(SlowPow(y2, r, p), msg, p)};
}

// MSB-first binary increment keeping the input width unless it overflows.
inline std::string IncrementOracle(const std::string& bits) {
  std::uint64_t v = 0;
  for (char c : bits) v = 2 * v + static_cast<std::uint64_t>(c == '1');
  ++v;
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + (v & 1)));
    v >>= 1;
  }
  while (out.size() < bits.size()) out.insert(out.begin(), '0');
  return out;
}

inline std::string ParityOracle(const std::string& bits) {
  int ones = 0;
  for (char c : bits) ones += c == '1';
  return ones % 2 ? "1" : "0";
}

// Sum of the unary summands.
inline std::string UnaryAddOracle(const std::string& word) {
  std::size_t ones = 0;
  for (char c : word) ones += c == '1';
  return std::string(ones, '1');
}

}  // namespace blindtm::oracle

#endif  // BLINDTM_TESTS_ORACLE_TOY_ORACLE_H_
