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


#ifndef BLINDTM_RANDOM_H_
#define BLINDTM_RANDOM_H_

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

namespace blindtm {

// ChaCha20 keystream generator. Seeded instances are fully reproducible;
// FromEntropy() keys the stream from the operating system.
//
// Instances are move-only and must not be shared between threads; use
// Fork() to derive independent streams.
class Random {
 public:
  static Random FromSeed(std::uint64_t seed);
  static Random FromEntropy();
  static Random FromKey(const std::array<std::uint8_t, 32>& key);

  Random(Random&&) noexcept;
  Random& operator=(Random&&) noexcept;
  ~Random();

  // Independent child stream, a deterministic function of this stream's key
  // and `stream_id`. Does not advance this stream.
  Random Fork(std::uint64_t stream_id) const;

  void Fill(std::span<std::uint8_t> out);
  std::uint64_t NextU64();
  bool NextBit();
  // Uniform integer in [0, bound). `bound` must be positive.
  mpz_class UniformBelow(const mpz_class& bound);
  std::uint64_t UniformBelow(std::uint64_t bound);
  // Uniform integer with exactly `bits` bits (top bit set).
  mpz_class ExactBits(std::size_t bits);

 private:
  explicit Random(const std::array<std::uint8_t, 32>& key);
  void Refill();

  struct CipherState;
  std::array<std::uint8_t, 32> key_{};
  std::unique_ptr<CipherState> state_;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t offset_ = 0;
};

}  // namespace blindtm

#endif  // BLINDTM_RANDOM_H_
