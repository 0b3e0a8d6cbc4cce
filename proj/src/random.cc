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


#include "blindtm/random.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "blindtm/digest.h"

namespace blindtm {

struct Random::CipherState {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~CipherState() { EVP_CIPHER_CTX_free(ctx); }
};

Random::Random(const std::array<std::uint8_t, 32>& key)
    : key_(key), state_(std::make_unique<CipherState>()) {
  state_->ctx = EVP_CIPHER_CTX_new();
  std::array<std::uint8_t, 16> iv{};
  if (state_->ctx == nullptr ||
      EVP_EncryptInit_ex(state_->ctx, EVP_chacha20(), nullptr, key_.data(),
                         iv.data()) != 1) {
    throw std::runtime_error("chacha20 initialisation failed");
  }
  offset_ = buffer_.size();
}

Random::Random(Random&&) noexcept = default;
Random& Random::operator=(Random&&) noexcept = default;
Random::~Random() = default;

Random Random::FromKey(const std::array<std::uint8_t, 32>& key) {
  return Random(key);
}

Random Random::FromSeed(std::uint64_t seed) {
  std::string material = "blindtm/seed/";
  for (int i = 0; i < 8; ++i) {
    material.push_back(static_cast<char>((seed >> (8 * i)) & 0xff));
  }
  return Random(Sha256(material));
}

Random Random::FromEntropy() {
  std::array<std::uint8_t, 32> key;
  if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1) {
    throw std::runtime_error("system entropy unavailable");
  }
  return Random(key);
}

Random Random::Fork(std::uint64_t stream_id) const {
  std::vector<std::uint8_t> material(key_.begin(), key_.end());
  const char tag[] = "blindtm/fork/";
  material.insert(material.end(), tag, tag + sizeof(tag) - 1);
  for (int i = 0; i < 8; ++i) {
    material.push_back(static_cast<std::uint8_t>((stream_id >> (8 * i)) & 0xff));
  }
  return Random(Sha256(material));
}

void Random::Refill() {
  std::array<std::uint8_t, 4096> zeros{};
  int produced = 0;
  if (EVP_EncryptUpdate(state_->ctx, buffer_.data(), &produced, zeros.data(),
                        static_cast<int>(zeros.size())) != 1 ||
      produced != static_cast<int>(buffer_.size())) {
    throw std::runtime_error("chacha20 keystream failure");
  }
  offset_ = 0;
}

void Random::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (offset_ == buffer_.size()) Refill();
    std::size_t n = std::min(out.size() - done, buffer_.size() - offset_);
    std::memcpy(out.data() + done, buffer_.data() + offset_, n);
    offset_ += n;
    done += n;
  }
}

std::uint64_t Random::NextU64() {
  std::array<std::uint8_t, 8> b;
  Fill(b);
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

bool Random::NextBit() { return (NextU64() & 1) != 0; }

std::uint64_t Random::UniformBelow(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: zero bound");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

mpz_class Random::UniformBelow(const mpz_class& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("UniformBelow: bound <= 0");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t bytes = (bits + 7) / 8;
  const unsigned top_mask = bits % 8 == 0 ? 0xffu : (1u << (bits % 8)) - 1;
  std::vector<std::uint8_t> buf(bytes);
  mpz_class candidate;
  for (;;) {
    Fill(buf);
    buf[0] &= static_cast<std::uint8_t>(top_mask);
    mpz_import(candidate.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (candidate < bound) return candidate;
  }
}

mpz_class Random::ExactBits(std::size_t bits) {
  if (bits == 0) throw std::invalid_argument("ExactBits: zero width");
  mpz_class bound = 1;
  bound <<= bits - 1;
  mpz_class v = UniformBelow(bound);
  return v + bound;
}

}  // namespace blindtm
