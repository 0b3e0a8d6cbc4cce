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


#include "blindtm/group.h"

#include <algorithm>
#include <cctype>
#include <string_view>

#include "blindtm/digest.h"
#include "blindtm/errors.h"
#include "blindtm/op_counter.h"

namespace blindtm {

struct Group::State {
  GroupParams params;
  mpz_class cofactor;  // (p - 1) / q
  std::size_t element_bytes = 0;
  std::string fingerprint;
};

namespace {

constexpr int kMaxHashAttempts = 256;
constexpr int kMaxGenerationAttempts = 200000;
constexpr std::size_t kMaxSubgroupBits = 256;

bool IsProbablePrime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) > 0;
}

mpz_class PowMod(const mpz_class& base, const mpz_class& e,
                 const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// Counter-mode SHA-256 expansion to `len` bytes.
std::vector<std::uint8_t> Expand(std::span<const std::uint8_t> data,
                                 std::uint8_t attempt, std::size_t len) {
  std::vector<std::uint8_t> out;
  for (std::uint32_t block = 0; out.size() < len; ++block) {
    std::vector<std::uint8_t> input = {'b', 'l', 'i', 'n', 'd', 't', 'm', '/',
                                       'h', '2', 'g', '/', attempt};
    for (int i = 3; i >= 0; --i) {
      input.push_back(static_cast<std::uint8_t>(block >> (8 * i)));
    }
    input.insert(input.end(), data.begin(), data.end());
    Digest d = Sha256(input);
    out.insert(out.end(), d.begin(), d.end());
  }
  out.resize(len);
  return out;
}

mpz_class HashIntoSubgroup(const mpz_class& p, const mpz_class& cofactor,
                           std::span<const std::uint8_t> data) {
  // 128 extra bits make the reduction mod p statistically uniform.
  const std::size_t len = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8 + 16;
  for (int attempt = 0; attempt < kMaxHashAttempts; ++attempt) {
    auto bytes = Expand(data, static_cast<std::uint8_t>(attempt), len);
    mpz_class x;
    mpz_import(x.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    x %= p;
    if (x == 0) continue;
    mpz_class y = PowMod(x, cofactor, p);
    if (y != 1) return y;
  }
  throw Error("hash_to_subgroup: no non-identity element after 256 attempts");
}

mpz_class DeriveSecondGenerator(const mpz_class& p, const mpz_class& q,
                                const mpz_class& g) {
  std::string seed = "blindtm/second-generator/" + ToHex(p) + "/" + ToHex(q) +
                     "/" + ToHex(g);
  mpz_class cofactor = (p - 1) / q;
  return HashIntoSubgroup(
      p, cofactor,
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size()));
}

}  // namespace

std::string ToHex(const mpz_class& v) {
  if (sgn(v) < 0) throw ValidationError("negative value cannot be encoded");
  return v.get_str(16);
}

mpz_class FromHex(const std::string& hex) {
  if (hex.empty()) throw ParseError("empty hex integer");
  if (hex.size() > 1 && hex[0] == '0') {
    throw ParseError("hex integer has leading zeros: " + hex);
  }
  for (char c : hex) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && (c < 'a' || c > 'f')) {
      throw ParseError("hex integer must be lowercase hex: " + hex);
    }
  }
  return mpz_class(hex, 16);
}

Group Group::Build(const GroupParams& params) {
  auto state = std::make_shared<State>();
  state->params = params;
  state->cofactor = (params.p - 1) / params.q;
  state->element_bytes = (mpz_sizeinbase(params.p.get_mpz_t(), 2) + 7) / 8;
  std::string canonical = ToHex(params.p) + ":" + ToHex(params.q) + ":" +
                          ToHex(params.g) + ":" + ToHex(params.h);
  Digest d = Sha256(canonical);
  state->fingerprint = HexEncode(d);
  return Group(std::move(state));
}

Group Group::FromParams(const GroupParams& params) {
  const auto& [p, q, g, h] = params;
  if (p < 5 || q < 2) throw ValidationError("group modulus too small");
  if (!IsProbablePrime(q)) throw ValidationError("q is not prime");
  if (!IsProbablePrime(p)) throw ValidationError("p is not prime");
  if ((p - 1) % q != 0) throw ValidationError("q does not divide p - 1");
  for (const mpz_class* gen : {&g, &h}) {
    if (*gen <= 1 || *gen >= p) {
      throw ValidationError("generator outside [2, p)");
    }
    if (PowMod(*gen, q, p) != 1) {
      throw ValidationError("generator does not have order q");
    }
  }
  if (g == h) throw ValidationError("g and h must be distinct");
  if (h != DeriveSecondGenerator(p, q, g)) {
    throw ValidationError("h is not the hash-derived second generator");
  }
  return Build(params);
}

Group Group::FromPqg(const mpz_class& p, const mpz_class& q,
                     const mpz_class& g) {
  if (q < 2 || p < 5 || (p - 1) % q != 0) {
    throw ValidationError("q does not divide p - 1");
  }
  return FromParams({p, q, g, DeriveSecondGenerator(p, q, g)});
}

Group Group::Generate(std::size_t bits, Random& rng) {
  if (bits < 16) throw ValidationError("group size must be at least 16 bits");
  const std::size_t q_bits = std::min(bits - 2, kMaxSubgroupBits);
  mpz_class p_low = 1;
  p_low <<= bits - 1;
  mpz_class p_high = p_low << 1;  // exclusive

  int attempts = 0;
  while (attempts < kMaxGenerationAttempts) {
    mpz_class q = rng.ExactBits(q_bits);
    if (!IsProbablePrime(q)) {
      ++attempts;
      continue;
    }
    // k ranges over even values with k*q + 1 in [2^(bits-1), 2^bits).
    mpz_class k_min = (p_low + q - 1) / q;
    mpz_class k_max = (p_high - 2) / q;
    if (k_min % 2 != 0) ++k_min;
    if (k_max < k_min) {
      ++attempts;
      continue;
    }
    mpz_class k_slots = (k_max - k_min) / 2 + 1;
    // With few cofactor slots, walk them all once instead of resampling.
    const bool enumerate = k_slots <= static_cast<unsigned long>(4 * bits);
    const int tries_per_q =
        enumerate ? static_cast<int>(k_slots.get_ui())
                  : static_cast<int>(4 * bits);
    for (int t = 0; t < tries_per_q && attempts < kMaxGenerationAttempts;
         ++t, ++attempts) {
      mpz_class k = enumerate ? mpz_class(k_min + 2 * t)
                              : mpz_class(k_min + 2 * rng.UniformBelow(k_slots));
      mpz_class p = k * q + 1;
      if (!IsProbablePrime(p)) continue;
      mpz_class cofactor = (p - 1) / q;
      for (int g_try = 0; g_try < kMaxHashAttempts; ++g_try) {
        mpz_class a = 2 + rng.UniformBelow(p - 3);
        mpz_class g = PowMod(a, cofactor, p);
        if (g == 1) continue;
        mpz_class h = DeriveSecondGenerator(p, q, g);
        if (h == g) continue;
        return FromParams({p, q, g, h});
      }
    }
  }
  throw Error("group parameter generation exceeded its iteration cap");
}

const GroupParams& Group::params() const { return state_->params; }
const std::string& Group::fingerprint() const { return state_->fingerprint; }
std::size_t Group::element_bytes() const { return state_->element_bytes; }

GroupElement Group::g() const { return GroupElement(params().g); }
GroupElement Group::h() const { return GroupElement(params().h); }
GroupElement Group::Identity() const { return GroupElement(1); }

bool Group::Contains(const GroupElement& a) const {
  op_counter_internal::CountExp();
  const mpz_class& v = a.value();
  if (v < 1 || v >= p()) return false;
  return PowMod(v, q(), p()) == 1;
}

GroupElement Group::Element(const mpz_class& value) const {
  GroupElement candidate(value);
  if (!Contains(candidate)) {
    throw ValidationError("value is not in the order-q subgroup");
  }
  return candidate;
}

Scalar Group::MakeScalar(const mpz_class& value) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), q().get_mpz_t());
  return Scalar(std::move(r));
}

Scalar Group::MakeScalar(std::int64_t value) const {
  mpz_class v;
  mpz_set_si(v.get_mpz_t(), static_cast<long>(value));
  return MakeScalar(v);
}

Scalar Group::RandomScalar(Random& rng) const {
  return Scalar(rng.UniformBelow(q()));
}

GroupElement Group::Exp(const GroupElement& base, const Scalar& e) const {
  op_counter_internal::CountExp();
  return GroupElement(PowMod(base.value(), e.value(), p()));
}

GroupElement Group::Mul(const GroupElement& a, const GroupElement& b) const {
  op_counter_internal::CountMul();
  mpz_class r = a.value() * b.value();
  r %= p();
  return GroupElement(std::move(r));
}

GroupElement Group::Inv(const GroupElement& a) const {
  op_counter_internal::CountInv();
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), p().get_mpz_t()) == 0) {
    throw ValidationError("element is not invertible");
  }
  return GroupElement(std::move(r));
}

Scalar Group::Add(const Scalar& a, const Scalar& b) const {
  return MakeScalar(a.value() + b.value());
}
Scalar Group::Sub(const Scalar& a, const Scalar& b) const {
  return MakeScalar(a.value() - b.value());
}
Scalar Group::Neg(const Scalar& a) const { return MakeScalar(-a.value()); }
Scalar Group::MulScalars(const Scalar& a, const Scalar& b) const {
  return MakeScalar(a.value() * b.value());
}

GroupElement Group::HashToSubgroup(std::span<const std::uint8_t> data) const {
  return GroupElement(HashIntoSubgroup(p(), state_->cofactor, data));
}

void Group::AppendFixedWidth(const GroupElement& a,
                             std::vector<std::uint8_t>& out) const {
  const std::size_t width = element_bytes();
  std::size_t count = 0;
  std::vector<std::uint8_t> raw((mpz_sizeinbase(a.value().get_mpz_t(), 2) + 7) /
                                8);
  mpz_export(raw.data(), &count, 1, 1, 1, 0, a.value().get_mpz_t());
  raw.resize(count);
  out.insert(out.end(), width - count, 0);
  out.insert(out.end(), raw.begin(), raw.end());
}

std::vector<std::uint8_t> Group::FixedWidthBytes(const GroupElement& a) const {
  std::vector<std::uint8_t> out;
  out.reserve(element_bytes());
  AppendFixedWidth(a, out);
  return out;
}

}  // namespace blindtm
