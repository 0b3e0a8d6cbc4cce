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


#ifndef BLINDTM_GROUP_H_
#define BLINDTM_GROUP_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "blindtm/random.h"

namespace blindtm {

class Group;

// Exponent in Z_q. Always reduced.
class Scalar {
 public:
  Scalar() = default;
  const mpz_class& value() const { return value_; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }

 private:
  friend class Group;
  explicit Scalar(mpz_class v) : value_(std::move(v)) {}
  mpz_class value_ = 0;
};

// Member of the order-q subgroup of Z_p^*. Instances are only minted by a
// Group, either from arithmetic or after a membership check.
class GroupElement {
 public:
  GroupElement() = default;
  const mpz_class& value() const { return value_; }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.value_ == b.value_;
  }

 private:
  friend class Group;
  explicit GroupElement(mpz_class v) : value_(std::move(v)) {}
  mpz_class value_ = 1;
};

struct GroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class g;
  mpz_class h;
};

// Miller-Rabin rounds used for every primality decision.
inline constexpr int kPrimalityRounds = 64;

// Schnorr group: the order-q subgroup of Z_p^* with p = k*q + 1, two
// generators g and h. h is derived from (p, q, g) by hashing into the
// subgroup, so nobody knows log_g(h).
//
// Group is a cheap, immutable handle; copies share state and may be used
// concurrently.
class Group {
 public:
  // Searches q first, then p = k*q + 1 of exactly `bits` bits. Accepts
  // bits >= 16. Deterministic in the state of `rng`.
  static Group Generate(std::size_t bits, Random& rng);
  // Validates every invariant, including that h is the hash-derived
  // generator for (p, q, g). Throws ValidationError.
  static Group FromParams(const GroupParams& params);
  // Derives h, then validates.
  static Group FromPqg(const mpz_class& p, const mpz_class& q,
                       const mpz_class& g);

  const GroupParams& params() const;
  const mpz_class& p() const { return params().p; }
  const mpz_class& q() const { return params().q; }
  // SHA-256 over the canonical hex of (p, q, g, h).
  const std::string& fingerprint() const;
  std::size_t element_bytes() const;

  GroupElement g() const;
  GroupElement h() const;
  GroupElement Identity() const;

  // Membership-checked constructors. Throw ValidationError.
  GroupElement Element(const mpz_class& value) const;
  // Counted exponentiation value^q == 1.
  bool Contains(const GroupElement& a) const;

  Scalar MakeScalar(const mpz_class& value) const;
  Scalar MakeScalar(std::int64_t value) const;
  Scalar RandomScalar(Random& rng) const;

  GroupElement Exp(const GroupElement& base, const Scalar& e) const;
  GroupElement Mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement Inv(const GroupElement& a) const;
  // g^e, the commitment to e.
  GroupElement Commit(const Scalar& e) const { return Exp(g(), e); }

  Scalar Add(const Scalar& a, const Scalar& b) const;
  Scalar Sub(const Scalar& a, const Scalar& b) const;
  Scalar Neg(const Scalar& a) const;
  Scalar MulScalars(const Scalar& a, const Scalar& b) const;

  // Hash to Z_p^*, raise to the cofactor (p-1)/q, reject the identity;
  // retries with a counter and gives up after 256 attempts.
  GroupElement HashToSubgroup(std::span<const std::uint8_t> data) const;

  // Big-endian, left-padded to element_bytes().
  std::vector<std::uint8_t> FixedWidthBytes(const GroupElement& a) const;
  void AppendFixedWidth(const GroupElement& a,
                        std::vector<std::uint8_t>& out) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.fingerprint() == b.fingerprint();
  }

 private:
  struct State;
  explicit Group(std::shared_ptr<const State> state)
      : state_(std::move(state)) {}
  static Group Build(const GroupParams& params);
  std::shared_ptr<const State> state_;
};

// Lowercase hex without leading zeros ("0" for zero).
std::string ToHex(const mpz_class& v);
// Throws ParseError on anything but [0-9a-f]+ with no leading zeros.
mpz_class FromHex(const std::string& hex);

}  // namespace blindtm

#endif  // BLINDTM_GROUP_H_
