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


#ifndef BLINDTM_HPKEET_H_
#define BLINDTM_HPKEET_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "blindtm/deg.h"
#include "blindtm/group.h"
#include "blindtm/random.h"

// Homomorphic public-key encryption with equality test.
//
// A ciphertext of m is
//   c1 = E_pk1(g^m),  c2 = g^m * h^r,  c3 = E_pk2(h^r)
// under two independent Damgard-ElGamal key pairs. Componentwise products
// add plaintexts (and randomizers) in Z_q; holders of the token sk2 can
// strip the blinding h^r from c2 and compare the bare commitments g^m.
namespace blindtm::hpkeet {

struct PublicKey {
  Group group;
  deg::PublicKey pk1;
  deg::PublicKey pk2;
};

struct SecretKey {
  Group group;
  deg::SecretKey sk1;
  deg::SecretKey sk2;
};

struct Keys {
  PublicKey pk;
  SecretKey sk;
};

// The comparison capability: sk2 alone. Opens c3 but not c1.
struct Token {
  Group group;
  deg::SecretKey sk2;
};

struct Ciphertext {
  deg::Ciphertext c1;
  GroupElement c2;
  deg::Ciphertext c3;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

Keys Keygen(const Group& group, Random& rng);
Keys KeysFromSecrets(const Group& group, const deg::SecretKey& sk1,
                     const deg::SecretKey& sk2);

Ciphertext Encrypt(const PublicKey& pk, const Scalar& m, Random& rng);
Ciphertext EncryptWithRandomness(const PublicKey& pk, const Scalar& m,
                                 const Scalar& r, Random& rng);

// Returns the commitment g^m, or nullopt (bottom) when c2 is not a subgroup
// element, either inner decryption fails, or c2 != g^m' * h^r'.
std::optional<GroupElement> Decrypt(const SecretKey& sk, const Ciphertext& c);

Token Authorize(const SecretKey& sk);

// Equality of the underlying plaintexts. Throws CryptoError if either c3
// does not decrypt under the token; an error is never reported as false.
bool Compare(const Token& token, const Ciphertext& a, const Ciphertext& b);

// c2 * (h^r)^-1 = g^m. Throws CryptoError when c3 does not open.
GroupElement Unblind(const Token& token, const Ciphertext& c);

Ciphertext HomAdd(const Group& group, const Ciphertext& a,
                  const Ciphertext& b);
// HomAdd with a fresh encryption of zero.
Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Random& rng);

// Canonical fixed-width byte image of all seven group elements.
std::vector<std::uint8_t> ToBytes(const Group& group, const Ciphertext& c);

// Min-entropy needed so that `trial_budget` trial encryptions succeed with
// total probability below `target_advantage`: by the union bound each guess
// may succeed with probability at most 2^-k, so k = log2(budget / eps).
struct MinEntropyReport {
  double trial_budget = 0;
  double target_advantage = 0;
  double required_bits = 0;
};

// Requires trial_budget >= 1 and 0 < target_advantage <= 1.
MinEntropyReport MinEntropyBound(double trial_budget, double target_advantage);

}  // namespace blindtm::hpkeet

#endif  // BLINDTM_HPKEET_H_
