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


#ifndef BLINDTM_DEG_H_
#define BLINDTM_DEG_H_

#include <optional>

#include "blindtm/group.h"
#include "blindtm/random.h"

// Damgard's variant of ElGamal: (u, v, w) = (g^r, y1^r, y2^r * msg) with the
// consistency tag v = u^x1 checked on decryption. Multiplicatively
// homomorphic on group-element messages.
namespace blindtm::deg {

struct PublicKey {
  GroupElement y1;
  GroupElement y2;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  Scalar x1;
  Scalar x2;
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Ciphertext {
  GroupElement u;
  GroupElement v;
  GroupElement w;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

enum class DecryptStatus { kOk, kMalformed, kInvalidTag };

struct DecryptResult {
  DecryptStatus status = DecryptStatus::kOk;
  GroupElement message;

  bool ok() const { return status == DecryptStatus::kOk; }
};

// x1 != x2 is enforced by resampling.
KeyPair Keygen(const Group& group, Random& rng);
// Fixed secrets, for known-answer tests.
KeyPair KeypairFromSecrets(const Group& group, const Scalar& x1,
                           const Scalar& x2);

Ciphertext Encrypt(const Group& group, const PublicKey& pk,
                   const GroupElement& msg, Random& rng);
Ciphertext EncryptWithRandomness(const Group& group, const PublicKey& pk,
                                 const GroupElement& msg, const Scalar& r);

// Rejects ciphertexts whose components are not subgroup members
// (kMalformed) or whose tag fails v == u^x1 (kInvalidTag).
DecryptResult Decrypt(const Group& group, const SecretKey& sk,
                      const Ciphertext& c);
// Convenience: nullopt on any failure.
std::optional<GroupElement> DecryptOrNone(const Group& group,
                                          const SecretKey& sk,
                                          const Ciphertext& c);

// Componentwise product. Both operands must be under the same key; that
// cannot be checked from the ciphertexts.
Ciphertext HomMul(const Group& group, const Ciphertext& a,
                  const Ciphertext& b);
// Folds in a fresh encryption of the identity.
Ciphertext Rerandomize(const Group& group, const PublicKey& pk,
                       const Ciphertext& a, Random& rng);

}  // namespace blindtm::deg

#endif  // BLINDTM_DEG_H_
