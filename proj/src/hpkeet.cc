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


#include "blindtm/hpkeet.h"

#include <cmath>
#include <stdexcept>

#include "blindtm/errors.h"

namespace blindtm::hpkeet {

Keys Keygen(const Group& group, Random& rng) {
  deg::KeyPair first = deg::Keygen(group, rng);
  deg::KeyPair second = deg::Keygen(group, rng);
  return Keys{{group, first.pk, second.pk}, {group, first.sk, second.sk}};
}

Keys KeysFromSecrets(const Group& group, const deg::SecretKey& sk1,
                     const deg::SecretKey& sk2) {
  deg::KeyPair first = deg::KeypairFromSecrets(group, sk1.x1, sk1.x2);
  deg::KeyPair second = deg::KeypairFromSecrets(group, sk2.x1, sk2.x2);
  return Keys{{group, first.pk, second.pk}, {group, sk1, sk2}};
}

Ciphertext EncryptWithRandomness(const PublicKey& pk, const Scalar& m,
                                 const Scalar& r, Random& rng) {
  const Group& group = pk.group;
  GroupElement commitment = group.Exp(group.g(), m);
  GroupElement blinding = group.Exp(group.h(), r);
  return Ciphertext{deg::Encrypt(group, pk.pk1, commitment, rng),
                    group.Mul(commitment, blinding),
                    deg::Encrypt(group, pk.pk2, blinding, rng)};
}

Ciphertext Encrypt(const PublicKey& pk, const Scalar& m, Random& rng) {
  Scalar r = pk.group.RandomScalar(rng);
  return EncryptWithRandomness(pk, m, r, rng);
}

std::optional<GroupElement> Decrypt(const SecretKey& sk, const Ciphertext& c) {
  const Group& group = sk.group;
  if (!group.Contains(c.c2)) return std::nullopt;
  auto commitment = deg::DecryptOrNone(group, sk.sk1, c.c1);
  auto blinding = deg::DecryptOrNone(group, sk.sk2, c.c3);
  if (!commitment || !blinding) return std::nullopt;
  if (group.Mul(*commitment, *blinding) != c.c2) return std::nullopt;
  return commitment;
}

Token Authorize(const SecretKey& sk) { return Token{sk.group, sk.sk2}; }

GroupElement Unblind(const Token& token, const Ciphertext& c) {
  const Group& group = token.group;
  if (!group.Contains(c.c2)) {
    throw CryptoError("ciphertext component c2 is not a group element");
  }
  auto blinding = deg::DecryptOrNone(group, token.sk2, c.c3);
  if (!blinding) throw CryptoError("ciphertext component c3 does not decrypt");
  return group.Mul(c.c2, group.Inv(*blinding));
}

bool Compare(const Token& token, const Ciphertext& a, const Ciphertext& b) {
  return Unblind(token, a) == Unblind(token, b);
}

Ciphertext HomAdd(const Group& group, const Ciphertext& a,
                  const Ciphertext& b) {
  return Ciphertext{deg::HomMul(group, a.c1, b.c1), group.Mul(a.c2, b.c2),
                    deg::HomMul(group, a.c3, b.c3)};
}

Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Random& rng) {
  return HomAdd(pk.group, c, Encrypt(pk, pk.group.MakeScalar(0), rng));
}

std::vector<std::uint8_t> ToBytes(const Group& group, const Ciphertext& c) {
  std::vector<std::uint8_t> out;
  out.reserve(7 * group.element_bytes());
  for (const GroupElement* e : {&c.c1.u, &c.c1.v, &c.c1.w, &c.c2, &c.c3.u,
                                &c.c3.v, &c.c3.w}) {
    group.AppendFixedWidth(*e, out);
  }
  return out;
}

MinEntropyReport MinEntropyBound(double trial_budget,
                                 double target_advantage) {
  if (!(trial_budget >= 1)) {
    throw UsageError("trial budget must be at least 1");
  }
  if (!(target_advantage > 0 && target_advantage <= 1)) {
    throw UsageError("target advantage must lie in (0, 1]");
  }
  double bits = std::log2(trial_budget) - std::log2(target_advantage);
  return MinEntropyReport{trial_budget, target_advantage,
                          bits < 0 ? 0.0 : bits};
}

}  // namespace blindtm::hpkeet
