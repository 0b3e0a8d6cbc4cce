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


#include "blindtm/deg.h"

#include "blindtm/op_counter.h"

namespace blindtm::deg {

KeyPair Keygen(const Group& group, Random& rng) {
  BaseOpScope scope(BaseOp::kKeygen);
  Scalar x1 = group.RandomScalar(rng);
  Scalar x2 = group.RandomScalar(rng);
  while (x2 == x1) x2 = group.RandomScalar(rng);
  return KeypairFromSecrets(group, x1, x2);
}

KeyPair KeypairFromSecrets(const Group& group, const Scalar& x1,
                           const Scalar& x2) {
  BaseOpScope scope(BaseOp::kKeygen);
  return KeyPair{{group.Exp(group.g(), x1), group.Exp(group.g(), x2)},
                 {x1, x2}};
}

Ciphertext EncryptWithRandomness(const Group& group, const PublicKey& pk,
                                 const GroupElement& msg, const Scalar& r) {
  BaseOpScope scope(BaseOp::kEncrypt);
  return Ciphertext{group.Exp(group.g(), r), group.Exp(pk.y1, r),
                    group.Mul(group.Exp(pk.y2, r), msg)};
}

Ciphertext Encrypt(const Group& group, const PublicKey& pk,
                   const GroupElement& msg, Random& rng) {
  BaseOpScope scope(BaseOp::kEncrypt);
  return EncryptWithRandomness(group, pk, msg, group.RandomScalar(rng));
}

DecryptResult Decrypt(const Group& group, const SecretKey& sk,
                      const Ciphertext& c) {
  BaseOpScope scope(BaseOp::kDecrypt);
  if (!group.Contains(c.u) || !group.Contains(c.v) || !group.Contains(c.w)) {
    return {DecryptStatus::kMalformed, {}};
  }
  if (group.Exp(c.u, sk.x1) != c.v) {
    return {DecryptStatus::kInvalidTag, {}};
  }
  GroupElement mask = group.Exp(c.u, sk.x2);
  return {DecryptStatus::kOk, group.Mul(c.w, group.Inv(mask))};
}

std::optional<GroupElement> DecryptOrNone(const Group& group,
                                          const SecretKey& sk,
                                          const Ciphertext& c) {
  DecryptResult r = Decrypt(group, sk, c);
  if (!r.ok()) return std::nullopt;
  return r.message;
}

Ciphertext HomMul(const Group& group, const Ciphertext& a,
                  const Ciphertext& b) {
  CompositeMulScope scope;
  return Ciphertext{group.Mul(a.u, b.u), group.Mul(a.v, b.v),
                    group.Mul(a.w, b.w)};
}

Ciphertext Rerandomize(const Group& group, const PublicKey& pk,
                       const Ciphertext& a, Random& rng) {
  return HomMul(group, a, Encrypt(group, pk, group.Identity(), rng));
}

}  // namespace blindtm::deg
