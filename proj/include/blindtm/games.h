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


#ifndef BLINDTM_GAMES_H_
#define BLINDTM_GAMES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blindtm/errors.h"
#include "blindtm/group.h"
#include "blindtm/hpkeet.h"
#include "blindtm/random.h"

// Executable one-wayness and indistinguishability experiments against
// chosen-ciphertext (non-adaptive) attackers. These are statistical sanity
// checks on the implementation, not proofs: each adversary below is one
// concrete strategy.
namespace blindtm::games {

// Raised when an adversary breaks the rules of the experiment it is playing,
// e.g. asking for the token in an indistinguishability game.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The oracle handed to an adversary during its query phase. Every call
// spends one query from the budget; exceeding it aborts the trial as a loss.
class GameOracle {
 public:
  GameOracle(const hpkeet::Keys& keys, std::size_t budget, bool allow_token);

  const hpkeet::PublicKey& pk() const { return keys_.pk; }
  std::size_t queries_used() const { return used_; }

  // Commitment g^m, or nullopt for bottom.
  std::optional<GroupElement> Decrypt(const hpkeet::Ciphertext& c);
  // The token projection of the secret key, nothing more.
  hpkeet::Token Authorize();

  // Commitments this oracle has released so far.
  const std::vector<GroupElement>& released() const { return released_; }

 private:
  void Spend();

  const hpkeet::Keys& keys_;
  std::size_t budget_;
  bool allow_token_;
  std::size_t used_ = 0;
  std::vector<GroupElement> released_;
};

// Plaintext space the challenger samples from: either an explicit list
// (e.g. the codes of a known encoding) or [0, bound).
struct PlaintextDomain {
  std::vector<Scalar> values;
  mpz_class bound = 0;

  static PlaintextDomain Listed(std::vector<Scalar> values);
  static PlaintextDomain Below(mpz_class bound);
  Scalar Sample(const Group& group, Random& rng) const;
};

// Each trial calls Query, then Challenge, then Guess. Per-trial state must
// be reset in Query.
class OwAdversary {
 public:
  virtual ~OwAdversary() = default;
  virtual std::string name() const = 0;
  virtual void Query(GameOracle& oracle, Random& rng) = 0;
  virtual void Challenge(const hpkeet::Ciphertext& challenge) = 0;
  virtual Scalar Guess(const Group& group, Random& rng) = 0;
};

class IndAdversary {
 public:
  virtual ~IndAdversary() = default;
  virtual std::string name() const = 0;
  virtual void Query(GameOracle& oracle, Random& rng) = 0;
  // Must return m0 != m1.
  virtual std::pair<Scalar, Scalar> Messages(const Group& group,
                                             Random& rng) = 0;
  // One ciphertext in the single-challenge game, n in the multi-challenge
  // game, all under the same hidden bit.
  virtual void Challenge(std::span<const hpkeet::Ciphertext> challenges) = 0;
  virtual bool Guess(Random& rng) = 0;
};

struct GameResult {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  // OW: success rate. IND: |wins/trials - 1/2|.
  double advantage_estimate = 0;
  // Binomial standard error of the win rate.
  double std_error = 0;
  // Trials lost because the adversary exceeded its query budget.
  std::uint64_t aborted = 0;
};

// Fixed keys across trials; trial i draws its randomness from rng.Fork(i).
// The challenge plaintext is resampled until its commitment differs from
// every commitment the oracle released during the query phase.
GameResult RunOwGame(const hpkeet::Keys& keys, OwAdversary& adversary,
                     const PlaintextDomain& domain, std::size_t query_budget,
                     std::uint64_t trials, const Random& rng);

// Decryption oracle only; a token request throws ContractViolation.
GameResult RunIndGame(const hpkeet::Keys& keys, IndAdversary& adversary,
                      std::size_t query_budget, std::uint64_t trials,
                      const Random& rng);

enum class ChallengeMode {
  // n independent encryptions of m_b.
  kFresh,
  // Enc(m_b) followed by n-1 successive rerandomizations, as a blind
  // executor produces when it rewrites a cell.
  kRerandomizedChain,
};

GameResult RunMultiChallengeInd(const hpkeet::Keys& keys,
                                IndAdversary& adversary,
                                std::size_t n_challenges, ChallengeMode mode,
                                std::size_t query_budget, std::uint64_t trials,
                                const Random& rng);

// Built-in adversaries.

// Guesses uniformly in [0, bound).
class RandomGuessOw : public OwAdversary {
 public:
  explicit RandomGuessOw(mpz_class bound) : bound_(std::move(bound)) {}
  std::string name() const override { return "random-guess"; }
  void Query(GameOracle&, Random&) override {}
  void Challenge(const hpkeet::Ciphertext&) override {}
  Scalar Guess(const Group& group, Random& rng) override;

 private:
  mpz_class bound_;
};

// Requests the token, then trial-encrypts every candidate and compares it
// with the challenge.
class TrialEncryptionOw : public OwAdversary {
 public:
  explicit TrialEncryptionOw(std::vector<Scalar> candidates)
      : candidates_(std::move(candidates)) {}
  std::string name() const override { return "trial-encryption"; }
  void Query(GameOracle& oracle, Random& rng) override;
  void Challenge(const hpkeet::Ciphertext& challenge) override;
  Scalar Guess(const Group& group, Random& rng) override;

 private:
  std::vector<Scalar> candidates_;
  std::optional<hpkeet::Token> token_;
  std::optional<hpkeet::PublicKey> pk_;
  std::optional<hpkeet::Ciphertext> challenge_;
};

// Messages 0 and 1, guess by coin flip.
class CoinFlipInd : public IndAdversary {
 public:
  std::string name() const override { return "coin-flip"; }
  void Query(GameOracle&, Random&) override {}
  std::pair<Scalar, Scalar> Messages(const Group& group, Random&) override;
  void Challenge(std::span<const hpkeet::Ciphertext>) override {}
  bool Guess(Random& rng) override { return rng.NextBit(); }
};

// A type-1 attacker: holds the token out of band and compares the challenge
// with a fresh encryption of m0.
class TokenGrantedInd : public IndAdversary {
 public:
  TokenGrantedInd(hpkeet::PublicKey pk, hpkeet::Token token)
      : pk_(std::move(pk)), token_(std::move(token)) {}
  std::string name() const override { return "token-granted"; }
  void Query(GameOracle&, Random&) override {}
  std::pair<Scalar, Scalar> Messages(const Group& group, Random& rng) override;
  void Challenge(std::span<const hpkeet::Ciphertext> challenges) override;
  bool Guess(Random& rng) override;

 private:
  hpkeet::PublicKey pk_;
  hpkeet::Token token_;
  std::optional<Scalar> m0_;
  std::vector<hpkeet::Ciphertext> challenges_;
};

// Token-less: encrypts m0 itself and looks for byte-equal challenges (or
// byte repetitions among several challenges); otherwise flips a coin.
class ByteEqualityInd : public IndAdversary {
 public:
  std::string name() const override { return "byte-equality"; }
  void Query(GameOracle& oracle, Random& rng) override;
  std::pair<Scalar, Scalar> Messages(const Group& group, Random& rng) override;
  void Challenge(std::span<const hpkeet::Ciphertext> challenges) override;
  bool Guess(Random& rng) override;

 private:
  std::optional<hpkeet::PublicKey> pk_;
  std::optional<Scalar> m0_;
  std::vector<hpkeet::Ciphertext> challenges_;
};

}  // namespace blindtm::games

#endif  // BLINDTM_GAMES_H_
