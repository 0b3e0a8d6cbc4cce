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


#include "blindtm/games.h"

#include <cmath>

namespace blindtm::games {

namespace {

// Signals a budget overrun out of the adversary's query phase.
struct BudgetExceeded {};

double StdError(std::uint64_t wins, std::uint64_t trials) {
  if (trials == 0) return 0;
  double p = static_cast<double>(wins) / static_cast<double>(trials);
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

GameResult Summarize(std::uint64_t trials, std::uint64_t wins,
                     std::uint64_t aborted, bool centered) {
  GameResult result;
  result.trials = trials;
  result.wins = wins;
  result.aborted = aborted;
  double rate = trials == 0 ? 0
                            : static_cast<double>(wins) /
                                  static_cast<double>(trials);
  result.advantage_estimate = centered ? std::fabs(rate - 0.5) : rate;
  result.std_error = StdError(wins, trials);
  return result;
}

bool Released(const GameOracle& oracle, const GroupElement& commitment) {
  for (const GroupElement& e : oracle.released()) {
    if (e == commitment) return true;
  }
  return false;
}

std::vector<hpkeet::Ciphertext> MakeChallenges(const hpkeet::PublicKey& pk,
                                               const Scalar& m, std::size_t n,
                                               ChallengeMode mode,
                                               Random& rng) {
  std::vector<hpkeet::Ciphertext> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || mode == ChallengeMode::kFresh) {
      out.push_back(hpkeet::Encrypt(pk, m, rng));
    } else {
      out.push_back(hpkeet::Rerandomize(pk, out.back(), rng));
    }
  }
  return out;
}

}  // namespace

GameOracle::GameOracle(const hpkeet::Keys& keys, std::size_t budget,
                       bool allow_token)
    : keys_(keys), budget_(budget), allow_token_(allow_token) {}

void GameOracle::Spend() {
  if (used_ >= budget_) throw BudgetExceeded{};
  ++used_;
}

std::optional<GroupElement> GameOracle::Decrypt(const hpkeet::Ciphertext& c) {
  Spend();
  std::optional<GroupElement> m = hpkeet::Decrypt(keys_.sk, c);
  if (m) released_.push_back(*m);
  return m;
}

hpkeet::Token GameOracle::Authorize() {
  if (!allow_token_) {
    throw ContractViolation(
        "token queries are not allowed in the indistinguishability game");
  }
  Spend();
  return hpkeet::Authorize(keys_.sk);
}

PlaintextDomain PlaintextDomain::Listed(std::vector<Scalar> values) {
  if (values.empty()) throw UsageError("plaintext domain is empty");
  PlaintextDomain d;
  d.values = std::move(values);
  return d;
}

PlaintextDomain PlaintextDomain::Below(mpz_class bound) {
  if (bound <= 0) throw UsageError("plaintext domain is empty");
  PlaintextDomain d;
  d.bound = std::move(bound);
  return d;
}

Scalar PlaintextDomain::Sample(const Group& group, Random& rng) const {
  if (!values.empty()) return values[rng.UniformBelow(values.size())];
  return group.MakeScalar(rng.UniformBelow(bound));
}

GameResult RunOwGame(const hpkeet::Keys& keys, OwAdversary& adversary,
                     const PlaintextDomain& domain, std::size_t query_budget,
                     std::uint64_t trials, const Random& rng) {
  const Group& group = keys.pk.group;
  std::uint64_t wins = 0;
  std::uint64_t aborted = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Random trial_rng = rng.Fork(t);
    GameOracle oracle(keys, query_budget, /*allow_token=*/true);
    try {
      adversary.Query(oracle, trial_rng);
    } catch (const BudgetExceeded&) {
      ++aborted;
      continue;
    }
    Scalar m = domain.Sample(group, trial_rng);
    // A listed domain may be exhausted by the queries; give up resampling
    // after a bounded number of draws and count the trial as aborted.
    int draws = 0;
    while (Released(oracle, group.Commit(m)) && ++draws < 1024) {
      m = domain.Sample(group, trial_rng);
    }
    if (draws == 1024) {
      ++aborted;
      continue;
    }
    adversary.Challenge(hpkeet::Encrypt(keys.pk, m, trial_rng));
    if (adversary.Guess(group, trial_rng) == m) ++wins;
  }
  return Summarize(trials, wins, aborted, /*centered=*/false);
}

GameResult RunMultiChallengeInd(const hpkeet::Keys& keys,
                                IndAdversary& adversary,
                                std::size_t n_challenges, ChallengeMode mode,
                                std::size_t query_budget, std::uint64_t trials,
                                const Random& rng) {
  if (n_challenges == 0) throw UsageError("need at least one challenge");
  const Group& group = keys.pk.group;
  std::uint64_t wins = 0;
  std::uint64_t aborted = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Random trial_rng = rng.Fork(t);
    GameOracle oracle(keys, query_budget, /*allow_token=*/false);
    try {
      adversary.Query(oracle, trial_rng);
    } catch (const BudgetExceeded&) {
      ++aborted;
      continue;
    }
    auto [m0, m1] = adversary.Messages(group, trial_rng);
    if (m0 == m1) {
      throw ContractViolation("adversary submitted m0 == m1");
    }
    bool b = trial_rng.NextBit();
    std::vector<hpkeet::Ciphertext> challenges = MakeChallenges(
        keys.pk, b ? m1 : m0, n_challenges, mode, trial_rng);
    adversary.Challenge(challenges);
    if (adversary.Guess(trial_rng) == b) ++wins;
  }
  return Summarize(trials, wins, aborted, /*centered=*/true);
}

GameResult RunIndGame(const hpkeet::Keys& keys, IndAdversary& adversary,
                      std::size_t query_budget, std::uint64_t trials,
                      const Random& rng) {
  return RunMultiChallengeInd(keys, adversary, 1, ChallengeMode::kFresh,
                              query_budget, trials, rng);
}

Scalar RandomGuessOw::Guess(const Group& group, Random& rng) {
  return group.MakeScalar(rng.UniformBelow(bound_));
}

void TrialEncryptionOw::Query(GameOracle& oracle, Random&) {
  token_ = oracle.Authorize();
  pk_ = oracle.pk();
  challenge_.reset();
}

void TrialEncryptionOw::Challenge(const hpkeet::Ciphertext& challenge) {
  challenge_ = challenge;
}

Scalar TrialEncryptionOw::Guess(const Group& group, Random& rng) {
  for (const Scalar& candidate : candidates_) {
    hpkeet::Ciphertext trial = hpkeet::Encrypt(*pk_, candidate, rng);
    if (hpkeet::Compare(*token_, *challenge_, trial)) return candidate;
  }
  return candidates_.empty() ? group.MakeScalar(0) : candidates_.front();
}

std::pair<Scalar, Scalar> CoinFlipInd::Messages(const Group& group, Random&) {
  return {group.MakeScalar(0), group.MakeScalar(1)};
}

std::pair<Scalar, Scalar> TokenGrantedInd::Messages(const Group& group,
                                                    Random& rng) {
  Scalar m0 = group.RandomScalar(rng);
  m0_ = m0;
  return {m0, group.Add(m0, group.MakeScalar(1))};
}

void TokenGrantedInd::Challenge(
    std::span<const hpkeet::Ciphertext> challenges) {
  challenges_.assign(challenges.begin(), challenges.end());
}

bool TokenGrantedInd::Guess(Random& rng) {
  hpkeet::Ciphertext reference = hpkeet::Encrypt(pk_, *m0_, rng);
  return !hpkeet::Compare(token_, challenges_.front(), reference);
}

void ByteEqualityInd::Query(GameOracle& oracle, Random&) {
  pk_ = oracle.pk();
  challenges_.clear();
}

std::pair<Scalar, Scalar> ByteEqualityInd::Messages(const Group& group,
                                                    Random& rng) {
  Scalar m0 = group.RandomScalar(rng);
  m0_ = m0;
  return {m0, group.Add(m0, group.MakeScalar(1))};
}

void ByteEqualityInd::Challenge(
    std::span<const hpkeet::Ciphertext> challenges) {
  challenges_.assign(challenges.begin(), challenges.end());
}

bool ByteEqualityInd::Guess(Random& rng) {
  const Group& group = pk_->group;
  std::vector<std::uint8_t> reference =
      hpkeet::ToBytes(group, hpkeet::Encrypt(*pk_, *m0_, rng));
  for (const hpkeet::Ciphertext& c : challenges_) {
    if (hpkeet::ToBytes(group, c) == reference) return false;
  }
  return rng.NextBit();
}

}  // namespace blindtm::games
