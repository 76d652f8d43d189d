// Copyright 2026 The subtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations the tests compare the library against. They are
// written independently: the F1 oracle uses set algebra on raw vectors and
// the simplified 2s/(|P|+|G|) identity, and the dropout oracle integrates the
// exact process by enumerating every subset of drop decisions instead of
// sampling them.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subtok/model.hpp"
#include "subtok/normalize.hpp"

namespace oracle {

/// Boundary F1 from first principles: F1 = 2|P∩G| / (|P| + |G|), with the
/// empty-set conventions spelled out.
inline double boundary_f1(std::vector<int> pred, std::vector<int> gold) {
  std::sort(pred.begin(), pred.end());
  pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
  std::sort(gold.begin(), gold.end());
  gold.erase(std::unique(gold.begin(), gold.end()), gold.end());
  if (pred.empty() && gold.empty()) return 1.0;
  if (pred.empty() || gold.empty()) return 0.0;
  std::size_t shared = 0;
  for (int p : pred) {
    for (int g : gold) {
      if (p == g) ++shared;
    }
  }
  return 2.0 * static_cast<double>(shared) /
         static_cast<double>(pred.size() + gold.size());
}

inline double alignment_score(const std::vector<int>& pred,
                              const std::vector<std::vector<int>>& gold_sets) {
  double best = 0.0;
  for (const std::vector<int>& gold : gold_sets) {
    best = std::max(best, boundary_f1(pred, gold));
  }
  return best;
}

/// All subsets of {1..n-1} as boundary sets, in mask order.
inline std::vector<std::vector<int>> all_boundary_sets(int word_length) {
  const int slots = word_length - 1;
  std::vector<std::vector<int>> sets;
  for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
    std::vector<int> set;
    for (int b = 0; b < slots; ++b) {
      if (mask & (1u << b)) set.push_back(b + 1);
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

/// Exact distribution over dropout segmentations of one word, keyed like
/// subtok::segmentation_key. Each step enumerates every subset of drop
/// decisions over the applicable merges: a subset where everything is dropped
/// ends the word, otherwise the surviving occurrence with the best (rank,
/// position) is applied and the process recurses. Probabilities are exact
/// dyadics when p = 0.5.
inline std::map<std::string, double> exact_dropout_distribution(
    const subtok::TokenizerModel& model, const std::string& word, double p) {
  using State = std::vector<std::string>;

  struct Candidate {
    int rank;
    std::size_t pos;
  };

  std::map<State, std::map<std::string, double>> memo;

  auto mark_key = [&](const State& s) {
    std::string key;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) key += ' ';
      key += model.marked(s[i], i > 0);
    }
    return key;
  };

  auto solve = [&](auto&& self, const State& state) -> const std::map<std::string, double>& {
    const auto found = memo.find(state);
    if (found != memo.end()) return found->second;

    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i + 1 < state.size(); ++i) {
      const int rank = model.merge_rank(state[i], state[i + 1]);
      if (rank >= 0) candidates.push_back({rank, i});
    }

    std::map<std::string, double> dist;
    if (candidates.empty()) {
      dist[mark_key(state)] = 1.0;
      return memo.emplace(state, std::move(dist)).first->second;
    }

    const std::size_t m = candidates.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      double prob = 1.0;
      const Candidate* chosen = nullptr;
      for (std::size_t i = 0; i < m; ++i) {
        const bool dropped = (mask & (1u << i)) != 0;
        prob *= dropped ? p : (1.0 - p);
        if (dropped) continue;
        if (chosen == nullptr || candidates[i].rank < chosen->rank ||
            (candidates[i].rank == chosen->rank && candidates[i].pos < chosen->pos)) {
          chosen = &candidates[i];
        }
      }
      if (prob == 0.0) continue;
      if (chosen == nullptr) {
        dist[mark_key(state)] += prob;
        continue;
      }
      State next;
      next.reserve(state.size() - 1);
      for (std::size_t i = 0; i < state.size(); ++i) {
        if (i == chosen->pos) {
          next.push_back(state[i] + state[i + 1]);
          ++i;
        } else {
          next.push_back(state[i]);
        }
      }
      for (const auto& [key, q] : self(self, next)) dist[key] += prob * q;
    }
    return memo.emplace(state, std::move(dist)).first->second;
  };

  return solve(solve, subtok::split_codepoints(word));
}

/// Exact mean and variance of a per-segmentation score under the exact
/// dropout distribution.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

template <typename ScoreFn>
Moments score_moments(const std::map<std::string, double>& dist, ScoreFn&& score) {
  Moments m;
  for (const auto& [key, prob] : dist) m.mean += prob * score(key);
  for (const auto& [key, prob] : dist) {
    const double d = score(key) - m.mean;
    m.variance += prob * d * d;
  }
  return m;
}

}  // namespace oracle
