// Copyright 2026 The coalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COALLOC_ALLOCATION_HPP
#define COALLOC_ALLOCATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coalloc/game.hpp"

namespace coalloc {

inline constexpr double default_tolerance = 1e-9;

/// Maximal chain of coalitions adding one player per step, identified with
/// the permutation that lists the players in joining order.
class set_chain {
 public:
  explicit set_chain(std::vector<int> permutation);

  int n() const noexcept { return static_cast<int>(permutation_.size()); }
  const std::vector<int>& permutation() const noexcept { return permutation_; }

  /// The k-th chain member: the union of the first k players. set_at(0) is
  /// the empty coalition, set_at(n) the grand coalition.
  mask_t set_at(int k) const;

 private:
  std::vector<int> permutation_;
};

/// A linear allocation operator in matrix form: n rows (players) by 2^n
/// columns (coalitions in bitmask order). Payoffs are the matrix-vector
/// product with the game's value vector.
class allocation_matrix {
 public:
  allocation_matrix(int n, std::vector<double> entries);

  static allocation_matrix zeros(int n);

  int n() const noexcept { return n_; }
  std::size_t columns() const noexcept { return std::size_t{1} << n_; }

  double entry(int player, mask_t s) const {
    return entries_[index(player, s)];
  }
  void set_entry(int player, mask_t s, double value) {
    entries_[index(player, s)] = value;
  }

  const std::vector<double>& entries() const noexcept { return entries_; }

  /// this += factor * other. Dimensions must agree.
  void add_scaled(const allocation_matrix& other, double factor);

  double max_abs() const;

 private:
  std::size_t index(int player, mask_t s) const {
    require_player(player, n_);
    require_mask(s, n_);
    return static_cast<std::size_t>(player - 1) * columns() + s;
  }

  int n_;
  std::vector<double> entries_;
};

/// The allocation that pays each player their marginal contribution along
/// the chain: row of the player joining at step k holds -1 at the previous
/// chain set and +1 at the new one.
allocation_matrix special_allocation(const set_chain& chain);

std::vector<double> apply_allocation(const allocation_matrix& a, const game& v);

/// Shapley operator: coefficient |S|! (n-|S|-1)! / n! on the column S∪{i}
/// of row i, mirrored negatively on column S. Guarded to n ≤ 12.
allocation_matrix shapley_matrix(int n);

/// Shapley payoffs computed directly from the marginal-contribution sum
/// (independent of shapley_matrix, which the tests compare against).
std::vector<double> shapley_value(const game& v);

struct violation {
  std::string condition;
  int player;        // 0 when the condition is column-scoped
  mask_t coalition;  // the column, or the grand coalition for row aggregates
  double observed;
  double required;
};

struct check_report {
  std::string name;
  bool pass = true;
  double tolerance = default_tolerance;
  std::vector<violation> violations;
};

/// Column sums must be -1 at the empty set, +1 at the grand coalition and 0
/// elsewhere; equivalent to payoffs summing to v(N) - v(empty) on every game.
check_report check_efficiency(const allocation_matrix& a,
                              double tol = default_tolerance);

/// The three structural conditions that together characterize
/// reasonableness: entry signs (nonnegative iff the player is a member),
/// row-wise pairing A[i][T] = -A[i][T∪{i}], and partial row sums
/// over member columns equal to 1. All three are evaluated so the report
/// shows which condition fails.
check_report check_reasonable_structural(const allocation_matrix& a,
                                         double tol = default_tolerance);

/// Row absolute sums must equal 2, and so must the total absolute value of
/// each interior column size class (coalition sizes 1 through n-1). For the
/// size-class violations the player field carries the size.
check_report check_abs_sums(const allocation_matrix& a,
                            double tol = default_tolerance);

/// Every full row must sum to 0.
check_report check_row_sums_zero(const allocation_matrix& a,
                                 double tol = default_tolerance);

enum class sampler_kind {
  monotone_random,       // seeded random monotone games, `trials` of them
  superadditive_probes,  // the fixed binary probe family (trials ignored)
  binary_exhaustive,     // every monotone binary game, n ≤ 4 (trials ignored)
};

struct reasonableness_violation {
  game probe;
  std::string probe_name;
  int player;
  double payoff;
  double lower;  // min marginal contribution of the player in the probe
  double upper;  // max marginal contribution
};

/// Searches the chosen game family for a payoff outside the player's
/// marginal-contribution bounds, returning the first hit in enumeration
/// order, or nothing. A falsifier, not an auditor: it stops at the first
/// violating game.
std::optional<reasonableness_violation> find_reasonableness_violation(
    const allocation_matrix& a, sampler_kind sampler, int trials,
    std::uint64_t seed, double tol = default_tolerance);

}  // namespace coalloc

#endif  // COALLOC_ALLOCATION_HPP
