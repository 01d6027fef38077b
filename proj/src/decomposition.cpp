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

#include "coalloc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coalloc/rng.hpp"

namespace coalloc {

namespace {

constexpr int random_allocation_max_players = 8;

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Permutation with the given lexicographic rank, as 1-based players.
std::vector<int> unrank_permutation(std::uint64_t rank, int n) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(n);
  for (int k = n - 1; k >= 0; --k) {
    const std::uint64_t f = factorial_u64(k);
    const std::size_t idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

}  // namespace

allocation_matrix reconstruct(const decomposition& d) {
  require_player_count(d.n);
  allocation_matrix out = allocation_matrix::zeros(d.n);
  for (const auto& term : d.terms) {
    out.add_scaled(special_allocation(set_chain(term.permutation)),
                   term.weight);
  }
  return out;
}

peel_result peel_decompose(const allocation_matrix& a, double tol) {
  {
    const check_report eff = check_efficiency(a, tol);
    if (!eff.pass) {
      throw error(errc::precondition_failed,
                  "peel_decompose precondition failed: efficiency (" +
                      std::to_string(eff.violations.size()) + " violations)");
    }
    const check_report structural = check_reasonable_structural(a, tol);
    if (!structural.pass) {
      throw error(
          errc::precondition_failed,
          "peel_decompose precondition failed: reasonable_structural (" +
              std::to_string(structural.violations.size()) + " violations)");
    }
  }

  const int n = a.n();
  const std::size_t max_steps = static_cast<std::size_t>(n) << n;
  allocation_matrix residual = a;
  peel_result result;
  result.certificate.n = n;

  while (residual.max_abs() > tol) {
    if (result.certificate.terms.size() >= max_steps) {
      throw error(errc::internal, "peeling exceeded the step bound");
    }

    // Chain walk: at each chain set pick the outside row with the most
    // negative entry below -tol (smallest player on ties).
    std::vector<int> perm;
    perm.reserve(n);
    mask_t current = 0;
    for (int k = 0; k < n; ++k) {
      int best = 0;
      double best_value = -tol;
      for (int j = 1; j <= n; ++j) {
        if (current & player_bit(j)) continue;
        const double e = residual.entry(j, current);
        if (e < best_value) {
          best_value = e;
          best = j;
        }
      }
      if (best == 0) {
        throw error(errc::internal,
                    "peeling stalled: no chain entry below -tol at " +
                        coalition(current, n).label() + " with residual " +
                        std::to_string(residual.max_abs()));
      }
      perm.push_back(best);
      current |= player_bit(best);
    }

    // Weight: the smallest positive paired entry along the chain. Reading
    // the negated negative entries instead must agree; a drift beyond the
    // pairing tolerance means the invariants were lost.
    double eps = std::numeric_limits<double>::infinity();
    double eps_from_negatives = eps;
    mask_t before = 0;
    for (int k = 0; k < n; ++k) {
      const int j = perm[k];
      eps_from_negatives =
          std::min(eps_from_negatives, -residual.entry(j, before));
      before |= player_bit(j);
      eps = std::min(eps, residual.entry(j, before));
    }
    if (std::abs(eps - eps_from_negatives) > 10.0 * tol) {
      throw error(errc::internal,
                  "peeling lost the pairing invariant (step weight drift)");
    }
    if (!(eps > 0.0)) {
      throw error(errc::internal, "peeling produced a nonpositive weight");
    }

    residual.add_scaled(special_allocation(set_chain(perm)), -eps);
    result.certificate.terms.push_back({perm, eps});
    result.trace.steps.push_back({perm, eps, residual.max_abs()});
  }

  result.trace.final_residual = residual.max_abs();
  return result;
}

check_report verify_decomposition(const allocation_matrix& a,
                                  const decomposition& d, double tol) {
  if (d.n != a.n()) {
    throw error(errc::invalid_argument,
                "certificate is for " + std::to_string(d.n) +
                    " players but the allocation has " +
                    std::to_string(a.n()));
  }
  check_report report{"certificate", true, tol, {}};

  double weight_sum = 0.0;
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    const double w = d.terms[k].weight;
    if (!std::isfinite(w)) {
      throw error(errc::invalid_argument, "certificate weights must be finite");
    }
    weight_sum += w;
    if (w < -tol) {
      // player field doubles as the 1-based term index for weight checks
      report.violations.push_back(
          {"weight_sign", static_cast<int>(k + 1), 0, w, 0.0});
    }
  }
  if (std::abs(weight_sum - 1.0) > tol) {
    report.violations.push_back({"weight_sum", 0, 0, weight_sum, 1.0});
  }

  allocation_matrix diff = reconstruct(d);
  diff.add_scaled(a, -1.0);
  double worst = 0.0;
  int worst_player = 1;
  mask_t worst_column = 0;
  for (int i = 1; i <= a.n(); ++i) {
    for (mask_t s = 0; s <= full_mask(a.n()); ++s) {
      const double r = std::abs(diff.entry(i, s));
      if (r > worst) {
        worst = r;
        worst_player = i;
        worst_column = s;
      }
    }
  }
  if (worst > tol) {
    report.violations.push_back(
        {"residual", worst_player, worst_column, worst, 0.0});
  }

  report.pass = report.violations.empty();
  return report;
}

std::pair<allocation_matrix, decomposition> random_allocation(
    int n, int support_size, std::uint64_t seed) {
  require_player_count(n);
  if (n > random_allocation_max_players) {
    throw error(errc::invalid_argument,
                "random allocations are limited to n <= " +
                    std::to_string(random_allocation_max_players));
  }
  const std::uint64_t total = factorial_u64(n);
  if (support_size < 1 ||
      static_cast<std::uint64_t>(support_size) > total) {
    throw error(errc::invalid_argument,
                "support size must be between 1 and n!");
  }

  rng r(seed);

  // Distinct permutation ranks via a partial Fisher-Yates pass, then sorted
  // so the certificate lists terms in lexicographic permutation order.
  std::vector<std::uint32_t> ranks(total);
  std::iota(ranks.begin(), ranks.end(), 0u);
  for (int k = 0; k < support_size; ++k) {
    const std::size_t j =
        static_cast<std::size_t>(k) +
        static_cast<std::size_t>(r.below(total - static_cast<std::uint64_t>(k)));
    std::swap(ranks[static_cast<std::size_t>(k)], ranks[j]);
  }
  ranks.resize(static_cast<std::size_t>(support_size));
  std::sort(ranks.begin(), ranks.end());

  std::vector<double> weights(static_cast<std::size_t>(support_size));
  double total_weight = 0.0;
  for (double& w : weights) {
    w = r.exponential();
    total_weight += w;
  }
  if (total_weight <= 0.0) {
    std::fill(weights.begin(), weights.end(),
              1.0 / static_cast<double>(support_size));
  } else {
    for (double& w : weights) w /= total_weight;
  }

  decomposition cert;
  cert.n = n;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    cert.terms.push_back({unrank_permutation(ranks[k], n), weights[k]});
  }
  return {reconstruct(cert), std::move(cert)};
}

}  // namespace coalloc
