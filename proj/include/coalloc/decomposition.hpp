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

#ifndef COALLOC_DECOMPOSITION_HPP
#define COALLOC_DECOMPOSITION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "coalloc/allocation.hpp"

namespace coalloc {

struct decomposition_term {
  std::vector<int> permutation;
  double weight;
};

/// Convex-combination certificate: nonnegative weights over distinct
/// permutations summing to 1 whose special allocations rebuild a matrix.
struct decomposition {
  int n = 0;
  std::vector<decomposition_term> terms;
};

struct peel_step {
  std::vector<int> permutation;
  double epsilon;
  double residual_after;  // max-abs of the residual once the step is applied
};

/// Audit log of the peeling run. Residual max-abs is nonincreasing across
/// steps and every epsilon is strictly positive.
struct peel_trace {
  std::vector<peel_step> steps;
  double final_residual = 0.0;
};

struct peel_result {
  decomposition certificate;
  peel_trace trace;
};

/// Sum of weight * special_allocation(permutation) over the terms.
allocation_matrix reconstruct(const decomposition& d);

/// Greedy chain peeling: repeatedly walks a chain of most-negative residual
/// entries from the empty coalition to the grand coalition (smallest player
/// index on ties), subtracts the largest multiple of that chain's special
/// allocation that keeps all entry signs, and records the weight. Efficiency
/// and the structural reasonableness conditions are required up front; they
/// are what guarantee a chain exists until the residual is exhausted.
/// Terminates within n * 2^n steps because every step zeroes at least one
/// residual entry.
peel_result peel_decompose(const allocation_matrix& a,
                           double tol = default_tolerance);

/// Certificate check: weights nonnegative within tol, summing to 1 within
/// tol, and max-abs reconstruction residual at most tol.
check_report verify_decomposition(const allocation_matrix& a,
                                  const decomposition& d,
                                  double tol = default_tolerance);

/// Seeded sample from the polytope: support_size distinct permutations drawn
/// uniformly, weights from normalized exponential draws. Returns the matrix
/// together with its generating certificate. Guarded to n ≤ 8.
std::pair<allocation_matrix, decomposition> random_allocation(
    int n, int support_size, std::uint64_t seed);

}  // namespace coalloc

#endif  // COALLOC_DECOMPOSITION_HPP
