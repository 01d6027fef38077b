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

#include "coalloc.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "coalloc/decomposition.hpp"
#include "coalloc/io.hpp"

struct coalloc_game {
  coalloc::game impl;
};

struct coalloc_allocation {
  coalloc::allocation_matrix impl;
};

struct coalloc_report {
  coalloc::check_report impl;
};

struct coalloc_decomposition {
  coalloc::decomposition impl;
  std::optional<coalloc::peel_trace> trace;
};

struct coalloc_span {
  std::vector<coalloc::span_term> terms;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const char* message) {
  t_last_error = message;
  return code;
}

int map_code(coalloc::errc code) {
  switch (code) {
    case coalloc::errc::invalid_argument:
      return COALLOC_ERROR_INVALID_ARGUMENT;
    case coalloc::errc::precondition_failed:
      return COALLOC_ERROR_PRECONDITION;
    case coalloc::errc::parse_error:
      return COALLOC_ERROR_PARSE;
    case coalloc::errc::internal:
      return COALLOC_ERROR_INTERNAL;
  }
  return COALLOC_ERROR_INTERNAL;
}

/// Runs fn inside the exception-to-error-code translation.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return COALLOC_OK;
  } catch (const coalloc::error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return COALLOC_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return COALLOC_ERROR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Check>
int run_check(const coalloc_allocation* a, double tol, coalloc_report** out,
              Check&& check) {
  if (a == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and out must not be NULL");
  }
  return guarded([&] { *out = new coalloc_report{check(a->impl, tol)}; });
}

}  // namespace

extern "C" {

const char* coalloc_version(void) { return "0.1.0"; }

const char* coalloc_last_error(void) { return t_last_error.c_str(); }

void coalloc_string_free(char* s) { delete[] s; }

int coalloc_format_double(double x, char* buf, size_t buflen) {
  if (buf == nullptr || buflen < 32) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "coalloc_format_double needs a buffer of at least 32 bytes");
  }
  const std::string s = coalloc::io::format_double(x);
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return COALLOC_OK;
}

/* ---- games ------------------------------------------------------------ */

int coalloc_game_create(int n, const double* values, coalloc_game** out) {
  if (out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "out must not be NULL");
  }
  return guarded([&] {
    if (values == nullptr) {
      *out = new coalloc_game{coalloc::game::zeros(n)};
    } else {
      coalloc::require_player_count(n);
      std::vector<double> v(values, values + (std::size_t{1} << n));
      *out = new coalloc_game{coalloc::game(n, std::move(v))};
    }
  });
}

void coalloc_game_free(coalloc_game* g) { delete g; }

int coalloc_game_n(const coalloc_game* g) { return g ? g->impl.n() : 0; }

size_t coalloc_game_size(const coalloc_game* g) {
  return g ? g->impl.size() : 0;
}

int coalloc_game_value(const coalloc_game* g, uint32_t coalition,
                       double* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] { *out = g->impl.value(coalition); });
}

int coalloc_game_values(const coalloc_game* g, double* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  std::memcpy(out, g->impl.values().data(),
              g->impl.size() * sizeof(double));
  return COALLOC_OK;
}

int coalloc_game_from_json(const char* text, coalloc_game** out) {
  if (text == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "text and out must not be NULL");
  }
  return guarded([&] { *out = new coalloc_game{coalloc::io::parse_game(text)}; });
}

int coalloc_game_to_json(const coalloc_game* g, char** out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] { *out = copy_string(coalloc::io::write_game(g->impl)); });
}

int coalloc_game_is_monotone(const coalloc_game* g, int* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] { *out = coalloc::is_monotone(g->impl) ? 1 : 0; });
}

int coalloc_game_is_superadditive(const coalloc_game* g, int* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] { *out = coalloc::is_superadditive(g->impl) ? 1 : 0; });
}

int coalloc_game_is_binary(const coalloc_game* g, int* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] { *out = coalloc::is_binary(g->impl) ? 1 : 0; });
}

int coalloc_game_minimal_sets(const coalloc_game* g, uint32_t* out,
                              size_t capacity, size_t* count) {
  if (g == nullptr || count == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "game and count must not be NULL");
  }
  return guarded([&] {
    const std::vector<coalloc::mask_t> sets = coalloc::minimal_sets(g->impl);
    *count = sets.size();
    if (out != nullptr) {
      const std::size_t m = std::min(capacity, sets.size());
      for (std::size_t k = 0; k < m; ++k) out[k] = sets[k];
    }
  });
}

int coalloc_game_marginal(const coalloc_game* g, int player,
                          uint32_t coalition, double* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] {
    *out = coalloc::marginal_contribution(g->impl, player, coalition);
  });
}

int coalloc_game_truncate(const coalloc_game* g, uint32_t coalition,
                          coalloc_game** out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_game{coalloc::truncate(g->impl, coalition)};
  });
}

int coalloc_game_pair_truncate(const coalloc_game* g, uint32_t coalition,
                               int player, coalloc_game** out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_game{coalloc::pair_truncate(g->impl, coalition, player)};
  });
}

int coalloc_game_extend(const coalloc_game* g, int n_target,
                        const int* embedding, coalloc_game** out) {
  if (g == nullptr || embedding == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "game, embedding and out must not be NULL");
  }
  return guarded([&] {
    std::vector<int> emb(embedding, embedding + g->impl.n());
    *out = new coalloc_game{coalloc::extend(g->impl, n_target, emb)};
  });
}

int coalloc_game_shapley_value(const coalloc_game* g, double* out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] {
    const std::vector<double> v = coalloc::shapley_value(g->impl);
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

int coalloc_game_span(const coalloc_game* g, coalloc_span** out) {
  if (g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "game and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_span{coalloc::span_decompose_monotone_binary(g->impl)};
  });
}

void coalloc_span_free(coalloc_span* s) { delete s; }

size_t coalloc_span_size(const coalloc_span* s) {
  return s ? s->terms.size() : 0;
}

int coalloc_span_coefficient(const coalloc_span* s, size_t index,
                             double* out) {
  if (s == nullptr || out == nullptr || index >= s->terms.size()) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "bad span term access");
  }
  *out = s->terms[index].coefficient;
  return COALLOC_OK;
}

int coalloc_span_game(const coalloc_span* s, size_t index,
                      coalloc_game** out) {
  if (s == nullptr || out == nullptr || index >= s->terms.size()) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "bad span term access");
  }
  return guarded([&] { *out = new coalloc_game{s->terms[index].g}; });
}

/* ---- allocation operators --------------------------------------------- */

int coalloc_allocation_create(int n, const double* entries,
                              coalloc_allocation** out) {
  if (out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "out must not be NULL");
  }
  return guarded([&] {
    if (entries == nullptr) {
      *out = new coalloc_allocation{coalloc::allocation_matrix::zeros(n)};
    } else {
      coalloc::require_player_count(n);
      std::vector<double> e(entries,
                            entries + (static_cast<std::size_t>(n) << n));
      *out =
          new coalloc_allocation{coalloc::allocation_matrix(n, std::move(e))};
    }
  });
}

void coalloc_allocation_free(coalloc_allocation* a) { delete a; }

int coalloc_allocation_n(const coalloc_allocation* a) {
  return a ? a->impl.n() : 0;
}

size_t coalloc_allocation_columns(const coalloc_allocation* a) {
  return a ? a->impl.columns() : 0;
}

int coalloc_allocation_entry(const coalloc_allocation* a, int player,
                             uint32_t coalition, double* out) {
  if (a == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and out must not be NULL");
  }
  return guarded([&] { *out = a->impl.entry(player, coalition); });
}

int coalloc_allocation_entries(const coalloc_allocation* a, double* out) {
  if (a == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and out must not be NULL");
  }
  std::memcpy(out, a->impl.entries().data(),
              a->impl.entries().size() * sizeof(double));
  return COALLOC_OK;
}

int coalloc_allocation_from_json(const char* text, coalloc_allocation** out) {
  if (text == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "text and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_allocation{coalloc::io::parse_allocation(text)};
  });
}

int coalloc_allocation_to_json(const coalloc_allocation* a, char** out) {
  if (a == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and out must not be NULL");
  }
  return guarded(
      [&] { *out = copy_string(coalloc::io::write_allocation(a->impl)); });
}

int coalloc_allocation_special(int n, const int* permutation,
                               coalloc_allocation** out) {
  if (permutation == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "permutation and out must not be NULL");
  }
  return guarded([&] {
    coalloc::require_player_count(n);
    std::vector<int> perm(permutation, permutation + n);
    *out = new coalloc_allocation{
        coalloc::special_allocation(coalloc::set_chain(std::move(perm)))};
  });
}

int coalloc_allocation_shapley(int n, coalloc_allocation** out) {
  if (out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "out must not be NULL");
  }
  return guarded(
      [&] { *out = new coalloc_allocation{coalloc::shapley_matrix(n)}; });
}

int coalloc_allocation_apply(const coalloc_allocation* a,
                             const coalloc_game* g, double* out) {
  if (a == nullptr || g == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation, game and out must not be NULL");
  }
  return guarded([&] {
    const std::vector<double> p = coalloc::apply_allocation(a->impl, g->impl);
    std::memcpy(out, p.data(), p.size() * sizeof(double));
  });
}

/* ---- verification ------------------------------------------------------ */

int coalloc_check_efficiency(const coalloc_allocation* a, double tol,
                             coalloc_report** out) {
  return run_check(a, tol, out,
                   [](const auto& m, double t) { return coalloc::check_efficiency(m, t); });
}

int coalloc_check_reasonable_structural(const coalloc_allocation* a,
                                        double tol, coalloc_report** out) {
  return run_check(a, tol, out, [](const auto& m, double t) {
    return coalloc::check_reasonable_structural(m, t);
  });
}

int coalloc_check_abs_sums(const coalloc_allocation* a, double tol,
                           coalloc_report** out) {
  return run_check(a, tol, out,
                   [](const auto& m, double t) { return coalloc::check_abs_sums(m, t); });
}

int coalloc_check_row_sums_zero(const coalloc_allocation* a, double tol,
                                coalloc_report** out) {
  return run_check(a, tol, out, [](const auto& m, double t) {
    return coalloc::check_row_sums_zero(m, t);
  });
}

void coalloc_report_free(coalloc_report* r) { delete r; }

const char* coalloc_report_name(const coalloc_report* r) {
  return r ? r->impl.name.c_str() : "";
}

int coalloc_report_pass(const coalloc_report* r) {
  return (r && r->impl.pass) ? 1 : 0;
}

size_t coalloc_report_violation_count(const coalloc_report* r) {
  return r ? r->impl.violations.size() : 0;
}

int coalloc_report_violation(const coalloc_report* r, size_t index,
                             coalloc_violation* out) {
  if (r == nullptr || out == nullptr || index >= r->impl.violations.size()) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "bad violation access");
  }
  const coalloc::violation& v = r->impl.violations[index];
  out->condition = v.condition.c_str();
  out->player = v.player;
  out->coalition = v.coalition;
  out->observed = v.observed;
  out->required = v.required;
  return COALLOC_OK;
}

int coalloc_falsify(const coalloc_allocation* a, int sampler, int trials,
                    uint64_t seed, double tol, int* found,
                    coalloc_game** out_game, coalloc_falsify_info* out_info) {
  if (a == nullptr || found == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and found must not be NULL");
  }
  coalloc::sampler_kind kind;
  switch (sampler) {
    case COALLOC_SAMPLER_MONOTONE_RANDOM:
      kind = coalloc::sampler_kind::monotone_random;
      break;
    case COALLOC_SAMPLER_SUPERADDITIVE_PROBES:
      kind = coalloc::sampler_kind::superadditive_probes;
      break;
    case COALLOC_SAMPLER_BINARY_EXHAUSTIVE:
      kind = coalloc::sampler_kind::binary_exhaustive;
      break;
    default:
      return fail(COALLOC_ERROR_INVALID_ARGUMENT, "unknown sampler");
  }
  return guarded([&] {
    const auto hit =
        coalloc::find_reasonableness_violation(a->impl, kind, trials, seed, tol);
    *found = hit ? 1 : 0;
    if (hit) {
      if (out_game != nullptr) *out_game = new coalloc_game{hit->probe};
      if (out_info != nullptr) {
        out_info->player = hit->player;
        out_info->payoff = hit->payoff;
        out_info->lower = hit->lower;
        out_info->upper = hit->upper;
        std::snprintf(out_info->probe, sizeof out_info->probe, "%s",
                      hit->probe_name.c_str());
      }
    }
  });
}

/* ---- convex decomposition ---------------------------------------------- */

int coalloc_decompose(const coalloc_allocation* a, double tol,
                      coalloc_decomposition** out) {
  if (a == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation and out must not be NULL");
  }
  return guarded([&] {
    coalloc::peel_result r = coalloc::peel_decompose(a->impl, tol);
    *out = new coalloc_decomposition{std::move(r.certificate),
                                     std::move(r.trace)};
  });
}

void coalloc_decomposition_free(coalloc_decomposition* d) { delete d; }

int coalloc_decomposition_n(const coalloc_decomposition* d) {
  return d ? d->impl.n : 0;
}

size_t coalloc_decomposition_size(const coalloc_decomposition* d) {
  return d ? d->impl.terms.size() : 0;
}

int coalloc_decomposition_term(const coalloc_decomposition* d, size_t index,
                               int* perm_out, double* weight_out) {
  if (d == nullptr || index >= d->impl.terms.size()) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "bad certificate term access");
  }
  const coalloc::decomposition_term& t = d->impl.terms[index];
  if (perm_out != nullptr) {
    for (std::size_t k = 0; k < t.permutation.size(); ++k) {
      perm_out[k] = t.permutation[k];
    }
  }
  if (weight_out != nullptr) *weight_out = t.weight;
  return COALLOC_OK;
}

size_t coalloc_decomposition_steps(const coalloc_decomposition* d) {
  return (d && d->trace) ? d->trace->steps.size() : 0;
}

int coalloc_decomposition_trace_step(const coalloc_decomposition* d,
                                     size_t index, double* epsilon,
                                     double* residual_after) {
  if (d == nullptr || !d->trace || index >= d->trace->steps.size()) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "bad trace step access");
  }
  if (epsilon != nullptr) *epsilon = d->trace->steps[index].epsilon;
  if (residual_after != nullptr) {
    *residual_after = d->trace->steps[index].residual_after;
  }
  return COALLOC_OK;
}

int coalloc_decomposition_residual(const coalloc_decomposition* d,
                                   double* out) {
  if (d == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "decomposition and out must not be NULL");
  }
  if (!d->trace) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "this certificate has no peel trace");
  }
  *out = d->trace->final_residual;
  return COALLOC_OK;
}

int coalloc_decomposition_from_json(const char* text,
                                    coalloc_decomposition** out) {
  if (text == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT, "text and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_decomposition{coalloc::io::parse_decomposition(text),
                                     std::nullopt};
  });
}

int coalloc_decomposition_to_json(const coalloc_decomposition* d, char** out) {
  if (d == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "decomposition and out must not be NULL");
  }
  return guarded(
      [&] { *out = copy_string(coalloc::io::write_decomposition(d->impl)); });
}

int coalloc_verify_decomposition(const coalloc_allocation* a,
                                 const coalloc_decomposition* d, double tol,
                                 coalloc_report** out) {
  if (a == nullptr || d == nullptr || out == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "allocation, decomposition and out must not be NULL");
  }
  return guarded([&] {
    *out = new coalloc_report{
        coalloc::verify_decomposition(a->impl, d->impl, tol)};
  });
}

int coalloc_random_allocation(int n, int support, uint64_t seed,
                              coalloc_allocation** out_allocation,
                              coalloc_decomposition** out_certificate) {
  if (out_allocation == nullptr || out_certificate == nullptr) {
    return fail(COALLOC_ERROR_INVALID_ARGUMENT,
                "out parameters must not be NULL");
  }
  return guarded([&] {
    auto [matrix, cert] = coalloc::random_allocation(n, support, seed);
    *out_allocation = new coalloc_allocation{std::move(matrix)};
    *out_certificate =
        new coalloc_decomposition{std::move(cert), std::nullopt};
  });
}

} /* extern "C" */
