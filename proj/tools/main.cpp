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

// coalloc command line tool. Talks to the library exclusively through the
// C interface in coalloc.h; result documents are composed here so their key
// order and number encoding stay byte-stable run to run.
//
// Exit codes: 0 computed (and all checks passed), 1 a verification command
// found violations, 2 input error (bad file, malformed document, bad flags).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coalloc.h"

namespace {

[[noreturn]] void die_input(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  std::exit(2);
}

void require_ok(int rc) {
  if (rc != COALLOC_OK) die_input(coalloc_last_error());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die_input("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// RAII over the C handles.
struct game_free_fn {
  void operator()(coalloc_game* g) const { coalloc_game_free(g); }
};
struct allocation_free_fn {
  void operator()(coalloc_allocation* a) const { coalloc_allocation_free(a); }
};
struct report_free_fn {
  void operator()(coalloc_report* r) const { coalloc_report_free(r); }
};
struct decomposition_free_fn {
  void operator()(coalloc_decomposition* d) const {
    coalloc_decomposition_free(d);
  }
};
struct span_free_fn {
  void operator()(coalloc_span* s) const { coalloc_span_free(s); }
};
using game_ptr = std::unique_ptr<coalloc_game, game_free_fn>;
using allocation_ptr = std::unique_ptr<coalloc_allocation, allocation_free_fn>;
using report_ptr = std::unique_ptr<coalloc_report, report_free_fn>;
using decomposition_ptr =
    std::unique_ptr<coalloc_decomposition, decomposition_free_fn>;
using span_ptr = std::unique_ptr<coalloc_span, span_free_fn>;

std::string owned_string(char* s) {
  std::string out(s);
  coalloc_string_free(s);
  return out;
}

game_ptr load_game(const std::string& path) {
  coalloc_game* g = nullptr;
  require_ok(coalloc_game_from_json(slurp(path).c_str(), &g));
  return game_ptr(g);
}

allocation_ptr load_allocation(const std::string& path) {
  coalloc_allocation* a = nullptr;
  require_ok(coalloc_allocation_from_json(slurp(path).c_str(), &a));
  return allocation_ptr(a);
}

decomposition_ptr load_certificate(const std::string& path) {
  coalloc_decomposition* d = nullptr;
  require_ok(coalloc_decomposition_from_json(slurp(path).c_str(), &d));
  return decomposition_ptr(d);
}

std::string game_json(const coalloc_game* g) {
  char* text = nullptr;
  require_ok(coalloc_game_to_json(g, &text));
  return owned_string(text);
}

std::string allocation_json(const coalloc_allocation* a) {
  char* text = nullptr;
  require_ok(coalloc_allocation_to_json(a, &text));
  return owned_string(text);
}

std::string certificate_json(const coalloc_decomposition* d) {
  char* text = nullptr;
  require_ok(coalloc_decomposition_to_json(d, &text));
  return owned_string(text);
}

// JSON fragments with the canonical number encoding.
std::string jnum(double x) {
  char buf[32];
  require_ok(coalloc_format_double(x, buf, sizeof buf));
  return buf;
}

std::string jbool(bool b) { return b ? "true" : "false"; }

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string jnum_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += jnum(xs[k]);
  }
  out += ']';
  return out;
}

std::string jint_array(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(xs[k]);
  }
  out += ']';
  return out;
}

std::string coalition_label(uint32_t mask, int n) {
  std::string out = "{";
  bool first = true;
  for (int p = 1; p <= n; ++p) {
    if (mask & (uint32_t{1} << (p - 1))) {
      if (!first) out += ',';
      out += std::to_string(p);
      first = false;
    }
  }
  out += '}';
  return out;
}

std::string report_json(const coalloc_report* r, int n) {
  std::string out = "{\"name\":";
  out += jstr(coalloc_report_name(r));
  out += ",\"pass\":";
  out += jbool(coalloc_report_pass(r) != 0);
  out += ",\"violations\":[";
  const size_t count = coalloc_report_violation_count(r);
  for (size_t k = 0; k < count; ++k) {
    coalloc_violation v;
    require_ok(coalloc_report_violation(r, k, &v));
    if (k) out += ',';
    out += "{\"condition\":";
    out += jstr(v.condition);
    out += ",\"player\":" + std::to_string(v.player);
    out += ",\"coalition\":" + jstr(coalition_label(v.coalition, n));
    out += ",\"observed\":" + jnum(v.observed);
    out += ",\"required\":" + jnum(v.required);
    out += '}';
  }
  out += "]}";
  return out;
}

void emit(const std::string& doc) { std::cout << doc << '\n'; }

std::vector<int> parse_perm_flag(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      while (used < item.size() && item[used] == ' ') ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      die_input("bad permutation entry \"" + item + "\"");
    }
  }
  if (out.empty()) die_input("empty permutation");
  return out;
}

report_ptr run_check(int which, const coalloc_allocation* a, double tol) {
  coalloc_report* r = nullptr;
  switch (which) {
    case 0: require_ok(coalloc_check_efficiency(a, tol, &r)); break;
    case 1: require_ok(coalloc_check_reasonable_structural(a, tol, &r)); break;
    case 2: require_ok(coalloc_check_abs_sums(a, tol, &r)); break;
    default: require_ok(coalloc_check_row_sums_zero(a, tol, &r)); break;
  }
  return report_ptr(r);
}

// ---- commands -----------------------------------------------------------

int cmd_shapley(const std::string& game_path, bool matrix) {
  game_ptr g = load_game(game_path);
  const int n = coalloc_game_n(g.get());
  std::string doc = "{\"command\":\"shapley\",\"n\":" + std::to_string(n);
  if (matrix) {
    coalloc_allocation* a = nullptr;
    require_ok(coalloc_allocation_shapley(n, &a));
    allocation_ptr ap(a);
    doc += ",\"allocation\":" + allocation_json(a);
  } else {
    std::vector<double> payoffs(static_cast<std::size_t>(n));
    require_ok(coalloc_game_shapley_value(g.get(), payoffs.data()));
    doc += ",\"payoffs\":" + jnum_array(payoffs);
  }
  doc += ",\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_check_game(const std::string& game_path) {
  game_ptr g = load_game(game_path);
  const int n = coalloc_game_n(g.get());
  int monotone = 0, superadditive = 0;
  require_ok(coalloc_game_is_monotone(g.get(), &monotone));
  require_ok(coalloc_game_is_superadditive(g.get(), &superadditive));
  size_t count = 0;
  require_ok(coalloc_game_minimal_sets(g.get(), nullptr, 0, &count));
  std::vector<uint32_t> masks(count);
  require_ok(coalloc_game_minimal_sets(g.get(), masks.data(), count, &count));

  std::string doc = "{\"command\":\"check-game\",\"n\":" + std::to_string(n);
  doc += ",\"monotone\":" + jbool(monotone != 0);
  doc += ",\"superadditive\":" + jbool(superadditive != 0);
  doc += ",\"minimal_sets\":[";
  for (size_t k = 0; k < masks.size(); ++k) {
    if (k) doc += ',';
    doc += jstr(coalition_label(masks[k], n));
  }
  doc += "],\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_special(int n, const std::string& perm_text) {
  const std::vector<int> perm = parse_perm_flag(perm_text);
  if (static_cast<int>(perm.size()) != n) {
    die_input("permutation must list all " + std::to_string(n) + " players");
  }
  coalloc_allocation* a = nullptr;
  require_ok(coalloc_allocation_special(n, perm.data(), &a));
  allocation_ptr ap(a);
  std::string doc = "{\"command\":\"special\",\"n\":" + std::to_string(n);
  doc += ",\"perm\":" + jint_array(perm);
  doc += ",\"allocation\":" + allocation_json(a);
  doc += ",\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_verify(const std::string& allocation_path, double tol) {
  allocation_ptr a = load_allocation(allocation_path);
  const int n = coalloc_allocation_n(a.get());
  bool pass = true;
  std::string reports = "[";
  for (int which = 0; which < 4; ++which) {
    report_ptr r = run_check(which, a.get(), tol);
    pass = pass && coalloc_report_pass(r.get()) != 0;
    if (which) reports += ',';
    reports += report_json(r.get(), n);
  }
  reports += ']';
  std::string doc = "{\"command\":\"verify\",\"n\":" + std::to_string(n);
  doc += ",\"tol\":" + jnum(tol);
  doc += ",\"reports\":" + reports;
  doc += ",\"pass\":" + jbool(pass) + "}";
  emit(doc);
  return pass ? 0 : 1;
}

int cmd_falsify(const std::string& allocation_path, const std::string& sampler,
                int trials, std::uint64_t seed, double tol) {
  allocation_ptr a = load_allocation(allocation_path);
  const int n = coalloc_allocation_n(a.get());
  int kind = 0;
  if (sampler == "monotone_random") {
    kind = COALLOC_SAMPLER_MONOTONE_RANDOM;
  } else if (sampler == "superadditive_probes") {
    kind = COALLOC_SAMPLER_SUPERADDITIVE_PROBES;
  } else if (sampler == "binary_exhaustive") {
    kind = COALLOC_SAMPLER_BINARY_EXHAUSTIVE;
  } else {
    die_input("unknown sampler \"" + sampler + "\"");
  }

  int found = 0;
  coalloc_game* probe = nullptr;
  coalloc_falsify_info info;
  require_ok(
      coalloc_falsify(a.get(), kind, trials, seed, tol, &found, &probe, &info));
  game_ptr probe_holder(probe);

  std::string doc = "{\"command\":\"falsify\",\"n\":" + std::to_string(n);
  doc += ",\"sampler\":" + jstr(sampler);
  doc += ",\"trials\":" + std::to_string(trials);
  doc += ",\"seed\":" + std::to_string(seed);
  doc += ",\"tol\":" + jnum(tol);
  doc += ",\"found\":" + jbool(found != 0);
  if (found) {
    doc += ",\"probe\":" + jstr(info.probe);
    doc += ",\"player\":" + std::to_string(info.player);
    doc += ",\"payoff\":" + jnum(info.payoff);
    doc += ",\"lower\":" + jnum(info.lower);
    doc += ",\"upper\":" + jnum(info.upper);
    doc += ",\"game\":" + game_json(probe);
  }
  doc += ",\"pass\":" + jbool(found == 0) + "}";
  emit(doc);
  return found ? 1 : 0;
}

int cmd_decompose(const std::string& allocation_path, double tol) {
  allocation_ptr a = load_allocation(allocation_path);
  const int n = coalloc_allocation_n(a.get());

  // The peeling contract only covers matrices passing both checks; run them
  // here so a failure reports the violations instead of a bare error.
  report_ptr efficiency = run_check(0, a.get(), tol);
  report_ptr structural = run_check(1, a.get(), tol);
  if (!coalloc_report_pass(efficiency.get()) ||
      !coalloc_report_pass(structural.get())) {
    const char* failed = !coalloc_report_pass(efficiency.get())
                             ? "efficiency"
                             : "reasonable_structural";
    std::string doc = "{\"command\":\"decompose\",\"n\":" + std::to_string(n);
    doc += ",\"tol\":" + jnum(tol);
    doc += ",\"failed_check\":" + jstr(failed);
    doc += ",\"reports\":[" + report_json(efficiency.get(), n) + "," +
           report_json(structural.get(), n) + "]";
    doc += ",\"pass\":false}";
    emit(doc);
    return 1;
  }

  coalloc_decomposition* d = nullptr;
  require_ok(coalloc_decompose(a.get(), tol, &d));
  decomposition_ptr dp(d);
  double residual = 0.0;
  require_ok(coalloc_decomposition_residual(d, &residual));

  std::string doc = "{\"command\":\"decompose\",\"n\":" + std::to_string(n);
  doc += ",\"tol\":" + jnum(tol);
  doc += ",\"certificate\":" + certificate_json(d);
  doc += ",\"steps\":" + std::to_string(coalloc_decomposition_steps(d));
  doc += ",\"residual\":" + jnum(residual);
  doc += ",\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_verify_cert(const std::string& allocation_path,
                    const std::string& cert_path, double tol) {
  allocation_ptr a = load_allocation(allocation_path);
  decomposition_ptr d = load_certificate(cert_path);
  const int n = coalloc_allocation_n(a.get());
  coalloc_report* r = nullptr;
  require_ok(coalloc_verify_decomposition(a.get(), d.get(), tol, &r));
  report_ptr rp(r);
  const bool pass = coalloc_report_pass(r) != 0;
  std::string doc = "{\"command\":\"verify-cert\",\"n\":" + std::to_string(n);
  doc += ",\"tol\":" + jnum(tol);
  doc += ",\"report\":" + report_json(r, n);
  doc += ",\"pass\":" + jbool(pass) + "}";
  emit(doc);
  return pass ? 0 : 1;
}

int cmd_generate(int n, int support, std::uint64_t seed) {
  coalloc_allocation* a = nullptr;
  coalloc_decomposition* d = nullptr;
  require_ok(coalloc_random_allocation(n, support, seed, &a, &d));
  allocation_ptr ap(a);
  decomposition_ptr dp(d);
  std::string doc = "{\"command\":\"generate\",\"n\":" + std::to_string(n);
  doc += ",\"support\":" + std::to_string(support);
  doc += ",\"seed\":" + std::to_string(seed);
  doc += ",\"allocation\":" + allocation_json(a);
  doc += ",\"certificate\":" + certificate_json(d);
  doc += ",\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_payoff(const std::string& allocation_path,
               const std::string& game_path) {
  allocation_ptr a = load_allocation(allocation_path);
  game_ptr g = load_game(game_path);
  const int n = coalloc_allocation_n(a.get());
  std::vector<double> payoffs(static_cast<std::size_t>(n));
  require_ok(coalloc_allocation_apply(a.get(), g.get(), payoffs.data()));
  std::string doc = "{\"command\":\"payoff\",\"n\":" + std::to_string(n);
  doc += ",\"payoffs\":" + jnum_array(payoffs);
  doc += ",\"pass\":true}";
  emit(doc);
  return 0;
}

int cmd_span(const std::string& game_path) {
  game_ptr g = load_game(game_path);
  const int n = coalloc_game_n(g.get());
  coalloc_span* s = nullptr;
  require_ok(coalloc_game_span(g.get(), &s));
  span_ptr sp(s);
  std::string doc = "{\"command\":\"span\",\"n\":" + std::to_string(n);
  doc += ",\"terms\":[";
  const size_t count = coalloc_span_size(s);
  for (size_t k = 0; k < count; ++k) {
    double coefficient = 0.0;
    require_ok(coalloc_span_coefficient(s, k, &coefficient));
    coalloc_game* term = nullptr;
    require_ok(coalloc_span_game(s, k, &term));
    game_ptr term_holder(term);
    if (k) doc += ',';
    doc += "{\"coefficient\":" + jnum(coefficient);
    doc += ",\"game\":" + game_json(term) + "}";
  }
  doc += "],\"pass\":true}";
  emit(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative-game allocation analysis"};
  app.require_subcommand(1);

  std::string game_path, allocation_path, cert_path, perm_text, sampler;
  bool matrix = false;
  int n = 0, support = 1, trials = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;

  auto* shapley = app.add_subcommand("shapley", "Shapley payoffs or operator");
  shapley->add_option("--game", game_path, "game document")->required();
  shapley->add_flag("--matrix", matrix, "emit the full operator matrix");

  auto* check_game =
      app.add_subcommand("check-game", "game predicates and minimal sets");
  check_game->add_option("--game", game_path, "game document")->required();

  auto* special =
      app.add_subcommand("special", "special allocation of a player ordering");
  special->add_option("--n", n, "player count")->required();
  special->add_option("--perm", perm_text, "joining order, e.g. \"2,1,3\"")
      ->required();

  auto* verify =
      app.add_subcommand("verify", "efficiency and reasonableness checks");
  verify->add_option("--allocation", allocation_path, "allocation document")
      ->required();
  verify->add_option("--tol", tol, "comparison tolerance");

  auto* falsify =
      app.add_subcommand("falsify", "search a game family for a violation");
  falsify->add_option("--allocation", allocation_path, "allocation document")
      ->required();
  falsify->add_option("--sampler", sampler,
                      "monotone_random | superadditive_probes | "
                      "binary_exhaustive")
      ->required();
  falsify->add_option("--trials", trials, "games to draw (random sampler)");
  falsify->add_option("--seed", seed, "random seed");
  falsify->add_option("--tol", tol, "comparison tolerance");

  auto* decompose = app.add_subcommand(
      "decompose", "convex combination of special allocations");
  decompose->add_option("--allocation", allocation_path, "allocation document")
      ->required();
  decompose->add_option("--tol", tol, "comparison tolerance");

  auto* verify_cert =
      app.add_subcommand("verify-cert", "check a decomposition certificate");
  verify_cert->add_option("--allocation", allocation_path,
                          "allocation document")
      ->required();
  verify_cert->add_option("--cert", cert_path, "certificate document")
      ->required();
  verify_cert->add_option("--tol", tol, "comparison tolerance");

  auto* generate =
      app.add_subcommand("generate", "seeded sample with its certificate");
  generate->add_option("--n", n, "player count")->required();
  generate->add_option("--support", support, "number of distinct orderings");
  generate->add_option("--seed", seed, "random seed");

  auto* payoff = app.add_subcommand("payoff", "apply an allocation to a game");
  payoff->add_option("--allocation", allocation_path, "allocation document")
      ->required();
  payoff->add_option("--game", game_path, "game document")->required();

  auto* span = app.add_subcommand(
      "span", "monotone binary game as superadditive binary terms");
  span->add_option("--game", game_path, "game document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (shapley->parsed()) return cmd_shapley(game_path, matrix);
  if (check_game->parsed()) return cmd_check_game(game_path);
  if (special->parsed()) return cmd_special(n, perm_text);
  if (verify->parsed()) return cmd_verify(allocation_path, tol);
  if (falsify->parsed()) {
    return cmd_falsify(allocation_path, sampler, trials, seed, tol);
  }
  if (decompose->parsed()) return cmd_decompose(allocation_path, tol);
  if (verify_cert->parsed()) {
    return cmd_verify_cert(allocation_path, cert_path, tol);
  }
  if (generate->parsed()) return cmd_generate(n, support, seed);
  if (payoff->parsed()) return cmd_payoff(allocation_path, game_path);
  if (span->parsed()) return cmd_span(game_path);
  return 2;
}
