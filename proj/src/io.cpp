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

#include "coalloc/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace coalloc::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::parse_error, e.what());  // includes the byte position
  }
}

[[noreturn]] void bad(const std::string& what) {
  throw error(errc::parse_error, what);
}

int read_n(const json& j) {
  if (!j.is_object()) bad("document must be a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    bad("document needs an integer field \"n\"");
  }
  const auto n = j.at("n").get<std::int64_t>();
  if (n < 1 || n > max_players) {
    bad("\"n\" must be between 1 and " + std::to_string(max_players));
  }
  return static_cast<int>(n);
}

std::vector<double> read_numbers(const json& j, std::size_t want,
                                 const std::string& where) {
  if (!j.is_array() || j.size() != want) {
    bad(where + " must be an array of " + std::to_string(want) + " numbers");
  }
  std::vector<double> out;
  out.reserve(want);
  for (const auto& x : j) {
    if (!x.is_number()) bad(where + " must contain only numbers");
    const double v = x.get<double>();
    if (!std::isfinite(v)) bad(where + " must contain only finite numbers");
    out.push_back(v);
  }
  return out;
}

/// Result documents embed their payload under a known key; accept that too.
json unwrap(json j, const char* direct_key, const char* nested_key) {
  if (j.is_object() && !j.contains(direct_key) && j.contains(nested_key) &&
      j.at(nested_key).is_object()) {
    return j.at(nested_key);
  }
  return j;
}

void append_number_array(std::string& out, const std::vector<double>& xs) {
  out += '[';
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += format_double(xs[k]);
  }
  out += ']';
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

game parse_game(const std::string& text) {
  json j = unwrap(parse_json(text), "values", "game");
  const int n = read_n(j);
  const std::size_t width = std::size_t{1} << n;
  if (!j.contains("values")) bad("game document needs a \"values\" array");
  std::vector<double> values = read_numbers(j.at("values"), width, "\"values\"");

  if (j.contains("labels")) {
    const json& labels = j.at("labels");
    if (!labels.is_array() || labels.size() != width) {
      bad("\"labels\" must list one coalition per value");
    }
    std::vector<double> ordered(width, 0.0);
    std::vector<bool> seen(width, false);
    for (std::size_t k = 0; k < width; ++k) {
      if (!labels[k].is_string()) bad("\"labels\" must contain strings");
      const mask_t m =
          coalition::parse_label(labels[k].get<std::string>(), n).mask();
      if (seen[m]) bad("\"labels\" repeats coalition " + coalition(m, n).label());
      seen[m] = true;
      ordered[m] = values[k];
    }
    values = std::move(ordered);
  }
  return game(n, std::move(values));
}

std::string write_game(const game& g) {
  std::string out = "{\"n\":" + std::to_string(g.n()) + ",\"values\":";
  append_number_array(out, g.values());
  out += '}';
  return out;
}

allocation_matrix parse_allocation(const std::string& text) {
  json j = unwrap(parse_json(text), "rows", "allocation");
  const int n = read_n(j);
  const std::size_t width = std::size_t{1} << n;
  if (!j.contains("rows") || !j.at("rows").is_array() ||
      j.at("rows").size() != static_cast<std::size_t>(n)) {
    bad("allocation document needs a \"rows\" array with one row per player");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * width);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row = read_numbers(
        j.at("rows")[static_cast<std::size_t>(i)], width,
        "row " + std::to_string(i + 1));
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return allocation_matrix(n, std::move(entries));
}

std::string write_allocation(const allocation_matrix& a) {
  const std::size_t width = a.columns();
  std::string out = "{\"n\":" + std::to_string(a.n()) + ",\"rows\":[";
  for (int i = 0; i < a.n(); ++i) {
    if (i) out += ',';
    const double* row =
        a.entries().data() + static_cast<std::size_t>(i) * width;
    out += '[';
    for (std::size_t s = 0; s < width; ++s) {
      if (s) out += ',';
      out += format_double(row[s]);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

decomposition parse_decomposition(const std::string& text) {
  json j = unwrap(parse_json(text), "terms", "certificate");
  const int n = read_n(j);
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    bad("certificate document needs a \"terms\" array");
  }
  decomposition d;
  d.n = n;
  std::set<std::vector<int>> seen;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("perm") || !t.contains("weight")) {
      bad("each certificate term needs \"perm\" and \"weight\"");
    }
    const json& perm_json = t.at("perm");
    if (!perm_json.is_array() ||
        perm_json.size() != static_cast<std::size_t>(n)) {
      bad("\"perm\" must list all " + std::to_string(n) + " players");
    }
    std::vector<int> perm;
    for (const auto& p : perm_json) {
      if (!p.is_number_integer()) bad("\"perm\" must contain integers");
      perm.push_back(p.get<int>());
    }
    try {
      set_chain chain(perm);  // validates the permutation
    } catch (const error& e) {
      bad(e.what());
    }
    if (!seen.insert(perm).second) {
      bad("certificate repeats a permutation");
    }
    if (!t.at("weight").is_number()) bad("\"weight\" must be a number");
    const double w = t.at("weight").get<double>();
    if (!std::isfinite(w)) bad("\"weight\" must be finite");
    d.terms.push_back({std::move(perm), w});
  }
  return d;
}

std::string write_decomposition(const decomposition& d) {
  std::string out = "{\"n\":" + std::to_string(d.n) + ",\"terms\":[";
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    if (k) out += ',';
    out += "{\"perm\":[";
    for (std::size_t i = 0; i < d.terms[k].permutation.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(d.terms[k].permutation[i]);
    }
    out += "],\"weight\":" + format_double(d.terms[k].weight) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace coalloc::io
