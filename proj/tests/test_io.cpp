#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coalloc/io.hpp"
#include "oracles.hpp"

using namespace coalloc;

TEST_CASE("double formatting") {
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-1.0) == "-1");
  CHECK(io::format_double(0.5) == "0.5");
  // 17 significant digits round-trip any double.
  rng r(3);
  for (int t = 0; t < 200; ++t) {
    const double x = (2.0 * r.uniform01() - 1.0) * 1e3;
    CHECK(std::stod(io::format_double(x)) == x);
  }
}

TEST_CASE("game documents") {
  const std::string maj3 =
      "{\"n\":3,\"values\":[0,0,0,1,0,1,1,1]}";
  const game g = io::parse_game(maj3);
  CHECK(g.values() == oracles::maj3().values());
  CHECK(is_monotone(g));
  CHECK(io::write_game(g) == maj3);

  // Length mismatch and malformed text are parse errors.
  CHECK_THROWS_AS(io::parse_game("{\"n\":3,\"values\":[0,0,0,1,0,1,1]}"),
                  error);
  CHECK_THROWS_AS(io::parse_game("{\"n\":3,\"values\":"), error);
  CHECK_THROWS_AS(io::parse_game("[1,2,3]"), error);
  CHECK_THROWS_AS(io::parse_game("{\"values\":[0,1]}"), error);
  CHECK_THROWS_AS(io::parse_game("{\"n\":1,\"values\":[0,\"x\"]}"), error);
  try {
    io::parse_game("{\"n\":3,\"values\":[0,0,}");
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::parse_error);
    // nlohmann reports the offending position
    CHECK(std::string(e.what()).find("parse error at") != std::string::npos);
  }
}

TEST_CASE("labeled game documents normalize to bitmask order") {
  // The same majority game, written in increasing-cardinality order.
  const std::string by_cardinality =
      "{\"n\":3,"
      "\"values\":[0,0,0,0,1,1,1,1],"
      "\"labels\":[\"{}\",\"{1}\",\"{2}\",\"{3}\",\"{1,2}\",\"{1,3}\","
      "\"{2,3}\",\"{1,2,3}\"]}";
  const game g = io::parse_game(by_cardinality);
  CHECK(g.values() == oracles::maj3().values());
  // Saving is always canonical (bitmask order, no labels).
  CHECK(io::write_game(g) == "{\"n\":3,\"values\":[0,0,0,1,0,1,1,1]}");

  CHECK_THROWS_AS(
      io::parse_game("{\"n\":1,\"values\":[0,1],\"labels\":[\"{}\",\"{}\"]}"),
      error);
  CHECK_THROWS_AS(
      io::parse_game("{\"n\":1,\"values\":[0,1],\"labels\":[\"{}\"]}"),
      error);
}

TEST_CASE("allocation documents") {
  const allocation_matrix special =
      special_allocation(set_chain(std::vector<int>{1, 2, 3}));
  const std::string text = io::write_allocation(special);
  CHECK(text ==
        "{\"n\":3,\"rows\":["
        "[-1,1,0,0,0,0,0,0],"
        "[0,-1,0,1,0,0,0,0],"
        "[0,0,0,-1,0,0,0,1]]}");
  const allocation_matrix parsed = io::parse_allocation(text);
  CHECK(parsed.entries() == special.entries());

  CHECK_THROWS_AS(io::parse_allocation("{\"n\":2,\"rows\":[[0,0,0,0]]}"),
                  error);
  CHECK_THROWS_AS(
      io::parse_allocation("{\"n\":2,\"rows\":[[0,0,0,0],[0,0,0]]}"), error);
}

TEST_CASE("certificate documents") {
  decomposition d;
  d.n = 3;
  d.terms.push_back({{1, 2, 3}, 0.25});
  d.terms.push_back({{3, 1, 2}, 0.75});
  const std::string text = io::write_decomposition(d);
  CHECK(text ==
        "{\"n\":3,\"terms\":["
        "{\"perm\":[1,2,3],\"weight\":0.25},"
        "{\"perm\":[3,1,2],\"weight\":0.75}]}");
  const decomposition parsed = io::parse_decomposition(text);
  CHECK(parsed.n == 3);
  REQUIRE(parsed.terms.size() == 2);
  CHECK(parsed.terms[1].permutation == std::vector<int>{3, 1, 2});
  CHECK(parsed.terms[1].weight == 0.75);

  // Invalid or duplicate permutations are rejected at parse time.
  CHECK_THROWS_AS(io::parse_decomposition(
                      "{\"n\":2,\"terms\":[{\"perm\":[1,1],\"weight\":1}]}"),
                  error);
  CHECK_THROWS_AS(
      io::parse_decomposition("{\"n\":2,\"terms\":["
                              "{\"perm\":[1,2],\"weight\":0.5},"
                              "{\"perm\":[1,2],\"weight\":0.5}]}"),
      error);
}

TEST_CASE("documents nested in result objects are accepted") {
  const std::string nested_game =
      "{\"command\":\"falsify\",\"game\":{\"n\":1,\"values\":[0,1]}}";
  CHECK(io::parse_game(nested_game).value(mask_t{1}) == 1.0);

  const std::string nested_alloc =
      "{\"command\":\"shapley\",\"allocation\":{\"n\":1,\"rows\":[[-1,1]]}}";
  CHECK(io::parse_allocation(nested_alloc).entry(1, 1) == 1.0);

  const std::string nested_cert =
      "{\"command\":\"decompose\",\"certificate\":"
      "{\"n\":1,\"terms\":[{\"perm\":[1],\"weight\":1}]}}";
  CHECK(io::parse_decomposition(nested_cert).terms.size() == 1);
}

TEST_CASE("write-parse round trips are byte-identical") {
  rng r(44);
  for (int t = 0; t < 25; ++t) {
    const game g = oracles::random_signed_game(3, r);
    const std::string once = io::write_game(g);
    CHECK(io::write_game(io::parse_game(once)) == once);
  }
  for (int t = 0; t < 10; ++t) {
    const auto [a, cert] =
        random_allocation(4, 4, static_cast<std::uint64_t>(t));
    const std::string alloc_text = io::write_allocation(a);
    CHECK(io::write_allocation(io::parse_allocation(alloc_text)) == alloc_text);
    const std::string cert_text = io::write_decomposition(cert);
    CHECK(io::write_decomposition(io::parse_decomposition(cert_text)) ==
          cert_text);
  }
}
