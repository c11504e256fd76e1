#include <doctest.h>

#include "helpers.hpp"
#include "zerograph/errors.hpp"
#include "zerograph/json_io.hpp"
#include "zerograph/superact.hpp"

using namespace zerograph;
using io::json;
using testutil::max_abs;

TEST_CASE("CMat encoding") {
  CMat m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const json j = io::to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  CHECK(j["data"][1][0] == 3.0);  // row-major
  CHECK(j["data"][1][1] == 4.0);
  CHECK(max_abs(io::cmat_from_json(j) - m) == 0.0);

  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    const CMat r = testutil::random_matrix(rng, 1 + rep % 4, 1 + rep % 3);
    const CMat back = io::cmat_from_json(json::parse(io::to_json(r).dump()));
    CHECK(max_abs(back - r) == 0.0);  // shortest round-trip is exact
  }

  CHECK_THROWS_AS(io::cmat_from_json(json::parse(R"({"rows": 1, "cols": 2, "data": [[1, 0]]})")), FormatError);
  CHECK_THROWS_AS(io::cmat_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")), FormatError);
  CHECK_THROWS_AS(io::cmat_from_json(json::parse(R"({"rows": 1, "data": [[1, 0]]})")), FormatError);
  CHECK_THROWS_AS(io::cmat_from_json(json::parse(R"([1, 2])")), FormatError);
}

TEST_CASE("channel, basis, observable and graph encodings") {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 10; ++rep) {
    const QuantumChannel ch = testutil::random_channel(rng, 2 + rep % 2, 3, 1 + rep % 3);
    const QuantumChannel back = io::channel_from_json(json::parse(io::to_json(ch).dump()));
    CHECK(back.env_dim() == ch.env_dim());
    for (int k = 0; k < ch.env_dim(); ++k) CHECK(max_abs(back.kraus()[k] - ch.kraus()[k]) == 0.0);
  }
  const json printed = io::to_json(paper_kraus());
  CHECK(printed["dim_in"] == 4);
  CHECK(printed["dim_out"] == 12);
  CHECK(printed["kraus"].size() == 3);

  const PositiveBasis pb = positive_basis(make_graph({3, GraphVariant::Ln}));
  const PositiveBasis pb2 = io::positive_basis_from_json(json::parse(io::to_json(pb).dump()));
  CHECK(pb2.count() == 10);

  const Observable obs = make_observable(paper_povm());
  const Observable obs2 = io::observable_from_json(json::parse(io::to_json(obs).dump()));
  CHECK(obs2.outcomes() == 5);
  CHECK(obs2.dim() == 4);

  const json graph = io::graph_to_json(8, graph_generators({4, GraphVariant::Ln}));
  CHECK(graph["generators"].size() == 16);
  CHECK(io::graph_from_json(graph).dim() == 16);

  // invariant violations surface from the constructors
  json bad_channel = printed;
  bad_channel["kraus"].erase(2);
  CHECK_THROWS_AS(io::channel_from_json(bad_channel), ValidationError);
  json wrong_shape = printed;
  wrong_shape["dim_in"] = 3;
  CHECK_THROWS_AS(io::channel_from_json(wrong_shape), FormatError);
  CHECK_THROWS_AS(io::observable_from_json(json::parse(R"({"dim": 2, "effects": []})")), FormatError);
}

TEST_CASE("report encoding") {
  Report r;
  r.construction = {{"name", "x"}};
  r.checks.push_back({"a", true, 0.0});
  r.checks.push_back({"b", false, 0.5});
  r.capacity_bound_bits = 1.0;
  const json j = io::to_json(r);
  CHECK(j["schema"] == "1");
  CHECK(j["checks"].size() == 2);
  CHECK(j["violation"].is_null());
  CHECK(j["checks"][1]["pass"] == false);
  CHECK_FALSE(r.all_passed());
  CHECK(r.failing() == std::vector<std::string>{"b"});

  const ViolationReport v = search_violation(make_graph({2, GraphVariant::L0}), 3, 1);
  const json jv = io::to_json(v);
  for (const char* key : {"graph_dim", "best_value", "phi", "psi", "starts", "seed", "converged_fraction"})
    CHECK(jv.contains(key));
  CHECK(jv["phi"]["rows"] == 4);
}
