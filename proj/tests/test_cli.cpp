#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "zerograph/json_io.hpp"
#include "zerograph/povm.hpp"

using zerograph::io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = zerograph::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("zerograph_test_" + name);
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"reproduce", "theorem2", "--n", "99"}).code == 2);
  CHECK(run({"reproduce", "theorem2", "--n", "abc"}).code == 2);
  CHECK(run({"search", "--starts", "0"}).code == 2);
  CHECK(run({"search", "--graph", scratch("missing.json").string()}).code == 2);
  CHECK(run({"export", "--what", "nothing"}).code == 2);
  CHECK(run({"export"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("reproduce") != std::string::npos);
}

TEST_CASE("reproduce theorem2") {
  const Run r = run({"reproduce", "theorem2", "--n", "3", "--t", "0.7", "--starts", "100", "--seed", "42"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "1");
  CHECK(j["capacity_bound_bits"].get<double>() == doctest::Approx(std::log2(3.0)));
  CHECK(j["construction"]["env_dim"] == 4);
}

TEST_CASE("reproduce corollary1 reports the fixture span failures") {
  const Run r = run({"reproduce", "corollary1", "--t", "0", "--t", "1.57", "--starts", "100", "--seed", "42"});
  CHECK(r.code == 1);
  CHECK(r.err.find("povm_span_equals_L0") != std::string::npos);
  CHECK(r.err.find("kraus_graph_equals_L0") != std::string::npos);
  CHECK(r.err.find("builder_graph_equals_L0") != std::string::npos);
  CHECK(r.err.find("tensor_square_code") == std::string::npos);
  const json j = json::parse(r.out);
  CHECK(j["capacity_bound_bits"] == 1.0);
}

TEST_CASE("search") {
  const Run l0 = run({"search", "--graph", "l0", "--starts", "50", "--seed", "42"});
  CHECK(l0.code == 0);
  CHECK(json::parse(l0.out)["best_value"].get<double>() > 1e-4);

  const Run sq = run({"search", "--graph", "l0sq", "--starts", "100", "--seed", "7"});
  CHECK(sq.code == 0);
  CHECK(json::parse(sq.out)["best_value"].get<double>() <= 1e-10);

  const Run ln = run({"search", "--graph", "ln", "--n", "3", "--starts", "10"});
  CHECK(ln.code == 0);
  CHECK(json::parse(ln.out)["graph_dim"] == 10);

  // graph file produced by export
  const std::filesystem::path file = scratch("graph.json");
  CHECK(run({"export", "--what", "graph-l0", "--out", file.string()}).code == 0);
  const Run from_file = run({"search", "--graph", file.string(), "--starts", "50", "--seed", "42"});
  CHECK(from_file.code == 0);
  CHECK(json::parse(from_file.out)["best_value"] == json::parse(l0.out)["best_value"]);
  std::filesystem::remove(file);

  const std::filesystem::path garbage = scratch("garbage.json");
  std::ofstream(garbage) << "{not json";
  CHECK(run({"search", "--graph", garbage.string()}).code == 2);
  std::filesystem::remove(garbage);
}

TEST_CASE("export") {
  const Run povm = run({"export", "--what", "povm"});
  CHECK(povm.code == 0);
  const zerograph::Observable obs = zerograph::io::observable_from_json(json::parse(povm.out));
  CHECK(obs.outcomes() == 5);

  const Run kraus = run({"export", "--what", "kraus"});
  CHECK(kraus.code == 0);
  CHECK(zerograph::io::channel_from_json(json::parse(kraus.out)).env_dim() == 3);

  const Run ln = run({"export", "--what", "graph-ln", "--n", "4"});
  CHECK(ln.code == 0);
  const json g = json::parse(ln.out);
  CHECK(g["generators"].size() == 16);
  CHECK(zerograph::io::graph_from_json(g).dim() == 16);

  CHECK(run({"export", "--what", "psis"}).code == 0);
  CHECK(run({"export", "--what", "kraus"}).out == kraus.out);
  CHECK(run({"export", "--what", "kraus", "--pretty"}).out.find("\n  ") != std::string::npos);
}

TEST_CASE("povm-check") {
  const Run single = run({"povm-check", "--starts", "50"});
  CHECK(single.code == 0);
  const json j = json::parse(single.out);
  CHECK(j["observable"]["outcomes"] == 5);
  CHECK(j["observable"]["sharp"] == false);

  const Run sq = run({"povm-check", "--square", "--starts", "20", "--t", "0", "--t", "2"});
  CHECK(sq.code == 0);
  const json js = json::parse(sq.out);
  CHECK(js["observable"]["outcomes"] == 25);
  REQUIRE(js["codes"].size() == 2);
  CHECK(js["codes"][0]["indistinguishable"] == true);
  CHECK(js["codes"][1]["indistinguishable"] == true);

  CHECK(run({"povm-check", "--t", "0"}).code == 2);
}

TEST_CASE("determinism and output files") {
  const std::vector<std::string> args{"search", "--graph", "l0", "--starts", "40", "--seed", "3"};
  const Run a = run(args);
  ::setenv("ZEROGRAPH_THREADS", "3", 1);
  const Run b = run(args);
  ::unsetenv("ZEROGRAPH_THREADS");
  CHECK(a.out == b.out);

  const std::filesystem::path file = scratch("out.json");
  std::vector<std::string> with_out = args;
  with_out.push_back("--out");
  with_out.push_back(file.string());
  const Run c = run(with_out);
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == a.out);
  std::filesystem::remove(file);

  std::vector<std::string> unwritable = args;
  unwritable.push_back("--out");
  unwritable.push_back("/nonexistent-dir/x.json");
  CHECK(run(unwritable).code == 2);
}
