#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ptrie::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("constants") {
  const auto r = invoke({"constants", "--source", "0.5,0.5", "--k", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "constants");
  CHECK(j["results"]["constants"][0]["fe_star"].get<double>() == 0.25);
  CHECK(j["results"]["H"].get<double>() == doctest::Approx(0.693147180559945));
  CHECK(j["results"]["constants"][0]["fourier"].size() == 17);
  CHECK(j["config"]["source"] == "0.5,0.5");
  CHECK_FALSE(j.contains("timestamp"));

  const auto csv = invoke({"constants", "--source", "uniform:3", "--k", "2,3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("k,rho_k,", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
}

TEST_CASE("indnum") {
  const auto r = invoke({"indnum", "--N", "800"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out)["results"];
  CHECK(std::abs(j["interval"][0].get<double>() - 0.60225) < 5e-4);
  CHECK(std::abs(j["interval"][1].get<double>() - 0.60316) < 5e-4);
  CHECK(j["alphas"].size() == 801);
}

TEST_CASE("simulate") {
  const auto r = invoke({"simulate", "--source", "0.5,0.5", "--n", "1", "--replicates", "5",
                         "--seed", "7", "--functional", "leaf"});
  REQUIRE(r.code == 0);
  const auto f = json::parse(r.out)["results"]["functionals"][0];
  CHECK(f["mean"].get<double>() == 1.0);
  CHECK(f["var"].get<double>() == 0.0);

  const auto csv = invoke({"simulate", "--source", "0.3,0.7", "--lambda", "50", "--replicates",
                           "20", "--seed", "3", "--functional", "k=2,alpha", "--paired-trie",
                           "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("name,mean,var,se_mean,se_var,skew,exkurt\n", 0) == 0);
  CHECK(csv.out.find("\ntrie:~alpha,") != std::string::npos);
}

TEST_CASE("same arguments give byte-identical output") {
  const std::vector<std::vector<std::string>> commands = {
      {"simulate", "--source", "0.3,0.7", "--n", "500", "--replicates", "30", "--seed", "5",
       "--functional", "k=2,k=3,alpha,internal", "--paired-trie"},
      {"fringe-dist", "--source", "uniform:3", "--n", "300", "--replicates", "10", "--seed", "6"},
      {"oscillate", "--source", "0.5,0.5", "--lambda0", "50", "--periods", "1", "--per-period",
       "3", "--replicates", "10", "--seed", "2"},
      {"enumerate", "--k", "5", "--source", "0.3,0.7"},
      {"constants", "--source", "0.2,0.3,0.5", "--k", "2,4"},
      {"indnum", "--N", "50", "--format", "csv"},
  };
  for (const auto& cmd : commands) {
    const auto a = invoke(cmd);
    const auto b = invoke(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  auto one = commands[0];
  one.insert(one.end(), {"--threads", "1"});
  auto four = commands[0];
  four.insert(four.end(), {"--threads", "4"});
  auto c1 = invoke(one), c4 = invoke(four);
  // the envelope does not echo the thread count
  CHECK(c1.out == c4.out);
}

TEST_CASE("enumerate text lines") {
  const auto r = invoke({"enumerate", "--k", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "(0:(0:*,1:*),1:*) 0.5 3\n(0:*,1:(0:*,1:*)) 0.5 3\n");
  const auto j = invoke({"enumerate", "--k", "4", "--format", "json"});
  CHECK(json::parse(j.out)["results"]["count"] == 5);
}

TEST_CASE("exit codes") {
  const auto unknown = invoke({"constants", "--source", "0.5,0.5", "--bogus", "1"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"constants", "--source", "0.5,0.6"}).code == 1);
  CHECK(invoke({"simulate", "--source", "0.5,0.5", "--replicates", "2"}).code == 1);
  const auto limit = invoke({"enumerate", "--k", "11"});
  CHECK(limit.code == 2);
  CHECK_FALSE(limit.err.empty());
  const auto depth = invoke({"simulate", "--source", "0.5,0.5", "--n", "100", "--max-depth", "2"});
  CHECK(depth.code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("timestamp is opt-in") {
  const auto r = invoke({"indnum", "--N", "5", "--timestamp"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).contains("timestamp"));
}

TEST_CASE("selftest") {
  const auto r = invoke({"selftest"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["results"]["passed"] == true);
}
