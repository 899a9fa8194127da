#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "lcaw/json_io.hpp"

using namespace lcaw;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& input) {
  static int counter = 0;
  std::string path = "cli_input_" + std::to_string(counter++) + ".json";
  {
    std::ofstream f(path);
    f << input;
  }
  std::string cmd = std::string(LCAW_CLI_PATH) + " " + args + " " + path + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::remove(path.c_str());
  return r;
}

const std::string kDiscrete3 =
    R"({"algebra":{"kind":"powerset","atoms":["p","q","r"]},)"
    R"("contact":{"kind":"overlap"},"bounded":{"kind":"all"}})";

}  // namespace

TEST_CASE("check-lca on a discrete structure holds with exit 0") {
  RunResult r = run_cli("check-lca", kDiscrete3);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("status") == "holds");
  REQUIRE(v.at("witnesses").empty());
  for (const auto& c : v.at("conditions")) REQUIRE(c.at("passed") == true);
}

TEST_CASE("check-lca on a glued structure fails with exit 1 and a witness") {
  std::string glued =
      R"({"algebra":{"kind":"powerset","atoms":["p","q"]},)"
      R"("contact":{"kind":"atom_graph","pairs":[["p","q"]]},"bounded":{"kind":"all"}})";
  RunResult r = run_cli("check-lca", glued);
  REQUIRE(r.exit_code == 1);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("status") == "fails");
  REQUIRE(!v.at("witnesses").empty());
}

TEST_CASE("compactify beta on the finite-cofinite structure reports overlap") {
  std::string fc =
      R"({"algebra":{"kind":"finite_cofinite"},"contact":{"kind":"overlap"},)"
      R"("bounded":{"kind":"finite"}})";
  RunResult r = run_cli("compactify beta", fc);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("relation").at("kind") == "overlap");
}

TEST_CASE("compactify sup of the mod-2 and mod-3 relations is the mod-6 relation") {
  std::string in =
      R"({"lca":{"algebra":{"kind":"ult_periodic","modulus":6},)"
      R"("contact":{"kind":"overlap"},"bounded":{"kind":"finite"}},)"
      R"("relations":[{"kind":"partition","modulus":2},{"kind":"partition","modulus":3}]})";
  RunResult r = run_cli("compactify sup", in);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("relation").at("kind") == "partition");
  REQUIRE(v.at("relation").at("modulus") == 6);
}

TEST_CASE("compactify compare places the one-point relation below a partition relation") {
  std::string in =
      R"({"lca":{"algebra":{"kind":"ult_periodic","modulus":2},)"
      R"("contact":{"kind":"overlap"},"bounded":{"kind":"finite"}},)"
      R"("first":{"kind":"c_rho"},"second":{"kind":"partition","modulus":2}})";
  RunResult r = run_cli("compactify compare", in);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("verdict") == "less");
  REQUIRE(!v.at("only_in_first").empty());
}

TEST_CASE("malformed JSON exits 2 with an error object") {
  RunResult r = run_cli("dualize", "this is not json");
  REQUIRE(r.exit_code == 2);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("status") == "error");
}

TEST_CASE("schema violations exit 2") {
  RunResult r = run_cli("check-lca", R"({"algebra":{"kind":"nope"}})");
  REQUIRE(r.exit_code == 2);
  REQUIRE(Json::parse(r.out).at("status") == "error");
  // missing required field
  RunResult r2 = run_cli("iota", R"({"lca":null})");
  REQUIRE(r2.exit_code == 2);
}

TEST_CASE("unknown subcommands exit 2") {
  RunResult r = run_cli("frobnicate", "{}");
  REQUIRE(r.exit_code == 2);
}

TEST_CASE("dualize emits the dual space and clusters") {
  RunResult r = run_cli("dualize", kDiscrete3);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("space").at("points").size() == 3);
  REQUIRE(v.at("clusters").size() == 3);
  // dot format gives a specialization digraph
  RunResult d = run_cli("dualize --format dot", kDiscrete3);
  REQUIRE(d.exit_code == 0);
  REQUIRE(d.out.rfind("digraph", 0) == 0);
}

TEST_CASE("frame emits the delta-ideal frame and its Hasse diagram") {
  RunResult r = run_cli("frame", kDiscrete3);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("size") == 8);
  RunResult d = run_cli("frame --format dot", kDiscrete3);
  REQUIRE(d.exit_code == 0);
  REQUIRE(d.out.rfind("graph", 0) == 0);
  REQUIRE(d.out.find("--") != std::string::npos);
}

TEST_CASE("round-trip reports the point bijection on a discrete space") {
  std::string space = R"({"points":["x","y"],"opens":[[],["x"],["y"],["x","y"]]})";
  RunResult r = run_cli("round-trip", space);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("status") == "holds");
  REQUIRE(v.at("point_bijection").size() == 2);
}

TEST_CASE("iota output parses back to the same principal ideal") {
  std::string in =
      R"({"lca":)" + kDiscrete3 +
      R"(,"ideal":{"kind":"principal","top":{"atoms":["p","q"]}}})";
  RunResult r = run_cli("iota", in);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("open").size() == 2);
  Algebra a = Algebra::powerset({"p", "q", "r"});
  Ideal back = parse_ideal(v.at("ideal"), a);
  REQUIRE(back.contains(a, a.element(0b011)));
  REQUIRE(!back.contains(a, a.element(0b100)));
}

TEST_CASE("morphism verdict is the baseline conditions, classification is reported") {
  std::string in =
      R"({"source":)" + kDiscrete3 + R"(,"target":)" + kDiscrete3 +
      R"(,"hom":{"kind":"identity"}})";
  RunResult r = run_cli("check-morphism", in);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  bool saw_is = false;
  for (const auto& c : v.at("conditions")) saw_is |= c.at("name") == "IS";
  REQUIRE(saw_is);
}

TEST_CASE("output is byte-identical across runs") {
  for (std::string cmd : {"check-lca", "dualize", "frame", "report"}) {
    RunResult a = run_cli(cmd, kDiscrete3);
    RunResult b = run_cli(cmd, kDiscrete3);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
  }
}

TEST_CASE("proximity restrict and reconstruct round trip through the CLI") {
  std::string lps = R"({"points":["a","b"],"bounded":[["a","b"]]})";
  RunResult r = run_cli("proximity restrict", lps);
  REQUIRE(r.exit_code == 0);
  Json v = Json::parse(r.out);
  REQUIRE(v.at("separated") == true);
  REQUIRE(v.at("algebra_size") == 4);
  RunResult q = run_cli("proximity reconstruct", lps);
  REQUIRE(q.exit_code == 0);
  Json w = Json::parse(q.out);
  REQUIRE(w.at("space").at("points") == Json::array({"a", "b"}));
  REQUIRE(w.at("separated") == true);
}
