#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "lambdak/cli.hpp"

using namespace lambdak;

namespace {

json unit_binary_json(long long x, long long y) {
  BinaryComplex b({1, 1});
  b.d_[1] = IntMatrix(1, 1, {{x}});
  b.dt_[1] = IntMatrix(1, 1, {{y}});
  return to_json(b);
}

#ifdef LAMBDAK_BIN
int run_cli(const std::string& args) {
  std::string cmd = std::string(LAMBDAK_BIN) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}
#endif

}  // namespace

TEST_CASE("matrix and complex JSON round trips") {
  IntMatrix m(2, 2);
  m(0, 0) = BigInt::from_string("123456789012345678901234567890");
  m(1, 1) = BigInt(-7);
  IntMatrix back = matrix_from_json(to_json(m));
  CHECK(back == m);

  BinaryComplex b({1, 2, 1});
  b.d_[2] = IntMatrix(2, 1, {{1}, {0}});
  b.d_[1] = IntMatrix(1, 2, {{0, 1}});
  b.dt_[2] = IntMatrix(2, 1, {{0}, {1}});
  b.dt_[1] = IntMatrix(1, 2, {{1, 0}});
  ParsedComplex pc = complex_from_json(to_json(b));
  CHECK(pc.binary);
  CHECK(pc.x.to_binary() == b);

  ChainComplex c({2, 1});
  c.set_diff(1, IntMatrix(2, 1, {{3}, {4}}));
  ParsedComplex pc2 = complex_from_json(to_json(c));
  CHECK(!pc2.binary);
  CHECK(multi_to_chain(pc2.x.choice(0)) == c);
}

TEST_CASE("malformed complex JSON raises ParseError") {
  CHECK_THROWS_AS(complex_from_json(json{{"dimension", 1}}), ParseError);
  json bad = to_json(ChainComplex({1, 1}));
  bad["differentials"]["d"]["1"]["1"]["entries"] = json::array({json::array({1, 2})});
  CHECK_THROWS_AS(complex_from_json(bad), ParseError);
}

TEST_CASE("cmd_reproduce") {
  RunReport r = cmd_reproduce("ex-counterexample");
  CHECK(r.pass());
  REQUIRE(!r.records.empty());
  CHECK(r.records[0].computed == "Z/2");
  CHECK(r.records[0].expected == "Z/2");

  RunReport inv = cmd_reproduce("ex-invertible", 3, 5);
  CHECK(inv.pass());
  CHECK(inv.records.size() == 1);

  CHECK_THROWS_AS(cmd_reproduce("ex-nope"), UnknownTarget);
}

TEST_CASE("cmd_derive") {
  SUBCASE("identity functor preserves the complex and its acyclicity") {
    ChainComplex c({1, 1});
    c.set_diff(1, IntMatrix(1, 1, {{1}}));
    auto res = cmd_derive(to_json(c), "L1");
    CHECK(res.acyclic);
    CHECK(res.length == 1);
    ParsedComplex out = complex_from_json(res.output["complex"]);
    CHECK(multi_to_chain(out.x.choice(0)) == c);
  }
  SUBCASE("binary unit complex under L2 lands in degrees 2,1") {
    auto res = cmd_derive(unit_binary_json(1, 1), "L2");
    ParsedComplex out = complex_from_json(res.output["complex"]);
    BinaryComplex bc = out.x.to_binary();
    CHECK(bc.rank(2) == 1);
    CHECK(bc.rank(1) == 1);
    CHECK(bc.rank(0) == 0);
    CHECK(res.output["verification"]["acyclic"].get<bool>());
    CHECK(res.output["verification"]["length_bound"].get<long>() == 2);
  }
  SUBCASE("bad functor text and bad JSON raise input errors") {
    CHECK_THROWS(cmd_derive(unit_binary_json(1, 1), "Q9"));
    CHECK_THROWS_AS(cmd_derive(json{{"dimension", 1}}, "L2"), ParseError);
  }
}

TEST_CASE("witness generation and replay through JSON") {
  SUBCASE("shift chain survives a serialization round trip") {
    json chain = cmd_witness_gen("shift", unit_binary_json(1, -1), 1, nullptr);
    CHECK(cmd_witness_check(chain).ok);
  }
  SUBCASE("tampering one matrix entry is caught and the cell is named") {
    json chain = cmd_witness_gen("shift", unit_binary_json(1, -1), 1, nullptr);
    // corrupt the first inclusion matrix of the first ses witness
    for (auto& w : chain["witnesses"])
      if (w["kind"] == "ses") {
        auto& maps = w["maps"]["inclusion"];
        auto it = maps.begin();
        long long v = 0;
        auto& entry = it.value()["entries"][0][0];
        if (entry.is_number_integer()) v = entry.get<long long>();
        entry = v + 1;
        break;
      }
    auto rep = cmd_witness_check(chain);
    CHECK(!rep.ok);
    CHECK(rep.detail.find("cell") != std::string::npos);
  }
  SUBCASE("product of a diagonal pair is a single diagonal witness") {
    json p = unit_binary_json(1, 1);
    json chain = cmd_witness_gen("product", p, 0, &p);
    CHECK(chain["witnesses"].size() == 1);
    CHECK(chain["witnesses"][0]["kind"] == "diagonal");
    CHECK(cmd_witness_check(chain).ok);
  }
  SUBCASE("product of a non-diagonal pair validates") {
    json p = unit_binary_json(1, -1);
    json q = unit_binary_json(1, 1);
    json chain = cmd_witness_gen("product", p, 0, &q);
    CHECK(cmd_witness_check(chain).ok);
  }
}

TEST_CASE("reports are deterministic apart from the clock") {
  RunReport a = cmd_reproduce("ex-axiom3");
  RunReport b = cmd_reproduce("ex-axiom3");
  json ja = a.to_json(), jb = b.to_json();
  ja.erase("wall_ms");
  jb.erase("wall_ms");
  CHECK(ja == jb);
}

#ifdef LAMBDAK_BIN
TEST_CASE("binary exit codes: 0 pass, 1 check failure, 2 input error") {
  CHECK(run_cli("reproduce ex-counterexample") == 0);
  CHECK(run_cli("reproduce ex-nope") == 2);
  CHECK(run_cli("plethysm 2 2") == 0);
  // witness gen then check through files
  std::string dir = "/tmp/lambdak_cli_test";
  std::system(("mkdir -p " + dir).c_str());
  {
    std::ofstream f(dir + "/n.json");
    f << unit_binary_json(1, -1).dump();
  }
  CHECK(run_cli("witness gen shift --input " + dir + "/n.json --k 1 --output " +
                dir + "/w.json") == 0);
  CHECK(run_cli("witness check --input " + dir + "/w.json") == 0);
  {
    std::ofstream f(dir + "/broken.json");
    f << "{ not json";
  }
  CHECK(run_cli("witness check --input " + dir + "/broken.json") == 2);
  CHECK(run_cli("derive --input " + dir + "/n.json --functor L2") == 0);
  CHECK(run_cli("derive --input " + dir + "/broken.json --functor L2") == 2);
}
#endif
