#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "sheafcore/cli.hpp"
#include "sheafcore/document.hpp"

using namespace sheafcore;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return std::string(SHEAFCORE_BINARY_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("validate", "[cli]") {
  CHECK(run({"validate", fixtures::path("chain3.json")}).code == exit_ok);
  const Run cyc = run({"validate", fixtures::path("cycle.json")});
  CHECK(cyc.code == exit_structure);
  CHECK(cyc.err.find("a -> b -> a") != std::string::npos);
  const Run bad = run({"validate", fixtures::path("diamond_noncommuting.json")});
  CHECK(bad.code == exit_commutativity);
  CHECK(bad.err.find("between a and t") != std::string::npos);
  CHECK(run({"validate", fixtures::path("missing.json")}).code == exit_structure);
}

TEST_CASE("cohomology", "[cli]") {
  CHECK(run({"cohomology", fixtures::path("circle.json")}).report()["betti"] == json{1, 1});
  CHECK(run({"cohomology", fixtures::path("singleton3.json")}).report()["betti"] == json{3});
  CHECK(run({"cohomology", fixtures::path("chain_zero_map.json")}).report()["betti"] == json{1});
  const Run limited = run({"cohomology", fixtures::path("circle.json"), "--max-degree", "0"});
  CHECK(limited.report()["betti"] == json{1});
  const Run z = run({"cohomology", fixtures::path("circle_z.json")});
  CHECK(z.code == exit_usage);
  CHECK(z.err.find("homology") != std::string::npos);
  const json r = run({"cohomology", fixtures::path("circle.json")}).report();
  CHECK(r["generator"]["tool"] == "sheafcore");
  CHECK(r.contains("timing_ms"));
}

TEST_CASE("homology", "[cli]") {
  const json chain = run({"homology", fixtures::path("chain3.json")}).report();
  CHECK(chain["betti"] == json{1});
  CHECK(chain["reduced"]["betti"] == json::array());
  const json circ = run({"homology", fixtures::path("circle_z.json")}).report();
  CHECK(circ["betti"] == json{1, 1});
  CHECK(circ["torsion"] == json{json::array(), json::array()});
  CHECK(circ["reduced"]["betti"] == json{0, 1});
  CHECK(run({"homology", fixtures::path("antichain2.json")}).report()["betti"] == json{2});
  const Run warned = run({"homology", fixtures::path("chain_zero_map.json")});
  CHECK(warned.code == exit_ok);
  CHECK(warned.err.find("warning") != std::string::npos);
}

TEST_CASE("simplify and core", "[cli]") {
  const json chain = run({"simplify", fixtures::path("chain3.json"), "--strategy", "beats"}).report();
  CHECK(chain["trace"].size() == 2);
  CHECK(chain["sizes"]["after"] == 1);
  CHECK(chain["certified"] == true);
  CHECK(chain["document"]["elements"].size() == 1);
  CHECK(chain["generator"]["strategy"] == "beats");

  const json circ = run({"simplify", fixtures::path("circle.json")}).report();
  CHECK(circ["trace"].empty());
  CHECK(circ["sizes"]["after"] == 4);
  CHECK(circ["before"]["betti"] == circ["after"]["betti"]);

  const json p5 = run({"simplify", fixtures::path("p5_apex.json"), "--strategy", "acyclic-down"}).report();
  CHECK(p5["after"]["betti"] == json{1});

  const std::string out = temp_path("core_out.json");
  const Run c = run({"core", fixtures::path("chain3.json"), "--out", out});
  CHECK(c.code == exit_ok);
  CHECK(c.report()["core_size"] == 1);
  CHECK(c.report()["output"] == out);
  CHECK(run({"validate", out}).code == exit_ok);
  CHECK(read_document(out).elements == std::vector<std::string>{"c"});
  std::remove(out.c_str());

  const Run seeded = run({"core", fixtures::path("chain3.json"), "--seed", "9"});
  CHECK(seeded.code == exit_ok);
  CHECK(seeded.report()["core_size"] == 1);
}

TEST_CASE("strategy and coefficient checks", "[cli]") {
  CHECK(run({"simplify", fixtures::path("circle_z.json")}).code == exit_usage);
  CHECK(run({"core", fixtures::path("circle_z.json")}).code == exit_usage);
  const Run z = run({"simplify", fixtures::path("circle_z.json"), "--strategy", "constant-updown"});
  CHECK(z.code == exit_ok);
  CHECK(z.report()["before"]["betti"] == json{0, 1});
  CHECK(z.report()["document"]["field"] == "Z");
  CHECK(run({"simplify", fixtures::path("chain_zero_map.json"), "--strategy", "constant-updown"})
            .code == exit_usage);
  CHECK(run({"simplify", fixtures::path("circle.json"), "--strategy", "greedy"}).code == exit_usage);
  CHECK(run({"simplify", fixtures::path("diamond_noncommuting.json")}).code == exit_commutativity);
  CHECK(run({"frobnicate"}).code == exit_usage);
  CHECK(run({}).code == exit_usage);
  CHECK(run({"--help"}).code == exit_ok);
}
