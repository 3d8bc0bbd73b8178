#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chom/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = chom::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("crosscheck of the main theorem") {
  auto r = run({"crosscheck", "hom-cycle", "-m", "6", "-n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("Z(1) + Z^14(2)") != std::string::npos);
}

TEST_CASE("closed form as json") {
  auto r = run({"closed-form", "euler-cycle", "-m", "6", "-n", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json{{"value", 13}});
  auto big = run({"--format", "json", "closed-form", "euler-cycle", "-m", "60", "-n", "70"});
  REQUIRE(big.code == 0);
  CHECK(nlohmann::json::parse(big.out)["value"] == "1180591620717411303421");
}

TEST_CASE("homology of a Φ cycle") {
  auto r = run({"homology", "phi", "-m", "2", "-n", "7", "-g", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["cells"] == nlohmann::json::array({7, 7}));
  CHECK(j["homology"]["groups"][0]["betti"] == 1);
  CHECK(j["homology"]["groups"][1]["betti"] == 1);
  CHECK(j["homology"]["groups"][1]["torsion"].empty());
  auto reduced = run({"homology", "phi", "-m", "2", "-n", "7", "-g", "3", "--reduced"});
  CHECK(reduced.out.find("homology Z(1)") != std::string::npos);
}

TEST_CASE("csv output") {
  auto r = run({"--format", "csv", "homology", "hom", "--source", "complete:2", "--target", "complete:3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "dim,betti,torsion\n0,1,-\n1,1,-\n");
}

TEST_CASE("graph files") {
  const auto path = std::filesystem::temp_directory_path() / "chom_cli_test_graph.txt";
  {
    std::ofstream f(path);
    f << "n 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
  }
  auto r = run({"homology", "ind", "--graph", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("homology Z^2(0)") != std::string::npos);
  auto reduced = run({"homology", "ind", "--graph", path.string(), "--reduced"});
  CHECK(reduced.out.find("homology Z(0)") != std::string::npos);
  std::filesystem::remove(path);
  CHECK(run({"homology", "ind", "--graph", path.string()}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"homology", "phi", "-m", "2", "-n", "7", "--frobnicate"}).code == 2);
  CHECK(run({"--format", "xml", "closed-form", "euler-cycle", "-m", "6", "-n", "4"}).code == 2);
  CHECK(run({"homology", "phi", "-m", "2"}).code == 2);
  CHECK(run({"homology", "phi", "-m", "2", "-n", "7", "--coeff", "4"}).code == 2);
  CHECK(run({"closed-form", "hom-cycle", "-m", "4", "-n", "4"}).code == 2);
  CHECK(run({"crosscheck", "ind-cycle", "-m", "9..3"}).code == 2);
  CHECK(run({"selftest", "--only", "11"}).code == 2);
  auto r = run({"homology", "phi", "-m", "2", "-n", "7", "--frobnicate"});
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("size guard") {
  auto r = run({"--max-cells", "1000", "homology", "hom", "-m", "6", "-n", "5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--max-cells") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  const std::vector<std::vector<std::string>> cases{
      {"--format", "json", "grind", "--north", "3", "--east", "3"},
      {"--format", "csv", "e2", "-m", "6", "-n", "4", "--ring", "Z2", "--method", "spectral"},
      {"--format", "json", "euler", "cycle", "-m", "9", "-n", "5"},
      {"--format", "json", "closed-form", "e2", "-m", "8", "-n", "6"}};
  for (const auto& args : cases) {
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find('.') == std::string::npos);  // integers only
  }
}

TEST_CASE("other subcommands") {
  auto grind = run({"--format", "json", "grind", "-m", "3", "-n", "6"});
  REQUIRE(grind.code == 0);
  auto g = nlohmann::json::parse(grind.out);
  CHECK(g["census"] == nlohmann::json{{"cubes", 2}, {"dim", 3}, {"circles", 1}});
  CHECK(g["trace"].size() > 0);
  auto both = run({"e2", "-m", "6", "-n", "4", "--ring", "Z2", "--method", "both"});
  CHECK(both.code == 0);
  CHECK(both.out.find("PASS") != std::string::npos);
  auto euler = run({"--format", "json", "euler", "hom", "-m", "5", "-n", "4"});
  CHECK(nlohmann::json::parse(euler.out)["reduced_euler"] == -1);
  auto arcs = run({"crosscheck", "arcs", "-m", "6..8", "-n", "4..5"});
  CHECK(arcs.code == 0);
  CHECK(arcs.out.find("FAIL") == std::string::npos);
  auto garland = run({"--format", "json", "closed-form", "cycle-garland", "-m", "6", "-n", "6", "-r", "3"});
  CHECK(nlohmann::json::parse(garland.out) == nlohmann::json{{"cubes", 12}, {"dim", 3}, {"circles", 2}});
  auto maps = run({"homology", "cyclemap", "-m", "5", "-n", "3", "-w", "1", "--reduced"});
  CHECK(maps.out.find("homology Z(1)") != std::string::npos);
  auto self = run({"selftest", "--only", "1,6"});
  CHECK(self.code == 0);
  CHECK(self.out.find("PASS  1") != std::string::npos);
  CHECK(self.out.find("PASS  6") != std::string::npos);
}
