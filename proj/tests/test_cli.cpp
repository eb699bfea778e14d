#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "lclab/graph.hpp"
#include "lclab/reference.hpp"

using namespace lclab;
namespace fs = std::filesystem;

namespace {

// The binary under test; ctest exports LCLAB_BIN pointing at it.
const char* binary() { return std::getenv("LCLAB_BIN"); }

int run_cli(const std::string& args) {
  std::string cmd = std::string(binary()) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "lclab_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("cli: generation, degree scan, error exit codes") {
  if (!binary()) return;  // only meaningful under ctest
  auto dir = temp_dir();
  auto g_path = (dir / "g.el").string();

  CHECK(run_cli("gen --random-regular -n 100 -d 5 --seed 7 -o " + g_path) == 0);
  Graph g = read_edge_list_file(g_path);
  CHECK(reference::all_degrees_are(g, 5));

  CHECK(run_cli("gen --tree -d 3 --depth 2 -o " + (dir / "t.el").string()) == 0);
  CHECK(read_edge_list_file((dir / "t.el").string()).node_count() == 10);

  CHECK(run_cli("gen --random-regular -n 3 -d 3 --seed 1 -o " + (dir / "x.el").string()) == 2);
}

TEST_CASE("cli: run exit codes and byte-identical reruns") {
  if (!binary()) return;
  auto dir = temp_dir();
  auto g5 = (dir / "g5.el").string();
  auto g4 = (dir / "g4.el").string();
  REQUIRE(run_cli("gen --random-regular -n 100 -d 5 --seed 3 -o " + g5) == 0);
  REQUIRE(run_cli("gen --random-regular -n 100 -d 4 --seed 3 -o " + g4) == 0);

  auto out1 = (dir / "r1.json").string();
  auto out2 = (dir / "r2.json").string();
  CHECK(run_cli("run two-sweep --mode three-color -k 3 -i " + g5 + " -o " + out1) == 0);
  CHECK(run_cli("run two-sweep --mode three-color -k 3 -i " + g5 + " -o " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());

  // precondition violation: d = 4 < 3k-4
  CHECK(run_cli("run two-sweep --mode three-color -k 3 -i " + g4 + " -o /dev/null") == 2);

  CHECK(run_cli("run layered-mis -c 3 -i " + g4 + " -o /dev/null") == 0);
}

TEST_CASE("cli: verify subcommand on hand-made instances") {
  if (!binary()) return;
  auto dir = temp_dir();
  auto c4 = dir / "c4.el";
  spit(c4, "4 4 2\n0 1 0 0\n0 3 1 1\n1 2 1 0\n2 3 1 0\n");

  auto alternating = dir / "alt.json";
  spit(alternating, "[1,2,1,2]");
  CHECK(run_cli("verify partial -k 2 -i " + c4.string() + " -c " + alternating.string()) == 0);
  CHECK(run_cli("verify cut -i " + c4.string() + " -c " + alternating.string()) == 0);

  auto ones = dir / "ones.json";
  spit(ones, "[1,1,1,1]");
  auto lines_path = dir / "violations.jsonl";
  CHECK(run_cli("verify cut -i " + c4.string() + " -c " + ones.string() + " -o " +
                lines_path.string()) == 1);
  auto lines = slurp(lines_path);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 4);
}

TEST_CASE("cli: reduction report feeds the sinkless verifier") {
  if (!binary()) return;
  auto dir = temp_dir();
  auto report_path = dir / "reduce.json";
  CHECK(run_cli("reduce -d 3 -k 2 --host-depth 1 --oracle memoized -o " + report_path.string()) ==
        0);
  auto report = nlohmann::json::parse(slurp(report_path));
  CHECK(report["sound"] == true);
  CHECK(report["merged_count"] == 24);

  auto host_path = dir / "host.el";
  REQUIRE(run_cli("gen --tree2 -d 24 --depth 1 -o " + host_path.string()) == 0);
  auto orientation_path = dir / "orientation.json";
  spit(orientation_path, nlohmann::json{{"directed_edges", report["orientation"]["directed_edges"]}}
                             .dump());
  CHECK(run_cli("verify sinkless -i " + host_path.string() + " --orientation " +
                orientation_path.string() + " --exempt-leaves") == 0);

  CHECK(run_cli("reduce -d 3 -k 2 --host-depth 1 --oracle constant-white -o /dev/null") == 3);

  // virtual-graph export: edge list plus sidecar
  auto prefix = (dir / "vg").string();
  CHECK(run_cli("reduce -d 3 -k 2 --host-depth 1 --oracle memoized -o /dev/null --export-vg " +
                prefix) == 0);
  Graph vg = read_edge_list_file(prefix + ".el");
  CHECK(vg.node_count() == 1150);
  auto sidecar = nlohmann::json::parse(slurp(prefix + ".json"));
  CHECK(sidecar["merged"].size() == 24);
  CHECK(sidecar["colors"].size() == 1150);

  // determinism of the reduce report
  auto again = dir / "reduce2.json";
  CHECK(run_cli("reduce -d 3 -k 2 --host-depth 1 --oracle memoized -o " + again.string()) == 0);
  CHECK(slurp(report_path) == slurp(again));
}

TEST_CASE("cli: bench emits one entry per (n, seed)") {
  if (!binary()) return;
  auto dir = temp_dir();
  auto out = dir / "bench.json";
  CHECK(run_cli("bench --algo two-sweep --mode three-color -k 3 -d 5 --ns 64,128 --seeds 2 -o " +
                out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["entries"].size() == 4);
  for (const auto& e : j["entries"]) CHECK(e["verified"] == true);
}
