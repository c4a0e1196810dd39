#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flexh/abstraction.hpp"
#include "flexh/activity_tree.hpp"
#include "flexh/csv.hpp"
#include "flexh/log_io.hpp"
#include "flexh/markers.hpp"
#include "flexh/xes.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace flexh;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("flexh-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + FLEXH_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_fixture_csv(const TempDir& dir) {
  fs::path p = dir.path / "log.csv";
  std::ofstream out(p);
  out << testing::table_csv();
  return p;
}

fs::path write_prefixed_xes(const TempDir& dir) {
  fs::path p = dir.path / "log.xes";
  std::ofstream out(p);
  write_xes(testing::prefixed_example_log(), out);
  return p;
}

}  // namespace

TEST_CASE("cli tree: label method groups the example table under C and L") {
  TempDir dir;
  fs::path input = write_fixture_csv(dir);
  fs::path out = dir.path / "tree-run";
  REQUIRE(run_cli("tree --input \"" + input.string() + "\" --format csv --method labels" +
                  " --sep _ --depth 1 --out \"" + out.string() + "\"") == 0);

  std::ifstream tree_in(out / "tree.json");
  REQUIRE(tree_in.good());
  ActivityTree tree = tree_from_json(tree_in);
  CHECK(tree.children.count("C") == 1);
  CHECK(tree.children.count("L") == 1);
  CHECK(tree.children_of("C").size() == 3);
  CHECK(tree.children_of("L").size() == 2);
  CHECK(fs::exists(out / "tree.dot"));
}

TEST_CASE("cli tree: flat method, repeated random runs are byte-identical") {
  TempDir dir;
  fs::path input = write_fixture_csv(dir);

  fs::path flat_out = dir.path / "flat";
  REQUIRE(run_cli("tree --input \"" + input.string() + "\" --method flat --out \"" +
                  flat_out.string() + "\"") == 0);
  std::ifstream tree_in(flat_out / "tree.json");
  ActivityTree flat = tree_from_json(tree_in);
  CHECK(flat.max_height() == 1);

  fs::path r1 = dir.path / "r1", r2 = dir.path / "r2";
  for (const auto& out : {r1, r2})
    REQUIRE(run_cli("tree --input \"" + input.string() +
                    "\" --method random --max-size 10 --seed 7 --out \"" + out.string() +
                    "\"") == 0);
  CHECK(slurp(r1 / "tree.json") == slurp(r2 / "tree.json"));
}

TEST_CASE("cli discover: label tree over the running example writes four models") {
  TempDir dir;
  fs::path input = write_prefixed_xes(dir);
  fs::path out = dir.path / "bundle";
  REQUIRE(run_cli("discover --input \"" + input.string() + "\" --format xes --method labels" +
                  " --noise 0.0 --out \"" + out.string() + "\"") == 0);

  for (const char* sp : {"C", "L", "S", "root"}) {
    CHECK(fs::exists(out / "models" / (std::string(sp) + ".pnml")));
    CHECK(fs::exists(out / "models" / (std::string(sp) + ".dot")));
    CHECK(fs::exists(out / "sublogs" / (std::string(sp) + ".xes")));
  }
  CHECK(fs::exists(out / "model.json"));
  CHECK(fs::exists(out / "tree.json"));

  // flat discovery produces exactly one model
  fs::path flat_out = dir.path / "flat-bundle";
  REQUIRE(run_cli("discover --input \"" + input.string() + "\" --format xes --method flat" +
                  " --noise 0.0 --out \"" + flat_out.string() + "\"") == 0);
  int pnml_count = 0;
  for (const auto& entry : fs::directory_iterator(flat_out / "models"))
    pnml_count += entry.path().extension() == ".pnml";
  CHECK(pnml_count == 1);
}

TEST_CASE("cli discover: --hide writes the selectively abstracted log") {
  TempDir dir;
  fs::path input = write_prefixed_xes(dir);
  fs::path out = dir.path / "bundle";
  REQUIRE(run_cli("discover --input \"" + input.string() + "\" --format xes --method labels" +
                  " --noise 0.0 --hide C,L --out \"" + out.string() + "\"") == 0);
  std::ifstream abstracted_in(out / "abstracted.xes");
  REQUIRE(abstracted_in.good());
  EventLog abstracted = parse_xes(abstracted_in);
  // first trace of the prefixed example: both subprocess spans collapsed
  CHECK(abstracted.traces[0].activities ==
        std::vector<std::string>{"C+start", "L+start", "L+end", "C+end"});
  // surgery activities stay concrete
  bool surgery_kept = false;
  for (const auto& a : abstracted.alphabet) surgery_kept = surgery_kept || a.rfind("S_", 0) == 0;
  CHECK(surgery_kept);
}

TEST_CASE("cli discover: tree not matching the log alphabet fails with the violations") {
  TempDir dir;
  fs::path input = write_fixture_csv(dir);
  // depth 2 exceeds the two-segment labels of the fixture
  CHECK(run_cli("discover --input \"" + input.string() + "\" --method labels --depth 2 --out \"" +
                (dir.path / "x").string() + "\"") != 0);
}

TEST_CASE("cli evaluate: writes report files with the table header") {
  TempDir dir;
  fs::path input = write_prefixed_xes(dir);
  fs::path out = dir.path / "bundle";
  REQUIRE(run_cli("discover --input \"" + input.string() + "\" --format xes --method labels" +
                  " --noise 0.0 --out \"" + out.string() + "\"") == 0);
  REQUIRE(run_cli("evaluate --input \"" + out.string() +
                  "\" --metrics fi,pr --seed 3 --jobs 2") == 0);
  std::string table = slurp(out / "report.txt");
  CHECK(table.find("Fi") != std::string::npos);
  CHECK(table.find("average") != std::string::npos);
  std::string json = slurp(out / "report.json");
  CHECK(json.find("\"subprocesses\"") != std::string::npos);

  // the report does not depend on the degree of parallelism
  fs::path serial = dir.path / "serial";
  REQUIRE(run_cli("evaluate --input \"" + out.string() + "\" --out \"" + serial.string() +
                  "\" --metrics fi,pr --seed 3 --jobs 1") == 0);
  CHECK(slurp(serial / "report.json") == json);

  // missing bundle
  CHECK(run_cli("evaluate --input \"" + (dir.path / "nope").string() + "\"") != 0);
}

TEST_CASE("cli: label-tree run beats the flat run on interleaved subprocesses") {
  TempDir dir;
  fs::path input = dir.path / "synthetic.csv";
  {
    auto truth = testing::hierarchical_ground_truth(4242, 30);
    std::ofstream out(input);
    write_csv(truth.log, out);
  }
  auto evaluate_f1 = [&](const std::string& method, const std::string& run) -> double {
    fs::path out = dir.path / run;
    REQUIRE(run_cli("discover --input \"" + input.string() + "\" --format csv --method " +
                    method + " --noise 0.0 --out \"" + out.string() + "\"") == 0);
    REQUIRE(run_cli("evaluate --input \"" + out.string() +
                    "\" --metrics fi,pr --seed 11 --jobs 2") == 0);
    std::istringstream json(slurp(out / "report.json"));
    nlohmann::json report;
    json >> report;
    REQUIRE(!report["averages"]["f1"].is_null());
    return report["averages"]["f1"].get<double>();
  };
  double hierarchical = evaluate_f1("labels", "dk");
  double flat = evaluate_f1("flat", "flat");
  CHECK(hierarchical >= flat);
}

TEST_CASE("cli: FLEXH_LOG_LEVEL controls stderr verbosity") {
  TempDir dir;
  fs::path input = write_fixture_csv(dir);
  fs::path err = dir.path / "stderr.txt";
  std::string base = std::string("\"") + FLEXH_CLI_PATH + "\" tree --input \"" +
                     input.string() + "\" --method flat --out \"" +
                     (dir.path / "t").string() + "\"";
  REQUIRE(WEXITSTATUS(std::system(
              ("FLEXH_LOG_LEVEL=info " + base + " >/dev/null 2>\"" + err.string() + "\"")
                  .c_str())) == 0);
  CHECK(slurp(err).find("[info]") != std::string::npos);
  REQUIRE(WEXITSTATUS(std::system(
              ("FLEXH_LOG_LEVEL=error " + base + " >/dev/null 2>\"" + err.string() + "\"")
                  .c_str())) == 0);
  CHECK(slurp(err).find("[info]") == std::string::npos);
}

TEST_CASE("write_log dispatcher and marker collapse") {
  EventLog log = testing::example_log();
  std::ostringstream csv_out, xes_out;
  write_log(log, LogFormat::Csv, csv_out);
  write_log(log, LogFormat::Xes, xes_out);
  std::istringstream csv_in(csv_out.str()), xes_in(xes_out.str());
  CHECK(parse_log(csv_in, LogFormat::Csv) == log);
  CHECK(parse_log(xes_in, LogFormat::Xes) == log);
  CHECK_THROWS(log_format_from_name("parquet"));

  EventLog abstracted = abstract_log(log, testing::example_tree(), "C");
  EventLog collapsed = collapse_markers(abstracted);
  CHECK(collapsed.traces[0].activities == std::vector<std::string>{"C", "Ca", "Gl", "C"});
}
