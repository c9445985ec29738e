#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using cellboard::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json eval_json(std::vector<std::string> args) {
  args.insert(args.begin(), "eval");
  const Result r = call(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cellboard_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("eval: json output") {
  const auto dc = eval_json({"--criterion", "dc", "--h", "0", "--T", "5"});
  CHECK(dc["criterion"] == "dc");
  CHECK(dc["unique"] == true);
  CHECK(dc["threshold"] == 0.25);

  const auto dp = eval_json({"--criterion", "dp", "--h", "4", "--T", "1"});
  CHECK(dp["unique"] == true);
  CHECK(dp["value"].get<double>() < 0.5);

  const auto dc2 = eval_json({"--criterion", "dc", "--h", "1.3", "--T", "2.5"});
  const auto ds1 = eval_json({"--criterion", "ds", "--n", "1", "--h", "1.3", "--T", "2.5"});
  CHECK(ds1["value"].get<double>() ==
        doctest::Approx(4.0 * dc2["value"].get<double>()).epsilon(1e-12));
  CHECK(ds1["threshold"] == 1.0);

  const auto inf = eval_json({"--criterion", "ds", "--n", "2", "--L1", "inf", "--L2", "2", "--h",
                              "1", "--T", "3"});
  CHECK(inf["L1"] == "inf");
  CHECK(inf["L2"] == 2);
}

TEST_CASE("eval: csv output") {
  const Result r = call({"eval", "--criterion", "dc", "--h", "0", "--T", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "criterion,n,L1,L2,J,h,T,value,threshold,unique");
  CHECK(row.rfind("dc,", 0) == 0);
  CHECK(row.substr(row.size() - 4) == "true");
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"eval", "--criterion", "dc", "--h", "0"}).code == 2);
  CHECK(call({"eval", "--criterion", "dq", "--h", "0", "--T", "1"}).code == 2);
  CHECK(call({"eval", "--criterion", "dc", "--h", "0", "--T", "-1"}).code == 2);
  CHECK(call({"eval", "--criterion", "ds", "--h", "-1", "--T", "1"}).code == 2);
  CHECK(call({"eval", "--criterion", "ds", "--L1", "0", "--h", "1", "--T", "1"}).code == 2);
  CHECK(call({"eval", "--criterion", "ds", "--n", "4", "--h", "1", "--T", "1"}).code == 3);
  CHECK(call({"curve", "--criterion", "dc", "--h-grid", "0:1:2", "--T-grid", "0.5:0.5:20",
              "--plot", "--overlay", "/nonexistent/overlay.csv", "--out",
              fresh_dir("overlay").string()})
            .code == 4);
  CHECK(call({"verify", "--check", "nope"}).code == 2);
  CHECK(call({"verify", "--check", "groundstate", "--L1", "2"}).code == 2);

  const Result help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("eval") != std::string::npos);
  const Result version = call({"--version"});
  CHECK(version.code == 0);
  CHECK(!version.out.empty());
}

TEST_CASE("verify") {
  const Result dob0 = call({"verify", "--check", "dob0"});
  CHECK(dob0.code == 0);
  CHECK(dob0.out.rfind("PASS dob0", 0) == 0);
  CHECK(dob0.out.find("all checks passed") != std::string::npos);

  const Result gs = call({"verify", "--check", "groundstate", "--L1", "2", "--L2", "1"});
  CHECK(gs.code == 0);

  const Result many = call({"verify", "--check", "gamma1", "--check", "ds1", "--check", "dp4j"});
  CHECK(many.code == 0);
  CHECK(many.out.find("PASS gamma1") != std::string::npos);
  CHECK(many.out.find("PASS ds1") != std::string::npos);
  CHECK(many.out.find("PASS dp4j") != std::string::npos);

  // gamma_2(2,2) and gamma_2(1,1) differ pointwise (stripe placements), so
  // this check reports a failure and the command exits with code 5.
  const Result eq15 = call({"verify", "--check", "eq15"});
  CHECK(eq15.code == 5);
  CHECK(eq15.out.find("FAIL eq15") != std::string::npos);
  CHECK(eq15.out.find("verification FAILED") != std::string::npos);
}

TEST_CASE("curve: dc with plot") {
  const fs::path dir = fresh_dir("dc");
  const Result r = call({"curve", "--criterion", "dc", "--h-grid", "0:1:5", "--T-grid",
                         "0.05:0.05:100", "--out", dir.string(), "--plot"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "dc.csv"));
  CHECK(fs::exists(dir / "curve.svg"));

  const auto manifest = nlohmann::json::parse(slurp(dir / "dc.manifest.json"));
  for (const char* key : {"command", "version", "placement_mode", "tolerances", "timestamps",
                          "output", "params", "grids"}) {
    CHECK(manifest.contains(key));
  }
  CHECK(manifest["output"] == "dc.csv");
  CHECK(manifest["tolerances"]["refine_tol"] == 1e-6);

  const auto svg_manifest = nlohmann::json::parse(slurp(dir / "curve.svg.manifest.json"));
  CHECK(svg_manifest["curves"].size() == 1);

  std::istringstream svg(slurp(dir / "curve.svg"));
  boost::property_tree::ptree tree;
  CHECK_NOTHROW(boost::property_tree::read_xml(svg, tree));

  const std::string csv = slurp(dir / "dc.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("curve: ds lines in json") {
  const fs::path dir = fresh_dir("ds");
  Result r = call({"curve", "--criterion", "ds", "--n", "2", "--L1", "inf", "--L2", "1",
                   "--h-grid", "0.5:0.5:6", "--T-grid", "0.5:0.5:8", "--format", "json", "--out",
                   dir.string()});
  REQUIRE(r.code == 0);
  const auto curve = nlohmann::json::parse(slurp(dir / "ds_n2_infx1.json"));
  CHECK(curve["points"].size() == 8);

  r = call({"curve", "--criterion", "ds", "--n", "1", "--line", "T", "--h-grid", "0:1:3",
            "--T-grid", "0.5:0.5:12", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "ds_n1_1x1_tline.csv"));
  CHECK(fs::exists(dir / "ds_n1_1x1_tline.manifest.json"));

  CHECK(call({"curve", "--criterion", "ds", "--line", "x", "--out", dir.string()}).code == 2);
}

TEST_CASE("curve: figure preset with overlay on small grids") {
  const auto ids = cellboard::cli::figure_ids();
  CHECK(ids == std::vector<std::string>{"fig1", "fig2a", "fig2b", "fig3"});

  const fs::path dir = fresh_dir("fig3");
  fs::create_directories(dir);
  {
    std::ofstream overlay(dir / "ref.csv");
    overlay << "h,T\n0.5,0.3\n1.0,0.2\n";
  }
  const Result r = call({"curve", "--figure", "fig3", "--h-grid", "0.5:0.5:4", "--T-grid",
                         "0.1:0.1:6", "--overlay", (dir / "ref.csv").string(), "--out",
                         dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "fig3.svg"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "fig3.svg.manifest.json"));
  CHECK(manifest["figure"] == "fig3");
  CHECK(manifest["curves"].size() == 4);
  CHECK(manifest.contains("overlay"));
  std::istringstream svg(slurp(dir / "fig3.svg"));
  boost::property_tree::ptree tree;
  CHECK_NOTHROW(boost::property_tree::read_xml(svg, tree));

  CHECK(call({"curve", "--figure", "fig9", "--out", dir.string()}).code == 2);
}
