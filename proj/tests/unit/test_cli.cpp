#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "solenoid_lab/cli.hpp"
#include "solenoid_lab/point_cloud.hpp"

using namespace solenoid_lab;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse_report(const Outcome& o) {
  const Json doc = Json::parse(o.out);
  REQUIRE(doc.is_object());
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "inputs", "results", "version"});
  CHECK(doc["version"] == version_string);
  // round trip: re-serializing the parsed document reproduces it
  CHECK(doc.dump(2) + "\n" == o.out);
  return doc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "solenoid_lab_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify L(5,2)") {
  const Outcome o = invoke({"verify", "--p", "5", "--q", "-2"});
  CHECK(o.code == 0);
  const Json doc = parse_report(o);
  CHECK(doc["command"] == "verify");
  const Json& m = doc["results"]["matrix"];
  CHECK(m["p"] == 5);
  CHECK(m["q"] == -2);
  CHECK(m["r"] == -2);
  CHECK(m["s"] == 1);
  CHECK(doc["results"]["ps_minus_qr"] == 1);
  CHECK(doc["results"]["h1_order"] == 5);
  CHECK(doc["results"]["knotted"] == true);
  CHECK(doc["results"]["w"] == 6);
  CHECK(doc["results"]["all_hold"] == true);
  // defaults are echoed
  CHECK(doc["inputs"]["m"] == 1);
  CHECK(doc["inputs"]["eps"] == 0.5);
}

TEST_CASE("verify S^3 is unknotted") {
  const Outcome o = invoke({"verify", "--p", "1", "--q", "0"});
  CHECK(o.code == 0);
  CHECK(parse_report(o)["results"]["knotted"] == false);
}

TEST_CASE("precondition failures exit 1 with a one-line diagnostic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--p", "4", "--q", "2"},
           {"verify", "--p", "0", "--q", "1"},
           {"periodic", "--w", "1", "--n", "2"},
           {"periodic", "--w", "6", "--n", "13"},
           {"entropy", "--w", "2", "--n-max", "20"},
           {"lyapunov", "--w", "2", "--steps", "10"},
           {"attractor", "--w", "2", "--eps", "0.12", "--out", "/tmp/unused.csv"},
           {"simulate", "--p", "5", "--q", "-2", "--direction", "sideways"},
           {"bogus"},
           {},
           {"verify", "--p", "five", "--q", "2"},
       }) {
    const Outcome o = invoke(args);
    CAPTURE(o.err);
    CHECK(o.code == 1);
    CHECK(o.out.empty());
    CHECK(o.err.rfind("error: ", 0) == 0);
    CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
  }
  const Outcome nc = invoke({"verify", "--p", "4", "--q", "2"});
  CHECK(nc.err.find("NotCoprime") != std::string::npos);
}

TEST_CASE("I/O failures exit 2") {
  Outcome o = invoke({"dimension", "--in", "/nonexistent/cloud.csv"});
  CHECK(o.code == 2);
  CHECK(o.err.find("Io") != std::string::npos);
  o = invoke({"attractor", "--w", "2", "--samples", "5", "--out", "/nonexistent/dir/c.csv"});
  CHECK(o.code == 2);
  o = invoke({"entropy", "--w", "2", "--out", "/nonexistent/dir/r.json"});
  CHECK(o.code == 2);

  const auto bad = scratch("bad.csv");
  std::ofstream(bad) << "theta,x,y\n0.1,0.2\n";
  o = invoke({"dimension", "--in", bad.string()});
  CHECK(o.code == 2);
}

TEST_CASE("periodic and entropy reports") {
  Outcome o = invoke({"periodic", "--w", "2", "--n", "2"});
  CHECK(o.code == 0);
  Json doc = parse_report(o);
  CHECK(doc["results"]["count"] == 3);
  CHECK(doc["results"]["expected"] == 3);
  CHECK(doc["results"]["minimal_periods"]["1"] == 1);
  CHECK(doc["results"]["minimal_periods"]["2"] == 2);
  CHECK(doc["results"]["points"].size() == 3);
  CHECK(doc["results"]["max_residual"].get<double>() < 1e-10);

  o = invoke({"entropy", "--w", "2", "--n-max", "12"});
  CHECK(o.code == 0);
  doc = parse_report(o);
  CHECK(doc["results"]["estimate"].get<double>() ==
        doctest::Approx(std::log(4095.0) / 12).epsilon(1e-14));
  CHECK(doc["inputs"]["eps"] == 0.5);
}

TEST_CASE("lyapunov report") {
  const Outcome o = invoke({"lyapunov", "--w", "3", "--steps", "10000"});
  CHECK(o.code == 0);
  const Json doc = parse_report(o);
  CHECK(doc["results"]["max_abs_error"].get<double>() < 1e-6);
  CHECK(doc["inputs"]["reorth_period"] == 1);
  CHECK(doc["inputs"]["theta0"] == 0.1);
}

TEST_CASE("attractor file feeds dimension") {
  const auto cloud = scratch("cloud.csv");
  Outcome o = invoke({"attractor", "--w", "2", "--depth", "30", "--samples", "100000", "--seed",
                      "9", "--out", cloud.string()});
  CHECK(o.code == 0);
  Json doc = parse_report(o);
  CHECK(doc["results"]["points"] == 100000);
  const PointCloud c = load_cloud(cloud.string());
  CHECK(c.size() == 100000);

  o = invoke({"dimension", "--in", cloud.string(), "--scales",
              "0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625"});
  CHECK(o.code == 0);
  doc = parse_report(o);
  const double slope = doc["results"]["slope"].get<double>();
  CHECK(slope > 1.3);
  CHECK(slope < 1.7);
  CHECK(doc["results"]["counts"].size() == 6);

  o = invoke({"dimension", "--in", cloud.string(), "--scales", "0.1,abc"});
  CHECK(o.code == 1);
}

TEST_CASE("simulate summary") {
  const Outcome o =
      invoke({"simulate", "--p", "5", "--q", "-2", "--starts", "300", "--seed", "4"});
  CHECK(o.code == 0);
  const Json doc = parse_report(o);
  CHECK(doc["results"]["w"] == 6);
  CHECK(doc["results"]["fractions"]["ConvergedToAttractor"] == 1.0);
  CHECK(doc["results"]["max_transit_step"].get<int>() <= 2);
  CHECK(doc["inputs"]["max_steps"] == 60);
  CHECK(doc["inputs"]["direction"] == "forward");

  const Outcome b = invoke(
      {"simulate", "--p", "5", "--q", "-2", "--starts", "300", "--direction", "backward"});
  CHECK(b.code == 0);
  CHECK(parse_report(b)["results"]["fractions"]["ConvergedToAttractor"] == 1.0);
}

TEST_CASE("--out mirrors the report and identical runs are byte-identical") {
  const auto a = scratch("a.json");
  const auto b = scratch("b.json");
  const Outcome oa = invoke({"simulate", "--p", "7", "--q", "3", "--starts", "200", "--out",
                             a.string()});
  const Outcome ob = invoke({"simulate", "--p", "7", "--q", "3", "--starts", "200", "--out",
                             b.string()});
  CHECK(oa.code == 0);
  CHECK(slurp(a) == oa.out);
  CHECK(slurp(b) == ob.out);
  // only the echoed output path differs
  Json ja = Json::parse(oa.out), jb = Json::parse(ob.out);
  ja["inputs"].erase("out");
  jb["inputs"].erase("out");
  CHECK(ja == jb);
}

TEST_CASE("help and version") {
  Outcome o = invoke({"--version"});
  CHECK(o.code == 0);
  CHECK(o.out == std::string(version_string) + "\n");
  o = invoke({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("simulate") != std::string::npos);
}
