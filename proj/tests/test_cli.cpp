#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = kratzer::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) result.push_back(line);
  return result;
}

const std::vector<std::string> kKratzer{"--family", "kratzer", "--De", "5", "--re", "1"};
const std::vector<std::string> kScreened{"--family", "screened_kratzer", "--De", "5", "--re", "1", "--alpha", "0.25"};

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "kratzer_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval") {
  const auto single = run(cat({"eval"}, cat(kKratzer, {"--r", "1"})));
  CHECK(single.code == 0);
  CHECK(lines(single.out) == std::vector<std::string>{"r,V,dV,d2V", "1,-5,0,10"});

  const auto sweep = run(cat({"eval"}, cat(kScreened, {"--range", "0.5,5,0.1"})));
  CHECK(sweep.code == 0);
  CHECK(lines(sweep.out).size() == 1 + 46);

  const auto json = run(cat({"eval"}, cat(kKratzer, {"--r", "1,2", "--format", "json"})));
  const auto doc = nlohmann::json::parse(json.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[1]["V"] == -3.75);

  CHECK(run(cat({"eval"}, cat(kKratzer, {"--r", "0"}))).code == 3);
  CHECK(run(cat({"eval"}, kKratzer)).code == 2);
  CHECK(run({"eval", "-", "--r", "1"}, "{oops").code == 2);
  CHECK(run({"eval", "--family", "morse", "--r", "1"}).code == 2);
  CHECK(run({"eval", "--family", "kratzer", "--De", "-1", "--re", "1", "--r", "1"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("spec from stdin with flag overrides") {
  const std::string spec = R"({"family": "screened_kratzer", "params": {"De": 5, "re": 1, "alpha": 0.25}})";
  const auto a = run({"eval", "-", "--r", "1"}, spec);
  CHECK(a.code == 0);
  CHECK(lines(a.out)[1].rfind("1,-3.89400391536,", 0) == 0);
  const auto b = run({"eval", "-", "--alpha", "0", "--r", "1"}, spec);
  CHECK(lines(b.out)[1] == "1,-5,0,10");
}

TEST_CASE("diagnose") {
  const auto flawed = run(cat({"diagnose"}, kScreened));
  CHECK(flawed.code == 1);
  CHECK(flawed.out.find("0.973500978839") != std::string::npos);
  CHECK(flawed.out.find("0.907536453184") != std::string::npos);

  const auto ok = run(cat({"diagnose"}, kKratzer));
  CHECK(ok.code == 0);

  const auto json = run(cat({"diagnose"}, cat(kScreened, {"--corrected", "--format", "json"})));
  CHECK(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["flawed"] == false);
  CHECK(doc["actual_re"] == 1.0);
  CHECK(doc["family"] == "corrected_general");
}

TEST_CASE("correct") {
  for (const auto& args : {kScreened, kKratzer,
                           std::vector<std::string>{"--family", "hulthen_screened_cosine_kratzer", "--De", "5", "--re",
                                                    "1", "--alpha", "0.25", "--delta", "1", "--lambda", "0.5", "--V0",
                                                    "1"}}) {
    const auto r = run(cat({"correct"}, args));
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["validation"]["passed"] == true);
    CHECK(doc["corrected"]["family"] == "corrected_general");

    // The emitted spec reloads and stays corrected.
    const auto again = run({"diagnose", "-", "--format", "json"}, doc["corrected"].dump());
    CHECK(again.code == 0);
  }
  CHECK(run({"correct", "--family", "harmonic_screened_kratzer", "--De", "5", "--re", "1", "--alpha", "0.25", "--c",
             "0.1"})
            .code == 4);
}

TEST_CASE("solve") {
  const auto r = run(cat({"solve"}, cat(kKratzer, {"--l", "0,1", "--nmax", "2"})));
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "n,l,energy");
  CHECK(rows[1].rfind("0,0,-3.6492276", 0) == 0);
  CHECK(rows[6].rfind("2,1,", 0) == 0);

  const auto dir = temp_dir() / "wf";
  std::filesystem::remove_all(dir);
  const auto truncated =
      run(cat({"solve"}, cat(kScreened, {"--corrected", "--l", "2", "--nmax", "6", "--wavefunctions", dir.string()})));
  CHECK(truncated.code == 0);
  CHECK(truncated.err.find("binds only 4") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "wf_n3_l2.csv"));

  CHECK(run(cat({"solve"}, cat(kKratzer, {"--preset", "spectroscopic"}))).code == 2);
  CHECK(run(cat({"solve"}, cat(kKratzer, {"--preset", "custom", "--k", "0.5"}))).code == 0);
  CHECK(run({"solve", "--family", "corrected_general"}).code == 2);
}

TEST_CASE("config file") {
  const auto path = temp_dir() / "config.json";
  std::ofstream(path) << R"({"unit_preset": "custom", "kinetic_coefficient": 0.5, "format": "json",
                            "grid": {"n_points": 1500}})";
  const auto r = run(cat({"solve"}, cat(kKratzer, {"--config", path.string(), "--nmax", "0"})));
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc[0]["levels"][0]["n"] == 0);

  std::ofstream(path) << R"({"unknown": 1})";
  CHECK(run(cat({"solve"}, cat(kKratzer, {"--config", path.string()}))).code == 2);
}

TEST_CASE("fit") {
  const auto dir = temp_dir();
  const auto levels = run(cat({"solve"}, cat(kScreened, {"--corrected", "--l", "0,1,2", "--nmax", "1", "--points",
                                                         "1500"})));
  REQUIRE(levels.code == 0);
  const auto data = dir / "levels.csv";
  std::ofstream(data) << levels.out;

  const auto spec = dir / "start.json";
  std::ofstream(spec) << R"({"family": "screened_kratzer", "params": {"De": 4, "re": 1.2, "alpha": 0.25},
                              "corrected": true})";
  const auto r = run({"fit", spec.string(), data.string(), "--points", "1500"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["params"]["De"].get<double>() == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(doc["params"]["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(doc["converged"] == true);

  const auto one = dir / "one.csv";
  std::ofstream(one) << "0,0,-3.3\n";
  CHECK(run({"fit", spec.string(), one.string()}).code == 2);
  CHECK(run({"fit", spec.string(), (dir / "missing.csv").string()}).code == 2);
}
