#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MUTKIT_TOOL) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string ex1() { return std::string(MUTKIT_DATA_DIR) + "/ex1.json"; }

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_tmp_" + name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
  return path;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("analyze: exact statistics of the bundled example") {
  const RunResult res = run("analyze --law " + ex1() + " --k 2");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);

  CHECK(doc["tau"].get<double>() == 1.5);
  CHECK(doc["k"].get<int>() == 2);

  REQUIRE(doc["eigenvalues"].size() == 4);
  const double expected_eigs[4] = {2.5, 1.5, 1.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(near(doc["eigenvalues"][i]["re"].get<double>(), expected_eigs[i],
               1e-9));
    CHECK(doc["eigenvalues"][i]["im"].get<double>() == 0.0);
  }

  const double expected_r[4] = {0.3, 0.2, 0.2, 0.3};
  for (int i = 0; i < 4; ++i)
    CHECK(doc["r"][i].get<double>() == expected_r[i]);

  const json& cond = doc["conditions"];
  CHECK(cond["irreducible"].get<bool>());
  CHECK(cond["radius_matches"].get<bool>());
  CHECK(cond["spectral_gap"].get<bool>());
  CHECK(cond["defective_ok"].get<bool>());
  CHECK(cond["m2km1_irreducible"].get<bool>());
  CHECK(cond["gap_threshold"].get<double>() == 2.25);

  CHECK(near(doc["theta_bar"][0][0].get<double>(), 61.0 / 60, 1e-12));
  CHECK(near(doc["theta"][0][0].get<double>(), 1193.0 / 1200, 1e-12));
  CHECK(near(doc["theta"][3][0].get<double>(), -307.0 / 1200, 1e-12));

  const double sigma_ref[4][4] = {
      {0.274685, -0.018852, -0.018852, -0.141981},
      {-0.018852, 0.033852, 0.033852, -0.018852},
      {-0.018852, 0.033852, 0.033852, -0.018852},
      {-0.141981, -0.018852, -0.018852, 0.274685},
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(near(doc["sigma"][i][j].get<double>(), sigma_ref[i][j], 5e-6));

  CHECK(doc["degeneracy"]["rank"].get<int>() == 3);
  CHECK_FALSE(doc["degeneracy"]["nondegenerate"].get<bool>());
  REQUIRE(doc["degeneracy"]["null_vectors"].size() == 1);
  CHECK(near(doc["degeneracy"]["psd_min_eigenvalue"].get<double>(), 0.0, 1e-9));
}

TEST_CASE("analyze: --exact renders rationals as strings") {
  const RunResult res = run("analyze --law " + ex1() + " --k 2 --exact");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["tau"].get<std::string>() == "3/2");
  CHECK(doc["r"][0].get<std::string>() == "3/10");
  CHECK(doc["r"][1].get<std::string>() == "1/5");
  CHECK(doc["theta_bar"][0][0].get<std::string>() == "61/60");
  CHECK(doc["theta"][0][0].get<std::string>() == "1193/1200");
  CHECK(doc["theta"][1][1].get<std::string>() == "77/300");
}

TEST_CASE("analyze: triple statistics") {
  const RunResult res = run("analyze --law " + ex1() + " --k 3 --exact");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc["r"].size() == 8);
  CHECK(doc["r"][0].get<std::string>() == "11/60");
  CHECK(doc["r"][2].get<std::string>() == "1/12");
  CHECK(doc["conditions"]["m2km1_irreducible"].get<bool>());
}

TEST_CASE("analyze: oversized tuple space fails cleanly") {
  const RunResult res = run("analyze --law " + ex1() + " --k 30");
  CHECK(res.exit_code == 1);
}

TEST_CASE("analyze: reducible laws report and exit 2") {
  const std::string path = write_temp("reducible.json", R"({
    "alphabet": ["0", "1"],
    "start": "01",
    "rules": {
      "0": [{"word": "00", "prob": 1}],
      "1": [{"word": "11", "prob": 1}]
    }
  })");
  const RunResult res = run("analyze --law " + path + " --k 2");
  CHECK(res.exit_code == 2);
  const json doc = json::parse(res.out);
  CHECK_FALSE(doc["conditions"]["irreducible"].get<bool>());
  CHECK(doc["theta"].is_null());
  CHECK(doc["sigma"].is_null());
  std::remove(path.c_str());
}

TEST_CASE("analyze: missing and malformed inputs exit 1") {
  CHECK(run("analyze --law no_such_file.json --k 2").exit_code == 1);

  const std::string bad = write_temp("bad.json", "{ not json");
  CHECK(run("analyze --law " + bad + " --k 2").exit_code == 1);
  std::remove(bad.c_str());

  const std::string sum = write_temp("badsum.json", R"({
    "alphabet": ["0", "1"],
    "rules": {
      "0": [{"word": "1", "prob": "1/3"}, {"word": "00", "prob": "1/2"}],
      "1": [{"word": "0", "prob": "1/2"}, {"word": "11", "prob": "1/2"}]
    }
  })");
  CHECK(run("analyze --law " + sum + " --k 2").exit_code == 1);
  std::remove(sum.c_str());

  CHECK(run("analyze --k 2").exit_code == 1);        // no --law
  CHECK(run("analyze --law x.json").exit_code == 1); // no --k
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("simulate: zero steps echo the start word statistics") {
  const RunResult res =
      run("simulate --law " + ex1() + " --k 2 --steps 0 --trials 3 --seed 7");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["steps"].get<int>() == 0);
  CHECK(doc["trials"].get<int>() == 3);
  CHECK(doc["seed"].get<int>() == 7);
  CHECK(doc["start"].get<std::string>() == "01");
  CHECK(doc["mean_fr"][0].get<double>() == 0.0);
  CHECK(doc["mean_fr"][1].get<double>() == 0.5);
  CHECK(doc["mean_fr"][2].get<double>() == 0.5);
  CHECK(doc["mean_fr"][3].get<double>() == 0.0);
  CHECK(doc["mean_centered"].is_null());
  CHECK(doc["emp_cov"].is_null());
}

TEST_CASE("simulate: byte-identical output across thread counts and reruns") {
  const std::string base =
      "simulate --law " + ex1() + " --k 2 --steps 300 --trials 40 --seed 99";
  const RunResult t1 = run(base + " --threads 1");
  const RunResult t8 = run(base + " --threads 8");
  const RunResult t1b = run(base + " --threads 1");
  CHECK(t1.exit_code == 0);
  CHECK(t1.out == t8.out);
  CHECK(t1.out == t1b.out);
  CHECK(t1.out.find("mean_fr") != std::string::npos);
}

TEST_CASE("simulate: refuses a law without a start word") {
  const std::string path = write_temp("nostart.json", R"({
    "alphabet": ["0", "1"],
    "rules": {
      "0": [{"word": "1", "prob": "1/2"}, {"word": "00", "prob": "1/2"}],
      "1": [{"word": "0", "prob": "1/2"}, {"word": "11", "prob": "1/2"}]
    }
  })");
  CHECK(run("simulate --law " + path + " --k 2 --steps 5 --trials 2 --seed 1")
            .exit_code == 1);
  std::remove(path.c_str());
}

TEST_CASE("increments: frozen law enumerates zero deltas") {
  const std::string path = write_temp("frozen.json", R"({
    "alphabet": ["0", "1"],
    "rules": {
      "0": [{"word": "0", "prob": 1}],
      "1": [{"word": "1", "prob": 1}]
    }
  })");
  const RunResult res = run("increments --law " + path + " --k 2");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc["rows"].size() == 8);  // one point-mass rule per 3-neighborhood
  for (const json& row : doc["rows"])
    for (const json& entry : row["delta"]) CHECK(entry.get<int>() == 0);
  std::remove(path.c_str());
}

TEST_CASE("increments: swap-or-double spot checks") {
  const RunResult res = run("increments --law " + ex1() + " --k 2");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc["rows"].size() == 16);
  bool found = false;
  for (const json& row : doc["rows"]) {
    if (row["v"].get<std::string>() == "000" &&
        row["eta"].get<std::string>() == "1") {
      found = true;
      CHECK(row["prob"].get<std::string>() == "1/2");
      const int want[4] = {-2, 1, 1, 0};
      for (int i = 0; i < 4; ++i) CHECK(row["delta"][i].get<int>() == want[i]);
    }
  }
  CHECK(found);
}

TEST_CASE("verify: the example law passes its own statistics") {
  const RunResult res =
      run("verify --law " + ex1() +
          " --k 2 --steps 600 --trials 600 --seed 20260814 --threads 4");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["analysis"]["conditions"]["irreducible"].get<bool>());
  CHECK(doc["simulation"]["trials"].get<int>() == 600);
  CHECK(doc["comparison"]["cov_pass"].get<bool>());
  CHECK(doc["comparison"]["fr_pass"].get<bool>());
  CHECK(doc["comparison"]["pass"].get<bool>());
  CHECK(doc["comparison"]["max_abs_z"].get<double>() <= 4.0);
  CHECK(doc["comparison"]["fr_max_abs_dev"].get<double>() <= 0.01);
}

TEST_CASE("verify: hypothesis failures skip the simulation") {
  const std::string path = write_temp("reducible2.json", R"({
    "alphabet": ["0", "1"],
    "start": "01",
    "rules": {
      "0": [{"word": "00", "prob": 1}],
      "1": [{"word": "11", "prob": 1}]
    }
  })");
  const RunResult res =
      run("verify --law " + path + " --k 2 --steps 10 --trials 5 --seed 1");
  CHECK(res.exit_code == 2);
  const json doc = json::parse(res.out);
  CHECK(doc["simulation"].is_null());
  CHECK(doc["comparison"].is_null());
  std::remove(path.c_str());
}

TEST_CASE("reports can be written to a file") {
  const std::string out_path = "cli_tmp_report.json";
  const RunResult res =
      run("analyze --law " + ex1() + " --k 2 --out " + out_path);
  CHECK(res.exit_code == 0);
  CHECK(res.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  const json doc = json::parse(in);
  CHECK(doc["k"].get<int>() == 2);
  std::remove(out_path.c_str());
}
