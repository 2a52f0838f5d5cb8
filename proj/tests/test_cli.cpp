#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "barnesbeta/cli.hpp"

using barnesbeta::cli_run;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json run_json(std::vector<std::string> args, const std::string& path) {
  args.push_back("--out");
  args.push_back(path);
  REQUIRE(cli_run(args) == 0);
  return json::parse(slurp(path));
}

}  // namespace

TEST_CASE("xi evaluation through the CLI") {
  json j = run_json({"xi", "--eval", "2"}, "/tmp/bb_cli_xi.json");
  CHECK(j["xi"].get<double>() == doctest::Approx(0.5235988).epsilon(1e-6));
}

TEST_CASE("eta subcommand value and error flags") {
  json j = run_json({"eta", "--M", "0", "--N", "1", "--a", "", "--b0", "1", "--b", "1", "--q",
                     "1.0"},
                    "/tmp/bb_cli_eta.json");
  CHECK(j["value_re"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(j["in_domain"].get<bool>());
  // q on the cut is a domain error -> exit 2
  CHECK(cli_run({"eta", "--M", "0", "--N", "1", "--a", "", "--b0", "1", "--b", "1", "--q",
                 "-2.0"}) == 2);
}

TEST_CASE("complex literals parse") {
  json j = run_json({"gamma", "--a", "1,1", "--w", "1.5+0.5i"}, "/tmp/bb_cli_g.json");
  CHECK(j["L_re"].get<double>() == doctest::Approx(0.16950464985170155).epsilon(1e-8));
  CHECK(j["L_im"].get<double>() == doctest::Approx(0.52024325787923675).epsilon(1e-8));
}

TEST_CASE("gamma subcommand barnes G and zeta") {
  json j = run_json({"gamma", "--G", "4"}, "/tmp/bb_cli_G.json");
  CHECK(j["G_re"].get<double>() == doctest::Approx(2.0).epsilon(1e-8));
  json z = run_json({"gamma", "--a", "1", "--w", "1", "--zeta-s", "3", "--nmax", "200"},
                    "/tmp/bb_cli_z.json");
  CHECK(z["zeta_re"].get<double>() == doctest::Approx(1.2020569031595943).epsilon(1e-10));
}

TEST_CASE("mass and moments subcommands") {
  json m = run_json({"mass", "--M", "0", "--N", "2", "--a", "", "--b0", "1", "--b", "1,1"},
                    "/tmp/bb_cli_mass.json");
  CHECK(m["sn_formula"].get<double>() == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(m["spread"].get<double>() < 1e-8);
  json mo = run_json({"moments", "--M", "1", "--N", "2", "--a", "1", "--b0", "1", "--b", "1,2",
                      "--k", "1"},
                     "/tmp/bb_cli_mom.json");
  CHECK(mo["value"].get<double>() > 0.0);
}

TEST_CASE("selberg and critical subcommands") {
  json s = run_json({"selberg", "--tau", "1.5", "--moment", "1", "--sign", "-1"},
                    "/tmp/bb_cli_sel.json");
  CHECK(s["value"].get<double>() == doctest::Approx(19.723479563785298).epsilon(1e-10));
  json c = run_json({"critical", "--moment", "2"}, "/tmp/bb_cli_crit.json");
  CHECK(c["value"].get<double>() == doctest::Approx(21600.0).epsilon(1e-10));
  CHECK(cli_run({"selberg", "--tau", "1.5"}) == 2);  // neither --q nor --moment
}

TEST_CASE("sampling to CSV and JSON stats") {
  REQUIRE(cli_run({"sample", "--law", "beta00", "--par1", "2", "--n", "50", "--format", "csv",
                   "--out", "/tmp/bb_cli_draws.csv"}) == 0);
  std::string csv = slurp("/tmp/bb_cli_draws.csv");
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 51);  // header + 50 draws
  CHECK(csv.rfind("draw\n", 0) == 0);

  json j = run_json({"sample", "--law", "beta00", "--par1", "2", "--n", "20000", "--q", "1"},
                    "/tmp/bb_cli_stats.json");
  CHECK(j["mean"].get<double>() ==
        doctest::Approx(2.0 / 3.0).epsilon(0.02));
  CHECK(j["n"].get<std::uint64_t>() == 20000);
}

TEST_CASE("verify suite: exit codes and deterministic bytes") {
  // quick smoke run of the gamma suite with a loose threshold
  CHECK(cli_run({"verify", "--suite", "gamma", "--tol", "1e-7", "--quick", "--deterministic",
                 "--out", "/tmp/bb_cli_v1.json"}) == 0);
  CHECK(cli_run({"verify", "--suite", "gamma", "--tol", "1e-7", "--quick", "--deterministic",
                 "--out", "/tmp/bb_cli_v2.json"}) == 0);
  CHECK(slurp("/tmp/bb_cli_v1.json") == slurp("/tmp/bb_cli_v2.json"));
  json j = json::parse(slurp("/tmp/bb_cli_v1.json"));
  CHECK(j["pass"].get<bool>());
  for (const auto& r : j["records"]) {
    CHECK(r.contains("name"));
    CHECK(r.contains("paper_ref"));
    CHECK(r.contains("lhs"));
    CHECK(r.contains("rhs"));
    CHECK(r.contains("residual"));
    CHECK(r.contains("threshold"));
    CHECK(r.contains("pass"));
  }
  // an absurd threshold fails -> exit 3
  CHECK(cli_run({"verify", "--suite", "gamma", "--tol", "1e-30", "--quick"}) == 3);
  // unknown suite -> domain error -> exit 2
  CHECK(cli_run({"verify", "--suite", "nope"}) == 2);
}

TEST_CASE("eta CLI example from the interface contract") {
  json j = run_json({"eta", "--M", "2", "--N", "2", "--a", "1,2", "--b0", "1", "--b", "1,1",
                     "--q", "1.0"},
                    "/tmp/bb_cli_eta22.json");
  CHECK(j["value_re"].get<double>() > 0.0);
  CHECK(j["value_re"].get<double>() < 1.0);
  CHECK(j["est_error"].get<double>() < 1e-8);
}

TEST_CASE("report subcommand emits the analytic vs MC table") {
  json j = run_json({"report", "--law", "critical", "--n", "5000"}, "/tmp/bb_cli_rep.json");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["analytic"].get<double>() == doctest::Approx(24.0));
  CHECK(j["rows"][0]["mc_mean"].get<double>() > 0.0);
}

TEST_CASE("usage errors exit 64") {
  CHECK(cli_run({"frobnicate"}) == 64);
  CHECK(cli_run({"eta", "--M", "1"}) == 64);  // missing required options
  CHECK(cli_run({}) == 64);
}
