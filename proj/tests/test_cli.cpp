// Command-line surface: exit codes, output contracts, JSON mode, file
// output, and reproducibility, all driven in-process.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jscc/cli_app.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = jscc::execute(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help exits cleanly and lists the surface") {
  CliRun r = run({"--help"});
  CHECK(r.code == 0);
  for (const char* sub : {"info", "region", "minrate", "check", "twoway",
                          "simulate"})
    CHECK(contains(r.out + r.err, sub));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == 2);                      // missing subcommand
  CHECK(run({"frobnicate"}).code == 2);          // unknown subcommand
  CHECK(run({"minrate", "--model", "models/cover_salehi.json",
             "--theorem", "thm99"})
            .code == 2);                         // unknown selector
  CHECK(run({"info", "entropy", "--of", "S1"}).code == 2);  // missing model
  CliRun bad = run({"info", "entropy", "--model", "models/nope.json",
                    "--of", "S1"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "error"));
}

TEST_CASE("entropy and mutual-information queries") {
  CliRun r = run({"info", "entropy", "--model", "models/cover_salehi.json",
                  "--of", "S1,S2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "1.584963"));

  CliRun c = run({"info", "entropy", "--model", "models/cover_salehi_w1.json",
                  "--of", "S1", "--given", "W1"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "0.459148"));

  CliRun mi = run({"info", "mi", "--model", "models/cover_salehi.json",
                   "--a", "S1", "--b", "S2"});
  CHECK(mi.code == 0);
  CHECK(contains(mi.out, "0.251629"));
}

TEST_CASE("structure and common-part queries") {
  CliRun good = run({"info", "structure", "--model",
                     "models/cover_salehi_w1.json", "--chain", "S1:W1:S2"});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "holds"));

  CliRun cp = run({"info", "common-part", "--model",
                   "models/cover_salehi.json"});
  CHECK(cp.code == 0);
  CHECK(contains(cp.out, "cardinality"));
}

TEST_CASE("minimum-rate presets print frozen values with references") {
  CliRun xor_rate = run({"minrate", "--model", "models/independent_xor.json",
                         "--theorem", "thm3"});
  CHECK(xor_rate.code == 0);
  CHECK(contains(xor_rate.out, "0.66"));
  CHECK(contains(xor_rate.out, "0.67"));  // published value surfaced as a note

  CliRun w1 = run({"minrate", "--model", "models/cover_salehi_w1.json",
                   "--theorem", "thm2"});
  CHECK(w1.code == 0);
  CHECK(contains(w1.out, "0.612"));
  CHECK(contains(w1.out, "0.92"));
}

TEST_CASE("precondition violations exit with code 1 and a structured report") {
  CliRun r = run({"minrate", "--model", "models/cover_salehi.json",
                  "--theorem", "thm2"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "precondition violation"));
  CHECK(contains(r.err, "violated"));
  CHECK(contains(r.err, "--force"));

  CliRun forced = run({"minrate", "--model", "models/cover_salehi.json",
                       "--theorem", "thm2", "--force"});
  CHECK(forced.code == 0);
  CHECK(contains(forced.out, "sufficient"));
}

TEST_CASE("simulation validation propagates as exit code 2") {
  CliRun r = run({"simulate", "--model", "models/independent_xor.json",
                  "--scheme", "matched", "--m", "0"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "m must be >= 1"));
}

TEST_CASE("json output parses and carries the documented fields") {
  CliRun r = run({"minrate", "--model", "models/independent_xor.json",
                  "--theorem", "thm3", "--json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("criterion") == "thm3");
  CHECK(j.at("mode") == "exact");
  CHECK(double(j.at("b_min")) == doctest::Approx(2.0 / 3).epsilon(2e-3));
  CHECK(j.contains("preconditions"));
  CHECK(double(j.at("references").at("minrate.thm3")) ==
        doctest::Approx(0.67));

  CliRun rw = run({"minrate", "--model", "models/cover_salehi_w1.json",
                   "--theorem", "thm2", "--json"});
  CHECK(rw.code == 0);
  nlohmann::json jw = nlohmann::json::parse(rw.out);
  CHECK(double(jw.at("references").at("minrate.thm2")) ==
        doctest::Approx(0.92));

  CliRun sim = run({"simulate", "--model", "models/independent_xor.json",
                    "--scheme", "matched", "--m", "5", "--trials", "20",
                    "--seed", "4", "--json"});
  CHECK(sim.code == 0);
  nlohmann::json js = nlohmann::json::parse(sim.out);
  CHECK(js.at("scheme") == "matched");
  CHECK(int(js.at("trials")) == 20);
  CHECK(int(js.at("seed")) == 4);
}

TEST_CASE("identical invocations produce byte-identical output") {
  std::vector<std::string> cmd = {
      "simulate", "--model", "models/independent_xor.json", "--scheme",
      "matched", "--m", "6", "--trials", "40", "--seed", "12", "--json"};
  CliRun a = run(cmd);
  CliRun b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("--out writes the payload to a file") {
  std::string path = "build/test_cli_out.json";
  CliRun r = run({"minrate", "--model", "models/independent_uniform.json",
                  "--theorem", "thm3", "--json", "--out", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(ss.str());
  CHECK(double(j.at("b_min")) == doctest::Approx(4.0 / 3).epsilon(2e-3));
  std::remove(path.c_str());
}

TEST_CASE("region commands emit hulls and model dumps") {
  CliRun dump = run({"region", "dump", "--model",
                     "models/cover_salehi.json", "--json"});
  CHECK(dump.code == 0);
  nlohmann::json j = nlohmann::json::parse(dump.out);
  CHECK(j.at("channel").at("kind") == "mac");

  CliRun hull = run({"region", "hull", "--model", "models/cover_salehi.json",
                     "--grid", "0.1", "--json"});
  CHECK(hull.code == 0);
  nlohmann::json h = nlohmann::json::parse(hull.out);
  CHECK(h.at("points").size() > 0);
}

TEST_CASE("two-way subcommands expose bound and check") {
  CliRun outer = run({"twoway", "outer", "--model",
                      "models/shannon_multiplier.json"});
  CHECK(outer.code == 0);
  CHECK(contains(outer.out, "0.99999"));

  CliRun ach = run({"check", "--model", "models/shannon_multiplier.json",
                    "--theorem", "twoway-ach", "--uncoded"});
  CHECK(ach.code == 0);
  CHECK(contains(ach.out, "boundary"));
}

TEST_CASE("simulation csv mode emits the documented table") {
  CliRun r = run({"simulate", "--model", "models/independent_xor.json",
                  "--scheme", "uncoded", "--m", "8", "--trials", "25",
                  "--seed", "2", "--csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out,
                 "scheme,m,n,b,trials,seed,error_rate_rx1,error_rate_rx2,"
                 "e1,e2,e3,e4"));
  CHECK(contains(r.out, "uncoded,8,8,1.000000,25,2,"));
}

TEST_CASE("receiver-count guards for fixed-rate checks") {
  // Single-receiver rule on a two-receiver channel and vice versa.
  CHECK(run({"check", "--model", "models/compound_adder_shared_w.json",
             "--theorem", "thm1"})
            .code == 2);
  CHECK(run({"check", "--model", "models/cover_salehi.json",
             "--theorem", "thm4"})
            .code == 2);
}
