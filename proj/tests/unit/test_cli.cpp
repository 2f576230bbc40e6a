#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gwexcess/fixtures.hpp"
#include "gwexcess/io.hpp"

using namespace gwexcess;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  const int code = cli::run_cli(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gwexcess_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

json residual_example(unsigned bound) {
  return json{{"field", "F31"}, {"vars", {"x", "y"}}, {"J", {"x*y", "x^3"}}, {"degree_bound", bound}, {"lambda", {7, 2}}};
}

}  // namespace

TEST_CASE("excess on a fixture, with replay") {
  const Run r = run({"excess", "--fixture", "f31-square"});
  REQUIRE(r.code == 0);
  const json d = r.doc();
  CHECK(d["schema_version"] == 1);
  CHECK(d["config"]["subcommand"] == "excess");
  CHECK(d["report"]["gw_B"]["rank"] == 4);
  CHECK(d["report"]["gw_B"]["disc_is_square"] == true);
  CHECK(d["exit_code"] == 0);

  const Run replay = run({"--config", temp_file("replay.json", r.out)});
  CHECK(replay.code == 0);
  CHECK(replay.out == r.out);
  const Run from_stdin = run({"--config", "-"}, d["config"].dump());
  CHECK(from_stdin.out == r.out);
}

TEST_CASE("excess from an input file and stdin") {
  const json in = io::excess_input_to_json(*named_fixture("f31-nonsquare"));
  const Run a = run({"excess", "--input", temp_file("nonsquare.json", in.dump())});
  REQUIRE(a.code == 0);
  CHECK(a.doc()["report"]["gw_B"]["disc_is_square"] == false);
  CHECK(a.doc()["config"]["input"] == in);
  const Run b = run({"excess", "--input", "-"}, in.dump());
  CHECK(b.out == a.out);
  CHECK(run({"--config", temp_file("nonsquare_replay.json", a.out)}).out == a.out);
}

TEST_CASE("excess text output") {
  const Run r = run({"--format", "text", "excess", "--fixture", "f61-sample"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Jacobian identity: holds") != std::string::npos);
  CHECK(r.out.find("rank 4") != std::string::npos);
  CHECK(r.out.find("radical 5") != std::string::npos);
}

TEST_CASE("random excess input replays") {
  const Run a = run({"excess", "--random", "--field", "F11", "--seed", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.doc()["config"]["random"]["seed"] == 4);
  CHECK(run({"excess", "--random", "--field", "F11", "--seed", "4"}).out == a.out);
  CHECK(run({"--config", temp_file("random_replay.json", a.out)}).out == a.out);
}

TEST_CASE("inadmissible input is reported with its own exit code") {
  json in = io::excess_input_to_json(*named_fixture("f31-square"));
  for (auto& e : in["M"][0]) e = json::array({0, 0, 0});
  const Run r = run({"excess", "--input", "-"}, in.dump());
  CHECK(r.code == 2);
  CHECK(r.err.find("f0") != std::string::npos);
  CHECK(r.doc()["error"]["kind"] == "inadmissible_input");
  CHECK(r.doc()["report"].is_null());
}

TEST_CASE("usage and I/O errors") {
  CHECK(run({"excess", "--input", "/nonexistent/file.json"}).code == 1);
  CHECK(run({"excess", "--input", "-"}, "{not json").code == 1);
  CHECK(run({"excess", "--input", "-"}, R"({"field":"F31"})").code == 1);
  CHECK(run({"excess", "--bogus"}).code == 1);
  CHECK(run({"excess"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"excess", "--fixture", "nope"}).code == 1);
  CHECK(run({"excess", "--fixture", "f31-square", "--random"}).code == 1);
  CHECK(run({"--format", "xml", "excess", "--fixture", "f31-square"}).code == 1);
  CHECK(run({"--config", "-", "excess"}, "{}").code == 1);
  CHECK(run({"--config", "-"}, R"({"subcommand":"frobnicate"})").code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify on a pinned search result") {
  const PinnedSearch ps = pinned_searches().front();
  const std::string field = "F" + std::to_string(ps.p), seed = std::to_string(ps.seed);
  const Run r = run({"verify", "--random", "--field", field, "--seed", seed, "--max-degree",
                     std::to_string(ps.max_degree)});
  REQUIRE(r.code == 0);
  const json v = r.doc()["report"]["verdict"];
  CHECK(v["status"] == "verified");
  CHECK(v["found_rank"] == 16);
  CHECK(v["comparison"] == "equal");
  CHECK(r.doc()["config"]["budget"] == 200000000);

  // The same quadrics given explicitly.
  json in{{"field", field}, {"n", 5}, {"quadrics", r.doc()["report"]["quadrics"]}};
  const Run e = run({"verify", "--input", "-", "--max-degree", std::to_string(ps.max_degree)}, in.dump());
  CHECK(e.code == 0);
  CHECK(e.doc()["report"]["verdict"] == v);

  CHECK(run({"--config", temp_file("verify_replay.json", r.out)}).out == r.out);
}

TEST_CASE("verify status codes") {
  const PinnedSearch ps = pinned_searches().back();
  const std::string field = "F" + std::to_string(ps.p), seed = std::to_string(ps.seed);
  const Run low = run({"verify", "--random", "--field", field, "--seed", seed, "--max-degree", "1"});
  CHECK(low.code == 3);
  CHECK(low.doc()["report"]["verdict"]["status"] == "incomplete");

  const Run starved = run({"verify", "--random", "--field", field, "--seed", seed, "--budget", "1000"});
  CHECK(starved.code == 5);
  CHECK(starved.doc()["report"]["verdict"]["budget_exhausted"] == true);

  const Run unlimited = run({"verify", "--random", "--field", field, "--seed", seed, "--long-test"});
  CHECK(unlimited.code == 0);
  CHECK(unlimited.doc()["config"]["budget"].is_null());

  // Quadrics that disagree with M.
  json in = io::excess_input_to_json(*named_fixture("f31-square"), quadrics_from_M(named_fixture("f31-square")->M));
  in["quadrics"][0] = "x0*x4";
  CHECK(run({"verify", "--input", "-"}, in.dump()).code == 2);
  // M alone is not enough to verify.
  in.erase("quadrics");
  CHECK(run({"verify", "--input", "-"}, in.dump()).code == 1);
  // Extension fields are outside the point oracle.
  CHECK(run({"verify", "--random", "--field", "F3^2"}).code == 1);
}

TEST_CASE("residual example") {
  const Run r = run({"residual", "--input", "-"}, residual_example(10).dump());
  REQUIRE(r.code == 0);
  const json rep = r.doc()["report"];
  CHECK(rep["I_generators"] == json::array({"x"}));
  CHECK(rep["conormal_free"] == true);
  CHECK(rep["mult_form"]["quotient_basis"] == json::array({"x", "x^2"}));
  CHECK(rep["mult_form"]["target_basis"] == json::array({"x^2", "x^3"}));
  CHECK(rep["mult_form"]["gram"][1][1] == json::array({0, 0}));
  CHECK(rep["scalarized"]["nondegenerate"] == true);
  CHECK(rep["scalarized"]["class"]["rank"] == 2);
  // disc of a hyperbolic plane over F31 is the class of -1, a nonsquare.
  CHECK(rep["scalarized"]["class"]["disc_is_square"] == false);
  for (const auto& row : rep["dimensions"]) {
    const unsigned d = row["d"];
    CHECK(row["I"] == d);
    CHECK(row["K"] == (d < 2 ? d : d + 1));
    for (std::size_t n = 1; n < row["kos_homology"].size(); ++n) CHECK(row["kos_homology"][n] == 0);
  }
  CHECK(run({"--config", temp_file("residual_replay.json", r.out)}).out == r.out);

  const Run short_bound = run({"residual", "--input", "-"}, residual_example(3).dump());
  CHECK(short_bound.code == 5);
  CHECK(short_bound.doc()["report"]["mult_form"].contains("error"));

  json bad = residual_example(10);
  bad["lambda"] = json::array({1});
  CHECK(run({"residual", "--input", "-"}, bad.dump()).code == 1);
}

TEST_CASE("gw subcommand") {
  const Run a = run({"gw", "--field", "F31", "--diag", "1,-1,3", "--compare", "[3,1,-1]"});
  REQUIRE(a.code == 0);
  CHECK(a.doc()["report"]["compare"]["result"] == "equal");
  CHECK(a.doc()["report"]["class"]["rank"] == 3);

  const Run g = run({"gw", "--field", "Q", "--gram", "[[1,2],[2,1]]"});
  REQUIRE(g.code == 0);
  CHECK(g.doc()["report"]["class"]["signature"] == 0);
  CHECK(g.doc()["report"]["radical_dim"] == 0);

  const Run t = run({"gw", "--field", "F3^2", "--diag", "[[0,1]]", "--transfer"});
  REQUIRE(t.code == 0);
  CHECK(t.doc()["report"]["transfer"]["rank"] == 2);
  const Run obj = run({"gw", "--field", R"({"p": 3, "modulus": [2, 2, 1]})", "--diag", "[[0,1]]"});
  REQUIRE(obj.code == 0);
  CHECK(obj.doc()["config"]["field"]["modulus"] == json::array({2, 2, 1}));
  CHECK(obj.doc()["report"]["class"]["disc_is_square"] == false);

  CHECK(run({"gw", "--field", "F31", "--diag", "1", "--gram", "[[1]]"}).code == 1);
  CHECK(run({"gw", "--field", "F31", "--gram", "[[1,2],[3,1]]"}).code == 1);
  CHECK(run({"gw", "--field", "F31", "--diag", "0"}).code == 1);
  CHECK(run({"gw", "--field", "F31"}).code == 1);
}

TEST_CASE("random search") {
  const Run zero = run({"random-search", "--field", "F3", "--budget", "0"});
  CHECK(zero.code == 5);
  CHECK(zero.doc()["report"]["exhausted"] == true);

  const PinnedSearch ps = pinned_searches().front();
  const std::vector<std::string> args{"random-search", "--field", "F" + std::to_string(ps.p), "--max-degree",
                                      std::to_string(ps.max_degree), "--seed", std::to_string(ps.seed - 5),
                                      "--budget", "10"};
  const Run a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.doc()["report"]["found_seed"] == ps.seed);
  CHECK(a.doc()["report"]["seeds_tried"] == 6);
  CHECK(a.doc()["report"]["found_verdict"]["status"] == "verified");
  CHECK(run(args).out == a.out);
  CHECK(run({"--config", temp_file("search_replay.json", a.out)}).out == a.out);

  for (const std::string target : {"square-disc", "nonsquare-disc"}) {
    const Run d = run({"random-search", "--field", "F31", "--target", target, "--budget", "50"});
    REQUIRE(d.code == 0);
    const json rep = d.doc()["report"];
    CHECK(rep["stream"].back()["gw_B"]["disc_is_square"] == (target == "square-disc"));
    CHECK(rep["stream"].back()["seed"] == rep["found_seed"]);
  }
  CHECK(run({"random-search", "--field", "F9"}).code == 1);
}
