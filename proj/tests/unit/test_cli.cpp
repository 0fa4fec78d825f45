#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tug_cli/commands.hpp"

using namespace tug;
using namespace tug::testing;
using nlohmann::json;

namespace {

// Writes a fixture to a temp file and runs the CLI against it.
struct TempFile {
  explicit TempFile(const std::string& text) {
    path = std::string("tug_cli_test_") + std::to_string(counter++) + ".json";
    std::ofstream f(path);
    f << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
  static int counter;
};
int TempFile::counter = 0;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kGlove = R"({"kind":"coalition","players":2,"values":[0,0,0,1]})";
const char* kMajority = R"({"kind":"coalition","players":3,"values":[0,0,0,1,0,1,1,1]})";
const char* kExchange = R"({"kind":"exchange","commodities":2,"types":[
  {"trades":[[0,0],[-1,1]],"values":[1,3]},
  {"trades":[[0,0],[1,-1]],"values":[3,1]}]})";

}  // namespace

TEST_CASE("shapley command on the majority game") {
  TempFile f(kMajority);
  const RunResult r = run({"shapley", "--input", f.path});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  CHECK(report.at("command") == "shapley");
  CHECK(report.at("values") == json::array({"1/3", "1/3", "1/3"}));
}

TEST_CASE("gap command emits the glove sweep as CSV") {
  TempFile f(kGlove);
  const RunResult r = run({"gap", "--input", f.path, "--kmax", "5", "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out ==
        "k,gap\n"
        "1,1\n"
        "2,1\n"
        "3,1\n"
        "4,1\n"
        "5,1\n"
        "inf,1\n"
        "stabilization_k,1\n");
}

TEST_CASE("validate reports path-specific diagnostics with exit 1") {
  TempFile f(R"({"kind":"coalition","players":2,"values":[1,"-1/2",0,1]})");
  const RunResult r = run({"validate", "--input", f.path});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("values[0]") != std::string::npos);
  CHECK(r.err.find("values[1]: negative value") != std::string::npos);
  const json report = json::parse(r.out);
  CHECK(report.at("ok") == false);
}

TEST_CASE("validate accepts a good file") {
  TempFile f(kGlove);
  const RunResult r = run({"validate", "--input", f.path});
  CHECK(r.code == cli::kOk);
  CHECK(json::parse(r.out).at("ok") == true);
}

TEST_CASE("report values re-parse to the exact internal rationals") {
  TempFile f(kMajority);
  const RunResult r = run({"cover", "--input", f.path});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  const CoalitionGame g = majority_game();
  for (const json& row : report.at("coalitions")) {
    std::vector<int> members;
    for (const json& p : row.at("coalition")) members.push_back(p.get<int>() - 1);
    const Coalition s = coalition_of(members);
    CHECK(*Rational::parse(row.at("value").get<std::string>()) == g.value(s));
    CHECK(*Rational::parse(row.at("cover").get<std::string>()) ==
          superadditive_cover_value(g, s));
  }
  CHECK(report.at("totally_balanced") == false);
}

TEST_CASE("byte-for-byte determinism") {
  TempFile f(kMajority);
  const RunResult a = run({"core", "--input", f.path});
  const RunResult b = run({"core", "--input", f.path});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  const RunResult t1 = run({"shapley", "--input", f.path, "--format", "table"});
  const RunResult t2 = run({"shapley", "--input", f.path, "--format", "table"});
  CHECK(t1.out == t2.out);
}

TEST_CASE("core command routes") {
  TempFile f(kMajority);
  const RunResult r = run({"core", "--input", f.path});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  CHECK(report.at("empty") == true);
  CHECK(report.at("balanced") == false);
}

TEST_CASE("etcore size guard exits with code 2") {
  TempFile f(kGlove);
  const RunResult r = run({"etcore", "--input", f.path, "--k", "100000"});
  CHECK(r.code == cli::kSizeGuard);
}

TEST_CASE("saddle command on the glove at (2,1)") {
  TempFile f(kGlove);
  const RunResult r = run({"saddle", "--input", f.path, "--x", "2,1"});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  CHECK(report.at("payoffs") == json::array({"0", "1"}));
  CHECK(report.at("identities").at("transfers_balance") == true);
}

TEST_CASE("exchange subcommands") {
  TempFile f(kExchange);
  SUBCASE("value") {
    const RunResult r = run({"exchange", "value", "--input", f.path});
    REQUIRE(r.code == cli::kOk);
    CHECK(json::parse(r.out).at("value") == "4");
  }
  SUBCASE("walras") {
    const RunResult r = run({"exchange", "walras", "--input", f.path});
    REQUIRE(r.code == cli::kOk);
    const json report = json::parse(r.out);
    CHECK(report.at("payoffs") == json::array({"2", "2"}));
    CHECK(report.at("transfers") == json::array({"0", "0"}));
  }
  SUBCASE("char") {
    const RunResult r = run({"exchange", "char", "--input", f.path});
    REQUIRE(r.code == cli::kOk);
    CHECK(json::parse(r.out).at("totally_balanced") == true);
  }
  SUBCASE("gap honors --x") {
    const RunResult r = run({"exchange", "gap", "--input", f.path, "--x", "2,1", "--kmax", "3"});
    REQUIRE(r.code == cli::kOk);
    const json report = json::parse(r.out);
    CHECK(report.at("infinitesimal") == "0");
    CHECK(report.at("gradient") == json::array({"0", "4"}));
  }
}

TEST_CASE("ntu command") {
  TempFile f(R"({"kind":"normal_form","players":2,"action_counts":[2,2],
    "utilities":[[1,0,0,1],[0,1,1,0]]})");
  const RunResult r = run({"ntu", "--input", f.path});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  CHECK(report.at("status") == "converged");
  CHECK(report.at("weights") == json::array({"1/2", "1/2"}));
}

TEST_CASE("ic command finds the battle witness") {
  TempFile f(R"({"kind":"community","players":2,"communities":[
    {"members":[1],"profiles":[["0"]]},
    {"members":[2],"profiles":[["0"]]},
    {"members":[1,2],"profiles":[["1","1"]]}]})");
  const RunResult r = run({"ic", "--input", f.path, "--payment", "core-lex-min"});
  REQUIRE(r.code == cli::kOk);
  const json report = json::parse(r.out);
  CHECK(report.at("verdicts")[0].at("ic_within_family") == false);
  CHECK(report.at("verdicts")[1].at("ic_within_family") == true);
}

TEST_CASE("--out writes the report to a file") {
  TempFile f(kGlove);
  const std::string out_path = "tug_cli_test_out.json";
  const RunResult r = run({"shapley", "--input", f.path, "--out", out_path});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const json report = json::parse(buf.str());
  CHECK(report.at("values") == json::array({"1/2", "1/2"}));
  std::remove(out_path.c_str());
}

TEST_CASE("value command honors the mode flag at four players") {
  // Player 4's first action is what the first three care about; exclusive
  // access flips {1,2,3} from 0 to 3.
  TempFile f(R"({"kind":"normal_form","players":4,"action_counts":[2,2,2,2],"utilities":[
    [1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0],
    [1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0],
    [1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0],
    [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]]})");
  const RunResult std_run = run({"value", "--input", f.path});
  REQUIRE(std_run.code == cli::kOk);
  const RunResult pr_run = run({"value", "--input", f.path, "--mode", "property-rights"});
  REQUIRE(pr_run.code == cli::kOk);
  auto find123 = [](const json& report) {
    for (const json& row : report.at("coalitions")) {
      if (row.at("coalition") == json::array({1, 2, 3})) return row.at("value").get<std::string>();
    }
    return std::string("missing");
  };
  CHECK(find123(json::parse(std_run.out)) == "0");
  CHECK(find123(json::parse(pr_run.out)) == "3");

  const RunResult base_run = run({"value", "--input", f.path, "--mode", "property-rights",
                                  "--rule", "baseline", "--baseline", "0,0,0,1"});
  REQUIRE(base_run.code == cli::kOk);
  CHECK(find123(json::parse(base_run.out)) == "0");  // outsider pinned on its bad action
}

TEST_CASE("missing input file is an input error") {
  const RunResult r = run({"shapley", "--input", "does_not_exist.json"});
  CHECK(r.code == cli::kInputError);
  CHECK(!r.err.empty());
}

TEST_CASE("wrong kind for a command is an input error") {
  TempFile f(kExchange);
  const RunResult r = run({"shapley", "--input", f.path});
  CHECK(r.code == cli::kInputError);
}

TEST_CASE("table format renders and stays deterministic") {
  TempFile f(kGlove);
  const RunResult r = run({"gap", "--input", f.path, "--format", "table", "--kmax", "2"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("infinitesimal: 1") != std::string::npos);
}
