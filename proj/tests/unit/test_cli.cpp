#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace cli = slx::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eig on the zero potential") {
  auto r = invoke({"eig", "--q-json", R"({"breakpoints":[0,1],"heights":[0]})", "--k0sq", "0",
                   "--k1sq", "0"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j.at("lambda1").get<double>()) <= 1e-10);
  CHECK(j.contains("residual"));
  CHECK(j.contains("bracket"));
  CHECK(j.contains("iterations"));
  CHECK(r.err.empty());
}

TEST_CASE("eig with samples in both formats") {
  const std::string q = R"({"breakpoints":[0,0.5,1],"heights":[2,0],"deltas":[{"site":0.25,"weight":1}]})";
  auto r = invoke({"eig", "--q-json", q, "--k0sq", "1", "--k1sq", "2", "--samples"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("eigenfunction_samples").size() > 10);
  auto c = invoke({"--format", "csv", "eig", "--q-json", q});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("lambda1,residual,bracket_lo,bracket_hi,iterations\n", 0) == 0);
}

TEST_CASE("ceiling table has one row per n") {
  auto r = invoke({"verify-thm2", "--gamma", "2", "--k0sq", "1", "--k1sq", "1", "--n",
                   "10,100,1000,10000"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n_or_rho,lambda1,reference,gap");
  std::vector<double> gaps;
  while (std::getline(lines, line)) gaps.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  REQUIRE(gaps.size() == 4);
  for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
}

TEST_CASE("single-spike family") {
  auto r = invoke({"family", "--statement", "1", "--zeta", "0.5", "--n", "4", "--gamma", "0.5"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("gamma_norm").get<double>() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(j.at("q").at("heights")[1] == 4.0);
}

TEST_CASE("spike-train family tunes the height") {
  auto r = invoke({"family", "--statement", "2", "--gamma", "0.5", "--rho", "10"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("kappa").get<double>() < 1.0);
  CHECK(j.at("gamma_norm").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("validation errors exit with 2 and one JSON line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eig", "--q-json", R"({"breakpoints":[0,1],"heights":[-1]})"},
           {"eig", "--q-json", "{"},
           {"eig"},
           {"eig-zero", "--k0sq", "-1"},
           {"nonsense"},
           {"family", "--statement", "1", "--gamma", "2"},
           {"norms", "--q-json", R"({"breakpoints":[0,0.5,1],"heights":[0,1]})", "--p", "0"},
           {"wdist", "--f-json", R"({"breakpoints":[0,1],"heights":[1]})", "--g-json",
            R"({"breakpoints":[0,1],"heights":[1]})", "--grid", "8"}}) {
    auto r = invoke(args);
    CAPTURE(args[0]);
    CHECK(r.code == cli::kExitValidation);
    CHECK(r.out.empty());
    REQUIRE(!r.err.empty());
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    const auto j = json::parse(r.err);
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));
  }
}

TEST_CASE("solver failures exit with 3") {
  auto r = invoke({"family", "--statement", "2", "--gamma", "0.5", "--rho", "10", "--height", "20"});
  CHECK(r.code == cli::kExitSolver);
  CHECK(json::parse(r.err).at("error") == "NormBudgetExceeded");
  auto b = invoke({"eig", "--q-json", R"({"breakpoints":[0,0.5,1],"heights":[1e20,0]})"});
  CHECK(b.code == cli::kExitSolver);
  CHECK(json::parse(b.err).at("error") == "BracketNotFound");
}

TEST_CASE("output goes to the requested file") {
  const auto path = std::filesystem::temp_directory_path() / "slx_cli_test_output.json";
  std::filesystem::remove(path);
  auto r = invoke({"eig-zero", "--k0sq", "1", "--k1sq", "1", "-o", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(j.at("lambda1").get<double>() == doctest::Approx(1.7070529755509224834).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("identical configuration gives identical bytes") {
  const std::vector<std::string> args{"search", "--gamma", "2", "--mode", "max",
                                      "--iters", "20", "--seed", "9"};
  auto a = invoke(args);
  auto b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("help prints and succeeds") {
  auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-thm1") != std::string::npos);
}

}  // TEST_SUITE
