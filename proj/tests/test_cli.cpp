#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "hbo/error.hpp"
#include "hbo/snapshot.hpp"
#include "json.hpp"

using namespace hbo::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path p = [] {
    auto q = fs::temp_directory_path() / "hbo_cli_test";
    fs::remove_all(q);
    fs::create_directories(q);
    return q;
  }();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  args.push_back("--out");
  args.push_back(scratch().string());
  const int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto kv = parse_kv_text("# comment\n d = 3\n\neps=0.2  # trailing\n");
  CHECK(kv.at("d") == "3");
  CHECK(kv.at("eps") == "0.2");
  CHECK_THROWS_AS(parse_kv_text("not a pair\n"), hbo::ValidationError);
  CHECK_THROWS_AS(parse_kv_file((scratch() / "nope.cfg").string()), hbo::ValidationError);
}

TEST_CASE("validation reports named constraints") {
  SUBCASE("empty file gives all defaults") {
    const auto p = scratch() / "empty.cfg";
    std::ofstream(p).close();
    for (const auto& cmd : command_names()) {
      const auto v = validate_config_file(cmd, p.string());
      CHECK(v.ok());
      CHECK(v.config.values.size() == schema(cmd).size());
    }
  }
  SUBCASE("eps outside (0, 1/(2d-1))") {
    const auto v = validate_config("illposed", {{"eps", "0.5"}, {"d", "2"}});
    REQUIRE(v.errors.size() == 1);
    CHECK(v.errors[0].key == "eps");
    CHECK(v.errors[0].value == "0.5");
    CHECK(v.errors[0].constraint.find("0 < eps < 1/(2d-1)") != std::string::npos);
  }
  SUBCASE("alpha at most 1/2") {
    const auto v = validate_config("smoothing", {{"alpha", "0.4"}});
    REQUIRE(v.errors.size() == 1);
    CHECK(v.errors[0].constraint.find("alpha > 1/2") != std::string::npos);
  }
  SUBCASE("q below 2") {
    const auto v = validate_config("strichartz", {{"q", "1.5"}});
    REQUIRE(v.errors.size() == 1);
    CHECK(v.errors[0].constraint.find("q >= 2") != std::string::npos);
  }
  SUBCASE("type errors and unknown keys") {
    const auto v = validate_config("evolve", {{"dt", "fast"}, {"colour", "red"}});
    CHECK(v.errors.size() == 2);
  }
}

TEST_CASE("exit codes") {
  std::string out, err;
  CHECK(cli({"decay", "--no-such-flag", "1"}, &out, &err) == exit_validation);
  CHECK(cli({"illposed", "--eps", "0.5"}, &out, &err) == exit_validation);
  CHECK(err.find("1/(2d-1)") != std::string::npos);
  CHECK(cli({"evolve", "--config", (scratch() / "missing.cfg").string()}) == exit_validation);
  {
    std::ofstream(scratch() / "broken.cfg") << "dt 0.1\n";
    CHECK(cli({"evolve", "--config", (scratch() / "broken.cfg").string()}) == exit_validation);
  }
  CHECK(cli({"evolve", "--datum", "file", "--input", (scratch() / "missing.hbof").string()}) == exit_validation);
  // Petviashvili cap too small to converge
  CHECK(cli({"soliton", "--L", "16", "--M", "64", "--max-iter", "3", "--travel", "false"}) == exit_numerical);
}

TEST_CASE("evolve with a zero datum") {
  std::string out;
  REQUIRE(cli({"evolve", "--datum", "zero", "--M", "32", "--T", "0.05", "--dt", "0.01", "--stride", "1"}, &out) == exit_ok);
  const fs::path dir = out.substr(0, out.find('\n'));
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["experiment"] == "evolve");
  CHECK(m["status"] == "ok");
  CHECK(m["results"]["final_max_abs"] == 0.0);
  const std::string id = m["run_id"];
  CHECK(dir.filename().string().find(id.substr(0, 8)) != std::string::npos);
  for (const auto& o : m["outputs"]) {
    const fs::path f = dir / o.get<std::string>();
    REQUIRE(fs::exists(f));
    if (f.extension() == ".csv") CHECK(slurp(f).rfind("# run_id=" + id, 0) == 0);
    else CHECK(f.filename().string().find(id.substr(0, 8)) != std::string::npos);
  }
  const auto fin = hbo::read_snapshot((dir / ("final-" + id.substr(0, 8) + ".hbof")).string());
  for (double v : fin.values) CHECK(v == 0);
  // 6 records, all zero
  const auto csv = slurp(dir / "invariants.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 6);
}

TEST_CASE("flags override config files and the run id follows the parameters") {
  const auto cfg = scratch() / "ill.cfg";
  std::ofstream(cfg) << "eps = 0.05\nN = 64,128\n";
  std::string a, b;
  REQUIRE(cli({"illposed", "--config", cfg.string(), "--N", "64,128,256,512"}, &a) == exit_ok);
  const fs::path da = a.substr(0, a.find('\n'));
  const auto m = nlohmann::json::parse(slurp(da / "manifest.json"));
  CHECK(m["parameters"]["eps"] == "0.05");
  CHECK(m["parameters"]["N"] == "64,128,256,512");
  REQUIRE(cli({"illposed", "--config", cfg.string(), "--N", "64,128,256,512"}, &b) == exit_ok);
  const fs::path db = b.substr(0, b.find('\n'));
  CHECK(da != db);
  CHECK(slurp(da / "illposed.csv") == slurp(db / "illposed.csv"));
  const auto m2 = nlohmann::json::parse(slurp(db / "manifest.json"));
  CHECK(m2["run_id"] == m["run_id"]);
}

TEST_CASE("illposed growth table") {
  std::string out;
  REQUIRE(cli({"illposed", "--d", "2", "--eps", "0.1", "--N", "64,128,256,512"}, &out) == exit_ok);
  const fs::path dir = out.substr(0, out.find('\n'));
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["results"]["predicted_exponent"].get<double>() == doctest::Approx(0.175));
  CHECK(m["results"]["fitted_exponent"].get<double>() == doctest::Approx(0.175).epsilon(0.2));
  const auto csv = slurp(dir / "illposed.csv");
  CHECK(csv.find("N,eps,s,t,hs_norm") != std::string::npos);
}

TEST_CASE("small runs of every subcommand") {
  const std::vector<std::vector<std::string>> runs = {
      {"decay", "--d", "2", "--L", "64", "--M", "256", "--t-min", "2", "--t-max", "8", "--t-count", "4"},
      {"decay", "--d", "3", "--method", "radial", "--t-min", "8", "--t-max", "16", "--t-count", "3"},
      {"strichartz", "--d", "2", "--q", "6", "--r", "6", "--M", "128", "--t-samples", "5"},
      {"strichartz", "--mode", "knapp", "--q", "4", "--r", "3", "--R", "8,16", "--t-samples", "5"},
      {"strichartz", "--mode", "degenerate", "--q", "4", "--r", "4", "--deltas", "0.0625,0.03125", "--t-samples", "5"},
      {"smoothing", "--count", "2", "--L", "32", "--M", "256", "--T", "1", "--t-samples", "5", "--refine", "true"},
      {"oscint", "--t", "1,2", "--x1-count", "2", "--x2-count", "2"},
      {"evolve", "--M", "32", "--T", "0.05", "--dt", "0.01", "--snapshot-stride", "2", "--stride", "1"},
      {"bona-smith", "--M", "64", "--n", "2,4", "--T", "0.02", "--dt", "0.01", "--stride", "1"},
      {"gronwall", "--M", "64", "--T", "0.1", "--dt", "0.01", "--stride", "2"},
      {"soliton", "--L", "16", "--M", "64", "--travel-L", "16", "--travel-M", "64", "--dt", "0.1", "--T", "1"},
      {"nonuniform", "--n", "1,2", "--t", "0.01", "--L", "8", "--M", "128", "--dt", "0.005", "--ref-L", "16", "--ref-M", "64"},
  };
  for (const auto& r : runs) {
    std::string out, err;
    const int rc = cli(r, &out, &err);
    INFO(r[0] << ": " << err);
    CHECK(rc == exit_ok);
    const fs::path dir = out.substr(0, out.find('\n'));
    CHECK(fs::exists(dir / "manifest.json"));
  }
}
