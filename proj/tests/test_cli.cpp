#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bdshift/json_io.hpp"
#include "commands.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  bdshift::Json json() const { return bdshift::Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "bdshift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bdshift::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_workspace() {
  const auto path = std::filesystem::temp_directory_path() / "bdshift_cli_ws.json";
  std::ofstream(path) << R"({
    "N": 2,
    "sequences": {"beta": [1, -1]},
    "functions": {"parity": [1, -1]},
    "laurent": {"f": {"1": 1, "-1": 2}},
    "derivations": {"d": {"components": {"1": {"correction": {"0": 1}, "table": [0]}, "0": [1, 0]}},
                    "label": {"components": {"0": {"linear": 1}}}},
    "implementations": {"shift2": {"n": 2, "case": "finite-divisible", "linear": 1}}
  })";
  return path.string();
}

}  // namespace

TEST_CASE("normalize and products") {
  auto r = run({"normalize", "Us*U"});
  CHECK(r.code == 0);
  CHECK(r.json().at("text") == "1");
  r = run({"normalize", "U*Us"});
  CHECK(r.json().at("text") == "diag[1; 0:-1]");
  r = run({"mul", "V", "Vi"});
  CHECK(r.code == 0);
  CHECK(r.json().at("side") == "bilateral");
  r = run({"comm", "Us", "U"});
  CHECK(r.json().at("text") == "P0");
}

TEST_CASE("workspace driven commands") {
  const std::string ws = write_workspace();
  auto r = run({"derive", "-w", ws, "-d", "label", "U"});
  CHECK(r.code == 0);
  CHECK(r.json().contains("image"));
  r = run({"classify", "-w", ws, "-d", "d"});
  CHECK(r.code == 0);
  CHECK(r.json().at("components").size() == 2);
  CHECK(r.json().at("components").at("1").at("bounded_regime") == true);
  CHECK(run({"classify", "-w", ws, "-d", "d", "--n", "1"}).code == 3);
  r = run({"df-build", "-w", ws, "--laurent", "f"});
  CHECK(r.code == 0);
  r = run({"units", "-w", ws});
  CHECK(r.json().at("units").size() == 4);
  r = run({"matrix-form", "-w", ws, "V"});
  CHECK(r.json().at("matrix").at("size") == 2);
  r = run({"covcheck", "-w", ws, "-i", "shift2", "--m", "32"});
  CHECK(r.code == 0);
  CHECK(r.json().at("pass") == true);
  r = run({"gns-rep", "-w", ws, "--state", "haar", "diag(parity)"});
  CHECK(r.json().at("level") == 2);
  r = run({"qnorm", "-w", ws, "V + Vi"});
  CHECK(r.code == 0);
  CHECK(r.json().at("value").get<double>() == doctest::Approx(2.0));
  std::remove(ws.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate", "U"}).code == 1);
  CHECK(run({"normalize"}).code == 1);
  CHECK(run({"fourier", "--n", "1"}).code == 1);
  CHECK(run({"fourier", "-d", "x", "--n", "1"}).code == 2);
  CHECK(run({"normalize", "U^-1"}).code == 2);
  CHECK(run({"normalize", "Q"}).code == 2);
  CHECK(run({"mul", "U", "V"}).code == 3);
  CHECK(run({"matrix-form", "V"}).code == 0);
  const auto missing = run({"normalize", "-w", "/nonexistent.json", "U"});
  CHECK(missing.code == 1);
  CHECK_FALSE(missing.err.empty());
}
