#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dispatch.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, std::optional<std::string> env_seed = std::nullopt) {
  std::ostringstream out, err;
  const int code = pcoh::cli::dispatch(args, out, err, env_seed);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("pcoh_cli_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kBell = R"({"da":2,"db":2,"amps":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]]})";
const char* kPsi = R"({"p":[0.5,0.26,0.24,0]})";
const char* kPhi = R"({"p":[0.4,0.4,0.15,0.05]})";
const char* kCat = R"({"p":[0.6,0.4]})";

}  // namespace

TEST_CASE("measure on the Bell state") {
  TempDir dir;
  const Run r = run({"measure", "--state", dir.write("bell.json", kBell), "--f", "shannon"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"value\":0.6931471805599453}\n");
}

TEST_CASE("convert-check and catalyst-check") {
  TempDir dir;
  const std::string psi = dir.write("psi.json", kPsi);
  const std::string phi = dir.write("phi.json", kPhi);
  const std::string cat = dir.write("cat.json", kCat);

  const Run c = run({"convert-check", "--from", psi, "--to", phi});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out) == json::parse(R"({"convertible":false,"relation":"incomparable"})"));

  const Run exact = run({"convert-check", "--from", psi, "--to", phi, "--rational"});
  CHECK(exact.out == c.out);

  const Run k = run({"catalyst-check", "--from", phi, "--to", psi, "--catalyst", cat, "--rational"});
  CHECK(k.code == 0);
  CHECK(json::parse(k.out).at("result") == "catalyzes");
}

TEST_CASE("verify exit codes") {
  const Run ok = run({"verify", "--suite", "schur_horn_chain", "--n", "20", "--seed", "1"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out).at("violations") == 0);

  const Run unknown = run({"verify", "--suite", "nope"});
  CHECK(unknown.code == 2);
  const Run bad_dims = run({"verify", "--suite", "ineq_chain", "--dims", "9x2"});
  CHECK(bad_dims.code == 1);
}

TEST_CASE("usage and domain errors") {
  TempDir dir;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"measure"}).code == 2);
  CHECK(run({"measure", "--state", dir.file("missing.json")}).code == 1);
  const std::string broken = dir.write("broken.json", R"({"da":2,"db":2,"amps":[[1,0],[1,0],[0,0],[0,0]]})");
  CHECK(run({"measure", "--state", broken}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("seed falls back to PCOH_SEED and repeats are bit-identical") {
  const std::vector<std::string> args{"verify", "--suite", "ineq_chain", "--n", "10"};
  const Run a = run(args, "42");
  const Run b = run(args, "42");
  const Run flag = run({"verify", "--suite", "ineq_chain", "--n", "10", "--seed", "42"});
  CHECK(a.out == b.out);
  CHECK(a.out == flag.out);
  CHECK(json::parse(a.out).at("seed") == 42);
  CHECK(run(args, "forty-two").code == 2);
  // An explicit flag wins over the environment.
  CHECK(run({"verify", "--suite", "ineq_chain", "--n", "10", "--seed", "42"}, "5").out == flag.out);
}

TEST_CASE("--out writes the same document") {
  TempDir dir;
  const std::string out = dir.file("pcv.json");
  const Run r = run({"pcv", "--state", dir.write("bell.json", kBell), "--out", out});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(json::parse(ss.str()) == json::parse(r.out));
}

TEST_CASE("synthesize and prepare emit loadable channels") {
  TempDir dir;
  const std::string bell = dir.write("bell.json", kBell);
  const std::string prod = dir.write("prod.json", R"({"da":2,"db":2,"amps":[[1,0],[0,0],[0,0],[0,0]]})");
  const Run s = run({"synthesize", "--from", bell, "--to", prod});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out).contains("stages"));
  CHECK(run({"synthesize", "--from", prod, "--to", bell}).code == 1);

  const Run p = run({"prepare", "--state", bell, "--flatten"});
  CHECK(p.code == 0);
  CHECK(json::parse(p.out).contains("maximal"));

  const Run m = run({"maximal", "--dims", "3x2"});
  CHECK(json::parse(m.out).at("da") == 3);
}
