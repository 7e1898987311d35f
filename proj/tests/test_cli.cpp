#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LNEC_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(LNEC_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lnec-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("construct, analyze, decode round trip") {
  TempDir tmp;
  const std::string code = tmp / "bfly.code.json";
  const Run c = run("construct --network " + data("bfly.json") + " --kind multicast --field 3 --out " + code);
  REQUIRE(c.code == 0);
  CHECK(slurp(code) == slurp(data("bfly.multicast.gf3.json")));

  const auto manifest = nlohmann::json::parse(slurp(code + ".manifest.json"));
  CHECK(manifest["method"] == "det");
  CHECK(manifest["realized_bound"] == 2);
  CHECK(manifest["path_families"].size() == 2);
  CHECK(manifest["output"]["sha256"].get<std::string>().size() == 64);

  const Run a = run("analyze --network " + data("bfly.json") + " --code " + code);
  REQUIRE(a.code == 0);
  const auto report = nlohmann::json::parse(a.out);
  CHECK(report["mds"]["multicast"]["verdict"] == "certified");
  for (const auto& t : report["targets"]) CHECK(t["slack"] == 0);

  const Run again = run("construct --network " + data("bfly.json") + " --kind multicast --field 3 --out " +
                        (tmp / "again.json"));
  REQUIRE(again.code == 0);
  CHECK(slurp(tmp / "again.json") == slurp(code));
}

TEST_CASE("seeded random construction is byte-identical") {
  TempDir tmp;
  const std::string args = "construct --network " + data("3path.json") + " --kind multicast --field 2,8 --method rand";
  CHECK(run(args + " --out " + (tmp / "x.json")).code == 1);  // seed missing
  REQUIRE(run(args + " --seed 5 --out " + (tmp / "a.json")).code == 0);
  REQUIRE(run(args + " --seed 5 --out " + (tmp / "b.json")).code == 0);
  CHECK(slurp(tmp / "a.json") == slurp(tmp / "b.json"));
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const std::string out = " --out " + (tmp / "c.json");
  CHECK(run("construct --network " + data("comb42.json") + " --kind multicast --field 2" + out).code == 2);
  const Run bad_kind = run("construct --network " + data("bfly.json") + " --kind nonsense --field 3" + out);
  CHECK(bad_kind.code == 1);
  CHECK(bad_kind.out.find("--kind") != std::string::npos);
  CHECK(run("construct --network " + data("bfly.json") + out).code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);

  const Run malformed = run("construct --network " + data("malformed.json") + " --kind multicast --field 3" + out);
  CHECK(malformed.code == 1);
  CHECK(malformed.out.find("line 5") != std::string::npos);
  CHECK(malformed.out.find("column") != std::string::npos);

  CHECK(run("construct --network " + data("grid.json") + " --kind generic --field 65521" + out).code == 3);
}

TEST_CASE("analyze") {
  TempDir tmp;
  const Run zero = run("analyze --network " + data("3path.json") + " --code " + data("3path.zero.json"));
  REQUIRE(zero.code == 0);
  const auto report = nlohmann::json::parse(zero.out);
  for (const char* flag : {"regular", "strongly_regular", "strongly_sup_regular", "channel_regular"})
    CHECK(report["regularity"][flag] == false);
  for (const auto& t : report["targets"]) CHECK(t["d"] == "undefined");

  REQUIRE(run("construct --network " + data("grid.json") + " --kind multicast --field 2,8 --out " + (tmp / "g.json"))
              .code == 0);
  CHECK(run("analyze --network " + data("grid.json") + " --code " + (tmp / "g.json")).code == 3);
  CHECK(run("analyze --network " + data("grid.json") + " --code " + (tmp / "g.json") + " --max-weight 1").code == 0);
}

TEST_CASE("decode") {
  TempDir tmp;
  const std::string code = tmp / "p.json";
  REQUIRE(run("construct --network " + data("3path.json") + " --kind multicast --field 5 --out " + code).code == 0);
  const std::string base = "decode --network " + data("3path.json") + " --code " + code + " --node t";

  const Run one = run(base + " --inject \"X=4;Z=e21:3\"");
  REQUIRE(one.code == 0);
  const auto r1 = nlohmann::json::parse(one.out);
  CHECK(r1["status"] == "unique");
  CHECK(r1["message"] == nlohmann::json::array({4}));
  CHECK(r1["errors"][0]["channel"] == "e21");

  const Run none = run(base + " --inject \"X=3\"");
  REQUIRE(none.code == 0);
  CHECK(nlohmann::json::parse(none.out)["message"] == nlohmann::json::array({3}));

  CHECK(run(base + " --received 1,2").code == 1);
  CHECK(run(base + " --received 1,2,3 --inject \"X=1\"").code == 1);
}

TEST_CASE("bounds") {
  const Run bf = run("bounds --network " + data("bfly.json"));
  REQUIRE(bf.code == 0);
  const auto j = nlohmann::json::parse(bf.out);
  CHECK(j["bounds"]["multicast"]["tight"]["value"] == 2);
  CHECK(j["bounds"]["multicast"]["tight"]["min_field"] == 3);

  const auto p3 = nlohmann::json::parse(run("bounds --network " + data("3path.json")).out);
  CHECK(p3["bounds"]["multicast"]["tight"]["value"] == 15);
  CHECK(p3["bounds"]["multicast"]["loose"]["value"] == 18);

  const auto r3 = nlohmann::json::parse(run("bounds --network " + data("bfly.json") + " --rate 3").out);
  CHECK(r3["rate"] == 3);
}
