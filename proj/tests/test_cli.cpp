// Drives the built kraw binary through a shell and inspects exit codes and
// JSON output.

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef KRAW_BIN
#error "KRAW_BIN must name the kraw executable"
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" KRAW_BIN "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("kraw_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("params-family ds example") {
  const auto r = run("params-family --family ds --q 2/1 --d 2");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["p"] == json::array({"1/4", "1/4", "1/2"}));
}

TEST_CASE("eval example") {
  Scratch tmp;
  const auto milch = run("params-family --family milch --p 1/2,1/4,1/4");
  REQUIRE(milch.code == 0);
  const auto path = tmp.write("milch.json", milch.out);
  // Two kernels contribute: 1 + (1 - u11)(-1)(-1)/(-2) with u11 = -3.
  for (const char* method : {"hypergeometric", "generating", "pairing"}) {
    const auto r = run("eval --kappa " + path + " --N 2 --m 1,0 --mt 1,0 --method " + method);
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out) == "-1");
  }
}

TEST_CASE("check example") {
  Scratch tmp;
  const auto ds = tmp.write("ds.json", run("params-family --family ds --q 2 --d 2").out);
  const auto r = run("check --kappa " + ds + " --N 3 --suite threeway,orthogonality,recurrence");
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["pass"] == true);
  CHECK(rep["checks"].size() == 3);
}

TEST_CASE("parameter sets round trip") {
  Scratch tmp;
  const auto g = run("params-griffiths --p 1/5,3/10,1/2");
  REQUIRE(g.code == 0);
  const auto path = tmp.write("g.json", g.out);
  const auto v = run("params-validate --kappa " + path);
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["valid"] == true);

  const auto once = run("params-involute --kappa " + path);
  REQUIRE(once.code == 0);
  const auto twice = run("params-involute --kappa -", "printf '%s' '" + once.out + "' |");
  REQUIRE(twice.code == 0);
  CHECK(twice.out == g.out);
  CHECK(json::parse(once.out)["p"] == json::parse(g.out)["pt"]);
}

TEST_CASE("table output feeds check") {
  Scratch tmp;
  const auto hr = tmp.write("hr.json", run("params-family --family hr --pp 1,2,3,4").out);
  const auto table = tmp.path("table.json");
  REQUIRE(run("--out " + table + " table --kappa " + hr + " --N 3").code == 0);
  const auto ok = run("check --table " + table + " --suite orthogonality");
  CHECK(ok.code == 0);

  json doc = json::parse(read(table));
  CHECK(doc["order"] == "grlex");
  doc["values"][1][1] = "0";
  const auto bad_path = tmp.write("bad.json", doc.dump());
  const auto bad = run("check --table " + bad_path + " --suite orthogonality,recurrence");
  CHECK(bad.code == 1);
  const json rep = json::parse(bad.out);
  CHECK(rep["pass"] == false);
  CHECK(rep["checks"][0]["pass"] == false);
  CHECK(rep["checks"][1]["pass"] == false);
}

TEST_CASE("usage and parse errors exit 2") {
  Scratch tmp;
  const auto ds = tmp.write("ds.json", run("params-family --family ds --q 2 --d 2").out);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("eval --kappa " + ds + " --N 2 --m 2,1 --mt 0,0").code == 2);
  CHECK(run("eval --kappa " + ds + " --N 2 --m 1 --mt 0,0").code == 2);
  CHECK(run("eval --kappa " + ds + " --N 2 --m x,0 --mt 0,0").code == 2);
  CHECK(run("check --kappa " + ds + " --N 2 --suite norms,bogus").code == 2);
  CHECK(run("check --kappa " + ds).code == 2);
  CHECK(run("params-validate --kappa " + tmp.write("junk.json", "{\"d\":")).code == 2);
  CHECK(run("params-validate --kappa " + tmp.path("missing.json")).code == 2);
  CHECK(run("--mode fuzzy params-family --family ds --q 2 --d 2").code == 2);
  CHECK(run("params-family --family ds --q 2 --d 2", "KRAW_THREADS=many").code == 2);
  CHECK(run("params-family --family ds --q 2 --d 2", "KRAW_THREADS=3x").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("invalid parameter sets exit 3") {
  Scratch tmp;
  CHECK(run("params-family --family hr --pp 1,1,1,1").code == 3);
  CHECK(run("params-griffiths --p 1/2,1/3").code == 3);
  const auto forged =
      tmp.write("forged.json", R"({"d":1,"nu":3,"p":["1/2","1/2"],"pt":["1/2","1/2"],"u":[[1,1],[1,-1]]})");
  const auto v = run("params-validate --kappa " + forged);
  CHECK(v.code == 3);
  const json rep = json::parse(v.out);
  CHECK(rep["valid"] == false);
  CHECK(rep["violations"][0]["condition"].is_string());
  CHECK(run("eval --kappa " + forged + " --N 1 --m 0 --mt 0").code == 3);
  CHECK(run("check --kappa " + forged + " --N 1").code == 3);
}

TEST_CASE("threads and approximate mode") {
  Scratch tmp;
  const auto ds = tmp.write("ds.json", run("params-family --family ds --q 3 --d 3").out);
  const auto single = run("table --kappa " + ds + " --N 2");
  const auto env = run("table --kappa " + ds + " --N 2", "KRAW_THREADS=4");
  const auto flag = run("--threads 3 table --kappa " + ds + " --N 2", "KRAW_THREADS=junk");
  REQUIRE(single.code == 0);
  CHECK(env.out == single.out);
  CHECK(flag.code == 0);
  CHECK(flag.out == single.out);

  const auto approx = run("--mode approx check --kappa " + ds + " --N 2 --suite orthogonality,universal");
  CHECK(approx.code == 0);
  const json rep = json::parse(approx.out);
  CHECK(rep["mode"] == "approx");
  for (const auto& c : rep["checks"]) CHECK(c["max_residual"].get<double>() < 1e-10);

  const auto val = run("--mode approx eval --kappa " + ds + " --N 2 --m 1,0,0 --mt 1,0,0");
  REQUIRE(val.code == 0);
  CHECK(json::parse(val.out).get<std::string>().find('/') == std::string::npos);
}

TEST_CASE("stencil dump") {
  Scratch tmp;
  const auto hr = tmp.write("hr.json", run("params-family --family hr --pp 1,2,3,4").out);
  const auto r = run("stencil --kappa " + hr + " --N 3 --operator m --i 2");
  REQUIRE(r.code == 0);
  const json st = json::parse(r.out);
  CHECK(st["operator"] == "M_2");
  CHECK(st["terms"].size() == 7);
  CHECK(run("stencil --kappa " + hr + " --N 3 --operator universal").code == 0);
  CHECK(run("stencil --kappa " + hr + " --N 3 --operator m --i 5").code == 2);
}
