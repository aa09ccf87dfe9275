#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qoper/json_io.hpp"

using namespace qoper;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QOPER_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(QOPER_DATA) + "/" + name; }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "qoper_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(); }

}  // namespace

TEST_CASE("solve then verify round trip") {
  for (const char* name : {"gl2_k1", "gl2_simple_pole", "xxx_k1"}) {
    CAPTURE(name);
    fs::path out = scratch(std::string(name) + ".out.json");
    Run s = run("solve -i " + data(std::string(name) + ".json") + " -o " + out.string() + " --starts 300");
    CHECK(s.code == 0);
    json j = read_json_file(out.string());
    CHECK(j["command"] == "solve");
    CHECK(j["pass"] == true);
    CHECK_FALSE(j["solutions"].empty());
    CHECK(j.contains("conventions"));
    Run v = run("verify -i " + out.string());
    CHECK(v.code == 0);
  }
}

TEST_CASE("output is deterministic for a fixed seed") {
  Run a = run("solve -i " + data("gl2_k1.json") + " --seed 7 --starts 100");
  Run b = run("solve -i " + data("gl2_k1.json") + " --seed 7 --starts 100");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify rejects tampered roots") {
  fs::path out = scratch("tamper.json");
  REQUIRE(run("solve -i " + data("gl2_k1.json") + " -o " + out.string() + " --starts 200").code == 0);
  json j = read_json_file(out.string());
  auto& root = j["solutions"][0]["roots"][0][0];
  root[0] = root[0].get<double>() + 1e-3;
  fs::path bad = scratch("tampered.json");
  write(bad, j);
  CHECK(run("verify -i " + bad.string()).code == 1);
}

TEST_CASE("input errors exit with code 2") {
  Run m = run("solve -i " + data("malformed.json"));
  CHECK(m.code == 2);
  CHECK(m.out.find("malformed.json:2:") != std::string::npos);
  CHECK(run("solve -i /nonexistent/problem.json").code == 2);
  CHECK(run("no-such-command").code == 2);
  fs::path kind = scratch("badkind.json");
  write(kind, json::parse(R"({"type":"gl2","q":[0.8,0.5],"magnons":1,"inhomogeneities":[[1.1,0.4]],
                              "twist":{"kind":"wavy","mu":1,"mu_tilde":2}})"));
  Run k = run("solve -i " + kind.string());
  CHECK(k.code == 2);
  CHECK(k.out.find("/twist/kind") != std::string::npos);
}

TEST_CASE("literature, asymptotics and identity commands") {
  for (const char* name : {"lit_vw.json", "lit_ynz.json", "lit_devega_example.json"}) {
    CAPTURE(name);
    CHECK(run("literature-check -i " + data(name)).code == 0);
  }
  Run a = run("asymptotics -i " + data("gln_devega.json"));
  CHECK(a.code == 0);
  CHECK(a.out.find("order_zero") != std::string::npos);
  CHECK(run("identity-suite --seed 3").code == 0);
}

TEST_CASE("qq-check on a planted instance") {
  QQInstanceGL2 inst;
  inst.q = {0.9, 0.1};
  inst.Qp = LaurentPoly{{-1, 1.0}, {0, 0.5}, {1, 1.0}};
  inst.Qm = LaurentPoly{{0, 2.0}, {1, -0.3}};
  inst.xi1 = RationalFn(LaurentPoly::constant(Complex(0.5, 0.2)));
  inst.xi2 = RationalFn(LaurentPoly::constant(Complex(1.5, -0.1)));
  // Lambda chosen so the relation holds exactly
  LaurentPoly Qm_q = q_shift(inst.Qm, inst.q, 1), Qp_q = q_shift(inst.Qp, inst.q, 1);
  inst.Lambda = Complex(1.5, -0.1) * (inst.Qp * Qm_q) - Complex(0.5, 0.2) * (inst.Qm * Qp_q);
  fs::path good = scratch("qq_good.json");
  write(good, to_json(inst));
  CHECK(run("qq-check -i " + good.string()).code == 0);
  inst.Lambda = inst.Lambda + LaurentPoly::constant(0.1);
  fs::path bad = scratch("qq_bad.json");
  write(bad, to_json(inst));
  CHECK(run("qq-check -i " + bad.string()).code == 1);
}
