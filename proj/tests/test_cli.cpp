#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PGON_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

const std::string kFig3 = "--n 4 --triangulation 'P(3,1),P(3,2),R(2),R(3)' --arc 'P(0,3)'";
const std::string kFig9a = "--n 4 --triangulation 'P(0,2),P(0,3),L(3),R(3)' --arc 'P(1,0)'";

}  // namespace

TEST_CASE("expand agrees across methods and prints the polynomial") {
  auto r = run("expand " + kFig3 + " --method all");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2*x[R(3)]*x[P(3,2)]") != std::string::npos);
  CHECK(r.output.find(" / (") != std::string::npos);

  auto single = run("expand " + kFig3 + " --method snake");
  CHECK(single.exit_code == 0);
  CHECK(single.output == r.output);
}

TEST_CASE("expand of a cluster member prints the bare variable") {
  auto r = run("expand --n 4 --triangulation 'R(0),R(1),R(2),R(3)' --arc 'R(2)' --method all");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "x[R(2)]\n");
}

TEST_CASE("parse errors exit with the usage code") {
  CHECK(run("expand --n 4 --triangulation 'P(0,1),R(0),R(1),R(2)' --arc 'R(3)'").exit_code == 2);
  CHECK(run("expand --n 4 --triangulation 'R(0),R(1),R(2),R(3)' --arc 'Z(1)'").exit_code == 2);
  CHECK(run("expand --n 3 --triangulation 'R(0),R(1),R(2)' --arc 'R(0)'").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("path listing matches the bundled examples") {
  auto r = run("paths " + kFig9a);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("9 paths") != std::string::npos);
  CHECK(r.output.find("R(3)*,R(3)*") != std::string::npos);

  auto rj = run("paths " + kFig9a + " --json");
  CHECK(rj.exit_code == 0);
  CHECK(rj.output.find("\"count\": 9") != std::string::npos);
  CHECK(rj.output.find("non-backtrack-ccw") != std::string::npos);
}

TEST_CASE("snake and matchings listings") {
  auto r = run("snake " + kFig9a);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("5 tiles") != std::string::npos);

  auto m = run("matchings " + kFig9a);
  CHECK(m.exit_code == 0);
  CHECK(m.output.find("9 matchings") != std::string::npos);
  CHECK(m.output.find("transfer count 9") != std::string::npos);

  auto mj = run("matchings " + kFig9a + " --json");
  CHECK(mj.exit_code == 0);
  CHECK(mj.output.find("\"count\": 9") != std::string::npos);
}

TEST_CASE("fixture files feed the triangulation flag") {
  std::string dir(PGON_FIXTURE_DIR);
  auto r = run("paths --n 4 --triangulation @" + dir + "/fig10.tri --arc 'L(0)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("4 paths") != std::string::npos);

  auto r11 = run("paths --n 4 --triangulation @" + dir + "/fig11.tri --arc 'P(1,0)'");
  CHECK(r11.exit_code == 0);
  CHECK(r11.output.find("5 paths") != std::string::npos);
}

TEST_CASE("config files preset options") {
  std::string cfg = "./pgon_test.cfg";
  {
    std::ofstream out(cfg);
    out << "[paths]\nn=4\ntriangulation=\"R(0),R(1),R(2),R(3)\"\narc=\"L(0)\"\n";
  }
  auto r = run("paths --config " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("4 paths") != std::string::npos);
  CHECK(run("paths --config ./no_such.cfg").exit_code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("seeds subcommand emits the exchange graph") {
  auto r = run("seeds --n 4 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("exchange_graph") != std::string::npos);
  auto plain = run("seeds --n 4");
  CHECK(plain.output.find("50 seeds") != std::string::npos);
  CHECK(plain.output.find("100 exchange edges") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  auto r = run("verify --n 4 --suite bijection --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ok") != std::string::npos);
  CHECK(run("verify --n 9 --suite oracle").exit_code == 2);  // above the bound

  SECTION("output does not depend on the thread count") {
    auto serial = run("verify --n 4 --suite oracle --threads 1 --json");
    auto threaded = run("verify --n 4 --suite oracle --threads 4 --json");
    CHECK(serial.exit_code == 0);
    CHECK(serial.output == threaded.output);
  }
}

TEST_CASE("atomic subcommand filters by lemma") {
  auto r = run("atomic --n 4 --lemma 5.20");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lemma 5.20") != std::string::npos);
  CHECK(r.output.find("ok") != std::string::npos);
}

TEST_CASE("render writes deterministic SVG") {
  std::string out1 = "./test_render1.svg";
  std::string out2 = "./test_render2.svg";
  auto r1 = run("render " + kFig9a + " -o " + out1);
  auto r2 = run("render " + kFig9a + " -o " + out2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(s1.find("<svg") == 0);
  CHECK(s1.find("stroke-dasharray") != std::string::npos);  // the dashed arc
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
