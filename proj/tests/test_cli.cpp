#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(CGW_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run("witness --family GL --n 2 --p 3 --k 2") == 0);
  CHECK(run("witness --family U --n 3 --p 3 --k 2") == 3);
  CHECK(run("witness --family GL --n 2 --p 4 --k 1") == 1);
  CHECK(run("classes --kind GL --n 2 --p 3 --k 1 --crosscheck") == 0);
  CHECK(run("selftest --filter gl2") == 0);
  CHECK(run("selftest --filter sp2 --inject-fault corrupt-form") == 1);
  CHECK(run("bogus") != 0);
}

TEST_CASE("cli witness reports are byte-identical across runs") {
  const std::string a = "/tmp/cgw_cli_a.json", b = "/tmp/cgw_cli_b.json";
  REQUIRE(run("witness --family Sp --n 4 --p 3 --k 2 --seed 7", a) == 0);
  REQUIRE(run("witness --family Sp --n 4 --p 3 --k 2 --seed 7", b) == 0);
  const std::string ja = slurp(a);
  CHECK(!ja.empty());
  CHECK(ja == slurp(b));
}

TEST_CASE("cli invariant") {
  const std::string path = "/tmp/cgw_cli_m.txt";
  std::ofstream(path) << "2 2 p=5;k=1\n1 1\n0 1\n";
  const std::string out = "/tmp/cgw_cli_inv.json";
  REQUIRE(run("invariant " + path + " --kind Sp", out) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["valid"] == true);
  // invalid data is still a computed answer
  REQUIRE(run("invariant " + path + " --kind O", out) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["valid"] == false);
}
