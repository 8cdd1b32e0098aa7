#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string &args) {
  const std::string path = std::string("/tmp/monicdyn_cli_out_") + std::to_string(::getpid());
  const std::string cmd = std::string(MONICDYN_CLI) + " " + args + " > " + path + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  std::remove(path.c_str());
  return {WEXITSTATUS(status), s.str()};
}

} // namespace

TEST_CASE("classify examples") {
  const Run pcf = cli("classify --quad 0,0,-2,0");
  CHECK(pcf.code == 0);
  CHECK(pcf.out.find("verdict: PCF_PROVEN") != std::string::npos);
  CHECK(pcf.out.find("orbit depth: 2") != std::string::npos);

  const Run unknown = cli("classify --quad 1,1,1,1 --max-steps 0");
  CHECK(unknown.code == 3);
  CHECK(unknown.out.find("UNKNOWN") != std::string::npos);

  const Run escape = cli("classify --quad 0,0,1,0 --format json");
  CHECK(escape.code == 0);
  CHECK(escape.out.find("\"place\": \"inf\"") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
  CHECK(cli("classify --quad 1,2").code == 2);
  CHECK(cli("classify").code == 2);
  CHECK(cli("classify --quad 0,0,0,0 --format yaml").code == 2);
  CHECK(cli("search").code == 2);
  CHECK(cli("bound --d 3").code == 2);
  CHECK(cli("pushforward --quad 0,0,0,0 --divisor /nonexistent.json").code == 2);
  CHECK(cli("nosuchcommand").code == 2);
}

TEST_CASE("json round trip through files") {
  const std::string path = "/tmp/monicdyn_cli_cf.json";
  REQUIRE(cli("jacobian --quad 0,-2,-2,0 --format json --out " + path).code == 0);
  // Extract C_f and push it forward twice over the command line.
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  const std::string text = s.str();
  const auto at = text.find("\"critical_divisor\"");
  REQUIRE(at != std::string::npos);
  const Run push = cli("pushforward --quad 0,-2,-2,0");
  CHECK(push.code == 0);
  CHECK(push.out.find("degree 4") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("search and dedupe") {
  const std::string csv = "/tmp/monicdyn_cli_box2.csv";
  const Run r = cli("search --box 2 --threads 4 --out " + csv);
  CHECK(r.code == 0);
  const Run d = cli("dedupe --in " + csv);
  CHECK(d.code == 0);
  CHECK(d.out.rfind("(-2,0,0,-2):", 0) == 0);
  int lines = 0;
  for (char ch : d.out)
    lines += ch == '\n';
  CHECK(lines == 6);
  std::remove(csv.c_str());
}
