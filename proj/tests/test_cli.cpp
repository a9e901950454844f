#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "common.hpp"

using namespace drinfeld;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DRINFELD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("successful commands produce a JSON envelope") {
    for (const char* args : {"exp-eval --z theta^-1", "torsion --sample carlitz", "omega --prec-t 8",
                             "periods --sample theta+tau+tau^2", "log-point --alpha theta^-1"}) {
      const Run r = run(args);
      CHECK_MESSAGE(r.code == 0, args);
      const Json j = Json::parse(r.out);
      CHECK(j.contains("command"));
      CHECK(j.contains("result"));
    }
  }

  TEST_CASE("error exit codes") {
    CHECK(run("bogus").code == 2);
    CHECK(run("exp-eval --z thet").code == 2);
    CHECK(run("exp-eval --config /nonexistent.json").code == 2);
    CHECK(run("log-eval --z theta^2").code == 3);
    CHECK(run("exp-eval --z 'theta^(1/7)'").code == 3);
    CHECK(run("periods --sample 'theta+theta*tau+tau^2' --q 5").code == 3);
  }

  TEST_CASE("verify") {
    const Run a = run("verify --q 3 --json");
    CHECK(a.code == 0);
    CHECK(Json::parse(a.out)["summary"]["all_pass"] == true);
    CHECK(run("verify --q 3 --json").out == a.out);
    CHECK(run("verify --sample 'theta+theta*tau+tau^2' --q 5 --json").code == 4);
  }
}
