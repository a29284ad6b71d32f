#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string &args) {
  std::string cmd = std::string(DIGITFACTOR_CLI_PATH) + " " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    r.out.append(buf.data(), n);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

} // namespace

TEST_CASE("factor prints the factorization") {
  auto r = run_cli("factor 91");
  CHECK(r.status == 0);
  CHECK(r.out.find("91 = 7 · 13") != std::string::npos);

  r = run_cli("factor 97");
  CHECK(r.status == 0);
  CHECK(r.out.find("97 is prime") != std::string::npos);

  r = run_cli("factor 1024");
  CHECK(r.status == 0);
  CHECK(r.out.find("1024 = 2^10") != std::string::npos);
}

TEST_CASE("factor --single reports Error A on primes") {
  auto r = run_cli("factor --single 97");
  CHECK(r.status == 0);
  CHECK(r.out.find("Error A") != std::string::npos);
}

TEST_CASE("factor --single with a wrong hint reports Error A") {
  // no factor of 221 = 13 * 17 is 1 mod 5, so no gcd ever fires
  auto r = run_cli("factor --single --hint 5,1,20 221");
  CHECK(r.status == 0);
  CHECK(r.out.find("Error A") != std::string::npos);
}

TEST_CASE("factor --single with a good hint factors 77") {
  auto r = run_cli("factor --single --hint 2,1,15 77");
  CHECK(r.status == 0);
  CHECK(r.out.find("factor") != std::string::npos);
}

TEST_CASE("json records carry the schema") {
  auto r = run_cli("factor --json 91");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "factor");
  CHECK(j["inputs"]["N"] == "91");
  CHECK(j["outcome"]["kind"] == "factorization");
  REQUIRE(j["outcome"]["factors"].size() == 2);
  CHECK(j["outcome"]["factors"][0]["prime"] == "7");
  CHECK(j["outcome"]["factors"][1]["prime"] == "13");
  CHECK(j["counters"].contains("coefficient_mults"));
  CHECK(j["counters"].contains("gcd_count"));
  CHECK(j["wall_time_ms"].is_number());
}

TEST_CASE("hex input") {
  auto r = run_cli("factor --json 0x5B"); // 91
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["inputs"]["N"] == "91");
}

TEST_CASE("nu subcommand") {
  auto r = run_cli("nu 77 --linear-bases 1,2 --factors 7,11");
  CHECK(r.status == 0);
  CHECK(r.out.find("suitable = 28") != std::string::npos);
  CHECK(r.out.find("match") != std::string::npos);

  r = run_cli("nu 15 --poly 14,1 --json");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["outcome"]["suitable"] == 6);

  r = run_cli("nu 77 --quad-base 8 --factors 7,11 --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  CHECK(j["outcome"]["nu"] == 28);
  CHECK(j["outcome"]["match"] == true);
}

TEST_CASE("prime-char subcommand") {
  auto r = run_cli("prime-char 97");
  CHECK(r.status == 0);
  CHECK(r.out.find("prime-consistent") != std::string::npos);

  r = run_cli("prime-char 91 --json");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["outcome"]["verdict"] == "composite");
  CHECK(j["outcome"].contains("witness"));

  // even and perfect-power inputs are precondition violations: exit 2
  CHECK(run_cli("prime-char 10").status == 2);
  CHECK(run_cli("prime-char 27").status == 2);
}

TEST_CASE("verify subcommand") {
  auto r = run_cli("verify 77 --factors 7,11 --linear-bases 1,2 --json");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["outcome"]["kind"] == "linear_product");
  CHECK(j["outcome"]["match"] == true);

  r = run_cli("verify 77 --factors 7,11 --linear-bases 1,2 --vanishing --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  CHECK(j["outcome"]["count"] == 2);
  CHECK(j["outcome"]["suitability_losses"] == 4);
}

TEST_CASE("bench subcommand") {
  auto r = run_cli("bench 64 128 --json");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j["outcome"]["rows"].size() == 2);
  CHECK(j["outcome"]["rows"][0]["d"] == 64);
  CHECK(j["outcome"]["rows"][1]["ratio"].is_number());
}

TEST_CASE("bad input exits 2") {
  CHECK(run_cli("factor banana").status == 2);
  CHECK(run_cli("factor").status == 2);
  CHECK(run_cli("nu 77").status == 2);
  CHECK(run_cli("frobnicate 77").status == 2);
}
