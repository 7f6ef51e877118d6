#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  std::string tmp;
  if (!stdin_text.empty()) {
    tmp = "cli_stdin.fincat";
    std::ofstream(tmp) << stdin_text;
    cmd += " < " + tmp;
  }
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  if (!tmp.empty()) std::remove(tmp.c_str());
  return r;
}

std::string fx(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

json run_json(const std::string& args) {
  Run r = run("--output json " + args);
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == "fincat-cli/1");
  CHECK(j["ok"] == true);
  return j["result"];
}

}  // namespace

TEST_CASE("compose prints the Example 3.8 size matrix") {
  Run r = run("compose " + fx("example38.fincat") + " Omega Psi");
  CHECK(r.code == 0);
  CHECK(r.out == "[[1,0],[1,1]]\n");
  json j = run_json("compose --trace " + fx("example38.fincat") + " Omega Psi");
  CHECK(j["size_matrix"] == json::parse("[[1,0],[1,1]]"));
  bool found = false;
  for (const auto& c : j["trace"])
    if (c["row"] == 1 && c["col"] == 0) {
      found = true;
      CHECK(c["pairs"] == 3);
      CHECK(c["classes"] == 1);
    }
  CHECK(found);
}

TEST_CASE("corresp-count") {
  Run r = run("corresp-count 2 2");
  CHECK(r.code == 0);
  CHECK(r.out == "16\n");
  CHECK(run_json("corresp-count 2 3")["count"] == 64);
}

TEST_CASE("validate") {
  Run e = run("validate " + fx("empty.fincat"));
  CHECK(e.code == 0);
  CHECK(e.out.empty());
  CHECK(run_json("validate " + fx("empty.fincat"))["blocks"].empty());
  Run ok = run("validate " + fx("c2.fincat"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("cset Mixed ok") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("validate -", "category A { objects ").code == 2);
  CHECK(run("validate -", "category A { objects x y mor f : x -> y mor g : x -> y compose f g = f }").code == 1);
  CHECK(run("validate -", "category A { objects x }").code == 0);
  CHECK(run("size-matrix " + fx("c2.fincat") + " Nope").code == 1);
  CHECK(run("corresp-count").code == 2);
  CHECK(run("--output yaml corresp-count 1 1").code == 2);
  Run bad = run("--output json validate -", "category A {\n objects x\n mor f : x -> \n}");
  CHECK(bad.code == 2);
  json j = json::parse(bad.out);
  CHECK(j["ok"] == false);
  CHECK(j["error"]["errors"][0]["line"] == 4);
}

TEST_CASE("text and json agree") {
  json h = run_json("homology --max-degree 4 " + fx("c2.fincat") + " C2");
  CHECK(h["degrees"][1]["torsion"] == json::array({"2"}));
  CHECK(h["degrees"][3]["torsion"] == json::array({"2"}));
  CHECK(h["degrees"][4]["reliable"] == false);
  Run t = run("homology --max-degree 4 " + fx("c2.fincat") + " C2");
  CHECK(t.out.find("H_1 = Z^0 + Z/2\n") != std::string::npos);
  CHECK(t.out.find("H_2 = Z^0\n") != std::string::npos);
  CHECK(run("out " + fx("kronecker.fincat") + " K").out == "|Out| = 2\n");
  CHECK(run_json("out " + fx("kronecker.fincat") + " K")["order"] == 2);
}

TEST_CASE("correspondence commands") {
  Run p = run("corresp-to-biset " + fx("example84.fincat") + " U");
  CHECK(p.out == "* ∅ ∅ ∅\n* * ∅ ∅\n* ∅ ∅ ∅\n* * * *\n");
  json j = run_json("corresp-to-biset " + fx("example84.fincat") + " Delta");
  CHECK(j["size_matrix"].size() == 4);
}

TEST_CASE("the remaining subcommands run") {
  CHECK(run("size-matrix " + fx("example38.fincat") + " Psi").out == "[[1,0],[1,0],[1,1]]\n");
  CHECK(run_json("decompose " + fx("c2.fincat") + " Mixed")["parts"].size() == 2);
  CHECK(run_json("iso " + fx("c2.fincat") + " Free Mixed")["isomorphic"] == false);
  CHECK(run_json("burnside-mul " + fx("c2.fincat") + " Free Free")["product"][0]["coeff"] == 2);
  CHECK(run_json("representable " + fx("example53.fincat") + " Hy")["representable"] == true);
  CHECK(run_json("representable " + fx("example38.fincat") + " Omega").contains("birepresentable"));
  CHECK(run_json("cograph " + fx("example38.fincat") + " Omega")["objects"] == 5);
  CHECK(run_json("dual-check " + fx("monoid.fincat") + " M")["dual"] == true);
  CHECK(run_json("simple-dim --variant birep " + fx("posets.fincat") + " B2")["dim"] == 4);
  CHECK(run_json("equiv " + fx("kronecker.fincat") + " K K")["equivalent"] == "yes");
  CHECK(run_json("idempotent-complete " + fx("monoid.fincat") + " M")["objects"] == 2);
  CHECK(run("simple-dim " + fx("c2.fincat") + " C2").code == 1);
}

TEST_CASE("cograph output parses back") {
  Run r = run("cograph " + fx("example38.fincat") + " Omega");
  REQUIRE(r.code == 0);
  CHECK(run("validate -", r.out).code == 0);
  Run c = run("idempotent-complete " + fx("example53.fincat") + " E53");
  CHECK(run("validate -", c.out).code == 0);
}
