#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kBin = POTISO_BIN_PATH;
const fs::path kFixtures = POTISO_FIXTURE_DIR;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = kBin + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), n);
  }
  int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  return (kFixtures / name).string();
}

fs::path tempDir() {
  fs::path dir = fs::temp_directory_path() / "potiso-cli-test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("validate: clean and violating conditions drive the exit status") {
  RunResult clean = run("validate " + fixture("empty.cond"));
  CHECK(clean.status == 0);
  json doc = json::parse(clean.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["valid"] == true);

  RunResult order = run("validate " + fixture("order_violation.cond"));
  CHECK(order.status == 1);
  CHECK(json::parse(order.out)["violation"]["kind"] == "order");

  RunResult meet = run("validate " + fixture("meet_violation.cond"));
  CHECK(meet.status == 1);
  CHECK(json::parse(meet.out)["violation"]["kind"] == "meet");

  RunResult branch = run("validate " + fixture("branch_violation.cond"));
  CHECK(branch.status == 1);
  CHECK(json::parse(branch.out)["violation"]["kind"] == "branch");
}

TEST_CASE("check-amenable: certificates and counterexamples") {
  RunResult full = run("check-amenable " + fixture("full_qtree.spec"));
  CHECK(full.status == 0);
  CHECK(json::parse(full.out)["certificate"] == "finite-removals");

  RunResult cone = run("check-amenable " + fixture("cone_removed.spec") + " --depth 4");
  CHECK(cone.status == 1);
  json doc = json::parse(cone.out);
  CHECK(doc["amenable"] == false);
  CHECK(doc["counterexample"]["branch"] == "[|0]");
  CHECK(doc["counterexample"]["s"] == json::array({"0"}));
  CHECK(doc["counterexample"]["r"] == "5");
}

TEST_CASE("classify emits the signature") {
  RunResult result = run("classify " + fixture("valid_pair.cond"));
  CHECK(result.status == 0);
  json doc = json::parse(result.out);
  CHECK(doc["signature"]["n"] == 1);
  CHECK(doc["signature"]["k"] == 2);

  CHECK(run("classify " + fixture("order_violation.cond")).status == 1);
}

TEST_CASE("amalgamate: same-class inputs merge, others are rejected") {
  fs::path dir = tempDir();
  std::ofstream(dir / "p.cond") << "source: " << fixture("full_qtree.spec")
                                << "\ntarget: " << fixture("full_qtree.spec")
                                << "\npair: eta=[|0] odd={} -> eta=[|0] odd={}\n";
  std::ofstream(dir / "q.cond") << "source: " << fixture("full_qtree.spec")
                                << "\ntarget: " << fixture("full_qtree.spec")
                                << "\npair: eta=[1|0] odd={} -> eta=[1|0] odd={}\n";
  RunResult merged = run("amalgamate " + (dir / "p.cond").string() + " " +
                         (dir / "q.cond").string());
  CHECK(merged.status == 0);
  CHECK(json::parse(merged.out)["pairs"].size() == 2);

  fs::path out = dir / "merged.cond";
  RunResult withOut = run("amalgamate " + (dir / "p.cond").string() + " " +
                          (dir / "q.cond").string() + " --out " + out.string());
  CHECK(withOut.status == 0);
  CHECK(run("validate " + out.string()).status == 0);

  RunResult rejected = run("amalgamate " + (dir / "p.cond").string() + " " +
                           fixture("valid_pair.cond"));
  CHECK(rejected.status == 2);
}

TEST_CASE("extend reports the trace and writes the extension") {
  fs::path dir = tempDir();
  fs::path out = dir / "extended.cond";
  RunResult result = run("extend " + fixture("empty.cond") +
                         " \"eta=[|0] odd={}\" --out " + out.string());
  CHECK(result.status == 0);
  json doc = json::parse(result.out);
  CHECK(doc["trace"]["case"] == "empty-domain");
  CHECK(doc["pairs"].size() == 1);
  RunResult validated = run("validate " + out.string());
  CHECK(validated.status == 0);
}

TEST_CASE("generic runs are deterministic end to end") {
  fs::path dir = tempDir();
  fs::path out1 = dir / "g1.cond";
  fs::path out2 = dir / "g2.cond";
  std::string base = "generic " + fixture("fer_designated_removed.spec") + " " +
                     fixture("full_fer.spec") + " --steps 8 --mode fer";
  RunResult first = run(base + " --out " + out1.string());
  RunResult second = run(base + " --out " + out2.string());
  CHECK(first.status == 0);
  CHECK(first.out == second.out);
  json doc = json::parse(first.out);
  CHECK(doc["steps"] == 8);
  CHECK(doc["pairs"].size() == 8);

  std::ifstream f1(out1), f2(out2);
  std::string c1((std::istreambuf_iterator<char>(f1)), {});
  std::string c2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(c1 == c2);
  CHECK(run("validate " + out1.string()).status == 0);

  CHECK(run(base + " --mode qtree --out " + out1.string()).status == 2);
}

TEST_CASE("audit subcommands") {
  RunResult antichain = run("audit antichain " + fixture("antichain"));
  CHECK(antichain.status == 0);
  json doc = json::parse(antichain.out);
  CHECK(doc["distinct_signatures"] == 3);
  CHECK(doc["compatible_pairs"] == 0);
  CHECK(doc["violations"].empty());

  RunResult amalg = run(
      "audit amalgamation --mode fer --prefix-max 1 --support-max 1 "
      "--odd-index-max 0 --dom-max 1 --designated");
  CHECK(amalg.status == 0);
  CHECK(json::parse(amalg.out)["violations"].empty());

  RunResult ext = run(
      "audit extension --mode fer --prefix-max 1 --support-max 1 "
      "--odd-index-max 0 --dom-max 1 --designated");
  CHECK(ext.status == 0);
  CHECK(json::parse(ext.out)["failures"].empty());

  // byte-identical across separate processes
  CHECK(run("audit amalgamation --mode fer --prefix-max 1 --support-max 1 "
            "--odd-index-max 0 --dom-max 1 --designated")
            .out == run("audit amalgamation --mode fer --prefix-max 1 "
                        "--support-max 1 --odd-index-max 0 --dom-max 1 "
                        "--designated")
                        .out);

  // precondition: antichain inputs must be valid conditions
  fs::path dir = tempDir() / "badchain";
  fs::create_directories(dir);
  fs::copy_file(kFixtures / "full_qtree.spec", dir / "full_qtree.spec",
                fs::copy_options::overwrite_existing);
  std::ofstream(dir / "bad.cond")
      << "source: full_qtree.spec\ntarget: full_qtree.spec\n"
      << "pair: eta=[|0] odd={} -> eta=[1|0] odd={}\n";
  CHECK(run("audit antichain " + dir.string()).status == 2);
}

TEST_CASE("automorphisms subcommand") {
  RunResult result = run("automorphisms --depth 2");
  CHECK(result.status == 0);
  json doc = json::parse(result.out);
  CHECK(doc["count"] == 8);
  CHECK(doc["generators"].size() == 3);

  RunResult tagged = run("automorphisms --depth 2 --tagged");
  CHECK(json::parse(tagged.out)["count"] == 4);
}

TEST_CASE("input errors exit with status 2") {
  CHECK(run("validate /nonexistent/file.cond").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("check-amenable").status == 2);

  fs::path dir = tempDir();
  std::ofstream(dir / "broken.spec") << "family:\n[|0]\n";
  CHECK(run("check-amenable " + (dir / "broken.spec").string()).status == 2);
}
