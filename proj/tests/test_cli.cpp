#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <hda/io.hpp>

using hda::json;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string fixture(const std::string& name) { return std::string(HDA_FIXTURE_DIR) + "/" + name; }

std::string tmp(const std::string& name) { return std::string(HDA_TMP_DIR) + "/" + name; }

Run run(const std::string& args) {
  std::string cmd = std::string(HDA_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json read(const std::string& path) { return hda::read_json_file(path); }

}  // namespace

TEST_CASE("eval of the (5,3)-graph prints the canonical composite") {
  Run r = run("eval " + fixture("graph53.json") + " --prop " + fixture("free7.prop.json"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["element"] == read(fixture("graph53_expected.json")));
  CHECK(j["decompositions_agree"] == true);
}

TEST_CASE("decode of a truncated metagraph fails with a position") {
  Run r = run("decode " + fixture("truncated.metagraph.json"));
  CHECK(r.code == 2);
  CHECK(r.out.find("levels[0]") != std::string::npos);
}

TEST_CASE("encode then decode is byte identical") {
  Run e = run("encode " + fixture("rocket.element.json") + " --out " + tmp("rocket.mg.json"));
  REQUIRE(e.code == 0);
  Run d = run("decode " + tmp("rocket.mg.json") + " --prop T");
  REQUIRE(d.code == 0);
  json dj = json::parse(d.out);
  CHECK(dj["canonical"] == true);
  CHECK(dj["element"] == read(fixture("rocket.element.json"))["element"]);
}

TEST_CASE("faces certifies the relations of the rocket") {
  Run r = run("faces " + fixture("rocket.metagraph.json") + " --depth-cap 6");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["faces"].size() == 3);
  CHECK(j["relations"].size() > 0);
}

TEST_CASE("psi and check-weak") {
  REQUIRE(run("psi " + fixture("random_T_table.algebra.json") + " --n 0 --bound 3 --out " + tmp("rt.json")).code == 0);
  CHECK(run("check-weak " + tmp("rt.json") + " --n 0 --bound 3").code == 0);
  CHECK(run("validate " + tmp("rt.json")).code == 0);

  REQUIRE(run("psi " + fixture("weighted.algebra.json") + " --n 1 --bound 3 --out " + tmp("w.json")).code == 0);
  CHECK(run("check-weak " + tmp("w.json") + " --n 1 --bound 3").code == 0);

  // Bool-OR breaks the unit relation at *_{2,2}.
  REQUIRE(run("psi " + fixture("bool_or.algebra.json") + " --n 0 --bound 3 --out " + tmp("bo.json")).code == 0);
  Run bo = run("check-weak " + tmp("bo.json") + " --n 0 --bound 3");
  CHECK(bo.code == 1);
  CHECK(bo.out.find("\"unit\"") != std::string::npos);
}

TEST_CASE("pullback along I -> T") {
  std::string map = fixture("iota.map.json");
  REQUIRE(run("psi " + fixture("random_T_table.algebra.json") + " --n 0 --bound 3 --map " + map + " --out " + tmp("rt_i.json")).code == 0);
  Run r = run("pullback " + tmp("rt_i.json") + " --map " + map + " --bound 3 --out " + tmp("pb.json"));
  CHECK(r.code == 0);
  CHECK(run("check-weak " + tmp("pb.json") + " --n 0").code == 0);
}

TEST_CASE("slice-vcomp and validate") {
  CHECK(run("slice-vcomp " + fixture("slice_a.json") + " " + fixture("slice_b.json") + " --prop T").code == 0);
  CHECK(run("validate --prop T").code == 0);
  CHECK(run("validate " + fixture("bool_or.algebra.json")).code == 1);
  CHECK(run("validate " + fixture("graph53.json") + " --prop " + fixture("free7.prop.json")).code == 0);
}

TEST_CASE("fixed seeds give identical output") {
  std::string args = "validate --prop " + fixture("free7.prop.json") + " --samples 40 --seed 9";
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("bad invocations exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("eval /nonexistent.json --prop T").code == 2);
  CHECK(run("check-weak " + fixture("rocket.metagraph.json") + " --n 0").code == 2);
  CHECK(run("validate --prop T --n 99").code == 2);
}
