#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "supdiff/cli.hpp"
#include "supdiff/io.hpp"

using namespace supdiff;

namespace {

VecQ v1(const Rat& a) {
  VecQ v(1);
  v[0] = a;
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::vector<std::string>& args, std::string* outText = nullptr) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  if (outText) *outText = out.str() + err.str();
  return rc;
}

}  // namespace

TEST_CASE("polyhedra survive the json round trip") {
  std::mt19937_64 rng(818283);
  int nontrivial = 0;
  for (int it = 0; it < 30; ++it) {
    const Eigen::Index d = 1 + (it % 3);
    const Polyhedron p = from_h(testsup::rand_hrep(rng, d, 4, true));
    const Polyhedron back = poly_from(json_poly(p), "t");
    CHECK(equals(p, back));
    if (!p.v.rays.empty() || !p.v.lineality.empty()) ++nontrivial;
  }
  CHECK(nontrivial >= 5);  // the corpus must exercise rays and lineality

  const Polyhedron none = make_empty(2);
  CHECK(equals(poly_from(json_poly(none), "t"), none));
}

TEST_CASE("rational parsing is strict") {
  CHECK(rat_from(Json("3/4"), "t") == Rat(3, 4));
  CHECK(rat_from(Json("-2"), "t") == Rat(-2));
  CHECK(rat_from(Json(5), "t") == Rat(5));
  CHECK_THROWS_AS(rat_from(Json(0.5), "t"), parse_error);
  CHECK_THROWS_AS(rat_from(Json("1/0"), "t"), parse_error);
  CHECK_THROWS_AS(rat_from(Json("abc"), "t"), parse_error);
}

TEST_CASE("spec parsing reports positions and rejects unknown keys") {
  const auto parse = [](const char* text) {
    return spec_from(Json::parse(text));
  };
  CHECK_THROWS_WITH_AS(parse(R"({"family":{}})"),
                       doctest::Contains("dim"), parse_error);
  CHECK_THROWS_WITH_AS(
      parse(R"({"dim":1,"turbo":true})"),
      doctest::Contains("unknown key"), parse_error);
  CHECK_THROWS_AS(
      parse(
          R"({"dim":1,"family":{"finite":{"members":)"
          R"([{"pieces":[["1","0"]]}],"labels":["a","b"]}}})"),
      parse_error);
  CHECK_THROWS_AS(
      parse(
          R"({"dim":1,"family":{"finite":{"members":)"
          R"([{"pieces":[["1","0"]]}],"omega":3}}})"),
      parse_error);
  CHECK_THROWS_AS(
      parse(
          R"({"dim":1,"family":{"parametric":{"range":["0","1"],)"
          R"("pieces":[{"slope":[["1"]],"intercept":["0"]}],"grid":1}}})"),
      parse_error);
  // a piece row carries dim slopes then the intercept
  CHECK_THROWS_AS(
      parse(R"({"dim":2,"family":{"finite":{"members":)"
            R"([{"pieces":[["1","0"]]}]}}})"),
      parse_error);
  CHECK_THROWS_AS(parse(R"({"dim":1,"objective":{"pieces":[["1","0.5"]]}})"),
                  parse_error);
}

TEST_CASE("the shipped spec files parse to the advertised shapes") {
  const ProblemSpec abs = load_spec("specs/abs.json");
  CHECK(abs.dim == 1);
  REQUIRE(abs.family);
  CHECK(std::get<FiniteFamily>(*abs.family).members.size() == 2);

  const ProblemSpec seq = load_spec("specs/sequence.json");
  REQUIRE(seq.family);
  CHECK(std::get<SequenceFamily>(*seq.family).prefix.size() == 4);

  const ProblemSpec sip = load_spec("specs/sip_linear.json");
  REQUIRE(sip.family);
  REQUIRE(sip.objective);
  CHECK(std::get<ParametricFamily>(*sip.family).grid == 3);

  const ProblemSpec w = load_spec("specs/wshape.json");
  REQUIRE(w.discrete);
  CHECK(w.discrete->samples.size() == 3);
}

TEST_CASE("text rendering is a stable flattening") {
  Json r;
  r["command"] = "demo";
  r["point"] = Json::array({"0", "1/2"});
  r["status"]["ok"] = true;
  r["empty"] = Json::array();
  const std::string text = render_text(r);
  CHECK(text.find("command") != std::string::npos);
  CHECK(text.find("demo") != std::string::npos);
  CHECK(text.find("0, 1/2") != std::string::npos);
  CHECK(text.find("status.ok") != std::string::npos);
  CHECK(text.find("(none)") != std::string::npos);
  CHECK(render_text(r) == text);
}

TEST_CASE("cli exit codes follow the contract") {
  std::string text;
  CHECK(run({"compute", "--spec", "specs/abs.json", "--point", "0",
             "--formula", "f1"},
            &text) == 0);
  CHECK(text.find("(-1)") != std::string::npos);

  // hypothesis refusal
  CHECK(run({"compute", "--spec", "specs/sequence.json", "--point", "0",
             "--formula", "form5"}) == 2);
  // slater failure is a negative verdict, not a refusal
  const char* tightPath = "/tmp/unit_cli_tight.json";
  {
    std::ofstream tight(tightPath);
    tight << R"({"dim":1,"objective":{"pieces":[["1","0"]]},"family":)"
          << R"({"finite":{"members":[{"pieces":[["1","0"]]},)"
          << R"({"pieces":[["-1","0"]]}]}}})";
  }
  CHECK(run({"sip", "--spec", tightPath, "--check", "slater"}, &text) == 3);
  std::remove(tightPath);
  // unknown formula and bad spec path are usage errors
  CHECK(run({"compute", "--spec", "specs/abs.json", "--point", "0",
             "--formula", "nope"}) == 1);
  CHECK(run({"compute", "--spec", "specs/missing.json", "--point", "0",
             "--formula", "f1"}) == 1);
  CHECK(run({"--help"}) == 0);
  CHECK(run({"compare", "--spec", "specs/abs.json", "--point", "0"}) == 0);
  CHECK(run({"sip", "--spec", "specs/sip_linear.json", "--check", "kkt",
             "--point", "0"}) == 0);
  CHECK(run({"conj", "--spec", "specs/wshape.json", "--argmin"}) == 0);
}

TEST_CASE("json reports are byte deterministic and re-parse exactly") {
  const char* jsonPath = "/tmp/unit_cli_report.json";
  const char* textPath = "/tmp/unit_cli_report.txt";
  const std::vector<std::string> args = {
      "compute", "--spec", "specs/abs.json", "--point", "0",
      "--formula", "fe1", "--json", jsonPath, "--quiet"};
  REQUIRE(run(args) == 0);
  const std::string first = slurp(jsonPath);
  const std::string firstText = slurp(textPath);
  REQUIRE(run(args) == 0);
  CHECK(slurp(jsonPath) == first);
  CHECK(slurp(textPath) == firstText);

  const Json report = Json::parse(first);
  const Polyhedron set = poly_from(report.at("set"), "report.set");
  FiniteFamily fam;
  fam.members = {PolyFunc{}, PolyFunc{}};
  fam.members[0].dim = 1;
  fam.members[0].pieces.push_back({v1(1), 0});
  fam.members[0].domain = full_space_h(1);
  fam.members[1].dim = 1;
  fam.members[1].pieces.push_back({v1(-1), 0});
  fam.members[1].domain = full_space_h(1);
  const SubdiffResult direct = subdiff_fe1(IndexedFamily{fam}, v1(0));
  CHECK(equals(set, direct.set));
  CHECK(report.at("formula") == "fe1");
  CHECK(report.at("exact") == true);

  std::remove(jsonPath);
  std::remove(textPath);
}
