#include "doctest.h"

#include "jumploci/cli.hpp"
#include "jumploci/errors.hpp"

using namespace jumploci;

namespace {

std::string data_path(const std::string& name) { return std::string(JUMPLOCI_DATA_DIR) + "/" + name; }

CommandRequest request(const std::string& command, std::map<std::string, std::string> inputs) {
  CommandRequest r;
  r.command = command;
  for (auto& [role, file] : inputs) r.inputs[role] = data_path(file);
  return r;
}

// Re-parses every typed document found in a report and checks it emits
// the same JSON again.
int check_round_trips(const Json& j) {
  int count = 0;
  if (j.is_object() && j.contains("type") && j["type"].is_string()) {
    const std::string t = j["type"];
    Json again;
    if (t == "free-complex") again = to_json(free_complex_from_json(j));
    if (t == "presented-complex") again = to_json(presented_complex_from_json(j));
    if (t == "cga") again = to_json(cga_from_json(j));
    if (t == "nu") again = to_json(nu_from_json(j));
    if (t == "group") again = to_json(group_from_json(j));
    if (t == "presentation") again = to_json(presentation_from_json(j));
    if (t == "module") again = to_json(module_from_json(j));
    if (t == "ideal") again = to_json(ideal_from_json(j));
    if (t == "points") again = to_json(points_from_json(j));
    if (!again.is_null()) {
      CHECK(again == j);
      ++count;
    }
  }
  if (j.is_structured())
    for (const auto& v : j) count += check_round_trips(v);
  return count;
}

}  // namespace

TEST_CASE("document parsing") {
  auto e = presented_complex_from_json(read_document(data_path("example27.cc")));
  CHECK(!e.is_free());
  CHECK(e.generators(0) == 1);
  auto k = free_complex_from_json(read_document(data_path("koszul.cc")));
  CHECK(k.ranks() == std::vector<std::size_t>{1, 2, 1});
  auto a = cga_from_json(read_document(data_path("torus.cga")));
  CHECK(validate_cga(a).valid);
  auto nu = nu_from_json(read_document(data_path("rank_lowering.nu")));
  CHECK(nu.is_surjective());
  auto p = presentation_from_json(read_document(data_path("trefoil.pres")));
  CHECK(p.relators().size() == 1);

  try {
    parse_json("{\"type\": \"cga\",, }");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 15);
  }
  CHECK_THROWS_AS(free_complex_from_json(parse_json(R"({"type": "cga"})")), ParseError);
  CHECK_THROWS_AS(free_complex_from_json(parse_json(
                      R"({"type": "free-complex", "ring": {"field": "Q", "variables": ["x"]}, "ranks": [1, 1],
                          "differentials": [[["x +"]]]})")),
                  ParseError);
  CHECK_THROWS_AS(free_complex_from_json(parse_json(
                      R"({"type": "free-complex", "ring": {"field": "Q", "variables": ["x"]}, "ranks": [1, 2],
                          "differentials": [[["x"]]]})")),
                  ParseError);
  CHECK_THROWS_AS(read_document(data_path("missing.cc")), ParseError);
}

TEST_CASE("documents round-trip") {
  auto f9 = Field::galois(9);
  auto A = sample_cga({1, 3, 2}, f9, 3);
  CHECK(cga_from_json(to_json(A)) == A);
  auto R = Ring::make(f9, {"x", "y"}, true);
  FreeChainComplex e(R, {1, 1}, {PolyMatrix(R, 1, 1)});
  e = FreeChainComplex(R, {1, 2}, {PolyMatrix::from_columns(R, 1, {{parse_poly(R, "u*x^-1 + y")}, {parse_poly(R, "2")}})});
  CHECK(to_json(free_complex_from_json(to_json(e))) == to_json(e));
  PointSet s(f9, 2);
  s.insert({f9->element(4), f9->element(7)});
  CHECK(points_from_json(to_json(s)) == s);
  auto p = GroupPresentation::parse({"x1", "x2"}, {"[x1^2, x2]", "x1 x2 = x2 x1"});
  CHECK(presentation_from_json(to_json(p)) == p);
  NuData nu;
  nu.source_rank = 2;
  nu.target = {1, {4}};
  nu.free = {{1, 1}};
  nu.torsion = {{0, 1}};
  CHECK(to_json(nu_from_json(to_json(nu))) == to_json(nu));
}

TEST_CASE("cli reports") {
  auto r = request("jumploci", {{"complex", "example27.cc"}});
  r.q = 5;
  auto rep = run(r);
  CHECK(rep.exit_code == exit_ok);
  CHECK(rep.document["results"]["jump_locus"]["points"] == Json::parse(R"([["1"], ["2"], ["3"], ["4"]])"));

  auto res = request("resonance", {{"cga", "heisenberg.cga"}});
  res.q = 3;
  auto rr = run(res);
  CHECK(rr.document["results"]["resonance"]["count"] == 9);

  auto bad = run(request("validate", {{"cga", "bad.cga"}}));
  CHECK(bad.exit_code == exit_verdict);
  CHECK(bad.document["results"]["verdicts"][0]["rule"] == "commutativity");
  CHECK(bad.document["results"]["verdicts"][0]["witness"].size() == 2);

  auto grp = run(request("validate", {{"group", "bad.group"}}));
  CHECK(grp.exit_code == exit_verdict);

  auto missing = run(request("resonance", {{"cga", "nope.cga"}}));
  CHECK(missing.exit_code == exit_input);
  CHECK(missing.document["error"]["kind"] == "parse");

  auto no_q = run(request("resonance", {{"cga", "heisenberg.cga"}}));
  CHECK(no_q.exit_code == exit_input);

  auto unknown = run(request("frobnicate", {}));
  CHECK(unknown.exit_code == exit_input);

  auto neg = request("jumploci", {{"complex", "koszul.cc"}});
  neg.q = 3;
  neg.i = -1;
  CHECK(run(neg).exit_code == exit_input);

  auto scope = request("jumploci", {{"complex", "koszul.cc"}});
  scope.q = 3;
  scope.enumeration.max_points = 4;
  auto sr = run(scope);
  CHECK(sr.exit_code == exit_scope);
  CHECK(sr.document["error"]["kind"] == "scope");
}

TEST_CASE("cli determinism and round trips") {
  std::vector<CommandRequest> reqs;
  auto add = [&](CommandRequest r, std::optional<std::int64_t> q) {
    r.q = q;
    reqs.push_back(std::move(r));
  };
  add(request("resonance", {{"cga", "torus.cga"}}), 5);
  add(request("jumploci", {{"complex", "koszul.cc"}}), 3);
  add(request("supports", {{"complex", "trefoil.cc"}}), 7);
  add(request("e1", {{"cga", "torus.cga"}, {"nu", "torsion3.nu"}}), 3);
  add(request("verify-cvres", {{"cga", "torus.cga"}}), 3);
  add(request("finiteness", {{"presentation", "a2b.pres"}}), 5);
  add(request("alexander", {{"presentation", "trefoil.pres"}, {"nu", "abelianize1.nu"}}), std::nullopt);
  add(request("charvar", {{"presentation", "trefoil.pres"}, {"nu", "abelianize1.nu"}}), 7);
  add(request("genres-experiment", {}), 5);
  reqs.back().trials = 30;
  reqs[2].compare_v = true;
  for (const auto& r : reqs) {
    CAPTURE(r.command);
    auto a = run(r), b = run(r);
    CHECK(a.exit_code == exit_ok);
    CHECK(render(a, "text") == render(b, "text"));
    CHECK(render(a, "structured") == render(b, "structured"));
    CHECK(parse_json(render(a, "structured")) == a.document);
    check_round_trips(a.document);
  }
  // e1 emits a nu, a complex; supports emits a module, an ideal and points.
  CHECK(check_round_trips(run(reqs[3]).document) >= 2);
  CHECK(check_round_trips(run(reqs[2]).document) >= 3);
}
