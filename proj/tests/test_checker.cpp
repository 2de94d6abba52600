#include <doctest.h>

#include <json.hpp>

#include "folp/checker.hpp"
#include "folp/search.hpp"
#include "folp/text_format.hpp"
#include "support.hpp"

using namespace folp;

namespace {

Formula f(const char* text) { return parse_formula(text, {"c"}); }

ProofTree golden() {
  const auto cs = test::cs_from(test::kGoldenCs);
  return *prove(f(test::kGoldenGoal), cs).proof;
}

ProofNode* find(ProofNode& n, NodeId id) {
  if (n.id == id) return &n;
  for (auto& c : n.children)
    if (auto* hit = find(c, id)) return hit;
  return nullptr;
}

ProofNode* find_rule(ProofNode& n, RuleName r) {
  if (n.rule && n.rule->name == r) return &n;
  for (auto& c : n.children)
    if (auto* hit = find_rule(c, r)) return hit;
  return nullptr;
}

}  // namespace

TEST_SUITE("proof-checker") {

TEST_CASE("accepts the golden proof, read back from JSON") {
  const auto cs = test::cs_from(test::kGoldenCs);
  const ProofTree t = parse_proof_json(proof_to_json(golden()), {"c"});
  const Verdict v = check_proof(t, cs, f(test::kGoldenGoal));
  CHECK(v.accepted);
  CHECK(v.to_text() == "accepted");
}

TEST_CASE("freshness violation") {
  const auto cs = test::cs_from(test::kGoldenCs);
  const ProofTree clash = parse_proof_json(
      R"json({"roots": ["~(exists x. A(x) -> forall x. A(x))"],
      "tree": {"id": 1, "formula": "~(exists x. A(x) -> forall x. A(x))", "rule": {"name": "root", "premises": []}, "closure": null,
        "children": [{"id": 2, "formula": "exists x. A(x)", "rule": {"name": "FImp", "premises": [1]}, "closure": null,
          "children": [{"id": 3, "formula": "~forall x. A(x)", "rule": {"name": "FImp", "premises": [1]}, "closure": null,
            "children": [{"id": 4, "formula": "A(@u)", "rule": {"name": "TExists", "premises": [2], "param": "@u"}, "closure": null,
              "children": [{"id": 5, "formula": "~A(@u)", "rule": {"name": "FForall", "premises": [3], "param": "@u"},
                "closure": {"kind": "contradiction", "with": 4}, "children": []}]}]}]}]}})json",
      {});
  const Verdict v = check_proof(clash, cs);
  CHECK_FALSE(v.accepted);
  CHECK(v.check == "fresh-parameter");
  CHECK(v.node == 5);
  CHECK(v.category == Verdict::Category::Rule);
}

TEST_CASE("Exp side condition") {
  const auto cs = test::cs_from(test::kGoldenCs);
  ProofTree t = golden();
  ProofNode* fdot = find_rule(t.top, RuleName::FDot);
  REQUIRE(fdot);
  ProofNode* exp = find_rule(t.top, RuleName::Exp);
  REQUIRE(exp);
  exp->rule->premises = {fdot->rule->premises.front()};
  const Verdict v = check_proof(t, cs);
  CHECK_FALSE(v.accepted);
  CHECK(v.check == "exp-param-in-body");
  CHECK(v.node == exp->id);
}

TEST_CASE("open leaf, goal mismatch and structural errors") {
  const auto cs = test::cs_from(test::kGoldenCs);
  ProofTree single{{f("~Q0")}, ProofNode{1, f("~Q0"), std::nullopt, {}, std::nullopt}};
  Verdict v = check_proof(single, cs);
  CHECK_FALSE(v.accepted);
  CHECK(v.check == "open-leaf");
  CHECK(v.category == Verdict::Category::Closure);

  v = check_proof(golden(), cs, f("Q0"));
  CHECK(v.check == "goal-mismatch");
  CHECK(v.category == Verdict::Category::Goal);

  ProofTree dup = golden();
  find(dup.top, 3)->id = 2;
  v = check_proof(dup, cs);
  CHECK(v.check == "duplicate-id");
  CHECK(v.category == Verdict::Category::Structural);

  ProofTree dangling = golden();
  find(dangling.top, 4)->rule->premises = {99};
  v = check_proof(dangling, cs);
  CHECK(v.check == "dangling-premise");
  CHECK(v.category == Verdict::Category::Structural);

  ProofTree open_formula = golden();
  find(open_formula.top, 4)->formula = f("A(x)");
  v = check_proof(open_formula, cs);
  CHECK(v.check == "not-closed-par-formula");

  ProofTree bad_mark = golden();
  for (NodeId id = 1; id <= 9; ++id)
    if (auto* n = find(bad_mark.top, id); n && n->closure && n->closure->kind == ClosureMark::Kind::Contradiction)
      n->closure->with = 1;
  v = check_proof(bad_mark, cs);
  CHECK(v.check == "bad-closure");

  ProofTree no_cs = golden();
  v = check_proof(no_cs, ConstantSpecification{});
  CHECK(v.check == "bad-closure");
}

TEST_CASE("verdicts in text and JSON agree") {
  const auto cs = test::cs_from(test::kGoldenCs);
  ProofTree t = golden();
  find_rule(t.top, RuleName::FDot)->rule->cut = f("A(@zz)");
  const Verdict v = check_proof(t, cs);
  REQUIRE_FALSE(v.accepted);
  const auto j = nlohmann::json::parse(v.to_json());
  CHECK(j["accepted"] == false);
  CHECK(j["check"] == v.check);
  CHECK(j["node"] == v.node);
  CHECK(v.to_text().find(v.check) != std::string::npos);
  CHECK(v.to_text().find(std::to_string(v.node)) != std::string::npos);
}

}  // TEST_SUITE
