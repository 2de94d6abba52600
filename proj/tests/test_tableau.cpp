#include <doctest.h>

#include "folp/tableau.hpp"
#include "folp/text_format.hpp"
#include "support.hpp"

using namespace folp;

namespace {

Formula f(const char* text) { return parse_formula(text, {"c"}); }

Branch branch_of(std::initializer_list<const char*> texts) {
  Branch b;
  NodeId id = 1;
  for (const char* t : texts) b.push_back({id++, f(t)});
  return b;
}

RuleInstance rule(RuleName n, NodeId premise) { return RuleInstance{n, {premise}}; }

std::string violation(const Branch& b, const RuleInstance& r) {
  try {
    apply_rule(b, r);
  } catch (const RuleViolation& v) {
    return v.check();
  }
  return "";
}

using Concl = std::vector<std::vector<Formula>>;

}  // namespace

TEST_SUITE("tableau-rules") {

TEST_CASE("golden proof steps") {
  const Branch b = branch_of({"~(p : forall x. A(x) -> forall x. (c*p):[x] A(x))",
                              "p : forall x. A(x)",
                              "~forall x. (c*p):[x] A(x)",
                              "~(c*p):[@u] A(@u)",
                              "~c:[@u] (forall x. A(x) -> A(@u))",
                              "~c:[@u] (forall x. A(x) -> A(x))"});
  CHECK(apply_rule(b, rule(RuleName::FImp, 1)) == Concl{{f("p : forall x. A(x)"), f("~forall x. (c*p):[x] A(x)")}});
  RuleInstance ff = rule(RuleName::FForall, 3);
  ff.param = Atom::parameter("u");
  CHECK(apply_rule(std::span(b).first(3), ff) == Concl{{f("~(c*p):[@u] A(@u)")}});
  RuleInstance dot = rule(RuleName::FDot, 4);
  dot.cut = f("forall x. A(x)");
  CHECK(apply_rule(b, dot) == Concl{{f("~c:[@u] (forall x. A(x) -> A(@u))")}, {f("~p:[@u] forall x. A(x)")}});
  RuleInstance ins = rule(RuleName::Ins, 5);
  ins.param = Atom::parameter("u");
  ins.var = "x";
  CHECK(apply_rule(b, ins) == Concl{{f("~c:[@u] (forall x. A(x) -> A(x))")}});
  RuleInstance exp = rule(RuleName::Exp, 6);
  exp.param = Atom::parameter("u");
  CHECK(apply_rule(b, exp) == Concl{{f("~c:(forall x. A(x) -> A(x))")}});
}

TEST_CASE("remaining rules") {
  const Branch b = branch_of({"~~Q0", "Q0 -> R0", "forall x. A(x)", "~exists x. A(x)", "exists x. A(x)",
                              "p:[@u] A(@u)", "~(p+q):[@u] A(@u)", "~!p:[@u] p:[@u] A(@u)",
                              "~p:A(@u)", "~gen<x>(p):[@u] forall x. R(x, @u)", "A(@u)"});
  CHECK(apply_rule(b, rule(RuleName::FNeg, 1)) == Concl{{f("Q0")}});
  CHECK(apply_rule(b, rule(RuleName::TImp, 2)) == Concl{{f("~Q0")}, {f("R0")}});
  RuleInstance r = rule(RuleName::TForall, 3);
  r.param = Atom::parameter("u");
  CHECK(apply_rule(b, r) == Concl{{f("A(@u)")}});
  r = rule(RuleName::FExists, 4);
  r.param = Atom::parameter("u");
  CHECK(apply_rule(b, r) == Concl{{f("~A(@u)")}});
  r = rule(RuleName::TExists, 5);
  r.param = Atom::parameter("v");
  CHECK(apply_rule(b, r) == Concl{{f("A(@v)")}});
  CHECK(apply_rule(b, rule(RuleName::TColon, 6)) == Concl{{f("A(@u)")}});
  CHECK(apply_rule(b, rule(RuleName::FPlus, 7)) == Concl{{f("~p:[@u] A(@u)"), f("~q:[@u] A(@u)")}});
  CHECK(apply_rule(b, rule(RuleName::FBang, 8)) == Concl{{f("~p:[@u] A(@u)")}});
  r = rule(RuleName::Ctr, 9);
  r.param = Atom::parameter("u");
  CHECK(apply_rule(b, r) == Concl{{f("~p:[@u] A(@u)")}});
  CHECK(apply_rule(b, rule(RuleName::GenX, 10)) == Concl{{f("~p:[@u] R(x, @u)")}});
}

TEST_CASE("side condition violations name the condition") {
  const Branch b = branch_of({"~t:[@u] Q(@u)", "~(s*t):[@u] B(@u)", "A(@u)", "~forall x. A(x)",
                              "~!p:[@u] q:[@u] A(@u)", "~t:[@u] R(@u, @u)", "~t:[@u] forall y. R(@u, y)",
                              "~(Q0 -> Q0)", "~p:[@u] A(x)", "forall x. A(x)"});
  RuleInstance r = rule(RuleName::Exp, 1);
  r.param = Atom::parameter("u");
  CHECK(violation(b, r) == "exp-param-in-body");
  r.param = Atom::parameter("v");
  CHECK(violation(b, r) == "exp-param-not-in-window");
  r = rule(RuleName::FDot, 2);
  r.cut = f("A(@v)");
  CHECK(violation(b, r) == "cut-parameters");
  r.cut.reset();
  CHECK(violation(b, r) == "missing-argument");
  r = rule(RuleName::FForall, 4);
  r.param = Atom::parameter("u");
  CHECK(violation(b, r) == "fresh-parameter");
  CHECK(violation(b, rule(RuleName::FBang, 5)) == "bang-mismatch");
  r = rule(RuleName::Ctr, 1);
  r.param = Atom::parameter("u");
  CHECK(violation(b, r) == "ctr-param-in-window");
  r = rule(RuleName::Ins, 6);
  r.param = Atom::parameter("v");
  r.var = "x";
  CHECK(violation(b, r) == "ins-param-absent");
  r = rule(RuleName::Ins, 7);
  r.param = Atom::parameter("u");
  r.var = "y";
  CHECK(violation(b, r) == "ins-capture");
  r = rule(RuleName::Ins, 9);
  r.param = Atom::parameter("u");
  r.var = "x";
  CHECK(violation(b, r) == "ins-param-absent");
  CHECK(violation(b, rule(RuleName::FNeg, 8)) == "premise-shape");
  CHECK(violation(b, rule(RuleName::FImp, 42)) == "missing-premise");
  r = rule(RuleName::TForall, 10);
  r.param = Atom::variable("x");
  CHECK(violation(b, r) == "bad-argument");
}

TEST_CASE("Ins replaces every occurrence and keeps the window") {
  const Branch b = branch_of({"~t:[@u] R(@u, @u)"});
  RuleInstance r = rule(RuleName::Ins, 1);
  r.param = Atom::parameter("u");
  r.var = "x";
  CHECK(apply_rule(b, r) == Concl{{f("~t:[@u] R(x, x)")}});
}

TEST_CASE("branch closure") {
  const auto cs = test::cs_from(test::kGoldenCs);
  auto m = branch_closed(branch_of({"Q(@u)", "R0", "~Q(@u)"}), cs);
  REQUIRE(m);
  CHECK(m->kind == ClosureMark::Kind::Contradiction);
  m = branch_closed(branch_of({"Q0", "~c:(forall x. A(x) -> A(x))"}), cs);
  REQUIRE(m);
  CHECK(m->kind == ClosureMark::Kind::Cs);
  CHECK(m->constant == "c");
  CHECK_FALSE(branch_closed(branch_of({"Q(@u)", "~Q(@v)"}), cs));
  CHECK_FALSE(branch_closed(branch_of({"~c:[@u] (forall x. A(x) -> A(x))"}), cs));
  CHECK_THROWS_AS(verify_closure(branch_of({"Q0", "~R0"}), ClosureMark{ClosureMark::Kind::Contradiction, 1, 2}, cs),
                  RuleViolation);
}

TEST_CASE("tableau_closed") {
  const auto cs = test::cs_from(test::kGoldenCs);
  ProofTree single{{f("~Q0")}, ProofNode{1, f("~Q0"), std::nullopt, {}, std::nullopt}};
  CHECK_FALSE(tableau_closed(single, cs));

  auto split = [&](bool with_q0) {
    const RuleInstance timp = rule(RuleName::TImp, 1);
    std::vector<Formula> roots = {f("Q0 -> R0"), f("~R0")};
    if (with_q0) roots.push_back(f("Q0"));
    ProofNode last{static_cast<NodeId>(roots.size()), roots.back(), std::nullopt, {}, std::nullopt};
    const NodeId next = last.id + 1;
    last.children.push_back(ProofNode{next, f("~Q0"), timp, {}, std::nullopt});
    last.children.push_back(ProofNode{next + 1, f("R0"), timp, {}, std::nullopt});
    for (NodeId id = last.id - 1; id >= 1; --id) {
      ProofNode up{id, roots[static_cast<std::size_t>(id - 1)], std::nullopt, {}, std::nullopt};
      up.children.push_back(std::move(last));
      last = std::move(up);
    }
    return ProofTree{roots, last};
  };
  const ProofTree open = split(false);
  CHECK(branches(open).size() == 2);
  CHECK(node_count(open.top) == 4);
  CHECK_FALSE(tableau_closed(open, cs));
  CHECK(tableau_closed(split(true), cs));
}

TEST_CASE("property: random rule applications keep branches well-formed") {
  test::Gen gen(test::seed() + 30);
  gen.allow_elements = false;
  int applied = 0;
  for (int i = 0; i < 8000; ++i) {
    Branch b;
    for (NodeId id = 1; id <= 3; ++id) {
      Formula g = universal_closure(gen.formula(4));
      if (gen.coin()) g = negate(g);
      b.push_back({id, g});
    }
    RuleInstance r{kAllRules[gen.pick(kAllRules.size())], {static_cast<NodeId>(gen.pick(3) + 1)}};
    if (gen.coin(0.7)) r.param = Atom::parameter(gen.coin() ? "u" : "fresh");
    r.var = gen.var();
    r.cut = universal_closure(gen.formula(2));
    std::vector<std::vector<Formula>> out;
    try {
      out = apply_rule(b, r);
    } catch (const RuleViolation&) {
      continue;
    }
    CHECK(apply_rule(b, r) == out);
    ++applied;
    for (const auto& list : out)
      for (const auto& g : list) {
        REQUIRE_MESSAGE(is_closed_par_formula(g), print_formula(g));
        const bool justification = r.name == RuleName::FPlus || r.name == RuleName::FDot || r.name == RuleName::FBang ||
                                   r.name == RuleName::Ctr || r.name == RuleName::Exp || r.name == RuleName::Ins ||
                                   r.name == RuleName::GenX;
        if (justification) CHECK(g.body().window().only_parameters());
      }
    if (r.name == RuleName::TExists || r.name == RuleName::FForall) {
      for (const auto& e : b) CHECK_FALSE(par_set(e.formula).contains(r.param->name));
    }
  }
  CHECK(applied > 200);
}

}  // TEST_SUITE
