#include "folp/tableau.hpp"

#include <algorithm>

namespace folp {

namespace {

constexpr std::array<std::string_view, 15> kRuleNames = {
    "FNeg",  "TImp",   "FImp", "TForall", "FExists", "TExists", "FForall", "TColon",
    "FPlus", "FDot",   "FBang", "Ctr",    "Exp",     "Ins",     "GenX"};

[[noreturn]] void fail(const char* check, const std::string& detail) {
  throw RuleViolation(check, detail);
}

const Formula& premise(std::span<const BranchEntry> branch, const RuleInstance& r,
                       std::size_t i) {
  if (r.premises.size() <= i) fail("missing-premise", "rule needs a premise");
  const NodeId id = r.premises[i];
  for (const auto& e : branch)
    if (e.id == id) return e.formula;
  fail("missing-premise", "node " + std::to_string(id) + " is not on the branch");
}

void expect(bool ok, const std::string& detail) {
  if (!ok) fail("premise-shape", detail);
}

// Premise ~t:_X A for the justification rules, with X restricted to parameters.
Formula negated_assertion(const Formula& f, std::string_view rule) {
  expect(f.is_negated_assertion(), std::string(rule) + " needs a negated assertion");
  const Formula a = f.body();
  if (!a.window().only_parameters())
    fail("window-not-parameters", std::string(rule) + " needs a window of parameters");
  return a;
}

const Atom& require_param(const RuleInstance& r) {
  if (!r.param) fail("missing-argument", std::string(rule_name(r.name)) + " needs a parameter");
  if (!r.param->is_parameter())
    fail("bad-argument", to_string(*r.param) + " is not a parameter");
  return *r.param;
}

void require_fresh(std::span<const BranchEntry> branch, const Atom& u) {
  for (const auto& e : branch)
    if (par_set(e.formula).contains(u.name))
      fail("fresh-parameter", to_string(u) + " already occurs in node " + std::to_string(e.id));
}

Formula instantiate(const Formula& quantified, const Atom& u) {
  return substitute(quantified.body(), quantified.name(), u);
}

using Result = std::vector<std::vector<Formula>>;

Result one(std::vector<Formula> fs) { return {std::move(fs)}; }

Result apply_justification(std::span<const BranchEntry> branch, const RuleInstance& r) {
  const Formula& p = premise(branch, r, 0);
  const std::string_view rn = rule_name(r.name);
  if (r.name == RuleName::TColon) {
    expect(p.is(FormulaKind::Assert), "TColon needs an assertion");
    if (!p.window().only_parameters())
      fail("window-not-parameters", "TColon needs a window of parameters");
    return one({universal_closure(p.body())});
  }
  const Formula a = negated_assertion(p, rn);
  const Term t = a.term();
  const Window& x = a.window();
  switch (r.name) {
    case RuleName::FPlus:
      expect(t.kind() == TermKind::Sum, "FPlus needs a sum term");
      return one({negate(Formula::assertion(t.left(), x, a.body())),
                  negate(Formula::assertion(t.right(), x, a.body()))});
    case RuleName::FDot: {
      expect(t.kind() == TermKind::App, "FDot needs an application term");
      if (!r.cut) fail("missing-argument", "FDot needs a cut formula");
      for (const auto& u : par_set(*r.cut))
        if (!x.contains(Atom::parameter(u)))
          fail("cut-parameters", "@" + u + " of the cut formula is not in the window");
      return {{negate(Formula::assertion(t.left(), x, Formula::impl(*r.cut, a.body())))},
              {negate(Formula::assertion(t.right(), x, *r.cut))}};
    }
    case RuleName::FBang: {
      expect(t.kind() == TermKind::Bang, "FBang needs a ! term");
      const Formula inner = a.body();
      if (!inner.is(FormulaKind::Assert) || inner.term() != t.inner() || inner.window() != x)
        fail("bang-mismatch", "body must be the same assertion with the same window");
      return one({negate(inner)});
    }
    case RuleName::GenX: {
      expect(t.kind() == TermKind::Gen, "GenX needs a gen term");
      const Formula body = a.body();
      if (!body.is(FormulaKind::Forall) || body.name() != t.name())
        fail("gen-variable", "body must be a universal over " + t.name());
      return one({negate(Formula::assertion(t.inner(), x, body.body()))});
    }
    case RuleName::Ctr: {
      const Atom& u = require_param(r);
      if (x.contains(u)) fail("ctr-param-in-window", to_string(u) + " is already in the window");
      return one({negate(Formula::assertion(t, x.with(u), a.body()))});
    }
    case RuleName::Exp: {
      const Atom& u = require_param(r);
      if (!x.contains(u)) fail("exp-param-not-in-window", to_string(u) + " is not in the window");
      if (par_set(a.body()).contains(u.name))
        fail("exp-param-in-body", to_string(u) + " occurs in the body");
      return one({negate(Formula::assertion(t, x.without(u), a.body()))});
    }
    case RuleName::Ins: {
      const Atom& u = require_param(r);
      if (!r.var) fail("missing-argument", "Ins needs a variable");
      const std::string& v = *r.var;
      const Formula body = a.body();
      if (!par_set(body).contains(u.name))
        fail("ins-param-absent", to_string(u) + " does not occur in the body");
      if (free_vars(body).contains(v)) fail("ins-variable-free", v + " is already free in the body");
      Formula replaced = body;
      try {
        replaced = replace_parameter(body, u, v);
      } catch (const CaptureError& e) {
        fail("ins-capture", e.what());
      }
      return one({negate(Formula::assertion(t, x, replaced))});
    }
    default:
      break;
  }
  fail("premise-shape", "not a justification rule");
}

}  // namespace

std::string_view rule_name(RuleName r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<RuleName> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleName>(i);
  return std::nullopt;
}

bool is_branching(RuleName r) { return r == RuleName::TImp || r == RuleName::FDot; }

std::vector<std::vector<Formula>> apply_rule(std::span<const BranchEntry> branch,
                                             const RuleInstance& r) {
  switch (r.name) {
    case RuleName::FNeg: {
      const Formula& p = premise(branch, r, 0);
      expect(p.is(FormulaKind::Neg) && p.body().is(FormulaKind::Neg), "FNeg needs ~~A");
      return one({p.body().body()});
    }
    case RuleName::TImp: {
      const Formula& p = premise(branch, r, 0);
      expect(p.is(FormulaKind::Impl), "TImp needs A -> B");
      return {{negate(p.lhs())}, {p.rhs()}};
    }
    case RuleName::FImp: {
      const Formula& p = premise(branch, r, 0);
      expect(p.is(FormulaKind::Neg) && p.body().is(FormulaKind::Impl), "FImp needs ~(A -> B)");
      return one({p.body().lhs(), negate(p.body().rhs())});
    }
    case RuleName::TForall:
    case RuleName::TExists: {
      const Formula& p = premise(branch, r, 0);
      const bool universal = r.name == RuleName::TForall;
      expect(p.is(universal ? FormulaKind::Forall : FormulaKind::Exists),
             universal ? "TForall needs forall x. A" : "TExists needs exists x. A");
      const Atom& u = require_param(r);
      if (!universal) require_fresh(branch, u);
      return one({instantiate(p, u)});
    }
    case RuleName::FExists:
    case RuleName::FForall: {
      const Formula& p = premise(branch, r, 0);
      const bool universal = r.name == RuleName::FForall;
      expect(p.is(FormulaKind::Neg) &&
                 p.body().is(universal ? FormulaKind::Forall : FormulaKind::Exists),
             universal ? "FForall needs ~forall x. A" : "FExists needs ~exists x. A");
      const Atom& u = require_param(r);
      if (universal) require_fresh(branch, u);
      return one({negate(instantiate(p.body(), u))});
    }
    default:
      return apply_justification(branch, r);
  }
}

namespace {

bool complementary(const Formula& a, const Formula& b) {
  return (a.is(FormulaKind::Neg) && a.body() == b) || (b.is(FormulaKind::Neg) && b.body() == a);
}

std::optional<std::string> cs_closing(const Formula& f, const ConstantSpecification& cs) {
  if (!f.is_negated_assertion()) return std::nullopt;
  const Formula a = f.body();
  if (!a.window().empty() || a.term().kind() != TermKind::Constant) return std::nullopt;
  if (!cs.contains(a.term().name(), a.body())) return std::nullopt;
  return a.term().name();
}

const BranchEntry* find_entry(std::span<const BranchEntry> branch, NodeId id) {
  for (const auto& e : branch)
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace

std::optional<ClosureMark> closes_with(std::span<const BranchEntry> branch, std::size_t index,
                                       const ConstantSpecification& cs) {
  const BranchEntry& e = branch[index];
  for (std::size_t j = 0; j < branch.size(); ++j)
    if (j != index && complementary(e.formula, branch[j].formula))
      return ClosureMark{ClosureMark::Kind::Contradiction, branch[j].id, e.id, {}};
  if (auto c = cs_closing(e.formula, cs)) return ClosureMark{ClosureMark::Kind::Cs, -1, e.id, *c};
  return std::nullopt;
}

std::optional<ClosureMark> branch_closed(std::span<const BranchEntry> branch,
                                         const ConstantSpecification& cs) {
  for (std::size_t i = 0; i < branch.size(); ++i)
    if (auto m = closes_with(branch.first(i + 1), i, cs)) return m;
  return std::nullopt;
}

void verify_closure(std::span<const BranchEntry> branch, const ClosureMark& mark,
                    const ConstantSpecification& cs) {
  if (branch.empty()) fail("bad-closure", "empty branch");
  const BranchEntry* at = mark.at < 0 ? &branch.back() : find_entry(branch, mark.at);
  if (at == nullptr) fail("bad-closure", "node " + std::to_string(mark.at) + " is not on the branch");
  if (mark.kind == ClosureMark::Kind::Contradiction) {
    const BranchEntry* other = find_entry(branch, mark.with);
    if (other == nullptr)
      fail("bad-closure", "node " + std::to_string(mark.with) + " is not on the branch");
    if (!complementary(at->formula, other->formula))
      fail("bad-closure", "nodes " + std::to_string(at->id) + " and " + std::to_string(other->id) +
                              " are not complementary");
    return;
  }
  auto c = cs_closing(at->formula, cs);
  if (!c || *c != mark.constant)
    fail("bad-closure", "node " + std::to_string(at->id) + " is not ~" + mark.constant +
                            ":A for an entry " + mark.constant + ":A of the constant specification");
}

namespace {

void collect_branches(const ProofNode& n, Branch& prefix, std::vector<Branch>& out) {
  prefix.push_back({n.id, n.formula});
  if (n.children.empty()) out.push_back(prefix);
  for (const auto& c : n.children) collect_branches(c, prefix, out);
  prefix.pop_back();
}

}  // namespace

std::vector<Branch> branches(const ProofTree& t) {
  std::vector<Branch> out;
  Branch prefix;
  collect_branches(t.top, prefix, out);
  return out;
}

std::size_t node_count(const ProofNode& n) {
  std::size_t k = 1;
  for (const auto& c : n.children) k += node_count(c);
  return k;
}

bool tableau_closed(const ProofTree& t, const ConstantSpecification& cs) {
  const auto bs = branches(t);
  return std::all_of(bs.begin(), bs.end(),
                     [&](const Branch& b) { return branch_closed(b, cs).has_value(); });
}

}  // namespace folp
