#include "folp/checker.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "folp/text_format.hpp"

namespace folp {

namespace {

struct Reject {
  Verdict::Category category;
  NodeId node;
  std::string check;
  std::string message;
};

[[noreturn]] void reject(Verdict::Category c, NodeId node, std::string check, std::string message) {
  throw Reject{c, node, std::move(check), std::move(message)};
}

void structural_pass(const ProofNode& n, std::set<NodeId>& ids) {
  if (!ids.insert(n.id).second)
    reject(Verdict::Category::Structural, n.id, "duplicate-id",
           "node id " + std::to_string(n.id) + " is used twice");
  if (!is_closed_par_formula(n.formula) || !element_set(n.formula).empty())
    reject(Verdict::Category::Structural, n.id, "not-closed-par-formula",
           print_formula(n.formula) + " is not a closed Par-formula");
  if (n.children.size() > 2)
    reject(Verdict::Category::Structural, n.id, "branching-shape", "more than two children");
  for (const auto& c : n.children) structural_pass(c, ids);
}

class Walker {
 public:
  Walker(const ConstantSpecification& cs, std::size_t roots) : cs_(cs), roots_(roots) {}

  void visit(const ProofNode& n, const ProofNode* parent, std::size_t child_index) {
    const bool in_roots = branch_.size() < roots_;
    if (n.rule) {
      check_derivation(n, parent, child_index);
    } else if (!in_roots) {
      reject(Verdict::Category::Structural, n.id, "root-mismatch",
             "node without a rule below the root formulas");
    }
    branch_.push_back({n.id, n.formula});
    if (n.children.empty()) {
      if (!n.closure)
        reject(Verdict::Category::Closure, n.id, "open-leaf", "leaf carries no closure mark");
      try {
        verify_closure(branch_, *n.closure, cs_);
      } catch (const RuleViolation& e) {
        reject(Verdict::Category::Closure, n.id, e.check(), e.what());
      }
    } else if (n.closure) {
      reject(Verdict::Category::Closure, n.id, "misplaced-closure", "closure mark on an inner node");
    }
    if (n.children.size() == 2) {
      const auto& a = n.children[0].rule;
      const auto& b = n.children[1].rule;
      if (!a || !b || *a != *b || !is_branching(a->name))
        reject(Verdict::Category::Rule, n.children[0].id, "branching-shape",
               "two children must come from one application of a branching rule");
    }
    for (std::size_t i = 0; i < n.children.size(); ++i)
      visit(n.children[i], &n, i);
    branch_.pop_back();
  }

 private:
  void check_derivation(const ProofNode& n, const ProofNode* parent, std::size_t index) {
    const RuleInstance& r = *n.rule;
    for (auto id : r.premises)
      if (std::none_of(branch_.begin(), branch_.end(), [id](const BranchEntry& e) { return e.id == id; }))
        reject(Verdict::Category::Structural, n.id, "dangling-premise",
               "premise " + std::to_string(id) + " is not an ancestor of node " + std::to_string(n.id));
    std::vector<std::vector<Formula>> conclusions;
    try {
      conclusions = apply_rule(branch_, r);
    } catch (const RuleViolation& e) {
      reject(Verdict::Category::Rule, n.id, e.check(), e.what());
    } catch (const CaptureError& e) {
      reject(Verdict::Category::Rule, n.id, "capture", e.what());
    }
    if (is_branching(r.name)) {
      if (parent == nullptr || parent->children.size() != 2)
        reject(Verdict::Category::Rule, n.id, "branching-shape",
               std::string(rule_name(r.name)) + " must produce two sibling nodes");
      if (conclusions[index].front() != n.formula)
        reject(Verdict::Category::Rule, n.id, "conclusion-mismatch",
               "expected " + print_formula(conclusions[index].front()));
      return;
    }
    const auto& list = conclusions.front();
    if (std::find(list.begin(), list.end(), n.formula) == list.end())
      reject(Verdict::Category::Rule, n.id, "conclusion-mismatch",
             "expected " + print_formula(list.front()) +
                 (list.size() > 1 ? " or " + print_formula(list.back()) : std::string()));
  }

  const ConstantSpecification& cs_;
  std::size_t roots_;
  Branch branch_;
};

}  // namespace

std::string_view category_name(Verdict::Category c) {
  switch (c) {
    case Verdict::Category::None: return "none";
    case Verdict::Category::Structural: return "structural";
    case Verdict::Category::Rule: return "rule";
    case Verdict::Category::Closure: return "closure";
    case Verdict::Category::Goal: return "goal";
  }
  return "none";
}

Verdict check_proof(const ProofTree& t, const ConstantSpecification& cs,
                    const std::optional<Formula>& expected_goal) {
  Verdict v;
  try {
    std::set<NodeId> ids;
    structural_pass(t.top, ids);
    if (t.roots.empty()) reject(Verdict::Category::Structural, -1, "root-mismatch", "no root formulas");
    const ProofNode* n = &t.top;
    for (std::size_t i = 0; i < t.roots.size(); ++i) {
      if (n == nullptr || n->rule || n->formula != t.roots[i])
        reject(Verdict::Category::Structural, n ? n->id : -1, "root-mismatch",
               "tree does not start with root " + print_formula(t.roots[i]));
      n = i + 1 < t.roots.size() ? (n->children.size() == 1 ? &n->children[0] : nullptr) : n;
    }
    if (expected_goal && (t.roots.size() != 1 || t.roots[0] != negate(*expected_goal)))
      reject(Verdict::Category::Goal, t.top.id, "goal-mismatch",
             "roots are not [" + print_formula(negate(*expected_goal)) + "]");
    Walker(cs, t.roots.size()).visit(t.top, nullptr, 0);
    v.accepted = true;
  } catch (const Reject& r) {
    v.category = r.category;
    v.node = r.node;
    v.check = r.check;
    v.message = r.message;
  }
  return v;
}

std::string Verdict::to_text() const {
  if (accepted) return "accepted";
  std::string out = "rejected: ";
  if (node >= 0) out += "node " + std::to_string(node) + ": ";
  out += std::string(category_name(category)) + " violation [" + check + "]";
  if (!message.empty()) out += ": " + message;
  return out;
}

std::string Verdict::to_json() const {
  nlohmann::json j{{"accepted", accepted}};
  if (!accepted) {
    j["node"] = node >= 0 ? nlohmann::json(node) : nlohmann::json(nullptr);
    j["category"] = category_name(category);
    j["check"] = check;
    j["message"] = message;
  }
  return j.dump();
}

}  // namespace folp
