// The tableau calculus: rule instances, single rule application and
// closure detection over branches of closed Par-formulas.

#ifndef FOLP_TABLEAU_HPP
#define FOLP_TABLEAU_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "folp/constant_spec.hpp"
#include "folp/error.hpp"
#include "folp/syntax.hpp"

namespace folp {

enum class RuleName : std::uint8_t {
  FNeg, TImp, FImp, TForall, FExists, TExists, FForall,
  TColon, FPlus, FDot, FBang, Ctr, Exp, Ins, GenX
};

inline constexpr std::array<RuleName, 15> kAllRules = {
    RuleName::FNeg,  RuleName::TImp,  RuleName::FImp, RuleName::TForall, RuleName::FExists,
    RuleName::TExists, RuleName::FForall, RuleName::TColon, RuleName::FPlus, RuleName::FDot,
    RuleName::FBang, RuleName::Ctr,   RuleName::Exp,  RuleName::Ins,     RuleName::GenX};

std::string_view rule_name(RuleName r);
std::optional<RuleName> rule_from_name(std::string_view name);
bool is_branching(RuleName r);

using NodeId = int;

struct RuleInstance {
  RuleName name = RuleName::FNeg;
  std::vector<NodeId> premises;
  std::optional<Atom> param;
  std::optional<Formula> cut;
  std::optional<std::string> var;

  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

struct BranchEntry {
  NodeId id = 0;
  Formula formula;
};

/// A root-to-leaf sequence of labelled nodes.
using Branch = std::vector<BranchEntry>;

/// A rule instance that does not apply. check() is a stable short code such
/// as "premise-shape" or "exp-param-in-body"; what() carries the detail.
class RuleViolation : public Error {
 public:
  RuleViolation(std::string check, const std::string& detail)
      : Error(check + ": " + detail), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

/// Conclusions of r on the branch: one list per child branch, formulas of a
/// list added in order. Throws RuleViolation.
std::vector<std::vector<Formula>> apply_rule(std::span<const BranchEntry> branch,
                                             const RuleInstance& r);

struct ClosureMark {
  enum class Kind : std::uint8_t { Contradiction, Cs };
  Kind kind = Kind::Contradiction;
  /// Contradiction: the other node of the complementary pair.
  NodeId with = -1;
  /// Node that carries the closing formula; -1 means the leaf itself.
  NodeId at = -1;
  /// Cs: the constant c of the closing ~c:A.
  std::string constant;

  friend bool operator==(const ClosureMark&, const ClosureMark&) = default;
};

/// Searches the branch for A and ~A, then for ~c:A with c:A in CS.
std::optional<ClosureMark> branch_closed(std::span<const BranchEntry> branch,
                                         const ConstantSpecification& cs);

/// Closure condition for the formula at position `index` against the rest
/// of the branch, only pairs involving that node. Used incrementally.
std::optional<ClosureMark> closes_with(std::span<const BranchEntry> branch, std::size_t index,
                                       const ConstantSpecification& cs);

/// Verifies a claimed closure mark; throws RuleViolation("bad-closure").
void verify_closure(std::span<const BranchEntry> branch, const ClosureMark& mark,
                    const ConstantSpecification& cs);

struct ProofNode {
  NodeId id = 0;
  Formula formula;
  /// nullopt for root nodes.
  std::optional<RuleInstance> rule;
  std::vector<ProofNode> children;
  std::optional<ClosureMark> closure;
};

struct ProofTree {
  /// Root formulas; they label the initial single-child chain of the tree.
  std::vector<Formula> roots;
  ProofNode top;
};

/// All root-to-leaf branches.
std::vector<Branch> branches(const ProofTree& t);

std::size_t node_count(const ProofNode& n);

/// Every branch closes (by branch_closed, marks are not trusted).
bool tableau_closed(const ProofTree& t, const ConstantSpecification& cs);

}  // namespace folp

#endif  // FOLP_TABLEAU_HPP
