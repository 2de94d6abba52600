// Deterministic tableau proof search under resource budgets.

#ifndef FOLP_SEARCH_HPP
#define FOLP_SEARCH_HPP

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "folp/constant_spec.hpp"
#include "folp/tableau.hpp"

namespace folp {

struct SearchBudget {
  std::size_t max_nodes = 10000;
  std::size_t max_depth = 200;
  std::size_t max_params = 8;
  std::size_t max_cut_candidates = 32;
  std::chrono::milliseconds time_limit{30000};
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t steps = 0;
  std::chrono::milliseconds elapsed{0};
};

struct SearchOutcome {
  enum class Status { Proved, Open, Exhausted };
  Status status = Status::Open;
  /// Pruned and renumbered closed tableau, when proved.
  std::optional<ProofTree> proof;
  /// Formulas of the saturated or abandoned branch otherwise.
  std::vector<Formula> open_branch;
  /// Budget dimension that ran out: "nodes", "depth", "params" or "time".
  std::string dimension;
  std::vector<std::string> diagnostics;
  SearchStats stats;
};

/// Search state: the tableau under construction plus a stack of open
/// branches, the top one being expanded.
class SearchState {
 public:
  SearchState(std::vector<Formula> roots, const ConstantSpecification& cs,
              SearchBudget budget = {}, std::vector<Formula> hints = {});

  bool closed() const noexcept { return open_.empty(); }
  /// The current branch has no enabled, non-redundant rule instance.
  bool saturated() const noexcept { return saturated_; }
  /// Budget dimension that stopped the search, if any.
  const std::optional<std::string>& exhausted() const noexcept { return exhausted_; }
  bool finished() const noexcept { return closed() || saturated_ || exhausted_.has_value(); }

  /// Formulas of the branch currently expanded (empty when closed).
  std::vector<Formula> current_branch() const;
  const std::optional<RuleInstance>& last_rule() const noexcept { return last_rule_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t steps() const noexcept { return steps_; }

  /// The tableau built so far, ids as created.
  ProofTree tree() const;

 private:
  struct Node {
    NodeId id;
    Formula formula;
    std::optional<RuleInstance> rule;
    std::vector<NodeId> children;
    std::optional<ClosureMark> closure;
  };
  struct OpenBranch {
    NodeId leaf = 0;
    Branch entries;
    std::map<Formula, NodeId> index;
    std::vector<std::string> params;
    std::set<NodeId> delta_done;
    bool budget_hit = false;
  };
  struct Candidate {
    RuleInstance rule;
    std::vector<std::vector<Formula>> conclusions;
  };

  std::optional<Candidate> select(OpenBranch& b);
  std::optional<Candidate> try_rule(const OpenBranch& b, RuleInstance r) const;
  bool redundant(const OpenBranch& b, const std::vector<std::vector<Formula>>& alts) const;
  std::vector<Formula> cut_candidates(const OpenBranch& b, const Formula& premise) const;
  std::vector<std::string> ins_variables(const OpenBranch& b, const Formula& body) const;
  Atom fresh_parameter(const OpenBranch& b) const;
  /// Appends a node below the branch leaf; returns true if the branch closed.
  bool extend(OpenBranch& b, const Formula& f, const std::optional<RuleInstance>& r);
  ProofNode build(NodeId id) const;

  const ConstantSpecification* cs_;
  SearchBudget budget_;
  std::vector<Formula> hints_;
  std::vector<Formula> roots_;
  std::vector<Node> nodes_;
  std::vector<OpenBranch> open_;
  std::size_t next_param_ = 0;
  std::size_t steps_ = 0;
  bool saturated_ = false;
  std::optional<std::string> exhausted_;
  std::optional<RuleInstance> last_rule_;
  std::chrono::steady_clock::time_point started_;

  friend SearchState saturate_step(SearchState state);
};

/// Applies the highest-priority enabled, non-redundant rule instance on the
/// current branch. A finished state is returned unchanged.
SearchState saturate_step(SearchState state);

/// Searches for a closed tableau rooted at ~goal. Throws Error when goal is
/// not a sentence.
SearchOutcome prove(const Formula& goal, const ConstantSpecification& cs,
                    const SearchBudget& budget = {}, const std::vector<Formula>& hints = {});

/// Drops nodes no closure depends on, collapses unnecessary branchings and
/// renumbers nodes in preorder from 1.
ProofTree prune_proof(const ProofTree& t);

}  // namespace folp

#endif  // FOLP_SEARCH_HPP
