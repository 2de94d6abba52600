// Independent verification of serialized tableau proofs.

#ifndef FOLP_CHECKER_HPP
#define FOLP_CHECKER_HPP

#include <optional>
#include <string>

#include "folp/constant_spec.hpp"
#include "folp/tableau.hpp"

namespace folp {

struct Verdict {
  enum class Category { None, Structural, Rule, Closure, Goal };

  bool accepted = false;
  Category category = Category::None;
  /// First offending node, -1 when the failure is not tied to a node.
  NodeId node = -1;
  /// Stable short code of the violated condition, e.g. "fresh-parameter".
  std::string check;
  std::string message;

  std::string to_text() const;
  std::string to_json() const;
};

std::string_view category_name(Verdict::Category c);

/// Accepts iff the roots are [~expected_goal] (when given), every non-root
/// node is re-derived from ancestor premises by its rule instance, and every
/// leaf carries a valid closure mark.
Verdict check_proof(const ProofTree& t, const ConstantSpecification& cs,
                    const std::optional<Formula>& expected_goal = std::nullopt);

}  // namespace folp

#endif  // FOLP_CHECKER_HPP
