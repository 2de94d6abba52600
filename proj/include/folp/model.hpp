// Finite Mkrtychev models (D, I, E): satisfaction of closed D-formulas,
// validation of the admissible-evidence conditions E1-E6 on a finitely
// presented evidence function, and bounded countermodel search.

#ifndef FOLP_MODEL_HPP
#define FOLP_MODEL_HPP

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "folp/constant_spec.hpp"
#include "folp/syntax.hpp"

namespace folp {

struct Relation {
  /// nullopt until the first tuple or use fixes it.
  std::optional<std::size_t> arity;
  std::set<std::vector<std::string>> tuples;
};

class MkrtychevModel {
 public:
  /// Domain element names, without the '$' sigil.
  std::vector<std::string> domain;
  std::map<std::string, Relation> interp;

  void add_evidence(const Term& t, const Formula& f);
  /// Registers t with an empty evidence set if absent.
  void touch(const Term& t);
  /// Membership up to renaming of bound variables.
  bool in_evidence(const Term& t, const Formula& f) const;
  /// Listed evidence of t, in canonical order; empty for unlisted terms.
  std::vector<Formula> evidence_of(const Term& t) const;
  std::set<Term> evidence_terms() const;
  std::size_t evidence_size() const;

  bool holds(const std::string& predicate, const std::vector<std::string>& tuple) const;

 private:
  // term -> (alpha-canonical body -> body as first given)
  std::map<Term, std::map<Formula, Formula>> evidence_;
};

/// M |= f for a closed D-formula. Throws ModelError when f has free
/// variables or parameters, or mentions an element outside the domain.
bool satisfies(const MkrtychevModel& m, const Formula& f);

struct Violation {
  /// "E1" .. "E6", or "domain" / "arity" for malformed models.
  std::string condition;
  std::optional<Term> term;
  std::optional<Formula> formula;
  std::string message;
};

/// Checks E1-E6 over the evidence terms, their subterms and the terms of
/// `queries`. Empty result means no violation on this fragment.
std::vector<Violation> validate_model(const MkrtychevModel& m, const ConstantSpecification& cs,
                                      std::span<const Formula> queries = {});

/// Least extension of the evidence on `universe` (closed under subterms)
/// satisfying E1-E6, computed by at most `max_rounds` saturation rounds.
/// Returns true when a fixpoint was reached.
bool close_evidence(MkrtychevModel& m, const std::set<Term>& universe,
                    const ConstantSpecification& cs, std::size_t max_rounds = 64);

struct CountermodelLimits {
  std::size_t max_candidates = 200000;
  std::chrono::milliseconds time_limit{10000};
};

struct CountermodelResult {
  enum class Status { Found, None, Exhausted };
  Status status = Status::None;
  std::optional<MkrtychevModel> model;
  std::size_t candidates = 0;
};

/// Small-scope search for a validated model that respects the concrete CS
/// entries and falsifies the goal sentence.
CountermodelResult find_countermodel(const Formula& goal, const ConstantSpecification& cs,
                                     std::size_t max_domain, std::size_t pool_depth,
                                     const CountermodelLimits& limits = {});

}  // namespace folp

#endif  // FOLP_MODEL_HPP
