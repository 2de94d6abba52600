// Shared test helpers: seeded random generators, independent oracles and
// the goal corpus used by the unit and acceptance suites.

#ifndef FOLP_TESTS_SUPPORT_HPP
#define FOLP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "folp/constant_spec.hpp"
#include "folp/syntax.hpp"
#include "folp/text_format.hpp"

namespace folp::test {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("FOLP_SEED"); s && *s) return std::strtoull(s, nullptr, 10);
  return 20241017;
}

// --- random formulas ---------------------------------------------------------

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t s) : rng(s) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  bool allow_params = true;
  bool allow_elements = false;

  Atom atom() {
    const std::size_t k = pick(allow_params ? 5 : 3);
    if (allow_elements && coin(0.15)) return Atom::element(coin() ? "a" : "b");
    static const char* vars[] = {"x", "y", "z"};
    if (k < 3) return Atom::variable(vars[k]);
    return Atom::parameter(k == 3 ? "u" : "v");
  }

  std::string var() {
    static const char* vars[] = {"x", "y", "z"};
    return vars[pick(3)];
  }

  Term term(int depth) {
    if (depth <= 0 || coin(0.5)) {
      switch (pick(3)) {
        case 0: return Term::variable("p");
        case 1: return Term::variable("q");
        default: return Term::constant("c");
      }
    }
    switch (pick(4)) {
      case 0: return Term::sum(term(depth - 1), term(depth - 1));
      case 1: return Term::app(term(depth - 1), term(depth - 1));
      case 2: return Term::bang(term(depth - 1));
      default: return Term::gen(var(), term(depth - 1));
    }
  }

  Window window() {
    std::vector<Atom> w;
    const std::size_t n = pick(3);
    for (std::size_t i = 0; i < n; ++i) w.push_back(atom());
    return Window(std::move(w));
  }

  Formula pred() {
    switch (pick(4)) {
      case 0: return Formula::pred("Q0");
      case 1: return Formula::pred("A", {atom()});
      case 2: return Formula::pred("R", {atom(), atom()});
      default: return Formula::pred("B", {atom()});
    }
  }

  Formula formula(int depth) {
    if (depth <= 0 || coin(0.25)) return pred();
    switch (pick(6)) {
      case 0: return Formula::neg(formula(depth - 1));
      case 1: return Formula::impl(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::forall(var(), formula(depth - 1));
      case 3: return Formula::exists(var(), formula(depth - 1));
      default: return Formula::assertion(term(2), window(), formula(depth - 1));
    }
  }
};

/// Renames every individual variable by `ren` (binders, windows, gen
/// variables and local occurrences alike).
inline Term rename_term(const Term& t, const std::map<std::string, std::string>& ren) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: return t;
    case TermKind::Sum: return Term::sum(rename_term(t.left(), ren), rename_term(t.right(), ren));
    case TermKind::App: return Term::app(rename_term(t.left(), ren), rename_term(t.right(), ren));
    case TermKind::Bang: return Term::bang(rename_term(t.inner(), ren));
    case TermKind::Gen: return Term::gen(ren.at(t.name()), rename_term(t.inner(), ren));
  }
  return t;
}

inline Atom rename_atom(const Atom& a, const std::map<std::string, std::string>& ren) {
  return a.is_variable() ? Atom::variable(ren.at(a.name)) : a;
}

inline Formula rename_all(const Formula& f, const std::map<std::string, std::string>& ren) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::vector<Atom> args;
      for (const auto& a : f.args()) args.push_back(rename_atom(a, ren));
      return Formula::pred(f.name(), std::move(args));
    }
    case FormulaKind::Neg: return Formula::neg(rename_all(f.body(), ren));
    case FormulaKind::Impl: return Formula::impl(rename_all(f.lhs(), ren), rename_all(f.rhs(), ren));
    case FormulaKind::Forall: return Formula::forall(ren.at(f.name()), rename_all(f.body(), ren));
    case FormulaKind::Exists: return Formula::exists(ren.at(f.name()), rename_all(f.body(), ren));
    case FormulaKind::Assert: {
      std::vector<Atom> w;
      for (const auto& a : f.window()) w.push_back(rename_atom(a, ren));
      return Formula::assertion(rename_term(f.term(), ren), Window(std::move(w)), rename_all(f.body(), ren));
    }
  }
  return f;
}

inline void all_var_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: return;
    case TermKind::Sum:
    case TermKind::App:
      all_var_names(t.left(), out);
      all_var_names(t.right(), out);
      return;
    case TermKind::Bang: all_var_names(t.inner(), out); return;
    case TermKind::Gen:
      out.insert(t.name());
      all_var_names(t.inner(), out);
      return;
  }
}

inline void all_var_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      for (const auto& a : f.args())
        if (a.is_variable()) out.insert(a.name);
      return;
    case FormulaKind::Neg: all_var_names(f.body(), out); return;
    case FormulaKind::Impl:
      all_var_names(f.lhs(), out);
      all_var_names(f.rhs(), out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out.insert(f.name());
      all_var_names(f.body(), out);
      return;
    case FormulaKind::Assert:
      all_var_names(f.term(), out);
      for (const auto& a : f.window())
        if (a.is_variable()) out.insert(a.name);
      all_var_names(f.body(), out);
      return;
  }
}

// --- oracles -------------------------------------------------------------------

/// Free variables computed straight from the definition: standard first
/// order clauses, and the individual variables of X for t:_X A.
inline std::set<std::string> oracle_free_vars(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::set<std::string> out;
      for (const auto& a : f.args())
        if (a.is_variable()) out.insert(a.name);
      return out;
    }
    case FormulaKind::Neg: return oracle_free_vars(f.body());
    case FormulaKind::Impl: {
      auto out = oracle_free_vars(f.lhs());
      auto r = oracle_free_vars(f.rhs());
      out.insert(r.begin(), r.end());
      return out;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      auto out = oracle_free_vars(f.body());
      out.erase(f.name());
      return out;
    }
    case FormulaKind::Assert: {
      std::set<std::string> out;
      for (const auto& a : f.window())
        if (a.is_variable()) out.insert(a.name);
      return out;
    }
  }
  return {};
}

/// Brute force: some bijection between the variable names of a and b maps
/// a onto b exactly. Sound for variance; complete only when a and b use
/// the same number of names, which holds for renamed copies.
inline bool oracle_bijective_variant(const Formula& a, const Formula& b) {
  std::set<std::string> na, nb;
  all_var_names(a, na);
  all_var_names(b, nb);
  if (na.size() != nb.size()) return false;
  std::vector<std::string> from(na.begin(), na.end());
  std::vector<std::string> to(nb.begin(), nb.end());
  do {
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < from.size(); ++i) ren[from[i]] = to[i];
    if (rename_all(a, ren) == b) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

// --- corpus --------------------------------------------------------------------

inline const char* kGoldenGoal = "p : forall x. A(x) -> forall x. (c*p):[x] A(x)";
inline const char* kGoldenCs = "const c.\nc : forall x. A(x) -> A(x).\n";
inline const char* kTotalCs = "const c, d.\ntotal.\n";

inline ConstantSpecification cs_from(const char* text) { return parse_cs_text(text); }

struct AxiomCase {
  Scheme scheme;
  const char* instance;
};

/// Three small instances per scheme. Instances may have free variables;
/// the proved goal is their universal closure.
inline const std::vector<AxiomCase>& axiom_suite() {
  static const std::vector<AxiomCase> cases = {
      {Scheme::P1, "Q0 -> R0 -> Q0"},
      {Scheme::P1, "A(x) -> B(y) -> A(x)"},
      {Scheme::P1, "p:Q0 -> ~R0 -> p:Q0"},
      {Scheme::P2, "(Q0 -> R0 -> S0) -> (Q0 -> R0) -> Q0 -> S0"},
      {Scheme::P2, "(A(x) -> B(x) -> A(y)) -> (A(x) -> B(x)) -> A(x) -> A(y)"},
      {Scheme::P2, "(forall x. A(x) -> Q0 -> R0) -> (forall x. A(x) -> Q0) -> forall x. A(x) -> R0"},
      {Scheme::P3, "(~Q0 -> ~R0) -> R0 -> Q0"},
      {Scheme::P3, "(~A(x) -> ~B(x)) -> B(x) -> A(x)"},
      {Scheme::P3, "(~p:Q0 -> ~forall x. A(x)) -> forall x. A(x) -> p:Q0"},
      {Scheme::Q1, "forall x. A(x) -> A(y)"},
      {Scheme::Q1, "forall x. R(x, y) -> R(y, y)"},
      {Scheme::Q1, "forall x. (A(x) -> Q0) -> A(z) -> Q0"},
      {Scheme::Q2, "forall x. (A(x) -> B(x)) -> forall x. A(x) -> forall x. B(x)"},
      {Scheme::Q2, "forall x. (R(x, y) -> Q0) -> forall x. R(x, y) -> forall x. Q0"},
      {Scheme::Q2, "forall x. (p:[x] A(x) -> A(x)) -> forall x. p:[x] A(x) -> forall x. A(x)"},
      {Scheme::Q3, "Q0 -> forall x. Q0"},
      {Scheme::Q3, "A(y) -> forall x. A(y)"},
      {Scheme::Q3, "p:A(x) -> forall x. p:A(x)"},
      {Scheme::Q4, "A(y) -> exists x. A(x)"},
      {Scheme::Q4, "forall x. (A(x) -> Q0) -> exists x. A(x) -> Q0"},
      {Scheme::Q4, "R(y, y) -> exists x. R(x, y)"},
      {Scheme::CTR, "p:[x] Q0 -> p:Q0"},
      {Scheme::CTR, "p:[x, y] A(x) -> p:[x] A(x)"},
      {Scheme::CTR, "p:[y] R(x, x) -> p:R(x, x)"},
      {Scheme::EXP, "p:Q0 -> p:[x] Q0"},
      {Scheme::EXP, "p:[x] A(x) -> p:[x, y] A(x)"},
      {Scheme::EXP, "p:A(x) -> p:[x] A(x)"},
      {Scheme::SUM1, "p:Q0 -> (p+q):Q0"},
      {Scheme::SUM1, "p:[x] A(x) -> (p+q):[x] A(x)"},
      {Scheme::SUM1, "(p*q):forall x. A(x) -> (p*q+p):forall x. A(x)"},
      {Scheme::SUM2, "p:Q0 -> (q+p):Q0"},
      {Scheme::SUM2, "p:[x] A(x) -> (q+p):[x] A(x)"},
      {Scheme::SUM2, "!p:R0 -> (q+!p):R0"},
      {Scheme::JK, "p:(Q0 -> R0) -> q:Q0 -> (p*q):R0"},
      {Scheme::JK, "p:[x] (A(x) -> B(x)) -> q:[x] A(x) -> (p*q):[x] B(x)"},
      {Scheme::JK, "p:(forall x. A(x) -> Q0) -> q:forall x. A(x) -> (p*q):Q0"},
      {Scheme::JT, "p:Q0 -> Q0"},
      {Scheme::JT, "p:[x] A(x) -> A(x)"},
      {Scheme::JT, "p:forall x. A(x) -> forall x. A(x)"},
      {Scheme::J4, "p:Q0 -> !p:p:Q0"},
      {Scheme::J4, "p:[x] A(x) -> !p:[x] p:[x] A(x)"},
      {Scheme::J4, "(p+q):R0 -> !(p+q):(p+q):R0"},
      {Scheme::GEN, "p:A(x) -> gen<x>(p):forall x. A(x)"},
      {Scheme::GEN, "p:[y] R(x, y) -> gen<x>(p):[y] forall x. R(x, y)"},
      {Scheme::GEN, "p:Q0 -> gen<y>(p):forall y. Q0"},
  };
  return cases;
}

struct CorpusGoal {
  std::string goal;
  const char* cs;
};

/// Sentences the prover is expected to close, with their CS text.
inline std::vector<CorpusGoal> proved_corpus() {
  std::vector<CorpusGoal> out;
  out.push_back({kGoldenGoal, kGoldenCs});
  for (const auto& c : axiom_suite())
    out.push_back({print_formula(universal_closure(parse_formula(c.instance))), kTotalCs});
  const char* extra[] = {
      "p : Q0 -> Q0",
      "Q0 -> ~~Q0",
      "exists x. A(x) -> exists y. A(y)",
      "forall y. (exists x. R(x, y) -> exists z. R(z, y))",
      "~~Q0 -> Q0",
      "(Q0 -> R0) -> ~R0 -> ~Q0",
      "forall x. A(x) -> exists x. A(x)",
      "exists x. forall y. R(x, y) -> forall y. exists x. R(x, y)",
      "forall x. (A(x) -> B(x)) -> exists x. A(x) -> exists x. B(x)",
      "exists x. (A(x) -> forall y. A(y))",
      "~exists x. A(x) -> forall x. ~A(x)",
      "p:(Q0 -> R0) -> p:Q0 -> (p*p):R0",
      "p:Q0 -> (p+q+p):Q0",
      "forall x. (p:[x] A(x) -> (q+p):[x] A(x))",
      "p:Q0 -> !!p:!p:p:Q0",
      "forall x. (p:[x] A(x) -> !p:[x] p:[x] A(x) -> A(x))",
      "p:Q0 -> q:R0 -> (p+q):Q0",
  };
  for (const char* g : extra) out.push_back({g, ""});
  return out;
}

/// Non-theorems with a countermodel on a domain of at most two elements.
inline const std::vector<std::string>& non_theorems() {
  static const std::vector<std::string> goals = {
      "Q0 -> p:Q0",
      "p:A(x)",
      "forall x. (p:[x] A(x) -> p:A(x))",
      "(p+q):Q0 -> p:Q0",
      "exists x. A(x) -> forall x. A(x)",
      "p:(Q0 -> R0) -> R0",
      "forall x. forall y. (p:[x, y] R(x, y) -> p:[x] R(x, y))",
  };
  return goals;
}

}  // namespace folp::test

#endif  // FOLP_TESTS_SUPPORT_HPP
