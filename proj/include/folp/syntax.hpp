// Abstract syntax of first order logic of proofs: individual atoms,
// justification terms, windows and formulas, together with the variable
// bookkeeping the rest of the toolkit relies on (free variables, parameter
// sets, capture-avoiding substitution, universal closure and variable
// variants).
//
// Formulas and terms are immutable, reference-counted trees. Copies are
// cheap and values may be shared freely between threads.

#ifndef FOLP_SYNTAX_HPP
#define FOLP_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace folp {

// Individual variables, parameters and domain elements live in disjoint
// namespaces. In concrete syntax parameters carry '@' and elements '$'.
enum class AtomKind : std::uint8_t { Variable, Parameter, Element };

struct Atom {
  AtomKind kind = AtomKind::Variable;
  std::string name;

  static Atom variable(std::string n) { return {AtomKind::Variable, std::move(n)}; }
  static Atom parameter(std::string n) { return {AtomKind::Parameter, std::move(n)}; }
  static Atom element(std::string n) { return {AtomKind::Element, std::move(n)}; }

  bool is_variable() const noexcept { return kind == AtomKind::Variable; }
  bool is_parameter() const noexcept { return kind == AtomKind::Parameter; }
  bool is_element() const noexcept { return kind == AtomKind::Element; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
};

/// Atom with its sigil, e.g. "x", "@u", "$a".
std::string to_string(const Atom& atom);

/// The subscript X of t:_X A. Kept sorted and duplicate-free so that
/// structural equality of formulas coincides with set equality of windows.
class Window {
 public:
  Window() = default;
  Window(std::initializer_list<Atom> atoms);
  explicit Window(std::vector<Atom> atoms);

  const std::vector<Atom>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  bool contains(const Atom& atom) const;
  Window with(const Atom& atom) const;
  Window without(const Atom& atom) const;
  bool only_parameters() const;
  /// True iff every element of *this is in other.
  bool subset_of(const Window& other) const;

  friend bool operator==(const Window&, const Window&) = default;
  friend std::strong_ordering operator<=>(const Window&, const Window&) = default;

 private:
  std::vector<Atom> elements_;
};

enum class TermKind : std::uint8_t { Variable, Constant, Sum, App, Bang, Gen };

namespace detail {
struct TermNode;
struct FormulaNode;
}  // namespace detail

class Term {
 public:
  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term sum(Term left, Term right);
  static Term app(Term left, Term right);
  static Term bang(Term inner);
  /// gen_x(inner); `var` is an individual variable name.
  static Term gen(std::string var, Term inner);

  TermKind kind() const noexcept;
  /// Name of a variable or constant, or the variable bound by gen.
  const std::string& name() const noexcept;
  Term left() const;
  Term right() const;
  /// Operand of ! and gen.
  Term inner() const;

  bool is_compound() const noexcept;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
  friend class Formula;
};

enum class FormulaKind : std::uint8_t { Pred, Neg, Impl, Forall, Exists, Assert };

class Formula {
 public:
  static Formula pred(std::string symbol, std::vector<Atom> args = {});
  static Formula neg(Formula body);
  static Formula impl(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula assertion(Term term, Window window, Formula body);

  FormulaKind kind() const noexcept;
  bool is(FormulaKind k) const noexcept { return kind() == k; }
  bool is_quantifier() const noexcept { return is(FormulaKind::Forall) || is(FormulaKind::Exists); }

  /// Predicate symbol, or the bound variable of a quantifier.
  const std::string& name() const noexcept;
  const std::vector<Atom>& args() const noexcept;
  /// Operand of negation, quantifiers and assertions.
  Formula body() const;
  Formula lhs() const;
  Formula rhs() const;
  Term term() const;
  const Window& window() const noexcept;

  /// True for ~(t:_X A).
  bool is_negated_assertion() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

inline Formula negate(Formula f) { return Formula::neg(std::move(f)); }

// --- variable bookkeeping --------------------------------------------------

/// Free individual variables. For assertions FVar(t:_X A) is the set of
/// individual variables in X; occurrences of A's variables outside X are
/// local to the assertion.
std::set<std::string> free_vars(const Formula& f);

/// Parameters occurring anywhere in f, windows included.
std::set<std::string> par_set(const Formula& f);

/// Domain elements occurring anywhere in f.
std::set<std::string> element_set(const Formula& f);

/// Every individual variable name in f, binders included.
std::set<std::string> variable_names(const Formula& f);

/// Replaces the free occurrences of x in f by a. Throws CaptureError when
/// a is a variable that would end up bound (by a quantifier, or as a local
/// variable of an assertion whose window does not contain it).
Formula substitute(const Formula& f, const std::string& x, const Atom& a);

/// Replaces every occurrence of the parameter in f (windows of nested
/// assertions included) by the variable. Throws CaptureError if some new
/// occurrence of var would not be free in the result.
Formula replace_parameter(const Formula& f, const Atom& param, const std::string& var);

/// forall x1 ... forall xn. f over free_vars(f), x1 lexicographically
/// smallest and outermost.
Formula universal_closure(const Formula& f);

bool is_closed_par_formula(const Formula& f);

/// Closed, parameter-free, element-free.
bool is_sentence(const Formula& f);

/// Quantifier-bound variables renamed to depth-indexed names; other names
/// kept. Two formulas are alpha-equivalent iff their alpha_canonical forms
/// are equal.
Formula alpha_canonical(const Formula& f);
bool alpha_equivalent(const Formula& a, const Formula& b);

/// alpha_canonical plus a canonical renaming of the remaining variables by
/// first occurrence.
Formula variant_canonical(const Formula& f);
bool variable_variant(const Formula& a, const Formula& b);

/// Predicate symbol -> arity. Throws FormatError when one symbol is used
/// with two arities.
std::map<std::string, std::size_t> predicate_arities(const Formula& f);

/// All justification terms occurring in f, closed under subterms.
std::set<Term> terms_of(const Formula& f);
void collect_subterms(const Term& t, std::set<Term>& out);

/// Distinct subformulas in preorder, f first.
std::vector<Formula> subformulas(const Formula& f);

/// Number of nodes, used for budgets and generators.
std::size_t formula_size(const Formula& f);

}  // namespace folp

#endif  // FOLP_SYNTAX_HPP
