#include "folp/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "folp/error.hpp"

namespace folp {

namespace detail {

struct TermNode {
  TermKind kind;
  std::string name;
  std::shared_ptr<const TermNode> left;
  std::shared_ptr<const TermNode> right;
};

struct FormulaNode {
  FormulaKind kind;
  std::string name;
  std::vector<Atom> args;
  std::shared_ptr<const TermNode> term;
  Window window;
  std::shared_ptr<const FormulaNode> left;
  std::shared_ptr<const FormulaNode> right;
};

}  // namespace detail

std::string to_string(const Atom& atom) {
  switch (atom.kind) {
    case AtomKind::Variable: return atom.name;
    case AtomKind::Parameter: return "@" + atom.name;
    case AtomKind::Element: return "$" + atom.name;
  }
  return atom.name;
}

// --- Window ----------------------------------------------------------------

Window::Window(std::initializer_list<Atom> atoms) : Window(std::vector<Atom>(atoms)) {}

Window::Window(std::vector<Atom> atoms) : elements_(std::move(atoms)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Window::contains(const Atom& atom) const {
  return std::binary_search(elements_.begin(), elements_.end(), atom);
}

Window Window::with(const Atom& atom) const {
  auto atoms = elements_;
  atoms.push_back(atom);
  return Window(std::move(atoms));
}

Window Window::without(const Atom& atom) const {
  Window w;
  for (const auto& a : elements_)
    if (a != atom) w.elements_.push_back(a);
  return w;
}

bool Window::only_parameters() const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [](const Atom& a) { return a.is_parameter(); });
}

bool Window::subset_of(const Window& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

// --- Term ------------------------------------------------------------------

namespace {

using TermPtr = std::shared_ptr<const detail::TermNode>;
using FormulaPtr = std::shared_ptr<const detail::FormulaNode>;

std::strong_ordering compare_terms(const TermPtr& a, const TermPtr& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->kind <=> b->kind; c != 0) return c;
  if (auto c = a->name <=> b->name; c != 0) return c;
  if (a->left || b->left) {
    if (auto c = compare_terms(a->left, b->left); c != 0) return c;
  }
  if (a->right || b->right) {
    if (auto c = compare_terms(a->right, b->right); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_formulas(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->kind <=> b->kind; c != 0) return c;
  if (auto c = a->name <=> b->name; c != 0) return c;
  if (auto c = a->args <=> b->args; c != 0) return c;
  if (auto c = a->window <=> b->window; c != 0) return c;
  if (a->term || b->term) {
    if (auto c = compare_terms(a->term, b->term); c != 0) return c;
  }
  if (a->left || b->left) {
    if (auto c = compare_formulas(a->left, b->left); c != 0) return c;
  }
  if (a->right || b->right) {
    if (auto c = compare_formulas(a->right, b->right); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

Term Term::variable(std::string name) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::Variable, std::move(name), nullptr, nullptr}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::Constant, std::move(name), nullptr, nullptr}));
}

Term Term::sum(Term left, Term right) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::Sum, {}, std::move(left.node_), std::move(right.node_)}));
}

Term Term::app(Term left, Term right) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::App, {}, std::move(left.node_), std::move(right.node_)}));
}

Term Term::bang(Term inner) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::Bang, {}, std::move(inner.node_), nullptr}));
}

Term Term::gen(std::string var, Term inner) {
  return Term(std::make_shared<detail::TermNode>(
      detail::TermNode{TermKind::Gen, std::move(var), std::move(inner.node_), nullptr}));
}

TermKind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
Term Term::left() const { return Term(node_->left); }
Term Term::right() const { return Term(node_->right); }
Term Term::inner() const { return Term(node_->left); }

bool Term::is_compound() const noexcept {
  return node_->kind != TermKind::Variable && node_->kind != TermKind::Constant;
}

bool operator==(const Term& a, const Term& b) { return compare_terms(a.node_, b.node_) == 0; }
std::strong_ordering operator<=>(const Term& a, const Term& b) {
  return compare_terms(a.node_, b.node_);
}

// --- Formula ---------------------------------------------------------------

Formula Formula::pred(std::string symbol, std::vector<Atom> args) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Pred;
  n->name = std::move(symbol);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Neg;
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Impl;
  n->left = std::move(lhs.node_);
  n->right = std::move(rhs.node_);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Forall;
  n->name = std::move(var);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Exists;
  n->name = std::move(var);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::assertion(Term term, Window window, Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Assert;
  n->term = std::move(term.node_);
  n->window = std::move(window);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }
const std::vector<Atom>& Formula::args() const noexcept { return node_->args; }
Formula Formula::body() const { return Formula(node_->left); }
Formula Formula::lhs() const { return Formula(node_->left); }
Formula Formula::rhs() const { return Formula(node_->right); }
Term Formula::term() const { return Term(node_->term); }
const Window& Formula::window() const noexcept { return node_->window; }

bool Formula::is_negated_assertion() const noexcept {
  return node_->kind == FormulaKind::Neg && node_->left->kind == FormulaKind::Assert;
}

bool operator==(const Formula& a, const Formula& b) {
  return compare_formulas(a.node_, b.node_) == 0;
}
std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  return compare_formulas(a.node_, b.node_);
}

// --- variable bookkeeping --------------------------------------------------

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      for (const auto& a : f.args())
        if (a.is_variable() && !bound.contains(a.name)) out.insert(a.name);
      return;
    case FormulaKind::Neg: collect_free(f.body(), bound, out); return;
    case FormulaKind::Impl:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool fresh = bound.insert(f.name()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    case FormulaKind::Assert:
      for (const auto& a : f.window())
        if (a.is_variable() && !bound.contains(a.name)) out.insert(a.name);
      return;
  }
}

void collect_atoms(const Formula& f, AtomKind kind, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      for (const auto& a : f.args())
        if (a.kind == kind) out.insert(a.name);
      return;
    case FormulaKind::Neg:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (kind == AtomKind::Variable && f.kind() != FormulaKind::Neg) out.insert(f.name());
      collect_atoms(f.body(), kind, out);
      return;
    case FormulaKind::Impl:
      collect_atoms(f.lhs(), kind, out);
      collect_atoms(f.rhs(), kind, out);
      return;
    case FormulaKind::Assert:
      for (const auto& a : f.window())
        if (a.kind == kind) out.insert(a.name);
      collect_atoms(f.body(), kind, out);
      return;
  }
}

bool window_has_variable(const Window& w, const std::string& x) {
  return w.contains(Atom::variable(x));
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> par_set(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, AtomKind::Parameter, out);
  return out;
}

std::set<std::string> element_set(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, AtomKind::Element, out);
  return out;
}

std::set<std::string> variable_names(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, AtomKind::Variable, out);
  return out;
}

namespace {

Formula subst_rec(const Formula& f, const std::string& x, const Atom& a) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      auto args = f.args();
      bool changed = false;
      for (auto& arg : args) {
        if (arg.is_variable() && arg.name == x) {
          arg = a;
          changed = true;
        }
      }
      return changed ? Formula::pred(f.name(), std::move(args)) : f;
    }
    case FormulaKind::Neg: return Formula::neg(subst_rec(f.body(), x, a));
    case FormulaKind::Impl:
      return Formula::impl(subst_rec(f.lhs(), x, a), subst_rec(f.rhs(), x, a));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f.name() == x) return f;
      if (!free_vars(f.body()).contains(x)) return f;
      if (a.is_variable() && a.name == f.name())
        throw CaptureError("substituting " + a.name + " for " + x + " is captured by the " +
                           "quantifier on " + f.name());
      auto body = subst_rec(f.body(), x, a);
      return f.is(FormulaKind::Forall) ? Formula::forall(f.name(), std::move(body))
                                       : Formula::exists(f.name(), std::move(body));
    }
    case FormulaKind::Assert: {
      if (!window_has_variable(f.window(), x)) return f;
      if (a.is_variable() && !f.window().contains(a) && free_vars(f.body()).contains(a.name))
        throw CaptureError("substituting " + a.name + " for " + x +
                           " clashes with a local variable of an assertion");
      auto window = f.window().without(Atom::variable(x)).with(a);
      return Formula::assertion(f.term(), std::move(window), subst_rec(f.body(), x, a));
    }
  }
  return f;
}

Formula replace_rec(const Formula& f, const Atom& u, const std::string& x, bool blocked) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      auto args = f.args();
      bool changed = false;
      for (auto& arg : args) {
        if (arg == u) {
          if (blocked)
            throw CaptureError("variable " + x + " would be bound at an occurrence of " +
                               to_string(u));
          arg = Atom::variable(x);
          changed = true;
        }
      }
      return changed ? Formula::pred(f.name(), std::move(args)) : f;
    }
    case FormulaKind::Neg: return Formula::neg(replace_rec(f.body(), u, x, blocked));
    case FormulaKind::Impl:
      return Formula::impl(replace_rec(f.lhs(), u, x, blocked),
                           replace_rec(f.rhs(), u, x, blocked));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      auto body = replace_rec(f.body(), u, x, blocked || f.name() == x);
      return f.is(FormulaKind::Forall) ? Formula::forall(f.name(), std::move(body))
                                       : Formula::exists(f.name(), std::move(body));
    }
    case FormulaKind::Assert: {
      const bool in_window = f.window().contains(u);
      if (in_window && blocked)
        throw CaptureError("variable " + x + " would be bound at an occurrence of " +
                           to_string(u));
      Window window = in_window ? f.window().without(u).with(Atom::variable(x)) : f.window();
      const bool body_free = window.contains(Atom::variable(x));
      return Formula::assertion(f.term(), std::move(window),
                                replace_rec(f.body(), u, x, blocked || !body_free));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const std::string& x, const Atom& a) {
  if (a.is_variable() && a.name == x) return f;
  return subst_rec(f, x, a);
}

Formula replace_parameter(const Formula& f, const Atom& param, const std::string& var) {
  return replace_rec(f, param, var, false);
}

Formula universal_closure(const Formula& f) {
  const auto vars = free_vars(f);
  Formula result = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) result = Formula::forall(*it, result);
  return result;
}

bool is_closed_par_formula(const Formula& f) { return free_vars(f).empty(); }

bool is_sentence(const Formula& f) {
  return free_vars(f).empty() && par_set(f).empty() && element_set(f).empty();
}

// --- canonical forms ---------------------------------------------------------
//
// Quantifier-bound variables are renamed after their binder depth; an
// assertion only lets the bindings of its window variables through to its
// body. For variants, the remaining variables are renamed by first
// occurrence in argument position, and variables that only ever occur in
// windows are ordered by the list of windows they belong to (such variables
// are interchangeable exactly when those lists agree).

namespace {

using Env = std::map<std::string, std::string>;

Env restrict_to_window(const Env& env, const Window& w) {
  Env out;
  for (const auto& [k, v] : env)
    if (window_has_variable(w, k)) out.emplace(k, v);
  return out;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(bool rename_free) : rename_free_(rename_free) {}

  Formula run(const Formula& f) {
    if (rename_free_) {
      name_ordered(f, {});
      std::size_t window_index = 0;
      std::map<std::string, std::vector<std::size_t>> signatures;
      collect_window_only(f, {}, window_index, signatures);
      std::vector<std::pair<std::vector<std::size_t>, std::string>> pending;
      for (auto& [name, sig] : signatures) pending.emplace_back(std::move(sig), name);
      std::stable_sort(pending.begin(), pending.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [sig, name] : pending) assign(name);
    }
    return rewrite(f, {}, 0);
  }

 private:
  void assign(const std::string& name) {
    if (!free_names_.contains(name))
      free_names_.emplace(name, "%f" + std::to_string(free_names_.size()));
  }

  void name_ordered(const Formula& f, const Env& env) {
    switch (f.kind()) {
      case FormulaKind::Pred:
        for (const auto& a : f.args())
          if (a.is_variable() && !env.contains(a.name)) assign(a.name);
        return;
      case FormulaKind::Neg: name_ordered(f.body(), env); return;
      case FormulaKind::Impl:
        name_ordered(f.lhs(), env);
        name_ordered(f.rhs(), env);
        return;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        Env inner = env;
        inner[f.name()] = "";
        name_ordered(f.body(), inner);
        return;
      }
      case FormulaKind::Assert:
        name_gen_vars(f.term());
        name_ordered(f.body(), restrict_to_window(env, f.window()));
        return;
    }
  }

  void name_gen_vars(const Term& t) {
    switch (t.kind()) {
      case TermKind::Variable:
      case TermKind::Constant: return;
      case TermKind::Sum:
      case TermKind::App:
        name_gen_vars(t.left());
        name_gen_vars(t.right());
        return;
      case TermKind::Bang: name_gen_vars(t.inner()); return;
      case TermKind::Gen:
        assign(t.name());
        name_gen_vars(t.inner());
        return;
    }
  }

  Term rename_gen_vars(const Term& t) const {
    if (!rename_free_) return t;
    switch (t.kind()) {
      case TermKind::Variable:
      case TermKind::Constant: return t;
      case TermKind::Sum: return Term::sum(rename_gen_vars(t.left()), rename_gen_vars(t.right()));
      case TermKind::App: return Term::app(rename_gen_vars(t.left()), rename_gen_vars(t.right()));
      case TermKind::Bang: return Term::bang(rename_gen_vars(t.inner()));
      case TermKind::Gen: return Term::gen(free_names_.at(t.name()), rename_gen_vars(t.inner()));
    }
    return t;
  }

  void collect_window_only(const Formula& f, const Env& env, std::size_t& index,
                           std::map<std::string, std::vector<std::size_t>>& sigs) {
    switch (f.kind()) {
      case FormulaKind::Pred: return;
      case FormulaKind::Neg: collect_window_only(f.body(), env, index, sigs); return;
      case FormulaKind::Impl:
        collect_window_only(f.lhs(), env, index, sigs);
        collect_window_only(f.rhs(), env, index, sigs);
        return;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        Env inner = env;
        inner[f.name()] = "";
        collect_window_only(f.body(), inner, index, sigs);
        return;
      }
      case FormulaKind::Assert: {
        const std::size_t here = index++;
        for (const auto& a : f.window())
          if (a.is_variable() && !env.contains(a.name) && !free_names_.contains(a.name))
            sigs[a.name].push_back(here);
        collect_window_only(f.body(), restrict_to_window(env, f.window()), index, sigs);
        return;
      }
    }
  }

  Atom rename(const Atom& a, const Env& env) const {
    if (!a.is_variable()) return a;
    if (auto it = env.find(a.name); it != env.end()) return Atom::variable(it->second);
    if (rename_free_) {
      if (auto it = free_names_.find(a.name); it != free_names_.end())
        return Atom::variable(it->second);
    }
    return a;
  }

  Formula rewrite(const Formula& f, const Env& env, std::size_t depth) const {
    switch (f.kind()) {
      case FormulaKind::Pred: {
        std::vector<Atom> args;
        args.reserve(f.args().size());
        for (const auto& a : f.args()) args.push_back(rename(a, env));
        return Formula::pred(f.name(), std::move(args));
      }
      case FormulaKind::Neg: return Formula::neg(rewrite(f.body(), env, depth));
      case FormulaKind::Impl:
        return Formula::impl(rewrite(f.lhs(), env, depth), rewrite(f.rhs(), env, depth));
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const std::string name = "%b" + std::to_string(depth);
        Env inner = env;
        inner[f.name()] = name;
        auto body = rewrite(f.body(), inner, depth + 1);
        return f.is(FormulaKind::Forall) ? Formula::forall(name, std::move(body))
                                         : Formula::exists(name, std::move(body));
      }
      case FormulaKind::Assert: {
        std::vector<Atom> window;
        for (const auto& a : f.window()) window.push_back(rename(a, env));
        return Formula::assertion(rename_gen_vars(f.term()), Window(std::move(window)),
                                  rewrite(f.body(), restrict_to_window(env, f.window()), depth));
      }
    }
    return f;
  }

  bool rename_free_;
  std::map<std::string, std::string> free_names_;
};

}  // namespace

Formula alpha_canonical(const Formula& f) { return Canonicalizer(false).run(f); }

bool alpha_equivalent(const Formula& a, const Formula& b) {
  return a == b || alpha_canonical(a) == alpha_canonical(b);
}

Formula variant_canonical(const Formula& f) { return Canonicalizer(true).run(f); }

bool variable_variant(const Formula& a, const Formula& b) {
  return a == b || variant_canonical(a) == variant_canonical(b);
}

// --- misc queries -----------------------------------------------------------

namespace {

void collect_arities(const Formula& f, std::map<std::string, std::size_t>& out) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      auto [it, inserted] = out.emplace(f.name(), f.args().size());
      if (!inserted && it->second != f.args().size())
        throw FormatError("predicate " + f.name() + " used with arities " +
                          std::to_string(it->second) + " and " +
                          std::to_string(f.args().size()));
      return;
    }
    case FormulaKind::Impl:
      collect_arities(f.lhs(), out);
      collect_arities(f.rhs(), out);
      return;
    default: collect_arities(f.body(), out); return;
  }
}

void collect_terms(const Formula& f, std::set<Term>& out) {
  switch (f.kind()) {
    case FormulaKind::Pred: return;
    case FormulaKind::Impl:
      collect_terms(f.lhs(), out);
      collect_terms(f.rhs(), out);
      return;
    case FormulaKind::Assert:
      collect_subterms(f.term(), out);
      collect_terms(f.body(), out);
      return;
    default: collect_terms(f.body(), out); return;
  }
}

void collect_subformulas(const Formula& f, std::set<Formula>& seen, std::vector<Formula>& out) {
  if (!seen.insert(f).second) return;
  out.push_back(f);
  switch (f.kind()) {
    case FormulaKind::Pred: return;
    case FormulaKind::Impl:
      collect_subformulas(f.lhs(), seen, out);
      collect_subformulas(f.rhs(), seen, out);
      return;
    default: collect_subformulas(f.body(), seen, out); return;
  }
}

}  // namespace

std::map<std::string, std::size_t> predicate_arities(const Formula& f) {
  std::map<std::string, std::size_t> out;
  collect_arities(f, out);
  return out;
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  switch (t.kind()) {
    case TermKind::Sum:
    case TermKind::App:
      collect_subterms(t.left(), out);
      collect_subterms(t.right(), out);
      return;
    case TermKind::Bang:
    case TermKind::Gen: collect_subterms(t.inner(), out); return;
    default: return;
  }
}

std::set<Term> terms_of(const Formula& f) {
  std::set<Term> out;
  collect_terms(f, out);
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::set<Formula> seen;
  std::vector<Formula> out;
  collect_subformulas(f, seen, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Pred: return 1;
    case FormulaKind::Impl: return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    default: return 1 + formula_size(f.body());
  }
}

}  // namespace folp
