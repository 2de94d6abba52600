#include "folp/model.hpp"

#include <algorithm>

#include "folp/error.hpp"
#include "folp/text_format.hpp"

namespace folp {

void MkrtychevModel::add_evidence(const Term& t, const Formula& f) {
  evidence_[t].emplace(alpha_canonical(f), f);
}

void MkrtychevModel::touch(const Term& t) { evidence_[t]; }

bool MkrtychevModel::in_evidence(const Term& t, const Formula& f) const {
  auto it = evidence_.find(t);
  return it != evidence_.end() && it->second.contains(alpha_canonical(f));
}

std::vector<Formula> MkrtychevModel::evidence_of(const Term& t) const {
  std::vector<Formula> out;
  auto it = evidence_.find(t);
  if (it != evidence_.end())
    for (const auto& [key, f] : it->second) out.push_back(f);
  return out;
}

std::set<Term> MkrtychevModel::evidence_terms() const {
  std::set<Term> out;
  for (const auto& [t, fs] : evidence_) out.insert(t);
  return out;
}

std::size_t MkrtychevModel::evidence_size() const {
  std::size_t n = 0;
  for (const auto& [t, fs] : evidence_) n += fs.size();
  return n;
}

bool MkrtychevModel::holds(const std::string& predicate,
                           const std::vector<std::string>& tuple) const {
  auto it = interp.find(predicate);
  return it != interp.end() && it->second.tuples.contains(tuple);
}

namespace {

bool eval(const MkrtychevModel& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::vector<std::string> tuple;
      for (const auto& a : f.args()) tuple.push_back(a.name);
      return m.holds(f.name(), tuple);
    }
    case FormulaKind::Neg: return !eval(m, f.body());
    case FormulaKind::Impl: return !eval(m, f.lhs()) || eval(m, f.rhs());
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool universal = f.is(FormulaKind::Forall);
      for (const auto& a : m.domain) {
        const bool v = eval(m, substitute(f.body(), f.name(), Atom::element(a)));
        if (v != universal) return !universal;
      }
      return universal;
    }
    case FormulaKind::Assert:
      return m.in_evidence(f.term(), f.body()) && eval(m, universal_closure(f.body()));
  }
  return false;
}

std::set<Term> subterm_closure(const std::set<Term>& terms) {
  std::set<Term> out;
  for (const auto& t : terms) collect_subterms(t, out);
  return out;
}

// Every window X of domain elements with D(A) <= X <= D.
std::vector<Window> windows_between(const Formula& a, const std::vector<std::string>& domain) {
  const auto required = element_set(a);
  std::vector<std::string> optional;
  for (const auto& d : domain)
    if (!required.contains(d)) optional.push_back(d);
  std::vector<Window> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << optional.size()); ++mask) {
    std::vector<Atom> atoms;
    for (const auto& r : required) atoms.push_back(Atom::element(r));
    for (std::size_t i = 0; i < optional.size(); ++i)
      if (mask & (std::size_t{1} << i)) atoms.push_back(Atom::element(optional[i]));
    out.emplace_back(std::move(atoms));
  }
  return out;
}

// Calls need(condition, term, formula) for every formula the conditions
// require in the evidence of a universe term, given the current evidence.
template <typename Need>
void required_evidence(const MkrtychevModel& m, const std::set<Term>& universe,
                       const ConstantSpecification& cs, Need&& need) {
  for (const auto& [c, a] : cs.concrete()) {
    const Term ct = Term::constant(c);
    if (universe.contains(ct)) need("E1", ct, a);
  }
  for (const auto& t : universe) {
    switch (t.kind()) {
      case TermKind::App:
        for (const auto& f : m.evidence_of(t.left()))
          if (f.is(FormulaKind::Impl) && m.in_evidence(t.right(), f.lhs())) need("E2", t, f.rhs());
        break;
      case TermKind::Sum:
        for (const auto& f : m.evidence_of(t.left())) need("E3", t, f);
        for (const auto& f : m.evidence_of(t.right())) need("E3", t, f);
        break;
      case TermKind::Bang:
        for (const auto& f : m.evidence_of(t.inner()))
          for (const auto& x : windows_between(f, m.domain))
            need("E4", t, Formula::assertion(t.inner(), x, f));
        break;
      case TermKind::Gen:
        for (const auto& f : m.evidence_of(t.inner())) need("E5", t, Formula::forall(t.name(), f));
        break;
      default:
        break;
    }
    for (const auto& f : m.evidence_of(t))
      for (const auto& x : free_vars(f))
        for (const auto& a : m.domain) need("E6", t, substitute(f, x, Atom::element(a)));
  }
}

}  // namespace

bool satisfies(const MkrtychevModel& m, const Formula& f) {
  if (!free_vars(f).empty()) throw ModelError("formula has free variables: " + print_formula(f));
  if (!par_set(f).empty()) throw ModelError("formula mentions parameters: " + print_formula(f));
  for (const auto& e : element_set(f))
    if (std::find(m.domain.begin(), m.domain.end(), e) == m.domain.end())
      throw ModelError("element $" + e + " is not in the domain");
  return eval(m, f);
}

std::vector<Violation> validate_model(const MkrtychevModel& m, const ConstantSpecification& cs,
                                      std::span<const Formula> queries) {
  std::vector<Violation> out;
  if (m.domain.empty()) out.push_back({"domain", {}, {}, "domain is empty"});
  for (const auto& [q, rel] : m.interp)
    for (const auto& row : rel.tuples)
      if (rel.arity && row.size() != *rel.arity)
        out.push_back({"arity", {}, {}, "tuple of wrong arity for " + q});
  std::set<Term> terms = m.evidence_terms();
  for (const auto& q : queries)
    for (const auto& t : terms_of(q)) terms.insert(t);
  const std::set<Term> universe = subterm_closure(terms);
  std::set<std::pair<Term, Formula>> reported;
  required_evidence(m, universe, cs, [&](const char* cond, const Term& t, const Formula& f) {
    if (m.in_evidence(t, f) || !reported.emplace(t, alpha_canonical(f)).second) return;
    out.push_back({cond, t, f,
                   std::string(cond) + ": " + print_formula(f) + " missing from E(" +
                       print_term(t) + ")"});
  });
  return out;
}

bool close_evidence(MkrtychevModel& m, const std::set<Term>& universe,
                    const ConstantSpecification& cs, std::size_t max_rounds) {
  const std::set<Term> all = subterm_closure(universe);
  for (const auto& t : all) m.touch(t);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    std::vector<std::pair<Term, Formula>> missing;
    required_evidence(m, all, cs, [&](const char*, const Term& t, const Formula& f) {
      if (!m.in_evidence(t, f)) missing.emplace_back(t, f);
    });
    if (missing.empty()) return true;
    for (const auto& [t, f] : missing) m.add_evidence(t, f);
  }
  return false;
}

namespace {

// Lexicographically next k-subset of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct Fact {
  std::string predicate;
  std::vector<std::string> tuple;
};

std::vector<Fact> all_facts(const std::map<std::string, std::size_t>& arities,
                            const std::vector<std::string>& domain) {
  std::vector<Fact> out;
  for (const auto& [q, n] : arities) {
    std::vector<std::size_t> digits(n, 0);
    while (true) {
      Fact fact{q, {}};
      for (auto d : digits) fact.tuple.push_back(domain[d]);
      out.push_back(std::move(fact));
      std::size_t i = 0;
      while (i < n && ++digits[i] == domain.size()) digits[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

constexpr std::size_t kMaxEvidenceBits = 14;
constexpr std::size_t kMaxFactBits = 16;

}  // namespace

CountermodelResult find_countermodel(const Formula& goal, const ConstantSpecification& cs,
                                     std::size_t max_domain, std::size_t pool_depth,
                                     const CountermodelLimits& limits) {
  if (!is_sentence(goal)) throw ModelError("goal must be a sentence: " + print_formula(goal));
  const auto deadline = std::chrono::steady_clock::now() + limits.time_limit;
  CountermodelResult result;

  std::map<std::string, std::size_t> arities = predicate_arities(goal);
  for (const auto& [c, a] : cs.concrete())
    for (const auto& [q, n] : predicate_arities(a)) arities.emplace(q, n);

  const std::set<Term> universe = terms_of(goal);
  std::vector<Formula> pool;
  std::vector<std::pair<Term, Formula>> own;
  for (const auto& sub : subformulas(goal)) {
    if (!sub.is(FormulaKind::Assert)) continue;
    if (std::find(pool.begin(), pool.end(), sub.body()) == pool.end()) pool.push_back(sub.body());
    own.emplace_back(sub.term(), sub.body());
  }
  // Evidence candidates: every pool formula for every goal term, or only
  // the bodies each term is asserted of when that is too many.
  std::vector<std::pair<Term, Formula>> bits;
  for (const auto& t : universe)
    for (const auto& f : pool) bits.emplace_back(t, f);
  if (bits.size() > kMaxEvidenceBits) bits = own;
  if (bits.size() > kMaxEvidenceBits) bits.erase(bits.begin() + kMaxEvidenceBits, bits.end());

  bool truncated = false;
  for (std::size_t n = 1; n <= max_domain; ++n) {
    std::vector<std::string> domain;
    for (std::size_t i = 0; i < n; ++i) domain.push_back(std::string(1, static_cast<char>('a' + i)));
    const auto facts = all_facts(arities, domain);
    if (facts.size() > kMaxFactBits) {
      truncated = true;
      break;
    }
    for (std::size_t weight = 0; weight <= bits.size(); ++weight) {
      std::vector<std::size_t> chosen(weight);
      for (std::size_t i = 0; i < weight; ++i) chosen[i] = i;
      do {
        for (std::size_t mask = 0; mask < (std::size_t{1} << facts.size()); ++mask) {
          if (++result.candidates > limits.max_candidates ||
              std::chrono::steady_clock::now() > deadline) {
            result.status = CountermodelResult::Status::Exhausted;
            return result;
          }
          MkrtychevModel m;
          m.domain = domain;
          for (const auto& [q, k] : arities) m.interp[q].arity = k;
          for (std::size_t i = 0; i < facts.size(); ++i)
            if (mask & (std::size_t{1} << i)) m.interp[facts[i].predicate].tuples.insert(facts[i].tuple);
          for (auto i : chosen) m.add_evidence(bits[i].first, bits[i].second);
          if (!close_evidence(m, universe, cs, pool_depth + 1)) continue;
          const Formula queries[] = {goal};
          if (!validate_model(m, cs, queries).empty()) continue;
          if (!satisfies(m, goal)) {
            result.status = CountermodelResult::Status::Found;
            result.model = std::move(m);
            return result;
          }
        }
      } while (weight > 0 && next_combination(chosen, bits.size()));
    }
  }
  result.status = truncated ? CountermodelResult::Status::Exhausted : CountermodelResult::Status::None;
  return result;
}

}  // namespace folp
