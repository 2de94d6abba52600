#include "folp/search.hpp"

#include <algorithm>

#include "folp/error.hpp"
#include "folp/text_format.hpp"

namespace folp {

namespace {

constexpr std::array<RuleName, 8> kDeterministicRules = {
    RuleName::FNeg, RuleName::FImp,   RuleName::FPlus, RuleName::FBang,
    RuleName::GenX, RuleName::Exp,    RuleName::TColon, RuleName::Ins};

bool negated_assertion_with(const Formula& f, TermKind k) {
  return f.is_negated_assertion() && f.body().term().kind() == k;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

SearchState::SearchState(std::vector<Formula> roots, const ConstantSpecification& cs,
                         SearchBudget budget, std::vector<Formula> hints)
    : cs_(&cs),
      budget_(budget),
      hints_(std::move(hints)),
      roots_(std::move(roots)),
      started_(std::chrono::steady_clock::now()) {
  OpenBranch b;
  bool closed = false;
  for (const auto& r : roots_) {
    if (!is_closed_par_formula(r)) throw Error("root is not a closed Par-formula: " + print_formula(r));
    closed = extend(b, r, std::nullopt);
    if (closed) break;
  }
  if (!closed) open_.push_back(std::move(b));
}

std::vector<Formula> SearchState::current_branch() const {
  std::vector<Formula> out;
  if (!open_.empty())
    for (const auto& e : open_.back().entries) out.push_back(e.formula);
  return out;
}

bool SearchState::extend(OpenBranch& b, const Formula& f, const std::optional<RuleInstance>& r) {
  const NodeId id = static_cast<NodeId>(nodes_.size()) + 1;
  nodes_.push_back(Node{id, f, r, {}, {}});
  if (b.leaf > 0) nodes_[static_cast<std::size_t>(b.leaf - 1)].children.push_back(id);
  b.leaf = id;
  b.entries.push_back({id, f});
  b.index.emplace(f, id);
  for (const auto& p : par_set(f)) push_unique(b.params, p);
  auto mark = closes_with(b.entries, b.entries.size() - 1, *cs_);
  if (mark) {
    mark->at = -1;
    nodes_.back().closure = mark;
    return true;
  }
  return false;
}

bool SearchState::redundant(const OpenBranch& b,
                            const std::vector<std::vector<Formula>>& alts) const {
  auto present = [&](const std::vector<Formula>& fs) {
    return std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return b.index.contains(f); });
  };
  if (alts.size() == 1) return present(alts.front());
  return std::any_of(alts.begin(), alts.end(), present);
}

std::optional<SearchState::Candidate> SearchState::try_rule(const OpenBranch& b,
                                                            RuleInstance r) const {
  try {
    auto alts = apply_rule(b.entries, r);
    if (redundant(b, alts)) return std::nullopt;
    return Candidate{std::move(r), std::move(alts)};
  } catch (const RuleViolation&) {
  } catch (const CaptureError&) {
  }
  return std::nullopt;
}

Atom SearchState::fresh_parameter(const OpenBranch& b) const {
  for (std::size_t k = next_param_;; ++k) {
    std::string name = "u" + std::to_string(k);
    if (std::find(b.params.begin(), b.params.end(), name) == b.params.end())
      return Atom::parameter(std::move(name));
  }
}

std::vector<std::string> SearchState::ins_variables(const OpenBranch& b, const Formula& body) const {
  std::vector<std::string> out;
  for (const auto& [c, f] : cs_->concrete())
    for (const auto& v : variable_names(f)) push_unique(out, v);
  for (const auto& v : variable_names(body)) push_unique(out, v);
  for (const auto& e : b.entries)
    for (const auto& v : variable_names(e.formula)) push_unique(out, v);
  const auto names = variable_names(body);
  for (std::size_t k = 0;; ++k) {
    std::string v = "v" + std::to_string(k);
    if (!names.contains(v)) {
      push_unique(out, v);
      break;
    }
  }
  const auto free = free_vars(body);
  std::erase_if(out, [&](const std::string& v) { return free.contains(v); });
  return out;
}

std::vector<Formula> SearchState::cut_candidates(const OpenBranch& b, const Formula& premise) const {
  const Formula a = premise.body();
  const Formula goal = a.body();
  std::vector<Formula> out;
  auto add = [&](const Formula& c) {
    if (out.size() >= budget_.max_cut_candidates) return;
    for (const auto& u : par_set(c))
      if (!a.window().contains(Atom::parameter(u))) return;
    push_unique(out, c);
  };
  for (const auto& h : hints_) add(h);
  for (const auto& e : b.entries)
    for (const auto& sub : subformulas(e.formula))
      if (sub.is(FormulaKind::Impl) && sub.rhs() == goal) add(sub.lhs());
  for (const auto& [c, f] : cs_->concrete())
    if (f.is(FormulaKind::Impl)) add(f.lhs());
  for (const auto& e : b.entries)
    for (const auto& sub : subformulas(e.formula)) add(sub);
  return out;
}

std::optional<SearchState::Candidate> SearchState::select(OpenBranch& b) {
  const auto& entries = b.entries;

  for (auto rule : kDeterministicRules) {
    for (const auto& e : entries) {
      const Formula& f = e.formula;
      std::vector<RuleInstance> instances;
      switch (rule) {
        case RuleName::FNeg:
          if (f.is(FormulaKind::Neg) && f.body().is(FormulaKind::Neg)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::FImp:
          if (f.is(FormulaKind::Neg) && f.body().is(FormulaKind::Impl)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::FPlus:
          if (negated_assertion_with(f, TermKind::Sum)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::FBang:
          if (negated_assertion_with(f, TermKind::Bang)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::GenX:
          if (negated_assertion_with(f, TermKind::Gen)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::Exp:
          if (f.is_negated_assertion())
            for (const auto& u : f.body().window()) instances.push_back({rule, {e.id}, u});
          break;
        case RuleName::TColon:
          if (f.is(FormulaKind::Assert)) instances.push_back({rule, {e.id}});
          break;
        case RuleName::Ins:
          if (f.is_negated_assertion()) {
            const Formula body = f.body().body();
            const auto params = par_set(body);
            if (params.empty()) break;
            const auto vars = ins_variables(b, body);
            for (const auto& u : params)
              for (const auto& v : vars) instances.push_back({rule, {e.id}, Atom::parameter(u), std::nullopt, v});
          }
          break;
        default:
          break;
      }
      for (auto& r : instances)
        if (auto c = try_rule(b, std::move(r))) return c;
    }
  }

  // TExists / FForall: once per premise, with a new parameter.
  for (const auto& e : entries) {
    const Formula& f = e.formula;
    const bool texists = f.is(FormulaKind::Exists);
    const bool fforall = f.is(FormulaKind::Neg) && f.body().is(FormulaKind::Forall);
    if ((!texists && !fforall) || b.delta_done.contains(e.id)) continue;
    if (b.params.size() >= budget_.max_params) {
      b.budget_hit = true;
      continue;
    }
    if (auto c = try_rule(b, {texists ? RuleName::TExists : RuleName::FForall, {e.id}, fresh_parameter(b)}))
      return c;
  }

  for (const auto& e : entries)
    if (e.formula.is(FormulaKind::Impl))
      if (auto c = try_rule(b, {RuleName::TImp, {e.id}})) return c;

  // TForall / FExists over the parameters of the branch, or a new one.
  for (const auto& e : entries) {
    const Formula& f = e.formula;
    const bool tforall = f.is(FormulaKind::Forall);
    const bool fexists = f.is(FormulaKind::Neg) && f.body().is(FormulaKind::Exists);
    if (!tforall && !fexists) continue;
    const RuleName rn = tforall ? RuleName::TForall : RuleName::FExists;
    if (b.params.empty()) {
      if (budget_.max_params == 0) {
        b.budget_hit = true;
        continue;
      }
      if (auto c = try_rule(b, {rn, {e.id}, fresh_parameter(b)})) return c;
      continue;
    }
    for (const auto& u : b.params)
      if (auto c = try_rule(b, {rn, {e.id}, Atom::parameter(u)})) return c;
  }

  // Ctr towards a positive assertion with a larger window, or towards the
  // parameters of the body.
  for (const auto& e : entries) {
    if (!e.formula.is_negated_assertion()) continue;
    const Formula a = e.formula.body();
    std::vector<Atom> targets;
    for (const auto& g : entries) {
      const Formula& p = g.formula;
      if (p.is(FormulaKind::Assert) && p.term() == a.term() && p.body() == a.body() &&
          a.window().subset_of(p.window()))
        for (const auto& u : p.window())
          if (!a.window().contains(u)) push_unique(targets, u);
    }
    for (const auto& u : par_set(a.body()))
      if (!a.window().contains(Atom::parameter(u))) push_unique(targets, Atom::parameter(u));
    for (const auto& u : targets)
      if (auto c = try_rule(b, {RuleName::Ctr, {e.id}, u})) return c;
  }

  // FDot, preferring cuts whose alternatives close at once.
  for (const auto& e : entries) {
    if (!negated_assertion_with(e.formula, TermKind::App)) continue;
    std::optional<Candidate> best;
    int best_score = -1;
    for (const auto& cut : cut_candidates(b, e.formula)) {
      auto c = try_rule(b, {RuleName::FDot, {e.id}, std::nullopt, cut});
      if (!c) continue;
      int score = 0;
      for (const auto& alt : c->conclusions) {
        Branch probe = entries;
        probe.push_back({-1, alt.front()});
        if (closes_with(probe, probe.size() - 1, *cs_)) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = std::move(c);
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

SearchState saturate_step(SearchState s) {
  if (s.finished()) return s;
  auto& b = s.open_.back();
  if (std::chrono::steady_clock::now() - s.started_ > s.budget_.time_limit) {
    s.exhausted_ = "time";
    return s;
  }
  if (s.nodes_.size() >= s.budget_.max_nodes) {
    s.exhausted_ = "nodes";
    return s;
  }
  if (b.entries.size() >= s.budget_.max_depth) {
    s.exhausted_ = "depth";
    return s;
  }
  auto cand = s.select(b);
  if (!cand) {
    if (b.budget_hit) {
      s.exhausted_ = "params";
    } else {
      s.saturated_ = true;
    }
    return s;
  }
  ++s.steps_;
  const RuleInstance& r = cand->rule;
  s.last_rule_ = r;
  if (r.name == RuleName::TExists || r.name == RuleName::FForall) b.delta_done.insert(r.premises.front());
  if (r.param && r.param->is_parameter())
    for (std::size_t k = s.next_param_; k < s.next_param_ + b.params.size() + 1; ++k)
      if (r.param->name == "u" + std::to_string(k)) {
        s.next_param_ = k + 1;
        break;
      }

  if (cand->conclusions.size() == 1) {
    for (const auto& f : cand->conclusions.front()) {
      if (s.extend(b, f, r)) {
        s.open_.pop_back();
        break;
      }
    }
    return s;
  }
  SearchState::OpenBranch left = std::move(b);
  s.open_.pop_back();
  SearchState::OpenBranch right = left;
  bool left_closed = false;
  bool right_closed = false;
  for (const auto& f : cand->conclusions[0])
    if ((left_closed = s.extend(left, f, r))) break;
  for (const auto& f : cand->conclusions[1])
    if ((right_closed = s.extend(right, f, r))) break;
  if (!right_closed) s.open_.push_back(std::move(right));
  if (!left_closed) s.open_.push_back(std::move(left));
  return s;
}

ProofNode SearchState::build(NodeId id) const {
  const Node& n = nodes_[static_cast<std::size_t>(id - 1)];
  ProofNode out{n.id, n.formula, n.rule, {}, n.closure};
  for (auto c : n.children) out.children.push_back(build(c));
  return out;
}

ProofTree SearchState::tree() const { return ProofTree{roots_, build(1)}; }

namespace {

struct Pruned {
  /// One node, or the two conclusions of a split when the node was dropped.
  std::vector<ProofNode> forest;
  std::set<NodeId> needed;
};

Pruned prune_node(const ProofNode& n, std::size_t depth, std::size_t roots) {
  Pruned p;
  p.needed.insert(n.id);
  if (n.rule) p.needed.insert(n.rule->premises.begin(), n.rule->premises.end());
  if (n.closure && n.closure->kind == ClosureMark::Kind::Contradiction) p.needed.insert(n.closure->with);
  if (n.closure && n.closure->at >= 0) p.needed.insert(n.closure->at);
  std::vector<ProofNode> kids;
  std::set<NodeId> below;
  for (const auto& c : n.children) {
    Pruned k = prune_node(c, depth + 1, roots);
    if (n.children.size() == 2 && !k.needed.contains(c.id)) {
      kids = std::move(k.forest);
      below = std::move(k.needed);
      break;
    }
    kids.insert(kids.end(), std::make_move_iterator(k.forest.begin()), std::make_move_iterator(k.forest.end()));
    below.insert(k.needed.begin(), k.needed.end());
  }
  if (depth >= roots && !n.closure && !below.contains(n.id)) return Pruned{std::move(kids), std::move(below)};
  ProofNode node = n;
  node.children = std::move(kids);
  p.forest.push_back(std::move(node));
  p.needed.insert(below.begin(), below.end());
  return p;
}

void collect_ids(const ProofNode& n, std::map<NodeId, NodeId>& ids) {
  ids.emplace(n.id, static_cast<NodeId>(ids.size()) + 1);
  for (const auto& c : n.children) collect_ids(c, ids);
}

void renumber(ProofNode& n, const std::map<NodeId, NodeId>& ids) {
  n.id = ids.at(n.id);
  if (n.rule)
    for (auto& p : n.rule->premises) p = ids.at(p);
  if (n.closure) {
    if (n.closure->kind == ClosureMark::Kind::Contradiction) n.closure->with = ids.at(n.closure->with);
    if (n.closure->at >= 0) n.closure->at = ids.at(n.closure->at);
    if (n.closure->at == n.id) n.closure->at = -1;
  }
  for (auto& c : n.children) renumber(c, ids);
}

}  // namespace

ProofTree prune_proof(const ProofTree& t) {
  ProofTree out{t.roots, std::move(prune_node(t.top, 0, t.roots.size()).forest.front())};
  std::map<NodeId, NodeId> ids;
  collect_ids(out.top, ids);
  renumber(out.top, ids);
  return out;
}

SearchOutcome prove(const Formula& goal, const ConstantSpecification& cs,
                    const SearchBudget& budget, const std::vector<Formula>& hints) {
  if (!is_sentence(goal)) throw Error("goal is not a sentence: " + print_formula(goal));
  const auto start = std::chrono::steady_clock::now();
  SearchState state({negate(goal)}, cs, budget, hints);
  while (!state.finished()) state = saturate_step(std::move(state));
  SearchOutcome out;
  out.stats.nodes = state.node_count();
  out.stats.steps = state.steps();
  out.stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (state.closed()) {
    out.status = SearchOutcome::Status::Proved;
    out.proof = prune_proof(state.tree());
    return out;
  }
  out.open_branch = state.current_branch();
  if (state.exhausted()) {
    out.status = SearchOutcome::Status::Exhausted;
    out.dimension = *state.exhausted();
    out.diagnostics.push_back("budget exhausted: " + out.dimension);
  } else {
    out.status = SearchOutcome::Status::Open;
    out.diagnostics.push_back("branch saturated without closing under the search strategy");
  }
  return out;
}

}  // namespace folp
