#include "folp/text_format.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "folp/error.hpp"

namespace folp {

namespace {

using nlohmann::json;

enum class Tok {
  Ident, Param, Elem, LParen, RParen, LBrack, RBrack, Comma, Dot, Colon,
  Tilde, Arrow, Plus, Star, Bang, Less, Greater, Minus, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, {}, line, col};
    if (ident_start(c) || c == '@' || c == '$') {
      std::size_t j = i + (ident_start(c) ? 0 : 1);
      std::size_t k = j;
      while (k < s.size() && ident_char(s[k])) ++k;
      if (k == j) throw SyntaxError(std::string("expected a name after '") + c + "'", line, col);
      t.kind = c == '@' ? Tok::Param : c == '$' ? Tok::Elem : Tok::Ident;
      t.text = std::string(s.substr(j, k - j));
      out.push_back(std::move(t));
      advance(k - i);
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '[': t.kind = Tok::LBrack; break;
      case ']': t.kind = Tok::RBrack; break;
      case ',': t.kind = Tok::Comma; break;
      case '.': t.kind = Tok::Dot; break;
      case ':': t.kind = Tok::Colon; break;
      case '~': t.kind = Tok::Tilde; break;
      case '+': t.kind = Tok::Plus; break;
      case '*': t.kind = Tok::Star; break;
      case '!': t.kind = Tok::Bang; break;
      case '<': t.kind = Tok::Less; break;
      case '>': t.kind = Tok::Greater; break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          t.kind = Tok::Arrow;
          len = 2;
        } else {
          t.kind = Tok::Minus;
        }
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(s.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  out.push_back(Token{Tok::End, {}, line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "forall" || s == "exists" || s == "gen"; }
bool is_upper(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])); }
bool is_lower_ident(const Token& t) {
  return t.kind == Tok::Ident && !is_upper(t.text) && !is_keyword(t.text);
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature& sig) : toks_(std::move(tokens)), sig_(sig) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void error(const std::string& message, const Token& t) const {
    throw SyntaxError(message, t.line, t.column);
  }
  [[noreturn]] void error(const std::string& message) const { error(message, peek()); }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) error(std::string("expected ") + what + found());
    return next();
  }

  std::string found() const {
    if (at(Tok::End)) return ", found end of input";
    return ", found '" + describe(peek()) + "'";
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Param) return "@" + t.text;
    if (t.kind == Tok::Elem) return "$" + t.text;
    return t.text;
  }

  void expect_end() {
    if (!at(Tok::End)) error("unexpected '" + describe(peek()) + "' after end of formula");
  }

  Formula formula() {
    Formula lhs = quant();
    if (at(Tok::Arrow)) {
      next();
      return Formula::impl(lhs, formula());
    }
    return lhs;
  }

  Formula quant() {
    if (at_word("forall") || at_word("exists")) {
      const bool universal = next().text == "forall";
      const Token v = peek();
      if (v.kind == Tok::Param) error("cannot quantify over parameter @" + v.text);
      if (v.kind == Tok::Elem) error("cannot quantify over domain element $" + v.text);
      if (!is_lower_ident(v)) error("expected an individual variable after quantifier" + found());
      next();
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = quant();
      return universal ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
    }
    return unary();
  }

  Formula unary() {
    if (at(Tok::Tilde)) {
      next();
      return Formula::neg(quant());
    }
    if (at(Tok::LParen)) {
      const std::size_t saved = pos_;
      try {
        Term t = term();
        if (at(Tok::Colon)) return assertion_rest(t);
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
      next();
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::Bang) || at_word("gen") || is_lower_ident(peek())) {
      Term t = term();
      if (!at(Tok::Colon)) error("expected ':' after justification term" + found());
      return assertion_rest(t);
    }
    if (at(Tok::Ident) && is_upper(peek().text)) return predicate();
    error("expected a formula" + found());
  }

  Formula assertion_rest(const Term& t) {
    expect(Tok::Colon, "':'");
    Window w;
    if (at(Tok::LBrack)) {
      next();
      std::vector<Atom> atoms;
      if (!at(Tok::RBrack)) atoms = atom_list("window");
      expect(Tok::RBrack, "']' closing the window");
      w = Window(std::move(atoms));
    }
    return Formula::assertion(t, std::move(w), quant());
  }

  Formula predicate() {
    const Token name = next();
    std::vector<Atom> args;
    if (at(Tok::LParen)) {
      next();
      if (!at(Tok::RParen)) args = atom_list("argument");
      expect(Tok::RParen, "')' closing the argument list");
    }
    auto [it, inserted] = sig_.arities.emplace(name.text, args.size());
    if (!inserted && it->second != args.size())
      error("predicate " + name.text + " used with arity " + std::to_string(args.size()) +
                ", previously " + std::to_string(it->second),
            name);
    return Formula::pred(name.text, std::move(args));
  }

  std::vector<Atom> atom_list(const char* what) {
    std::vector<Atom> atoms{atom(what)};
    while (at(Tok::Comma)) {
      next();
      atoms.push_back(atom(what));
    }
    return atoms;
  }

  Atom atom(const char* what) {
    const Token t = peek();
    if (t.kind != Tok::Param && t.kind != Tok::Elem && !is_lower_ident(t))
      error(std::string("expected a variable, parameter or element as ") + what + found());
    next();
    if (t.kind == Tok::Param) return Atom::parameter(t.text);
    if (t.kind == Tok::Elem) return Atom::element(t.text);
    return Atom::variable(t.text);
  }

  Term term() {
    Term t = term_app();
    while (at(Tok::Plus)) {
      next();
      t = Term::sum(t, term_app());
    }
    return t;
  }

  Term term_app() {
    Term t = term_pre();
    while (at(Tok::Star)) {
      next();
      t = Term::app(t, term_pre());
    }
    return t;
  }

  Term term_pre() {
    if (at(Tok::Bang)) {
      next();
      return Term::bang(term_pre());
    }
    if (at_word("gen")) {
      next();
      expect(Tok::Less, "'<' after gen");
      const Token v = peek();
      if (v.kind == Tok::Param) error("gen binds individual variables, not parameter @" + v.text);
      if (!is_lower_ident(v)) error("expected an individual variable in gen<...>" + found());
      next();
      expect(Tok::Greater, "'>'");
      expect(Tok::LParen, "'(' after gen<" + v.text + ">");
      Term inner = term();
      expect(Tok::RParen, "')'");
      return Term::gen(v.text, inner);
    }
    if (at(Tok::LParen)) {
      next();
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    const Token t = peek();
    if (!is_lower_ident(t)) error("expected a justification term" + found());
    next();
    return sig_.constants.contains(t.text) ? Term::constant(t.text) : Term::variable(t.text);
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> toks_;
  Signature& sig_;

};

// --- printing --------------------------------------------------------------

void print_term_to(const Term& t, int level, std::string& out) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      out += t.name();
      return;
    case TermKind::Sum:
    case TermKind::App: {
      const bool sum = t.kind() == TermKind::Sum;
      const int own = sum ? 0 : 1;
      if (level > own) out += '(';
      print_term_to(t.left(), own, out);
      out += sum ? '+' : '*';
      print_term_to(t.right(), own + 1, out);
      if (level > own) out += ')';
      return;
    }
    case TermKind::Bang:
      out += '!';
      print_term_to(t.inner(), 2, out);
      return;
    case TermKind::Gen:
      out += "gen<" + t.name() + ">(";
      print_term_to(t.inner(), 0, out);
      out += ')';
      return;
  }
}

void print_atoms(const std::vector<Atom>& atoms, std::string& out) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(atoms[i]);
  }
}

void print_formula_to(const Formula& f, bool impl_ok, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        print_atoms(f.args(), out);
        out += ')';
      }
      return;
    case FormulaKind::Neg:
      out += '~';
      print_formula_to(f.body(), false, out);
      return;
    case FormulaKind::Impl:
      if (!impl_ok) out += '(';
      print_formula_to(f.lhs(), false, out);
      out += " -> ";
      print_formula_to(f.rhs(), true, out);
      if (!impl_ok) out += ')';
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.is(FormulaKind::Forall) ? "forall " : "exists ";
      out += f.name() + ". ";
      print_formula_to(f.body(), false, out);
      return;
    case FormulaKind::Assert:
      print_term_to(f.term(), 0, out);
      out += " : ";
      if (!f.window().empty()) out += print_window(f.window()) + " ";
      print_formula_to(f.body(), false, out);
      return;
  }
}

// --- files -----------------------------------------------------------------

std::string strip_sigil(const std::string& s) {
  return !s.empty() && s[0] == '$' ? s.substr(1) : s;
}

Atom parse_atom_text(const std::string& s) {
  if (s.size() > 1 && s[0] == '@') return Atom::parameter(s.substr(1));
  if (s.size() > 1 && s[0] == '$') return Atom::element(s.substr(1));
  if (!s.empty() && ident_start(s[0]) && !is_upper(s)) return Atom::variable(s);
  throw FormatError("'" + s + "' is not an atom");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw FormatError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

Formula parse_in(const std::string& text, Signature& sig, const std::string& where) {
  try {
    return parse_formula(text, sig);
  } catch (const SyntaxError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

RuleInstance rule_from_json(const json& r, Signature& sig, const std::string& where) {
  RuleInstance inst;
  const auto name = field(r, "name", where).get<std::string>();
  auto rn = rule_from_name(name);
  if (!rn) throw FormatError(where + ": unknown rule \"" + name + "\"");
  inst.name = *rn;
  if (r.contains("premises"))
    for (const auto& p : r.at("premises")) inst.premises.push_back(p.get<NodeId>());
  if (r.contains("param") && !r.at("param").is_null())
    inst.param = parse_atom_text(r.at("param").get<std::string>());
  if (r.contains("cut") && !r.at("cut").is_null())
    inst.cut = parse_in(r.at("cut").get<std::string>(), sig, where + " cut");
  if (r.contains("var") && !r.at("var").is_null()) inst.var = r.at("var").get<std::string>();
  return inst;
}

ProofNode node_from_json(const json& j, Signature& sig) {
  if (!j.is_object()) throw FormatError("proof node must be an object");
  const NodeId id = field(j, "id", "node").get<NodeId>();
  const std::string where = "node " + std::to_string(id);
  ProofNode n{id, parse_in(field(j, "formula", where).get<std::string>(), sig, where), {}, {}, {}};
  if (j.contains("rule") && !j.at("rule").is_null()) {
    const json& r = j.at("rule");
    if (field(r, "name", where).get<std::string>() != "root") n.rule = rule_from_json(r, sig, where);
  }
  if (j.contains("children")) {
    const json& cs = j.at("children");
    if (!cs.is_array() || cs.size() > 2) throw FormatError(where + ": children must be an array of at most two nodes");
    for (const auto& c : cs) n.children.push_back(node_from_json(c, sig));
  }
  if (j.contains("closure") && !j.at("closure").is_null()) {
    const json& c = j.at("closure");
    ClosureMark m;
    const auto kind = field(c, "kind", where).get<std::string>();
    if (kind == "contradiction") {
      m.kind = ClosureMark::Kind::Contradiction;
      m.with = field(c, "with", where).get<NodeId>();
    } else if (kind == "cs") {
      m.kind = ClosureMark::Kind::Cs;
      m.constant = field(c, "constant", where).get<std::string>();
    } else {
      throw FormatError(where + ": unknown closure kind \"" + kind + "\"");
    }
    if (c.contains("at")) m.at = c.at("at").get<NodeId>();
    n.closure = m;
  }
  return n;
}

json rule_to_json(const std::optional<RuleInstance>& r) {
  if (!r) return json{{"name", "root"}, {"premises", json::array()}};
  json j{{"name", std::string(rule_name(r->name))}, {"premises", r->premises}};
  if (r->param) j["param"] = to_string(*r->param);
  if (r->cut) j["cut"] = print_formula(*r->cut);
  if (r->var) j["var"] = *r->var;
  return j;
}

json node_to_json(const ProofNode& n) {
  json j{{"id", n.id}, {"formula", print_formula(n.formula)}, {"rule", rule_to_json(n.rule)}};
  j["children"] = json::array();
  for (const auto& c : n.children) j["children"].push_back(node_to_json(c));
  if (!n.closure) {
    j["closure"] = nullptr;
  } else if (n.closure->kind == ClosureMark::Kind::Contradiction) {
    j["closure"] = {{"kind", "contradiction"}, {"with", n.closure->with}};
  } else {
    j["closure"] = {{"kind", "cs"}, {"constant", n.closure->constant}};
  }
  if (n.closure && n.closure->at >= 0 && n.closure->at != n.id) j["closure"]["at"] = n.closure->at;
  return j;
}

void node_text(const ProofNode& n, int indent, std::string& out) {
  out += std::string(static_cast<std::size_t>(indent), ' ');
  out += std::to_string(n.id) + ". " + print_formula(n.formula);
  out += "    [" + (n.rule ? describe_rule(*n.rule) : std::string("root")) + "]";
  if (n.closure) {
    out += n.closure->kind == ClosureMark::Kind::Contradiction
               ? "  closed: contradiction with " + std::to_string(n.closure->with)
               : "  closed: " + n.closure->constant + " in CS";
  }
  out += '\n';
  const int child_indent = n.children.size() > 1 ? indent + 2 : indent;
  for (const auto& c : n.children) node_text(c, child_indent, out);
}

}  // namespace

Formula parse_formula(std::string_view text, Signature& sig) {
  Parser p(lex(text), sig);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Formula parse_formula(std::string_view text, const std::set<std::string>& constants) {
  Signature sig{constants, {}};
  return parse_formula(text, sig);
}

Term parse_term(std::string_view text, const std::set<std::string>& constants) {
  Signature sig{constants, {}};
  Parser p(lex(text), sig);
  Term t = p.term();
  if (!p.at(Tok::End)) p.error("unexpected '" + Parser::describe(p.peek()) + "' after term");
  return t;
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_to(t, 0, out);
  return out;
}

std::string print_window(const Window& w) {
  std::string out = "[";
  print_atoms(w.elements(), out);
  return out + "]";
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_to(f, true, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print_formula(f); }
std::ostream& operator<<(std::ostream& os, const Term& t) { return os << print_term(t); }

ConstantSpecification parse_cs_text(std::string_view text, Signature* shared) {
  Signature local;
  Signature& sig = shared ? *shared : local;
  ConstantSpecification cs;
  for (const auto& c : sig.constants) cs.declare(c);
  Parser p(lex(text), sig);
  while (!p.at(Tok::End)) {
    const Token start = p.peek();
    const std::string where = "line " + std::to_string(start.line);
    if (p.at_word("const")) {
      p.next();
      do {
        if (p.at(Tok::Comma)) p.next();
        const Token c = p.peek();
        if (!is_lower_ident(c)) p.error("expected a constant name" + p.found());
        p.next();
        cs.declare(c.text);
        sig.constants.insert(c.text);
      } while (p.at(Tok::Comma));
      p.expect(Tok::Dot, "'.' ending the declaration");
    } else if (p.at_word("total") && p.peek(1).kind == Tok::Dot) {
      p.next();
      p.next();
      cs.set_total(true);
    } else if (p.at_word("variant") && p.peek(1).kind == Tok::Minus &&
               p.peek(2).kind == Tok::Ident && p.peek(2).text == "closed") {
      p.next();
      p.next();
      p.next();
      p.expect(Tok::Dot, "'.' after variant-closed");
      cs.set_variant_closed(true);
    } else if (is_lower_ident(start) && p.peek(1).kind == Tok::Colon) {
      p.next();
      p.next();
      if (!cs.declared(start.text))
        throw FormatError(where + ": constant " + start.text + " is not declared");
      if (p.at_word("scheme") && p.peek(1).kind == Tok::Ident && p.peek(2).kind == Tok::Dot) {
        p.next();
        const Token name = p.next();
        p.next();
        auto s = scheme_from_name(name.text);
        if (!s) throw FormatError(where + ": unknown scheme " + name.text);
        cs.add_schematic(start.text, *s);
        continue;
      }
      Formula f = p.formula();
      p.expect(Tok::Dot, "'.' ending the entry");
      if (!par_set(f).empty() || !element_set(f).empty())
        throw FormatError(where + ": entry for " + start.text +
                          " may not mention parameters or domain elements");
      try {
        cs.add_concrete(start.text, f);
      } catch (const FormatError& e) {
        throw FormatError(where + ": " + e.what() + ": " + print_formula(f));
      }
    } else {
      p.error("expected a declaration, entry or directive" + p.found());
    }
  }
  return cs;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConstantSpecification read_cs_file(const std::filesystem::path& path, Signature* sig) {
  const std::string text = read_text_file(path);
  try {
    return parse_cs_text(text, sig);
  } catch (const SyntaxError& e) {
    throw FormatError(path.string() + ":" + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

SourceProblem make_problem(std::string_view goal_text, const ConstantSpecification& cs) {
  Signature sig{cs.constants(), {}};
  for (const auto& [c, f] : cs.concrete()) {
    for (const auto& [q, n] : predicate_arities(f)) sig.arities.emplace(q, n);
  }
  Formula goal = parse_formula(goal_text, sig);
  if (!is_sentence(goal)) throw FormatError("goal must be a sentence without parameters: " + print_formula(goal));
  SourceProblem out{{cs.constants().begin(), cs.constants().end()}, goal, {}};
  for (const auto& e : cs.concrete()) out.cs_entries.push_back(e);
  return out;
}

MkrtychevModel parse_model_json(std::string_view text, const std::set<std::string>& constants) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
  MkrtychevModel m;
  std::set<std::string> domain;
  for (const auto& d : field(j, "domain", "model")) {
    const std::string name = strip_sigil(d.get<std::string>());
    if (name.empty() || !domain.insert(name).second)
      throw FormatError("model: duplicate or empty domain element \"" + name + "\"");
    m.domain.push_back(name);
  }
  if (m.domain.empty()) throw FormatError("model: domain must be non-empty");
  Signature sig{constants, {}};
  if (j.contains("predicates")) {
    for (const auto& [q, tuples] : j.at("predicates").items()) {
      Relation rel;
      for (const auto& tup : tuples) {
        std::vector<std::string> row;
        for (const auto& e : tup) {
          const std::string name = strip_sigil(e.get<std::string>());
          if (!domain.contains(name))
            throw FormatError("model: predicate " + q + " mentions unknown element " + name);
          row.push_back(name);
        }
        if (rel.arity && *rel.arity != row.size())
          throw FormatError("model: predicate " + q + " has tuples of different arity");
        rel.arity = row.size();
        rel.tuples.insert(std::move(row));
      }
      if (rel.arity) sig.arities[q] = *rel.arity;
      m.interp[q] = std::move(rel);
    }
  }
  if (j.contains("evidence")) {
    for (const auto& entry : j.at("evidence")) {
      const auto term_text = field(entry, "term", "evidence").get<std::string>();
      Term t = [&] {
        try {
          return parse_term(term_text, constants);
        } catch (const SyntaxError& e) {
          throw FormatError("evidence term \"" + term_text + "\": " + e.what());
        }
      }();
      const std::string where = "evidence for " + print_term(t);
      m.touch(t);
      if (!entry.contains("formulas")) continue;
      for (const auto& ft : entry.at("formulas")) {
        Formula f = parse_in(ft.get<std::string>(), sig, where);
        for (const auto& [q, n] : predicate_arities(f)) {
          auto it = m.interp.find(q);
          if (it == m.interp.end()) throw FormatError(where + ": undeclared predicate " + q);
          if (it->second.arity && *it->second.arity != n)
            throw FormatError(where + ": predicate " + q + " used with wrong arity");
          it->second.arity = n;
        }
        if (!par_set(f).empty()) throw FormatError(where + ": evidence may not mention parameters");
        for (const auto& e : element_set(f))
          if (!domain.contains(e)) throw FormatError(where + ": unknown element $" + e);
        m.add_evidence(t, f);
      }
    }
  }
  return m;
}

MkrtychevModel read_model_file(const std::filesystem::path& path,
                               const std::set<std::string>& constants) {
  try {
    return parse_model_json(read_text_file(path), constants);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string model_to_json(const MkrtychevModel& m, int indent) {
  json j;
  j["domain"] = m.domain;
  j["predicates"] = json::object();
  for (const auto& [q, rel] : m.interp) {
    json rows = json::array();
    for (const auto& row : rel.tuples) rows.push_back(row);
    j["predicates"][q] = rows;
  }
  j["evidence"] = json::array();
  for (const auto& t : m.evidence_terms()) {
    json fs = json::array();
    for (const auto& f : m.evidence_of(t)) fs.push_back(print_formula(f));
    j["evidence"].push_back({{"term", print_term(t)}, {"formulas", fs}});
  }
  return j.dump(indent);
}

ProofTree parse_proof_json(std::string_view text, const std::set<std::string>& constants) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("proof: ") + e.what());
  }
  Signature sig{constants, {}};
  try {
    std::vector<Formula> roots;
    for (const auto& r : field(j, "roots", "proof"))
      roots.push_back(parse_in(r.get<std::string>(), sig, "root"));
    return ProofTree{std::move(roots), node_from_json(field(j, "tree", "proof"), sig)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("proof: ") + e.what());
  }
}

ProofTree read_proof_file(const std::filesystem::path& path,
                          const std::set<std::string>& constants) {
  try {
    return parse_proof_json(read_text_file(path), constants);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string proof_to_json(const ProofTree& t, int indent) {
  json j;
  j["roots"] = json::array();
  for (const auto& r : t.roots) j["roots"].push_back(print_formula(r));
  j["tree"] = node_to_json(t.top);
  return j.dump(indent);
}

void write_proof_file(const std::filesystem::path& path, const ProofTree& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << proof_to_json(t) << '\n';
}

std::string describe_rule(const RuleInstance& r) {
  std::string out(rule_name(r.name));
  out += " from";
  for (auto p : r.premises) out += " " + std::to_string(p);
  if (r.param) out += ", " + to_string(*r.param);
  if (r.var) out += " := " + *r.var;
  if (r.cut) out += ", cut " + print_formula(*r.cut);
  return out;
}

std::string proof_to_text(const ProofTree& t) {
  std::string out;
  node_text(t.top, 0, out);
  return out;
}

}  // namespace folp
