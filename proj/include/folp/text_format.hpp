// Concrete syntax and file formats.
//
//   formula := impl
//   impl    := quant ("->" impl)?
//   quant   := ("forall" | "exists") IVAR "." quant | unary
//   unary   := "~" quant | term ":" window? quant | primary
//   primary := PRED ("(" atomlist ")")? | "(" formula ")"
//   window  := "[" atomlist? "]"
//   term    := tapp ("+" tapp)*
//   tapp    := tpre ("*" tpre)*
//   tpre    := "!" tpre | "gen" "<" IVAR ">" "(" term ")" | JID | "(" term ")"
//
// Predicates start uppercase, individual variables and justification
// identifiers are lowercase, parameters are written @u and domain elements
// $a. A justification identifier is a constant iff it is declared.

#ifndef FOLP_TEXT_FORMAT_HPP
#define FOLP_TEXT_FORMAT_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folp/constant_spec.hpp"
#include "folp/model.hpp"
#include "folp/syntax.hpp"
#include "folp/tableau.hpp"

namespace folp {

/// Declared constants and the predicate arities seen so far. Sharing one
/// Signature across parses enforces consistent arities.
struct Signature {
  std::set<std::string> constants;
  std::map<std::string, std::size_t> arities;
};

Formula parse_formula(std::string_view text, Signature& sig);
Formula parse_formula(std::string_view text, const std::set<std::string>& constants = {});
Term parse_term(std::string_view text, const std::set<std::string>& constants = {});

std::string print_formula(const Formula& f);
std::string print_term(const Term& t);
std::string print_window(const Window& w);

std::ostream& operator<<(std::ostream& os, const Formula& f);
std::ostream& operator<<(std::ostream& os, const Term& t);

struct SourceProblem {
  std::vector<std::string> declarations;
  Formula goal;
  std::vector<std::pair<std::string, Formula>> cs_entries;
};

/// Constant specification statements, '.' terminated, '#' comments:
///   const c1, c2.   c : <formula>.   c : scheme NAME.   total.   variant-closed.
/// Throws SyntaxError or FormatError naming the offending entry.
ConstantSpecification parse_cs_text(std::string_view text, Signature* sig = nullptr);
ConstantSpecification read_cs_file(const std::filesystem::path& path, Signature* sig = nullptr);

/// Goal text checked against a CS: the goal must be a sentence whose
/// constants are declared.
SourceProblem make_problem(std::string_view goal_text, const ConstantSpecification& cs);

/// {"domain": [...], "predicates": {"Q": [[...], ...]},
///  "evidence": [{"term": "...", "formulas": ["...", ...]}]}
MkrtychevModel parse_model_json(std::string_view text, const std::set<std::string>& constants);
MkrtychevModel read_model_file(const std::filesystem::path& path,
                               const std::set<std::string>& constants);
std::string model_to_json(const MkrtychevModel& m, int indent = 2);

ProofTree parse_proof_json(std::string_view text, const std::set<std::string>& constants);
ProofTree read_proof_file(const std::filesystem::path& path,
                          const std::set<std::string>& constants);
std::string proof_to_json(const ProofTree& t, int indent = 2);
void write_proof_file(const std::filesystem::path& path, const ProofTree& t);

/// Indented human-readable rendering, one node per line.
std::string proof_to_text(const ProofTree& t);
std::string describe_rule(const RuleInstance& r);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace folp

#endif  // FOLP_TEXT_FORMAT_HPP
