#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pathmc {

// ACTL without AX, in negation normal form: negation only on literals and
// no existential or next-time operators.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { True, False, Literal, And, Or, Until, WeakUntil };

  Kind kind = Kind::True;
  std::string species;  // Literal
  bool negated = false; // Literal
  FormulaPtr lhs;       // And, Or, Until, WeakUntil
  FormulaPtr rhs;

  bool temporal() const noexcept {
    return kind == Kind::Until || kind == Kind::WeakUntil;
  }
};

namespace actl {

FormulaPtr top();
FormulaPtr bottom();
FormulaPtr lit(std::string species, bool negated = false);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
// A[f U g]
FormulaPtr until(FormulaPtr f, FormulaPtr g);
// A[f W g]
FormulaPtr weak_until(FormulaPtr f, FormulaPtr g);
// AF f ≡ A[true U f]
FormulaPtr eventually(FormulaPtr f);
// AG f ≡ A[f W false]
FormulaPtr always(FormulaPtr f);

}  // namespace actl

// Negation of a propositional formula, pushed to the literals. Throws
// ModelError when `f` contains a temporal operator.
FormulaPtr negate(const FormulaPtr& f);

bool propositional(const Formula& f);
bool structurally_equal(const Formula& a, const Formula& b);
std::set<std::string> atoms(const Formula& f);
std::size_t depth(const Formula& f);

// Canonical, fully parenthesised text that parse_formula reads back.
std::string to_string(const Formula& f);

// Grammar, loosest binding first:
//   f  ::= d ('->' f)?          left operand propositional
//   d  ::= c ('|' c)*
//   c  ::= u ('&' u)*
//   u  ::= '!' u | 'AF' u | 'AG' u | atom
//   atom ::= 'true' | 'false' | species | '(' f ')'
//          | 'A' '[' f 'U' f ']' | 'A' '[' f 'W' f ']'
//
// When `species` is non-empty, names are matched against it (longest match
// first, which disambiguates names containing parentheses) and unknown
// names are rejected. Throws ParseError with the column of the problem.
FormulaPtr parse_formula(std::string_view text,
                         const std::vector<std::string>& species = {});

struct Property {
  std::string name;
  std::string text;
  FormulaPtr formula;
};

// `.actl` files: one `name: formula` per line, `#` comments.
std::vector<Property> parse_properties(
    std::string_view text, const std::vector<std::string>& species = {});

}  // namespace pathmc
