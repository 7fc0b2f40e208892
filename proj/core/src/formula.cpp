#include "pathmc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

FormulaPtr make(Formula::Kind kind, FormulaPtr lhs = nullptr,
                FormulaPtr rhs = nullptr) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

}  // namespace

namespace actl {

FormulaPtr top() { return make(Formula::Kind::True); }
FormulaPtr bottom() { return make(Formula::Kind::False); }

FormulaPtr lit(std::string species, bool negated) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Literal;
  f->species = std::move(species);
  f->negated = negated;
  return f;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::And, std::move(a), std::move(b));
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::Or, std::move(a), std::move(b));
}
FormulaPtr until(FormulaPtr f, FormulaPtr g) {
  return make(Formula::Kind::Until, std::move(f), std::move(g));
}
FormulaPtr weak_until(FormulaPtr f, FormulaPtr g) {
  return make(Formula::Kind::WeakUntil, std::move(f), std::move(g));
}
FormulaPtr eventually(FormulaPtr f) { return until(top(), std::move(f)); }
FormulaPtr always(FormulaPtr f) { return weak_until(std::move(f), bottom()); }

}  // namespace actl

bool propositional(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Literal:
      return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return propositional(*f.lhs) && propositional(*f.rhs);
    case Formula::Kind::Until:
    case Formula::Kind::WeakUntil:
      return false;
  }
  return false;
}

FormulaPtr negate(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
      return actl::bottom();
    case Formula::Kind::False:
      return actl::top();
    case Formula::Kind::Literal:
      return actl::lit(f->species, !f->negated);
    case Formula::Kind::And:
      return actl::disj(negate(f->lhs), negate(f->rhs));
    case Formula::Kind::Or:
      return actl::conj(negate(f->lhs), negate(f->rhs));
    case Formula::Kind::Until:
    case Formula::Kind::WeakUntil:
      break;
  }
  throw ModelError("cannot negate a temporal formula");
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Literal:
      return a.species == b.species && a.negated == b.negated;
    default:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Literal) out.insert(f.species);
  if (f.lhs) collect_atoms(*f.lhs, out);
  if (f.rhs) collect_atoms(*f.rhs, out);
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.lhs) d = std::max(d, depth(*f.lhs));
  if (f.rhs) d = std::max(d, depth(*f.rhs));
  return d + (f.temporal() ? 1 : 0);
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
      return "true";
    case Formula::Kind::False:
      return "false";
    case Formula::Kind::Literal:
      return (f.negated ? "!" : "") + f.species;
    case Formula::Kind::And:
      return "(" + to_string(*f.lhs) + " & " + to_string(*f.rhs) + ")";
    case Formula::Kind::Or:
      return "(" + to_string(*f.lhs) + " | " + to_string(*f.rhs) + ")";
    case Formula::Kind::Until:
      return "A[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
    case Formula::Kind::WeakUntil:
      return "A[" + to_string(*f.lhs) + " W " + to_string(*f.rhs) + "]";
  }
  return {};
}

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' ||
         c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& species)
      : text_(text), species_(species) {}

  FormulaPtr parse() {
    FormulaPtr f = implication();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + rest(8) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 1, pos_ + 1);
  }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, 1, at + 1);
  }

  std::string rest(std::size_t n) const {
    return std::string(text_.substr(pos_, n));
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  // True when a name would continue past `end`.
  bool name_continues(std::size_t end) const {
    if (end >= text_.size()) return false;
    const char c = text_[end];
    return name_char(c) || (c == '-' && text_.substr(end, 2) != "->");
  }

  // A keyword only counts when it is not the prefix of a longer name.
  bool accept_word(std::string_view word) {
    skip();
    if (text_.substr(pos_, word.size()) != word) return false;
    if (name_continues(pos_ + word.size())) return false;
    pos_ += word.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) {
      skip();
      fail("expected '" + std::string(token) + "'");
    }
  }

  FormulaPtr implication() {
    skip();
    const std::size_t start = pos_;
    FormulaPtr lhs = disjunction();
    if (!accept("->")) return lhs;
    if (!propositional(*lhs)) {
      fail_at("left operand of '->' must be propositional", start);
    }
    FormulaPtr rhs = implication();
    return actl::disj(negate(lhs), rhs);
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (accept("||") || accept("|")) f = actl::disj(f, conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (accept("&&") || accept("&")) f = actl::conj(f, unary());
    return f;
  }

  FormulaPtr unary() {
    skip();
    const std::size_t start = pos_;
    if (accept("!")) {
      FormulaPtr operand = unary();
      if (!propositional(*operand)) {
        fail_at("negation of a temporal formula", start);
      }
      return negate(operand);
    }
    if (accept_word("AF")) return actl::eventually(unary());
    if (accept_word("AG")) return actl::always(unary());
    return atom();
  }

  FormulaPtr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (auto name = species_name()) return actl::lit(std::move(*name));
    if (accept_word("true")) return actl::top();
    if (accept_word("false")) return actl::bottom();
    if (text_.substr(pos_, 2) == "A[" ||
        (text_[pos_] == 'A' && next_non_space(pos_ + 1) == '[')) {
      accept("A");
      expect("[");
      FormulaPtr f = implication();
      skip();
      const bool strong = accept_word("U");
      if (!strong && !accept_word("W")) fail("expected 'U' or 'W'");
      FormulaPtr g = implication();
      expect("]");
      return strong ? actl::until(f, g) : actl::weak_until(f, g);
    }
    if (accept("(")) {
      FormulaPtr f = implication();
      expect(")");
      return f;
    }
    if (!species_.empty() && name_char(text_[pos_])) {
      const std::size_t start = pos_;
      fail_at("unknown species '" + std::string(raw_name(pos_)) + "'", start);
    }
    fail("unexpected '" + rest(1) + "'");
  }

  char next_non_space(std::size_t i) const {
    while (i < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[i]))) {
      ++i;
    }
    return i < text_.size() ? text_[i] : '\0';
  }

  // Keywords win over species of the same spelling.
  bool keyword_here() const {
    for (std::string_view word : {"AF", "AG", "true", "false"}) {
      if (text_.substr(pos_, word.size()) == word) {
        if (!name_continues(pos_ + word.size())) return true;
      }
    }
    return text_[pos_] == 'A' && next_non_space(pos_ + 1) == '[';
  }

  // Name per the token alphabet: a run of name characters and '-' (not
  // starting an arrow), with parenthesised groups glued to name characters.
  std::string_view raw_name(std::size_t from) const {
    std::size_t i = from;
    while (i < text_.size()) {
      const char c = text_[i];
      if (name_char(c)) {
        ++i;
      } else if (c == '-' && text_.substr(i, 2) != "->") {
        ++i;
      } else if (c == '(' && i > from) {
        const std::size_t close = text_.find(')', i);
        if (close == std::string_view::npos) break;
        i = close + 1;
      } else {
        break;
      }
    }
    return text_.substr(from, i - from);
  }

  // A leading parenthesised group counts as part of a name only when a name
  // character follows it directly, as in `(EGF-EGFR*)2-GAP`.
  std::size_t glued_group(std::size_t from) const {
    if (text_[from] != '(') return 0;
    const std::size_t close = text_.find(')', from);
    if (close == std::string_view::npos || close + 1 >= text_.size()) return 0;
    const std::string_view inner = text_.substr(from + 1, close - from - 1);
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](char c) {
          return name_char(c) || c == '-';
        })) {
      return 0;
    }
    return name_char(text_[close + 1]) ? close + 1 - from : 0;
  }

  std::optional<std::string> species_name() {
    if (keyword_here()) return std::nullopt;
    if (!species_.empty()) {
      std::size_t best = 0;
      for (const std::string& s : species_) {
        if (s.size() > best && text_.substr(pos_, s.size()) == s) {
          if (!name_continues(pos_ + s.size())) best = s.size();
        }
      }
      if (best == 0) return std::nullopt;
      std::string out(text_.substr(pos_, best));
      pos_ += best;
      return out;
    }
    const std::size_t group = glued_group(pos_);
    const std::size_t start = pos_;
    if (group == 0 && !name_char(text_[pos_])) return std::nullopt;
    const std::string_view name = raw_name(start + group);
    const std::size_t length = group + name.size();
    pos_ = start + length;
    return std::string(text_.substr(start, length));
  }

  std::string_view text_;
  const std::vector<std::string>& species_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text,
                         const std::vector<std::string>& species) {
  return Parser(text, species).parse();
}

std::vector<Property> parse_properties(std::string_view text,
                                       const std::vector<std::string>& species) {
  std::vector<Property> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'name: formula'", line_no, first + 1);
    }
    Property p;
    const auto name_end = line.find_last_not_of(" \t", colon - 1);
    p.name = name_end == std::string::npos || name_end < first
                 ? std::string()
                 : line.substr(first, name_end - first + 1);
    if (p.name.empty()) {
      throw ParseError("missing property name", line_no, first + 1);
    }
    if (std::any_of(out.begin(), out.end(),
                    [&](const Property& q) { return q.name == p.name; })) {
      throw ParseError("duplicate property '" + p.name + "'", line_no,
                       first + 1);
    }
    const auto body = line.find_first_not_of(" \t", colon + 1);
    if (body == std::string::npos) {
      throw ParseError("missing formula", line_no, colon + 2);
    }
    const auto body_end = line.find_last_not_of(" \t\r");
    p.text = line.substr(body, body_end - body + 1);
    try {
      p.formula = parse_formula(p.text, species);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, body + e.column());
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pathmc
