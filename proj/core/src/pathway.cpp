#include "pathmc/pathway.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

bool is_token_char(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == '*' || c == '(' ||
         c == ')' || c == '\'';
}

template <typename T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

enum class Tok { Name, Plus, Comma, LBracket, RBracket, Colon, Arrow };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::vector<Token> tokens;
  std::string comment;  // text after '#', trimmed
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Line lex_line(std::string_view text, std::size_t line_no) {
  Line line;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t column = i + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      line.comment = trim(text.substr(i + 1));
      break;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      line.tokens.push_back({Tok::Arrow, "->", column});
      i += 2;
    } else if (c == '+') {
      line.tokens.push_back({Tok::Plus, "+", column});
      ++i;
    } else if (c == ',') {
      line.tokens.push_back({Tok::Comma, ",", column});
      ++i;
    } else if (c == '[') {
      line.tokens.push_back({Tok::LBracket, "[", column});
      ++i;
    } else if (c == ']') {
      line.tokens.push_back({Tok::RBracket, "]", column});
      ++i;
    } else if (c == ':') {
      line.tokens.push_back({Tok::Colon, ":", column});
      ++i;
    } else if (is_token_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_token_char(text[j]) &&
             !(text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>')) {
        ++j;
      }
      line.tokens.push_back({Tok::Name, std::string(text.substr(i, j - i)),
                             column});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'",
                       line_no, column);
    }
  }
  return line;
}

class LineParser {
 public:
  LineParser(const Line& line, std::size_t line_no, std::size_t end_column)
      : tokens_(line.tokens), line_no_(line_no), end_column_(end_column) {}

  bool done() const { return pos_ == tokens_.size(); }
  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }
  bool peek_is(Tok kind) const { return !done() && tokens_[pos_].kind == kind; }

  const Token& expect(Tok kind, const char* what) {
    if (!peek_is(kind)) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  const Token& species() {
    const Token& t = expect(Tok::Name, "species name");
    if (t.text == "init") {
      throw ParseError("'init' is not a valid species name", line_no_,
                       t.column);
    }
    return t;
  }

  // name ('+' name)*, possibly empty (when the next token is `stop`).
  std::vector<const Token*> plus_list(Tok stop_a, Tok stop_b) {
    std::vector<const Token*> out;
    if (done() || peek_is(stop_a) || peek_is(stop_b)) return out;
    out.push_back(&species());
    while (peek_is(Tok::Plus)) {
      ++pos_;
      out.push_back(&species());
    }
    return out;
  }

  std::vector<const Token*> comma_list(Tok stop) {
    std::vector<const Token*> out;
    if (done() || peek_is(stop)) return out;
    out.push_back(&species());
    while (peek_is(Tok::Comma)) {
      ++pos_;
      out.push_back(&species());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const std::size_t column = done() ? end_column_ : tokens_[pos_].column;
    throw ParseError(message, line_no_, column);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
  std::size_t end_column_;
};

void check_role(const std::vector<const Token*>& names, const char* role,
                std::size_t line_no) {
  std::set<std::string> seen;
  for (const Token* t : names) {
    if (!seen.insert(t->text).second) {
      throw ParseError("duplicate species '" + t->text + "' in " + role +
                           " list",
                       line_no, t->column);
    }
  }
}

}  // namespace

std::vector<SpeciesId> Reaction::species() const {
  std::vector<SpeciesId> out;
  out.reserve(reactants.size() + products.size() + catalysts.size());
  out.insert(out.end(), reactants.begin(), reactants.end());
  out.insert(out.end(), products.begin(), products.end());
  out.insert(out.end(), catalysts.begin(), catalysts.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Declared:
      return "declared";
    case Provenance::HeuristicSource:
      return "heuristic-source";
    case Provenance::HeuristicManual:
      return "heuristic-manual";
  }
  return "declared";
}

std::vector<SpeciesId> InitialSpec::species() const {
  std::vector<SpeciesId> out;
  out.reserve(present.size());
  for (const auto& [id, provenance] : present) out.push_back(id);
  return out;
}

bool is_species_token(std::string_view name) noexcept {
  if (name.empty() || name == "init") return false;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (!is_token_char(name[i])) return false;
    if (name[i] == '-' && i + 1 < name.size() && name[i + 1] == '>') {
      return false;
    }
  }
  return true;
}

SpeciesId Pathway::intern(std::string_view name) {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    return it->second;
  }
  if (!is_species_token(name)) {
    throw ModelError("invalid species name '" + std::string(name) + "'");
  }
  const auto id = static_cast<SpeciesId>(species_.size());
  species_.push_back({id, std::string(name)});
  by_name_.emplace(std::string(name), id);
  return id;
}

std::optional<SpeciesId> Pathway::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    return it->second;
  }
  return std::nullopt;
}

void Pathway::add_reaction(Reaction reaction) {
  if (reaction.id.empty()) {
    reaction.id = "R" + std::to_string(reactions_.size() + 1);
  }
  if (!is_species_token(reaction.id)) {
    throw ModelError("invalid reaction id '" + reaction.id + "'");
  }
  if (by_reaction_id_.count(reaction.id) != 0) {
    throw ModelError("duplicate reaction id '" + reaction.id + "'");
  }
  const auto check = [&](const std::vector<SpeciesId>& ids, const char* role) {
    for (SpeciesId s : ids) {
      if (s >= species_.size()) {
        throw ModelError("reaction '" + reaction.id +
                         "' refers to an unknown species");
      }
    }
    if (has_duplicates(ids)) {
      throw ModelError("reaction '" + reaction.id + "' has a duplicate " +
                       role);
    }
  };
  check(reaction.reactants, "reactant");
  check(reaction.products, "product");
  check(reaction.catalysts, "catalyst");
  std::sort(reaction.catalysts.begin(), reaction.catalysts.end());
  by_reaction_id_.emplace(reaction.id, reactions_.size());
  reactions_.push_back(std::move(reaction));
}

const Reaction* Pathway::find_reaction(std::string_view id) const {
  if (auto it = by_reaction_id_.find(std::string(id));
      it != by_reaction_id_.end()) {
    return &reactions_[it->second];
  }
  return nullptr;
}

void Pathway::set_initial(InitialSpec spec) {
  for (const auto& [id, provenance] : spec.present) {
    if (id >= species_.size()) {
      throw ModelError("initial state refers to an unknown species");
    }
  }
  initial_ = std::move(spec);
}

std::vector<SpeciesId> Pathway::used_species() const {
  std::vector<char> used(species_.size(), 0);
  for (const Reaction& r : reactions_) {
    for (SpeciesId s : r.reactants) used[s] = 1;
    for (SpeciesId s : r.products) used[s] = 1;
    for (SpeciesId s : r.catalysts) used[s] = 1;
  }
  std::vector<SpeciesId> out;
  for (SpeciesId s = 0; s < used.size(); ++s) {
    if (used[s]) out.push_back(s);
  }
  return out;
}

std::vector<SpeciesId> Pathway::unused_species() const {
  const auto used = used_species();
  std::vector<SpeciesId> out;
  std::size_t k = 0;
  for (SpeciesId s = 0; s < species_.size(); ++s) {
    if (k < used.size() && used[k] == s) {
      ++k;
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<std::string> Pathway::names(
    const std::vector<SpeciesId>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (SpeciesId s : ids) out.push_back(name(s));
  return out;
}

AnnotatedPathway parse_annotated_pathway(std::string_view text) {
  AnnotatedPathway doc;
  Pathway& p = doc.pathway;
  InitialSpec initial;
  std::size_t line_no = 0;
  std::size_t start = 0;

  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    const Line line = lex_line(raw, line_no);
    if (line.tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    LineParser in(line, line_no, raw.size() + 1);

    std::string label;
    const Token* label_token = nullptr;
    if (line.tokens.size() >= 2 && line.tokens[0].kind == Tok::Name &&
        line.tokens[1].kind == Tok::Colon) {
      label_token = &line.tokens[0];
      label = label_token->text;
      in.expect(Tok::Name, "label");
      in.expect(Tok::Colon, "':'");
    }
    const bool has_arrow =
        std::any_of(line.tokens.begin(), line.tokens.end(),
                    [](const Token& t) { return t.kind == Tok::Arrow; });

    if (label_token && !has_arrow) {
      if (label != "init") {
        throw ParseError("unknown directive '" + label + "'", line_no,
                         label_token->column);
      }
      const auto names = in.comma_list(Tok::Comma);
      if (!in.done()) in.fail("expected ',' or end of line");
      for (const Token* t : names) {
        initial.present.emplace(p.intern(t->text), Provenance::Declared);
      }
    } else {
      if (label == "init") {
        throw ParseError("'init' directive cannot contain '->'", line_no,
                         label_token->column);
      }
      const auto reactants = in.plus_list(Tok::Arrow, Tok::Arrow);
      in.expect(Tok::Arrow, "'->'");
      const auto products = in.plus_list(Tok::LBracket, Tok::LBracket);
      std::vector<const Token*> catalysts;
      if (in.peek_is(Tok::LBracket)) {
        in.expect(Tok::LBracket, "'['");
        catalysts = in.comma_list(Tok::RBracket);
        in.expect(Tok::RBracket, "']'");
      }
      if (!in.done()) in.fail("unexpected token after reaction");
      check_role(reactants, "reactant", line_no);
      check_role(products, "product", line_no);
      check_role(catalysts, "catalyst", line_no);

      Reaction r;
      r.id = label;
      for (const Token* t : reactants) r.reactants.push_back(p.intern(t->text));
      for (const Token* t : products) r.products.push_back(p.intern(t->text));
      for (const Token* t : catalysts) r.catalysts.push_back(p.intern(t->text));
      try {
        p.add_reaction(std::move(r));
      } catch (const ModelError& e) {
        throw ParseError(e.what(), line_no,
                         label_token ? label_token->column : 1);
      }
      if (!line.comment.empty()) {
        doc.annotations[p.reactions().back().id] = line.comment;
      }
    }
    if (end == text.size()) break;
  }
  p.set_initial(std::move(initial));
  return doc;
}

Pathway parse_pathway(std::string_view text) {
  return std::move(parse_annotated_pathway(text).pathway);
}

std::string format_reaction(const Pathway& p, const Reaction& r) {
  std::ostringstream out;
  const auto join = [&](const std::vector<SpeciesId>& ids,
                        std::string_view sep) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << sep;
      out << p.name(ids[i]);
    }
  };
  join(r.reactants, " + ");
  out << (r.reactants.empty() ? "->" : " ->");
  if (!r.products.empty()) out << ' ';
  join(r.products, " + ");
  if (r.catalysed()) {
    out << " [";
    join(r.catalysts, ", ");
    out << ']';
  }
  return out.str();
}

std::string print_pathway(const Pathway& p) {
  std::ostringstream out;
  for (const Reaction& r : p.reactions()) {
    out << r.id << ": " << format_reaction(p, r) << '\n';
  }
  if (!p.initial().present.empty()) {
    out << "init: ";
    bool first = true;
    for (SpeciesId s : p.initial().species()) {
      if (!first) out << ", ";
      out << p.name(s);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<NormalFormViolation> validate_normal_form(const Pathway& p) {
  std::vector<NormalFormViolation> out;
  for (const Reaction& r : p.reactions()) {
    if (r.reactants.size() != r.products.size()) {
      out.push_back({r.id, r.reactants.size(), r.products.size()});
    }
  }
  return out;
}

}  // namespace pathmc
