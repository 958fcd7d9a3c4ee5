#include "linfix/parser.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace linfix {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { atom, dot, neck, comma, semicolon, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::atom: return "atom";
    case Tok::dot: return "'.'";
    case Tok::neck: return "':-'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::end: return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const std::size_t line = line_, column = column_;
    if (pos_ >= text_.size()) return {Tok::end, {}, line, column};
    const char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance();
      return {Tok::atom, text_.substr(start, pos_ - start), line, column};
    }
    switch (c) {
      case '.': advance(); return {Tok::dot, ".", line, column};
      case ',': advance(); return {Tok::comma, ",", line, column};
      case ';': advance(); return {Tok::semicolon, ";", line, column};
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          advance();
          advance();
          return {Tok::neck, ":-", line, column};
        }
        break;
      default: break;
    }
    throw ParseError(line, column, std::string("unknown token '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  ParsedProgram run() {
    while (tok_.kind != Tok::end) statement();
    ParsedProgram out{DefiniteProgram(std::move(atoms_), std::move(rules_)), std::move(constraints_)};
    return out;
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(tok_.line, tok_.column, what); }

  Token expect(Tok kind) {
    if (tok_.kind != kind)
      fail(std::string("expected ") + describe(kind) + ", found " + describe(tok_.kind));
    Token t = tok_;
    shift();
    return t;
  }

  void statement() {
    if (tok_.kind == Tok::neck) {
      shift();
      auto [body, kind] = body_list();
      if (kind == RuleKind::disjunctive) fail("constraint bodies must be conjunctive");
      expect(Tok::dot);
      constraints_.bodies.push_back(make_rule(0, std::move(body)).body);
      return;
    }
    if (tok_.kind != Tok::atom) fail(std::string("empty head: expected atom, found ") + describe(tok_.kind));
    const AtomId head = atoms_.intern(expect(Tok::atom).text);
    if (tok_.kind == Tok::dot) {
      shift();
      rules_.push_back(Rule{head, {}, RuleKind::conjunctive});
      return;
    }
    expect(Tok::neck);
    auto [body, kind] = body_list();
    expect(Tok::dot);
    rules_.push_back(make_rule(head, std::move(body), kind));
  }

  std::pair<std::vector<AtomId>, RuleKind> body_list() {
    if (tok_.kind != Tok::atom) fail(std::string("empty body: expected atom, found ") + describe(tok_.kind));
    std::vector<AtomId> body{atoms_.intern(expect(Tok::atom).text)};
    std::optional<Tok> separator;
    while (tok_.kind == Tok::comma || tok_.kind == Tok::semicolon) {
      if (separator && *separator != tok_.kind) fail("cannot mix ',' and ';' in one body");
      separator = tok_.kind;
      shift();
      body.push_back(atoms_.intern(expect(Tok::atom).text));
    }
    const RuleKind kind = separator == Tok::semicolon ? RuleKind::disjunctive : RuleKind::conjunctive;
    return {std::move(body), kind};
  }

  Lexer lexer_;
  Token tok_{Tok::end, {}, 1, 1};
  AtomTable atoms_;
  std::vector<Rule> rules_;
  ConstraintSet constraints_;
};

void append_body(std::string& out, const AtomTable& atoms, const std::vector<AtomId>& body, const char* sep) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += sep;
    out += atoms.name(body[i]);
  }
}

}  // namespace

ParsedProgram parse_program(std::string_view text) { return Parser(text).run(); }

std::string serialize_program(const DefiniteProgram& p) {
  std::string out;
  for (const Rule& r : p.rules()) {
    out += p.name(r.head);
    if (!r.is_fact()) {
      out += " :- ";
      append_body(out, p.atoms(), r.body, r.is_disjunctive() ? " ; " : ", ");
    }
    out += ".\n";
  }
  return out;
}

std::string serialize_constraints(const ConstraintSet& c, const AtomTable& atoms) {
  std::string out;
  for (const auto& body : c.bodies) {
    out += ":- ";
    append_body(out, atoms, body, ", ");
    out += ".\n";
  }
  return out;
}

}  // namespace linfix
