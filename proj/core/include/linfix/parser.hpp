#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linfix/program.hpp"

namespace linfix {

/// Program text format, one statement per '.' terminator:
///
///     % comment to end of line
///     p.                  fact
///     h :- b1, b2.        conjunctive rule
///     h :- b1 ; b2.       disjunctive rule (',' and ';' may not be mixed)
///     :- b1, b2.          constraint
///
/// Atom names match [a-z][A-Za-z0-9_]*.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParsedProgram {
  DefiniteProgram program;
  ConstraintSet constraints;
};

ParsedProgram parse_program(std::string_view text);

std::string serialize_program(const DefiniteProgram& p);
std::string serialize_constraints(const ConstraintSet& c, const AtomTable& atoms);

}  // namespace linfix
