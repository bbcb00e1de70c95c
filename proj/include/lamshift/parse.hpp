#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lamshift/syntax.hpp"

namespace lamshift {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line(line), column(column) {}
};

// Surface grammar:
//   term ::= '\' var '.' term | 'shift' var '.' term | app
//   app  ::= atom { atom }                 (left-associative)
//   atom ::= var | '(' term ')' | '<' term '>'
//   var  ::= [a-zA-Z_][a-zA-Z0-9_']*       (not the keyword `shift`)
// '--' starts a comment running to end of line. Printed terms may contain
// supply-generated variables `base%index`; the lexer accepts those so that
// printed output parses back.
Term parse(std::string_view src);

std::string print(const Term& t);
// Contexts print as the term with the hole rendered as `@`.
std::string print(const EvalCtx& e);
std::string print(const PureCtx& f);

}  // namespace lamshift
