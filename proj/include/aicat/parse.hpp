#pragma once

#include <stdexcept>
#include <string>

#include "aicat/ast.hpp"

namespace aicat {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int ln, int cl)
      : std::runtime_error("parse error at " + std::to_string(ln) + ":" +
                           std::to_string(cl) + ": " + msg),
        line(ln),
        col(cl) {}
};

// Parse program text.  Grammar:
//
//   prog  ::= stmt (";" stmt)*
//   stmt  ::= "skip" | "diverge"
//           | ident ":=" aexpr
//           | ident ":=" "havoc" "(" int "," int ")"
//           | ident ":=" "flip" "(" rat "," aexpr "," aexpr ")"
//           | "if" bexpr "{" prog "}" "else" "{" prog "}"
//           | "while" bexpr "{" prog "}"
//           | "addvar" ident | "delvar" ident
//   aexpr ::= term (("+"|"-") term)* ; term ::= factor ("*" factor)*
//   factor::= int | "-" factor | ident | "(" aexpr ")"
//   bexpr ::= bor; bor ::= band ("or" band)*; band ::= bneg ("and" bneg)*
//   bneg  ::= "not" bneg | "true" | "false" | "(" bexpr ")"
//           | aexpr ("<="|"<"|"=") aexpr
//   rat   ::= int ["/" int]
//
// "#" starts a line comment.  Keywords are reserved and rejected as
// identifiers.  The result is returned in sequencing normal form.
ProgramPtr parse_program(const std::string& text);

AExprPtr parse_aexpr_str(const std::string& text);
BExprPtr parse_bexpr_str(const std::string& text);

ProgramPtr parse_file(const std::string& path);

}  // namespace aicat
