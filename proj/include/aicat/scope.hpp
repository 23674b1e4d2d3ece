#pragma once

#include <optional>
#include <set>
#include <string>

#include "aicat/ast.hpp"

namespace aicat {

using VarSet = std::set<std::string>;

struct ScopeResult {
  bool ok = false;
  VarSet out;         // variables in scope after the program
  std::string error;  // set when !ok
};

// Scope discipline for variable-managing programs, with programs as arrows
// between variable sets:
//
//   skip, diverge         : X -> X
//   x := e / havoc / flip : X -> X   requires x and all read vars in X
//   if b { p } else { q } : X -> X'  requires vars(b) in X and both branches
//                                    agreeing on X'
//   while b { p }         : X -> X   body must preserve X
//   addvar x              : X -> X + {x}   requires x not in X
//   delvar x              : X + {x} -> X   requires x in X
ScopeResult check_scoped(const Program& p, const VarSet& in);

// Composition with interface validation: the output scope of p must be
// defined (p well-scoped from `in`) and q is checked from that scope.
ScopeResult check_scoped_seq(const Program& p, const Program& q,
                             const VarSet& in);

}  // namespace aicat
