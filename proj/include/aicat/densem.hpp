#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aicat/ast.hpp"
#include "aicat/memory.hpp"
#include "aicat/monad.hpp"
#include "aicat/values.hpp"

namespace aicat {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DenoteOptions {
  long long fuel = 100000;  // per-loop budget on the machine universe
  Rational eps = Rational(1, 1000000000);
  std::size_t dist_cap = 10000;      // subdist fixpoint iteration cap
  std::size_t kleene_cap = 1000000;  // safety cap for exact fixpoints
  std::size_t havoc_cap = 65536;     // largest materializable havoc range
};

// An effectful interpreter for the while language: programs denote Kleisli
// arrows state -> T(state) for the configured monad, with loops as least
// fixed points in the definedness order.
struct DenSem {
  MonadKind monad = MonadKind::Maybe;
  Universe universe = Universe::machine();
  DenoteOptions opts;
};

struct DenoteStats {
  bool approx = false;          // a subdist loop was cut at eps or the cap
  long long loop_iterations = 0;  // total fixpoint / operational iterations
};

Value eval_aexpr(const Universe& u, const AExpr& e, const Memory& m);
bool eval_bexpr(const Universe& u, const BExpr& b, const Memory& m);

// Run p from state m.  Loop strategy depends on monad and universe:
//   maybe/Ring      operational, with cycle detection (revisit => bottom)
//   maybe/Machine   operational under fuel; exhaustion is an error, not bottom
//   powerset/Ring   exact fixpoint iteration over the finite state space
//   subdist/Ring    fixpoint iteration to eps / cap (flagged in stats)
//   pow,dist/Machine  bounded unrolling under fuel (testing aid)
// Scope operations (addvar/delvar) are rejected; use denote_scoped.
MonadValue denote(const DenSem& ds, const Program& p, const Memory& m,
                  DenoteStats* stats = nullptr);

// As denote, but with addvar/delvar enabled: addvar x extends the state with
// x = 0 (error if present), delvar x drops x (error if absent).
MonadValue denote_scoped(const DenSem& ds, const Program& p, const Memory& m,
                         DenoteStats* stats = nullptr);

// A Kleisli arrow materialized over a finite state space.
struct ArrowTable {
  CarrierPtr carrier;
  MonadKind kind = MonadKind::Maybe;
  std::vector<MonadValue> rows;  // rows[i] = f(carrier->memories[i])
  bool approx = false;
};

ArrowTable tabulate(const DenSem& ds, const Program& p, CarrierPtr carrier);

}  // namespace aicat
