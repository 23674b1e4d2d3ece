#pragma once

#include <optional>
#include <vector>

#include "aicat/ast.hpp"
#include "aicat/densem.hpp"
#include "aicat/predicate.hpp"

namespace aicat {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structure map collapsing an effect-load of truth values to one truth
// value.  The shipped pairs, each validated on construction against the
// algebra axioms and binary/empty meet preservation:
//
//   (powerset, Bool2)   true iff no member is false      (demonic reading)
//   (maybe,    Bool2)   divergence counts as true, else identity
//   (powerset, RInfLe)  numeric inf over members (inf {} = oo)
//   (powerset, RInfGe)  numeric sup over members (sup {} = 0)
struct EMAlgebra {
  MonadKind monad;
  OmegaKind omega;

  static EMAlgebra make(MonadKind m, OmegaKind o);

  TruthLattice lattice() const { return TruthLattice{omega}; }

  OmegaVal apply_maybe(const std::optional<OmegaVal>& v) const;
  OmegaVal apply_pow(const std::vector<OmegaVal>& vs) const;  // multiset
};

// Validation helpers (also exposed for the test suites).
// Checks o(unit w) == w and o(T o(tt)) == o(flatten tt) on exhaustive small
// samples of iterated effect values.
bool check_em_axioms(const EMAlgebra& a, std::string* diag = nullptr);
// Checks that phi |-> o . T(phi) preserves binary meets and the empty meet
// on all functions from a 3-point carrier into a sample of truth values.
bool check_meet_preservation(const EMAlgebra& a, std::string* diag = nullptr);

// Predicate transformers induced by an algebra and a materialized arrow.
//
// wp(f, post)(x) = o(T(post)(f(x))): the weakest precondition; preserves
// meets pointwise.  sp(f, -) is its left adjoint, the strongest
// postcondition; in closed form
//   sp(f, pre)(y) = join of { pre(x) : y in f(x) }   (empty join = bottom).
Predicate wp(const EMAlgebra& a, const ArrowTable& f, const Predicate& post);
Predicate sp(const EMAlgebra& a, const ArrowTable& f, const Predicate& pre);

// Two-valued guard observation: top where evaluating b yields `value`,
// bottom elsewhere.
Predicate guard_predicate(const Universe& u, CarrierPtr carrier,
                          const BExpr& b, bool value, OmegaKind omega);

}  // namespace aicat
