#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aicat/memory.hpp"
#include "aicat/omega.hpp"

namespace aicat {

// A truth-valued property of states: one omega value per memory of a finite
// carrier, in carrier enumeration order.  The pointwise lattice structure is
// inherited from the truth lattice.
struct Predicate {
  CarrierPtr carrier;
  OmegaKind omega = OmegaKind::Bool2;
  std::vector<OmegaVal> vals;

  TruthLattice lattice() const { return TruthLattice{omega}; }

  static Predicate bottom(CarrierPtr c, OmegaKind k);
  static Predicate top(CarrierPtr c, OmegaKind k);
  // Bool2 characteristic predicate of a single state.
  static Predicate singleton(CarrierPtr c, const Memory& m, OmegaKind k);
  static Predicate of_fn(CarrierPtr c, OmegaKind k,
                         const std::function<OmegaVal(const Memory&)>& f);

  const OmegaVal& at(const Memory& m) const {
    return vals[carrier->index_of(m)];
  }

  bool same_space(const Predicate& o) const {
    return omega == o.omega && *carrier == *o.carrier;
  }

  bool operator==(const Predicate& o) const {
    return omega == o.omega && *carrier == *o.carrier && vals == o.vals;
  }
};

bool pred_leq(const Predicate& a, const Predicate& b);
Predicate pred_meet(const Predicate& a, const Predicate& b);
Predicate pred_join(const Predicate& a, const Predicate& b);

// Bool2 predicates on carriers of up to 64 states pack into one word;
// this is the fast path for the exhaustive law sweeps.
std::uint64_t pred_to_mask(const Predicate& p);
Predicate pred_from_mask(CarrierPtr c, std::uint64_t mask);

std::string pred_str(const Predicate& p);

}  // namespace aicat
