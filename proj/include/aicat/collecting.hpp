#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aicat/algebra.hpp"
#include "aicat/densem.hpp"
#include "aicat/predicate.hpp"

namespace aicat {

// Property transformers over a finite state space: programs act on
// predicates by strongest postcondition.  Two independent routes are
// provided and must agree:
//
//   collect_direct     sp applied to the fully denoted program arrow
//   collect_inductive  structural recursion (guard meets, branch joins,
//                      loops as least fixed points of the loop functional)
struct CollectingSem {
  DenSem den;
  EMAlgebra alg;
  CarrierPtr carrier;

  // caches keyed by printed program text
  mutable std::map<std::string, ArrowTable> arrow_cache;
  mutable std::map<std::string, std::vector<std::uint64_t>> mask_cache;
  mutable std::map<std::string, std::uint64_t> guard_mask_cache;

  static CollectingSem make(MonadKind monad, OmegaKind omega, Universe u,
                            CarrierPtr carrier);

  bool mask_capable() const {
    return alg.omega == OmegaKind::Bool2 && carrier->size() <= 64;
  }
};

struct CollectResult {
  Predicate post;
  bool approx = false;  // a loop fixpoint was cut off before stabilizing
};

// Materialized program arrow over the carrier (cached).
const ArrowTable& program_arrow(const CollectingSem& cs, const ProgramPtr& p);

CollectResult collect_direct(const CollectingSem& cs, const ProgramPtr& p,
                             const Predicate& pre);
CollectResult collect_inductive(const CollectingSem& cs, const ProgramPtr& p,
                                const Predicate& pre);

// Property-of-effect-values semantics: image of a set of effect values under
// the Kleisli extension of the program arrow.
std::set<MonadValue> hyper_direct_image(const CollectingSem& cs,
                                        const ProgramPtr& p,
                                        const std::set<MonadValue>& props);

// ---- packed fast path (Bool2 over carriers of <= 64 states) ----

// Arrow rows as successor bit-masks (cached).
const std::vector<std::uint64_t>& mask_arrow(const CollectingSem& cs,
                                             const ProgramPtr& p);
std::uint64_t sp_mask(const std::vector<std::uint64_t>& rows, std::uint64_t pre);
std::uint64_t wp_mask(const std::vector<std::uint64_t>& rows, std::uint64_t post);
std::uint64_t guard_mask(const CollectingSem& cs, const BExpr& b, bool value);
std::uint64_t collect_direct_mask(const CollectingSem& cs, const ProgramPtr& p,
                                  std::uint64_t pre);
std::uint64_t collect_inductive_mask(const CollectingSem& cs, const ProgramPtr& p,
                                     std::uint64_t pre);

}  // namespace aicat
