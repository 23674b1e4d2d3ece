#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aicat/memory.hpp"
#include "aicat/rational.hpp"

namespace aicat {

// The three effect carriers the semantics runs in.  Each T(states) comes
// with an omega-cpo structure ("definedness" order) in which loop semantics
// take least fixed points:
//
//   Maybe:    flat order, absent value (divergence) at the bottom
//   Powerset: finite subsets ordered by inclusion, {} at the bottom
//   Subdist:  finite-support subprobability weights, pointwise order,
//             the zero distribution at the bottom
enum class MonadKind { Maybe, Powerset, Subdist };

std::string monad_name(MonadKind k);

struct MonadValue {
  using MaybeV = std::optional<Memory>;
  using PowV = std::set<Memory>;
  using DistV = std::map<Memory, Rational>;  // positive weights, total <= 1

  std::variant<MaybeV, PowV, DistV> v;

  MonadKind kind() const { return static_cast<MonadKind>(v.index()); }

  const MaybeV& as_maybe() const { return std::get<MaybeV>(v); }
  const PowV& as_pow() const { return std::get<PowV>(v); }
  const DistV& as_dist() const { return std::get<DistV>(v); }

  static MonadValue bottom(MonadKind k);
  static MonadValue unit(MonadKind k, Memory m);
  static MonadValue pow(PowV elems);
  // Drops zero weights and validates positivity / total mass <= 1.
  static MonadValue dist(DistV weights);

  bool is_bottom() const;
  Rational total_mass() const;  // Subdist only

  bool operator==(const MonadValue&) const = default;
  bool operator<(const MonadValue& o) const { return v < o.v; }
};

std::string monad_value_str(const MonadValue& mv);

// Definedness order on T(states).
bool mv_leq(const MonadValue& a, const MonadValue& b);

// Pointwise join of two *comparable-chain* elements (used when accumulating
// ascending iterates); for Powerset this is union, for Subdist the pointwise
// max, for Maybe it requires one side to be bottom or both equal.
MonadValue mv_chain_join(const MonadValue& a, const MonadValue& b);

using KleisliFn = std::function<MonadValue(const Memory&)>;

// Kleisli extension f^#: apply f across the effect value.
MonadValue kleisli_apply(MonadKind k, const KleisliFn& f, const MonadValue& mv);

// Kleisli composition g after f.
KleisliFn kleisli_compose(MonadKind k, const KleisliFn& g, const KleisliFn& f);

struct LubResult {
  MonadValue value;
  bool exact = true;   // false when cut off by tolerance or cap
  std::string error;   // non-empty when the input is not an ascending chain
  bool ok() const { return error.empty(); }
};

// Least upper bound of an ascending chain given as a finite prefix of an
// eventually-constant omega-chain.  Exact iff the prefix has visibly
// stabilized (last two entries equal, or length < 2 for the constant chain).
LubResult chain_lub(const std::vector<MonadValue>& chain);

// Least upper bound of a lazily generated ascending chain.  Pulls elements
// until two consecutive ones are equal (exact), the Subdist total-variation
// step drops below eps (approximate), or the cap is hit (approximate).
LubResult chain_lub_iterate(MonadKind k,
                            const std::function<MonadValue(std::size_t)>& elem,
                            Rational eps = Rational(1, 1000000000),
                            std::size_t cap = 10000);

// Total-variation distance between two subdistributions.
Rational total_variation(const MonadValue::DistV& a, const MonadValue::DistV& b);

}  // namespace aicat
