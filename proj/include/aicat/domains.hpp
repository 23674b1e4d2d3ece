#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "aicat/ast.hpp"
#include "aicat/predicate.hpp"
#include "aicat/values.hpp"

namespace aicat {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------ value domains

// Interval abstraction of a single value.  Canonical: either bot or a
// nonempty range inside the universe's carrier.
struct Interval {
  bool bot = true;
  Value lo = 0, hi = 0;

  static Interval bottom() { return {}; }
  static Interval range(Value lo, Value hi) {
    if (lo > hi) return bottom();
    return {false, lo, hi};
  }
  bool operator==(const Interval& o) const {
    return bot == o.bot && (bot || (lo == o.lo && hi == o.hi));
  }
};

// Constant propagation: bot, a single known value, or anything.
struct ConstElem {
  enum Tag { Bot, Val, Top } tag = Bot;
  Value v = 0;

  static ConstElem bottom() { return {Bot, 0}; }
  static ConstElem constant(Value v) { return {Val, v}; }
  static ConstElem top() { return {Top, 0}; }
  bool operator==(const ConstElem& o) const {
    return tag == o.tag && (tag != Val || v == o.v);
  }
};

// Sign abstraction: a subset of {negative, zero, positive}.  Ring values are
// classified through the two's-complement style window.
struct SignSet {
  std::uint8_t bits = 0;  // 1 = neg, 2 = zero, 4 = pos

  static SignSet bottom() { return {0}; }
  static SignSet top() { return {7}; }
  static SignSet of(std::uint8_t b) { return {b}; }
  bool operator==(const SignSet& o) const = default;
};

using ValueAbs = std::variant<Interval, ConstElem, SignSet>;

enum class ValueDomainKind { Interval, Constants, Sign };

std::string value_domain_name(ValueDomainKind k);

// Operations of one value domain over one universe.
struct ValueDomain {
  ValueDomainKind kind;
  Universe universe;

  ValueAbs top() const;
  ValueAbs bottom() const;
  bool is_bottom(const ValueAbs& a) const;
  bool leq(const ValueAbs& a, const ValueAbs& b) const;
  ValueAbs meet(const ValueAbs& a, const ValueAbs& b) const;
  ValueAbs join(const ValueAbs& a, const ValueAbs& b) const;
  // Extrapolation for ascending iteration: unstable bounds jump to the
  // carrier bounds.  Join-like on the non-interval (finite-height) domains.
  ValueAbs widen(const ValueAbs& a, const ValueAbs& b) const;
  bool contains(const ValueAbs& a, Value v) const;
  ValueAbs alpha_values(const std::vector<Value>& vs) const;
  // Abstract evaluation of an expression under per-variable values; sound
  // for wrap-around (Ring) and saturating (Machine) concrete arithmetic.
  ValueAbs eval(const AExpr& e, const std::map<std::string, ValueAbs>& env) const;
  // Abstraction of a havoc range [lo..hi] (pre-normalization values).
  ValueAbs from_range(Value lo, Value hi) const;
  // All elements (Ring only): bottom plus every non-bottom element.
  std::vector<ValueAbs> enumerate() const;
  bool finite_chains() const {
    return kind != ValueDomainKind::Interval || universe.is_ring();
  }
};

// ------------------------------------------------------- abstract memories

// Non-relational store abstraction: one value abstraction per variable.
// Canonical form: any bottom component collapses the whole element.
struct AbsMem {
  bool bot = true;
  std::map<std::string, ValueAbs> comps;

  bool operator==(const AbsMem& o) const {
    return bot == o.bot && (bot || comps == o.comps);
  }
};

// An element of a (possibly product) memory domain: one abstract memory per
// product factor.  Single-factor domains use parts.size() == 1.  Products
// are kept unreduced: parts evolve independently and only concretization
// intersects them.
struct AbsElem {
  std::vector<AbsMem> parts;
  bool operator==(const AbsElem& o) const = default;
};

struct DomainSpec {
  std::vector<ValueDomainKind> parts;

  // "interval" | "constants" | "sign" | "product:interval+sign" | ...
  static DomainSpec parse(const std::string& s);
  std::string id() const;
};

class MemoryDomain {
 public:
  MemoryDomain(DomainSpec spec, Universe u, const std::set<std::string>& vars);

  const DomainSpec& spec() const { return spec_; }
  const Universe& universe() const { return universe_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::string id() const { return spec_.id(); }

  AbsElem top() const;
  AbsElem bottom() const;
  bool is_bottom(const AbsElem& a) const;
  bool leq(const AbsElem& a, const AbsElem& b) const;
  AbsElem meet(const AbsElem& a, const AbsElem& b) const;
  AbsElem join(const AbsElem& a, const AbsElem& b) const;
  AbsElem widen(const AbsElem& a, const AbsElem& b) const;

  // Transfer functions (sound over-approximations of the best transformer).
  AbsElem assign(const std::string& var, const AExpr& e, const AbsElem& a) const;
  AbsElem assign_range(const std::string& var, Value lo, Value hi,
                       const AbsElem& a) const;
  // Context-free abstraction of a guard observation; exact for comparisons
  // of a variable against a literal, top otherwise.
  AbsElem abstract_guard(const BExpr& b, bool value) const;
  AbsElem guard(const BExpr& b, bool value, const AbsElem& a) const;

  // Concretization / abstraction against Bool2 predicates over a carrier.
  std::uint64_t gamma_mask(const AbsElem& a, const MemoryCarrier& c) const;
  Predicate gamma(const AbsElem& a, CarrierPtr c) const;
  AbsElem alpha_mask(std::uint64_t mask, const MemoryCarrier& c) const;
  AbsElem alpha(const Predicate& p) const;
  AbsElem alpha_memories(const std::vector<Memory>& ms) const;

  bool finite_chains() const;
  // All elements (Ring only); throws if the count would exceed cap.
  std::vector<AbsElem> enumerate(std::size_t cap = 2000000) const;

  ValueDomain part_ops(std::size_t i) const {
    return ValueDomain{spec_.parts[i], universe_};
  }

 private:
  AbsMem mem_top(std::size_t part) const;
  AbsMem mem_assign(std::size_t part, const std::string& var, const AExpr& e,
                    const AbsMem& m) const;
  AbsMem mem_guard(std::size_t part, const BExpr& b, bool value) const;
  AbsMem canon(AbsMem m) const;

  DomainSpec spec_;
  Universe universe_;
  std::vector<std::string> vars_;
};

// The adjunction between Bool2 state predicates over a Ring carrier and a
// memory domain.  `insertion` records whether alpha . gamma = id, verified
// by enumeration at construction.
struct MemoryGalois {
  MemoryDomain dom;
  CarrierPtr carrier;
  bool insertion = false;

  static MemoryGalois make(MemoryDomain dom, CarrierPtr carrier);
};

struct GaloisCheckReport {
  bool adjunction_unit = true;    // c <= gamma(alpha(c)) on singleton sweeps
  bool adjunction_counit = true;  // alpha(gamma(a)) <= a on all elements
  bool alpha_monotone = true;
  bool gamma_monotone = true;
  bool alpha_join = true;  // alpha preserves joins of concrete predicates
  std::string detail;
  bool ok() const {
    return adjunction_unit && adjunction_counit && alpha_monotone &&
           gamma_monotone && alpha_join;
  }
};

// Brute-force law check over the full element enumeration (Ring).
GaloisCheckReport galois_check(const MemoryGalois& g, std::size_t sample_pairs = 4000,
                               std::uint64_t seed = 1);

std::string abs_elem_str(const MemoryDomain& d, const AbsElem& a);

}  // namespace aicat
