#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aicat/json_io.hpp"

namespace aicat {

struct LambdaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------- types

struct LType;
using LTypePtr = std::shared_ptr<const LType>;

// Simple types over named finite base sets: b | unit | T*U | T->U.
struct LType {
  enum class Tag { Base, Unit, Prod, Arrow } tag = Tag::Unit;
  std::string base;  // Tag::Base
  LTypePtr a, b;     // Prod / Arrow children
};

LTypePtr lt_base(std::string name);
LTypePtr lt_unit();
LTypePtr lt_prod(LTypePtr a, LTypePtr b);
LTypePtr lt_arrow(LTypePtr a, LTypePtr b);

bool lt_equal(const LTypePtr& s, const LTypePtr& t);
std::string lt_str(const LTypePtr& t);

// s-expression type syntax: `nat`, `unit`, `(prod T U)`, `(arrow T U)`.
LTypePtr parse_ltype(const std::string& text);

// Deepest chain of Arrow constructors (unit/base = 0, nat->nat = 1, ...).
int arrow_nesting(const LTypePtr& t);

// ------------------------------------------------------------------- terms

struct LTerm;
using LTermPtr = std::shared_ptr<const LTerm>;

struct LTerm {
  enum class Tag { Var, Const, UnitVal, Pair, Proj1, Proj2, Lam, App } tag =
      Tag::UnitVal;
  std::string name;  // Var / Const / Lam binder
  LTypePtr ty;       // Lam annotation
  LTermPtr m, n;     // children
};

LTermPtr lv(std::string name);        // variable (or constant; resolved later)
LTermPtr lconst(std::string name);    // explicit constant reference
LTermPtr lunit();
LTermPtr lpair(LTermPtr a, LTermPtr b);
LTermPtr lproj1(LTermPtr a);
LTermPtr lproj2(LTermPtr a);
LTermPtr llam(std::string bound, LTypePtr ty, LTermPtr body);
LTermPtr lapp(LTermPtr f, LTermPtr arg);

std::string lterm_str(const LTermPtr& t);
int lterm_depth(const LTermPtr& t);

// s-expression term syntax: symbols, `unit`, `(pair t u)`, `(proj1 t)`,
// `(proj2 t)`, `(lam y nat t)`, `(app t u)`.
LTermPtr parse_lterm(const std::string& text);

// Capture-avoiding substitution of `body`'s free variable `var` by `repl`.
LTermPtr lterm_subst(const LTermPtr& body, const std::string& var,
                     const LTermPtr& repl);

// --------------------------------------------------------- concrete values

// Canonical element of a finite-set type: base elements by carrier index,
// pairs componentwise, functions as tables indexed by the enumeration of
// their domain.
struct SetVal {
  enum class Tag { Leaf, One, PairV, FunV } tag = Tag::One;
  std::size_t idx = 0;        // Leaf
  std::vector<SetVal> kids;   // PairV: exactly 2; FunV: one per domain element
};

bool operator==(const SetVal& a, const SetVal& b);
bool sv_less(const SetVal& a, const SetVal& b);

// ---------------------------------------------------------------- signature

struct Signature {
  struct Constant {
    LTypePtr ty;
    SetVal val;
  };
  // base name -> element labels; the label position is the carrier index and
  // the base-poset order.
  std::map<std::string, std::vector<std::string>> bases;
  std::map<std::string, Constant> constants;

  // nat = {0..3} with capped arithmetic: succ, pred, plus (uncurried),
  // cplus (curried), iszero, zero, two.
  static Signature standard();
};

// JSON signature: {"bases":{"nat":["0","1","2","3"]},
//                  "constants":{"succ":{"type":"(arrow nat nat)",
//                                       "value":{"table":["1","2","3","3"]}}}}
// Values by type: base -> label string, unit -> "*", prod -> [v1,v2],
// arrow -> {"table":[...]} indexed by the domain enumeration.
Signature signature_of_json(const Json& j);
Json signature_json(const Signature& sig);

// ------------------------------------------------------------ set semantics

class SetSem {
 public:
  explicit SetSem(Signature sig, std::size_t space_cap = 1 << 16);

  const Signature& sig() const { return sig_; }

  std::size_t space_size(const LTypePtr& t);
  const std::vector<SetVal>& enumerate(const LTypePtr& t);
  std::size_t index_of(const LTypePtr& t, const SetVal& v);
  std::string value_str(const LTypePtr& t, const SetVal& v);
  SetVal value_of_json(const LTypePtr& t, const Json& j);
  Json value_json(const LTypePtr& t, const SetVal& v);

  // Table lookup: f has type t (an Arrow), arg its domain type.
  SetVal apply(const LTypePtr& t, const SetVal& f, const SetVal& arg);

 private:
  Signature sig_;
  std::size_t space_cap_;
  std::map<std::string, std::vector<SetVal>> enum_cache_;
};

// ----------------------------------------------------------- typed elaboration

struct TypedTerm {
  LTermPtr term;  // elaborated: free symbols resolved to Var/Const
  LTypePtr ctx;   // context variable's type
  std::string ctx_name;
  LTypePtr type;  // result type
  std::map<const LTerm*, LTypePtr> types;  // type of every subterm
};

// Resolves symbols (context variable and binders shadow constants), checks
// STLC typing in the single-variable context, returns the elaborated tree.
TypedTerm typecheck(const LTermPtr& m, const std::string& ctx_name,
                    const LTypePtr& ctx_type, const Signature& sig);

// Standard environment-based CCC evaluation; functions are materialized as
// finite tables over the domain enumeration.
SetVal eval_set(SetSem& ss, const TypedTerm& tm, const SetVal& input);

// ----------------------------------------------------------- abstract values

// Element of the lifted abstract poset: intervals over carrier indices at
// base types, the one-point poset at unit, componentwise pairs, and
// monotone tables indexed by the enumeration of the abstract domain poset.
struct AbsVal {
  enum class Tag { Base, One, PairA, FunA } tag = Tag::One;
  bool bot = false;              // Base: empty interval
  std::size_t lo = 0, hi = 0;    // Base: index interval
  std::vector<AbsVal> kids;      // PairA: 2; FunA: one per abstract dom element
};

bool operator==(const AbsVal& a, const AbsVal& b);
bool av_less(const AbsVal& a, const AbsVal& b);
std::string av_str(const AbsVal& a);
Json av_json(const AbsVal& a);

// Bitset over a concrete enumeration.
using SetBits = std::vector<std::uint64_t>;

SetBits bits_make(std::size_t n);
bool bits_get(const SetBits& b, std::size_t i);
void bits_set(SetBits& b, std::size_t i);
bool bits_subset(const SetBits& a, const SetBits& b);
std::size_t bits_count(const SetBits& b);

// --------------------------------------------------------- abstract semantics

struct InsertionReport {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<AbsVal> witness;  // a with alpha(gamma(a)) != a
};

struct AdjunctionReport {
  bool holds = true;
  std::size_t checked = 0;
  bool exhaustive = false;
  std::string detail;
};

struct MonotoneReport {
  bool holds = true;
  std::size_t checked = 0;
  std::string detail;
};

class AbsSem {
 public:
  AbsSem(std::shared_ptr<SetSem> ss, std::size_t poset_cap = 200000);

  SetSem& sets() { return *ss_; }

  // Poset A(t).
  bool leq(const LTypePtr& t, const AbsVal& a, const AbsVal& b);
  AbsVal bottom(const LTypePtr& t);
  AbsVal top(const LTypePtr& t);
  const std::vector<AbsVal>& enumerate(const LTypePtr& t);  // cap-guarded
  std::size_t index_of(const LTypePtr& t, const AbsVal& a);
  std::size_t poset_size(const LTypePtr& t);

  // The lifted Galois connection at t, against subsets of the concrete
  // enumeration of t.
  SetBits gamma(const LTypePtr& t, const AbsVal& a);
  AbsVal alpha(const LTypePtr& t, const SetBits& u);
  // Abstraction of an explicit finite set of values; unlike alpha it never
  // enumerates a concrete function space, so it works at large arrow types.
  AbsVal alpha_values(const LTypePtr& t, const std::vector<const SetVal*>& vs);
  AbsVal alpha_singleton(const LTypePtr& t, const SetVal& v);
  // True when the concretization of `a` is the empty set (decided
  // structurally, without enumerating concrete values).
  bool empty_gamma(const LTypePtr& t, const AbsVal& a);

  // Law checks at one type.
  InsertionReport check_insertion(const LTypePtr& t);
  AdjunctionReport check_adjunction(const LTypePtr& t, std::size_t max_sets,
                                    std::uint64_t seed);
  MonotoneReport check_monotone(const LTypePtr& t, const AbsVal& f,
                                std::size_t pair_cap = 1 << 20);

  // alpha(image under eval_set of gamma(a)).
  AbsVal csemg(const TypedTerm& tm, const AbsVal& a);

  // Inductive abstract evaluation: constants seeded by alpha of their
  // denotation singleton, lambdas as closures, applications direct; the
  // result is materialized to a table when its type is an arrow.
  AbsVal psem_apply(const TypedTerm& tm, const AbsVal& a);
  // Seed table for one constant (cached).
  const AbsVal& constant_seed(const std::string& name);

 private:
  struct RtVal;
  RtVal eval_abs(const TypedTerm& tm, const LTerm* node,
                 const std::map<std::string, RtVal>& env);
  AbsVal materialize(const LTypePtr& t, const RtVal& v);
  AbsVal norm_pair(const LTypePtr& t, AbsVal a);

  std::shared_ptr<SetSem> ss_;
  std::size_t poset_cap_;
  std::map<std::string, std::vector<AbsVal>> enum_cache_;
  std::map<std::string, std::map<std::string, std::size_t>> index_cache_;
  std::map<std::string, AbsVal> seed_cache_;
};

// --------------------------------------------------------------- the corpus

struct LambdaCase {
  std::string name;
  std::string ctx_name;
  LTypePtr ctx;
  LTermPtr term;  // unelaborated; typecheck against a signature before use
};

// >= 30 closed-over-one-variable terms whose context and result types are
// base, unit, or product types (identity, pairing, projections, constants,
// one- and two-argument applications, a higher-order application).
std::vector<LambdaCase> lambda_corpus();
// Additional terms whose result type is an arrow (lambda literals,
// partial applications).
std::vector<LambdaCase> lambda_corpus_extended();

// Distinct ctx/result types over the corpus: the sites where the Galois
// connection is exercised by csemg.
std::vector<LTypePtr> corpus_types(const std::vector<LambdaCase>& corpus,
                                   const Signature& sig);

struct LambdaLawReport {
  std::string what;
  std::size_t checks = 0;
  bool ok = true;
  std::string violation;
};

// csemg(M, a) <= psem(M)(a) for every corpus term and every abstract input.
LambdaLawReport check_lambda_dominance(AbsSem& as,
                                       const std::vector<LambdaCase>& corpus,
                                       const Signature& sig);
// csemg(M2 after M1, a) <= csemg(M2, csemg(M1, a)) over substitution-composable
// corpus pairs.
LambdaLawReport check_lambda_oplax(AbsSem& as,
                                   const std::vector<LambdaCase>& corpus,
                                   const Signature& sig);
// alpha_t(gamma_t(a)) == a at every corpus ctx/result type.
LambdaLawReport check_lambda_normality(AbsSem& as,
                                       const std::vector<LambdaCase>& corpus,
                                       const Signature& sig);
// Every materialized psem table over the corpus is order-preserving.
LambdaLawReport check_lambda_monotone(AbsSem& as,
                                      const std::vector<LambdaCase>& corpus,
                                      const Signature& sig);

}  // namespace aicat
