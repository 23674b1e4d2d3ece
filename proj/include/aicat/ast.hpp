#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>

#include "aicat/rational.hpp"

namespace aicat {

// ---------------------------------------------------------------- arithmetic

struct AExpr;
using AExprPtr = std::shared_ptr<const AExpr>;

enum class AOp { Add, Sub, Mul };

struct ALit {
  std::int64_t value;
};
struct AVar {
  std::string name;
};
struct ABin {
  AOp op;
  AExprPtr lhs, rhs;
};

struct AExpr {
  std::variant<ALit, AVar, ABin> node;
};

AExprPtr lit(std::int64_t v);
AExprPtr var(std::string name);
AExprPtr abin(AOp op, AExprPtr l, AExprPtr r);

// ------------------------------------------------------------------- boolean

struct BExpr;
using BExprPtr = std::shared_ptr<const BExpr>;

enum class CmpOp { Le, Lt, Eq };

struct BTrue {};
struct BFalse {};
struct BCmp {
  CmpOp op;
  AExprPtr lhs, rhs;
};
struct BNot {
  BExprPtr arg;
};
struct BAnd {
  BExprPtr lhs, rhs;
};
struct BOr {
  BExprPtr lhs, rhs;
};

struct BExpr {
  std::variant<BTrue, BFalse, BCmp, BNot, BAnd, BOr> node;
};

BExprPtr btrue();
BExprPtr bfalse();
BExprPtr bcmp(CmpOp op, AExprPtr l, AExprPtr r);
BExprPtr bnot(BExprPtr b);
BExprPtr band(BExprPtr l, BExprPtr r);
BExprPtr bor(BExprPtr l, BExprPtr r);

// ------------------------------------------------------------------ programs

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct PSkip {};
struct PSeq {
  ProgramPtr first, second;
};
struct PAssign {
  std::string var;
  AExprPtr expr;
};
// x := havoc(lo, hi): nondeterministic choice from [lo..hi] (powerset only).
struct PHavoc {
  std::string var;
  std::int64_t lo, hi;
};
// x := flip(p, e1, e2): e1 with probability p, e2 with 1-p (subdist only).
struct PFlip {
  std::string var;
  Rational prob;
  AExprPtr left, right;
};
struct PDiverge {};
struct PIf {
  BExprPtr cond;
  ProgramPtr then_branch, else_branch;
};
struct PWhile {
  BExprPtr cond;
  ProgramPtr body;
};
struct PAddVar {
  std::string var;
};
struct PDelVar {
  std::string var;
};

struct Program {
  std::variant<PSkip, PSeq, PAssign, PHavoc, PFlip, PDiverge, PIf, PWhile,
               PAddVar, PDelVar>
      node;
};

ProgramPtr skip();
ProgramPtr seq(ProgramPtr a, ProgramPtr b);
ProgramPtr assign(std::string v, AExprPtr e);
ProgramPtr havoc(std::string v, std::int64_t lo, std::int64_t hi);
ProgramPtr flip(std::string v, Rational p, AExprPtr l, AExprPtr r);
ProgramPtr diverge();
ProgramPtr ifelse(BExprPtr b, ProgramPtr t, ProgramPtr e);
ProgramPtr whileloop(BExprPtr b, ProgramPtr body);
ProgramPtr addvar(std::string v);
ProgramPtr delvar(std::string v);

// --------------------------------------------------------------- operations

// Canonical one-line rendering; parse(print(p)) == p after normalization.
std::string print(const AExpr& e);
std::string print(const BExpr& b);
std::string print(const Program& p);
// Multi-line rendering with indentation (for report output).
std::string print_pretty(const Program& p);

// Sequencing normal form: right-associated, with skip units dropped (the
// empty composite is skip itself).  Two programs denote equal morphisms of
// the sequencing monoid iff their normal forms coincide.
ProgramPtr normalize(const ProgramPtr& p);

// Normalized sequential composition p ; q.
ProgramPtr seq_compose(const ProgramPtr& p, const ProgramPtr& q);

std::size_t ast_size(const AExpr& e);
std::size_t ast_size(const BExpr& b);
std::size_t ast_size(const Program& p);

void collect_vars(const AExpr& e, std::set<std::string>& out);
void collect_vars(const BExpr& b, std::set<std::string>& out);
// All variables mentioned anywhere in p (reads, writes, scope ops).
std::set<std::string> vars_of(const Program& p);
// Variables assigned (by :=, havoc or flip) anywhere in p.
std::set<std::string> assigned_vars(const Program& p);

bool equal(const AExpr& a, const AExpr& b);
bool equal(const BExpr& a, const BExpr& b);
// Structural equality of normal forms.
bool equal(const ProgramPtr& a, const ProgramPtr& b);

}  // namespace aicat
