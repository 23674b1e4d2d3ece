#include "aicat/ast.hpp"

#include <sstream>
#include <vector>

namespace aicat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

AExprPtr lit(std::int64_t v) { return std::make_shared<AExpr>(AExpr{ALit{v}}); }
AExprPtr var(std::string n) {
  return std::make_shared<AExpr>(AExpr{AVar{std::move(n)}});
}
AExprPtr abin(AOp op, AExprPtr l, AExprPtr r) {
  return std::make_shared<AExpr>(AExpr{ABin{op, std::move(l), std::move(r)}});
}

BExprPtr btrue() { return std::make_shared<BExpr>(BExpr{BTrue{}}); }
BExprPtr bfalse() { return std::make_shared<BExpr>(BExpr{BFalse{}}); }
BExprPtr bcmp(CmpOp op, AExprPtr l, AExprPtr r) {
  return std::make_shared<BExpr>(BExpr{BCmp{op, std::move(l), std::move(r)}});
}
BExprPtr bnot(BExprPtr b) {
  return std::make_shared<BExpr>(BExpr{BNot{std::move(b)}});
}
BExprPtr band(BExprPtr l, BExprPtr r) {
  return std::make_shared<BExpr>(BExpr{BAnd{std::move(l), std::move(r)}});
}
BExprPtr bor(BExprPtr l, BExprPtr r) {
  return std::make_shared<BExpr>(BExpr{BOr{std::move(l), std::move(r)}});
}

ProgramPtr skip() { return std::make_shared<Program>(Program{PSkip{}}); }
ProgramPtr seq(ProgramPtr a, ProgramPtr b) {
  return std::make_shared<Program>(Program{PSeq{std::move(a), std::move(b)}});
}
ProgramPtr assign(std::string v, AExprPtr e) {
  return std::make_shared<Program>(Program{PAssign{std::move(v), std::move(e)}});
}
ProgramPtr havoc(std::string v, std::int64_t lo, std::int64_t hi) {
  return std::make_shared<Program>(Program{PHavoc{std::move(v), lo, hi}});
}
ProgramPtr flip(std::string v, Rational p, AExprPtr l, AExprPtr r) {
  return std::make_shared<Program>(
      Program{PFlip{std::move(v), p, std::move(l), std::move(r)}});
}
ProgramPtr diverge() { return std::make_shared<Program>(Program{PDiverge{}}); }
ProgramPtr ifelse(BExprPtr b, ProgramPtr t, ProgramPtr e) {
  return std::make_shared<Program>(
      Program{PIf{std::move(b), std::move(t), std::move(e)}});
}
ProgramPtr whileloop(BExprPtr b, ProgramPtr body) {
  return std::make_shared<Program>(Program{PWhile{std::move(b), std::move(body)}});
}
ProgramPtr addvar(std::string v) {
  return std::make_shared<Program>(Program{PAddVar{std::move(v)}});
}
ProgramPtr delvar(std::string v) {
  return std::make_shared<Program>(Program{PDelVar{std::move(v)}});
}

// ------------------------------------------------------------------ printing

namespace {

int prec(AOp op) { return op == AOp::Mul ? 2 : 1; }

// Parenthesize children only where the grammar requires it (left-assoc ops).
void print_aexpr(const AExpr& e, std::ostream& os, int parent, bool right) {
  std::visit(overloaded{
                 [&](const ALit& l) {
                   if (l.value < 0)
                     os << "(" << l.value << ")";  // no unary minus in grammar
                   else
                     os << l.value;
                 },
                 [&](const AVar& v) { os << v.name; },
                 [&](const ABin& b) {
                   int p = prec(b.op);
                   bool need = p < parent || (p == parent && right);
                   if (need) os << "(";
                   print_aexpr(*b.lhs, os, p, false);
                   os << (b.op == AOp::Add ? " + " : b.op == AOp::Sub ? " - " : " * ");
                   print_aexpr(*b.rhs, os, p, true);
                   if (need) os << ")";
                 },
             },
             e.node);
}

// Precedence: not > and > or.
void print_bexpr(const BExpr& b, std::ostream& os, int parent) {
  std::visit(overloaded{
                 [&](const BTrue&) { os << "true"; },
                 [&](const BFalse&) { os << "false"; },
                 [&](const BCmp& c) {
                   print_aexpr(*c.lhs, os, 0, false);
                   os << (c.op == CmpOp::Le ? " <= " : c.op == CmpOp::Lt ? " < " : " = ");
                   print_aexpr(*c.rhs, os, 0, false);
                 },
                 [&](const BNot& n) {
                   os << "not ";
                   print_bexpr(*n.arg, os, 3);
                 },
                 [&](const BAnd& a) {
                   if (parent > 2) os << "(";
                   print_bexpr(*a.lhs, os, 2);
                   os << " and ";
                   print_bexpr(*a.rhs, os, 2);
                   if (parent > 2) os << ")";
                 },
                 [&](const BOr& o) {
                   if (parent > 1) os << "(";
                   print_bexpr(*o.lhs, os, 1);
                   os << " or ";
                   print_bexpr(*o.rhs, os, 1);
                   if (parent > 1) os << ")";
                 },
             },
             b.node);
}

void print_prog(const Program& p, std::ostream& os, int indent, bool pretty) {
  auto pad = [&] {
    if (pretty)
      for (int i = 0; i < indent; ++i) os << "  ";
  };
  auto nl = [&](const char* flat) { os << (pretty ? "\n" : flat); };
  std::visit(
      overloaded{
          [&](const PSkip&) { pad(); os << "skip"; },
          [&](const PSeq& s) {
            print_prog(*s.first, os, indent, pretty);
            os << ";";
            nl(" ");
            print_prog(*s.second, os, indent, pretty);
          },
          [&](const PAssign& a) {
            pad();
            os << a.var << " := ";
            print_aexpr(*a.expr, os, 0, false);
          },
          [&](const PHavoc& h) {
            pad();
            os << h.var << " := havoc(" << h.lo << ", " << h.hi << ")";
          },
          [&](const PFlip& f) {
            pad();
            os << f.var << " := flip(" << rat_str(f.prob) << ", ";
            print_aexpr(*f.left, os, 0, false);
            os << ", ";
            print_aexpr(*f.right, os, 0, false);
            os << ")";
          },
          [&](const PDiverge&) { pad(); os << "diverge"; },
          [&](const PIf& i) {
            pad();
            os << "if ";
            print_bexpr(*i.cond, os, 0);
            os << " {";
            nl(" ");
            print_prog(*i.then_branch, os, indent + 1, pretty);
            nl(" ");
            pad();
            os << "} else {";
            nl(" ");
            print_prog(*i.else_branch, os, indent + 1, pretty);
            nl(" ");
            pad();
            os << "}";
          },
          [&](const PWhile& w) {
            pad();
            os << "while ";
            print_bexpr(*w.cond, os, 0);
            os << " {";
            nl(" ");
            print_prog(*w.body, os, indent + 1, pretty);
            nl(" ");
            pad();
            os << "}";
          },
          [&](const PAddVar& a) { pad(); os << "addvar " << a.var; },
          [&](const PDelVar& d) { pad(); os << "delvar " << d.var; },
      },
      p.node);
}

}  // namespace

std::string print(const AExpr& e) {
  std::ostringstream os;
  print_aexpr(e, os, 0, false);
  return os.str();
}

std::string print(const BExpr& b) {
  std::ostringstream os;
  print_bexpr(b, os, 0);
  return os.str();
}

std::string print(const Program& p) {
  std::ostringstream os;
  print_prog(p, os, 0, false);
  return os.str();
}

std::string print_pretty(const Program& p) {
  std::ostringstream os;
  print_prog(p, os, 0, true);
  return os.str();
}

// ------------------------------------------------------------- normalization

namespace {

void flatten(const ProgramPtr& p, std::vector<ProgramPtr>& out) {
  if (const auto* s = std::get_if<PSeq>(&p->node)) {
    flatten(s->first, out);
    flatten(s->second, out);
    return;
  }
  ProgramPtr n = normalize(p);
  if (std::holds_alternative<PSkip>(n->node)) return;  // unit of sequencing
  out.push_back(n);
}

}  // namespace

ProgramPtr normalize(const ProgramPtr& p) {
  if (std::holds_alternative<PSeq>(p->node)) {
    std::vector<ProgramPtr> parts;
    flatten(p, parts);
    if (parts.empty()) return skip();
    ProgramPtr acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
      acc = seq(*it, acc);
    return acc;
  }
  if (const auto* i = std::get_if<PIf>(&p->node))
    return ifelse(i->cond, normalize(i->then_branch), normalize(i->else_branch));
  if (const auto* w = std::get_if<PWhile>(&p->node))
    return whileloop(w->cond, normalize(w->body));
  return p;
}

ProgramPtr seq_compose(const ProgramPtr& p, const ProgramPtr& q) {
  return normalize(seq(p, q));
}

// -------------------------------------------------------------------- sizing

std::size_t ast_size(const AExpr& e) {
  return std::visit(
      overloaded{[](const ALit&) -> std::size_t { return 1; },
                 [](const AVar&) -> std::size_t { return 1; },
                 [](const ABin& b) -> std::size_t {
                   return 1 + ast_size(*b.lhs) + ast_size(*b.rhs);
                 }},
      e.node);
}

std::size_t ast_size(const BExpr& b) {
  return std::visit(
      overloaded{[](const BTrue&) -> std::size_t { return 1; },
                 [](const BFalse&) -> std::size_t { return 1; },
                 [](const BCmp&) -> std::size_t { return 1; },
                 [](const BNot& n) -> std::size_t { return 1 + ast_size(*n.arg); },
                 [](const BAnd& a) -> std::size_t {
                   return 1 + ast_size(*a.lhs) + ast_size(*a.rhs);
                 },
                 [](const BOr& o) -> std::size_t {
                   return 1 + ast_size(*o.lhs) + ast_size(*o.rhs);
                 }},
      b.node);
}

std::size_t ast_size(const Program& p) {
  return std::visit(
      overloaded{
          [](const PSkip&) -> std::size_t { return 1; },
          [](const PSeq& s) -> std::size_t {
            return 1 + ast_size(*s.first) + ast_size(*s.second);
          },
          [](const PAssign& a) -> std::size_t { return 1 + ast_size(*a.expr); },
          [](const PHavoc&) -> std::size_t { return 2; },
          [](const PFlip& f) -> std::size_t {
            return 2 + ast_size(*f.left) + ast_size(*f.right);
          },
          [](const PDiverge&) -> std::size_t { return 1; },
          [](const PIf& i) -> std::size_t {
            return 1 + ast_size(*i.cond) + ast_size(*i.then_branch) +
                   ast_size(*i.else_branch);
          },
          [](const PWhile& w) -> std::size_t {
            return 1 + ast_size(*w.cond) + ast_size(*w.body);
          },
          [](const PAddVar&) -> std::size_t { return 1; },
          [](const PDelVar&) -> std::size_t { return 1; }},
      p.node);
}

// ----------------------------------------------------------------- variables

void collect_vars(const AExpr& e, std::set<std::string>& out) {
  std::visit(overloaded{[](const ALit&) {},
                        [&](const AVar& v) { out.insert(v.name); },
                        [&](const ABin& b) {
                          collect_vars(*b.lhs, out);
                          collect_vars(*b.rhs, out);
                        }},
             e.node);
}

void collect_vars(const BExpr& b, std::set<std::string>& out) {
  std::visit(overloaded{[](const BTrue&) {}, [](const BFalse&) {},
                        [&](const BCmp& c) {
                          collect_vars(*c.lhs, out);
                          collect_vars(*c.rhs, out);
                        },
                        [&](const BNot& n) { collect_vars(*n.arg, out); },
                        [&](const BAnd& a) {
                          collect_vars(*a.lhs, out);
                          collect_vars(*a.rhs, out);
                        },
                        [&](const BOr& o) {
                          collect_vars(*o.lhs, out);
                          collect_vars(*o.rhs, out);
                        }},
             b.node);
}

namespace {

void collect_prog_vars(const Program& p, std::set<std::string>& out,
                       bool writes_only) {
  std::visit(
      overloaded{
          [](const PSkip&) {}, [](const PDiverge&) {},
          [&](const PSeq& s) {
            collect_prog_vars(*s.first, out, writes_only);
            collect_prog_vars(*s.second, out, writes_only);
          },
          [&](const PAssign& a) {
            out.insert(a.var);
            if (!writes_only) collect_vars(*a.expr, out);
          },
          [&](const PHavoc& h) { out.insert(h.var); },
          [&](const PFlip& f) {
            out.insert(f.var);
            if (!writes_only) {
              collect_vars(*f.left, out);
              collect_vars(*f.right, out);
            }
          },
          [&](const PIf& i) {
            if (!writes_only) collect_vars(*i.cond, out);
            collect_prog_vars(*i.then_branch, out, writes_only);
            collect_prog_vars(*i.else_branch, out, writes_only);
          },
          [&](const PWhile& w) {
            if (!writes_only) collect_vars(*w.cond, out);
            collect_prog_vars(*w.body, out, writes_only);
          },
          [&](const PAddVar& a) {
            if (!writes_only) out.insert(a.var);
          },
          [&](const PDelVar& d) {
            if (!writes_only) out.insert(d.var);
          }},
      p.node);
}

}  // namespace

std::set<std::string> vars_of(const Program& p) {
  std::set<std::string> out;
  collect_prog_vars(p, out, false);
  return out;
}

std::set<std::string> assigned_vars(const Program& p) {
  std::set<std::string> out;
  collect_prog_vars(p, out, true);
  return out;
}

// ------------------------------------------------------------------ equality

bool equal(const AExpr& a, const AExpr& b) { return print(a) == print(b); }
bool equal(const BExpr& a, const BExpr& b) { return print(a) == print(b); }
bool equal(const ProgramPtr& a, const ProgramPtr& b) {
  return print(*normalize(a)) == print(*normalize(b));
}

}  // namespace aicat
