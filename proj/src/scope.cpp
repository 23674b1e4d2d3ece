#include "aicat/scope.hpp"

#include <variant>

namespace aicat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ScopeResult fail(std::string msg) { return ScopeResult{false, {}, std::move(msg)}; }
ScopeResult pass(VarSet out) { return ScopeResult{true, std::move(out), {}}; }

bool all_in(const std::set<std::string>& used, const VarSet& scope,
            std::string* missing) {
  for (const auto& v : used)
    if (!scope.count(v)) {
      *missing = v;
      return false;
    }
  return true;
}

}  // namespace

ScopeResult check_scoped(const Program& p, const VarSet& in) {
  return std::visit(
      overloaded{
          [&](const PSkip&) { return pass(in); },
          [&](const PDiverge&) { return pass(in); },
          [&](const PSeq& s) {
            ScopeResult r1 = check_scoped(*s.first, in);
            if (!r1.ok) return r1;
            return check_scoped(*s.second, r1.out);
          },
          [&](const PAssign& a) {
            if (!in.count(a.var))
              return fail("assignment to out-of-scope variable '" + a.var + "'");
            std::set<std::string> used;
            collect_vars(*a.expr, used);
            std::string miss;
            if (!all_in(used, in, &miss))
              return fail("read of out-of-scope variable '" + miss + "'");
            return pass(in);
          },
          [&](const PHavoc& h) {
            if (!in.count(h.var))
              return fail("assignment to out-of-scope variable '" + h.var + "'");
            return pass(in);
          },
          [&](const PFlip& f) {
            if (!in.count(f.var))
              return fail("assignment to out-of-scope variable '" + f.var + "'");
            std::set<std::string> used;
            collect_vars(*f.left, used);
            collect_vars(*f.right, used);
            std::string miss;
            if (!all_in(used, in, &miss))
              return fail("read of out-of-scope variable '" + miss + "'");
            return pass(in);
          },
          [&](const PIf& i) {
            std::set<std::string> used;
            collect_vars(*i.cond, used);
            std::string miss;
            if (!all_in(used, in, &miss))
              return fail("guard reads out-of-scope variable '" + miss + "'");
            ScopeResult rt = check_scoped(*i.then_branch, in);
            if (!rt.ok) return rt;
            ScopeResult re = check_scoped(*i.else_branch, in);
            if (!re.ok) return re;
            if (rt.out != re.out)
              return fail("branches of 'if' end in different scopes");
            return pass(rt.out);
          },
          [&](const PWhile& w) {
            std::set<std::string> used;
            collect_vars(*w.cond, used);
            std::string miss;
            if (!all_in(used, in, &miss))
              return fail("guard reads out-of-scope variable '" + miss + "'");
            ScopeResult rb = check_scoped(*w.body, in);
            if (!rb.ok) return rb;
            if (rb.out != in)
              return fail("loop body must preserve the variable scope");
            return pass(in);
          },
          [&](const PAddVar& a) {
            if (in.count(a.var))
              return fail("addvar of variable '" + a.var + "' already in scope");
            VarSet out = in;
            out.insert(a.var);
            return pass(out);
          },
          [&](const PDelVar& d) {
            if (!in.count(d.var))
              return fail("delvar of variable '" + d.var + "' not in scope");
            VarSet out = in;
            out.erase(d.var);
            return pass(out);
          }},
      p.node);
}

ScopeResult check_scoped_seq(const Program& p, const Program& q,
                             const VarSet& in) {
  ScopeResult r1 = check_scoped(p, in);
  if (!r1.ok) return r1;
  return check_scoped(q, r1.out);
}

}  // namespace aicat
