#include "aicat/densem.hpp"

#include <set>
#include <variant>

namespace aicat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Value eval_aexpr(const Universe& u, const AExpr& e, const Memory& m) {
  return std::visit(
      overloaded{[&](const ALit& l) { return u.normalize(l.value); },
                 [&](const AVar& v) {
                   auto it = m.find(v.name);
                   if (it == m.end())
                     throw EvalError("unbound variable '" + v.name + "'");
                   return it->second;
                 },
                 [&](const ABin& b) {
                   Value l = eval_aexpr(u, *b.lhs, m);
                   Value r = eval_aexpr(u, *b.rhs, m);
                   switch (b.op) {
                     case AOp::Add: return u.add(l, r);
                     case AOp::Sub: return u.sub(l, r);
                     default: return u.mul(l, r);
                   }
                 }},
      e.node);
}

bool eval_bexpr(const Universe& u, const BExpr& b, const Memory& m) {
  return std::visit(
      overloaded{[](const BTrue&) { return true; },
                 [](const BFalse&) { return false; },
                 [&](const BCmp& c) {
                   Value l = eval_aexpr(u, *c.lhs, m);
                   Value r = eval_aexpr(u, *c.rhs, m);
                   switch (c.op) {
                     case CmpOp::Le: return l <= r;
                     case CmpOp::Lt: return l < r;
                     default: return l == r;
                   }
                 },
                 [&](const BNot& n) { return !eval_bexpr(u, *n.arg, m); },
                 [&](const BAnd& a) {
                   return eval_bexpr(u, *a.lhs, m) && eval_bexpr(u, *a.rhs, m);
                 },
                 [&](const BOr& o) {
                   return eval_bexpr(u, *o.lhs, m) || eval_bexpr(u, *o.rhs, m);
                 }},
      b.node);
}

namespace {

struct Eval {
  const DenSem& ds;
  DenoteStats* stats;
  bool scoped;

  MonadKind kind() const { return ds.monad; }
  const Universe& uni() const { return ds.universe; }

  void bump(long long n = 1) const {
    if (stats) stats->loop_iterations += n;
  }
  void mark_approx() const {
    if (stats) stats->approx = true;
  }

  MonadValue unit(Memory m) const { return MonadValue::unit(kind(), std::move(m)); }

  // ---- atomic commands ----

  MonadValue do_assign(const PAssign& a, const Memory& m) const {
    Memory out = m;
    auto it = out.find(a.var);
    if (it == out.end())
      throw EvalError("assignment to unbound variable '" + a.var + "'");
    it->second = eval_aexpr(uni(), *a.expr, m);
    return unit(std::move(out));
  }

  MonadValue do_havoc(const PHavoc& h, const Memory& m) const {
    if (kind() != MonadKind::Powerset)
      throw EvalError("havoc requires the powerset monad");
    if (!m.count(h.var))
      throw EvalError("assignment to unbound variable '" + h.var + "'");
    if (static_cast<unsigned long long>(h.hi - h.lo) >= ds.opts.havoc_cap)
      throw EvalError("havoc range too large to materialize");
    MonadValue::PowV out;
    for (std::int64_t v = h.lo; v <= h.hi; ++v) {
      Memory mm = m;
      mm[h.var] = uni().normalize(v);
      out.insert(std::move(mm));
    }
    return MonadValue::pow(std::move(out));
  }

  MonadValue do_flip(const PFlip& f, const Memory& m) const {
    if (kind() != MonadKind::Subdist)
      throw EvalError("flip requires the subdist monad");
    if (!m.count(f.var))
      throw EvalError("assignment to unbound variable '" + f.var + "'");
    if (f.prob < Rational(0) || f.prob > Rational(1))
      throw EvalError("flip probability outside [0, 1]");
    Memory left = m, right = m;
    left[f.var] = eval_aexpr(uni(), *f.left, m);
    right[f.var] = eval_aexpr(uni(), *f.right, m);
    MonadValue::DistV out;
    out[std::move(left)] += f.prob;
    out[std::move(right)] += Rational(1) - f.prob;
    return MonadValue::dist(std::move(out));
  }

  // ---- loops ----

  // Deterministic (maybe-monad) loops run operationally.  On a Ring universe
  // the state space is finite, so revisiting the loop head means divergence
  // and the result is bottom, exactly.  On the machine universe we burn fuel
  // and exhaust loudly: an undecided loop is an error, not a bottom.
  MonadValue while_maybe(const PWhile& w, Memory m) const {
    if (uni().is_ring()) {
      std::set<Memory> seen;
      while (true) {
        if (!eval_bexpr(uni(), *w.cond, m)) return unit(std::move(m));
        if (!seen.insert(m).second) return MonadValue::bottom(kind());
        bump();
        MonadValue r = run(*w.body, m);
        if (r.is_bottom()) return r;
        m = *r.as_maybe();
      }
    }
    for (long long fuel = ds.opts.fuel; fuel > 0; --fuel) {
      if (!eval_bexpr(uni(), *w.cond, m)) return unit(std::move(m));
      bump();
      MonadValue r = run(*w.body, m);
      if (r.is_bottom()) return r;
      m = *r.as_maybe();
    }
    throw EvalError("loop fuel exhausted on the machine universe");
  }

  // Effectful loops over a Ring universe: iterate the loop functional
  //   step(f)(s) = cond(s) ? f#(body(s)) : unit(s)
  // from the everywhere-bottom arrow over the finite state space.  Powerset
  // chains stabilize exactly; subdist chains stop at eps / cap and are
  // flagged as approximate.
  MonadValue while_ring_fixpoint(const PWhile& w, const Memory& m0) const {
    std::set<std::string> dom;
    for (const auto& [k, v] : m0) dom.insert(k);
    CarrierPtr carrier = MemoryCarrier::over(uni(), dom);
    const std::size_t n = carrier->size();

    std::vector<MonadValue> body_rows;
    std::vector<bool> cond_bits(n);
    body_rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Memory& mi = carrier->memories[i];
      cond_bits[i] = eval_bexpr(uni(), *w.cond, mi);
      body_rows.push_back(cond_bits[i] ? run(*w.body, mi)
                                       : MonadValue::bottom(kind()));
    }

    std::vector<MonadValue> f(n, MonadValue::bottom(kind()));
    KleisliFn lookup = [&](const Memory& m) { return f[carrier->index_of(m)]; };
    const bool dist = kind() == MonadKind::Subdist;
    for (std::size_t it = 0;; ++it) {
      if (it >= (dist ? ds.opts.dist_cap : ds.opts.kleene_cap)) {
        if (!dist)
          throw EvalError("loop fixpoint failed to stabilize within the cap");
        mark_approx();
        break;
      }
      bump();
      std::vector<MonadValue> next(n, MonadValue::bottom(kind()));
      for (std::size_t i = 0; i < n; ++i)
        next[i] = cond_bits[i] ? kleisli_apply(kind(), lookup, body_rows[i])
                               : unit(carrier->memories[i]);
      if (next == f) break;  // reached the least fixed point
      if (dist) {
        Rational step(0);
        for (std::size_t i = 0; i < n; ++i)
          step += total_variation(f[i].as_dist(), next[i].as_dist());
        f = std::move(next);
        if (step < ds.opts.eps) {
          mark_approx();
          break;
        }
      } else {
        f = std::move(next);
      }
    }
    return f[carrier->index_of(m0)];
  }

  // Machine universe, effectful monads: bounded unrolling.  Only a testing
  // aid; any path still inside the loop when fuel runs out is an error.
  MonadValue while_machine_bounded(const PWhile& w, const Memory& m,
                                   long long fuel) const {
    if (!eval_bexpr(uni(), *w.cond, m)) return unit(m);
    if (fuel <= 0) throw EvalError("loop fuel exhausted on the machine universe");
    bump();
    MonadValue body_val = run(*w.body, m);
    KleisliFn rec = [&](const Memory& m2) {
      return while_machine_bounded(w, m2, fuel - 1);
    };
    return kleisli_apply(kind(), rec, body_val);
  }

  MonadValue do_while(const PWhile& w, const Memory& m) const {
    if (kind() == MonadKind::Maybe) return while_maybe(w, m);
    if (uni().is_ring()) return while_ring_fixpoint(w, m);
    return while_machine_bounded(w, m, ds.opts.fuel);
  }

  // ---- dispatch ----

  MonadValue run(const Program& p, const Memory& m) const {
    return std::visit(
        overloaded{
            [&](const PSkip&) { return unit(m); },
            [&](const PSeq& s) {
              MonadValue first = run(*s.first, m);
              KleisliFn rest = [&](const Memory& m2) { return run(*s.second, m2); };
              return kleisli_apply(kind(), rest, first);
            },
            [&](const PAssign& a) { return do_assign(a, m); },
            [&](const PHavoc& h) { return do_havoc(h, m); },
            [&](const PFlip& f) { return do_flip(f, m); },
            [&](const PDiverge&) { return MonadValue::bottom(kind()); },
            [&](const PIf& i) {
              return eval_bexpr(uni(), *i.cond, m) ? run(*i.then_branch, m)
                                                   : run(*i.else_branch, m);
            },
            [&](const PWhile& w) { return do_while(w, m); },
            [&](const PAddVar& a) {
              if (!scoped)
                throw EvalError("addvar outside scoped evaluation");
              if (m.count(a.var))
                throw EvalError("addvar of variable '" + a.var +
                                "' already in scope");
              Memory out = m;
              out[a.var] = 0;
              return unit(std::move(out));
            },
            [&](const PDelVar& d) {
              if (!scoped)
                throw EvalError("delvar outside scoped evaluation");
              if (!m.count(d.var))
                throw EvalError("delvar of variable '" + d.var +
                                "' not in scope");
              Memory out = m;
              out.erase(d.var);
              return unit(std::move(out));
            }},
        p.node);
  }
};

void validate_input(const DenSem& ds, const Memory& m) {
  for (const auto& [k, v] : m)
    if (!ds.universe.in_range(v))
      throw EvalError("input value out of carrier range for '" + k + "'");
}

}  // namespace

MonadValue denote(const DenSem& ds, const Program& p, const Memory& m,
                  DenoteStats* stats) {
  validate_input(ds, m);
  return Eval{ds, stats, false}.run(p, m);
}

MonadValue denote_scoped(const DenSem& ds, const Program& p, const Memory& m,
                         DenoteStats* stats) {
  validate_input(ds, m);
  return Eval{ds, stats, true}.run(p, m);
}

ArrowTable tabulate(const DenSem& ds, const Program& p, CarrierPtr carrier) {
  ArrowTable t;
  t.carrier = carrier;
  t.kind = ds.monad;
  t.rows.reserve(carrier->size());
  DenoteStats stats;
  for (const auto& m : carrier->memories) t.rows.push_back(denote(ds, p, m, &stats));
  t.approx = stats.approx;
  return t;
}

}  // namespace aicat
