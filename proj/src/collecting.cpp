#include "aicat/collecting.hpp"

#include <algorithm>
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

CollectingSem CollectingSem::make(MonadKind monad, OmegaKind omega, Universe u,
                                  CarrierPtr carrier) {
  CollectingSem cs{DenSem{monad, u, {}}, EMAlgebra::make(monad, omega), carrier,
                   {}, {}, {}};
  return cs;
}

const ArrowTable& program_arrow(const CollectingSem& cs, const ProgramPtr& p) {
  std::string key = print(*p);
  auto it = cs.arrow_cache.find(key);
  if (it == cs.arrow_cache.end())
    it = cs.arrow_cache.emplace(key, tabulate(cs.den, *p, cs.carrier)).first;
  return it->second;
}

CollectResult collect_direct(const CollectingSem& cs, const ProgramPtr& p,
                             const Predicate& pre) {
  const ArrowTable& f = program_arrow(cs, p);
  return {sp(cs.alg, f, pre), f.approx};
}

// --------------------------------------------------------- inductive route

namespace {

struct Inductive {
  const CollectingSem& cs;
  bool approx = false;

  Predicate grd(const BExpr& b, bool v, OmegaKind omega) {
    return guard_predicate(cs.den.universe, cs.carrier, b, v, omega);
  }

  Predicate atom(const Program& p, const Predicate& pre) {
    ProgramPtr single = std::make_shared<Program>(p);
    const ArrowTable& f = program_arrow(cs, single);
    return sp(cs.alg, f, pre);
  }

  Predicate go(const Program& p, const Predicate& pre) {
    return std::visit(
        overloaded{
            [&](const PSkip&) { return pre; },
            [&](const PSeq& s) { return go(*s.second, go(*s.first, pre)); },
            [&](const PAssign&) { return atom(p, pre); },
            [&](const PHavoc&) { return atom(p, pre); },
            [&](const PFlip&) { return atom(p, pre); },
            [&](const PDiverge&) {
              return Predicate::bottom(pre.carrier, pre.omega);
            },
            [&](const PIf& i) {
              Predicate t = go(*i.then_branch,
                               pred_meet(pre, grd(*i.cond, true, pre.omega)));
              Predicate e = go(*i.else_branch,
                               pred_meet(pre, grd(*i.cond, false, pre.omega)));
              return pred_join(t, e);
            },
            [&](const PWhile& w) { return loop(w, pre); },
            [&](const PAddVar&) -> Predicate {
              throw EvalError("scope operations have no collecting semantics "
                              "over a fixed state space");
            },
            [&](const PDelVar&) -> Predicate {
              throw EvalError("scope operations have no collecting semantics "
                              "over a fixed state space");
            }},
        p.node);
  }

  // Least fixed point of the loop functional, evaluated along the orbit of
  // the input:  lfp(phi) = join_k (a_k /\ [guard false])  with  a_0 = phi,
  // a_{k+1} = body-transform(a_k /\ [guard true]).  Over Bool2 the predicate
  // space is finite; over the quantitative lattices the reachable truth
  // values stay inside the finite set occurring in phi plus the lattice
  // bounds, so the orbit always cycles and cycle detection is exact.  The
  // cap is a safeguard and marks the result approximate.
  Predicate loop(const PWhile& w, const Predicate& pre) {
    Predicate gtt = grd(*w.cond, true, pre.omega);
    Predicate gff = grd(*w.cond, false, pre.omega);
    Predicate a = pre;
    Predicate acc = pred_meet(a, gff);
    std::vector<Predicate> seen{a};
    for (std::size_t it = 0; it < cs.den.opts.dist_cap; ++it) {
      a = go(*w.body, pred_meet(a, gtt));
      if (std::find(seen.begin(), seen.end(), a) != seen.end()) return acc;
      acc = pred_join(acc, pred_meet(a, gff));
      seen.push_back(a);
    }
    approx = true;
    return acc;
  }
};

}  // namespace

CollectResult collect_inductive(const CollectingSem& cs, const ProgramPtr& p,
                                const Predicate& pre) {
  if (pre.omega != cs.alg.omega || !(*pre.carrier == *cs.carrier))
    throw AlgebraError("predicate does not live in the collecting space");
  if (cs.mask_capable()) {
    std::uint64_t out = collect_inductive_mask(cs, p, pred_to_mask(pre));
    return {pred_from_mask(cs.carrier, out), false};
  }
  Inductive ind{cs};
  Predicate post = ind.go(*p, pre);
  return {post, ind.approx};
}

std::set<MonadValue> hyper_direct_image(const CollectingSem& cs,
                                        const ProgramPtr& p,
                                        const std::set<MonadValue>& props) {
  const ArrowTable& f = program_arrow(cs, p);
  KleisliFn step = [&](const Memory& m) {
    return f.rows[cs.carrier->index_of(m)];
  };
  std::set<MonadValue> out;
  for (const auto& c : props) out.insert(kleisli_apply(cs.den.monad, step, c));
  return out;
}

// ------------------------------------------------------------ packed route

const std::vector<std::uint64_t>& mask_arrow(const CollectingSem& cs,
                                             const ProgramPtr& p) {
  std::string key = print(*p);
  auto it = cs.mask_cache.find(key);
  if (it == cs.mask_cache.end()) {
    const ArrowTable& f = program_arrow(cs, p);
    std::vector<std::uint64_t> rows(f.rows.size(), 0);
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
      const MonadValue& r = f.rows[i];
      if (f.kind == MonadKind::Maybe) {
        if (r.as_maybe())
          rows[i] |= std::uint64_t(1) << cs.carrier->index_of(*r.as_maybe());
      } else {
        for (const auto& m : r.as_pow())
          rows[i] |= std::uint64_t(1) << cs.carrier->index_of(m);
      }
    }
    it = cs.mask_cache.emplace(key, std::move(rows)).first;
  }
  return it->second;
}

std::uint64_t sp_mask(const std::vector<std::uint64_t>& rows, std::uint64_t pre) {
  std::uint64_t out = 0;
  for (std::uint64_t bits = pre; bits;) {
    int i = __builtin_ctzll(bits);
    bits &= bits - 1;
    out |= rows[static_cast<std::size_t>(i)];
  }
  return out;
}

std::uint64_t wp_mask(const std::vector<std::uint64_t>& rows, std::uint64_t post) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if ((rows[i] & ~post) == 0) out |= std::uint64_t(1) << i;
  return out;
}

std::uint64_t guard_mask(const CollectingSem& cs, const BExpr& b, bool value) {
  std::string key = (value ? "+" : "-") + print(b);
  auto it = cs.guard_mask_cache.find(key);
  if (it == cs.guard_mask_cache.end()) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < cs.carrier->size(); ++i)
      if (eval_bexpr(cs.den.universe, b, cs.carrier->memories[i]) == value)
        mask |= std::uint64_t(1) << i;
    it = cs.guard_mask_cache.emplace(key, mask).first;
  }
  return it->second;
}

std::uint64_t collect_direct_mask(const CollectingSem& cs, const ProgramPtr& p,
                                  std::uint64_t pre) {
  return sp_mask(mask_arrow(cs, p), pre);
}

namespace {

std::uint64_t inductive_mask(const CollectingSem& cs, const Program& p,
                             std::uint64_t pre) {
  return std::visit(
      overloaded{
          [&](const PSkip&) { return pre; },
          [&](const PSeq& s) {
            return inductive_mask(cs, *s.second, inductive_mask(cs, *s.first, pre));
          },
          [&](const PDiverge&) { return std::uint64_t(0); },
          [&](const PIf& i) {
            std::uint64_t t = inductive_mask(
                cs, *i.then_branch, pre & guard_mask(cs, *i.cond, true));
            std::uint64_t e = inductive_mask(
                cs, *i.else_branch, pre & guard_mask(cs, *i.cond, false));
            return t | e;
          },
          [&](const PWhile& w) {
            std::uint64_t gtt = guard_mask(cs, *w.cond, true);
            std::uint64_t gff = guard_mask(cs, *w.cond, false);
            std::uint64_t a = pre;
            std::uint64_t acc = a & gff;
            std::set<std::uint64_t> seen{a};
            while (true) {
              a = inductive_mask(cs, *w.body, a & gtt);
              if (!seen.insert(a).second) return acc;
              acc |= a & gff;
            }
          },
          [&](const PAddVar&) -> std::uint64_t {
            throw EvalError("scope operations have no collecting semantics "
                            "over a fixed state space");
          },
          [&](const PDelVar&) -> std::uint64_t {
            throw EvalError("scope operations have no collecting semantics "
                            "over a fixed state space");
          },
          [&](const auto&) {  // assign / havoc / flip: one-step arrows
            ProgramPtr single = std::make_shared<Program>(p);
            return sp_mask(mask_arrow(cs, single), pre);
          }},
      p.node);
}

}  // namespace

std::uint64_t collect_inductive_mask(const CollectingSem& cs, const ProgramPtr& p,
                                     std::uint64_t pre) {
  return inductive_mask(cs, *p, pre);
}

}  // namespace aicat
