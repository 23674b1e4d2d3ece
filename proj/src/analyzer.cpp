#include "aicat/analyzer.hpp"

namespace aicat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Analyzer::Analyzer(MemoryDomain dom, AnalyzeOptions opts)
    : dom_(std::move(dom)), opts_(opts) {
  if (opts_.widen_cap == 0)
    opts_.widen_cap = 2 + 4 * dom_.vars().size();
}

AnalyzeResult Analyzer::analyze(const Program& p, const AbsElem& pre) const {
  AnalyzeResult res;
  res.post = go(p, pre, res.loops);
  return res;
}

AbsElem Analyzer::go(const Program& p, AbsElem a,
                     std::vector<LoopStat>& stats) const {
  return std::visit(
      overloaded{
          [&](const PSkip&) { return a; },
          [&](const PSeq& s) {
            AbsElem mid = go(*s.first, std::move(a), stats);
            return go(*s.second, std::move(mid), stats);
          },
          [&](const PAssign& as) { return dom_.assign(as.var, *as.expr, a); },
          [&](const PHavoc& h) {
            return dom_.assign_range(h.var, h.lo, h.hi, a);
          },
          [&](const PFlip& f) {
            // Qualitative over-approximation of the support.
            if (f.prob == Rational(1)) return dom_.assign(f.var, *f.left, a);
            if (f.prob == Rational(0)) return dom_.assign(f.var, *f.right, a);
            return dom_.join(dom_.assign(f.var, *f.left, a),
                             dom_.assign(f.var, *f.right, a));
          },
          [&](const PDiverge&) { return dom_.bottom(); },
          [&](const PIf& i) {
            AbsElem t = go(*i.then_branch, dom_.guard(*i.cond, true, a), stats);
            AbsElem e = go(*i.else_branch, dom_.guard(*i.cond, false, a), stats);
            return dom_.join(t, e);
          },
          [&](const PWhile& w) { return loop(w, std::move(a), stats); },
          [&](const PAddVar&) -> AbsElem {
            throw DomainError("scope operations are not analyzable over a "
                              "fixed variable set");
          },
          [&](const PDelVar&) -> AbsElem {
            throw DomainError("scope operations are not analyzable over a "
                              "fixed variable set");
          }},
      p.node);
}

AbsElem Analyzer::loop(const PWhile& w, AbsElem pre,
                       std::vector<LoopStat>& stats) const {
  bool widen = opts_.mode == LoopMode::Widening ||
               (opts_.mode == LoopMode::Auto && !dom_.finite_chains());
  std::size_t cap = widen ? opts_.widen_cap : opts_.kleene_cap;

  LoopStat st;
  st.guard = print(*w.cond);
  st.widened = widen;

  AbsElem v = pre;
  // Ascend towards a post-fixpoint of X |-> pre \/ step(X & guard_true).
  while (true) {
    ++st.iterations;
    AbsElem body_in = dom_.guard(*w.cond, true, v);
    AbsElem stepped = go(*w.body, std::move(body_in), stats);
    AbsElem target = dom_.join(pre, stepped);
    if (dom_.leq(target, v)) break;
    v = widen ? dom_.widen(v, target) : dom_.join(v, target);
    if (st.iterations >= cap) {
      // Safety valve: degrade to top, which is trivially a post-fixpoint.
      v = dom_.top();
      st.stable = false;
      break;
    }
  }
  stats.push_back(st);
  return dom_.guard(*w.cond, false, v);
}

AbsElem best_transformer(const CollectingSem& cs, const MemoryDomain& dom,
                         const ProgramPtr& p, const AbsElem& a) {
  if (cs.alg.omega != OmegaKind::Bool2)
    throw DomainError("best transformer needs boolean truth values");
  if (cs.mask_capable()) {
    std::uint64_t pre = dom.gamma_mask(a, *cs.carrier);
    std::uint64_t post = collect_direct_mask(cs, p, pre);
    return dom.alpha_mask(post, *cs.carrier);
  }
  Predicate pre = dom.gamma(a, cs.carrier);
  CollectResult post = collect_direct(cs, p, pre);
  return dom.alpha(post.post);
}

std::optional<std::vector<Memory>> gamma_finite(const MemoryDomain& dom,
                                                const AbsElem& a,
                                                std::size_t cap) {
  // Per variable, intersect the parts' value constraints and enumerate when
  // the tightest constraint is a finite range / constant / {zero}.
  if (dom.is_bottom(a)) return std::vector<Memory>{};
  std::vector<std::vector<Value>> choices;
  for (const auto& var : dom.vars()) {
    std::optional<std::pair<Value, Value>> range;  // candidate finite range
    auto tighten = [&](Value lo, Value hi) {
      if (!range) range = {lo, hi};
      else {
        range->first = std::max(range->first, lo);
        range->second = std::min(range->second, hi);
      }
    };
    for (std::size_t p = 0; p < a.parts.size(); ++p) {
      const ValueAbs& av = a.parts[p].comps.at(var);
      if (auto* iv = std::get_if<Interval>(&av)) {
        tighten(iv->lo, iv->hi);
      } else if (auto* c = std::get_if<ConstElem>(&av)) {
        if (c->tag == ConstElem::Val) tighten(c->v, c->v);
      } else if (std::get<SignSet>(av).bits == 2) {  // exactly zero
        tighten(0, 0);
      }
    }
    if (dom.universe().is_ring() && !range)
      range = {dom.universe().min_value(), dom.universe().max_value()};
    if (!range) return std::nullopt;  // unbounded in some part
    if (range->first > range->second) return std::vector<Memory>{};
    if ((__int128)range->second - range->first >= (__int128)cap)
      return std::nullopt;
    std::vector<Value> vs;
    for (Value v = range->first; v <= range->second; ++v) {
      bool ok = true;
      for (std::size_t p = 0; p < a.parts.size() && ok; ++p)
        ok = ValueDomain{dom.spec().parts[p], dom.universe()}.contains(
            a.parts[p].comps.at(var), v);
      if (ok) vs.push_back(v);
    }
    if (vs.empty()) return std::vector<Memory>{};
    choices.push_back(std::move(vs));
  }
  std::size_t total = 1;
  for (const auto& c : choices) {
    total *= c.size();
    if (total > cap) return std::nullopt;
  }
  std::vector<Memory> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Memory m;
    for (std::size_t i = 0; i < choices.size(); ++i)
      m[dom.vars()[i]] = choices[i][idx[i]];
    out.push_back(std::move(m));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (idx.empty() || i == idx.size()) break;
  }
  return out;
}

AbsElem best_transformer_machine(const DenSem& ds, const MemoryDomain& dom,
                                 const ProgramPtr& p, const AbsElem& a,
                                 std::size_t cap) {
  auto pre = gamma_finite(dom, a, cap);
  if (!pre)
    throw DomainError("best transformer needs a finite concretization");
  std::vector<Memory> images;
  for (const Memory& m : *pre) {
    MonadValue out = denote(ds, *p, m);
    switch (out.kind()) {
      case MonadKind::Maybe:
        if (out.as_maybe()) images.push_back(*out.as_maybe());
        break;
      case MonadKind::Powerset:
        for (const auto& mm : out.as_pow()) images.push_back(mm);
        break;
      case MonadKind::Subdist:
        for (const auto& [mm, w] : out.as_dist()) images.push_back(mm);
        break;
    }
  }
  return dom.alpha_memories(images);
}

BestComparison compare_with_best(const MemoryDomain& dom, const AbsElem& analyzed,
                                 const AbsElem& best) {
  BestComparison c;
  c.sound = dom.leq(best, analyzed);
  c.exact = c.sound && dom.leq(analyzed, best);
  return c;
}

}  // namespace aicat
