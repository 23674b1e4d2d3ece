#include "aicat/interp.hpp"

#include <algorithm>
#include <random>

namespace aicat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Elem> wrap(std::vector<Predicate> ps) {
  std::vector<Elem> out;
  out.reserve(ps.size());
  for (auto& p : ps) out.emplace_back(std::move(p));
  return out;
}

std::vector<Elem> wrap(std::vector<AbsElem> as) {
  std::vector<Elem> out;
  out.reserve(as.size());
  for (auto& a : as) out.emplace_back(std::move(a));
  return out;
}

// Rewrites every conditional to pretend the else branch diverges; analyzing
// the result loses all else-paths, making the analyzer unsound on purpose.
ProgramPtr drop_elses(const ProgramPtr& p) {
  return std::visit(
      overloaded{
          [&](const PSeq& s) {
            return seq(drop_elses(s.first), drop_elses(s.second));
          },
          [&](const PIf& i) {
            return ifelse(i.cond, drop_elses(i.then_branch), diverge());
          },
          [&](const PWhile& w) { return whileloop(w.cond, drop_elses(w.body)); },
          [&](const auto&) { return p; }},
      p->node);
}

}  // namespace

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Oplax: return "oplax";
    case Flavor::Normal: return "normal";
    case Flavor::Functorial: return "functorial";
  }
  return "?";
}

std::vector<Predicate> sample_predicates(CarrierPtr c, OmegaKind k, std::size_t n,
                                         std::uint64_t seed) {
  std::vector<Predicate> out;
  out.push_back(Predicate::bottom(c, k));
  out.push_back(Predicate::top(c, k));
  std::mt19937_64 rng(seed);
  if (k == OmegaKind::Bool2) {
    for (const auto& m : c->memories) out.push_back(Predicate::singleton(c, m, k));
    if (c->size() <= 64) {
      std::uint64_t full =
          c->size() == 64 ? ~0ull : ((1ull << c->size()) - 1);
      while (out.size() < n) out.push_back(pred_from_mask(c, rng() & full));
    } else {
      while (out.size() < n)
        out.push_back(Predicate::of_fn(c, k, [&](const Memory&) {
          return (rng() & 1) ? OmegaVal::yes() : OmegaVal::no();
        }));
    }
    return out;
  }
  // Quantitative truth values: draw pointwise from a small spanning pool.
  const OmegaVal pool[] = {OmegaVal::no(),
                           OmegaVal::finite(Rational(1, 7)),
                           OmegaVal::finite(Rational(1, 2)),
                           OmegaVal::yes(),
                           OmegaVal::finite(Rational(3, 2)),
                           OmegaVal::finite(Rational(17)),
                           OmegaVal::infinity()};
  while (out.size() < n)
    out.push_back(Predicate::of_fn(
        c, k, [&](const Memory&) { return pool[rng() % 7]; }));
  return out;
}

std::vector<AbsElem> sample_abs_elems(const MemoryDomain& dom, std::size_t n,
                                      std::uint64_t seed) {
  std::vector<AbsElem> out;
  out.push_back(dom.bottom());
  out.push_back(dom.top());
  std::mt19937_64 rng(seed);
  if (dom.universe().is_ring()) {
    try {
      auto all = dom.enumerate(200000);
      std::shuffle(all.begin(), all.end(), rng);
      for (const auto& a : all) {
        if (out.size() >= n) break;
        out.push_back(a);
      }
      return out;
    } catch (const DomainError&) {
      // fall through to random generation
    }
  }
  const Universe& u = dom.universe();
  std::vector<Value> pool;
  if (u.is_ring()) {
    for (Value v = 0; v < u.modulus; ++v) pool.push_back(v);
  } else {
    pool = {u.min_value(), -100, -8, -3, -2, -1, 0, 1, 2, 3, 8, 100,
            u.max_value()};
  }
  auto pick = [&]() { return pool[rng() % pool.size()]; };
  while (out.size() < n) {
    AbsElem e;
    for (std::size_t p = 0; p < dom.spec().parts.size(); ++p) {
      AbsMem m;
      m.bot = false;
      for (const auto& var : dom.vars()) {
        switch (dom.spec().parts[p]) {
          case ValueDomainKind::Interval: {
            Value a = pick(), b = pick();
            m.comps[var] = Interval::range(std::min(a, b), std::max(a, b));
            break;
          }
          case ValueDomainKind::Constants:
            m.comps[var] = (rng() % 3 == 0) ? ConstElem::top()
                                            : ConstElem::constant(pick());
            break;
          case ValueDomainKind::Sign:
            m.comps[var] = SignSet::of(1 + rng() % 7);
            break;
        }
      }
      e.parts.push_back(std::move(m));
    }
    out.push_back(std::move(e));
  }
  return out;
}

Interpretation interp_collecting(std::shared_ptr<CollectingSem> cs,
                                 std::size_t n_elems, std::uint64_t seed) {
  Interpretation in;
  in.name = "collecting(" + monad_name(cs->den.monad) + "," +
            omega_name(cs->alg.omega) + "," + cs->den.universe.label() + ")";
  in.claimed = Flavor::Functorial;
  in.apply = [cs](const ProgramPtr& p, const Elem& e) -> Elem {
    return collect_inductive(*cs, p, std::get<Predicate>(e)).post;
  };
  in.leq = [](const Elem& a, const Elem& b) {
    return pred_leq(std::get<Predicate>(a), std::get<Predicate>(b));
  };
  in.show = [](const Elem& e) { return pred_str(std::get<Predicate>(e)); };
  in.sample = wrap(sample_predicates(cs->carrier, cs->alg.omega, n_elems, seed));
  return in;
}

Interpretation interp_best(std::shared_ptr<CollectingSem> cs,
                           std::shared_ptr<MemoryGalois> g, std::size_t n_elems,
                           std::uint64_t seed) {
  Interpretation in;
  in.name = "best(" + g->dom.id() + "," + monad_name(cs->den.monad) + "," +
            cs->den.universe.label() + ")";
  in.claimed = g->insertion ? Flavor::Normal : Flavor::Oplax;
  in.apply = [cs, g](const ProgramPtr& p, const Elem& e) -> Elem {
    return best_transformer(*cs, g->dom, p, std::get<AbsElem>(e));
  };
  in.leq = [g](const Elem& a, const Elem& b) {
    return g->dom.leq(std::get<AbsElem>(a), std::get<AbsElem>(b));
  };
  in.show = [g](const Elem& e) {
    return abs_elem_str(g->dom, std::get<AbsElem>(e));
  };
  in.sample = wrap(sample_abs_elems(g->dom, n_elems, seed));
  return in;
}

namespace {

Interpretation analyzer_interp_base(std::shared_ptr<Analyzer> an,
                                    std::size_t n_elems, std::uint64_t seed,
                                    std::string name) {
  Interpretation in;
  in.name = std::move(name);
  in.claimed = Flavor::Functorial;  // structural recursion composes exactly
  in.leq = [an](const Elem& a, const Elem& b) {
    return an->domain().leq(std::get<AbsElem>(a), std::get<AbsElem>(b));
  };
  in.show = [an](const Elem& e) {
    return abs_elem_str(an->domain(), std::get<AbsElem>(e));
  };
  in.sample = wrap(sample_abs_elems(an->domain(), n_elems, seed));
  return in;
}

}  // namespace

Interpretation interp_analyzer(std::shared_ptr<Analyzer> an, std::size_t n_elems,
                               std::uint64_t seed) {
  Interpretation in = analyzer_interp_base(
      an, n_elems, seed,
      "analyzer(" + an->domain().id() + "," + an->domain().universe().label() +
          ")");
  in.apply = [an](const ProgramPtr& p, const Elem& e) -> Elem {
    return an->analyze(*p, std::get<AbsElem>(e)).post;
  };
  return in;
}

Interpretation interp_capped_analyzer(std::shared_ptr<Analyzer> an,
                                      std::size_t max_assigned,
                                      std::size_t n_elems, std::uint64_t seed) {
  Interpretation in =
      analyzer_interp_base(an, n_elems, seed, "capped-analyzer");
  in.claimed = Flavor::Oplax;  // the claim the fixture is meant to fail
  in.apply = [an, max_assigned](const ProgramPtr& p, const Elem& e) -> Elem {
    if (assigned_vars(*p).size() > max_assigned) {
      if (an->domain().is_bottom(std::get<AbsElem>(e)))
        return an->domain().bottom();
      return an->domain().top();
    }
    return an->analyze(*p, std::get<AbsElem>(e)).post;
  };
  return in;
}

Interpretation interp_lopsided_analyzer(std::shared_ptr<Analyzer> an,
                                        std::size_t n_elems, std::uint64_t seed) {
  Interpretation in =
      analyzer_interp_base(an, n_elems, seed, "lopsided-analyzer");
  in.apply = [an](const ProgramPtr& p, const Elem& e) -> Elem {
    return an->analyze(*drop_elses(p), std::get<AbsElem>(e)).post;
  };
  return in;
}

}  // namespace aicat
