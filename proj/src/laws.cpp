#include "aicat/laws.hpp"

namespace aicat {
namespace {

LawWitness make_witness(std::string law, std::string program, std::string pre,
                        std::string lhs, std::string rhs) {
  return LawWitness{std::move(law), std::move(program), std::move(pre),
                    std::move(lhs), std::move(rhs)};
}

}  // namespace

OplaxReport check_oplax(const Interpretation& in,
                        const std::vector<std::pair<ProgramPtr, ProgramPtr>>& pairs,
                        const LawCheckConfig& cfg) {
  OplaxReport rep;
  rep.interp = in.name;
  rep.claimed = in.claimed;
  bool need_id_eq = in.claimed != Flavor::Oplax;
  bool need_comp_eq = in.claimed == Flavor::Functorial;

  ProgramPtr id = skip();
  std::size_t elems = std::min(cfg.max_elems, in.sample.size());
  for (std::size_t i = 0; i < elems; ++i) {
    const Elem& e = in.sample[i];
    Elem out = in.apply(id, e);
    ++rep.identity_checks;
    bool le = in.leq(out, e);
    bool ge = le && in.leq(e, out);
    if (!le) {
      rep.identity_leq = rep.identity_eq = false;
      if (!rep.violation)
        rep.violation = make_witness("identity<=", "skip", in.show(e),
                                     in.show(out), in.show(e));
    } else if (!ge) {
      rep.identity_eq = false;
      if (need_id_eq && !rep.violation)
        rep.violation = make_witness("identity=", "skip", in.show(e),
                                     in.show(out), in.show(e));
    }
  }

  std::size_t npairs = std::min(cfg.max_pairs, pairs.size());
  for (std::size_t pi = 0; pi < npairs; ++pi) {
    const auto& [p, q] = pairs[pi];
    ProgramPtr comp = seq_compose(p, q);
    std::string pair_str = print(*p) + "  >>  " + print(*q);
    for (std::size_t i = 0; i < elems; ++i) {
      const Elem& e = in.sample[i];
      Elem lhs = in.apply(comp, e);
      Elem rhs = in.apply(q, in.apply(p, e));
      ++rep.composition_checks;
      bool le = in.leq(lhs, rhs);
      bool ge = le && in.leq(rhs, lhs);
      if (!le) {
        rep.composition_leq = rep.composition_eq = false;
        if (!rep.violation)
          rep.violation = make_witness("composition<=", pair_str, in.show(e),
                                       in.show(lhs), in.show(rhs));
      } else if (!ge) {
        rep.composition_eq = false;
        if (!rep.strict_composite)
          rep.strict_composite = make_witness("composition<", pair_str,
                                              in.show(e), in.show(lhs),
                                              in.show(rhs));
        if (need_comp_eq && !rep.violation)
          rep.violation = make_witness("composition=", pair_str, in.show(e),
                                       in.show(lhs), in.show(rhs));
      }
    }
  }
  return rep;
}

SoundnessReport check_concretization_soundness(
    const CollectingSem& cs, const MemoryDomain& dom,
    const std::function<AbsElem(const ProgramPtr&, const AbsElem&)>& apply,
    const std::vector<ProgramPtr>& programs, const std::vector<AbsElem>& elems) {
  SoundnessReport rep;
  rep.what = "collect(p)(gamma(a)) <= gamma(apply(p)(a))";
  bool masks = cs.mask_capable();
  for (const auto& p : programs) {
    for (const auto& a : elems) {
      ++rep.checks;
      AbsElem post = apply(p, a);
      if (masks) {
        std::uint64_t lhs = collect_direct_mask(cs, p, dom.gamma_mask(a, *cs.carrier));
        std::uint64_t rhs = dom.gamma_mask(post, *cs.carrier);
        if ((lhs & ~rhs) == 0) continue;
        rep.ok = false;
      } else {
        Predicate lhs = collect_direct(cs, p, dom.gamma(a, cs.carrier)).post;
        Predicate rhs = dom.gamma(post, cs.carrier);
        if (pred_leq(lhs, rhs)) continue;
        rep.ok = false;
      }
      if (!rep.violation)
        rep.violation = make_witness(
            rep.what, print(*p), abs_elem_str(dom, a),
            pred_str(collect_direct(cs, p, dom.gamma(a, cs.carrier)).post),
            abs_elem_str(dom, post));
      return rep;
    }
  }
  return rep;
}

SoundnessReport check_abstraction_soundness(
    const CollectingSem& cs, const MemoryDomain& dom,
    const std::function<AbsElem(const ProgramPtr&, const AbsElem&)>& apply,
    const std::vector<ProgramPtr>& programs, const std::vector<Predicate>& pres) {
  SoundnessReport rep;
  rep.what = "alpha(collect(p)(c)) <= apply(p)(alpha(c))";
  for (const auto& p : programs) {
    for (const auto& c : pres) {
      ++rep.checks;
      Predicate post = collect_direct(cs, p, c).post;
      AbsElem lhs = dom.alpha(post);
      AbsElem rhs = apply(p, dom.alpha(c));
      if (dom.leq(lhs, rhs)) continue;
      rep.ok = false;
      if (!rep.violation)
        rep.violation = make_witness(rep.what, print(*p), pred_str(c),
                                     abs_elem_str(dom, lhs),
                                     abs_elem_str(dom, rhs));
      return rep;
    }
  }
  return rep;
}

DominanceReport interp_leq_on(const Interpretation& lo, const Interpretation& hi,
                              const std::vector<ProgramPtr>& programs,
                              const std::vector<Elem>& elems) {
  DominanceReport rep;
  rep.lo = lo.name;
  rep.hi = hi.name;
  for (const auto& p : programs) {
    for (const auto& e : elems) {
      ++rep.checks;
      Elem a = lo.apply(p, e);
      Elem b = hi.apply(p, e);
      if (!lo.leq(a, b)) {
        rep.leq = false;
        if (!rep.violation)
          rep.violation = make_witness("dominance", print(*p), lo.show(e),
                                       lo.show(a), lo.show(b));
        return rep;
      }
      if (!lo.leq(b, a)) rep.strict_somewhere = true;
    }
  }
  return rep;
}

}  // namespace aicat
