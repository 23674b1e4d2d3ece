#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aicat/corpus.hpp"
#include "aicat/laws.hpp"
#include "aicat/parse.hpp"

using namespace aicat;

namespace {

struct Rig {
  Universe u = Universe::ring(8);
  CarrierPtr carrier;
  std::shared_ptr<CollectingSem> cs;
  MemoryDomain dom;
  std::shared_ptr<MemoryGalois> gal;
  std::shared_ptr<Analyzer> an;
  Corpus corpus;
  std::vector<std::pair<ProgramPtr, ProgramPtr>> pairs;
  std::vector<ProgramPtr> programs;

  explicit Rig(const std::string& spec = "interval", Value n = 8)
      : u(Universe::ring(n)),
        carrier(MemoryCarrier::over(u, {"x", "y"})),
        cs(std::make_shared<CollectingSem>(
            CollectingSem::make(MonadKind::Maybe, OmegaKind::Bool2, u, carrier))),
        dom(DomainSpec::parse(spec), u, {"x", "y"}),
        gal(std::make_shared<MemoryGalois>(MemoryGalois::make(dom, carrier))),
        an(std::make_shared<Analyzer>(dom)),
        corpus(make_corpus(CorpusOptions{})) {
    for (auto& [p, q] : corpus.pairs)
      if (legal_for(scan_features(*p), MonadKind::Maybe) &&
          legal_for(scan_features(*q), MonadKind::Maybe))
        pairs.emplace_back(p, q);
    programs = corpus_for_monad(corpus, MonadKind::Maybe);
  }
};

LawCheckConfig small() { return LawCheckConfig{40, 6}; }

}  // namespace

TEST_CASE("the collecting interpretation is a genuine functor") {
  Rig r;
  auto in = interp_collecting(r.cs, 10, 1);
  CHECK(in.claimed == Flavor::Functorial);
  auto rep = check_oplax(in, r.pairs, small());
  CHECK(rep.ok());
  CHECK(rep.identity_eq);
  CHECK(rep.composition_eq);
  CHECK(!rep.violation.has_value());
  CHECK(rep.identity_checks > 0);
  CHECK(rep.composition_checks > 100);
}

TEST_CASE("the induced family is normal but composes only laxly") {
  Rig r;
  CHECK(r.gal->insertion);
  auto in = interp_best(r.cs, r.gal, 8, 1);
  CHECK(in.claimed == Flavor::Normal);
  auto rep = check_oplax(in, r.pairs, LawCheckConfig{500, 8});
  CHECK(rep.ok());
  CHECK(rep.identity_eq);
  CHECK(rep.composition_leq);
  // somewhere the one-shot transformer beats the composition of pieces
  CHECK(!rep.composition_eq);
  REQUIRE(rep.strict_composite.has_value());
  CHECK(!rep.strict_composite->program.empty());

  // over a non-insertive domain the family only claims oplaxness
  Rig rp("product:interval+sign", 4);
  CHECK(!rp.gal->insertion);
  auto inp = interp_best(rp.cs, rp.gal, 6, 1);
  CHECK(inp.claimed == Flavor::Oplax);
  CHECK(check_oplax(inp, rp.pairs, small()).ok());
}

TEST_CASE("the structural analyzer is functorial on sequencing") {
  Rig r;
  auto in = interp_analyzer(r.an, 8, 1);
  CHECK(in.claimed == Flavor::Functorial);
  auto rep = check_oplax(in, r.pairs, small());
  CHECK(rep.ok());
  CHECK(rep.composition_eq);
}

TEST_CASE("a strict composite witness re-validates by recomputation") {
  Rig r;
  auto in = interp_best(r.cs, r.gal, 8, 1);
  auto rep = check_oplax(in, r.pairs, LawCheckConfig{500, 8});
  REQUIRE(rep.strict_composite.has_value());
  auto& w = *rep.strict_composite;
  // the witness carries the pieces around " >> ": rebuild and recheck
  auto cut = w.program.find(" >> ");
  REQUIRE(cut != std::string::npos);
  auto p = parse_program(w.program.substr(0, cut));
  auto q = parse_program(w.program.substr(cut + 4));
  bool strict_found = false;
  for (auto& e : in.sample) {
    auto whole = in.apply(seq_compose(p, q), e);
    auto pieces = in.apply(q, in.apply(p, e));
    CHECK(in.leq(whole, pieces));
    if (!in.leq(pieces, whole)) strict_found = true;
  }
  CHECK(strict_found);
}

TEST_CASE("the paper walkthrough pair is strictly composite for best") {
  // gamma([0,1]) = {0,1}; running both statements in one sweep keeps the
  // correlation that the negated branch never fires
  auto u = Universe::machine();
  MemoryDomain dom(DomainSpec::parse("interval"), u, {"x"});
  DenSem ds{MonadKind::Maybe, u};
  auto p0 = parse_program("x := 4*x - 2");
  auto p1 = parse_program("if x <= 0 { x := -x } else { skip }");
  AbsElem a = dom.top();
  a.parts[0].comps["x"] = Interval::range(0, 1);
  auto whole = best_transformer_machine(ds, dom, seq_compose(p0, p1), a);
  auto pieces = best_transformer_machine(
      ds, dom, p1, best_transformer_machine(ds, dom, p0, a));
  CHECK(std::get<Interval>(whole.parts[0].comps.at("x")) == Interval::range(2, 2));
  CHECK(std::get<Interval>(pieces.parts[0].comps.at("x")) ==
        Interval::range(0, 2));
  CHECK(dom.leq(whole, pieces));
  CHECK(!dom.leq(pieces, whole));
}

TEST_CASE("the capped fixture breaks composition and is caught") {
  Rig r;
  // writing one variable is fine; writing two in sequence answers top
  auto in = interp_capped_analyzer(r.an, 1, 8, 1);
  auto rep = check_oplax(in, r.pairs, small());
  CHECK(!rep.ok());
  REQUIRE(rep.violation.has_value());

  // the recorded witness re-validates: applying the fixture to the pieces
  // lands strictly below applying it to the composite
  auto& w = *rep.violation;
  auto cut = w.program.find(" >> ");
  REQUIRE(cut != std::string::npos);
  auto p = parse_program(w.program.substr(0, cut));
  auto q = parse_program(w.program.substr(cut + 4));
  bool violated = false;
  for (auto& e : in.sample) {
    auto whole = in.apply(seq_compose(p, q), e);
    auto pieces = in.apply(q, in.apply(p, e));
    if (!in.leq(whole, pieces)) violated = true;
  }
  CHECK(violated);

  // the canonical shape: two one-variable writes whose composite writes two
  auto wx = parse_program("x := 0");
  auto wy = parse_program("y := 1");
  auto e0 = Elem{r.dom.top()};
  auto whole = in.apply(seq_compose(wx, wy), e0);
  auto pieces = in.apply(wy, in.apply(wx, e0));
  CHECK(!in.leq(whole, pieces));
}

TEST_CASE("concretization soundness holds for analyzer and best") {
  Rig r;
  auto elems = sample_abs_elems(r.dom, 10, 3);
  auto apply_an = [&](const ProgramPtr& p, const AbsElem& a) {
    return r.an->analyze(*p, a).post;
  };
  auto rep = check_concretization_soundness(*r.cs, r.dom, apply_an, r.programs,
                                            elems);
  CHECK(rep.ok);
  CHECK(rep.checks > 1000);
  CHECK(!rep.violation.has_value());

  auto apply_best = [&](const ProgramPtr& p, const AbsElem& a) {
    return best_transformer(*r.cs, r.dom, p, a);
  };
  CHECK(check_concretization_soundness(*r.cs, r.dom, apply_best, r.programs,
                                       elems)
            .ok);
}

TEST_CASE("abstraction soundness holds for analyzer and best") {
  Rig r;
  auto pres = sample_predicates(r.carrier, OmegaKind::Bool2, 10, 3);
  auto apply_an = [&](const ProgramPtr& p, const AbsElem& a) {
    return r.an->analyze(*p, a).post;
  };
  auto rep =
      check_abstraction_soundness(*r.cs, r.dom, apply_an, r.programs, pres);
  CHECK(rep.ok);
  CHECK(rep.checks > 1000);

  auto apply_best = [&](const ProgramPtr& p, const AbsElem& a) {
    return best_transformer(*r.cs, r.dom, p, a);
  };
  CHECK(check_abstraction_soundness(*r.cs, r.dom, apply_best, r.programs, pres)
            .ok);
}

TEST_CASE("the lopsided fixture is unsound and is caught with a witness") {
  Rig r;
  auto in = interp_lopsided_analyzer(r.an, 8, 1);
  auto apply = [&](const ProgramPtr& p, const AbsElem& a) {
    return std::get<AbsElem>(in.apply(p, Elem{a}));
  };
  auto elems = sample_abs_elems(r.dom, 8, 3);
  auto rep =
      check_concretization_soundness(*r.cs, r.dom, apply, r.programs, elems);
  CHECK(!rep.ok);
  REQUIRE(rep.violation.has_value());

  // re-validate: some else-branch state escapes the claimed cover
  auto p = parse_program(rep.violation->program);
  bool escaped = false;
  for (auto& a : elems) {
    auto claimed = r.dom.gamma_mask(apply(p, a), *r.carrier);
    auto run = collect_direct(
        *r.cs, p, pred_from_mask(r.carrier, r.dom.gamma_mask(a, *r.carrier)));
    if ((pred_to_mask(run.post) & ~claimed) != 0) escaped = true;
  }
  CHECK(escaped);

  // concrete shape: only the then-arm is believed
  auto br = parse_program("if x <= 3 { x := 0 } else { x := 7 }");
  auto post = apply(br, r.dom.top());
  CHECK(std::get<Interval>(post.parts[0].comps.at("x")) == Interval::range(0, 0));
}

TEST_CASE("dominance: the induced transformer refines the analyzer") {
  Rig r;
  auto best = interp_best(r.cs, r.gal, 8, 1);
  auto an = interp_analyzer(r.an, 8, 1);
  auto rep = interp_leq_on(best, an, r.programs, best.sample);
  CHECK(rep.leq);
  CHECK(rep.strict_somewhere);
  CHECK(rep.checks > 500);
  CHECK(!rep.violation.has_value());

  // and the analyzer never refines the collecting semantics' image reading:
  // identical interpretations compare as equal, never strict
  auto self = interp_leq_on(an, an, r.programs, an.sample);
  CHECK(self.leq);
  CHECK(!self.strict_somewhere);
}

TEST_CASE("element samples are deterministic in the seed") {
  Rig r;
  auto a1 = sample_abs_elems(r.dom, 12, 5);
  auto a2 = sample_abs_elems(r.dom, 12, 5);
  CHECK(a1 == a2);
  auto a3 = sample_abs_elems(r.dom, 12, 6);
  CHECK(a1 != a3);
  CHECK(a1.size() == 12);
  // bottom and top ride along in every abstract sample
  CHECK(std::count(a1.begin(), a1.end(), r.dom.bottom()) > 0);
  CHECK(std::count(a1.begin(), a1.end(), r.dom.top()) > 0);

  auto p1 = sample_predicates(r.carrier, OmegaKind::Bool2, 80, 5);
  auto p2 = sample_predicates(r.carrier, OmegaKind::Bool2, 80, 5);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);
  // bottom, top and all 64 singletons lead the predicate sample
  CHECK(p1[0] == Predicate::bottom(r.carrier, OmegaKind::Bool2));
  CHECK(p1[1] == Predicate::top(r.carrier, OmegaKind::Bool2));
  std::size_t singletons = 0;
  for (auto& p : p1) {
    std::size_t on = 0;
    for (auto& v : p.vals) on += v.truthy();
    singletons += on == 1;
  }
  CHECK(singletons >= r.carrier->size());
}
