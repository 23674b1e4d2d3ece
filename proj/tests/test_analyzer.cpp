#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aicat/analyzer.hpp"
#include "aicat/corpus.hpp"
#include "aicat/parse.hpp"

using namespace aicat;

namespace {

MemoryDomain md(const std::string& spec, Universe u,
                std::set<std::string> vars = {"x"}) {
  return MemoryDomain(DomainSpec::parse(spec), u, vars);
}

AbsElem pre1(const MemoryDomain& d, const std::string& var, ValueAbs v) {
  auto a = d.top();
  for (auto& part : a.parts) part.comps[var] = v;
  return a;
}

Interval ival(const AbsElem& a, const std::string& var) {
  return std::get<Interval>(a.parts[0].comps.at(var));
}

}  // namespace

TEST_CASE("the interval walkthrough: transform, compose, compare to best") {
  auto dom = md("interval", Universe::machine());
  Analyzer an(dom);
  auto p0 = parse_program("x := 4*x - 2");
  auto p1 = parse_program("if x <= 0 { x := -x } else { skip }");

  auto pre = pre1(dom, "x", Interval::range(0, 1));
  auto r0 = an.analyze(*p0, pre);
  CHECK(ival(r0.post, "x") == Interval::range(-2, 2));

  auto r1 = an.analyze(*p1, r0.post);
  CHECK(ival(r1.post, "x") == Interval::range(0, 2));

  // analyzing the sequenced program gives exactly the composition
  auto both = seq_compose(p0, p1);
  auto rb = an.analyze(*both, pre);
  CHECK(rb.post == r1.post);

  // the induced best transformer is strictly sharper on the composite
  DenSem ds{MonadKind::Maybe, Universe::machine()};
  auto best = best_transformer_machine(ds, dom, both, pre);
  CHECK(ival(best, "x") == Interval::range(2, 2));
  auto cmp = compare_with_best(dom, rb.post, best);
  CHECK(cmp.sound);
  CHECK(!cmp.exact);

  // on the pieces the analyzer is already as sharp as possible
  CHECK(best_transformer_machine(ds, dom, p0, pre) == r0.post);
}

TEST_CASE("skip and structural cases are exact") {
  auto dom = md("interval", Universe::ring(8), {"x", "y"});
  Analyzer an(dom);
  auto a = pre1(dom, "x", Interval::range(2, 5));
  CHECK(an.analyze(*skip(), a).post == a);
  CHECK(an.analyze(*parse_program("skip; skip"), a).post == a);
  CHECK(an.analyze(*parse_program("diverge"), a).post == dom.bottom());
  // a branch joins both arms
  auto r = an.analyze(*parse_program("if x <= 3 { y := 0 } else { y := 7 }"), a);
  CHECK(ival(r.post, "y") == Interval::range(0, 7));
  CHECK(ival(r.post, "x") == Interval::range(2, 5));
  // an unreachable arm contributes nothing
  auto r2 = an.analyze(*parse_program("if x <= 1 { y := 0 } else { y := 7 }"), a);
  CHECK(ival(r2.post, "y") == Interval::range(7, 7));
  // bottom stays bottom through anything loop-free
  CHECK(an.analyze(*parse_program("x := x + 1; y := x"), dom.bottom()).post ==
        dom.bottom());
}

TEST_CASE("analysis of a sequence equals the composition of analyses") {
  auto u = Universe::ring(8);
  for (auto spec : {"interval", "constants", "product:interval+sign"}) {
    MemoryDomain dom(DomainSpec::parse(spec), u, {"x", "y"});
    Analyzer an(dom);
    auto corpus = make_corpus(CorpusOptions{});
    std::mt19937_64 rng(5);
    auto elems = dom.enumerate();
    std::shuffle(elems.begin(), elems.end(), rng);
    if (elems.size() > 12) elems.resize(12);
    std::size_t checked = 0;
    for (auto& [p, q] : corpus.pairs) {
      if (!legal_for(scan_features(*p), MonadKind::Maybe) ||
          !legal_for(scan_features(*q), MonadKind::Maybe))
        continue;
      auto pq = seq_compose(p, q);
      for (auto& a : elems) {
        auto composed = an.analyze(*q, an.analyze(*p, a).post).post;
        auto direct = an.analyze(*pq, a).post;
        CHECK(direct == composed);
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("finite-chain loops settle by exact iteration") {
  auto u = Universe::ring(8);
  auto dom = md("interval", u);
  Analyzer an(dom);

  auto loop = parse_program("x := 0; while x < 3 { x := x + 1 }");
  auto r = an.analyze(*loop, dom.top());
  CHECK(ival(r.post, "x") == Interval::range(3, 3));
  REQUIRE(r.loops.size() == 1);
  CHECK(!r.loops[0].widened);
  CHECK(r.loops[0].stable);
  CHECK(r.loops[0].iterations > 0);
  CHECK(r.loops[0].guard == "x < 3");

  // a loop whose guard never releases ends at bottom
  auto stuck = an.analyze(*parse_program("while true { x := x + 1 }"), dom.top());
  CHECK(dom.is_bottom(stuck.post));

  // constant propagation through a stationary loop keeps the constant
  auto dc = md("constants", u, {"x"});
  Analyzer anc(dc);
  auto keep = anc.analyze(*parse_program("x := 2; while x <= 1 { x := x }"),
                          dc.top());
  CHECK(keep.post.parts[0].comps.at("x") == ValueAbs{ConstElem::constant(2)});
  // constants cannot express the guard set {0,1}, so the branch is not
  // pruned and the join loses the constant
  auto split = anc.analyze(*parse_program("x := 2; if x <= 1 { x := 3 } else { skip }"),
                           dc.top());
  CHECK(split.post.parts[0].comps.at("x") == ValueAbs{ConstElem::top()});
  auto merge = anc.analyze(*parse_program("if x <= 1 { x := 3 } else { x := 2 }"),
                           dc.top());
  CHECK(merge.post.parts[0].comps.at("x") == ValueAbs{ConstElem::top()});
}

TEST_CASE("machine loops settle by widening within a few rounds") {
  auto dom = md("interval", Universe::machine());
  Analyzer an(dom);
  auto p = parse_program("x := 0; while x < 100 { x := x + 1 }");
  auto r = an.analyze(*p, dom.top());
  auto iv = ival(r.post, "x");
  CHECK(!iv.bot);
  CHECK(dom.part_ops(0).contains(ValueAbs{iv}, 100));
  CHECK(iv.lo == 100);
  REQUIRE(r.loops.size() == 1);
  CHECK(r.loops[0].widened);
  CHECK(r.loops[0].stable);
  CHECK(r.loops[0].iterations <= 3);

  // forced widening on a ring behaves the same way
  auto dr = md("interval", Universe::ring(8));
  Analyzer anw(dr, AnalyzeOptions{LoopMode::Widening, 0, 100000});
  auto rw = anw.analyze(*parse_program("x := 0; while x < 5 { x := x + 1 }"),
                        dr.top());
  CHECK(rw.loops[0].widened);
  CHECK(rw.loops[0].stable);
  CHECK(dr.part_ops(0).contains(ValueAbs{ival(rw.post, "x")}, 5));

  // the default safety cap scales with the variable count
  Analyzer an2(md("interval", Universe::machine(), {"x", "y"}));
  CHECK(an2.options().widen_cap == 2 + 4 * 2);
  auto r2 = an2.analyze(
      *parse_program("x := 0; y := 0; while x < 9 { x := x + 1; y := y - 1 }"),
      an2.domain().top());
  CHECK(r2.loops[0].stable);
  CHECK(std::get<Interval>(r2.post.parts[0].comps.at("x")).lo == 9);
}

TEST_CASE("analysis soundly covers every concrete run") {
  auto u = Universe::ring(4);
  auto c = MemoryCarrier::over(u, {"x", "y"});
  auto cs = CollectingSem::make(MonadKind::Maybe, OmegaKind::Bool2, u, c);
  auto corpus = make_corpus(CorpusOptions{});
  std::mt19937_64 rng(17);

  for (auto spec : {"interval", "sign"}) {
    MemoryDomain dom(DomainSpec::parse(spec), u, {"x", "y"});
    Analyzer an(dom);
    auto elems = dom.enumerate();
    std::size_t count = 0;
    for (auto& cp : corpus_for_monad(corpus, MonadKind::Maybe)) {
      for (int k = 0; k < 3; ++k) {
        auto& a = elems[rng() % elems.size()];
        auto post = an.analyze(*cp, a).post;
        auto reach = collect_direct(
            cs, cp, pred_from_mask(c, dom.gamma_mask(a, *c)));
        std::uint64_t got = pred_to_mask(reach.post);
        CHECK((got & ~dom.gamma_mask(post, *c)) == 0);
        ++count;
      }
    }
    CHECK(count > 300);
  }
}

TEST_CASE("the best transformer never beats the analyzer from below") {
  auto u = Universe::ring(8);
  auto c = MemoryCarrier::over(u, {"x", "y"});
  auto cs = CollectingSem::make(MonadKind::Maybe, OmegaKind::Bool2, u, c);
  MemoryDomain dom(DomainSpec::parse("interval"), u, {"x", "y"});
  Analyzer an(dom);
  auto corpus = make_corpus(CorpusOptions{});
  auto elems = dom.enumerate();
  std::mt19937_64 rng(23);
  std::shuffle(elems.begin(), elems.end(), rng);
  if (elems.size() > 8) elems.resize(8);

  std::size_t runs = 0;
  for (auto& cp : corpus_for_monad(corpus, MonadKind::Maybe)) {
    if (runs > 400) break;
    for (auto& a : elems) {
      auto analyzed = an.analyze(*cp, a).post;
      auto best = best_transformer(cs, dom, cp, a);
      auto cmp = compare_with_best(dom, analyzed, best);
      CHECK(cmp.sound);
      ++runs;
    }
  }
  CHECK(runs > 300);

  // a strict gap: the analyzer cannot see that x - y cancels after y := x
  auto cancel = parse_program("y := x; x := x - y");
  auto wide = pre1(dom, "x", Interval::range(0, 7));
  auto acmp = compare_with_best(dom, an.analyze(*cancel, wide).post,
                                best_transformer(cs, dom, cancel, wide));
  CHECK(acmp.sound);
  CHECK(!acmp.exact);
  CHECK(ival(best_transformer(cs, dom, cancel, wide), "x") ==
        Interval::range(0, 0));

  // skip is exact: the two transformers agree under an insertion
  auto a0 = pre1(dom, "x", Interval::range(1, 6));
  CHECK(best_transformer(cs, dom, skip(), a0) == a0);
  auto cmp0 = compare_with_best(dom, an.analyze(*skip(), a0).post,
                                best_transformer(cs, dom, skip(), a0));
  CHECK(cmp0.sound);
  CHECK(cmp0.exact);
}

TEST_CASE("best transformer abstracts the exact reachable set") {
  auto u = Universe::ring(8);
  auto c = MemoryCarrier::over(u, {"x"});
  auto cs = CollectingSem::make(MonadKind::Powerset, OmegaKind::Bool2, u, c);
  auto dom = md("interval", u);

  // havoc from the whole carrier lands exactly on the havoc range
  auto h = parse_program("x := havoc(0, 1)");
  CHECK(ival(best_transformer(cs, dom, h, dom.top()), "x") ==
        Interval::range(0, 1));

  // gamma materialization: the finite preimage is enumerated literally
  auto fin = gamma_finite(dom, pre1(dom, "x", Interval::range(2, 4)), 100);
  REQUIRE(fin.has_value());
  CHECK(fin->size() == 3);
  CHECK((*fin)[0].at("x") == 2);

  auto none = gamma_finite(md("interval", Universe::machine()),
                           md("interval", Universe::machine()).top(), 100);
  CHECK(!none.has_value());

  // machine-side best transformer refuses unbounded preimages
  DenSem ds{MonadKind::Maybe, Universe::machine()};
  auto mdom = md("interval", Universe::machine());
  CHECK_THROWS_AS(
      best_transformer_machine(ds, mdom, parse_program("x := x"), mdom.top()),
      DomainError);
}

TEST_CASE("oplaxness of the induced family on sequencing") {
  auto u = Universe::ring(8);
  auto c = MemoryCarrier::over(u, {"x", "y"});
  auto cs = CollectingSem::make(MonadKind::Maybe, OmegaKind::Bool2, u, c);
  MemoryDomain dom(DomainSpec::parse("interval"), u, {"x", "y"});
  auto corpus = make_corpus(CorpusOptions{});
  auto elems = dom.enumerate();
  std::mt19937_64 rng(29);
  std::shuffle(elems.begin(), elems.end(), rng);
  if (elems.size() > 6) elems.resize(6);

  std::size_t runs = 0;
  for (auto& [p, q] : corpus.pairs) {
    if (!legal_for(scan_features(*p), MonadKind::Maybe) ||
          !legal_for(scan_features(*q), MonadKind::Maybe))
      continue;
    if (runs > 600) break;
    auto pq = seq_compose(p, q);
    for (auto& a : elems) {
      auto whole = best_transformer(cs, dom, pq, a);
      auto pieces =
          best_transformer(cs, dom, q, best_transformer(cs, dom, p, a));
      CHECK(dom.leq(whole, pieces));
      ++runs;
    }
  }
  CHECK(runs > 200);
}

TEST_CASE("loop statistics report what actually happened") {
  auto dom = md("interval", Universe::ring(8));
  Analyzer an(dom);
  auto r = an.analyze(
      *parse_program("while x < 2 { x := x + 1 }; while x < 4 { x := x + 1 }"),
      dom.top());
  REQUIRE(r.loops.size() == 2);
  CHECK(r.loops[0].guard == "x < 2");
  CHECK(r.loops[1].guard == "x < 4");
  CHECK(ival(r.post, "x") == Interval::range(4, 7));

  // nested loops surface one stat per head
  auto rn = an.analyze(
      *parse_program("while x < 3 { x := x + 1; while x < 2 { x := x + 1 } }"),
      dom.top());
  CHECK(rn.loops.size() >= 2);
  for (auto& ls : rn.loops) CHECK(ls.stable);
}
