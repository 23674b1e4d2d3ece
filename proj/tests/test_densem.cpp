#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aicat/corpus.hpp"
#include "aicat/densem.hpp"
#include "aicat/parse.hpp"

using namespace aicat;

namespace {
const Universe R4 = Universe::ring(4);

Memory mx(Value v) { return Memory{{"x", v}}; }
}  // namespace

TEST_CASE("expression evaluation") {
  DenSem machine;  // defaults: maybe / machine
  CHECK(eval_aexpr(Universe::machine(), *parse_aexpr_str("4*x - 2"), mx(1)) == 2);
  CHECK(eval_aexpr(Universe::machine(), *parse_aexpr_str("x"), mx(3)) == 3);
  CHECK(eval_aexpr(R4, *parse_aexpr_str("3 + 2"), mx(0)) == 1);
  CHECK_THROWS_AS(eval_aexpr(R4, *parse_aexpr_str("y"), mx(0)), EvalError);

  // machine arithmetic saturates instead of overflowing
  auto big = abin(AOp::Mul, lit(std::numeric_limits<Value>::max()), lit(2));
  CHECK(eval_aexpr(Universe::machine(), *big, mx(0)) ==
        std::numeric_limits<Value>::max());

  CHECK(eval_bexpr(Universe::machine(), *parse_bexpr_str("x <= 0"), mx(0)));
  CHECK(!eval_bexpr(Universe::machine(), *parse_bexpr_str("x <= 0"), mx(1)));
  CHECK(!eval_bexpr(Universe::machine(), *parse_bexpr_str("not (x = 2) and true"), mx(2)));
  CHECK(eval_bexpr(Universe::machine(), *parse_bexpr_str("x < 1 or x = 2"), mx(2)));
}

TEST_CASE("skip is the unit and diverge the bottom") {
  for (MonadKind k : {MonadKind::Maybe, MonadKind::Powerset, MonadKind::Subdist}) {
    DenSem ds{k, R4, {}};
    CHECK(denote(ds, *skip(), mx(2)) == MonadValue::unit(k, mx(2)));
    CHECK(denote(ds, *diverge(), mx(2)) == MonadValue::bottom(k));
  }
}

TEST_CASE("loops take least fixed points per monad") {
  DenSem maybe2{MonadKind::Maybe, Universe::ring(2), {}};
  CHECK(denote(maybe2, *parse_program("while true { skip }"), mx(0)) ==
        MonadValue::bottom(MonadKind::Maybe));

  // terminating loop, exact
  DenSem maybe4{MonadKind::Maybe, R4, {}};
  CHECK(denote(maybe4, *parse_program("while x <= 2 { x := x + 1 }"), mx(0)) ==
        MonadValue::unit(MonadKind::Maybe, mx(3)));

  // cycle detection: x flips 0 <-> 1 forever
  CHECK(denote(maybe4, *parse_program("while x <= 1 { x := 1 - x }"), mx(0)) ==
        MonadValue::bottom(MonadKind::Maybe));

  // powerset: exact Kleene fixpoint collects all exits
  DenSem pow4{MonadKind::Powerset, R4, {}};
  auto out = denote(pow4, *parse_program("x := havoc(0,2); while x <= 1 { x := x + 2 }"), mx(0));
  CHECK(out == MonadValue::pow({mx(2), mx(3)}));

  // fixpoint property: one more body step from the loop result changes nothing
  auto loop = parse_program("while x <= 1 { x := havoc(0, 3) }");
  auto lfp = denote(pow4, *loop, mx(0));
  KleisliFn again = [&](const Memory& m) { return denote(pow4, *loop, m); };
  CHECK(kleisli_apply(MonadKind::Powerset, again, lfp) == lfp);

  // subdist: geometric loop x:=flip(1/2,0,2) from 0 terminates with mass 1
  DenSem dist4{MonadKind::Subdist, R4, {}};
  DenoteStats st;
  auto d = denote(dist4, *parse_program("while x <= 1 { x := flip(1/2, 0, 2) }"), mx(0), &st);
  CHECK(st.approx);  // genuine limit, cut at eps
  REQUIRE(d.kind() == MonadKind::Subdist);
  Rational mass = d.total_mass();
  CHECK(Rational(1) - mass < Rational(1, 100000000));
  CHECK(d.as_dist().count(mx(2)) == 1);
}

TEST_CASE("worked havoc/branch example") {
  DenSem pow4{MonadKind::Powerset, R4, {}};
  auto p = parse_program("x := havoc(0,1); if x <= 0 { x := 0 } else { x := 1 }");
  CHECK(denote(pow4, *p, mx(3)) == MonadValue::pow({mx(0), mx(1)}));
}

TEST_CASE("effect forms are validated per monad") {
  DenSem maybe4{MonadKind::Maybe, R4, {}};
  DenSem pow4{MonadKind::Powerset, R4, {}};
  DenSem dist4{MonadKind::Subdist, R4, {}};
  auto hv = parse_program("x := havoc(0,1)");
  auto fl = parse_program("x := flip(1/2, 0, 1)");
  CHECK_THROWS_AS(denote(maybe4, *hv, mx(0)), EvalError);
  CHECK_THROWS_AS(denote(dist4, *hv, mx(0)), EvalError);
  CHECK_THROWS_AS(denote(maybe4, *fl, mx(0)), EvalError);
  CHECK_THROWS_AS(denote(pow4, *fl, mx(0)), EvalError);
  CHECK(denote(pow4, *hv, mx(0)).as_pow().size() == 2);
  CHECK(denote(dist4, *fl, mx(0)).as_dist().size() == 2);
}

TEST_CASE("machine fuel exhaustion is an error, not bottom") {
  DenSem m{MonadKind::Maybe, Universe::machine(), {}};
  m.opts.fuel = 50;
  CHECK_THROWS_AS(denote(m, *parse_program("while 0 <= x { x := x + 1 }"), mx(0)),
                  EvalError);
  // plenty of fuel: terminates normally
  m.opts.fuel = 1000;
  CHECK(denote(m, *parse_program("while x <= 99 { x := x + 1 }"), mx(0)) ==
        MonadValue::unit(MonadKind::Maybe, mx(100)));
}

TEST_CASE("scope operations") {
  DenSem maybe4{MonadKind::Maybe, R4, {}};
  Memory m{{"x", 2}};
  CHECK(denote_scoped(maybe4, *parse_program("addvar y"), m) ==
        MonadValue::unit(MonadKind::Maybe, Memory{{"x", 2}, {"y", 0}}));
  CHECK(denote_scoped(maybe4, *parse_program("delvar y"), Memory{{"x", 2}, {"y", 1}}) ==
        MonadValue::unit(MonadKind::Maybe, m));
  CHECK(denote_scoped(maybe4, *parse_program("addvar y; delvar y"), m) ==
        MonadValue::unit(MonadKind::Maybe, m));
  CHECK(denote_scoped(maybe4, *parse_program("addvar y; y := x + 1; x := y; delvar y"), m) ==
        MonadValue::unit(MonadKind::Maybe, Memory{{"x", 3}}));
  // plain denote refuses scope operations
  CHECK_THROWS_AS(denote(maybe4, *parse_program("addvar y"), m), EvalError);
  // scope violations surface as errors
  CHECK_THROWS_AS(denote_scoped(maybe4, *parse_program("addvar x"), m), EvalError);
  CHECK_THROWS_AS(denote_scoped(maybe4, *parse_program("delvar y"), m), EvalError);
}

TEST_CASE("sequencing denotes Kleisli composition, exactly, on the corpus") {
  auto corpus = make_corpus(CorpusOptions{});
  auto carrier = MemoryCarrier::over(R4, corpus.vars);
  for (MonadKind k : {MonadKind::Maybe, MonadKind::Powerset, MonadKind::Subdist}) {
    DenSem ds{k, R4, {}};
    std::size_t done = 0;
    for (const auto& [p, q] : pairs_for_monad(corpus, k)) {
      if (scan_features(*p).loop || scan_features(*q).loop) continue;
      auto pq = seq_compose(p, q);
      KleisliFn fp = [&, p = p](const Memory& m) { return denote(ds, *p, m); };
      KleisliFn fq = [&, q = q](const Memory& m) { return denote(ds, *q, m); };
      auto composed = kleisli_compose(k, fq, fp);
      for (const auto& m : carrier->memories)
        CHECK(denote(ds, *pq, m) == composed(m));
      if (++done == 60) break;  // 60 pairs x 16 states per monad
    }
    CHECK(done > 0);
  }
}

TEST_CASE("maybe loops agree with operational stepping") {
  // oracle: run the loop operationally with an explicit trace set
  DenSem maybe4{MonadKind::Maybe, R4, {}};
  auto body = parse_program("x := x * 2 + 1");
  auto loop = whileloop(parse_bexpr_str("x <= 2"), body);
  for (Value v = 0; v < 4; ++v) {
    Memory m = mx(v);
    std::set<Memory> seen;
    bool diverged = false;
    Memory cur = m;
    while (eval_bexpr(R4, *parse_bexpr_str("x <= 2"), cur)) {
      if (!seen.insert(cur).second) {
        diverged = true;
        break;
      }
      cur["x"] = R4.normalize(cur["x"] * 2 + 1);
    }
    auto got = denote(maybe4, *loop, m);
    if (diverged)
      CHECK(got == MonadValue::bottom(MonadKind::Maybe));
    else
      CHECK(got == MonadValue::unit(MonadKind::Maybe, cur));
  }
}

TEST_CASE("tabulate materializes the arrow over a carrier") {
  DenSem pow4{MonadKind::Powerset, R4, {}};
  auto t = tabulate(pow4, *parse_program("x := x + 1"), MemoryCarrier::over(R4, {"x"}));
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[3] == MonadValue::pow({mx(0)}));
  CHECK(!t.approx);
}
