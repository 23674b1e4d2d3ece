#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aicat/algebra.hpp"
#include "aicat/monad.hpp"
#include "aicat/parse.hpp"

using namespace aicat;

namespace {

const Universe R3 = Universe::ring(3);
const Universe R4 = Universe::ring(4);

CarrierPtr c3() { return MemoryCarrier::over(R3, {"x"}); }

Memory mx(Value v) { return Memory{{"x", v}}; }

// every Bool2 predicate on a <=64-state carrier
std::vector<Predicate> all_bool_preds(CarrierPtr c) {
  std::vector<Predicate> out;
  for (std::uint64_t m = 0; m < (1ull << c->size()); ++m)
    out.push_back(pred_from_mask(c, m));
  return out;
}

// deterministic powerset arrows on a small carrier
ArrowTable pow_arrow(CarrierPtr c, std::uint64_t salt) {
  ArrowTable t;
  t.carrier = c;
  t.kind = MonadKind::Powerset;
  for (std::size_t i = 0; i < c->size(); ++i) {
    MonadValue::PowV s;
    std::uint64_t h = (salt + i) * 2654435761u;
    for (std::size_t j = 0; j < c->size(); ++j)
      if ((h >> j) & 1) s.insert(c->memories[j]);
    t.rows.push_back(MonadValue::pow(std::move(s)));
  }
  return t;
}

const std::vector<OmegaVal> kWeights = {
    OmegaVal::no(), OmegaVal::finite(Rational(1, 2)), OmegaVal::yes(),
    OmegaVal::infinity()};

}  // namespace

TEST_CASE("truth lattice axioms on samples") {
  for (OmegaKind k : {OmegaKind::Bool2, OmegaKind::RInfLe, OmegaKind::RInfGe}) {
    TruthLattice l{k};
    std::vector<OmegaVal> pts =
        k == OmegaKind::Bool2
            ? std::vector<OmegaVal>{OmegaVal::no(), OmegaVal::yes()}
            : kWeights;
    for (const auto& a : pts) {
      CHECK(l.leq(l.bottom(), a));
      CHECK(l.leq(a, l.top()));
      CHECK(l.leq(a, a));
      for (const auto& b : pts) {
        CHECK(l.leq(l.meet(a, b), a));
        CHECK(l.leq(a, l.join(a, b)));
        CHECK(l.meet(a, b) == l.meet(b, a));
        for (const auto& c : pts) {
          if (l.leq(c, a) && l.leq(c, b)) CHECK(l.leq(c, l.meet(a, b)));
          if (l.leq(a, c) && l.leq(b, c)) CHECK(l.leq(l.join(a, b), c));
        }
      }
    }
  }
  // the two numeric lattices are opposite orders
  TruthLattice le{OmegaKind::RInfLe}, ge{OmegaKind::RInfGe};
  CHECK(le.top() == OmegaVal::infinity());
  CHECK(ge.top() == OmegaVal::finite(Rational(0)));
  CHECK(le.leq(OmegaVal::yes(), OmegaVal::infinity()));
  CHECK(ge.leq(OmegaVal::infinity(), OmegaVal::yes()));
}

TEST_CASE("shipped algebras validate; others are rejected") {
  for (auto [m, o] : std::vector<std::pair<MonadKind, OmegaKind>>{
           {MonadKind::Powerset, OmegaKind::Bool2},
           {MonadKind::Maybe, OmegaKind::Bool2},
           {MonadKind::Powerset, OmegaKind::RInfLe},
           {MonadKind::Powerset, OmegaKind::RInfGe}}) {
    auto alg = EMAlgebra::make(m, o);
    std::string diag;
    CHECK(check_em_axioms(alg, &diag));
    INFO(diag);
    CHECK(check_meet_preservation(alg, &diag));
  }
  CHECK_THROWS_AS(EMAlgebra::make(MonadKind::Subdist, OmegaKind::Bool2),
                  AlgebraError);
  CHECK_THROWS_AS(EMAlgebra::make(MonadKind::Maybe, OmegaKind::RInfLe),
                  AlgebraError);
}

TEST_CASE("algebra readings") {
  auto demonic = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  CHECK(demonic.apply_pow({}) == OmegaVal::yes());  // empty meet = top
  CHECK(demonic.apply_pow({OmegaVal::yes(), OmegaVal::yes()}) == OmegaVal::yes());
  CHECK(demonic.apply_pow({OmegaVal::yes(), OmegaVal::no()}) == OmegaVal::no());

  auto partial = EMAlgebra::make(MonadKind::Maybe, OmegaKind::Bool2);
  CHECK(partial.apply_maybe(std::nullopt) == OmegaVal::yes());  // divergence ok
  CHECK(partial.apply_maybe(OmegaVal::no()) == OmegaVal::no());

  auto inf = EMAlgebra::make(MonadKind::Powerset, OmegaKind::RInfLe);
  CHECK(inf.apply_pow({}) == OmegaVal::infinity());
  CHECK(inf.apply_pow({OmegaVal::finite(Rational(1, 2)), OmegaVal::yes()}) ==
        OmegaVal::finite(Rational(1, 2)));

  auto sup = EMAlgebra::make(MonadKind::Powerset, OmegaKind::RInfGe);
  CHECK(sup.apply_pow({}) == OmegaVal::no());
  CHECK(sup.apply_pow({OmegaVal::finite(Rational(1, 2)), OmegaVal::infinity()}) ==
        OmegaVal::infinity());
}

TEST_CASE("guard predicates split the carrier") {
  auto c = MemoryCarrier::over(R4, {"x"});
  auto b = parse_bexpr_str("x <= 0");
  auto gt = guard_predicate(R4, c, *b, true, OmegaKind::Bool2);
  auto gf = guard_predicate(R4, c, *b, false, OmegaKind::Bool2);
  CHECK(gt.at(mx(0)) == OmegaVal::yes());
  for (Value v = 1; v < 4; ++v) CHECK(gt.at(mx(v)) == OmegaVal::no());
  for (Value v = 0; v < 4; ++v)
    CHECK((gt.at(mx(v)).truthy() != gf.at(mx(v)).truthy()));

  auto always = guard_predicate(R4, c, *btrue(), true, OmegaKind::RInfLe);
  CHECK(always == Predicate::top(c, OmegaKind::RInfLe));
}

TEST_CASE("wp and sp of the unit arrow are the identity") {
  auto c = c3();
  ArrowTable unit;
  unit.carrier = c;
  unit.kind = MonadKind::Powerset;
  for (const auto& m : c->memories) unit.rows.push_back(MonadValue::pow({m}));

  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  for (const auto& p : all_bool_preds(c)) {
    CHECK(wp(alg, unit, p) == p);
    CHECK(sp(alg, unit, p) == p);
  }
}

TEST_CASE("worked sp example") {
  // f(x0) = {x1, x2}, f(x1) = {x2}, f(x2) = {} ; sp of {x0} = {x1, x2}
  auto c = c3();
  ArrowTable f;
  f.carrier = c;
  f.kind = MonadKind::Powerset;
  f.rows = {MonadValue::pow({mx(1), mx(2)}), MonadValue::pow({mx(2)}),
            MonadValue::pow({})};
  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  auto post = sp(alg, f, Predicate::singleton(c, mx(0), OmegaKind::Bool2));
  CHECK(post.at(mx(0)) == OmegaVal::no());
  CHECK(post.at(mx(1)) == OmegaVal::yes());
  CHECK(post.at(mx(2)) == OmegaVal::yes());

  // wp against the demonic reading: wp(f, {x2}) holds at x1 (all targets in
  // {x2}) and at x2 (no targets), not at x0
  auto pre = wp(alg, f, Predicate::singleton(c, mx(2), OmegaKind::Bool2));
  CHECK(pre.at(mx(0)) == OmegaVal::no());
  CHECK(pre.at(mx(1)) == OmegaVal::yes());
  CHECK(pre.at(mx(2)) == OmegaVal::yes());
}

TEST_CASE("maybe sp collects exact successors") {
  auto c = c3();
  ArrowTable f;
  f.carrier = c;
  f.kind = MonadKind::Maybe;
  f.rows = {MonadValue::unit(MonadKind::Maybe, mx(1)),
            MonadValue::bottom(MonadKind::Maybe),
            MonadValue::unit(MonadKind::Maybe, mx(1))};
  auto alg = EMAlgebra::make(MonadKind::Maybe, OmegaKind::Bool2);
  auto post = sp(alg, f, Predicate::top(c, OmegaKind::Bool2));
  CHECK(post.at(mx(0)) == OmegaVal::no());
  CHECK(post.at(mx(1)) == OmegaVal::yes());
  CHECK(post.at(mx(2)) == OmegaVal::no());
}

TEST_CASE("adjunction, exhaustive on Bool2") {
  auto c = c3();
  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  auto preds = all_bool_preds(c);
  for (std::uint64_t salt : {1, 2, 3, 4, 5, 6}) {
    auto f = pow_arrow(c, salt);
    for (const auto& phi : preds)
      for (const auto& psi : preds)
        CHECK(pred_leq(sp(alg, f, phi), psi) == pred_leq(phi, wp(alg, f, psi)));
  }
}

TEST_CASE("closed-form sp matches the least-psi adjoint search, Bool2") {
  auto c = c3();
  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  auto preds = all_bool_preds(c);
  for (std::uint64_t salt : {7, 8, 9}) {
    auto f = pow_arrow(c, salt);
    for (const auto& phi : preds) {
      Predicate least = Predicate::top(c, OmegaKind::Bool2);
      for (const auto& psi : preds)
        if (pred_leq(phi, wp(alg, f, psi)) && pred_leq(psi, least)) least = psi;
      CHECK(sp(alg, f, phi) == least);
    }
  }
}

TEST_CASE("adjunction, sampled quantitative weights") {
  auto c = c3();
  std::mt19937_64 rng(11);
  for (OmegaKind k : {OmegaKind::RInfLe, OmegaKind::RInfGe}) {
    auto alg = EMAlgebra::make(MonadKind::Powerset, k);
    for (int trial = 0; trial < 120; ++trial) {
      auto f = pow_arrow(c, rng());
      auto rand_pred = [&] {
        return Predicate::of_fn(c, k, [&](const Memory&) {
          return kWeights[rng() % kWeights.size()];
        });
      };
      auto phi = rand_pred(), psi = rand_pred();
      CHECK(pred_leq(sp(alg, f, phi), psi) == pred_leq(phi, wp(alg, f, psi)));
      // unit and counit of the adjunction
      CHECK(pred_leq(phi, wp(alg, f, sp(alg, f, phi))));
      CHECK(pred_leq(sp(alg, f, wp(alg, f, psi)), psi));
    }
  }
}

TEST_CASE("sp is strict and join-preserving; wp meet-preserving") {
  auto c = c3();
  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  ArrowTable bot;
  bot.carrier = c;
  bot.kind = MonadKind::Powerset;
  bot.rows.assign(c->size(), MonadValue::pow({}));
  for (const auto& phi : all_bool_preds(c))
    CHECK(sp(alg, bot, phi) == Predicate::bottom(c, OmegaKind::Bool2));

  auto preds = all_bool_preds(c);
  for (std::uint64_t salt : {13, 14}) {
    auto f = pow_arrow(c, salt);
    for (const auto& a : preds)
      for (const auto& b : preds) {
        CHECK(sp(alg, f, pred_join(a, b)) ==
              pred_join(sp(alg, f, a), sp(alg, f, b)));
        CHECK(wp(alg, f, pred_meet(a, b)) ==
              pred_meet(wp(alg, f, a), wp(alg, f, b)));
      }
  }
}

TEST_CASE("sp/wp continuity along ascending arrow chains") {
  auto c = c3();
  auto alg = EMAlgebra::make(MonadKind::Powerset, OmegaKind::Bool2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    // ascending chain of arrows: add successors step by step
    std::vector<ArrowTable> chain;
    ArrowTable cur;
    cur.carrier = c;
    cur.kind = MonadKind::Powerset;
    cur.rows.assign(c->size(), MonadValue::pow({}));
    chain.push_back(cur);
    for (int step = 0; step < 4; ++step) {
      auto& row = cur.rows[rng() % c->size()];
      auto s = row.as_pow();
      s.insert(c->memories[rng() % c->size()]);
      row = MonadValue::pow(std::move(s));
      chain.push_back(cur);
    }
    // the lub is the last element (chain built by accumulation)
    const ArrowTable& lub = chain.back();
    for (const auto& phi : all_bool_preds(c)) {
      Predicate join_sp = Predicate::bottom(c, OmegaKind::Bool2);
      Predicate meet_wp = Predicate::top(c, OmegaKind::Bool2);
      for (const auto& fi : chain) {
        join_sp = pred_join(join_sp, sp(alg, fi, phi));
        meet_wp = pred_meet(meet_wp, wp(alg, fi, phi));
      }
      CHECK(sp(alg, lub, phi) == join_sp);
      CHECK(wp(alg, lub, phi) == meet_wp);
    }
  }
}

TEST_CASE("predicate mask round-trip") {
  auto c = c3();
  for (std::uint64_t m = 0; m < 8; ++m)
    CHECK(pred_to_mask(pred_from_mask(c, m)) == m);
}
