#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aicat/lambda.hpp"

using namespace aicat;

namespace {

SetVal leaf(std::size_t i) {
  SetVal v;
  v.tag = SetVal::Tag::Leaf;
  v.idx = i;
  return v;
}

SetVal fun(std::vector<SetVal> kids) {
  SetVal v;
  v.tag = SetVal::Tag::FunV;
  v.kids = std::move(kids);
  return v;
}

AbsVal iv(std::size_t lo, std::size_t hi) {
  AbsVal a;
  a.tag = AbsVal::Tag::Base;
  a.lo = lo;
  a.hi = hi;
  return a;
}

// Two-element base with a negation constant: small enough that every
// function space is enumerable by hand.
Signature bit_sig() {
  Signature sig;
  sig.bases["bit"] = {"0", "1"};
  sig.constants["neg"] = {lt_arrow(lt_base("bit"), lt_base("bit")),
                          fun({leaf(1), leaf(0)})};
  return sig;
}

TypedTerm tc(const std::string& term, const std::string& ctx_ty,
             const Signature& sig) {
  return typecheck(parse_lterm(term), "x", parse_ltype(ctx_ty), sig);
}

}  // namespace

TEST_CASE("types parse, print and measure") {
  auto t = parse_ltype("(arrow (prod nat unit) nat)");
  CHECK(t->tag == LType::Tag::Arrow);
  CHECK(lt_str(t) == "(arrow (prod nat unit) nat)");
  CHECK(lt_equal(t, lt_arrow(lt_prod(lt_base("nat"), lt_unit()), lt_base("nat"))));
  CHECK(!lt_equal(t, lt_base("nat")));
  CHECK(arrow_nesting(lt_base("nat")) == 0);
  CHECK(arrow_nesting(t) == 1);
  CHECK(arrow_nesting(parse_ltype("(arrow nat (arrow nat nat))")) == 2);
  CHECK(arrow_nesting(parse_ltype("(prod (arrow nat nat) nat)")) == 1);
  CHECK_THROWS_AS(parse_ltype("(arrow nat"), LambdaError);
  CHECK_THROWS_AS(parse_ltype("(tuple nat nat)"), LambdaError);
}

TEST_CASE("terms parse, print and substitute without capture") {
  auto m = parse_lterm("(lam y nat (app succ y))");
  CHECK(m->tag == LTerm::Tag::Lam);
  CHECK(lterm_str(m) == "(lam y nat (app succ y))");
  CHECK(lterm_depth(parse_lterm("x")) == 0);
  CHECK(lterm_depth(m) == 2);
  CHECK_THROWS_AS(parse_lterm("(app succ"), LambdaError);

  // substituting under a binder of the same name leaves the body alone
  auto same = lterm_subst(parse_lterm("(lam x nat x)"), "x", parse_lterm("succ"));
  CHECK(lterm_str(same) == "(lam x nat x)");

  // substituting a term that mentions the binder forces a rename
  auto sig = Signature::standard();
  auto body = parse_lterm("(lam y nat (pair x y))");
  auto swapped = lterm_subst(body, "x", parse_lterm("y"));
  auto tm = typecheck(swapped, "y", lt_base("nat"), sig);
  SetSem ss(sig);
  auto table = eval_set(ss, tm, leaf(3));
  REQUIRE(table.tag == SetVal::Tag::FunV);
  // first component is the outer y (= 3), second the lambda's own argument
  CHECK(table.kids[1].kids[0] == leaf(3));
  CHECK(table.kids[1].kids[1] == leaf(1));
}

TEST_CASE("typechecking resolves symbols and rejects ill-typed terms") {
  auto sig = Signature::standard();
  CHECK(lt_equal(tc("x", "nat", sig).type, lt_base("nat")));
  CHECK(lt_equal(tc("(pair x x)", "nat", sig).type,
                 lt_prod(lt_base("nat"), lt_base("nat"))));
  CHECK(lt_equal(tc("(app succ x)", "nat", sig).type, lt_base("nat")));
  CHECK(lt_equal(tc("succ", "unit", sig).type,
                 lt_arrow(lt_base("nat"), lt_base("nat"))));
  CHECK(lt_equal(tc("(app cplus x)", "nat", sig).type,
                 lt_arrow(lt_base("nat"), lt_base("nat"))));

  CHECK_THROWS_AS(tc("y", "nat", sig), LambdaError);               // unbound
  CHECK_THROWS_AS(tc("(app succ (pair x x))", "nat", sig), LambdaError);
  CHECK_THROWS_AS(tc("(app x x)", "nat", sig), LambdaError);       // not a fn
  CHECK_THROWS_AS(tc("(proj1 x)", "nat", sig), LambdaError);
  CHECK_THROWS_AS(tc("(app succ unknown)", "nat", sig), LambdaError);

  // a binder shadows a constant of the same name
  auto shadow = tc("(lam succ nat succ)", "unit", sig);
  CHECK(lt_equal(shadow.type, lt_arrow(lt_base("nat"), lt_base("nat"))));
  SetSem ss(sig);
  auto v = eval_set(ss, shadow, SetVal{});
  CHECK(v == fun({leaf(0), leaf(1), leaf(2), leaf(3)}));  // identity, not succ
}

TEST_CASE("set evaluation runs the finite tables") {
  auto sig = Signature::standard();
  SetSem ss(sig);
  CHECK(eval_set(ss, tc("x", "nat", sig), leaf(2)) == leaf(2));
  CHECK(eval_set(ss, tc("(proj1 (pair x x))", "nat", sig), leaf(3)) == leaf(3));
  CHECK(eval_set(ss, tc("(app (lam y nat (app succ y)) x)", "nat", sig),
                 leaf(1)) == leaf(2));
  // capped arithmetic: 2 + 2 and 2 + 3 both land on 3
  SetVal two2;
  two2.tag = SetVal::Tag::PairV;
  two2.kids = {leaf(2), leaf(2)};
  CHECK(eval_set(ss, tc("(app plus x)", "(prod nat nat)", sig), two2) == leaf(3));
  CHECK(eval_set(ss, tc("(app (app cplus two) x)", "nat", sig), leaf(3)) ==
        leaf(3));
  CHECK(eval_set(ss, tc("(app iszero x)", "nat", sig), leaf(0)) == leaf(1));
  CHECK(eval_set(ss, tc("(app iszero x)", "nat", sig), leaf(2)) == leaf(0));
  CHECK(eval_set(ss, tc("(app pred x)", "nat", sig), leaf(0)) == leaf(0));

  // enumeration and indexing agree
  auto pt = parse_ltype("(prod nat nat)");
  CHECK(ss.space_size(lt_base("nat")) == 4);
  CHECK(ss.space_size(pt) == 16);
  CHECK(ss.space_size(parse_ltype("(arrow nat nat)")) == 256);
  auto& all = ss.enumerate(pt);
  REQUIRE(all.size() == 16);
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(ss.index_of(pt, all[i]) == i);
  // pairs enumerate left-major, matching the uncurried plus table
  bool at_major = all[10] == two2;  // 2*4 + 2
  CHECK(at_major);

  // the four-billion element function space stays symbolic
  CHECK_THROWS_AS(ss.enumerate(parse_ltype("(arrow (prod nat nat) nat)")),
                  LambdaError);
}

TEST_CASE("values serialize and parse back") {
  auto sig = Signature::standard();
  SetSem ss(sig);
  auto nn = parse_ltype("(prod nat nat)");
  SetVal pv;
  pv.tag = SetVal::Tag::PairV;
  pv.kids = {leaf(1), leaf(3)};
  auto j = ss.value_json(nn, pv);
  CHECK(ss.value_of_json(nn, j) == pv);
  CHECK(ss.value_str(nn, pv) == "(1,3)");

  auto arrow = parse_ltype("(arrow nat nat)");
  auto succ = sig.constants.at("succ").val;
  CHECK(ss.value_of_json(arrow, ss.value_json(arrow, succ)) == succ);
  CHECK(ss.value_json(arrow, succ).contains("table"));

  auto round = signature_of_json(signature_json(sig));
  CHECK(round.bases == sig.bases);
  REQUIRE(round.constants.size() == sig.constants.size());
  for (auto& [name, c] : sig.constants) {
    CHECK(lt_equal(round.constants.at(name).ty, c.ty));
    CHECK(round.constants.at(name).val == c.val);
  }
  CHECK_THROWS_AS(signature_of_json(Json{{"bases", 3}}), LambdaError);
}

TEST_CASE("abstract posets at each type former") {
  auto as = AbsSem(std::make_shared<SetSem>(Signature::standard()));
  auto nat = lt_base("nat");
  CHECK(as.poset_size(lt_unit()) == 1);
  CHECK(as.poset_size(nat) == 11);  // bottom + 10 index intervals
  CHECK(as.poset_size(lt_prod(nat, nat)) == 101);  // one shared bottom pair

  auto& elems = as.enumerate(nat);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    CHECK(as.index_of(nat, elems[i]) == i);
    CHECK(as.leq(nat, as.bottom(nat), elems[i]));
    CHECK(as.leq(nat, elems[i], as.top(nat)));
  }
  CHECK(as.bottom(nat).bot);
  CHECK(as.top(nat) == iv(0, 3));
  CHECK(as.leq(nat, iv(1, 2), iv(0, 3)));
  CHECK(!as.leq(nat, iv(0, 3), iv(1, 2)));

  // arrow posets hold exactly the monotone tables
  auto bs = AbsSem(std::make_shared<SetSem>(bit_sig()));
  auto bb = parse_ltype("(arrow bit bit)");
  CHECK(bs.poset_size(lt_base("bit")) == 4);    // diamond
  CHECK(bs.poset_size(bb) == 36);               // monotone diamond self-maps
  for (auto& f : bs.enumerate(bb)) {
    auto rep = bs.check_monotone(bb, f);
    CHECK(rep.holds);
  }
  // pointwise order on tables
  CHECK(bs.leq(bb, bs.bottom(bb), bs.top(bb)));
}

TEST_CASE("the lifted connection is an adjunction at every small type") {
  auto bs = AbsSem(std::make_shared<SetSem>(bit_sig()));
  for (auto t : {"bit", "unit", "(prod bit bit)", "(arrow bit bit)",
                 "(prod bit (arrow bit bit))"}) {
    auto rep = bs.check_adjunction(parse_ltype(t), 4000, 3);
    CHECK(rep.holds);
    CHECK(rep.checked > 0);
    INFO(t, ": ", rep.detail);
    // these spaces are small enough to sweep completely
    CHECK(rep.exhaustive);
  }
  // over the four-element base the arrow poset outgrows the table cap and
  // the checker refuses instead of guessing
  auto as = AbsSem(std::make_shared<SetSem>(Signature::standard()));
  for (auto t : {"nat", "(prod nat nat)"}) {
    auto rep = as.check_adjunction(parse_ltype(t), 400, 3);
    CHECK(rep.holds);
  }
  CHECK_THROWS_AS(as.check_adjunction(parse_ltype("(arrow nat nat)"), 10, 3),
                  LambdaError);
}

TEST_CASE("gamma and alpha at unit and base are the forced maps") {
  auto as = AbsSem(std::make_shared<SetSem>(Signature::standard()));
  auto nat = lt_base("nat");

  CHECK(bits_count(as.gamma(lt_unit(), as.top(lt_unit()))) == 1);
  CHECK(as.alpha(lt_unit(), bits_make(1)) == as.top(lt_unit()));

  auto g = as.gamma(nat, iv(1, 2));
  CHECK(bits_count(g) == 2);
  CHECK(bits_get(g, 1));
  CHECK(bits_get(g, 2));
  auto u = bits_make(4);
  bits_set(u, 1);
  bits_set(u, 3);
  CHECK(as.alpha(nat, u) == iv(1, 3));
  CHECK(as.alpha(nat, bits_make(4)) == as.bottom(nat));

  // alpha over explicit values agrees with alpha over bitsets
  std::mt19937_64 rng(9);
  auto nn = lt_prod(nat, nat);
  auto& conc = as.sets().enumerate(nn);
  for (int trial = 0; trial < 50; ++trial) {
    auto bits = bits_make(conc.size());
    std::vector<const SetVal*> ptrs;
    for (std::size_t i = 0; i < conc.size(); ++i)
      if (rng() & 1) {
        bits_set(bits, i);
        ptrs.push_back(&conc[i]);
      }
    CHECK(as.alpha(nn, bits) == as.alpha_values(nn, ptrs));
  }
}

TEST_CASE("concretization of the top table is the whole function space") {
  auto bs = AbsSem(std::make_shared<SetSem>(bit_sig()));
  auto bb = parse_ltype("(arrow bit bit)");
  CHECK(bits_count(bs.gamma(bb, bs.top(bb))) == 4);
  // and the bottom table's concretization is empty
  CHECK(bits_count(bs.gamma(bb, bs.bottom(bb))) == 0);
}

TEST_CASE("interval insertion does not lift to arrow types") {
  auto bs = AbsSem(std::make_shared<SetSem>(bit_sig()));
  auto bb = parse_ltype("(arrow bit bit)");
  auto rep = bs.check_insertion(bb);
  CHECK(!rep.holds);
  REQUIRE(rep.witness.has_value());
  // the witness re-validates: round-tripping through gamma loses it
  auto& w = *rep.witness;
  auto back = bs.alpha(bb, bs.gamma(bb, w));
  CHECK(!(back == w));
  CHECK(bs.leq(bb, back, w));  // only ever downward

  // most monotone tables describe no function exactly
  std::size_t lost = 0;
  for (auto& f : bs.enumerate(bb)) {
    auto round = bs.alpha(bb, bs.gamma(bb, f));
    if (!(round == f)) ++lost;
    CHECK(bs.leq(bb, round, f));
  }
  CHECK(lost == 26);
}

TEST_CASE("insertion holds at base, unit and product types") {
  auto as = AbsSem(std::make_shared<SetSem>(Signature::standard()));
  auto nat = lt_base("nat");
  for (auto t : {nat, lt_unit(), lt_prod(nat, nat), lt_prod(lt_unit(), nat),
                 lt_prod(lt_prod(nat, nat), nat)}) {
    auto rep = as.check_insertion(t);
    INFO(lt_str(t));
    CHECK(rep.holds);
    CHECK(rep.checked == as.poset_size(t));
    CHECK(!rep.witness.has_value());
  }
}

TEST_CASE("pairs with an empty component collapse to the bottom pair") {
  auto as = AbsSem(std::make_shared<SetSem>(Signature::standard()));
  auto nat = lt_base("nat");
  auto nn = lt_prod(nat, nat);

  CHECK(as.empty_gamma(nat, as.bottom(nat)));
  CHECK(!as.empty_gamma(nat, iv(0, 0)));
  CHECK(!as.empty_gamma(lt_unit(), as.top(lt_unit())));
  CHECK(as.empty_gamma(nn, as.bottom(nn)));
  CHECK(!as.empty_gamma(nn, as.top(nn)));

  // exactly one enumerated pair denotes the empty set
  std::size_t empties = 0;
  for (auto& a : as.enumerate(nn)) empties += as.empty_gamma(nn, a);
  CHECK(empties == 1);

  // the canonical bottom pair has bottom components
  auto bot = as.bottom(nn);
  REQUIRE(bot.tag == AbsVal::Tag::PairA);
  CHECK(bot.kids[0].bot);
  CHECK(bot.kids[1].bot);

  // alpha of the empty set is that canonical pair
  CHECK(as.alpha(nn, bits_make(16)) == bot);
}

TEST_CASE("best abstraction of the walkthrough terms") {
  auto sig = Signature::standard();
  auto as = AbsSem(std::make_shared<SetSem>(sig));
  auto nat = lt_base("nat");

  // successor pushes an interval up by one, capped at the top element
  auto succ_x = tc("(app succ x)", "nat", sig);
  CHECK(as.csemg(succ_x, iv(0, 1)) == iv(1, 2));
  CHECK(as.csemg(succ_x, iv(2, 3)) == iv(3, 3));
  CHECK(as.csemg(succ_x, as.bottom(nat)) == as.bottom(nat));

  // identity is exact on every element: the connection is an insertion
  auto id_x = tc("x", "nat", sig);
  for (auto& a : as.enumerate(nat)) CHECK(as.csemg(id_x, a) == a);

  // at the unit context a constant abstracts its denotation point
  auto two_tm = tc("two", "unit", sig);
  CHECK(as.csemg(two_tm, as.top(lt_unit())) == iv(2, 2));

  // uncurried addition over a rectangle of inputs
  auto plus_tm = tc("(app plus x)", "(prod nat nat)", sig);
  AbsVal rect;
  rect.tag = AbsVal::Tag::PairA;
  rect.kids = {iv(0, 1), iv(1, 2)};
  CHECK(as.csemg(plus_tm, rect) == iv(1, 3));
}

TEST_CASE("inductive semantics preserves structure with monotone tables") {
  auto sig = Signature::standard();
  auto as = AbsSem(std::make_shared<SetSem>(sig));
  auto nat = lt_base("nat");

  // identity and diagonal come out on the nose
  auto id_x = tc("x", "nat", sig);
  for (auto& a : as.enumerate(nat)) CHECK(as.psem_apply(id_x, a) == a);

  auto diag = tc("(pair x x)", "nat", sig);
  auto d = as.psem_apply(diag, iv(1, 2));
  REQUIRE(d.tag == AbsVal::Tag::PairA);
  CHECK(d.kids[0] == iv(1, 2));
  CHECK(d.kids[1] == iv(1, 2));
  // the diagonal of bottom is the canonical bottom pair, not a stray one
  CHECK(as.psem_apply(diag, as.bottom(nat)) ==
        as.bottom(lt_prod(nat, nat)));

  // a constant application is its seed table applied pointwise
  auto succ_x = tc("(app succ x)", "nat", sig);
  for (auto& a : as.enumerate(nat))
    CHECK(as.psem_apply(succ_x, a) == as.csemg(succ_x, a));

  // the seed of an uncurried constant is computed without enumerating the
  // concrete function space
  auto& seed = as.constant_seed("plus");
  REQUIRE(seed.tag == AbsVal::Tag::FunA);
  auto nn = lt_prod(nat, nat);
  AbsVal corner;
  corner.tag = AbsVal::Tag::PairA;
  corner.kids = {iv(0, 0), iv(0, 1)};
  CHECK(seed.kids[as.index_of(nn, corner)] == iv(0, 1));

  // lambda literals materialize as monotone tables
  auto lam = tc("(lam y nat (app succ y))", "unit", sig);
  auto table = as.psem_apply(lam, as.top(lt_unit()));
  REQUIRE(table.tag == AbsVal::Tag::FunA);
  auto rep = as.check_monotone(lt_arrow(nat, nat), table);
  CHECK(rep.holds);
  CHECK(table.kids[as.index_of(nat, iv(0, 1))] == iv(1, 2));
}

TEST_CASE("corpus shape: enough terms over first-order types") {
  auto sig = Signature::standard();
  auto corpus = lambda_corpus();
  CHECK(corpus.size() >= 30);
  for (auto& c : corpus) {
    auto tm = typecheck(c.term, c.ctx_name, c.ctx, sig);
    CHECK(tm.type != nullptr);
  }
  for (auto& t : corpus_types(corpus, sig))
    CHECK(t->tag != LType::Tag::Arrow);

  auto ext = lambda_corpus_extended();
  CHECK(!ext.empty());
  bool arrow_result = false;
  for (auto& c : ext) {
    auto tm = typecheck(c.term, c.ctx_name, c.ctx, sig);
    arrow_result |= tm.type->tag == LType::Tag::Arrow;
  }
  CHECK(arrow_result);
}

TEST_CASE("the four law sweeps hold on the corpus") {
  auto sig = Signature::standard();
  auto as = AbsSem(std::make_shared<SetSem>(sig));
  auto corpus = lambda_corpus();

  auto dom = check_lambda_dominance(as, corpus, sig);
  CHECK(dom.ok);
  CHECK(dom.checks >= 1000);
  CHECK(dom.violation.empty());

  auto opl = check_lambda_oplax(as, corpus, sig);
  CHECK(opl.ok);
  CHECK(opl.checks >= 10000);

  auto nor = check_lambda_normality(as, corpus, sig);
  CHECK(nor.ok);
  CHECK(nor.checks >= 100);

  auto mono = check_lambda_monotone(as, corpus, sig);
  CHECK(mono.ok);
  CHECK(mono.checks >= 1000);

  // arrow-result terms keep dominance and monotonicity as well
  auto ext = lambda_corpus_extended();
  CHECK(check_lambda_dominance(as, ext, sig).ok);
  CHECK(check_lambda_monotone(as, ext, sig).ok);
}

TEST_CASE("abstract values render and serialize") {
  CHECK(av_str(iv(1, 2)) == "[1,2]");
  AbsVal b;
  b.tag = AbsVal::Tag::Base;
  b.bot = true;
  CHECK(av_str(b) == "_|_");
  AbsVal p;
  p.tag = AbsVal::Tag::PairA;
  p.kids = {iv(0, 0), iv(1, 3)};
  CHECK(av_str(p) == "([0,0],[1,3])");
  auto j = av_json(p);
  bool structured = j.is_object() || j.is_array();
  CHECK(structured);
}
