#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aicat/ast.hpp"
#include "aicat/corpus.hpp"
#include "aicat/parse.hpp"
#include "aicat/scope.hpp"

using namespace aicat;

TEST_CASE("parse basics") {
  auto p = parse_program("skip");
  CHECK(std::holds_alternative<PSkip>(p->node));

  p = parse_program("x := 4*x - 2");
  auto* as = std::get_if<PAssign>(&p->node);
  REQUIRE(as);
  CHECK(as->var == "x");
  CHECK(print(*as->expr) == "4 * x - 2");
  // shape: Sub(Mul(4,x), 2)
  auto* top = std::get_if<ABin>(&as->expr->node);
  REQUIRE(top);
  CHECK(top->op == AOp::Sub);
  auto* mul = std::get_if<ABin>(&top->lhs->node);
  REQUIRE(mul);
  CHECK(mul->op == AOp::Mul);

  // skip units vanish in normal form
  p = parse_program("skip; x := 1");
  CHECK(std::holds_alternative<PAssign>(p->node));
  CHECK(equal(p, parse_program("x := 1; skip")));
}

TEST_CASE("unary minus desugars to subtraction from zero") {
  CHECK(equal(*parse_aexpr_str("-x"), *parse_aexpr_str("0 - x")));
  CHECK(equal(*parse_aexpr_str("- (x + 1)"), *parse_aexpr_str("0 - (x + 1)")));
  // literal minus stays a literal
  auto e = parse_aexpr_str("-3");
  auto* l = std::get_if<ALit>(&e->node);
  REQUIRE(l);
  CHECK(l->value == -3);
}

TEST_CASE("parse errors carry position and reject keywords") {
  CHECK_THROWS_AS(parse_program("x :="), ParseError);
  CHECK_THROWS_AS(parse_program("while := 3"), ParseError);
  CHECK_THROWS_AS(parse_program("if x <= 0 { skip }"), ParseError);  // no else
  try {
    parse_program("x := 1;\ny := ");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("effectful statement forms parse") {
  auto p = parse_program("x := havoc(0, 3)");
  CHECK(std::holds_alternative<PHavoc>(p->node));
  p = parse_program("x := flip(1/3, x, x + 1)");
  auto* f = std::get_if<PFlip>(&p->node);
  REQUIRE(f);
  CHECK(f->prob == Rational(1, 3));
  p = parse_program("diverge");
  CHECK(std::holds_alternative<PDiverge>(p->node));
  p = parse_program("addvar y; y := x; delvar y");
  CHECK(std::holds_alternative<PSeq>(p->node));
}

TEST_CASE("sequencing is a monoid up to normal form") {
  auto a = assign("x", lit(1));
  auto b = assign("y", var("x"));
  auto c = whileloop(bcmp(CmpOp::Le, var("x"), lit(2)),
                     assign("x", abin(AOp::Add, var("x"), lit(1))));

  CHECK(equal(normalize(seq(skip(), a)), normalize(a)));
  CHECK(equal(normalize(seq(a, skip())), normalize(a)));
  CHECK(equal(normalize(seq(seq(a, b), c)), normalize(seq(a, seq(b, c)))));

  CHECK(equal(seq_compose(skip(), a), a));
  CHECK(equal(seq_compose(a, skip()), a));
  CHECK(equal(seq_compose(seq_compose(a, b), c),
              seq_compose(a, seq_compose(b, c))));

  // normal form is right-associated: the head of a composite is never a Seq
  auto n = normalize(seq(seq(a, b), seq(c, a)));
  auto* s = std::get_if<PSeq>(&n->node);
  REQUIRE(s);
  CHECK(!std::holds_alternative<PSeq>(s->first->node));
}

TEST_CASE("print/parse round-trip on the generated corpus") {
  auto corpus = make_corpus(CorpusOptions{});
  REQUIRE(corpus.programs.size() > 100);
  for (const auto& cp : corpus.programs) {
    auto back = parse_program(print(*cp.prog));
    CHECK(equal(back, cp.prog));
  }
}

TEST_CASE("ast_size counts statement and expression nodes") {
  CHECK(ast_size(*skip()) == 1);
  CHECK(ast_size(*parse_program("x := 1")) == 2);       // assign + literal
  CHECK(ast_size(*parse_program("x := 1; y := 2")) == 5);
  // while(1) + comparison(1) + assign(1) + x+1(3)
  CHECK(ast_size(*parse_program("while x <= 1 { x := x + 1 }")) == 6);
}

TEST_CASE("variable collection") {
  auto p = parse_program("x := y + 1; if z <= 0 { skip } else { w := 0 }");
  auto vs = vars_of(*p);
  CHECK(vs == std::set<std::string>{"w", "x", "y", "z"});
  CHECK(assigned_vars(*p) == std::set<std::string>{"w", "x"});
}

TEST_CASE("scope checking follows the variable-set arrows") {
  VarSet in{"x"};

  auto r = check_scoped(*skip(), in);
  CHECK(r.ok);
  CHECK(r.out == in);

  r = check_scoped(*parse_program("addvar y; y := x"), in);
  CHECK(r.ok);
  CHECK(r.out == VarSet{"x", "y"});

  r = check_scoped(*parse_program("delvar y"), in);
  CHECK(!r.ok);
  CHECK(r.error.find("y") != std::string::npos);

  // addvar of a live variable is an error
  CHECK(!check_scoped(*parse_program("addvar x"), in).ok);
  // reading a dropped variable is an error
  CHECK(!check_scoped(*parse_program("addvar y; delvar y; x := y"), in).ok);
  // while body must preserve the scope
  CHECK(!check_scoped(*parse_program("while x <= 0 { addvar y }"), in).ok);
  CHECK(check_scoped(*parse_program("while x <= 0 { addvar y; delvar y }"), in).ok);
  // branches must agree on the output scope
  CHECK(!check_scoped(*parse_program("if x <= 0 { addvar y } else { skip }"), in).ok);

  auto pq = check_scoped_seq(*parse_program("addvar y"),
                             *parse_program("y := x + 1"), in);
  CHECK(pq.ok);
  CHECK(pq.out == VarSet{"x", "y"});
}

TEST_CASE("scope output is deterministic") {
  auto p = parse_program("addvar a; a := x; delvar a; addvar b");
  auto r1 = check_scoped(*p, {"x"});
  auto r2 = check_scoped(*p, {"x"});
  REQUIRE(r1.ok);
  CHECK(r1.out == r2.out);
}
