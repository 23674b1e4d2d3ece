#include "aicat/corpus.hpp"

#include <algorithm>
#include <map>

namespace aicat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void scan(const Program& p, ProgramFeatures& f) {
  std::visit(overloaded{[&](const PSeq& s) {
                          scan(*s.first, f);
                          scan(*s.second, f);
                        },
                        [&](const PFlip&) { f.flip = true; },
                        [&](const PHavoc&) { f.havoc = true; },
                        [&](const PAddVar&) { f.scope = true; },
                        [&](const PDelVar&) { f.scope = true; },
                        [&](const PIf& i) {
                          scan(*i.then_branch, f);
                          scan(*i.else_branch, f);
                        },
                        [&](const PWhile& w) {
                          f.loop = true;
                          scan(*w.body, f);
                        },
                        [](const auto&) {}},
             p.node);
}

}  // namespace

ProgramFeatures scan_features(const Program& p) {
  ProgramFeatures f;
  scan(p, f);
  return f;
}

bool legal_for(const ProgramFeatures& f, MonadKind k) {
  if (f.scope) return false;
  if (f.flip && k != MonadKind::Subdist) return false;
  if (f.havoc && k != MonadKind::Powerset) return false;
  return true;
}

namespace {

std::vector<ProgramPtr> handwritten_list() {
  auto x = var("x"), y = var("y");
  auto inc = [&](AExprPtr v) { return abin(AOp::Add, v, lit(1)); };
  std::vector<ProgramPtr> out;
  // affine step and the absolute-value branch: the classic pair whose
  // composite transformer beats the composition of its parts
  out.push_back(assign("x", abin(AOp::Sub, abin(AOp::Mul, lit(4), x), lit(2))));
  out.push_back(
      ifelse(bcmp(CmpOp::Le, x, lit(0)),
             assign("x", abin(AOp::Sub, lit(0), x)), skip()));
  // counting loops (small ring-sized and the widening staple)
  out.push_back(seq(assign("x", lit(0)),
                    whileloop(bcmp(CmpOp::Lt, x, lit(4)), assign("x", inc(x)))));
  out.push_back(seq(assign("x", lit(0)),
                    whileloop(bcmp(CmpOp::Lt, x, lit(100)), assign("x", inc(x)))));
  out.push_back(assign("x", abin(AOp::Mul, x, x)));
  out.push_back(assign("y", abin(AOp::Mul, x, lit(3))));
  // arithmetic swap
  out.push_back(seq(assign("x", abin(AOp::Add, x, y)),
                    seq(assign("y", abin(AOp::Sub, x, y)),
                        assign("x", abin(AOp::Sub, x, y)))));
  // relational guard (outside the exact fragment of the guard abstraction)
  out.push_back(ifelse(bcmp(CmpOp::Le, x, y), assign("x", y), assign("y", x)));
  // nested loops
  out.push_back(whileloop(
      bcmp(CmpOp::Le, x, lit(1)),
      seq(assign("y", lit(0)),
          seq(whileloop(bcmp(CmpOp::Le, y, lit(1)), assign("y", inc(y))),
              assign("x", inc(x))))));
  // wrap-around stepping
  out.push_back(whileloop(bcmp(CmpOp::Le, x, lit(6)),
                          assign("x", abin(AOp::Add, x, lit(3)))));
  // accumulation
  out.push_back(seq(
      assign("y", lit(0)),
      whileloop(bcmp(CmpOp::Le, x, lit(3)),
                seq(assign("y", abin(AOp::Add, y, x)), assign("x", inc(x))))));
  // a branch inside a loop
  out.push_back(whileloop(
      bcmp(CmpOp::Le, x, lit(2)),
      ifelse(bcmp(CmpOp::Le, y, lit(0)), assign("x", inc(x)),
             assign("y", abin(AOp::Sub, y, lit(1))))));
  // divergence
  out.push_back(ifelse(bcmp(CmpOp::Le, x, lit(0)), diverge(), skip()));
  out.push_back(whileloop(btrue(), skip()));
  out.push_back(whileloop(btrue(), assign("x", inc(x))));
  // nondeterminism
  out.push_back(havoc("x", 0, 3));
  out.push_back(seq(havoc("x", 0, 3),
                    whileloop(bcmp(CmpOp::Le, x, lit(1)),
                              assign("x", abin(AOp::Add, x, lit(2))))));
  // probabilistic choice; the second one is the geometric loop
  out.push_back(flip("x", Rational(1, 2), lit(0), lit(1)));
  out.push_back(seq(flip("x", Rational(1, 2), lit(0), lit(1)),
                    whileloop(bcmp(CmpOp::Le, x, lit(0)),
                              flip("x", Rational(1, 2), lit(0), lit(1)))));
  // scope manipulation
  out.push_back(seq(addvar("z"),
                    seq(assign("z", abin(AOp::Add, x, lit(1))),
                        seq(assign("x", var("z")), delvar("z")))));
  // two-variable race (relational loop guard)
  out.push_back(seq(assign("x", lit(0)),
                    seq(assign("y", lit(10)),
                        whileloop(bcmp(CmpOp::Lt, x, y), assign("x", inc(x))))));
  return out;
}

}  // namespace

Corpus make_corpus(const CorpusOptions& opts) {
  Corpus c;
  c.vars = {"x", "y"};

  // expression tier: atoms and one-level binops with a variable operand
  std::vector<AExprPtr> atoms = {lit(0), lit(1), var("x"), var("y")};
  std::vector<AExprPtr> exprs = atoms;
  for (AOp op : {AOp::Add, AOp::Sub})
    for (const auto& l : atoms)
      for (const auto& r : atoms) {
        bool lv = std::holds_alternative<AVar>(l->node);
        bool rv = std::holds_alternative<AVar>(r->node);
        if (lv || rv) exprs.push_back(abin(op, l, r));
      }

  std::vector<BExprPtr> guards = {bcmp(CmpOp::Le, var("x"), lit(0)),
                                  bcmp(CmpOp::Le, var("x"), lit(1)),
                                  bcmp(CmpOp::Le, var("y"), lit(1)), btrue()};

  // statements by AST size, exhaustively up to opts.max_size
  std::map<std::size_t, std::vector<ProgramPtr>> by_size;
  auto add = [&](ProgramPtr p) {
    std::size_t s = ast_size(*p);
    if (s <= opts.max_size) by_size[s].push_back(std::move(p));
  };
  add(skip());
  add(diverge());
  for (const auto& v : {std::string("x"), std::string("y")})
    for (const auto& e : exprs) add(assign(v, e));
  for (std::size_t size = 3; size <= opts.max_size; ++size) {
    // while g { body }: size = 2 + |body|
    if (size >= 3)
      for (const auto& g : guards)
        for (const auto& b : by_size[size - 2]) add(whileloop(g, b));
    // if g { s } else { t }: size = 2 + |s| + |t|
    for (std::size_t ls = 1; ls + 1 <= size - 2; ++ls)
      for (const auto& g : guards)
        for (const auto& s : by_size[ls])
          for (const auto& t : by_size[size - 2 - ls]) add(ifelse(g, s, t));
    // s ; t: size = 1 + |s| + |t|
    for (std::size_t ls = 1; ls + 1 <= size - 1; ++ls)
      for (const auto& s : by_size[ls])
        for (const auto& t : by_size[size - 1 - ls]) add(seq(s, t));
  }

  // dedupe by normal form, keep deterministic (size, text) order
  std::map<std::string, ProgramPtr> canon;
  for (const auto& [size, list] : by_size)
    for (const auto& p : list) {
      ProgramPtr n = normalize(p);
      canon.emplace(print(*n), n);
    }
  std::vector<std::pair<std::string, ProgramPtr>> ordered(canon.begin(),
                                                          canon.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     std::size_t sa = ast_size(*a.second), sb = ast_size(*b.second);
                     return sa != sb ? sa < sb : a.first < b.first;
                   });
  std::size_t idx = 0;
  for (const auto& [text, p] : ordered) {
    if (c.programs.size() >= opts.cap) break;
    CorpusProgram cp;
    cp.name = "gen-" + std::to_string(idx++);
    cp.prog = p;
    cp.features = scan_features(*p);
    c.programs.push_back(std::move(cp));
  }

  if (opts.handwritten) {
    std::size_t hi = 0;
    for (const auto& p : handwritten_list()) {
      CorpusProgram cp;
      cp.name = "hand-" + std::to_string(hi++);
      cp.prog = normalize(p);
      cp.features = scan_features(*cp.prog);
      for (const auto& v : vars_of(*cp.prog))
        if (!cp.features.scope) c.vars.insert(v);
      c.programs.push_back(std::move(cp));
    }
  }

  // composition pairs: sequencing decompositions p = first ; rest
  for (const auto& cp : c.programs) {
    if (auto* s = std::get_if<PSeq>(&cp.prog->node))
      c.pairs.emplace_back(s->first, s->second);
  }
  // plus the classic pair whose composite is strictly sharper
  auto hand = handwritten_list();
  c.pairs.emplace_back(normalize(hand[0]), normalize(hand[1]));
  c.pairs.emplace_back(normalize(hand[4]), normalize(hand[4]));
  return c;
}

std::vector<ProgramPtr> corpus_for_monad(const Corpus& c, MonadKind k) {
  std::vector<ProgramPtr> out;
  for (const auto& cp : c.programs)
    if (legal_for(cp.features, k)) out.push_back(cp.prog);
  return out;
}

std::vector<std::pair<ProgramPtr, ProgramPtr>> pairs_for_monad(const Corpus& c,
                                                               MonadKind k) {
  std::vector<std::pair<ProgramPtr, ProgramPtr>> out;
  for (const auto& [p, q] : c.pairs) {
    ProgramFeatures f = scan_features(*p);
    ProgramFeatures g = scan_features(*q);
    ProgramFeatures both;
    both.flip = f.flip || g.flip;
    both.havoc = f.havoc || g.havoc;
    both.scope = f.scope || g.scope;
    if (legal_for(both, k)) out.emplace_back(p, q);
  }
  return out;
}

}  // namespace aicat
