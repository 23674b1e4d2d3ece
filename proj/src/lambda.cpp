#include "aicat/lambda.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>

namespace aicat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ------------------------------------------------------------------- types

LTypePtr lt_base(std::string name) {
  auto t = std::make_shared<LType>();
  t->tag = LType::Tag::Base;
  t->base = std::move(name);
  return t;
}

LTypePtr lt_unit() {
  auto t = std::make_shared<LType>();
  t->tag = LType::Tag::Unit;
  return t;
}

LTypePtr lt_prod(LTypePtr a, LTypePtr b) {
  auto t = std::make_shared<LType>();
  t->tag = LType::Tag::Prod;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

LTypePtr lt_arrow(LTypePtr a, LTypePtr b) {
  auto t = std::make_shared<LType>();
  t->tag = LType::Tag::Arrow;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

bool lt_equal(const LTypePtr& s, const LTypePtr& t) {
  if (s.get() == t.get()) return true;
  if (!s || !t || s->tag != t->tag) return false;
  switch (s->tag) {
    case LType::Tag::Base:
      return s->base == t->base;
    case LType::Tag::Unit:
      return true;
    case LType::Tag::Prod:
    case LType::Tag::Arrow:
      return lt_equal(s->a, t->a) && lt_equal(s->b, t->b);
  }
  return false;
}

std::string lt_str(const LTypePtr& t) {
  switch (t->tag) {
    case LType::Tag::Base:
      return t->base;
    case LType::Tag::Unit:
      return "unit";
    case LType::Tag::Prod:
      return "(prod " + lt_str(t->a) + " " + lt_str(t->b) + ")";
    case LType::Tag::Arrow:
      return "(arrow " + lt_str(t->a) + " " + lt_str(t->b) + ")";
  }
  return "?";
}

int arrow_nesting(const LTypePtr& t) {
  switch (t->tag) {
    case LType::Tag::Base:
    case LType::Tag::Unit:
      return 0;
    case LType::Tag::Prod:
      return std::max(arrow_nesting(t->a), arrow_nesting(t->b));
    case LType::Tag::Arrow:
      return 1 + std::max(arrow_nesting(t->a), arrow_nesting(t->b));
  }
  return 0;
}

// ------------------------------------------------------------- s-expressions

namespace {

std::vector<std::string> sx_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
      out.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

[[noreturn]] void sx_fail(const std::string& what) {
  throw LambdaError("syntax error: " + what);
}

const std::string& sx_peek(const std::vector<std::string>& t, std::size_t p) {
  if (p >= t.size()) sx_fail("unexpected end of input");
  return t[p];
}

LTypePtr parse_type_at(const std::vector<std::string>& toks, std::size_t& pos);

LTypePtr parse_type_at(const std::vector<std::string>& toks, std::size_t& pos) {
  const std::string& tok = sx_peek(toks, pos);
  if (tok == ")") sx_fail("unexpected ')'");
  if (tok != "(") {
    ++pos;
    if (tok == "unit") return lt_unit();
    return lt_base(tok);
  }
  ++pos;  // '('
  const std::string head = sx_peek(toks, pos);
  ++pos;
  LTypePtr out;
  if (head == "prod" || head == "arrow") {
    LTypePtr a = parse_type_at(toks, pos);
    LTypePtr b = parse_type_at(toks, pos);
    out = head == "prod" ? lt_prod(a, b) : lt_arrow(a, b);
  } else {
    sx_fail("unknown type constructor '" + head + "'");
  }
  if (sx_peek(toks, pos) != ")") sx_fail("expected ')' after " + head);
  ++pos;
  return out;
}

LTermPtr parse_term_at(const std::vector<std::string>& toks, std::size_t& pos);

LTermPtr parse_term_at(const std::vector<std::string>& toks, std::size_t& pos) {
  const std::string& tok = sx_peek(toks, pos);
  if (tok == ")") sx_fail("unexpected ')'");
  if (tok != "(") {
    ++pos;
    if (tok == "unit") return lunit();
    return lv(tok);
  }
  ++pos;  // '('
  const std::string head = sx_peek(toks, pos);
  ++pos;
  LTermPtr out;
  if (head == "pair") {
    LTermPtr a = parse_term_at(toks, pos);
    LTermPtr b = parse_term_at(toks, pos);
    out = lpair(a, b);
  } else if (head == "proj1" || head == "proj2") {
    LTermPtr a = parse_term_at(toks, pos);
    out = head == "proj1" ? lproj1(a) : lproj2(a);
  } else if (head == "lam") {
    std::string bound = sx_peek(toks, pos);
    if (bound == "(" || bound == ")") sx_fail("lam expects a binder name");
    ++pos;
    LTypePtr ty = parse_type_at(toks, pos);
    LTermPtr body = parse_term_at(toks, pos);
    out = llam(bound, ty, body);
  } else if (head == "app") {
    LTermPtr f = parse_term_at(toks, pos);
    LTermPtr x = parse_term_at(toks, pos);
    out = lapp(f, x);
  } else {
    sx_fail("unknown term constructor '" + head + "'");
  }
  if (sx_peek(toks, pos) != ")") sx_fail("expected ')' after " + head);
  ++pos;
  return out;
}

}  // namespace

LTypePtr parse_ltype(const std::string& text) {
  auto toks = sx_tokens(text);
  std::size_t pos = 0;
  LTypePtr t = parse_type_at(toks, pos);
  if (pos != toks.size()) sx_fail("trailing tokens after type");
  return t;
}

LTermPtr parse_lterm(const std::string& text) {
  auto toks = sx_tokens(text);
  std::size_t pos = 0;
  LTermPtr t = parse_term_at(toks, pos);
  if (pos != toks.size()) sx_fail("trailing tokens after term");
  return t;
}

// ------------------------------------------------------------------- terms

namespace {

LTermPtr mk_term(LTerm t) { return std::make_shared<LTerm>(std::move(t)); }

}  // namespace

LTermPtr lv(std::string name) {
  LTerm t;
  t.tag = LTerm::Tag::Var;
  t.name = std::move(name);
  return mk_term(std::move(t));
}

LTermPtr lconst(std::string name) {
  LTerm t;
  t.tag = LTerm::Tag::Const;
  t.name = std::move(name);
  return mk_term(std::move(t));
}

LTermPtr lunit() {
  LTerm t;
  t.tag = LTerm::Tag::UnitVal;
  return mk_term(std::move(t));
}

LTermPtr lpair(LTermPtr a, LTermPtr b) {
  LTerm t;
  t.tag = LTerm::Tag::Pair;
  t.m = std::move(a);
  t.n = std::move(b);
  return mk_term(std::move(t));
}

LTermPtr lproj1(LTermPtr a) {
  LTerm t;
  t.tag = LTerm::Tag::Proj1;
  t.m = std::move(a);
  return mk_term(std::move(t));
}

LTermPtr lproj2(LTermPtr a) {
  LTerm t;
  t.tag = LTerm::Tag::Proj2;
  t.m = std::move(a);
  return mk_term(std::move(t));
}

LTermPtr llam(std::string bound, LTypePtr ty, LTermPtr body) {
  LTerm t;
  t.tag = LTerm::Tag::Lam;
  t.name = std::move(bound);
  t.ty = std::move(ty);
  t.m = std::move(body);
  return mk_term(std::move(t));
}

LTermPtr lapp(LTermPtr f, LTermPtr arg) {
  LTerm t;
  t.tag = LTerm::Tag::App;
  t.m = std::move(f);
  t.n = std::move(arg);
  return mk_term(std::move(t));
}

std::string lterm_str(const LTermPtr& t) {
  switch (t->tag) {
    case LTerm::Tag::Var:
    case LTerm::Tag::Const:
      return t->name;
    case LTerm::Tag::UnitVal:
      return "unit";
    case LTerm::Tag::Pair:
      return "(pair " + lterm_str(t->m) + " " + lterm_str(t->n) + ")";
    case LTerm::Tag::Proj1:
      return "(proj1 " + lterm_str(t->m) + ")";
    case LTerm::Tag::Proj2:
      return "(proj2 " + lterm_str(t->m) + ")";
    case LTerm::Tag::Lam:
      return "(lam " + t->name + " " + lt_str(t->ty) + " " + lterm_str(t->m) +
             ")";
    case LTerm::Tag::App:
      return "(app " + lterm_str(t->m) + " " + lterm_str(t->n) + ")";
  }
  return "?";
}

int lterm_depth(const LTermPtr& t) {
  switch (t->tag) {
    case LTerm::Tag::Var:
    case LTerm::Tag::Const:
    case LTerm::Tag::UnitVal:
      return 0;
    case LTerm::Tag::Proj1:
    case LTerm::Tag::Proj2:
    case LTerm::Tag::Lam:
      return 1 + lterm_depth(t->m);
    case LTerm::Tag::Pair:
    case LTerm::Tag::App:
      return 1 + std::max(lterm_depth(t->m), lterm_depth(t->n));
  }
  return 0;
}

namespace {

void free_vars(const LTermPtr& t, std::set<std::string>& out) {
  switch (t->tag) {
    case LTerm::Tag::Var:
      out.insert(t->name);
      return;
    case LTerm::Tag::Const:
    case LTerm::Tag::UnitVal:
      return;
    case LTerm::Tag::Proj1:
    case LTerm::Tag::Proj2:
      free_vars(t->m, out);
      return;
    case LTerm::Tag::Pair:
    case LTerm::Tag::App:
      free_vars(t->m, out);
      free_vars(t->n, out);
      return;
    case LTerm::Tag::Lam: {
      std::set<std::string> inner;
      free_vars(t->m, inner);
      inner.erase(t->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> free_vars(const LTermPtr& t) {
  std::set<std::string> out;
  free_vars(t, out);
  return out;
}

}  // namespace

LTermPtr lterm_subst(const LTermPtr& body, const std::string& var,
                     const LTermPtr& repl) {
  switch (body->tag) {
    case LTerm::Tag::Var:
      return body->name == var ? repl : body;
    case LTerm::Tag::Const:
    case LTerm::Tag::UnitVal:
      return body;
    case LTerm::Tag::Pair:
      return lpair(lterm_subst(body->m, var, repl),
                   lterm_subst(body->n, var, repl));
    case LTerm::Tag::Proj1:
      return lproj1(lterm_subst(body->m, var, repl));
    case LTerm::Tag::Proj2:
      return lproj2(lterm_subst(body->m, var, repl));
    case LTerm::Tag::App:
      return lapp(lterm_subst(body->m, var, repl),
                  lterm_subst(body->n, var, repl));
    case LTerm::Tag::Lam: {
      if (body->name == var) return body;  // shadowed: stop
      auto fv_repl = free_vars(repl);
      if (!fv_repl.count(body->name))
        return llam(body->name, body->ty, lterm_subst(body->m, var, repl));
      // binder would capture a free variable of repl: rename it first
      auto fv_body = free_vars(body->m);
      std::string fresh = body->name;
      do {
        fresh += "'";
      } while (fv_repl.count(fresh) || fv_body.count(fresh) || fresh == var);
      LTermPtr renamed = lterm_subst(body->m, body->name, lv(fresh));
      return llam(fresh, body->ty, lterm_subst(renamed, var, repl));
    }
  }
  return body;
}

// --------------------------------------------------------- concrete values

bool operator==(const SetVal& a, const SetVal& b) {
  if (a.tag != b.tag || a.idx != b.idx || a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(a.kids[i] == b.kids[i])) return false;
  return true;
}

bool sv_less(const SetVal& a, const SetVal& b) {
  if (a.idx != b.idx) return a.idx < b.idx;
  return std::lexicographical_compare(a.kids.begin(), a.kids.end(),
                                      b.kids.begin(), b.kids.end(), sv_less);
}

// ---------------------------------------------------------------- signature

namespace {

SetVal sv_leaf(std::size_t i) {
  SetVal v;
  v.tag = SetVal::Tag::Leaf;
  v.idx = i;
  return v;
}

SetVal sv_fun(std::vector<SetVal> kids) {
  SetVal v;
  v.tag = SetVal::Tag::FunV;
  v.kids = std::move(kids);
  return v;
}

}  // namespace

Signature Signature::standard() {
  Signature sig;
  sig.bases["nat"] = {"0", "1", "2", "3"};
  auto nat = lt_base("nat");
  auto cap = [](std::size_t k) { return std::min<std::size_t>(k, 3); };

  auto table1 = [&](auto f) {
    std::vector<SetVal> kids;
    for (std::size_t i = 0; i < 4; ++i) kids.push_back(sv_leaf(f(i)));
    return sv_fun(std::move(kids));
  };

  sig.constants["succ"] = {lt_arrow(nat, nat),
                           table1([&](std::size_t i) { return cap(i + 1); })};
  sig.constants["pred"] = {
      lt_arrow(nat, nat),
      table1([&](std::size_t i) { return i == 0 ? 0 : i - 1; })};
  sig.constants["iszero"] = {
      lt_arrow(nat, nat),
      table1([&](std::size_t i) { return i == 0 ? 1 : 0; })};
  sig.constants["zero"] = {nat, sv_leaf(0)};
  sig.constants["two"] = {nat, sv_leaf(2)};

  // plus: uncurried over the l-major pair enumeration of nat*nat
  {
    std::vector<SetVal> kids;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) kids.push_back(sv_leaf(cap(a + b)));
    sig.constants["plus"] = {lt_arrow(lt_prod(nat, nat), nat),
                             sv_fun(std::move(kids))};
  }
  // cplus: curried
  {
    std::vector<SetVal> outer;
    for (std::size_t a = 0; a < 4; ++a)
      outer.push_back(
          table1([&](std::size_t b) { return cap(a + b); }));
    sig.constants["cplus"] = {lt_arrow(nat, lt_arrow(nat, nat)),
                              sv_fun(std::move(outer))};
  }
  return sig;
}

// ------------------------------------------------------------ set semantics

SetSem::SetSem(Signature sig, std::size_t space_cap)
    : sig_(std::move(sig)), space_cap_(space_cap) {
  for (const auto& [name, labels] : sig_.bases)
    if (labels.empty())
      throw LambdaError("base type '" + name + "' has an empty carrier");
}

std::size_t SetSem::space_size(const LTypePtr& t) {
  switch (t->tag) {
    case LType::Tag::Base: {
      auto it = sig_.bases.find(t->base);
      if (it == sig_.bases.end())
        throw LambdaError("unknown base type '" + t->base + "'");
      return it->second.size();
    }
    case LType::Tag::Unit:
      return 1;
    case LType::Tag::Prod: {
      std::size_t a = space_size(t->a), b = space_size(t->b);
      if (b != 0 && a > space_cap_ / b)
        throw LambdaError("carrier of " + lt_str(t) + " exceeds cap");
      return a * b;
    }
    case LType::Tag::Arrow: {
      std::size_t a = space_size(t->a), b = space_size(t->b);
      std::size_t total = 1;
      for (std::size_t i = 0; i < a; ++i) {
        if (b != 0 && total > space_cap_ / b)
          throw LambdaError("carrier of " + lt_str(t) + " exceeds cap");
        total *= b;
      }
      return total;
    }
  }
  return 0;
}

const std::vector<SetVal>& SetSem::enumerate(const LTypePtr& t) {
  std::string key = lt_str(t);
  auto it = enum_cache_.find(key);
  if (it != enum_cache_.end()) return it->second;

  std::vector<SetVal> out;
  switch (t->tag) {
    case LType::Tag::Base: {
      std::size_t n = space_size(t);
      for (std::size_t i = 0; i < n; ++i) out.push_back(sv_leaf(i));
      break;
    }
    case LType::Tag::Unit: {
      out.emplace_back();  // Tag::One
      break;
    }
    case LType::Tag::Prod: {
      const auto& ea = enumerate(t->a);
      const auto& eb = enumerate(t->b);
      (void)space_size(t);  // cap check
      for (const auto& va : ea)
        for (const auto& vb : eb) {
          SetVal v;
          v.tag = SetVal::Tag::PairV;
          v.kids = {va, vb};
          out.push_back(std::move(v));
        }
      break;
    }
    case LType::Tag::Arrow: {
      const auto& ea = enumerate(t->a);
      const auto& eb = enumerate(t->b);
      std::size_t total = space_size(t);
      std::size_t n = ea.size(), cod = eb.size();
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<SetVal> kids(n);
        std::size_t rem = idx;
        for (std::size_t i = n; i-- > 0;) {
          kids[i] = eb[rem % cod];
          rem /= cod;
        }
        out.push_back(sv_fun(std::move(kids)));
      }
      break;
    }
  }
  return enum_cache_.emplace(std::move(key), std::move(out)).first->second;
}

std::size_t SetSem::index_of(const LTypePtr& t, const SetVal& v) {
  switch (t->tag) {
    case LType::Tag::Base:
      return v.idx;
    case LType::Tag::Unit:
      return 0;
    case LType::Tag::Prod:
      return index_of(t->a, v.kids[0]) * space_size(t->b) +
             index_of(t->b, v.kids[1]);
    case LType::Tag::Arrow: {
      std::size_t cod = space_size(t->b), acc = 0;
      for (const auto& k : v.kids) acc = acc * cod + index_of(t->b, k);
      return acc;
    }
  }
  return 0;
}

std::string SetSem::value_str(const LTypePtr& t, const SetVal& v) {
  switch (t->tag) {
    case LType::Tag::Base:
      return sig_.bases.at(t->base).at(v.idx);
    case LType::Tag::Unit:
      return "*";
    case LType::Tag::Prod:
      return "(" + value_str(t->a, v.kids[0]) + "," +
             value_str(t->b, v.kids[1]) + ")";
    case LType::Tag::Arrow: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.kids.size(); ++i) {
        if (i) s += ";";
        s += value_str(t->b, v.kids[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

SetVal SetSem::value_of_json(const LTypePtr& t, const Json& j) {
  switch (t->tag) {
    case LType::Tag::Base: {
      const auto& labels = sig_.bases.at(t->base);
      std::string want = j.is_string() ? j.get<std::string>() : j.dump();
      auto it = std::find(labels.begin(), labels.end(), want);
      if (it == labels.end())
        throw LambdaError("'" + want + "' is not an element of " + t->base);
      return sv_leaf(static_cast<std::size_t>(it - labels.begin()));
    }
    case LType::Tag::Unit:
      return SetVal{};
    case LType::Tag::Prod: {
      if (!j.is_array() || j.size() != 2)
        throw LambdaError("pair value must be a 2-element array");
      SetVal v;
      v.tag = SetVal::Tag::PairV;
      v.kids = {value_of_json(t->a, j[0]), value_of_json(t->b, j[1])};
      return v;
    }
    case LType::Tag::Arrow: {
      if (!j.is_object() || !j.contains("table") || !j["table"].is_array())
        throw LambdaError("function value must be {\"table\":[...]}");
      std::size_t n = space_size(t->a);
      if (j["table"].size() != n)
        throw LambdaError("function table for " + lt_str(t) + " needs " +
                          std::to_string(n) + " entries");
      std::vector<SetVal> kids;
      for (const auto& e : j["table"]) kids.push_back(value_of_json(t->b, e));
      return sv_fun(std::move(kids));
    }
  }
  return SetVal{};
}

Json SetSem::value_json(const LTypePtr& t, const SetVal& v) {
  switch (t->tag) {
    case LType::Tag::Base:
      return sig_.bases.at(t->base).at(v.idx);
    case LType::Tag::Unit:
      return "*";
    case LType::Tag::Prod:
      return Json::array({value_json(t->a, v.kids[0]),
                          value_json(t->b, v.kids[1])});
    case LType::Tag::Arrow: {
      Json table = Json::array();
      for (const auto& k : v.kids) table.push_back(value_json(t->b, k));
      return Json{{"table", table}};
    }
  }
  return nullptr;
}

SetVal SetSem::apply(const LTypePtr& t, const SetVal& f, const SetVal& arg) {
  if (t->tag != LType::Tag::Arrow)
    throw LambdaError("apply at non-arrow type " + lt_str(t));
  return f.kids.at(index_of(t->a, arg));
}

Signature signature_of_json(const Json& j) {
  Signature sig;
  if (!j.contains("bases") || !j["bases"].is_object())
    throw LambdaError("signature needs a \"bases\" object");
  for (const auto& [name, labels] : j["bases"].items()) {
    std::vector<std::string> ls;
    for (const auto& l : labels) ls.push_back(l.get<std::string>());
    if (ls.empty()) throw LambdaError("base '" + name + "' is empty");
    if (ls.size() > 4)
      throw LambdaError("base '" + name + "' exceeds the carrier cap (4)");
    sig.bases[name] = std::move(ls);
  }
  SetSem tmp(sig);
  if (j.contains("constants")) {
    for (const auto& [name, cj] : j["constants"].items()) {
      LTypePtr ty = parse_ltype(cj.at("type").get<std::string>());
      SetVal val = tmp.value_of_json(ty, cj.at("value"));
      sig.constants[name] = {ty, val};
    }
  }
  return sig;
}

Json signature_json(const Signature& sig) {
  SetSem tmp(sig);
  Json bases = Json::object();
  for (const auto& [name, labels] : sig.bases) bases[name] = labels;
  Json consts = Json::object();
  for (const auto& [name, c] : sig.constants)
    consts[name] = Json{{"type", lt_str(c.ty)},
                        {"value", tmp.value_json(c.ty, c.val)}};
  return Json{{"bases", bases}, {"constants", consts}};
}

// ------------------------------------------------------- typed elaboration

namespace {

void validate_type(const LTypePtr& t, const Signature& sig) {
  switch (t->tag) {
    case LType::Tag::Base:
      if (!sig.bases.count(t->base))
        throw LambdaError("unknown base type '" + t->base + "'");
      return;
    case LType::Tag::Unit:
      return;
    case LType::Tag::Prod:
    case LType::Tag::Arrow:
      validate_type(t->a, sig);
      validate_type(t->b, sig);
      return;
  }
}

}  // namespace

TypedTerm typecheck(const LTermPtr& m, const std::string& ctx_name,
                    const LTypePtr& ctx_type, const Signature& sig) {
  TypedTerm out;
  out.ctx = ctx_type;
  out.ctx_name = ctx_name;
  validate_type(ctx_type, sig);

  std::function<LTermPtr(const LTermPtr&, std::map<std::string, LTypePtr>&)>
      go = [&](const LTermPtr& t,
               std::map<std::string, LTypePtr>& env) -> LTermPtr {
    LTermPtr node;
    LTypePtr ty;
    switch (t->tag) {
      case LTerm::Tag::Var:
      case LTerm::Tag::Const: {
        auto it = env.find(t->name);
        if (t->tag == LTerm::Tag::Var && it != env.end()) {
          node = lv(t->name);
          ty = it->second;
        } else {
          auto c = sig.constants.find(t->name);
          if (c == sig.constants.end())
            throw LambdaError("unbound variable '" + t->name + "'");
          node = lconst(t->name);
          ty = c->second.ty;
        }
        break;
      }
      case LTerm::Tag::UnitVal:
        node = lunit();
        ty = lt_unit();
        break;
      case LTerm::Tag::Pair: {
        LTermPtr a = go(t->m, env), b = go(t->n, env);
        node = lpair(a, b);
        ty = lt_prod(out.types.at(a.get()), out.types.at(b.get()));
        break;
      }
      case LTerm::Tag::Proj1:
      case LTerm::Tag::Proj2: {
        LTermPtr a = go(t->m, env);
        LTypePtr at = out.types.at(a.get());
        if (at->tag != LType::Tag::Prod)
          throw LambdaError("projection from non-product type " + lt_str(at));
        node = t->tag == LTerm::Tag::Proj1 ? lproj1(a) : lproj2(a);
        ty = t->tag == LTerm::Tag::Proj1 ? at->a : at->b;
        break;
      }
      case LTerm::Tag::Lam: {
        validate_type(t->ty, sig);
        auto saved = env.find(t->name) != env.end()
                         ? std::optional<LTypePtr>(env[t->name])
                         : std::nullopt;
        env[t->name] = t->ty;
        LTermPtr body = go(t->m, env);
        if (saved)
          env[t->name] = *saved;
        else
          env.erase(t->name);
        node = llam(t->name, t->ty, body);
        ty = lt_arrow(t->ty, out.types.at(body.get()));
        break;
      }
      case LTerm::Tag::App: {
        LTermPtr f = go(t->m, env), x = go(t->n, env);
        LTypePtr ft = out.types.at(f.get());
        if (ft->tag != LType::Tag::Arrow)
          throw LambdaError("application of non-function type " + lt_str(ft));
        LTypePtr xt = out.types.at(x.get());
        if (!lt_equal(ft->a, xt))
          throw LambdaError("argument type " + lt_str(xt) +
                            " does not match parameter type " + lt_str(ft->a));
        node = lapp(f, x);
        ty = ft->b;
        break;
      }
    }
    out.types[node.get()] = ty;
    return node;
  };

  std::map<std::string, LTypePtr> env{{ctx_name, ctx_type}};
  out.term = go(m, env);
  out.type = out.types.at(out.term.get());
  return out;
}

SetVal eval_set(SetSem& ss, const TypedTerm& tm, const SetVal& input) {
  std::function<SetVal(const LTerm*, std::map<std::string, SetVal>&)> go =
      [&](const LTerm* t, std::map<std::string, SetVal>& env) -> SetVal {
    switch (t->tag) {
      case LTerm::Tag::Var:
        return env.at(t->name);
      case LTerm::Tag::Const:
        return ss.sig().constants.at(t->name).val;
      case LTerm::Tag::UnitVal:
        return SetVal{};
      case LTerm::Tag::Pair: {
        SetVal v;
        v.tag = SetVal::Tag::PairV;
        v.kids = {go(t->m.get(), env), go(t->n.get(), env)};
        return v;
      }
      case LTerm::Tag::Proj1:
        return go(t->m.get(), env).kids[0];
      case LTerm::Tag::Proj2:
        return go(t->m.get(), env).kids[1];
      case LTerm::Tag::Lam: {
        const auto& dom = ss.enumerate(t->ty);
        std::vector<SetVal> kids;
        kids.reserve(dom.size());
        auto saved = env.find(t->name) != env.end()
                         ? std::optional<SetVal>(env[t->name])
                         : std::nullopt;
        for (const auto& v : dom) {
          env[t->name] = v;
          kids.push_back(go(t->m.get(), env));
        }
        if (saved)
          env[t->name] = *saved;
        else
          env.erase(t->name);
        return sv_fun(std::move(kids));
      }
      case LTerm::Tag::App: {
        SetVal f = go(t->m.get(), env);
        SetVal x = go(t->n.get(), env);
        return ss.apply(tm.types.at(t->m.get()), f, x);
      }
    }
    return SetVal{};
  };
  std::map<std::string, SetVal> env{{tm.ctx_name, input}};
  return go(tm.term.get(), env);
}

// ----------------------------------------------------------- abstract values

bool operator==(const AbsVal& a, const AbsVal& b) {
  if (a.tag != b.tag || a.bot != b.bot || a.kids.size() != b.kids.size())
    return false;
  if (a.tag == AbsVal::Tag::Base && !a.bot && (a.lo != b.lo || a.hi != b.hi))
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(a.kids[i] == b.kids[i])) return false;
  return true;
}

bool av_less(const AbsVal& a, const AbsVal& b) {
  if (a.bot != b.bot) return a.bot;
  if (a.lo != b.lo) return a.lo < b.lo;
  if (a.hi != b.hi) return a.hi < b.hi;
  return std::lexicographical_compare(a.kids.begin(), a.kids.end(),
                                      b.kids.begin(), b.kids.end(), av_less);
}

std::string av_str(const AbsVal& a) {
  switch (a.tag) {
    case AbsVal::Tag::Base:
      if (a.bot) return "_|_";
      return "[" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "]";
    case AbsVal::Tag::One:
      return "*";
    case AbsVal::Tag::PairA:
      return "(" + av_str(a.kids[0]) + "," + av_str(a.kids[1]) + ")";
    case AbsVal::Tag::FunA: {
      std::string s = "[";
      for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (i) s += ";";
        s += av_str(a.kids[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

Json av_json(const AbsVal& a) {
  switch (a.tag) {
    case AbsVal::Tag::Base:
      if (a.bot) return Json{{"bot", true}};
      return Json{{"lo", a.lo}, {"hi", a.hi}};
    case AbsVal::Tag::One:
      return "*";
    case AbsVal::Tag::PairA:
      return Json::array({av_json(a.kids[0]), av_json(a.kids[1])});
    case AbsVal::Tag::FunA: {
      Json table = Json::array();
      for (const auto& k : a.kids) table.push_back(av_json(k));
      return Json{{"table", table}};
    }
  }
  return nullptr;
}

SetBits bits_make(std::size_t n) { return SetBits((n + 63) / 64, 0); }

bool bits_get(const SetBits& b, std::size_t i) {
  return (b[i / 64] >> (i % 64)) & 1;
}

void bits_set(SetBits& b, std::size_t i) { b[i / 64] |= 1ull << (i % 64); }

bool bits_subset(const SetBits& a, const SetBits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t bits_count(const SetBits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

// --------------------------------------------------------- abstract semantics

struct AbsSem::RtVal {
  AbsVal data;
  bool is_closure = false;
  std::function<RtVal(const RtVal&)> fn;
  LTypePtr ty;  // closure's arrow type
};

AbsSem::AbsSem(std::shared_ptr<SetSem> ss, std::size_t poset_cap)
    : ss_(std::move(ss)), poset_cap_(poset_cap) {}

bool AbsSem::leq(const LTypePtr& t, const AbsVal& a, const AbsVal& b) {
  switch (t->tag) {
    case LType::Tag::Base:
      if (a.bot) return true;
      if (b.bot) return false;
      return b.lo <= a.lo && a.hi <= b.hi;
    case LType::Tag::Unit:
      return true;
    case LType::Tag::Prod:
      return leq(t->a, a.kids[0], b.kids[0]) && leq(t->b, a.kids[1], b.kids[1]);
    case LType::Tag::Arrow: {
      for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!leq(t->b, a.kids[i], b.kids[i])) return false;
      return true;
    }
  }
  return false;
}

AbsVal AbsSem::bottom(const LTypePtr& t) {
  AbsVal a;
  switch (t->tag) {
    case LType::Tag::Base:
      a.tag = AbsVal::Tag::Base;
      a.bot = true;
      return a;
    case LType::Tag::Unit:
      return a;  // One
    case LType::Tag::Prod:
      a.tag = AbsVal::Tag::PairA;
      a.kids = {bottom(t->a), bottom(t->b)};
      return a;
    case LType::Tag::Arrow:
      a.tag = AbsVal::Tag::FunA;
      a.kids.assign(enumerate(t->a).size(), bottom(t->b));
      return a;
  }
  return a;
}

AbsVal AbsSem::top(const LTypePtr& t) {
  AbsVal a;
  switch (t->tag) {
    case LType::Tag::Base:
      a.tag = AbsVal::Tag::Base;
      a.bot = false;
      a.lo = 0;
      a.hi = ss_->space_size(t) - 1;
      return a;
    case LType::Tag::Unit:
      return a;
    case LType::Tag::Prod:
      a.tag = AbsVal::Tag::PairA;
      a.kids = {top(t->a), top(t->b)};
      return a;
    case LType::Tag::Arrow:
      a.tag = AbsVal::Tag::FunA;
      a.kids.assign(enumerate(t->a).size(), top(t->b));
      return a;
  }
  return a;
}

bool AbsSem::empty_gamma(const LTypePtr& t, const AbsVal& a) {
  switch (t->tag) {
    case LType::Tag::Base:
      return a.bot;
    case LType::Tag::Unit:
      return false;
    case LType::Tag::Prod:
      return empty_gamma(t->a, a.kids[0]) || empty_gamma(t->b, a.kids[1]);
    case LType::Tag::Arrow: {
      // No concrete function can land in an empty set over a nonempty slot.
      const auto& dom = enumerate(t->a);
      for (std::size_t k = 0; k < dom.size(); ++k)
        if (!empty_gamma(t->a, dom[k]) && empty_gamma(t->b, a.kids[k]))
          return true;
      return false;
    }
  }
  return false;
}

// Pairs with an empty-concretization component all denote the empty set, so
// the product poset keeps a single canonical bottom pair in their place.
AbsVal AbsSem::norm_pair(const LTypePtr& t, AbsVal a) {
  if (empty_gamma(t->a, a.kids[0]) || empty_gamma(t->b, a.kids[1]))
    return bottom(t);
  return a;
}

const std::vector<AbsVal>& AbsSem::enumerate(const LTypePtr& t) {
  std::string key = lt_str(t);
  auto it = enum_cache_.find(key);
  if (it != enum_cache_.end()) return it->second;

  std::vector<AbsVal> out;
  switch (t->tag) {
    case LType::Tag::Base: {
      std::size_t n = ss_->space_size(t);
      AbsVal bot;
      bot.tag = AbsVal::Tag::Base;
      bot.bot = true;
      out.push_back(bot);
      for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t hi = lo; hi < n; ++hi) {
          AbsVal a;
          a.tag = AbsVal::Tag::Base;
          a.bot = false;
          a.lo = lo;
          a.hi = hi;
          out.push_back(a);
        }
      break;
    }
    case LType::Tag::Unit:
      out.emplace_back();
      break;
    case LType::Tag::Prod: {
      const auto& ea = enumerate(t->a);
      const auto& eb = enumerate(t->b);
      if (ea.size() > poset_cap_ / eb.size())
        throw LambdaError("abstract poset of " + lt_str(t) + " exceeds cap");
      out.push_back(bottom(t));
      for (const auto& va : ea) {
        if (empty_gamma(t->a, va)) continue;
        for (const auto& vb : eb) {
          if (empty_gamma(t->b, vb)) continue;
          AbsVal a;
          a.tag = AbsVal::Tag::PairA;
          a.kids = {va, vb};
          out.push_back(std::move(a));
        }
      }
      break;
    }
    case LType::Tag::Arrow: {
      const auto& dom = enumerate(t->a);
      const auto& cod = enumerate(t->b);
      std::size_t n = dom.size();
      std::vector<std::vector<bool>> dle(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          dle[i][j] = leq(t->a, dom[i], dom[j]);
      std::vector<std::size_t> pick(n, 0);
      std::vector<AbsVal> cur(n);
      std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (i == n) {
          AbsVal a;
          a.tag = AbsVal::Tag::FunA;
          a.kids = cur;
          out.push_back(std::move(a));
          if (out.size() > poset_cap_)
            throw LambdaError("abstract poset of " + lt_str(t) +
                              " exceeds cap");
          return;
        }
        for (std::size_t c = 0; c < cod.size(); ++c) {
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j) {
            if (dle[j][i] && !leq(t->b, cur[j], cod[c])) ok = false;
            if (dle[i][j] && !leq(t->b, cod[c], cur[j])) ok = false;
          }
          if (!ok) continue;
          cur[i] = cod[c];
          dfs(i + 1);
        }
      };
      dfs(0);
      break;
    }
  }
  auto& slot = enum_cache_.emplace(key, std::move(out)).first->second;
  auto& idx = index_cache_[key];
  for (std::size_t i = 0; i < slot.size(); ++i) idx[av_str(slot[i])] = i;
  return slot;
}

std::size_t AbsSem::index_of(const LTypePtr& t, const AbsVal& a) {
  std::string key = lt_str(t);
  if (!index_cache_.count(key)) enumerate(t);
  const auto& idx = index_cache_.at(key);
  auto it = idx.find(av_str(a));
  if (it == idx.end())
    throw LambdaError("value " + av_str(a) + " not in the poset of " + key);
  return it->second;
}

std::size_t AbsSem::poset_size(const LTypePtr& t) { return enumerate(t).size(); }

SetBits AbsSem::gamma(const LTypePtr& t, const AbsVal& a) {
  std::size_t n = ss_->enumerate(t).size();
  SetBits out = bits_make(n);
  switch (t->tag) {
    case LType::Tag::Base:
      if (!a.bot)
        for (std::size_t i = a.lo; i <= a.hi; ++i) bits_set(out, i);
      return out;
    case LType::Tag::Unit:
      bits_set(out, 0);
      return out;
    case LType::Tag::Prod: {
      SetBits ua = gamma(t->a, a.kids[0]);
      SetBits ub = gamma(t->b, a.kids[1]);
      std::size_t sb = ss_->space_size(t->b);
      for (std::size_t i = 0; i < ss_->space_size(t->a); ++i) {
        if (!bits_get(ua, i)) continue;
        for (std::size_t j = 0; j < sb; ++j)
          if (bits_get(ub, j)) bits_set(out, i * sb + j);
      }
      return out;
    }
    case LType::Tag::Arrow: {
      const auto& dom = enumerate(t->a);
      const auto& concrete = ss_->enumerate(t);
      std::vector<SetBits> dmask, cmask;
      for (std::size_t k = 0; k < dom.size(); ++k) {
        dmask.push_back(gamma(t->a, dom[k]));
        cmask.push_back(gamma(t->b, a.kids[k]));
      }
      std::size_t sa = ss_->space_size(t->a);
      for (std::size_t fi = 0; fi < concrete.size(); ++fi) {
        const auto& f = concrete[fi];
        bool ok = true;
        for (std::size_t k = 0; k < dom.size() && ok; ++k)
          for (std::size_t v = 0; v < sa && ok; ++v)
            if (bits_get(dmask[k], v) &&
                !bits_get(cmask[k], ss_->index_of(t->b, f.kids[v])))
              ok = false;
        if (ok) bits_set(out, fi);
      }
      return out;
    }
  }
  return out;
}

AbsVal AbsSem::alpha(const LTypePtr& t, const SetBits& u) {
  switch (t->tag) {
    case LType::Tag::Base: {
      AbsVal a;
      a.tag = AbsVal::Tag::Base;
      a.bot = true;
      std::size_t n = ss_->space_size(t);
      for (std::size_t i = 0; i < n; ++i) {
        if (!bits_get(u, i)) continue;
        if (a.bot) {
          a.bot = false;
          a.lo = a.hi = i;
        } else {
          a.hi = i;
        }
      }
      return a;
    }
    case LType::Tag::Unit:
      return AbsVal{};
    case LType::Tag::Prod: {
      std::size_t sa = ss_->space_size(t->a), sb = ss_->space_size(t->b);
      SetBits ua = bits_make(sa), ub = bits_make(sb);
      for (std::size_t i = 0; i < sa; ++i)
        for (std::size_t j = 0; j < sb; ++j)
          if (bits_get(u, i * sb + j)) {
            bits_set(ua, i);
            bits_set(ub, j);
          }
      AbsVal a;
      a.tag = AbsVal::Tag::PairA;
      a.kids = {alpha(t->a, ua), alpha(t->b, ub)};
      return norm_pair(t, std::move(a));
    }
    case LType::Tag::Arrow: {
      const auto& dom = enumerate(t->a);
      const auto& concrete = ss_->enumerate(t);
      std::size_t sa = ss_->space_size(t->a), sb = ss_->space_size(t->b);
      AbsVal a;
      a.tag = AbsVal::Tag::FunA;
      for (const auto& d : dom) {
        SetBits darg = gamma(t->a, d);
        SetBits image = bits_make(sb);
        for (std::size_t fi = 0; fi < concrete.size(); ++fi) {
          if (!bits_get(u, fi)) continue;
          for (std::size_t v = 0; v < sa; ++v)
            if (bits_get(darg, v))
              bits_set(image, ss_->index_of(t->b, concrete[fi].kids[v]));
        }
        a.kids.push_back(alpha(t->b, image));
      }
      return a;
    }
  }
  return AbsVal{};
}

AbsVal AbsSem::alpha_values(const LTypePtr& t,
                            const std::vector<const SetVal*>& vs) {
  switch (t->tag) {
    case LType::Tag::Base: {
      AbsVal a;
      a.tag = AbsVal::Tag::Base;
      a.bot = true;
      for (const SetVal* v : vs) {
        if (a.bot) {
          a.bot = false;
          a.lo = a.hi = v->idx;
        } else {
          a.lo = std::min(a.lo, v->idx);
          a.hi = std::max(a.hi, v->idx);
        }
      }
      return a;
    }
    case LType::Tag::Unit:
      return AbsVal{};
    case LType::Tag::Prod: {
      std::vector<const SetVal*> ls, rs;
      ls.reserve(vs.size());
      rs.reserve(vs.size());
      for (const SetVal* v : vs) {
        ls.push_back(&v->kids[0]);
        rs.push_back(&v->kids[1]);
      }
      AbsVal a;
      a.tag = AbsVal::Tag::PairA;
      a.kids = {alpha_values(t->a, ls), alpha_values(t->b, rs)};
      return norm_pair(t, std::move(a));
    }
    case LType::Tag::Arrow: {
      const auto& dom = enumerate(t->a);
      std::size_t sa = ss_->space_size(t->a);
      AbsVal a;
      a.tag = AbsVal::Tag::FunA;
      a.kids.reserve(dom.size());
      for (const auto& d : dom) {
        SetBits darg = gamma(t->a, d);
        std::vector<const SetVal*> image;
        for (const SetVal* f : vs)
          for (std::size_t v = 0; v < sa; ++v)
            if (bits_get(darg, v)) image.push_back(&f->kids[v]);
        a.kids.push_back(alpha_values(t->b, image));
      }
      return a;
    }
  }
  return AbsVal{};
}

AbsVal AbsSem::alpha_singleton(const LTypePtr& t, const SetVal& v) {
  return alpha_values(t, {&v});
}

InsertionReport AbsSem::check_insertion(const LTypePtr& t) {
  InsertionReport rep;
  for (const auto& a : enumerate(t)) {
    ++rep.checked;
    AbsVal back = alpha(t, gamma(t, a));
    if (!(back == a)) {
      rep.holds = false;
      rep.witness = a;
      return rep;
    }
  }
  return rep;
}

AdjunctionReport AbsSem::check_adjunction(const LTypePtr& t,
                                          std::size_t max_sets,
                                          std::uint64_t seed) {
  AdjunctionReport rep;
  const auto& abs = enumerate(t);
  std::size_t n = ss_->enumerate(t).size();

  std::vector<SetBits> gammas;
  gammas.reserve(abs.size());
  for (const auto& a : abs) gammas.push_back(gamma(t, a));

  auto visit = [&](const SetBits& u) {
    AbsVal au = alpha(t, u);
    for (std::size_t k = 0; k < abs.size(); ++k) {
      ++rep.checked;
      bool lhs = leq(t, au, abs[k]);
      bool rhs = bits_subset(u, gammas[k]);
      if (lhs != rhs && rep.holds) {
        rep.holds = false;
        rep.detail = "adjunction fails at " + lt_str(t) + " for a=" +
                     av_str(abs[k]) + " with |U|=" +
                     std::to_string(bits_count(u));
      }
    }
  };

  if (n <= 16) {
    rep.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      SetBits u = bits_make(n);
      u[0] = mask;
      visit(u);
    }
  } else {
    SetBits empty = bits_make(n);
    visit(empty);
    SetBits full = bits_make(n);
    for (std::size_t i = 0; i < n; ++i) bits_set(full, i);
    visit(full);
    for (std::size_t i = 0; i < n; ++i) {
      SetBits u = bits_make(n);
      bits_set(u, i);
      visit(u);
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < max_sets; ++s) {
      SetBits u = bits_make(n);
      for (auto& w : u) w = rng();
      std::size_t tail = n % 64;
      if (tail) u.back() &= (1ull << tail) - 1;
      visit(u);
    }
  }
  return rep;
}

MonotoneReport AbsSem::check_monotone(const LTypePtr& t, const AbsVal& f,
                                      std::size_t pair_cap) {
  MonotoneReport rep;
  if (t->tag != LType::Tag::Arrow)
    throw LambdaError("monotonicity check needs an arrow type");
  const auto& dom = enumerate(t->a);
  if (dom.size() * dom.size() > pair_cap) {
    rep.detail = "domain too large; skipped";
    return rep;
  }
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (!leq(t->a, dom[i], dom[j])) continue;
      ++rep.checked;
      if (!leq(t->b, f.kids[i], f.kids[j])) {
        rep.holds = false;
        rep.detail = "table not monotone between " + av_str(dom[i]) + " and " +
                     av_str(dom[j]);
        return rep;
      }
    }
  return rep;
}

AbsVal AbsSem::csemg(const TypedTerm& tm, const AbsVal& a) {
  SetBits u = gamma(tm.ctx, a);
  const auto& inputs = ss_->enumerate(tm.ctx);
  SetBits image = bits_make(ss_->enumerate(tm.type).size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!bits_get(u, i)) continue;
    SetVal w = eval_set(*ss_, tm, inputs[i]);
    bits_set(image, ss_->index_of(tm.type, w));
  }
  return alpha(tm.type, image);
}

const AbsVal& AbsSem::constant_seed(const std::string& name) {
  auto it = seed_cache_.find(name);
  if (it != seed_cache_.end()) return it->second;
  auto c = ss_->sig().constants.find(name);
  if (c == ss_->sig().constants.end())
    throw LambdaError("unknown constant '" + name + "'");
  AbsVal seed = alpha_singleton(c->second.ty, c->second.val);
  return seed_cache_.emplace(name, std::move(seed)).first->second;
}

AbsVal AbsSem::materialize(const LTypePtr& t, const RtVal& v) {
  if (!v.is_closure) return v.data;
  if (t->tag != LType::Tag::Arrow)
    throw LambdaError("closure at non-arrow type " + lt_str(t));
  const auto& dom = enumerate(t->a);
  AbsVal out;
  out.tag = AbsVal::Tag::FunA;
  out.kids.reserve(dom.size());
  for (const auto& d : dom) {
    RtVal arg;
    arg.data = d;
    out.kids.push_back(materialize(t->b, v.fn(arg)));
  }
  return out;
}

AbsSem::RtVal AbsSem::eval_abs(const TypedTerm& tm, const LTerm* node,
                               const std::map<std::string, RtVal>& env) {
  RtVal out;
  switch (node->tag) {
    case LTerm::Tag::Var:
      return env.at(node->name);
    case LTerm::Tag::Const:
      out.data = constant_seed(node->name);
      return out;
    case LTerm::Tag::UnitVal:
      out.data = AbsVal{};
      return out;
    case LTerm::Tag::Pair: {
      AbsVal a;
      a.tag = AbsVal::Tag::PairA;
      a.kids = {
          materialize(tm.types.at(node->m.get()),
                      eval_abs(tm, node->m.get(), env)),
          materialize(tm.types.at(node->n.get()),
                      eval_abs(tm, node->n.get(), env))};
      out.data = norm_pair(tm.types.at(node), std::move(a));
      return out;
    }
    case LTerm::Tag::Proj1:
    case LTerm::Tag::Proj2: {
      AbsVal a = materialize(tm.types.at(node->m.get()),
                             eval_abs(tm, node->m.get(), env));
      out.data = node->tag == LTerm::Tag::Proj1 ? a.kids[0] : a.kids[1];
      return out;
    }
    case LTerm::Tag::Lam: {
      out.is_closure = true;
      out.ty = tm.types.at(node);
      const LTerm* body = node->m.get();
      std::string bound = node->name;
      std::map<std::string, RtVal> captured = env;
      out.fn = [this, &tm, body, bound, captured](const RtVal& arg) -> RtVal {
        std::map<std::string, RtVal> env2 = captured;
        env2[bound] = arg;
        return eval_abs(tm, body, env2);
      };
      return out;
    }
    case LTerm::Tag::App: {
      RtVal f = eval_abs(tm, node->m.get(), env);
      RtVal x = eval_abs(tm, node->n.get(), env);
      if (f.is_closure) return f.fn(x);
      LTypePtr ft = tm.types.at(node->m.get());
      AbsVal xd = materialize(ft->a, x);
      out.data = f.data.kids.at(index_of(ft->a, xd));
      return out;
    }
  }
  return out;
}

AbsVal AbsSem::psem_apply(const TypedTerm& tm, const AbsVal& a) {
  RtVal input;
  input.data = a;
  std::map<std::string, RtVal> env{{tm.ctx_name, input}};
  RtVal r = eval_abs(tm, tm.term.get(), env);
  return materialize(tm.type, r);
}

// --------------------------------------------------------------- the corpus

namespace {

LambdaCase lc(std::string name, std::string ctx_ty, std::string term) {
  return LambdaCase{std::move(name), "x", parse_ltype(ctx_ty),
                    parse_lterm(term)};
}

}  // namespace

std::vector<LambdaCase> lambda_corpus() {
  std::vector<LambdaCase> out = {
      lc("id_nat", "nat", "x"),
      lc("id_pair", "(prod nat nat)", "x"),
      lc("id_unit", "unit", "x"),
      lc("const_two", "nat", "two"),
      lc("const_zero", "nat", "zero"),
      lc("const_two_of_unit", "unit", "two"),
      lc("unit_of_nat", "nat", "unit"),
      lc("succ_x", "nat", "(app succ x)"),
      lc("pred_x", "nat", "(app pred x)"),
      lc("iszero_x", "nat", "(app iszero x)"),
      lc("succ_succ_x", "nat", "(app succ (app succ x))"),
      lc("pred_succ_x", "nat", "(app pred (app succ x))"),
      lc("succ_pred_x", "nat", "(app succ (app pred x))"),
      lc("iszero_pred_x", "nat", "(app iszero (app pred x))"),
      lc("iszero_iszero_x", "nat", "(app iszero (app iszero x))"),
      lc("pair_xx", "nat", "(pair x x)"),
      lc("pair_x_two", "nat", "(pair x two)"),
      lc("pair_two_x", "nat", "(pair two x)"),
      lc("pair_succ_pred", "nat", "(pair (app succ x) (app pred x))"),
      lc("proj1_pair_xx", "nat", "(proj1 (pair x x))"),
      lc("proj2_pair_x_succ", "nat", "(proj2 (pair x (app succ x)))"),
      lc("proj1_pair_two_x", "nat", "(proj1 (pair two x))"),
      lc("proj1_of_ctx", "(prod nat nat)", "(proj1 x)"),
      lc("proj2_of_ctx", "(prod nat nat)", "(proj2 x)"),
      lc("swap_ctx", "(prod nat nat)", "(pair (proj2 x) (proj1 x))"),
      lc("plus_xx", "nat", "(app plus (pair x x))"),
      lc("plus_x_two", "nat", "(app plus (pair x two))"),
      lc("plus_of_ctx", "(prod nat nat)", "(app plus x)"),
      lc("plus_fst_fst", "(prod nat nat)",
         "(app plus (pair (proj1 x) (proj1 x)))"),
      lc("succ_proj1", "(prod nat nat)", "(app succ (proj1 x))"),
      lc("succ_proj2", "(prod nat nat)", "(app succ (proj2 x))"),
      lc("cplus_x_two", "nat", "(app (app cplus x) two)"),
      lc("cplus_two_x", "nat", "(app (app cplus two) x)"),
      lc("beta_succ", "nat", "(app (lam y nat (app succ y)) x)"),
      lc("beta_plus_self", "nat", "(app (lam y nat (app plus (pair y y))) x)"),
      lc("nested_pair", "nat", "(pair (pair x x) x)"),
      lc("higher_order_succ", "nat",
         "(app (lam f (arrow nat nat) (app f x)) succ)"),
      lc("higher_order_twice", "nat",
         "(app (lam f (arrow nat nat) (app f (app f x))) succ)"),
  };
  return out;
}

std::vector<LambdaCase> lambda_corpus_extended() {
  std::vector<LambdaCase> out = {
      lc("lam_id", "nat", "(lam y nat y)"),
      lc("lam_succ", "nat", "(lam y nat (app succ y))"),
      lc("lam_const_ctx", "nat", "(lam y nat x)"),
      lc("lam_plus_ctx", "nat", "(lam y nat (app plus (pair x y)))"),
      lc("lam_shadow", "nat", "(app (lam y nat (lam y nat y)) x)"),
      lc("lam_of_unit", "unit", "(lam y nat (app succ y))"),
      lc("cplus_two", "nat", "(app cplus two)"),
  };
  return out;
}

std::vector<LTypePtr> corpus_types(const std::vector<LambdaCase>& corpus,
                                   const Signature& sig) {
  std::map<std::string, LTypePtr> seen;
  for (const auto& c : corpus) {
    TypedTerm tt = typecheck(c.term, c.ctx_name, c.ctx, sig);
    seen.emplace(lt_str(tt.ctx), tt.ctx);
    seen.emplace(lt_str(tt.type), tt.type);
  }
  std::vector<LTypePtr> out;
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

LambdaLawReport check_lambda_dominance(AbsSem& as,
                                       const std::vector<LambdaCase>& corpus,
                                       const Signature& sig) {
  LambdaLawReport rep;
  rep.what = "abstract image semantics below inductive semantics";
  for (const auto& c : corpus) {
    TypedTerm tt = typecheck(c.term, c.ctx_name, c.ctx, sig);
    for (const auto& a : as.enumerate(tt.ctx)) {
      ++rep.checks;
      AbsVal l = as.csemg(tt, a);
      AbsVal r = as.psem_apply(tt, a);
      if (!as.leq(tt.type, l, r)) {
        rep.ok = false;
        rep.violation = c.name + " at " + av_str(a) + ": " + av_str(l) +
                        " !<= " + av_str(r);
        return rep;
      }
    }
  }
  return rep;
}

LambdaLawReport check_lambda_oplax(AbsSem& as,
                                   const std::vector<LambdaCase>& corpus,
                                   const Signature& sig) {
  LambdaLawReport rep;
  rep.what = "image semantics oplax under substitution composition";
  std::vector<TypedTerm> typed;
  for (const auto& c : corpus)
    typed.push_back(typecheck(c.term, c.ctx_name, c.ctx, sig));

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (!lt_equal(typed[i].type, typed[j].ctx)) continue;
      LTermPtr comp =
          lterm_subst(corpus[j].term, corpus[j].ctx_name, corpus[i].term);
      TypedTerm tc = typecheck(comp, corpus[i].ctx_name, corpus[i].ctx, sig);
      for (const auto& a : as.enumerate(tc.ctx)) {
        ++rep.checks;
        AbsVal lhs = as.csemg(tc, a);
        AbsVal mid = as.csemg(typed[i], a);
        AbsVal rhs = as.csemg(typed[j], mid);
        if (!as.leq(tc.type, lhs, rhs)) {
          rep.ok = false;
          rep.violation = corpus[j].name + " after " + corpus[i].name +
                          " at " + av_str(a) + ": " + av_str(lhs) + " !<= " +
                          av_str(rhs);
          return rep;
        }
      }
    }
  }
  return rep;
}

LambdaLawReport check_lambda_normality(AbsSem& as,
                                       const std::vector<LambdaCase>& corpus,
                                       const Signature& sig) {
  LambdaLawReport rep;
  rep.what = "alpha after gamma is the identity at corpus ctx/result types";
  for (const auto& t : corpus_types(corpus, sig)) {
    InsertionReport ir = as.check_insertion(t);
    rep.checks += ir.checked;
    if (!ir.holds) {
      rep.ok = false;
      rep.violation = "at " + lt_str(t) + " for " + av_str(*ir.witness);
      return rep;
    }
  }
  return rep;
}

LambdaLawReport check_lambda_monotone(AbsSem& as,
                                      const std::vector<LambdaCase>& corpus,
                                      const Signature& sig) {
  LambdaLawReport rep;
  rep.what = "inductive semantics is order-preserving";
  for (const auto& [name, c] : sig.constants) {
    if (c.ty->tag != LType::Tag::Arrow) continue;
    MonotoneReport mr = as.check_monotone(c.ty, as.constant_seed(name));
    rep.checks += mr.checked;
    if (!mr.holds) {
      rep.ok = false;
      rep.violation = "constant seed " + name + ": " + mr.detail;
      return rep;
    }
  }
  for (const auto& c : corpus) {
    TypedTerm tt = typecheck(c.term, c.ctx_name, c.ctx, sig);
    const auto& dom = as.enumerate(tt.ctx);
    std::vector<AbsVal> vals;
    vals.reserve(dom.size());
    for (const auto& a : dom) vals.push_back(as.psem_apply(tt, a));
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (tt.type->tag == LType::Tag::Arrow) {
        MonotoneReport mr = as.check_monotone(tt.type, vals[i]);
        rep.checks += mr.checked;
        if (!mr.holds) {
          rep.ok = false;
          rep.violation = c.name + " result table: " + mr.detail;
          return rep;
        }
      }
      for (std::size_t j = 0; j < dom.size(); ++j) {
        if (!as.leq(tt.ctx, dom[i], dom[j])) continue;
        ++rep.checks;
        if (!as.leq(tt.type, vals[i], vals[j])) {
          rep.ok = false;
          rep.violation = c.name + " between " + av_str(dom[i]) + " and " +
                          av_str(dom[j]);
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace aicat
