#include "aicat/domains.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>

namespace aicat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint8_t kNeg = 1, kZero = 2, kPos = 4, kAllSigns = 7;

std::uint8_t sign_of(const Universe& u, Value v) {
  Value w = u.signed_window(v);
  if (w < 0) return kNeg;
  if (w == 0) return kZero;
  return kPos;
}

// Raw-bound interval arithmetic helper: exact bounds of {a op b} with a in
// [al,ah], b in [bl,bh], computed in 128 bits, then clamped/wrapped by the
// caller.  Returns the four corners for mul, two for add/sub.
struct RawRange {
  __int128 lo, hi;
};

RawRange raw_add(Value al, Value ah, Value bl, Value bh) {
  return {(__int128)al + bl, (__int128)ah + bh};
}
RawRange raw_sub(Value al, Value ah, Value bl, Value bh) {
  return {(__int128)al - bh, (__int128)ah - bl};
}
RawRange raw_mul(Value al, Value ah, Value bl, Value bh) {
  __int128 c[4] = {(__int128)al * bl, (__int128)al * bh, (__int128)ah * bl,
                   (__int128)ah * bh};
  return {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
}

Value clamp_i128(__int128 x) {
  if (x < (__int128)INT64_MIN) return INT64_MIN;
  if (x > (__int128)INT64_MAX) return INT64_MAX;
  return (Value)x;
}

ValueDomainKind kind_of(const ValueAbs& a) {
  return std::holds_alternative<Interval>(a)    ? ValueDomainKind::Interval
         : std::holds_alternative<ConstElem>(a) ? ValueDomainKind::Constants
                                                : ValueDomainKind::Sign;
}

}  // namespace

std::string value_domain_name(ValueDomainKind k) {
  switch (k) {
    case ValueDomainKind::Interval: return "interval";
    case ValueDomainKind::Constants: return "constants";
    case ValueDomainKind::Sign: return "sign";
  }
  return "?";
}

// --------------------------------------------------------------- ValueDomain

ValueAbs ValueDomain::top() const {
  switch (kind) {
    case ValueDomainKind::Interval:
      return Interval::range(universe.min_value(), universe.max_value());
    case ValueDomainKind::Constants: return ConstElem::top();
    case ValueDomainKind::Sign: return SignSet::top();
  }
  return ConstElem::top();
}

ValueAbs ValueDomain::bottom() const {
  switch (kind) {
    case ValueDomainKind::Interval: return Interval::bottom();
    case ValueDomainKind::Constants: return ConstElem::bottom();
    case ValueDomainKind::Sign: return SignSet::bottom();
  }
  return ConstElem::bottom();
}

bool ValueDomain::is_bottom(const ValueAbs& a) const {
  if (auto* i = std::get_if<Interval>(&a)) return i->bot;
  if (auto* c = std::get_if<ConstElem>(&a)) return c->tag == ConstElem::Bot;
  return std::get<SignSet>(a).bits == 0;
}

bool ValueDomain::leq(const ValueAbs& a, const ValueAbs& b) const {
  if (kind_of(a) != kind_of(b)) throw DomainError("leq: mixed value domains");
  if (auto* ia = std::get_if<Interval>(&a)) {
    const auto& ib = std::get<Interval>(b);
    if (ia->bot) return true;
    if (ib.bot) return false;
    return ib.lo <= ia->lo && ia->hi <= ib.hi;
  }
  if (auto* ca = std::get_if<ConstElem>(&a)) {
    const auto& cb = std::get<ConstElem>(b);
    if (ca->tag == ConstElem::Bot) return true;
    if (cb.tag == ConstElem::Top) return true;
    if (cb.tag == ConstElem::Bot) return false;
    return ca->tag == ConstElem::Val && ca->v == cb.v;
  }
  return (std::get<SignSet>(a).bits & ~std::get<SignSet>(b).bits) == 0;
}

ValueAbs ValueDomain::meet(const ValueAbs& a, const ValueAbs& b) const {
  if (auto* ia = std::get_if<Interval>(&a)) {
    const auto& ib = std::get<Interval>(b);
    if (ia->bot || ib.bot) return Interval::bottom();
    return Interval::range(std::max(ia->lo, ib.lo), std::min(ia->hi, ib.hi));
  }
  if (auto* ca = std::get_if<ConstElem>(&a)) {
    const auto& cb = std::get<ConstElem>(b);
    if (ca->tag == ConstElem::Top) return cb;
    if (cb.tag == ConstElem::Top) return *ca;
    if (ca->tag == ConstElem::Val && cb.tag == ConstElem::Val && ca->v == cb.v)
      return *ca;
    return ConstElem::bottom();
  }
  return SignSet::of(std::get<SignSet>(a).bits & std::get<SignSet>(b).bits);
}

ValueAbs ValueDomain::join(const ValueAbs& a, const ValueAbs& b) const {
  if (auto* ia = std::get_if<Interval>(&a)) {
    const auto& ib = std::get<Interval>(b);
    if (ia->bot) return ib;
    if (ib.bot) return *ia;
    return Interval::range(std::min(ia->lo, ib.lo), std::max(ia->hi, ib.hi));
  }
  if (auto* ca = std::get_if<ConstElem>(&a)) {
    const auto& cb = std::get<ConstElem>(b);
    if (ca->tag == ConstElem::Bot) return cb;
    if (cb.tag == ConstElem::Bot) return *ca;
    if (ca->tag == ConstElem::Val && cb.tag == ConstElem::Val && ca->v == cb.v)
      return *ca;
    return ConstElem::top();
  }
  return SignSet::of(std::get<SignSet>(a).bits | std::get<SignSet>(b).bits);
}

ValueAbs ValueDomain::widen(const ValueAbs& a, const ValueAbs& b) const {
  if (kind != ValueDomainKind::Interval) return join(a, b);
  const auto& ia = std::get<Interval>(a);
  const auto& ib = std::get<Interval>(b);
  if (ia.bot) return ib;
  if (ib.bot) return ia;
  Value lo = ib.lo < ia.lo ? universe.min_value() : ia.lo;
  Value hi = ib.hi > ia.hi ? universe.max_value() : ia.hi;
  return Interval::range(lo, hi);
}

bool ValueDomain::contains(const ValueAbs& a, Value v) const {
  if (auto* i = std::get_if<Interval>(&a)) return !i->bot && i->lo <= v && v <= i->hi;
  if (auto* c = std::get_if<ConstElem>(&a))
    return c->tag == ConstElem::Top || (c->tag == ConstElem::Val && c->v == v);
  return (std::get<SignSet>(a).bits & sign_of(universe, v)) != 0;
}

ValueAbs ValueDomain::alpha_values(const std::vector<Value>& vs) const {
  if (vs.empty()) return bottom();
  switch (kind) {
    case ValueDomainKind::Interval: {
      auto [mn, mx] = std::minmax_element(vs.begin(), vs.end());
      return Interval::range(*mn, *mx);
    }
    case ValueDomainKind::Constants: {
      Value v0 = vs.front();
      for (Value v : vs)
        if (v != v0) return ConstElem::top();
      return ConstElem::constant(v0);
    }
    case ValueDomainKind::Sign: {
      std::uint8_t bits = 0;
      for (Value v : vs) bits |= sign_of(universe, v);
      return SignSet::of(bits);
    }
  }
  return top();
}

namespace {

Interval interval_binop(const Universe& u, AOp op, const Interval& a,
                        const Interval& b) {
  RawRange r = op == AOp::Add   ? raw_add(a.lo, a.hi, b.lo, b.hi)
               : op == AOp::Sub ? raw_sub(a.lo, a.hi, b.lo, b.hi)
                                : raw_mul(a.lo, a.hi, b.lo, b.hi);
  if (u.is_ring()) {
    // Exact on the raw range; if any bound leaves the carrier the result may
    // wrap, in which case the hull is the whole carrier.
    if (r.lo < 0 || r.hi > u.max_value())
      return Interval::range(u.min_value(), u.max_value());
    return Interval::range((Value)r.lo, (Value)r.hi);
  }
  return Interval::range(clamp_i128(r.lo), clamp_i128(r.hi));
}

std::uint8_t sign_negate(std::uint8_t b) {
  std::uint8_t out = b & kZero;
  if (b & kNeg) out |= kPos;
  if (b & kPos) out |= kNeg;
  return out;
}

std::uint8_t sign_binop_machine(AOp op, std::uint8_t a, std::uint8_t b) {
  if (op == AOp::Sub) return sign_binop_machine(AOp::Add, a, sign_negate(b));
  std::uint8_t out = 0;
  for (std::uint8_t sa : {kNeg, kZero, kPos}) {
    if (!(a & sa)) continue;
    for (std::uint8_t sb : {kNeg, kZero, kPos}) {
      if (!(b & sb)) continue;
      if (op == AOp::Add) {
        if (sa == kZero) out |= sb;
        else if (sb == kZero) out |= sa;
        else if (sa == sb) out |= sa;  // saturation keeps the sign
        else out |= kAllSigns;
      } else {  // Mul
        if (sa == kZero || sb == kZero) out |= kZero;
        else out |= (sa == sb) ? kPos : kNeg;
      }
    }
  }
  return out;
}

// Ring arithmetic may wrap, so only operations that provably stay inside the
// signed window keep a precise sign.
std::uint8_t sign_binop_ring(const Universe& u, AOp op, std::uint8_t a,
                             std::uint8_t b) {
  std::uint8_t out = 0;
  bool even = u.modulus % 2 == 0;
  for (std::uint8_t sa : {kNeg, kZero, kPos}) {
    if (!(a & sa)) continue;
    for (std::uint8_t sb : {kNeg, kZero, kPos}) {
      if (!(b & sb)) continue;
      switch (op) {
        case AOp::Add:
          if (sa == kZero) out |= sb;
          else if (sb == kZero) out |= sa;
          else out |= kAllSigns;
          break;
        case AOp::Sub:
          if (sb == kZero) out |= sa;
          else if (sa == kZero && sb == kPos) out |= kNeg;
          else if (sa == kZero && sb == kNeg)
            // The most negative window value wraps to itself under negation
            // when the modulus is even.
            out |= even ? (kPos | kNeg) : kPos;
          else out |= kAllSigns;
          break;
        case AOp::Mul:
          if (sa == kZero || sb == kZero) out |= kZero;
          else out |= kAllSigns;
          break;
      }
    }
  }
  return out;
}

}  // namespace

ValueAbs ValueDomain::eval(const AExpr& e,
                           const std::map<std::string, ValueAbs>& env) const {
  return std::visit(
      overloaded{
          [&](const ALit& l) -> ValueAbs {
            Value v = universe.normalize(l.value);
            switch (kind) {
              case ValueDomainKind::Interval: return Interval::range(v, v);
              case ValueDomainKind::Constants: return ConstElem::constant(v);
              case ValueDomainKind::Sign: return SignSet::of(sign_of(universe, v));
            }
            return top();
          },
          [&](const AVar& var) -> ValueAbs {
            auto it = env.find(var.name);
            if (it == env.end()) throw DomainError("eval: unbound " + var.name);
            return it->second;
          },
          [&](const ABin& b) -> ValueAbs {
            ValueAbs l = eval(*b.lhs, env), r = eval(*b.rhs, env);
            if (is_bottom(l) || is_bottom(r)) return bottom();
            switch (kind) {
              case ValueDomainKind::Interval:
                return interval_binop(universe, b.op, std::get<Interval>(l),
                                      std::get<Interval>(r));
              case ValueDomainKind::Constants: {
                const auto& cl = std::get<ConstElem>(l);
                const auto& cr = std::get<ConstElem>(r);
                if (cl.tag == ConstElem::Val && cr.tag == ConstElem::Val) {
                  Value v = b.op == AOp::Add   ? universe.add(cl.v, cr.v)
                            : b.op == AOp::Sub ? universe.sub(cl.v, cr.v)
                                               : universe.mul(cl.v, cr.v);
                  return ConstElem::constant(v);
                }
                return ConstElem::top();
              }
              case ValueDomainKind::Sign: {
                std::uint8_t sa = std::get<SignSet>(l).bits;
                std::uint8_t sb = std::get<SignSet>(r).bits;
                std::uint8_t out = universe.is_ring()
                                       ? sign_binop_ring(universe, b.op, sa, sb)
                                       : sign_binop_machine(b.op, sa, sb);
                return SignSet::of(out);
              }
            }
            return top();
          }},
      e.node);
}

ValueAbs ValueDomain::from_range(Value lo, Value hi) const {
  if (lo > hi) return bottom();
  if (universe.is_ring()) {
    // Havoc draws each raw value in [lo..hi] and normalizes; abstract the
    // resulting carrier subset exactly (ranges are small by construction).
    std::vector<Value> vs;
    if ((unsigned long long)(hi - lo) >= (unsigned long long)universe.modulus) {
      for (Value v = 0; v < universe.modulus; ++v) vs.push_back(v);
    } else {
      for (Value v = lo; v <= hi; ++v) vs.push_back(universe.normalize(v));
    }
    return alpha_values(vs);
  }
  switch (kind) {
    case ValueDomainKind::Interval: return Interval::range(lo, hi);
    case ValueDomainKind::Constants:
      return lo == hi ? ConstElem::constant(lo) : ConstElem::top();
    case ValueDomainKind::Sign: {
      std::uint8_t bits = 0;
      if (lo < 0) bits |= kNeg;
      if (lo <= 0 && 0 <= hi) bits |= kZero;
      if (hi > 0) bits |= kPos;
      return SignSet::of(bits);
    }
  }
  return top();
}

std::vector<ValueAbs> ValueDomain::enumerate() const {
  if (!universe.is_ring()) throw DomainError("enumerate needs a finite universe");
  std::vector<ValueAbs> out;
  out.push_back(bottom());
  switch (kind) {
    case ValueDomainKind::Interval:
      for (Value lo = 0; lo < universe.modulus; ++lo)
        for (Value hi = lo; hi < universe.modulus; ++hi)
          out.push_back(Interval::range(lo, hi));
      break;
    case ValueDomainKind::Constants:
      for (Value v = 0; v < universe.modulus; ++v)
        out.push_back(ConstElem::constant(v));
      out.push_back(ConstElem::top());
      break;
    case ValueDomainKind::Sign:
      for (std::uint8_t b = 1; b <= 7; ++b) out.push_back(SignSet::of(b));
      break;
  }
  return out;
}

// -------------------------------------------------------------- DomainSpec

DomainSpec DomainSpec::parse(const std::string& s) {
  auto kind_of_name = [](const std::string& n) {
    if (n == "interval") return ValueDomainKind::Interval;
    if (n == "constants") return ValueDomainKind::Constants;
    if (n == "sign") return ValueDomainKind::Sign;
    throw DomainError("unknown domain: " + n);
  };
  DomainSpec spec;
  std::string body = s;
  if (body.rfind("product:", 0) == 0) body = body.substr(8);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t plus = body.find('+', pos);
    std::string part = body.substr(pos, plus == std::string::npos ? plus : plus - pos);
    if (part.empty()) throw DomainError("bad domain spec: " + s);
    spec.parts.push_back(kind_of_name(part));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  if (spec.parts.empty()) throw DomainError("bad domain spec: " + s);
  if (spec.parts.size() > 1 && s.rfind("product:", 0) != 0)
    throw DomainError("multi-part domains need the product: prefix");
  return spec;
}

std::string DomainSpec::id() const {
  std::string out = parts.size() > 1 ? "product:" : "";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '+';
    out += value_domain_name(parts[i]);
  }
  return out;
}

// ------------------------------------------------------------ MemoryDomain

MemoryDomain::MemoryDomain(DomainSpec spec, Universe u,
                           const std::set<std::string>& vars)
    : spec_(std::move(spec)), universe_(u), vars_(vars.begin(), vars.end()) {
  if (spec_.parts.empty()) throw DomainError("empty domain spec");
}

AbsMem MemoryDomain::mem_top(std::size_t part) const {
  AbsMem m;
  m.bot = false;
  for (const auto& v : vars_) m.comps[v] = part_ops(part).top();
  return m;
}

AbsMem MemoryDomain::canon(AbsMem m) const {
  if (m.bot) return m;
  for (const auto& [v, a] : m.comps) {
    ValueDomain ops{kind_of(a), universe_};
    if (ops.is_bottom(a)) return AbsMem{};
  }
  return m;
}

AbsElem MemoryDomain::top() const {
  AbsElem e;
  for (std::size_t i = 0; i < spec_.parts.size(); ++i) e.parts.push_back(mem_top(i));
  return e;
}

AbsElem MemoryDomain::bottom() const {
  AbsElem e;
  e.parts.assign(spec_.parts.size(), AbsMem{});
  return e;
}

bool MemoryDomain::is_bottom(const AbsElem& a) const {
  for (const auto& p : a.parts)
    if (p.bot) return true;
  return false;
}

bool MemoryDomain::leq(const AbsElem& a, const AbsElem& b) const {
  if (a.parts.size() != b.parts.size()) throw DomainError("leq: part mismatch");
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    const AbsMem& ma = a.parts[i];
    const AbsMem& mb = b.parts[i];
    if (ma.bot) continue;
    if (mb.bot) return false;
    auto ops = part_ops(i);
    for (const auto& [v, av] : ma.comps)
      if (!ops.leq(av, mb.comps.at(v))) return false;
  }
  return true;
}

AbsElem MemoryDomain::meet(const AbsElem& a, const AbsElem& b) const {
  AbsElem out;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].bot || b.parts[i].bot) {
      out.parts.push_back(AbsMem{});
      continue;
    }
    AbsMem m;
    m.bot = false;
    auto ops = part_ops(i);
    for (const auto& [v, av] : a.parts[i].comps)
      m.comps[v] = ops.meet(av, b.parts[i].comps.at(v));
    out.parts.push_back(canon(std::move(m)));
  }
  return out;
}

AbsElem MemoryDomain::join(const AbsElem& a, const AbsElem& b) const {
  AbsElem out;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].bot) {
      out.parts.push_back(b.parts[i]);
      continue;
    }
    if (b.parts[i].bot) {
      out.parts.push_back(a.parts[i]);
      continue;
    }
    AbsMem m;
    m.bot = false;
    auto ops = part_ops(i);
    for (const auto& [v, av] : a.parts[i].comps)
      m.comps[v] = ops.join(av, b.parts[i].comps.at(v));
    out.parts.push_back(std::move(m));
  }
  return out;
}

AbsElem MemoryDomain::widen(const AbsElem& a, const AbsElem& b) const {
  AbsElem out;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].bot) {
      out.parts.push_back(b.parts[i]);
      continue;
    }
    if (b.parts[i].bot) {
      out.parts.push_back(a.parts[i]);
      continue;
    }
    AbsMem m;
    m.bot = false;
    auto ops = part_ops(i);
    for (const auto& [v, av] : a.parts[i].comps)
      m.comps[v] = ops.widen(av, b.parts[i].comps.at(v));
    out.parts.push_back(std::move(m));
  }
  return out;
}

AbsMem MemoryDomain::mem_assign(std::size_t part, const std::string& var,
                                const AExpr& e, const AbsMem& m) const {
  if (m.bot) return m;
  auto ops = part_ops(part);
  AbsMem out = m;
  out.comps[var] = ops.eval(e, m.comps);
  return canon(std::move(out));
}

AbsElem MemoryDomain::assign(const std::string& var, const AExpr& e,
                             const AbsElem& a) const {
  AbsElem out;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    out.parts.push_back(mem_assign(i, var, e, a.parts[i]));
  return out;
}

AbsElem MemoryDomain::assign_range(const std::string& var, Value lo, Value hi,
                                   const AbsElem& a) const {
  AbsElem out;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].bot) {
      out.parts.push_back(AbsMem{});
      continue;
    }
    AbsMem m = a.parts[i];
    m.comps[var] = part_ops(i).from_range(lo, hi);
    out.parts.push_back(canon(std::move(m)));
  }
  return out;
}

namespace {

// Recognizes an atomic comparison of one variable against a literal and
// returns (var, op, literal, var_on_left).
struct Atom {
  std::string var;
  CmpOp op;
  Value lit;
  bool var_left;
};

std::optional<Atom> match_atom(const BExpr& b) {
  auto* cmp = std::get_if<BCmp>(&b.node);
  if (!cmp) return std::nullopt;
  auto* lv = std::get_if<AVar>(&cmp->lhs->node);
  auto* rl = std::get_if<ALit>(&cmp->rhs->node);
  if (lv && rl) return Atom{lv->name, cmp->op, rl->value, true};
  auto* ll = std::get_if<ALit>(&cmp->lhs->node);
  auto* rv = std::get_if<AVar>(&cmp->rhs->node);
  if (ll && rv) return Atom{rv->name, cmp->op, ll->value, false};
  return std::nullopt;
}

// The carrier subset picked out by an atom, as an interval of raw carrier
// values (possibly split for disequality): [lo..hi] segments.
std::vector<std::pair<Value, Value>> atom_segments(const Universe& u, const Atom& at,
                                                   bool value) {
  Value k = u.normalize(at.lit);
  Value mn = u.min_value(), mx = u.max_value();
  CmpOp op = at.op;
  bool var_left = at.var_left;
  // Reduce "k op x" to a var-left form.
  if (!var_left) {
    // k <= x  <=>  x >= k;  k < x  <=>  x > k;  k = x  <=>  x = k.
    if (op == CmpOp::Eq) {
      var_left = true;
    } else if (op == CmpOp::Le) {
      // k <= x: true-set [k, mx].
      if (value) return {{k, mx}};
      return k <= mn ? std::vector<std::pair<Value, Value>>{}
                     : std::vector<std::pair<Value, Value>>{{mn, k - 1}};
    } else {
      // k < x: true-set [k+1, mx].
      if (value) return k >= mx ? std::vector<std::pair<Value, Value>>{}
                                : std::vector<std::pair<Value, Value>>{{k + 1, mx}};
      return std::vector<std::pair<Value, Value>>{{mn, k}};
    }
  }
  switch (op) {
    case CmpOp::Le:
      if (value) return {{mn, k}};
      return k >= mx ? std::vector<std::pair<Value, Value>>{}
                     : std::vector<std::pair<Value, Value>>{{k + 1, mx}};
    case CmpOp::Lt:
      if (value) return k <= mn ? std::vector<std::pair<Value, Value>>{}
                                : std::vector<std::pair<Value, Value>>{{mn, k - 1}};
      return {{k, mx}};
    case CmpOp::Eq:
      if (value) return {{k, k}};
      {
        std::vector<std::pair<Value, Value>> segs;
        if (k > mn) segs.push_back({mn, k - 1});
        if (k < mx) segs.push_back({k + 1, mx});
        return segs;
      }
  }
  return {};
}

}  // namespace

AbsMem MemoryDomain::mem_guard(std::size_t part, const BExpr& b, bool value) const {
  auto ops = part_ops(part);
  if (std::holds_alternative<BTrue>(b.node))
    return value ? mem_top(part) : AbsMem{};
  if (std::holds_alternative<BFalse>(b.node))
    return value ? AbsMem{} : mem_top(part);
  if (auto* n = std::get_if<BNot>(&b.node)) return mem_guard(part, *n->arg, !value);
  if (auto at = match_atom(b)) {
    auto segs = atom_segments(universe_, *at, value);
    ValueAbs constraint = ops.bottom();
    for (auto [lo, hi] : segs) {
      std::vector<Value> vs;
      if (universe_.is_ring()) {
        for (Value v = lo; v <= hi; ++v) vs.push_back(v);
        constraint = ops.join(constraint, ops.alpha_values(vs));
      } else {
        // Machine ranges are huge; abstract the range directly.
        constraint = ops.join(constraint, ops.from_range(lo, hi));
      }
    }
    if (ops.is_bottom(constraint)) return AbsMem{};
    AbsMem m = mem_top(part);
    m.comps[at->var] = constraint;
    return m;
  }
  // Compound or relational guards: no constraint (sound).
  return mem_top(part);
}

AbsElem MemoryDomain::abstract_guard(const BExpr& b, bool value) const {
  AbsElem out;
  for (std::size_t i = 0; i < spec_.parts.size(); ++i)
    out.parts.push_back(mem_guard(i, b, value));
  return out;
}

AbsElem MemoryDomain::guard(const BExpr& b, bool value, const AbsElem& a) const {
  return meet(a, abstract_guard(b, value));
}

std::uint64_t MemoryDomain::gamma_mask(const AbsElem& a, const MemoryCarrier& c) const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < c.memories.size(); ++i) {
    const Memory& m = c.memories[i];
    bool in = true;
    for (std::size_t p = 0; p < a.parts.size() && in; ++p) {
      if (a.parts[p].bot) {
        in = false;
        break;
      }
      auto ops = part_ops(p);
      for (const auto& [v, av] : a.parts[p].comps) {
        auto it = m.find(v);
        if (it == m.end() || !ops.contains(av, it->second)) {
          in = false;
          break;
        }
      }
    }
    if (in) mask |= 1ull << i;
  }
  return mask;
}

Predicate MemoryDomain::gamma(const AbsElem& a, CarrierPtr c) const {
  if (c->memories.size() <= 64) return pred_from_mask(c, gamma_mask(a, *c));
  Predicate p = Predicate::bottom(c, OmegaKind::Bool2);
  for (std::size_t i = 0; i < c->memories.size(); ++i) {
    const Memory& m = c->memories[i];
    bool in = true;
    for (std::size_t pi = 0; pi < a.parts.size() && in; ++pi) {
      if (a.parts[pi].bot) in = false;
      else {
        auto ops = part_ops(pi);
        for (const auto& [v, av] : a.parts[pi].comps)
          if (!ops.contains(av, m.at(v))) {
            in = false;
            break;
          }
      }
    }
    if (in) p.vals[i] = OmegaVal::yes();
  }
  return p;
}

AbsElem MemoryDomain::alpha_memories(const std::vector<Memory>& ms) const {
  if (ms.empty()) return bottom();
  AbsElem out;
  for (std::size_t p = 0; p < spec_.parts.size(); ++p) {
    auto ops = part_ops(p);
    AbsMem m;
    m.bot = false;
    for (const auto& var : vars_) {
      std::vector<Value> vs;
      vs.reserve(ms.size());
      for (const auto& mem : ms) vs.push_back(mem.at(var));
      m.comps[var] = ops.alpha_values(vs);
    }
    out.parts.push_back(std::move(m));
  }
  return out;
}

AbsElem MemoryDomain::alpha_mask(std::uint64_t mask, const MemoryCarrier& c) const {
  std::vector<Memory> ms;
  for (std::size_t i = 0; i < c.memories.size(); ++i)
    if (mask & (1ull << i)) ms.push_back(c.memories[i]);
  return alpha_memories(ms);
}

AbsElem MemoryDomain::alpha(const Predicate& p) const {
  if (p.omega != OmegaKind::Bool2)
    throw DomainError("alpha needs boolean predicates");
  std::vector<Memory> ms;
  for (std::size_t i = 0; i < p.carrier->memories.size(); ++i)
    if (p.vals[i].truthy()) ms.push_back(p.carrier->memories[i]);
  return alpha_memories(ms);
}

bool MemoryDomain::finite_chains() const {
  for (std::size_t i = 0; i < spec_.parts.size(); ++i)
    if (!part_ops(i).finite_chains()) return false;
  return true;
}

std::vector<AbsElem> MemoryDomain::enumerate(std::size_t cap) const {
  // Per part: bottom memory plus the product over vars of non-bottom values.
  std::vector<std::vector<AbsMem>> part_mems;
  for (std::size_t p = 0; p < spec_.parts.size(); ++p) {
    auto ops = part_ops(p);
    auto vals = ops.enumerate();
    std::vector<ValueAbs> nonbot;
    for (const auto& v : vals)
      if (!ops.is_bottom(v)) nonbot.push_back(v);
    std::vector<AbsMem> mems;
    mems.push_back(AbsMem{});
    std::vector<std::size_t> idx(vars_.size(), 0);
    if (!vars_.empty()) {
      while (true) {
        AbsMem m;
        m.bot = false;
        for (std::size_t vi = 0; vi < vars_.size(); ++vi)
          m.comps[vars_[vi]] = nonbot[idx[vi]];
        mems.push_back(std::move(m));
        if (mems.size() > cap) throw DomainError("domain enumeration exceeds cap");
        std::size_t vi = 0;
        while (vi < idx.size() && ++idx[vi] == nonbot.size()) idx[vi++] = 0;
        if (vi == idx.size()) break;
      }
    } else {
      AbsMem m;
      m.bot = false;
      mems.push_back(std::move(m));
    }
    part_mems.push_back(std::move(mems));
  }
  std::vector<AbsElem> out;
  std::vector<std::size_t> idx(part_mems.size(), 0);
  while (true) {
    AbsElem e;
    for (std::size_t p = 0; p < part_mems.size(); ++p)
      e.parts.push_back(part_mems[p][idx[p]]);
    out.push_back(std::move(e));
    if (out.size() > cap) throw DomainError("domain enumeration exceeds cap");
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == part_mems[p].size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

// ------------------------------------------------------------ MemoryGalois

MemoryGalois MemoryGalois::make(MemoryDomain dom, CarrierPtr carrier) {
  MemoryGalois g{std::move(dom), std::move(carrier), false};
  if (g.carrier->universe.is_ring() && g.carrier->memories.size() <= 64 &&
      g.dom.finite_chains()) {
    bool ins = true;
    try {
      for (const auto& a : g.dom.enumerate()) {
        std::uint64_t m = g.dom.gamma_mask(a, *g.carrier);
        AbsElem back = g.dom.alpha_mask(m, *g.carrier);
        // abstraction after concretization must reproduce the element
        // itself, not merely something with the same concretization;
        // unreduced products keep distinct elements with equal meanings
        // and are therefore not insertions.
        if (!(back == a)) {
          ins = false;
          break;
        }
      }
    } catch (const DomainError&) {
      ins = false;
    }
    g.insertion = ins;
  }
  return g;
}

GaloisCheckReport galois_check(const MemoryGalois& g, std::size_t sample_pairs,
                               std::uint64_t seed) {
  GaloisCheckReport rep;
  const auto& c = *g.carrier;
  if (!c.universe.is_ring() || c.memories.size() > 64) {
    rep.detail = "carrier too large for exhaustive check";
    return rep;
  }
  auto elems = g.dom.enumerate();
  std::vector<std::uint64_t> gammas(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    gammas[i] = g.dom.gamma_mask(elems[i], c);

  // counit: alpha(gamma(a)) <= a for every abstract element.
  for (std::size_t i = 0; i < elems.size() && rep.adjunction_counit; ++i) {
    AbsElem back = g.dom.alpha_mask(gammas[i], c);
    if (!g.dom.leq(back, elems[i])) {
      rep.adjunction_counit = false;
      rep.detail = "counit fails at " + abs_elem_str(g.dom, elems[i]);
    }
  }

  // unit: c <= gamma(alpha(c)); singletons plus random subsets.
  std::mt19937_64 rng(seed);
  std::uint64_t full = c.memories.size() == 64
                           ? ~0ull
                           : ((1ull << c.memories.size()) - 1);
  std::vector<std::uint64_t> concs;
  concs.push_back(0);
  concs.push_back(full);
  for (std::size_t i = 0; i < c.memories.size(); ++i) concs.push_back(1ull << i);
  for (std::size_t i = 0; i < sample_pairs; ++i) concs.push_back(rng() & full);
  for (std::uint64_t m : concs) {
    AbsElem a = g.dom.alpha_mask(m, c);
    if ((m & ~g.dom.gamma_mask(a, c)) != 0) {
      rep.adjunction_unit = false;
      rep.detail = "unit fails on a concrete subset";
      break;
    }
  }

  // Monotonicity of alpha on the sampled subsets, of gamma on all elements.
  for (std::size_t i = 0; i + 1 < concs.size() && rep.alpha_monotone; ++i) {
    std::uint64_t m1 = concs[i] & concs[i + 1];
    AbsElem a1 = g.dom.alpha_mask(m1, c);
    AbsElem a2 = g.dom.alpha_mask(concs[i + 1], c);
    if (!g.dom.leq(a1, a2)) {
      rep.alpha_monotone = false;
      rep.detail = "alpha not monotone";
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (std::size_t i = 0; i < sample_pairs && rep.gamma_monotone; ++i) {
    std::size_t x = pick(rng), y = pick(rng);
    if (g.dom.leq(elems[x], elems[y]) && (gammas[x] & ~gammas[y]) != 0) {
      rep.gamma_monotone = false;
      rep.detail = "gamma not monotone";
    }
  }

  // alpha preserves binary joins of concrete subsets (it is a left adjoint).
  for (std::size_t i = 0; i + 1 < concs.size() && rep.alpha_join; ++i) {
    std::uint64_t m1 = concs[i], m2 = concs[i + 1];
    AbsElem a = g.dom.alpha_mask(m1 | m2, c);
    AbsElem b = g.dom.join(g.dom.alpha_mask(m1, c), g.dom.alpha_mask(m2, c));
    if (!(g.dom.leq(a, b) && g.dom.leq(b, a))) {
      rep.alpha_join = false;
      rep.detail = "alpha does not preserve joins";
    }
  }
  return rep;
}

// ------------------------------------------------------------------ printing

namespace {

std::string value_abs_str(const Universe& u, const ValueAbs& a) {
  std::ostringstream os;
  if (auto* i = std::get_if<Interval>(&a)) {
    if (i->bot) return "_|_";
    if (i->lo == u.min_value() && i->hi == u.max_value()) return "T";
    os << "[" << i->lo << "," << i->hi << "]";
    return os.str();
  }
  if (auto* c = std::get_if<ConstElem>(&a)) {
    if (c->tag == ConstElem::Bot) return "_|_";
    if (c->tag == ConstElem::Top) return "T";
    os << "=" << c->v;
    return os.str();
  }
  auto s = std::get<SignSet>(a);
  if (s.bits == 0) return "_|_";
  if (s.bits == 7) return "T";
  std::string out = "{";
  if (s.bits & 1) out += "-";
  if (s.bits & 2) out += (out.size() > 1 ? ",0" : "0");
  if (s.bits & 4) out += (out.size() > 1 ? ",+" : "+");
  return out + "}";
}

}  // namespace

std::string abs_elem_str(const MemoryDomain& d, const AbsElem& a) {
  std::ostringstream os;
  for (std::size_t p = 0; p < a.parts.size(); ++p) {
    if (p) os << " * ";
    if (a.parts[p].bot) {
      os << "_|_";
      continue;
    }
    os << "{";
    bool first = true;
    for (const auto& [v, av] : a.parts[p].comps) {
      if (!first) os << ", ";
      first = false;
      os << v << ":" << value_abs_str(d.universe(), av);
    }
    os << "}";
  }
  return os.str();
}

}  // namespace aicat
