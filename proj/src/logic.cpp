#include "aicat/algebra.hpp"

#include <map>
#include <set>
#include <sstream>

namespace aicat {

std::string omega_name(OmegaKind k) {
  switch (k) {
    case OmegaKind::Bool2: return "bool";
    case OmegaKind::RInfLe: return "r-inf-le";
    default: return "r-inf-ge";
  }
}

std::string omega_str(const OmegaVal& v) {
  if (v.inf) return "inf";
  return rat_str(v.q);
}

// ---------------------------------------------------------------- predicates

Predicate Predicate::bottom(CarrierPtr c, OmegaKind k) {
  TruthLattice l{k};
  return Predicate{c, k, std::vector<OmegaVal>(c->size(), l.bottom())};
}

Predicate Predicate::top(CarrierPtr c, OmegaKind k) {
  TruthLattice l{k};
  return Predicate{c, k, std::vector<OmegaVal>(c->size(), l.top())};
}

Predicate Predicate::singleton(CarrierPtr c, const Memory& m, OmegaKind k) {
  Predicate p = bottom(c, k);
  p.vals[c->index_of(m)] = TruthLattice{k}.top();
  return p;
}

Predicate Predicate::of_fn(CarrierPtr c, OmegaKind k,
                           const std::function<OmegaVal(const Memory&)>& f) {
  Predicate p;
  p.carrier = c;
  p.omega = k;
  p.vals.reserve(c->size());
  for (const auto& m : c->memories) p.vals.push_back(f(m));
  return p;
}

bool pred_leq(const Predicate& a, const Predicate& b) {
  if (!a.same_space(b))
    throw std::invalid_argument("comparing predicates over different spaces");
  TruthLattice l = a.lattice();
  for (std::size_t i = 0; i < a.vals.size(); ++i)
    if (!l.leq(a.vals[i], b.vals[i])) return false;
  return true;
}

Predicate pred_meet(const Predicate& a, const Predicate& b) {
  if (!a.same_space(b))
    throw std::invalid_argument("meeting predicates over different spaces");
  TruthLattice l = a.lattice();
  Predicate out = a;
  for (std::size_t i = 0; i < out.vals.size(); ++i)
    out.vals[i] = l.meet(out.vals[i], b.vals[i]);
  return out;
}

Predicate pred_join(const Predicate& a, const Predicate& b) {
  if (!a.same_space(b))
    throw std::invalid_argument("joining predicates over different spaces");
  TruthLattice l = a.lattice();
  Predicate out = a;
  for (std::size_t i = 0; i < out.vals.size(); ++i)
    out.vals[i] = l.join(out.vals[i], b.vals[i]);
  return out;
}

std::uint64_t pred_to_mask(const Predicate& p) {
  if (p.omega != OmegaKind::Bool2 || p.carrier->size() > 64)
    throw std::logic_error("mask form needs Bool2 and a carrier of <= 64 states");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < p.vals.size(); ++i)
    if (p.vals[i].truthy()) mask |= std::uint64_t(1) << i;
  return mask;
}

Predicate pred_from_mask(CarrierPtr c, std::uint64_t mask) {
  Predicate p = Predicate::bottom(c, OmegaKind::Bool2);
  for (std::size_t i = 0; i < c->size(); ++i)
    if (mask >> i & 1) p.vals[i] = OmegaVal::yes();
  return p;
}

std::string pred_str(const Predicate& p) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t i = 0; i < p.vals.size(); ++i) {
    if (p.omega == OmegaKind::Bool2 && !p.vals[i].truthy()) continue;
    if (!first) os << ", ";
    first = false;
    os << memory_str(p.carrier->memories[i]);
    if (p.omega != OmegaKind::Bool2) os << " @ " << omega_str(p.vals[i]);
  }
  os << "}";
  return os.str();
}

// ------------------------------------------------------------------ algebras

OmegaVal EMAlgebra::apply_maybe(const std::optional<OmegaVal>& v) const {
  if (monad != MonadKind::Maybe) throw AlgebraError("not a maybe algebra");
  // Divergence is indistinguishable from "nothing to observe": top.
  return v ? *v : lattice().top();
}

OmegaVal EMAlgebra::apply_pow(const std::vector<OmegaVal>& vs) const {
  if (monad != MonadKind::Powerset) throw AlgebraError("not a powerset algebra");
  TruthLattice l = lattice();
  OmegaVal acc = l.top();  // empty meet
  for (const auto& v : vs) acc = l.meet(acc, v);
  return acc;
}

namespace {

std::vector<OmegaVal> omega_samples(OmegaKind k) {
  if (k == OmegaKind::Bool2) return {OmegaVal::no(), OmegaVal::yes()};
  return {OmegaVal::finite(Rational(0)), OmegaVal::finite(Rational(1, 2)),
          OmegaVal::finite(Rational(1)), OmegaVal::infinity()};
}

// All subsets (as sorted vectors) of the sample list.
std::vector<std::vector<OmegaVal>> subsets_of_samples(OmegaKind k) {
  std::vector<OmegaVal> s = omega_samples(k);
  std::vector<std::vector<OmegaVal>> out;
  for (std::size_t bits = 0; bits < (std::size_t(1) << s.size()); ++bits) {
    std::vector<OmegaVal> sub;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (bits >> i & 1) sub.push_back(s[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace

bool check_em_axioms(const EMAlgebra& a, std::string* diag) {
  auto fail = [&](const std::string& msg) {
    if (diag) *diag = msg;
    return false;
  };
  std::vector<OmegaVal> samples = omega_samples(a.omega);
  if (a.monad == MonadKind::Maybe) {
    for (const auto& w : samples)
      if (!(a.apply_maybe(w) == w)) return fail("unit axiom fails");
    // Iterated values: optional<optional<omega>>; collapsing inner layers
    // first must agree with flattening.
    std::vector<std::optional<std::optional<OmegaVal>>> doubles;
    doubles.push_back(std::nullopt);
    doubles.push_back(std::optional<std::optional<OmegaVal>>(std::nullopt));
    for (const auto& w : samples)
      doubles.push_back(std::optional<std::optional<OmegaVal>>(w));
    for (const auto& tt : doubles) {
      // o applied after mapping o over the outer layer
      OmegaVal lhs = a.apply_maybe(
          tt ? std::optional<OmegaVal>(a.apply_maybe(*tt)) : std::nullopt);
      // o applied after flattening (join of the two layers)
      std::optional<OmegaVal> flat = tt ? *tt : std::nullopt;
      OmegaVal rhs = a.apply_maybe(flat);
      if (!(lhs == rhs)) return fail("multiplication axiom fails");
    }
    return true;
  }
  if (a.monad == MonadKind::Powerset) {
    for (const auto& w : samples)
      if (!(a.apply_pow({w}) == w)) return fail("unit axiom fails");
    // Families of subsets: o(union) must equal o({o(each subset)}).
    std::vector<std::vector<OmegaVal>> subs = subsets_of_samples(a.omega);
    for (std::size_t fam = 0; fam < (std::size_t(1) << 4); ++fam) {
      std::vector<std::vector<OmegaVal>> family;
      for (std::size_t i = 0; i < 4 && i < subs.size(); ++i)
        if (fam >> i & 1) family.push_back(subs[i * 3 % subs.size()]);
      std::vector<OmegaVal> unioned, collapsed;
      for (const auto& sub : family) {
        unioned.insert(unioned.end(), sub.begin(), sub.end());
        collapsed.push_back(a.apply_pow(sub));
      }
      if (!(a.apply_pow(unioned) == a.apply_pow(collapsed)))
        return fail("multiplication axiom fails");
    }
    return true;
  }
  return fail("no structure map shipped for the subdist monad");
}

bool check_meet_preservation(const EMAlgebra& a, std::string* diag) {
  auto fail = [&](const std::string& msg) {
    if (diag) *diag = msg;
    return false;
  };
  TruthLattice l = a.lattice();
  std::vector<OmegaVal> samples = omega_samples(a.omega);
  const std::size_t carrier = 3;  // abstract points {0,1,2}
  const std::size_t nfn = [&] {
    std::size_t n = 1;
    for (std::size_t i = 0; i < carrier; ++i) n *= samples.size();
    return n;
  }();
  auto fn_at = [&](std::size_t code, std::size_t pt) {
    for (std::size_t i = 0; i < pt; ++i) code /= samples.size();
    return samples[code % samples.size()];
  };
  // Effect values over the 3-point carrier.
  if (a.monad == MonadKind::Powerset) {
    for (std::size_t f = 0; f < nfn; ++f)
      for (std::size_t g = 0; g < nfn; ++g)
        for (std::size_t set = 0; set < (1u << carrier); ++set) {
          std::vector<OmegaVal> fm, gm, mm;
          for (std::size_t pt = 0; pt < carrier; ++pt)
            if (set >> pt & 1) {
              fm.push_back(fn_at(f, pt));
              gm.push_back(fn_at(g, pt));
              mm.push_back(l.meet(fn_at(f, pt), fn_at(g, pt)));
            }
          if (!(a.apply_pow(mm) == l.meet(a.apply_pow(fm), a.apply_pow(gm))))
            return fail("binary meet not preserved");
          std::vector<OmegaVal> tops(fm.size(), l.top());
          if (!(a.apply_pow(tops) == l.top()))
            return fail("empty meet not preserved");
        }
    return true;
  }
  if (a.monad == MonadKind::Maybe) {
    for (std::size_t f = 0; f < nfn; ++f)
      for (std::size_t g = 0; g < nfn; ++g)
        for (std::size_t pt = 0; pt <= carrier; ++pt) {  // pt==carrier: bottom
          std::optional<OmegaVal> fm, gm, mm;
          if (pt < carrier) {
            fm = fn_at(f, pt);
            gm = fn_at(g, pt);
            mm = l.meet(*fm, *gm);
          }
          if (!(a.apply_maybe(mm) == l.meet(a.apply_maybe(fm), a.apply_maybe(gm))))
            return fail("binary meet not preserved");
          std::optional<OmegaVal> tt =
              pt < carrier ? std::optional<OmegaVal>(l.top()) : std::nullopt;
          if (!(a.apply_maybe(tt) == l.top()))
            return fail("empty meet not preserved");
        }
    return true;
  }
  return fail("no structure map shipped for the subdist monad");
}

EMAlgebra EMAlgebra::make(MonadKind m, OmegaKind o) {
  bool shipped = (m == MonadKind::Powerset) ||
                 (m == MonadKind::Maybe && o == OmegaKind::Bool2);
  if (!shipped)
    throw AlgebraError("no structure map shipped for (" + monad_name(m) + ", " +
                       omega_name(o) + ")");
  EMAlgebra a{m, o};
  // Validate once per pair; these checks are cheap but sit on hot paths.
  static std::set<std::pair<int, int>> validated;
  auto key = std::make_pair(static_cast<int>(m), static_cast<int>(o));
  if (!validated.count(key)) {
    std::string diag;
    if (!check_em_axioms(a, &diag))
      throw AlgebraError("algebra axioms fail for (" + monad_name(m) + ", " +
                         omega_name(o) + "): " + diag);
    if (!check_meet_preservation(a, &diag))
      throw AlgebraError("meet preservation fails for (" + monad_name(m) +
                         ", " + omega_name(o) + "): " + diag);
    validated.insert(key);
  }
  return a;
}

// -------------------------------------------------------------- transformers

namespace {

void check_arrow_space(const EMAlgebra& a, const ArrowTable& f,
                       const Predicate& p) {
  if (f.kind != a.monad)
    throw AlgebraError("arrow monad does not match the algebra");
  if (p.omega != a.omega)
    throw AlgebraError("predicate lattice does not match the algebra");
  if (!(*f.carrier == *p.carrier))
    throw AlgebraError("arrow and predicate live over different state spaces");
}

}  // namespace

Predicate wp(const EMAlgebra& a, const ArrowTable& f, const Predicate& post) {
  check_arrow_space(a, f, post);
  Predicate out = Predicate::bottom(post.carrier, post.omega);
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    const MonadValue& r = f.rows[i];
    if (a.monad == MonadKind::Maybe) {
      std::optional<OmegaVal> v;
      if (r.as_maybe()) v = post.at(*r.as_maybe());
      out.vals[i] = a.apply_maybe(v);
    } else {
      std::vector<OmegaVal> vs;
      vs.reserve(r.as_pow().size());
      for (const auto& m : r.as_pow()) vs.push_back(post.at(m));
      out.vals[i] = a.apply_pow(vs);
    }
  }
  return out;
}

Predicate sp(const EMAlgebra& a, const ArrowTable& f, const Predicate& pre) {
  check_arrow_space(a, f, pre);
  TruthLattice l = a.lattice();
  Predicate out = Predicate::bottom(pre.carrier, pre.omega);
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    const MonadValue& r = f.rows[i];
    auto feed = [&](const Memory& y) {
      std::size_t j = pre.carrier->index_of(y);
      out.vals[j] = l.join(out.vals[j], pre.vals[i]);
    };
    if (a.monad == MonadKind::Maybe) {
      if (r.as_maybe()) feed(*r.as_maybe());
    } else {
      for (const auto& m : r.as_pow()) feed(m);
    }
  }
  return out;
}

Predicate guard_predicate(const Universe& u, CarrierPtr carrier,
                          const BExpr& b, bool value, OmegaKind omega) {
  TruthLattice l{omega};
  return Predicate::of_fn(carrier, omega, [&](const Memory& m) {
    return eval_bexpr(u, b, m) == value ? l.top() : l.bottom();
  });
}

}  // namespace aicat
