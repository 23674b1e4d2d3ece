#include "aicat/json_io.hpp"

#include <algorithm>

namespace aicat {

Json rational_json(const Rational& r) {
  if (r.denominator() == 1) return Json(r.numerator());
  return Json(std::to_string(r.numerator()) + "/" +
              std::to_string(r.denominator()));
}

Rational rational_of_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  throw std::invalid_argument("expected a rational (int or \"p/q\")");
}

Json memory_json(const Memory& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Memory memory_of_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("memory must be an object");
  Memory m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number_integer())
      throw std::invalid_argument("memory values must be integers");
    m[it.key()] = it.value().get<Value>();
  }
  return m;
}

Json monad_value_json(const MonadValue& v) {
  Json j = Json::object();
  switch (v.kind()) {
    case MonadKind::Maybe:
      j["kind"] = "maybe";
      j["value"] = v.as_maybe() ? memory_json(*v.as_maybe()) : Json(nullptr);
      break;
    case MonadKind::Powerset: {
      j["kind"] = "powerset";
      Json vals = Json::array();
      for (const auto& m : v.as_pow()) vals.push_back(memory_json(m));
      j["values"] = std::move(vals);
      break;
    }
    case MonadKind::Subdist: {
      j["kind"] = "subdist";
      Json ws = Json::array();
      for (const auto& [m, p] : v.as_dist()) {
        Json w = Json::object();
        w["memory"] = memory_json(m);
        w["p"] = rational_json(p);
        ws.push_back(std::move(w));
      }
      j["weights"] = std::move(ws);
      break;
    }
  }
  return j;
}

Json omega_val_json(const OmegaVal& v, OmegaKind k) {
  if (k == OmegaKind::Bool2) return Json(v.truthy());
  if (v.inf) return Json("inf");
  return rational_json(v.q);
}

Json predicate_json(const Predicate& p) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < p.vals.size(); ++i) {
    Json row = Json::object();
    row["memory"] = memory_json(p.carrier->memories[i]);
    row["value"] = omega_val_json(p.vals[i], p.omega);
    arr.push_back(std::move(row));
  }
  return arr;
}

namespace {

Json value_abs_json(const ValueAbs& a) {
  if (auto* i = std::get_if<Interval>(&a)) {
    if (i->bot) return Json("bot");
    Json j = Json::object();
    j["lo"] = i->lo;
    j["hi"] = i->hi;
    return j;
  }
  if (auto* c = std::get_if<ConstElem>(&a)) {
    if (c->tag == ConstElem::Bot) return Json("bot");
    if (c->tag == ConstElem::Top) return Json("top");
    Json j = Json::object();
    j["const"] = c->v;
    return j;
  }
  auto s = std::get<SignSet>(a);
  Json signs = Json::array();
  if (s.bits & 1) signs.push_back("neg");
  if (s.bits & 2) signs.push_back("zero");
  if (s.bits & 4) signs.push_back("pos");
  Json j = Json::object();
  j["signs"] = std::move(signs);
  return j;
}

ValueAbs value_abs_of_json(ValueDomainKind kind, const Universe& u, const Json& j) {
  ValueDomain ops{kind, u};
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "bot") return ops.bottom();
    if (s == "top") return ops.top();
    throw std::invalid_argument("bad abstract value: " + s);
  }
  switch (kind) {
    case ValueDomainKind::Interval: {
      Value lo = j.at("lo").get<Value>(), hi = j.at("hi").get<Value>();
      // Clip to the universe carrier; an interval outside it is empty.
      lo = std::max(lo, u.min_value());
      hi = std::min(hi, u.max_value());
      return Interval::range(lo, hi);
    }
    case ValueDomainKind::Constants: {
      Value v = j.at("const").get<Value>();
      if (!u.in_range(v)) throw std::invalid_argument("constant out of range");
      return ConstElem::constant(v);
    }
    case ValueDomainKind::Sign: {
      std::uint8_t bits = 0;
      for (const auto& s : j.at("signs")) {
        std::string n = s.get<std::string>();
        if (n == "neg") bits |= 1;
        else if (n == "zero") bits |= 2;
        else if (n == "pos") bits |= 4;
        else throw std::invalid_argument("bad sign: " + n);
      }
      return SignSet::of(bits);
    }
  }
  throw std::invalid_argument("bad abstract value");
}

Json abs_mem_json(const AbsMem& m) {
  if (m.bot) return Json("bot");
  Json j = Json::object();
  for (const auto& [v, a] : m.comps) j[v] = value_abs_json(a);
  return j;
}

AbsMem abs_mem_of_json(ValueDomainKind kind, const MemoryDomain& d, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "bot") return AbsMem{};
  if (!j.is_object())
    throw std::invalid_argument("abstract memory must be an object");
  AbsMem m;
  m.bot = false;
  ValueDomain ops{kind, d.universe()};
  for (const auto& var : d.vars()) {
    if (j.contains(var))
      m.comps[var] = value_abs_of_json(kind, d.universe(), j.at(var));
    else
      m.comps[var] = ops.top();  // unconstrained variable
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(d.vars().begin(), d.vars().end(), it.key()) == d.vars().end())
      throw std::invalid_argument("unknown variable in abstract memory: " +
                                  it.key());
  for (const auto& [v, a] : m.comps)
    if (ops.is_bottom(a)) return AbsMem{};
  return m;
}

}  // namespace

Json abs_elem_json(const MemoryDomain&, const AbsElem& a) {
  if (a.parts.size() == 1) return abs_mem_json(a.parts[0]);
  Json parts = Json::array();
  for (const auto& m : a.parts) parts.push_back(abs_mem_json(m));
  Json j = Json::object();
  j["parts"] = std::move(parts);
  return j;
}

AbsElem abs_elem_of_json(const MemoryDomain& d, const Json& j) {
  AbsElem out;
  if (j.is_object() && j.contains("parts")) {
    const Json& parts = j.at("parts");
    if (!parts.is_array() || parts.size() != d.spec().parts.size())
      throw std::invalid_argument("wrong number of product parts");
    for (std::size_t i = 0; i < d.spec().parts.size(); ++i)
      out.parts.push_back(abs_mem_of_json(d.spec().parts[i], d, parts[i]));
    return out;
  }
  if (d.spec().parts.size() != 1)
    throw std::invalid_argument("product domain needs {\"parts\":[...]}");
  out.parts.push_back(abs_mem_of_json(d.spec().parts[0], d, j));
  return out;
}

Json loop_stats_json(const std::vector<LoopStat>& loops) {
  Json arr = Json::array();
  for (const auto& l : loops) {
    Json j = Json::object();
    j["guard"] = l.guard;
    j["iterations"] = l.iterations;
    j["widened"] = l.widened;
    j["stable"] = l.stable;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json law_witness_json(const LawWitness& w) {
  Json j = Json::object();
  j["law"] = w.law;
  j["program"] = w.program;
  j["pre"] = w.pre;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  return j;
}

Json oplax_report_json(const OplaxReport& r) {
  Json j = Json::object();
  j["interpretation"] = r.interp;
  j["claimed"] = flavor_name(r.claimed);
  j["verdict"] = r.ok() ? "holds" : "violated";
  j["identity_checks"] = r.identity_checks;
  j["composition_checks"] = r.composition_checks;
  j["identity_leq"] = r.identity_leq;
  j["identity_eq"] = r.identity_eq;
  j["composition_leq"] = r.composition_leq;
  j["composition_eq"] = r.composition_eq;
  if (r.violation) j["witness"] = law_witness_json(*r.violation);
  if (r.strict_composite)
    j["strict_composite"] = law_witness_json(*r.strict_composite);
  return j;
}

Json soundness_report_json(const SoundnessReport& r) {
  Json j = Json::object();
  j["law"] = r.what;
  j["verdict"] = r.ok ? "holds" : "violated";
  j["checks"] = r.checks;
  if (r.violation) j["witness"] = law_witness_json(*r.violation);
  return j;
}

Json dominance_report_json(const DominanceReport& r) {
  Json j = Json::object();
  j["law"] = r.lo + " <= " + r.hi;
  j["verdict"] = r.leq ? "holds" : "violated";
  j["checks"] = r.checks;
  j["strict_somewhere"] = r.strict_somewhere;
  if (r.violation) j["witness"] = law_witness_json(*r.violation);
  return j;
}

Json galois_report_json(const GaloisCheckReport& r) {
  Json j = Json::object();
  j["verdict"] = r.ok() ? "holds" : "violated";
  j["adjunction_unit"] = r.adjunction_unit;
  j["adjunction_counit"] = r.adjunction_counit;
  j["alpha_monotone"] = r.alpha_monotone;
  j["gamma_monotone"] = r.gamma_monotone;
  j["alpha_join"] = r.alpha_join;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace aicat
