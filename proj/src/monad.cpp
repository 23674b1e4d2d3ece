#include "aicat/monad.hpp"

#include <sstream>
#include <stdexcept>

namespace aicat {

std::string monad_name(MonadKind k) {
  switch (k) {
    case MonadKind::Maybe: return "maybe";
    case MonadKind::Powerset: return "powerset";
    default: return "subdist";
  }
}

MonadValue MonadValue::bottom(MonadKind k) {
  switch (k) {
    case MonadKind::Maybe: return MonadValue{MaybeV{}};
    case MonadKind::Powerset: return MonadValue{PowV{}};
    default: return MonadValue{DistV{}};
  }
}

MonadValue MonadValue::unit(MonadKind k, Memory m) {
  switch (k) {
    case MonadKind::Maybe: return MonadValue{MaybeV{std::move(m)}};
    case MonadKind::Powerset: return MonadValue{PowV{std::move(m)}};
    default: return MonadValue{DistV{{std::move(m), Rational(1)}}};
  }
}

MonadValue MonadValue::pow(PowV elems) { return MonadValue{std::move(elems)}; }

MonadValue MonadValue::dist(DistV weights) {
  Rational total(0);
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second < Rational(0))
      throw std::invalid_argument("negative distribution weight");
    if (it->second == Rational(0)) {
      it = weights.erase(it);
      continue;
    }
    total += it->second;
    ++it;
  }
  if (total > Rational(1))
    throw std::invalid_argument("distribution mass exceeds 1");
  return MonadValue{std::move(weights)};
}

bool MonadValue::is_bottom() const {
  switch (kind()) {
    case MonadKind::Maybe: return !as_maybe().has_value();
    case MonadKind::Powerset: return as_pow().empty();
    default: return as_dist().empty();
  }
}

Rational MonadValue::total_mass() const {
  Rational total(0);
  for (const auto& [m, w] : as_dist()) total += w;
  return total;
}

std::string monad_value_str(const MonadValue& mv) {
  std::ostringstream os;
  switch (mv.kind()) {
    case MonadKind::Maybe:
      os << (mv.as_maybe() ? memory_str(*mv.as_maybe()) : std::string("bottom"));
      break;
    case MonadKind::Powerset: {
      os << "{";
      bool first = true;
      for (const auto& m : mv.as_pow()) {
        if (!first) os << ", ";
        first = false;
        os << memory_str(m);
      }
      os << "}";
      break;
    }
    default: {
      os << "[";
      bool first = true;
      for (const auto& [m, w] : mv.as_dist()) {
        if (!first) os << ", ";
        first = false;
        os << memory_str(m) << " @ " << rat_str(w);
      }
      os << "]";
    }
  }
  return os.str();
}

bool mv_leq(const MonadValue& a, const MonadValue& b) {
  if (a.kind() != b.kind())
    throw std::invalid_argument("comparing values of different monads");
  switch (a.kind()) {
    case MonadKind::Maybe:
      return !a.as_maybe().has_value() || a.as_maybe() == b.as_maybe();
    case MonadKind::Powerset: {
      const auto& bs = b.as_pow();
      for (const auto& m : a.as_pow())
        if (!bs.count(m)) return false;
      return true;
    }
    default: {
      const auto& bw = b.as_dist();
      for (const auto& [m, w] : a.as_dist()) {
        auto it = bw.find(m);
        if (it == bw.end() || w > it->second) return false;
      }
      return true;
    }
  }
}

MonadValue mv_chain_join(const MonadValue& a, const MonadValue& b) {
  if (a.kind() != b.kind())
    throw std::invalid_argument("joining values of different monads");
  switch (a.kind()) {
    case MonadKind::Maybe:
      if (!a.as_maybe().has_value()) return b;
      if (!b.as_maybe().has_value() || a == b) return a;
      throw std::invalid_argument("flat-order join of incomparable values");
    case MonadKind::Powerset: {
      MonadValue::PowV out = a.as_pow();
      out.insert(b.as_pow().begin(), b.as_pow().end());
      return MonadValue::pow(std::move(out));
    }
    default: {
      MonadValue::DistV out = a.as_dist();
      for (const auto& [m, w] : b.as_dist()) {
        auto [it, inserted] = out.emplace(m, w);
        if (!inserted && w > it->second) it->second = w;
      }
      return MonadValue{std::move(out)};
    }
  }
}

MonadValue kleisli_apply(MonadKind k, const KleisliFn& f, const MonadValue& mv) {
  if (mv.kind() != k)
    throw std::invalid_argument("monad value has the wrong effect kind");
  switch (k) {
    case MonadKind::Maybe:
      if (!mv.as_maybe()) return MonadValue::bottom(k);
      return f(*mv.as_maybe());
    case MonadKind::Powerset: {
      MonadValue::PowV out;
      for (const auto& m : mv.as_pow()) {
        MonadValue r = f(m);
        out.insert(r.as_pow().begin(), r.as_pow().end());
      }
      return MonadValue::pow(std::move(out));
    }
    default: {
      MonadValue::DistV out;
      for (const auto& [m, w] : mv.as_dist()) {
        MonadValue r = f(m);
        for (const auto& [m2, w2] : r.as_dist()) out[m2] += w * w2;
      }
      return MonadValue::dist(std::move(out));
    }
  }
}

KleisliFn kleisli_compose(MonadKind k, const KleisliFn& g, const KleisliFn& f) {
  return [k, g, f](const Memory& m) { return kleisli_apply(k, g, f(m)); };
}

LubResult chain_lub(const std::vector<MonadValue>& chain) {
  if (chain.empty()) return {MonadValue::bottom(MonadKind::Maybe), true,
                             "empty chain"};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!mv_leq(chain[i], chain[i + 1]))
      return {chain[0], false,
              "not an ascending chain at position " + std::to_string(i)};
  // An ascending finite prefix has its lub at the end; it equals the lub of
  // the full eventually-constant chain exactly when the tail is visibly flat.
  bool stabilized = chain.size() < 2 || chain[chain.size() - 1] == chain[chain.size() - 2];
  if (chain.back().kind() != MonadKind::Subdist) stabilized = true;
  return {chain.back(), stabilized, ""};
}

Rational total_variation(const MonadValue::DistV& a, const MonadValue::DistV& b) {
  Rational sum(0);
  for (const auto& [m, w] : a) {
    auto it = b.find(m);
    Rational d = w - (it == b.end() ? Rational(0) : it->second);
    sum += d < Rational(0) ? -d : d;
  }
  for (const auto& [m, w] : b)
    if (!a.count(m)) sum += w;
  return sum / 2;
}

LubResult chain_lub_iterate(MonadKind k,
                            const std::function<MonadValue(std::size_t)>& elem,
                            Rational eps, std::size_t cap) {
  MonadValue prev = elem(0);
  if (prev.kind() != k) return {prev, false, "chain element of wrong monad"};
  for (std::size_t i = 1; i < cap; ++i) {
    MonadValue cur = elem(i);
    if (!mv_leq(prev, cur))
      return {prev, false, "not an ascending chain at position " + std::to_string(i - 1)};
    if (cur == prev) return {cur, true, ""};
    if (k == MonadKind::Maybe && prev.as_maybe().has_value())
      return {prev, true, ""};  // flat order: engaged values are maximal
    if (k == MonadKind::Subdist &&
        total_variation(prev.as_dist(), cur.as_dist()) < eps)
      return {cur, false, ""};
    prev = std::move(cur);
  }
  return {prev, false, ""};  // cap reached: report the best approximant
}

}  // namespace aicat
