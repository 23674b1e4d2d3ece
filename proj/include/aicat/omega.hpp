#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aicat/rational.hpp"

namespace aicat {

// Complete lattices of truth values predicates take their values in:
//
//   Bool2:  {false < true}
//   RInfLe: [0, oo] ordered by <=   (0 bottom, oo top; meet = min)
//   RInfGe: [0, oo] ordered by >=   (oo bottom, 0 top; meet = numeric max)
enum class OmegaKind { Bool2, RInfLe, RInfGe };

std::string omega_name(OmegaKind k);

// A point of [0, oo] (rationals plus infinity).  Bool2 embeds as {0, 1}.
struct OmegaVal {
  bool inf = false;
  Rational q{0};

  static OmegaVal finite(Rational r) { return {false, std::move(r)}; }
  static OmegaVal infinity() { return {true, Rational(0)}; }
  static OmegaVal yes() { return finite(Rational(1)); }
  static OmegaVal no() { return finite(Rational(0)); }

  bool truthy() const { return inf || q != Rational(0); }

  bool operator==(const OmegaVal& o) const {
    return inf == o.inf && (inf || q == o.q);
  }
  bool operator<(const OmegaVal& o) const {  // numeric order, for containers
    if (inf != o.inf) return !inf;
    return !inf && q < o.q;
  }
};

std::string omega_str(const OmegaVal& v);

inline bool num_leq(const OmegaVal& a, const OmegaVal& b) {
  if (b.inf) return true;
  if (a.inf) return false;
  return a.q <= b.q;
}

struct TruthLattice {
  OmegaKind kind;

  bool valid(const OmegaVal& v) const {
    if (kind == OmegaKind::Bool2)
      return !v.inf && (v.q == Rational(0) || v.q == Rational(1));
    return v.inf || v.q >= Rational(0);
  }
  OmegaVal top() const {
    switch (kind) {
      case OmegaKind::Bool2: return OmegaVal::yes();
      case OmegaKind::RInfLe: return OmegaVal::infinity();
      default: return OmegaVal::finite(Rational(0));
    }
  }
  OmegaVal bottom() const {
    switch (kind) {
      case OmegaKind::Bool2: return OmegaVal::no();
      case OmegaKind::RInfLe: return OmegaVal::finite(Rational(0));
      default: return OmegaVal::infinity();
    }
  }
  bool leq(const OmegaVal& a, const OmegaVal& b) const {
    return kind == OmegaKind::RInfGe ? num_leq(b, a) : num_leq(a, b);
  }
  OmegaVal meet(const OmegaVal& a, const OmegaVal& b) const {
    return leq(a, b) ? a : b;
  }
  OmegaVal join(const OmegaVal& a, const OmegaVal& b) const {
    return leq(a, b) ? b : a;
  }
};

}  // namespace aicat
