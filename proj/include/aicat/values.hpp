#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace aicat {

using Value = std::int64_t;

// Arithmetic universe the programs compute in.
//
//   Ring(n):  carrier {0..n-1}, every operation reduced mod n (wrap-around).
//             Comparisons use the raw carrier order 0 < 1 < ... < n-1.
//   Machine:  full int64 range with saturating (clamping) arithmetic.
enum class UniverseKind { Ring, Machine };

struct Universe {
  UniverseKind kind = UniverseKind::Machine;
  Value modulus = 0;  // Ring only, >= 1

  static Universe ring(Value n) {
    if (n < 1) throw std::invalid_argument("ring modulus must be >= 1");
    return Universe{UniverseKind::Ring, n};
  }
  static Universe machine() { return Universe{UniverseKind::Machine, 0}; }

  bool is_ring() const { return kind == UniverseKind::Ring; }

  Value min_value() const {
    return is_ring() ? 0 : std::numeric_limits<Value>::min();
  }
  Value max_value() const {
    return is_ring() ? modulus - 1 : std::numeric_limits<Value>::max();
  }
  bool in_range(Value v) const { return v >= min_value() && v <= max_value(); }

  // Ring: canonical representative in {0..n-1}.  Machine: clamp to int64.
  Value normalize(Value v) const {
    if (is_ring()) {
      Value m = v % modulus;
      return m < 0 ? m + modulus : m;
    }
    return v;
  }

  Value add(Value a, Value b) const { return arith(a, b, '+'); }
  Value sub(Value a, Value b) const { return arith(a, b, '-'); }
  Value mul(Value a, Value b) const { return arith(a, b, '*'); }

  // View a Ring value through the two's-complement style window
  // [-floor(n/2), ceil(n/2)-1]; used by the sign abstraction.  Machine:
  // identity.
  Value signed_window(Value v) const {
    if (!is_ring()) return v;
    Value half = modulus / 2;
    Value w = normalize(v);
    return w >= modulus - half ? w - modulus : w;
  }

  std::vector<Value> enumerate() const {
    if (!is_ring()) throw std::logic_error("cannot enumerate machine integers");
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(modulus));
    for (Value v = 0; v < modulus; ++v) out.push_back(v);
    return out;
  }

  std::string label() const {
    return is_ring() ? "ring" + std::to_string(modulus) : "machine";
  }

  bool operator==(const Universe&) const = default;

 private:
  Value arith(Value a, Value b, char op) const {
    if (is_ring()) {
      // Reduce operands first so intermediates stay within |n^2|.
      Value x = normalize(a), y = normalize(b);
      switch (op) {
        case '+': return normalize(x + y);
        case '-': return normalize(x - y);
        default: return normalize(x * y);
      }
    }
    __int128 r;
    switch (op) {
      case '+': r = static_cast<__int128>(a) + b; break;
      case '-': r = static_cast<__int128>(a) - b; break;
      default: r = static_cast<__int128>(a) * b; break;
    }
    const __int128 lo = std::numeric_limits<Value>::min();
    const __int128 hi = std::numeric_limits<Value>::max();
    if (r < lo) return std::numeric_limits<Value>::min();
    if (r > hi) return std::numeric_limits<Value>::max();
    return static_cast<Value>(r);
  }
};

}  // namespace aicat
