#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aicat/values.hpp"

namespace aicat {

// A program state: finite map from variable names to values.  std::map keeps
// the representation canonical (sorted keys), so states compare and hash
// consistently everywhere.
using Memory = std::map<std::string, Value>;

std::string memory_str(const Memory& m);

// The finite state space over a fixed variable set and Ring universe,
// enumerated in lexicographic order.  Enumeration is the basis for
// predicates, collecting transformers, and every brute-force sweep.
struct MemoryCarrier {
  Universe universe;
  std::vector<std::string> vars;   // sorted
  std::vector<Memory> memories;    // lexicographic in var order

  static std::shared_ptr<const MemoryCarrier> over(Universe u,
                                                   const std::set<std::string>& vars);

  std::size_t size() const { return memories.size(); }

  // Position of m in the enumeration; throws if m has the wrong domain.
  std::size_t index_of(const Memory& m) const;

  bool operator==(const MemoryCarrier& o) const {
    return universe == o.universe && vars == o.vars;
  }
};

using CarrierPtr = std::shared_ptr<const MemoryCarrier>;

inline std::string memory_str(const Memory& m) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) s += ", ";
    first = false;
    s += k + ": " + std::to_string(v);
  }
  return s + "}";
}

inline std::shared_ptr<const MemoryCarrier> MemoryCarrier::over(
    Universe u, const std::set<std::string>& vars) {
  if (!u.is_ring())
    throw std::logic_error("state spaces are enumerable only over Ring universes");
  auto c = std::make_shared<MemoryCarrier>();
  c->universe = u;
  c->vars.assign(vars.begin(), vars.end());
  std::size_t n = 1;
  for (std::size_t i = 0; i < c->vars.size(); ++i) {
    std::size_t next = n * static_cast<std::size_t>(u.modulus);
    if (next / static_cast<std::size_t>(u.modulus) != n || next > 1u << 20)
      throw std::logic_error("state space too large to enumerate");
    n = next;
  }
  c->memories.reserve(n);
  Memory m;
  for (const auto& v : c->vars) m[v] = 0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    c->memories.push_back(m);
    // increment as a little-endian counter on the *last* variable first so
    // the order is lexicographic in (vars[0], vars[1], ...)
    for (auto it = c->vars.rbegin(); it != c->vars.rend(); ++it) {
      Value& digit = m[*it];
      if (++digit < u.modulus) break;
      digit = 0;
    }
  }
  return c;
}

inline std::size_t MemoryCarrier::index_of(const Memory& m) const {
  if (m.size() != vars.size())
    throw std::invalid_argument("memory domain mismatch: " + memory_str(m));
  std::size_t idx = 0;
  for (const auto& v : vars) {
    auto it = m.find(v);
    if (it == m.end())
      throw std::invalid_argument("memory missing variable '" + v + "'");
    if (!universe.in_range(it->second))
      throw std::invalid_argument("memory value out of carrier range");
    idx = idx * static_cast<std::size_t>(universe.modulus) +
          static_cast<std::size_t>(it->second);
  }
  return idx;
}

}  // namespace aicat
