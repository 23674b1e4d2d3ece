#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aicat/interp.hpp"

namespace aicat {

struct LawWitness {
  std::string law;      // which check failed / was strict
  std::string program;  // printed program (or pair)
  std::string pre;      // printed element
  std::string lhs, rhs; // the two compared results
};

// Results of sweeping the interpretation laws over a program corpus:
// identity on skip, and composition against every provided pair.
struct OplaxReport {
  std::string interp;
  Flavor claimed = Flavor::Oplax;
  std::size_t identity_checks = 0;
  std::size_t composition_checks = 0;
  bool identity_leq = true, identity_eq = true;
  bool composition_leq = true, composition_eq = true;
  std::optional<LawWitness> violation;         // first failure of the claim
  std::optional<LawWitness> strict_composite;  // composition strictly below

  bool ok() const {
    switch (claimed) {
      case Flavor::Functorial: return identity_eq && composition_eq;
      case Flavor::Normal: return identity_eq && composition_leq;
      case Flavor::Oplax: return identity_leq && composition_leq;
    }
    return false;
  }
};

struct LawCheckConfig {
  std::size_t max_pairs = static_cast<std::size_t>(-1);
  std::size_t max_elems = static_cast<std::size_t>(-1);
};

OplaxReport check_oplax(const Interpretation& in,
                        const std::vector<std::pair<ProgramPtr, ProgramPtr>>& pairs,
                        const LawCheckConfig& cfg = {});

struct SoundnessReport {
  std::string what;
  std::size_t checks = 0;
  bool ok = true;
  std::optional<LawWitness> violation;
};

// collect(p)(gamma(a)) <= gamma(apply(p)(a)): the abstract run covers every
// concrete run started inside the element's concretization.
SoundnessReport check_concretization_soundness(
    const CollectingSem& cs, const MemoryDomain& dom,
    const std::function<AbsElem(const ProgramPtr&, const AbsElem&)>& apply,
    const std::vector<ProgramPtr>& programs, const std::vector<AbsElem>& elems);

// alpha(collect(p)(c)) <= apply(p)(alpha(c)) over concrete predicates c.
SoundnessReport check_abstraction_soundness(
    const CollectingSem& cs, const MemoryDomain& dom,
    const std::function<AbsElem(const ProgramPtr&, const AbsElem&)>& apply,
    const std::vector<ProgramPtr>& programs, const std::vector<Predicate>& pres);

// Pointwise dominance lo(p)(e) <= hi(p)(e) on a shared element sample;
// records whether the inequality was ever strict.
struct DominanceReport {
  std::string lo, hi;
  std::size_t checks = 0;
  bool leq = true;
  bool strict_somewhere = false;
  std::optional<LawWitness> violation;
};

DominanceReport interp_leq_on(const Interpretation& lo, const Interpretation& hi,
                              const std::vector<ProgramPtr>& programs,
                              const std::vector<Elem>& elems);

}  // namespace aicat
