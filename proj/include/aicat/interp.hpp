#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aicat/analyzer.hpp"
#include "aicat/collecting.hpp"
#include "aicat/domains.hpp"

namespace aicat {

// An element of an interpretation's property space: a concrete predicate or
// an abstract memory element.
using Elem = std::variant<Predicate, AbsElem>;

// How strictly an interpretation tracks sequential structure:
//   Oplax       apply(skip) <= id and apply(p;q) <= apply(q) . apply(p)
//   Normal      identities on the nose, composition still only <=
//   Functorial  both laws hold with equality
enum class Flavor { Oplax, Normal, Functorial };

std::string flavor_name(Flavor f);

// A program interpretation, type-erased so the same law sweeps run over
// collecting semantics, induced transformers and analyzers alike.  `sample`
// holds the elements the sweeps quantify over.
struct Interpretation {
  std::string name;
  Flavor claimed = Flavor::Functorial;
  std::function<Elem(const ProgramPtr&, const Elem&)> apply;
  std::function<bool(const Elem&, const Elem&)> leq;
  std::function<std::string(const Elem&)> show;
  std::vector<Elem> sample;

  bool eq(const Elem& a, const Elem& b) const { return leq(a, b) && leq(b, a); }
};

// Deterministic element samples.  Boolean predicate samples always include
// bottom, top and every singleton; abstract samples include bottom and top.
std::vector<Predicate> sample_predicates(CarrierPtr c, OmegaKind k, std::size_t n,
                                         std::uint64_t seed);
std::vector<AbsElem> sample_abs_elems(const MemoryDomain& dom, std::size_t n,
                                      std::uint64_t seed);

// The collecting semantics as an interpretation (structural route).
Interpretation interp_collecting(std::shared_ptr<CollectingSem> cs,
                                 std::size_t n_elems, std::uint64_t seed);

// The induced transformer alpha . collect . gamma.  Normal when the
// connection is an insertion, oplax otherwise.
Interpretation interp_best(std::shared_ptr<CollectingSem> cs,
                           std::shared_ptr<MemoryGalois> g, std::size_t n_elems,
                           std::uint64_t seed);

// The structural abstract interpreter.
Interpretation interp_analyzer(std::shared_ptr<Analyzer> an, std::size_t n_elems,
                               std::uint64_t seed);

// Deliberately broken fixtures for exercising the law checker.
//
// The precision-capped analyzer answers top for any program writing more
// than `max_assigned` variables; it fails the composition inequality.
Interpretation interp_capped_analyzer(std::shared_ptr<Analyzer> an,
                                      std::size_t max_assigned,
                                      std::size_t n_elems, std::uint64_t seed);
// The lopsided analyzer ignores else-branches; it is not sound.
Interpretation interp_lopsided_analyzer(std::shared_ptr<Analyzer> an,
                                        std::size_t n_elems, std::uint64_t seed);

}  // namespace aicat
