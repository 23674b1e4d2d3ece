#pragma once

#include <string>
#include <vector>

#include "aicat/ast.hpp"
#include "aicat/collecting.hpp"
#include "aicat/domains.hpp"

namespace aicat {

enum class LoopMode { Auto, Kleene, Widening };

struct LoopStat {
  std::string guard;          // printed guard of the loop
  std::size_t iterations = 0; // refinement rounds until stable
  bool widened = false;       // extrapolation was used
  bool stable = true;         // false only if the safety cap forced top
};

struct AnalyzeOptions {
  LoopMode mode = LoopMode::Auto;
  // Safety caps; on overrun the loop answer degrades to top (sound) and the
  // loop is reported unstable.
  std::size_t widen_cap = 0;   // 0 = 2 + 4 * |vars|
  std::size_t kleene_cap = 100000;
};

struct AnalyzeResult {
  AbsElem post;
  std::vector<LoopStat> loops;
};

// The abstract interpreter: structural transfer functions over a memory
// domain, loops by ascending iteration (exact joins on finite-chain domains,
// widening otherwise), guards through the context-free guard abstraction.
class Analyzer {
 public:
  explicit Analyzer(MemoryDomain dom, AnalyzeOptions opts = {});

  const MemoryDomain& domain() const { return dom_; }
  const AnalyzeOptions& options() const { return opts_; }

  AnalyzeResult analyze(const Program& p, const AbsElem& pre) const;

 private:
  AbsElem go(const Program& p, AbsElem a, std::vector<LoopStat>& stats) const;
  AbsElem loop(const PWhile& w, AbsElem pre, std::vector<LoopStat>& stats) const;

  MemoryDomain dom_;
  AnalyzeOptions opts_;
};

// The best (induced) abstract transformer alpha . collect . gamma for a
// Ring-backed collecting semantics with boolean truth values.
AbsElem best_transformer(const CollectingSem& cs, const MemoryDomain& dom,
                         const ProgramPtr& p, const AbsElem& a);

// Best transformer over the machine universe for abstract elements with a
// finite concretization (enumerated up to cap): runs the deterministic
// semantics pointwise and abstracts the image.  Throws if the
// concretization is infinite or exceeds cap.
AbsElem best_transformer_machine(const DenSem& ds, const MemoryDomain& dom,
                                 const ProgramPtr& p, const AbsElem& a,
                                 std::size_t cap = 4096);

// All concrete memories in gamma(a) if that set is finite and within cap.
std::optional<std::vector<Memory>> gamma_finite(const MemoryDomain& dom,
                                                const AbsElem& a,
                                                std::size_t cap);

struct BestComparison {
  bool sound = false;  // best <= analyzed
  bool exact = false;  // best == analyzed
};

BestComparison compare_with_best(const MemoryDomain& dom, const AbsElem& analyzed,
                                 const AbsElem& best);

}  // namespace aicat
