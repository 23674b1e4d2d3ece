#pragma once

#include <set>
#include <string>
#include <vector>

#include "aicat/ast.hpp"
#include "aicat/monad.hpp"

namespace aicat {

// Syntactic features that decide which semantics a program is legal under.
struct ProgramFeatures {
  bool flip = false;   // requires the subdist monad
  bool havoc = false;  // requires the powerset monad
  bool scope = false;  // changes the variable set; excluded from carrier sweeps
  bool loop = false;
};

ProgramFeatures scan_features(const Program& p);

struct CorpusProgram {
  std::string name;
  ProgramPtr prog;
  ProgramFeatures features;
};

struct CorpusOptions {
  // Exhaustive enumeration bound (AST size) for the generated tier.
  std::size_t max_size = 6;
  bool handwritten = true;
  std::size_t cap = 6000;
};

// A deterministic program corpus over variables {x, y}: an exhaustive
// enumeration of small programs (atoms 0, 1, x, y; one-level + and - with a
// variable operand; guards x<=0, x<=1, y<=1, true), deduplicated by
// sequencing normal form, plus handwritten programs covering arithmetic
// identities, nested and wrapping loops, nondeterminism, probabilistic
// choice, divergence and scope manipulation.
struct Corpus {
  std::vector<CorpusProgram> programs;
  // Composition pairs (p, q) with p ; q also small: every sequencing
  // decomposition of a corpus program, plus handwritten pairs.
  std::vector<std::pair<ProgramPtr, ProgramPtr>> pairs;
  std::set<std::string> vars;  // variables of the unscoped programs
};

Corpus make_corpus(const CorpusOptions& opts = {});

bool legal_for(const ProgramFeatures& f, MonadKind k);

// Programs / pairs legal under monad k (scope-free).
std::vector<ProgramPtr> corpus_for_monad(const Corpus& c, MonadKind k);
std::vector<std::pair<ProgramPtr, ProgramPtr>> pairs_for_monad(const Corpus& c,
                                                               MonadKind k);

}  // namespace aicat
