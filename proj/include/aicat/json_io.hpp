#pragma once

#include <json.hpp>
#include <string>

#include "aicat/analyzer.hpp"
#include "aicat/domains.hpp"
#include "aicat/laws.hpp"
#include "aicat/monad.hpp"
#include "aicat/predicate.hpp"

namespace aicat {

using Json = nlohmann::json;

// All serializations are deterministic: objects render with sorted keys, so
// identical inputs yield byte-identical documents.

Json rational_json(const Rational& r);
Rational rational_of_json(const Json& j);

Json memory_json(const Memory& m);
Memory memory_of_json(const Json& j);

// {"kind":"maybe","value":{...}|null} | {"kind":"powerset","values":[...]}
// | {"kind":"subdist","weights":[{"memory":{...},"p":"1/2"},...]}
Json monad_value_json(const MonadValue& v);

// [{"memory":{...},"value":true|"3/4"|"inf"},...] in carrier order
Json predicate_json(const Predicate& p);
Json omega_val_json(const OmegaVal& v, OmegaKind k);

// interval: {"lo":0,"hi":2} or "bot"; constants: {"const":3} / "top" /
// "bot"; sign: {"signs":["neg","zero"]}.  A single-part element renders as
// {"var": value-abs, ...}; products as {"parts":[...]}.
Json abs_elem_json(const MemoryDomain& d, const AbsElem& a);
AbsElem abs_elem_of_json(const MemoryDomain& d, const Json& j);

Json loop_stats_json(const std::vector<LoopStat>& loops);
Json law_witness_json(const LawWitness& w);
Json oplax_report_json(const OplaxReport& r);
Json soundness_report_json(const SoundnessReport& r);
Json dominance_report_json(const DominanceReport& r);
Json galois_report_json(const GaloisCheckReport& r);

}  // namespace aicat
