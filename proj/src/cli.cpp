#include "aicat/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "aicat/analyzer.hpp"
#include "aicat/collecting.hpp"
#include "aicat/corpus.hpp"
#include "aicat/densem.hpp"
#include "aicat/domains.hpp"
#include "aicat/interp.hpp"
#include "aicat/json_io.hpp"
#include "aicat/lambda.hpp"
#include "aicat/laws.hpp"
#include "aicat/parse.hpp"
#include "aicat/scope.hpp"

namespace aicat {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Universe universe_of(const std::string& s) {
  if (s == "machine") return Universe::machine();
  if (s.rfind("ring", 0) == 0) {
    long long n = 0;
    try {
      n = std::stoll(s.substr(4));
    } catch (const std::exception&) {
      throw UsageError("--values: cannot read ring size in '" + s + "'");
    }
    if (n < 2 || n > 1024)
      throw UsageError("--values: ring size must be in [2, 1024]");
    return Universe::ring(n);
  }
  throw UsageError("--values: expected 'machine' or 'ring<n>', got '" + s +
                   "'");
}

MonadKind monad_of(const std::string& s) {
  if (s == "maybe") return MonadKind::Maybe;
  if (s == "powerset") return MonadKind::Powerset;
  if (s == "subdist") return MonadKind::Subdist;
  throw UsageError("--monad: expected maybe|powerset|subdist, got '" + s + "'");
}

OmegaKind omega_of(const std::string& s) {
  if (s == "bool") return OmegaKind::Bool2;
  if (s == "r-inf-le") return OmegaKind::RInfLe;
  if (s == "r-inf-ge") return OmegaKind::RInfGe;
  throw UsageError("--omega: expected bool|r-inf-le|r-inf-ge, got '" + s + "'");
}

void require_algebra(MonadKind m, OmegaKind o) {
  bool ok = (m == MonadKind::Powerset) ||
            (m == MonadKind::Maybe && o == OmegaKind::Bool2);
  if (!ok)
    throw UsageError("no truth-value algebra is shipped for (" +
                     monad_name(m) + ", " + omega_name(o) + ")");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(what + ": invalid JSON: " + e.what());
  }
}

ProgramPtr load_program(const std::string& file, const std::string& inline_text) {
  if (!inline_text.empty() && !file.empty())
    throw UsageError("give either a program file or --program, not both");
  if (!inline_text.empty()) return parse_program(inline_text);
  if (file.empty()) throw UsageError("no program given (file or --program)");
  return parse_program(slurp(file));
}

Predicate predicate_of_json(CarrierPtr c, OmegaKind k, const Json& j) {
  if (j.is_string()) {
    if (j == "top") return Predicate::top(c, k);
    if (j == "bottom") return Predicate::bottom(c, k);
    throw UsageError("--pre: expected \"top\", \"bottom\" or a list");
  }
  if (!j.is_array()) throw UsageError("--pre: expected a JSON array");
  TruthLattice lat{k};
  Predicate p = Predicate::bottom(c, k);
  for (const auto& e : j) {
    Memory m;
    OmegaVal v = lat.top();
    if (e.is_object() && e.contains("memory")) {
      m = memory_of_json(e.at("memory"));
      if (e.contains("value")) {
        const Json& jv = e.at("value");
        if (jv.is_boolean())
          v = jv.get<bool>() ? OmegaVal::yes() : OmegaVal::no();
        else if (jv.is_string() && jv == "inf")
          v = OmegaVal::infinity();
        else
          v = OmegaVal::finite(rational_of_json(jv));
      }
    } else {
      m = memory_of_json(e);
    }
    if (!lat.valid(v))
      throw UsageError("--pre: value out of range for omega " + omega_name(k));
    p.vals[c->index_of(m)] = v;
  }
  return p;
}

// ---- lambda abstract-value JSON (base intervals over carrier indices) ----

AbsVal absval_of_json(AbsSem& as, const LTypePtr& t, const Json& j) {
  switch (t->tag) {
    case LType::Tag::Base: {
      AbsVal a;
      a.tag = AbsVal::Tag::Base;
      if (j.is_object() && j.contains("bot")) {
        a.bot = true;
        return a;
      }
      if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        throw UsageError("abstract base value must be {\"lo\":i,\"hi\":j} or "
                         "{\"bot\":true}");
      a.bot = false;
      a.lo = j.at("lo").get<std::size_t>();
      a.hi = j.at("hi").get<std::size_t>();
      std::size_t n = as.sets().space_size(t);
      if (a.lo > a.hi || a.hi >= n)
        throw UsageError("abstract interval out of range for " + lt_str(t));
      return a;
    }
    case LType::Tag::Unit:
      return AbsVal{};
    case LType::Tag::Prod: {
      if (!j.is_array() || j.size() != 2)
        throw UsageError("abstract pair must be a 2-element array");
      AbsVal a;
      a.tag = AbsVal::Tag::PairA;
      a.kids = {absval_of_json(as, t->a, j[0]), absval_of_json(as, t->b, j[1])};
      return a;
    }
    case LType::Tag::Arrow: {
      if (!j.is_object() || !j.contains("table"))
        throw UsageError("abstract function must be {\"table\":[...]}");
      std::size_t n = as.enumerate(t->a).size();
      if (j.at("table").size() != n)
        throw UsageError("abstract table for " + lt_str(t) + " needs " +
                         std::to_string(n) + " entries");
      AbsVal a;
      a.tag = AbsVal::Tag::FunA;
      for (const auto& e : j.at("table"))
        a.kids.push_back(absval_of_json(as, t->b, e));
      return a;
    }
  }
  throw UsageError("unreachable abstract value tag");
}

void emit(std::ostream& out, const Json& j, bool pretty) {
  if (pretty)
    out << j.dump(2) << "\n";
  else
    out << j.dump() << "\n";
}

// --------------------------------------------------------------- commands

struct CliOpts {
  std::string monad = "maybe";
  std::string omega = "bool";
  std::string values = "machine";
  std::string domain = "interval";
  std::string pre, input, program_text, file;
  std::string sig_path, term_path, term_text, ctx_name = "x", ctx_type = "nat";
  std::string base_domain = "interval";
  std::string mode;           // lambda positional
  std::string suite = "all";  // check-laws
  bool pretty = false, widening = false, kleene = false, compare_best = false;
  bool fixtures = false;
  std::uint64_t seed = 1;
  std::size_t max_size = 6;
  std::size_t elems = 24;
};

int cmd_run(const CliOpts& o, std::ostream& out) {
  Universe u = universe_of(o.values);
  MonadKind m = monad_of(o.monad);
  ProgramPtr prog = load_program(o.file, o.program_text);
  if (o.input.empty()) throw UsageError("run needs --input");
  Memory mem = memory_of_json(parse_json(o.input, "--input"));

  DenSem ds{m, u, {}};
  ProgramFeatures f = scan_features(*prog);
  DenoteStats stats;
  MonadValue result = f.scope ? denote_scoped(ds, *prog, mem, &stats)
                              : denote(ds, *prog, mem, &stats);

  Json cfg{{"command", "run"},   {"monad", o.monad}, {"values", o.values},
           {"input", parse_json(o.input, "--input")}, {"seed", o.seed}};
  Json j{{"schema", "aicat/1"},
         {"config", cfg},
         {"program", print(*prog)},
         {"result", monad_value_json(result)},
         {"approx", stats.approx}};
  emit(out, j, o.pretty);
  return 0;
}

int cmd_collect(const CliOpts& o, std::ostream& out) {
  Universe u = universe_of(o.values);
  if (!u.is_ring())
    throw UsageError("collect needs a ring universe (finite state space)");
  MonadKind m = monad_of(o.monad);
  OmegaKind w = omega_of(o.omega);
  require_algebra(m, w);

  ProgramPtr prog = load_program(o.file, o.program_text);
  ProgramFeatures f = scan_features(*prog);
  if (f.scope)
    throw UsageError("collect does not support scope statements");
  if (!legal_for(f, m))
    throw UsageError("program is not legal under the " + o.monad + " monad");

  auto vars = vars_of(*prog);
  if (vars.empty()) vars.insert("x");
  CarrierPtr carrier = MemoryCarrier::over(u, vars);
  CollectingSem cs = CollectingSem::make(m, w, u, carrier);

  Predicate pre =
      o.pre.empty() ? Predicate::top(carrier, w)
                    : predicate_of_json(carrier, w, parse_json(o.pre, "--pre"));

  CollectResult direct = collect_direct(cs, prog, pre);
  CollectResult inductive = collect_inductive(cs, prog, pre);

  Json cfg{{"command", "collect"}, {"monad", o.monad},   {"omega", o.omega},
           {"values", o.values},   {"seed", o.seed}};
  if (!o.pre.empty()) cfg["pre"] = parse_json(o.pre, "--pre");
  Json j{{"schema", "aicat/1"},
         {"config", cfg},
         {"program", print(*prog)},
         {"pre", predicate_json(pre)},
         {"direct", predicate_json(direct.post)},
         {"inductive", predicate_json(inductive.post)},
         {"agree", direct.post == inductive.post},
         {"approx", direct.approx || inductive.approx}};
  emit(out, j, o.pretty);
  return 0;
}

int cmd_analyze(const CliOpts& o, std::ostream& out) {
  Universe u = universe_of(o.values);
  DomainSpec spec = DomainSpec::parse(o.domain);
  ProgramPtr prog = load_program(o.file, o.program_text);
  ProgramFeatures f = scan_features(*prog);
  if (f.scope) throw UsageError("analyze does not support scope statements");
  if (o.widening && o.kleene)
    throw UsageError("--widening and --kleene are mutually exclusive");

  auto vars = vars_of(*prog);
  if (vars.empty()) vars.insert("x");
  MemoryDomain dom(spec, u, vars);

  AbsElem pre = o.pre.empty()
                    ? dom.top()
                    : abs_elem_of_json(dom, parse_json(o.pre, "--pre"));

  AnalyzeOptions opts;
  opts.mode = o.widening ? LoopMode::Widening
                         : (o.kleene ? LoopMode::Kleene : LoopMode::Auto);
  Analyzer an(dom, opts);
  AnalyzeResult res = an.analyze(*prog, pre);

  Json cfg{{"command", "analyze"}, {"domain", dom.id()}, {"values", o.values},
           {"widening", o.widening}, {"kleene", o.kleene},
           {"compare_best", o.compare_best}, {"seed", o.seed}};
  if (!o.pre.empty()) cfg["pre"] = parse_json(o.pre, "--pre");
  Json j{{"schema", "aicat/1"},
         {"config", cfg},
         {"program", print(*prog)},
         {"pre", abs_elem_json(dom, pre)},
         {"post", abs_elem_json(dom, res.post)},
         {"loops", loop_stats_json(res.loops)}};

  if (o.compare_best) {
    AbsElem best;
    if (u.is_ring()) {
      if (f.flip)
        throw UsageError("--compare-best: probabilistic programs have no "
                         "boolean collecting semantics");
      CarrierPtr carrier = MemoryCarrier::over(u, vars);
      CollectingSem cs = CollectingSem::make(MonadKind::Powerset,
                                             OmegaKind::Bool2, u, carrier);
      best = best_transformer(cs, dom, prog, pre);
    } else {
      DenSem ds{f.havoc ? MonadKind::Powerset : MonadKind::Maybe, u, {}};
      best = best_transformer_machine(ds, dom, prog, pre);
    }
    BestComparison cmp = compare_with_best(dom, res.post, best);
    j["best"] = abs_elem_json(dom, best);
    j["comparison"] = Json{{"sound", cmp.sound}, {"exact", cmp.exact}};
  }
  emit(out, j, o.pretty);
  return 0;
}

int cmd_lambda(const CliOpts& o, std::ostream& out) {
  if (o.base_domain != "interval")
    throw UsageError("--base-domain: only 'interval' is available");
  Signature sig = o.sig_path.empty()
                      ? Signature::standard()
                      : signature_of_json(
                            parse_json(slurp(o.sig_path), "--sig"));
  auto ss = std::make_shared<SetSem>(sig);
  AbsSem as(ss);

  Json cfg{{"command", "lambda"},     {"mode", o.mode},
           {"base_domain", o.base_domain}, {"ctx_name", o.ctx_name},
           {"ctx_type", o.ctx_type},  {"seed", o.seed}};
  if (!o.sig_path.empty()) cfg["sig"] = o.sig_path;

  auto load_term = [&]() -> TypedTerm {
    std::string text = !o.term_text.empty()
                           ? o.term_text
                           : (o.term_path.empty() ? "" : slurp(o.term_path));
    if (text.empty()) throw UsageError("lambda " + o.mode + " needs --term");
    LTermPtr t = parse_lterm(text);
    LTypePtr ctx = parse_ltype(o.ctx_type);
    return typecheck(t, o.ctx_name, ctx, sig);
  };

  if (o.mode == "eval") {
    TypedTerm tt = load_term();
    if (o.input.empty()) throw UsageError("lambda eval needs --input");
    SetVal v = ss->value_of_json(tt.ctx, parse_json(o.input, "--input"));
    SetVal r = eval_set(*ss, tt, v);
    Json j{{"schema", "aicat/1"},    {"config", cfg},
           {"term", lterm_str(tt.term)}, {"type", lt_str(tt.type)},
           {"input", ss->value_json(tt.ctx, v)},
           {"result", ss->value_json(tt.type, r)}};
    emit(out, j, o.pretty);
    return 0;
  }
  if (o.mode == "csemg") {
    TypedTerm tt = load_term();
    if (o.input.empty()) throw UsageError("lambda csemg needs --input");
    AbsVal a = absval_of_json(as, tt.ctx, parse_json(o.input, "--input"));
    AbsVal r = as.csemg(tt, a);
    Json j{{"schema", "aicat/1"},    {"config", cfg},
           {"term", lterm_str(tt.term)}, {"type", lt_str(tt.type)},
           {"input", av_json(a)},    {"result", av_json(r)}};
    emit(out, j, o.pretty);
    return 0;
  }
  if (o.mode == "psem") {
    TypedTerm tt = load_term();
    Json rows = Json::array();
    for (const auto& a : as.enumerate(tt.ctx)) {
      AbsVal r = as.psem_apply(tt, a);
      rows.push_back(Json{{"arg", av_json(a)}, {"value", av_json(r)}});
    }
    Json j{{"schema", "aicat/1"},    {"config", cfg},
           {"term", lterm_str(tt.term)}, {"type", lt_str(tt.type)},
           {"table", rows}};
    emit(out, j, o.pretty);
    return 0;
  }
  if (o.mode == "check") {
    auto corpus = lambda_corpus();
    Json reports = Json::array();
    bool ok = true;
    auto add = [&](const LambdaLawReport& r) {
      reports.push_back(Json{{"what", r.what},
                             {"checks", r.checks},
                             {"verdict", r.ok ? "holds" : "violated"},
                             {"violation", r.violation}});
      ok = ok && r.ok;
    };
    add(check_lambda_dominance(as, corpus, sig));
    add(check_lambda_oplax(as, corpus, sig));
    add(check_lambda_normality(as, corpus, sig));
    add(check_lambda_monotone(as, corpus, sig));
    Json j{{"schema", "aicat/1"},
           {"config", cfg},
           {"terms", corpus.size()},
           {"reports", reports},
           {"ok", ok}};
    emit(out, j, o.pretty);
    return ok ? 0 : 3;
  }
  throw UsageError("lambda mode must be eval|csemg|psem|check, got '" +
                   o.mode + "'");
}

int cmd_check_laws(const CliOpts& o, std::ostream& out) {
  Universe u = universe_of(o.values);
  auto wants = [&](const std::string& s) {
    return o.suite == "all" || o.suite == s;
  };
  if (!wants("oplax") && !wants("soundness") && !wants("dominance") &&
      !wants("galois") && !wants("lambda"))
    throw UsageError("--suite: expected oplax|soundness|dominance|galois|"
                     "lambda|all, got '" + o.suite + "'");

  Json reports = Json::array();
  bool ok = true;
  // expected=false marks fixtures: they must violate, and count as failures
  // only when they hold.
  auto note = [&](const Json& r, bool violated, bool expected_violation) {
    Json e = r;
    e["expected_violation"] = expected_violation;
    reports.push_back(e);
    if (violated != expected_violation) ok = false;
  };

  CorpusOptions copt;
  copt.max_size = o.max_size;
  Corpus corpus = make_corpus(copt);

  bool needs_ring = wants("oplax") || wants("soundness") ||
                    wants("dominance") || wants("galois");
  if (needs_ring && !u.is_ring())
    throw UsageError("law sweeps need a ring universe (--values ring<n>)");

  std::shared_ptr<CollectingSem> cs;
  std::shared_ptr<MemoryGalois> gal;
  std::shared_ptr<Analyzer> an;
  MemoryDomain* domp = nullptr;
  std::unique_ptr<MemoryDomain> dom_holder;
  if (needs_ring) {
    CarrierPtr carrier = MemoryCarrier::over(u, corpus.vars);
    cs = std::make_shared<CollectingSem>(CollectingSem::make(
        MonadKind::Powerset, OmegaKind::Bool2, u, carrier));
    DomainSpec spec = DomainSpec::parse(o.domain);
    dom_holder = std::make_unique<MemoryDomain>(spec, u, corpus.vars);
    domp = dom_holder.get();
    gal = std::make_shared<MemoryGalois>(MemoryGalois::make(*domp, carrier));
    an = std::make_shared<Analyzer>(*domp);
  }

  auto pow_programs = corpus_for_monad(corpus, MonadKind::Powerset);
  auto pow_pairs = pairs_for_monad(corpus, MonadKind::Powerset);

  if (wants("oplax")) {
    auto maybe_cs = std::make_shared<CollectingSem>(CollectingSem::make(
        MonadKind::Maybe, OmegaKind::Bool2, u, cs->carrier));
    for (auto& in :
         {interp_collecting(cs, o.elems, o.seed),
          interp_collecting(maybe_cs, o.elems, o.seed),
          interp_best(cs, gal, o.elems, o.seed),
          interp_analyzer(an, o.elems, o.seed)}) {
      auto pairs = in.name.rfind("collecting(maybe", 0) == 0
                       ? pairs_for_monad(corpus, MonadKind::Maybe)
                       : pow_pairs;
      OplaxReport r = check_oplax(in, pairs);
      note(oplax_report_json(r), !r.ok(), false);
    }
    if (o.fixtures) {
      Interpretation capped =
          interp_capped_analyzer(an, 1, o.elems, o.seed);
      OplaxReport r = check_oplax(capped, pow_pairs);
      note(oplax_report_json(r), !r.ok(), true);
    }
  }

  if (wants("soundness")) {
    auto best_apply = [&](const ProgramPtr& p, const AbsElem& a) {
      return best_transformer(*cs, *domp, p, a);
    };
    auto an_apply = [&](const ProgramPtr& p, const AbsElem& a) {
      return an->analyze(*p, a).post;
    };
    auto elems = sample_abs_elems(*domp, o.elems, o.seed);
    auto preds = sample_predicates(cs->carrier, OmegaKind::Bool2, o.elems,
                                   o.seed);
    const std::vector<std::pair<std::string,
                                std::function<AbsElem(const ProgramPtr&,
                                                      const AbsElem&)>>>
        apps{{"best", best_apply}, {"analyzer", an_apply}};
    for (const auto& [name, fn] : apps) {
      SoundnessReport rc = check_concretization_soundness(
          *cs, *domp, fn, pow_programs, elems);
      rc.what = name + ": " + rc.what;
      note(soundness_report_json(rc), !rc.ok, false);
      SoundnessReport ra = check_abstraction_soundness(
          *cs, *domp, fn, pow_programs, preds);
      ra.what = name + ": " + ra.what;
      note(soundness_report_json(ra), !ra.ok, false);
    }
    if (o.fixtures) {
      Interpretation lop = interp_lopsided_analyzer(an, o.elems, o.seed);
      auto lop_apply = [&](const ProgramPtr& p, const AbsElem& a) {
        return std::get<AbsElem>(lop.apply(p, Elem{a}));
      };
      SoundnessReport r = check_concretization_soundness(
          *cs, *domp, lop_apply, pow_programs, sample_abs_elems(*domp, o.elems,
                                                                o.seed));
      r.what = "lopsided analyzer: " + r.what;
      note(soundness_report_json(r), !r.ok, true);
    }
  }

  if (wants("dominance")) {
    Interpretation best = interp_best(cs, gal, o.elems, o.seed);
    Interpretation anin = interp_analyzer(an, o.elems, o.seed);
    DominanceReport r = interp_leq_on(best, anin, pow_programs, best.sample);
    note(dominance_report_json(r), !r.leq, false);
  }

  if (wants("galois")) {
    GaloisCheckReport r = galois_check(*gal, 4000, o.seed);
    bool holds = r.adjunction_unit && r.adjunction_counit &&
                 r.alpha_monotone && r.gamma_monotone && r.alpha_join;
    note(galois_report_json(r), !holds, false);
  }

  if (wants("lambda")) {
    Signature sig = Signature::standard();
    auto ss = std::make_shared<SetSem>(sig);
    AbsSem as(ss);
    auto lc = lambda_corpus();
    for (auto& r : {check_lambda_dominance(as, lc, sig),
                    check_lambda_oplax(as, lc, sig),
                    check_lambda_normality(as, lc, sig),
                    check_lambda_monotone(as, lc, sig)}) {
      Json e{{"what", r.what},
             {"checks", r.checks},
             {"verdict", r.ok ? "holds" : "violated"},
             {"violation", r.violation}};
      note(e, !r.ok, false);
    }
  }

  Json cfg{{"command", "check-laws"}, {"suite", o.suite},
           {"values", o.values},      {"domain", o.domain},
           {"max_size", o.max_size},  {"elems", o.elems},
           {"fixtures", o.fixtures},  {"seed", o.seed}};
  Json j{{"schema", "aicat/1"},
         {"config", cfg},
         {"programs", corpus.programs.size()},
         {"reports", reports},
         {"ok", ok}};
  emit(out, j, o.pretty);
  return ok ? 0 : 3;
}

// ------------------------------------------------------------- entry point

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;
  Json j = parse_json(slurp(path), "--config");
  if (!j.is_object()) throw UsageError("--config: expected a JSON object");
  std::vector<std::string> out = args;
  for (const auto& [key, val] : j.items()) {
    std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
    if (present) continue;
    if (val.is_boolean()) {
      if (val.get<bool>()) out.push_back(flag);
    } else if (val.is_string()) {
      out.push_back(flag);
      out.push_back(val.get<std::string>());
    } else {
      out.push_back(flag);
      out.push_back(val.dump());
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CliOpts o;
  CLI::App app{"categorical program semantics and abstract interpretation"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file with defaults");

  auto add_common = [&](CLI::App* c) {
    c->add_flag("--pretty", o.pretty, "indent JSON output");
    c->add_option("--seed", o.seed, "seed for sampled sweeps");
    c->add_option("--config", config_path, "JSON config file with defaults");
  };

  auto* run = app.add_subcommand("run", "evaluate a program on one state");
  run->add_option("--monad", o.monad, "maybe|powerset|subdist");
  run->add_option("--values", o.values, "machine|ring<n>");
  run->add_option("--input", o.input, "initial memory as JSON");
  run->add_option("--program", o.program_text, "inline program text");
  run->add_option("file", o.file, "program file");
  add_common(run);

  auto* col = app.add_subcommand("collect", "strongest-postcondition run");
  col->add_option("--monad", o.monad, "maybe|powerset");
  col->add_option("--omega", o.omega, "bool|r-inf-le|r-inf-ge");
  col->add_option("--values", o.values, "ring<n>");
  col->add_option("--pre", o.pre, "precondition predicate JSON");
  col->add_option("--program", o.program_text, "inline program text");
  col->add_option("file", o.file, "program file");
  add_common(col);

  auto* ana = app.add_subcommand("analyze", "abstract interpretation");
  ana->add_option("--domain", o.domain,
                  "interval|constants|sign|product:a,b,...");
  ana->add_option("--values", o.values, "machine|ring<n>");
  ana->add_option("--pre", o.pre, "abstract element JSON");
  ana->add_flag("--widening", o.widening, "force widening on loops");
  ana->add_flag("--kleene", o.kleene, "force exact ascending iteration");
  ana->add_flag("--compare-best", o.compare_best,
                "also compute the induced best transformer");
  ana->add_option("--program", o.program_text, "inline program text");
  ana->add_option("file", o.file, "program file");
  add_common(ana);

  auto* lam = app.add_subcommand("lambda", "typed lambda abstraction");
  lam->add_option("mode", o.mode, "eval|csemg|psem|check")->required();
  lam->add_option("--sig", o.sig_path, "signature JSON file");
  lam->add_option("--term", o.term_text, "inline term s-expression");
  lam->add_option("--term-file", o.term_path, "term file");
  lam->add_option("--ctx-name", o.ctx_name, "context variable name");
  lam->add_option("--ctx-type", o.ctx_type, "context type (s-expression)");
  lam->add_option("--base-domain", o.base_domain, "interval");
  lam->add_option("--input", o.input, "input value JSON");
  add_common(lam);

  auto* law = app.add_subcommand("check-laws", "law suites over the corpus");
  law->add_option("--suite", o.suite,
                  "oplax|soundness|dominance|galois|lambda|all");
  law->add_option("--values", o.values, "ring<n>");
  law->add_option("--domain", o.domain, "abstract domain spec");
  law->add_option("--max-size", o.max_size, "corpus AST size bound");
  law->add_option("--elems", o.elems, "sampled elements per interpretation");
  law->add_flag("--fixtures", o.fixtures,
                "include the deliberately broken fixtures");
  add_common(law);

  try {
    std::vector<std::string> merged = merge_config(args);
    // CLI11 parses reversed argv
    std::vector<std::string> rev(merged.rbegin(), merged.rend());
    app.parse(rev);

    if (const char* e = std::getenv("AICAT_SEED")) {
      try {
        o.seed = std::stoull(e);
      } catch (const std::exception&) {
        throw UsageError("AICAT_SEED: not a number: '" + std::string(e) + "'");
      }
    }

    if (run->parsed()) return cmd_run(o, out);
    if (col->parsed()) return cmd_collect(o, out);
    if (ana->parsed()) return cmd_analyze(o, out);
    if (lam->parsed()) return cmd_lambda(o, out);
    if (law->parsed()) return cmd_check_laws(o, out);
    throw UsageError("no subcommand given");
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace aicat
