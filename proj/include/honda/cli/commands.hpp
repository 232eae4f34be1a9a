#pragma once

// Command drivers behind the `honda` executable. Each takes a RunConfig
// and returns a Report; argument parsing and exit codes live in the
// executable.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "honda/cli/corpus.hpp"
#include "honda/cli/report.hpp"
#include "honda/folang/printer.hpp"
#include "honda/honda.hpp"
#include "honda/lefschetz/psi.hpp"
#include "honda/parallel.hpp"
#include "honda/profinite/lift.hpp"

namespace honda::cli {

  //! Exit codes.
  enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_cap = 3 };

  struct RunConfig {
    std::string command;     //!< honda, strong-honda, psi, lift, corpus
    std::string subcommand;  //!< psi: print|eval|dagger|xcheck; corpus: list|validate

    // group selection
    std::string              corpus;
    std::vector<std::string> groups;  //!< empty: every corpus entry
    std::vector<std::string> gens;    //!< inline generators

    residue_type  modulus = 2;
    std::size_t   n       = 2;
    std::size_t   r       = 2;
    std::int64_t  s       = 1;
    std::int64_t  t       = 1;
    std::uint64_t p       = 2;
    std::size_t   levels  = 3;
    bool          strict  = false;  //!< reject r < n
    std::string   scope   = "whole";
    std::string   mode    = "exhaustive";
    std::uint64_t seed    = 0;
    std::uint64_t samples = 10'000;
    std::optional<std::uint64_t> cap;
    std::uint64_t naive_limit = 1000;
    std::string   targets     = "honda";  //!< lift: honda|all

    std::size_t workers = 1;
    std::string out;
    std::string format;  //!< json | csv | text; empty: text for psi print, else json
  };

  namespace detail {
    struct NamedTable {
      std::string name;
      GroupTable  table;
    };

    inline std::size_t group_cap(RunConfig const& c) {
      return static_cast<std::size_t>(c.cap.value_or(default_closure_cap));
    }

    //! The groups a honda or strong-honda run covers.
    inline std::vector<NamedTable> select_groups(RunConfig const& c) {
      std::vector<NamedTable> out;
      if (!c.corpus.empty()) {
        if (!c.gens.empty()) {
          throw UsageError("give either --corpus or --gen, not both");
        }
        auto specs = load_corpus(c.corpus);
        for (auto const& name : c.groups) {
          if (std::none_of(specs.begin(), specs.end(),
                           [&](GroupSpec const& g) { return g.name == name; })) {
            throw UsageError("no group named " + name + " in " + c.corpus);
          }
        }
        for (auto const& spec : specs) {
          if (c.groups.empty()
              || std::find(c.groups.begin(), c.groups.end(), spec.name) != c.groups.end()) {
            out.push_back({spec.name, build_group(spec, group_cap(c))});
          }
        }
        return out;
      }
      if (!c.groups.empty()) {
        throw UsageError("--group requires --corpus");
      }
      std::vector<SquareMatrix> gens;
      for (auto const& g : c.gens) {
        gens.push_back(parse_matrix(g, c.modulus, c.n));
      }
      out.push_back({"inline", close_generators(ResidueRing(c.modulus), c.n, gens, group_cap(c))});
      return out;
    }

    inline json group_config(RunConfig const& c) {
      json j;
      if (!c.corpus.empty()) {
        // the path itself is not part of the deterministic body
        j["source"] = "corpus";
        j["groups"] = c.groups;
      } else {
        j["source"]     = "inline";
        j["modulus"]    = c.modulus;
        j["n"]          = c.n;
        j["generators"] = c.gens;
      }
      return j;
    }

    inline lefschetz::SweepMode parse_mode(std::string const& m) {
      if (m == "exhaustive") {
        return lefschetz::SweepMode::exhaustive;
      }
      if (m == "sampled") {
        return lefschetz::SweepMode::sampled;
      }
      if (m == "closure") {
        return lefschetz::SweepMode::closure;
      }
      throw UsageError("unknown mode " + m + " (exhaustive, sampled or closure)");
    }

    inline lefschetz::PsiParams psi_params(RunConfig const& c) {
      lefschetz::PsiParams p;
      p.n     = c.n;
      p.s     = c.s;
      p.t     = c.t;
      p.r     = c.r;
      p.bound = c.strict ? lefschetz::DegreeBound::strict : lefschetz::DegreeBound::relaxed;
      p.basis();  // validates n and r
      return p;
    }

    inline lefschetz::PsiScope psi_scope(RunConfig const& c) {
      if (c.scope == "whole") {
        return lefschetz::PsiScope::whole_implication;
      }
      if (c.scope == "guard-only") {
        return lefschetz::PsiScope::guard_only;
      }
      throw UsageError("unknown scope " + c.scope + " (whole or guard-only)");
    }

    inline lefschetz::SweepOptions sweep_options(RunConfig const& c) {
      lefschetz::SweepOptions o;
      o.mode    = parse_mode(c.mode);
      o.seed    = c.seed;
      o.samples = c.samples;
      o.workers = c.workers;
      if (c.cap) {
        o.exhaustive_cap = *c.cap;
        o.column_cap     = *c.cap;
        o.class_cap      = *c.cap;
      }
      return o;
    }

    inline json psi_config(RunConfig const& c) {
      json j{{"modulus", c.modulus}, {"n", c.n},         {"r", c.r},
             {"s", c.s},             {"t", c.t},         {"mode", c.mode},
             {"strict", c.strict},   {"scope", c.scope}};
      if (c.mode == "sampled") {
        j["seed"]    = c.seed;
        j["samples"] = c.samples;
      }
      if (c.cap) {
        j["cap"] = *c.cap;
      }
      return j;
    }

    inline json alpha_json(lefschetz::ParameterTuple const& a) {
      json cols = json::array();
      for (std::size_t d = 1; d <= a.c(); ++d) {
        cols.push_back(a.column(d));
      }
      return cols;
    }
  }  // namespace detail

  inline Report cmd_honda(RunConfig const& c) {
    json cfg = detail::group_config(c);
    Report rep = make_report("honda", cfg);
    auto   groups = detail::select_groups(c);
    json   per    = json::array();
    std::uint64_t elements = 0, commutators = 0, deltas = 0;
    for (auto const& g : groups) {
      auto r = check_honda(g.table, c.workers);
      elements += r.group_order;
      commutators += r.commutator_count;
      deltas += r.deltas_checked;
      per.push_back({{"name", g.name},
                     {"modulus", g.table.ring().modulus()},
                     {"n", g.table.dim()},
                     {"order", r.group_order},
                     {"commutators", r.commutator_count},
                     {"deltas_checked", r.deltas_checked},
                     {"pass", r.pass}});
      if (!r.pass) {
        auto [gamma, delta] = *r.counterexample;
        rep.body["verdict"] = "fail";
        rep.body["counterexamples"].push_back(
            {{"group", g.name},
             {"gamma", to_json(g.table.element(gamma))},
             {"delta", to_json(g.table.element(delta))},
             {"gamma_witness", nullptr}});
        if (auto w = find_witness(g.table, gamma)) {
          rep.body["counterexamples"].back()["gamma_witness"] = {
              {"sigma", to_json(w->sigma)}, {"tau", to_json(w->tau)}};
        }
      }
    }
    rep.body["groups"]     = per;
    rep.body["statistics"] = {{"groups", groups.size()},
                              {"elements_scanned", elements},
                              {"commutators", commutators},
                              {"deltas_checked", deltas}};
    return rep;
  }

  inline Report cmd_strong_honda(RunConfig const& c) {
    Report rep    = make_report("strong-honda", detail::group_config(c));
    auto   groups = detail::select_groups(c);
    json   per    = json::array();
    std::uint64_t pairs = 0, witnesses = 0;
    for (auto const& g : groups) {
      auto sweep = strong_honda_sweep(g.table, all_pairs(g.table), c.workers);
      pairs += sweep.pairs_checked;
      witnesses += sweep.witnesses_found;
      per.push_back({{"name", g.name},
                     {"order", g.table.size()},
                     {"pairs_checked", sweep.pairs_checked},
                     {"witnesses_found", sweep.witnesses_found},
                     {"pass", sweep.failures.empty()}});
      for (auto [a, b] : sweep.failures) {
        rep.body["verdict"] = "fail";
        auto r              = check_strong_honda(g.table, a, b);
        rep.body["counterexamples"].push_back(
            {{"group", g.name},
             {"a", to_json(g.table.element(a))},
             {"b", to_json(g.table.element(b))},
             {"delta", r.failing_delta ? to_json(*r.failing_delta) : json(nullptr)}});
      }
    }
    rep.body["groups"]     = per;
    rep.body["statistics"] = {{"groups", groups.size()},
                              {"pairs_checked", pairs},
                              {"witnesses_found", witnesses}};
    return rep;
  }

  //! psi print: the sentence; in the report body under "sentence".
  inline Report cmd_psi_print(RunConfig const& c) {
    json cfg = {{"n", c.n}, {"r", c.r}, {"s", c.s}, {"t", c.t},
                {"strict", c.strict}, {"scope", c.scope}};
    Report rep = make_report("psi print", cfg);
    auto   p   = detail::psi_params(c);
    auto   f   = lefschetz::build_psi(p, detail::psi_scope(c));
    rep.body["sentence"]   = fol::print(f);
    rep.body["statistics"] = {{"parameters", p.basis().c() * p.basis().c()},
                              {"length", rep.body["sentence"].get<std::string>().size()}};
    return rep;
  }

  inline Report cmd_psi_eval(RunConfig const& c) {
    Report rep = make_report("psi eval", detail::psi_config(c));
    auto   p   = detail::psi_params(c);
    auto   r   = lefschetz::eval_psi(ResidueRing(c.modulus), p, detail::sweep_options(c),
                                     detail::psi_scope(c));
    rep.body["value"]      = r.value;
    rep.body["verdict"]    = r.value ? "pass" : "fail";
    rep.body["statistics"] = {{"alphas_visited", r.alphas_visited},
                              {"distinct_sets", r.distinct_sets},
                              {"formula_evaluations", r.formula_evaluations},
                              {"atoms", r.atoms}};
    if (r.first_false_alpha) {
      rep.body["counterexamples"].push_back({{"visit", *r.first_false_visit},
                                             {"alpha", detail::alpha_json(*r.first_false_alpha)}});
    }
    return rep;
  }

  inline Report cmd_psi_dagger(RunConfig const& c) {
    Report rep = make_report("psi dagger", detail::psi_config(c));
    auto   p   = detail::psi_params(c);
    auto   r   = lefschetz::dagger_check(ResidueRing(c.modulus), p.basis(), p.s, p.t,
                                         detail::sweep_options(c));
    rep.body["verdict"]    = r.pass ? "pass" : "fail";
    rep.body["statistics"] = {{"alphas_visited", r.alphas_visited},
                              {"subgroup_alphas", r.subgroup_alphas},
                              {"distinct_sets", r.distinct_sets},
                              {"distinct_groups", r.distinct_groups},
                              {"triples_checked", r.triples_checked},
                              {"subgroup_orders", r.subgroup_orders}};
    for (auto const& ce : r.counterexamples) {
      rep.body["counterexamples"].push_back({{"visit", ce.visit},
                                             {"alpha", detail::alpha_json(ce.alpha)},
                                             {"subgroup_order", ce.subgroup_order},
                                             {"a", to_json(ce.triple.a)},
                                             {"b", to_json(ce.triple.b)},
                                             {"d", to_json(ce.triple.d)}});
    }
    return rep;
  }

  inline Report cmd_psi_xcheck(RunConfig const& c) {
    json cfg           = detail::psi_config(c);
    cfg["naive_limit"] = c.naive_limit;
    Report rep         = make_report("psi xcheck", cfg);
    auto   p           = detail::psi_params(c);
    auto   r = lefschetz::cross_check(ResidueRing(c.modulus), p, detail::sweep_options(c),
                                      c.naive_limit);
    rep.body["agree"]       = r.agree;
    rep.body["psi_value"]   = r.psi_value;
    rep.body["dagger_pass"] = r.dagger_pass;
    rep.body["verdict"]     = r.agree && r.psi_value ? "pass" : "fail";
    rep.body["statistics"]  = {{"alphas_visited", r.alphas_visited},
                               {"classes_checked", r.classes_checked},
                               {"guard_disagreements", r.guard_disagreements},
                               {"body_disagreements", r.body_disagreements},
                               {"naive_alphas_checked", r.naive.alphas_checked},
                               {"naive_disagreements", r.naive.disagreements}};
    if (r.first_disagreement) {
      rep.body["counterexamples"].push_back({{"visit", *r.first_disagreement}});
    }
    if (r.naive.first_disagreement) {
      rep.body["counterexamples"].push_back({{"naive_visit", *r.naive.first_disagreement}});
    }
    return rep;
  }

  inline Report cmd_lift(RunConfig const& c) {
    json cfg = {{"p", c.p}, {"n", c.n}, {"levels", c.levels}, {"targets", c.targets}};
    if (c.cap) {
      cfg["cap"] = *c.cap;
    }
    Report rep = make_report("lift", cfg);
    auto   t   = profinite::build_tower(c.p, c.n, c.levels,
                                        c.cap.value_or(profinite::default_tower_cap));
    json lv = json::array();
    bool honda_ok = true;
    for (std::size_t k = 1; k <= t.levels(); ++k) {
      auto h = profinite::level_honda(t, k, c.workers);
      honda_ok = honda_ok && h.pass;
      lv.push_back({{"level", k},
                    {"modulus", t.ring(k).modulus()},
                    {"order", t.level(k).size()},
                    {"commutators", h.commutator_count},
                    {"honda", h.pass}});
    }
    rep.body["levels"] = lv;

    std::vector<ElementIndex> targets;
    if (c.targets == "honda") {
      targets = profinite::honda_targets(t.top(), c.workers);
    } else if (c.targets == "all") {
      targets.resize(t.top().size());
      for (ElementIndex i = 0; i < targets.size(); ++i) {
        targets[i] = i;
      }
    } else {
      throw UsageError("unknown target set " + c.targets + " (honda or all)");
    }
    auto results = profinite::lift_all(t, targets, c.workers);

    json          traces = json::array();
    std::uint64_t lifted = 0, failed = 0, invalid = 0, backtracks = 0, max_bt = 0, cand = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      auto const& r = results[i];
      backtracks += r.backtracks;
      max_bt = std::max(max_bt, r.backtracks);
      cand += r.candidates;
      json tr{{"delta", to_json(t.top().element(targets[i]))},
              {"backtracks", r.backtracks},
              {"candidates", r.candidates}};
      if (r.ok()) {
        bool valid = profinite::verify_trace(t, *r.trace);
        ++lifted;
        invalid += !valid;
        json wl = json::array();
        for (auto const& w : r.trace->levels) {
          wl.push_back({{"level", w.level},
                        {"sigma", to_json(w.sigma_matrix)},
                        {"tau", to_json(w.tau_matrix)}});
        }
        tr["witnesses"] = wl;
        tr["verified"]  = valid;
      } else {
        ++failed;
        tr["failed_level"] = r.failed_level;
      }
      traces.push_back(tr);
      // In "all" mode a failed lift of a non-commutator is expected; only
      // Honda targets must lift.
      bool must_lift = c.targets == "honda";
      if ((must_lift && !r.ok()) || (r.ok() && !profinite::verify_trace(t, *r.trace))) {
        rep.body["counterexamples"].push_back(tr);
      }
    }
    rep.body["traces"] = traces;
    bool pass = honda_ok && rep.body["counterexamples"].empty();
    rep.body["verdict"]    = pass ? "pass" : "fail";
    rep.body["statistics"] = {{"targets", targets.size()},
                              {"lifted", lifted},
                              {"not_lifted", failed},
                              {"invalid_traces", invalid},
                              {"backtracks", backtracks},
                              {"max_backtracks", max_bt},
                              {"candidates", cand},
                              {"top_order", t.top().size()}};
    return rep;
  }

  inline Report cmd_corpus(RunConfig const& c) {
    if (c.corpus.empty()) {
      throw UsageError("corpus commands need --corpus");
    }
    bool const validate = c.subcommand == "validate";
    if (!validate && c.subcommand != "list") {
      throw UsageError("unknown corpus subcommand " + c.subcommand);
    }
    Report rep   = make_report("corpus " + c.subcommand, json::object());
    auto   specs = load_corpus(c.corpus);
    json   entries = json::array();
    std::size_t bad = 0;
    for (auto const& s : specs) {
      json e{{"name", s.name},
             {"modulus", s.modulus},
             {"n", s.dim},
             {"line", s.line},
             {"kind", s.explicit_table ? "elements" : "generators"},
             {"matrices", s.explicit_table ? s.elements.size() : s.generators.size()}};
      if (s.order) {
        e["declared_order"] = *s.order;
      }
      if (validate) {
        try {
          e["order"] = build_group(s, detail::group_cap(c)).size();
          e["valid"] = true;
        } catch (ValidationError const& err) {
          e["valid"] = false;
          e["error"] = err.what();
          ++bad;
          rep.body["counterexamples"].push_back({{"group", s.name}, {"error", err.what()}});
        }
      }
      entries.push_back(e);
    }
    rep.body["groups"]     = entries;
    rep.body["verdict"]    = bad == 0 ? "pass" : "fail";
    rep.body["statistics"] = {{"groups", specs.size()}, {"invalid", bad}};
    return rep;
  }

  //! Dispatches on command and subcommand.
  inline Report run(RunConfig const& c) {
    if (c.command == "honda") {
      return cmd_honda(c);
    }
    if (c.command == "strong-honda") {
      return cmd_strong_honda(c);
    }
    if (c.command == "psi") {
      if (c.subcommand == "print") {
        return cmd_psi_print(c);
      }
      if (c.subcommand == "eval") {
        return cmd_psi_eval(c);
      }
      if (c.subcommand == "dagger") {
        return cmd_psi_dagger(c);
      }
      if (c.subcommand == "xcheck") {
        return cmd_psi_xcheck(c);
      }
      throw UsageError("unknown psi subcommand " + c.subcommand);
    }
    if (c.command == "lift") {
      return cmd_lift(c);
    }
    if (c.command == "corpus") {
      return cmd_corpus(c);
    }
    throw UsageError("unknown command " + c.command);
  }

}  // namespace honda::cli
