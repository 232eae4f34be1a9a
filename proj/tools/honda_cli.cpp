// honda: command-line driver for the verification campaigns.
//
// Exit codes: 0 pass, 1 fail, 2 usage / parse / validation error,
// 3 resource cap exceeded.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "honda/cli/commands.hpp"

namespace {

  using namespace honda;
  using namespace honda::cli;

  void add_group_options(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--corpus", c.corpus, "Group corpus file");
    cmd->add_option("--group", c.groups, "Corpus entry to check (repeatable; default all)")
        ->allow_extra_args(false);
    cmd->add_option("--gen", c.gens, "Inline generator such as \"[[1,1],[0,1]]\" (repeatable)")
        ->allow_extra_args(false);
    cmd->add_option("--modulus", c.modulus, "Ring modulus m of Z/m for inline groups");
    cmd->add_option("--n", c.n, "Matrix dimension for inline groups");
    cmd->add_option("--cap", c.cap, "Closure cap on group elements");
  }

  void add_psi_options(CLI::App* cmd, RunConfig& c, bool sweep) {
    cmd->add_option("--n", c.n, "Matrix dimension")->capture_default_str();
    cmd->add_option("--r", c.r, "Degree bound")->capture_default_str();
    cmd->add_option("--s", c.s, "Exponent s")->capture_default_str();
    cmd->add_option("--t", c.t, "Exponent t")->capture_default_str();
    cmd->add_flag("--strict", c.strict, "Reject degree bounds r < n");
    cmd->add_option("--scope", c.scope, "whole | guard-only")->capture_default_str();
    if (!sweep) {
      return;
    }
    cmd->add_option("--modulus", c.modulus, "Ring modulus m of Z/m")->capture_default_str();
    cmd->add_option("--mode", c.mode, "exhaustive | sampled | closure")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed for sampled mode")->capture_default_str();
    cmd->add_option("--samples", c.samples, "Sample count for sampled mode")
        ->capture_default_str();
    cmd->add_option("--cap", c.cap, "Cap on the parameter space (exhaustive) or columns "
                                    "and classes (closure)");
  }

  void add_common(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--workers", c.workers,
                    std::string("Worker threads (default: $") + workers_env_var
                        + " or the hardware concurrency)");
    cmd->add_option("--out", c.out, "Write the report here instead of stdout");
    cmd->add_option("--format", c.format, "json | csv (psi print: text | json)");
  }

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  c.workers = default_workers();

  CLI::App app{"honda: Honda-property verification toolkit", "honda"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.set_config("--config", "", "Read options from a TOML/INI file; flags win");
  app.require_subcommand(1);

  auto* honda_cmd = app.add_subcommand("honda", "Check the Honda property on finite groups");
  add_group_options(honda_cmd, c);
  add_common(honda_cmd, c);

  auto* strong = app.add_subcommand("strong-honda",
                                    "Check the strong Honda property on all generator pairs");
  add_group_options(strong, c);
  add_common(strong, c);

  auto* psi = app.add_subcommand("psi", "Build and model-check the first-order sentences");
  psi->require_subcommand(1);
  auto* psi_print = psi->add_subcommand("print", "Print the sentence");
  add_psi_options(psi_print, c, false);
  add_common(psi_print, c);
  std::vector<CLI::App*> psi_cmds{psi_print};
  for (auto [name, help] : {std::pair{"eval", "Model-check the sentence over Z/m"},
                            std::pair{"dagger", "Check the group-theoretic criterion directly"},
                            std::pair{"xcheck", "Compare the sentence with the criterion"}}) {
    auto* sub = psi->add_subcommand(name, help);
    add_psi_options(sub, c, true);
    add_common(sub, c);
    psi_cmds.push_back(sub);
  }
  psi_cmds.back()->add_option("--naive-limit", c.naive_limit,
                              "Alphas checked with the reference evaluator (0: all)");

  auto* lift = app.add_subcommand("lift", "Lift commutator witnesses through SL_n(Z/p^k)");
  lift->add_option("--p", c.p, "Prime p")->capture_default_str();
  lift->add_option("--levels", c.levels, "Top level K")->capture_default_str();
  lift->add_option("--n", c.n, "Matrix dimension")->capture_default_str();
  lift->add_option("--targets", c.targets, "honda | all")->capture_default_str();
  lift->add_option("--cap", c.cap, "Cap on |SL_n(Z/p^K)|");
  add_common(lift, c);

  auto* corpus = app.add_subcommand("corpus", "Inspect a group corpus file");
  corpus->require_subcommand(1);
  std::vector<CLI::App*> corpus_cmds;
  for (auto name : {"list", "validate"}) {
    auto* sub = corpus->add_subcommand(name, std::string(name) + " corpus entries");
    sub->add_option("--corpus", c.corpus, "Group corpus file")->required();
    sub->add_option("--cap", c.cap, "Closure cap on group elements");
    add_common(sub, c);
    corpus_cmds.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_usage;
  }

  for (auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
    for (auto* leaf : sub->get_subcommands()) {
      c.subcommand = leaf->get_name();
    }
  }

  try {
    if (c.workers == 0) {
      throw UsageError("--workers must be at least 1");
    }
    bool const print_cmd = c.command == "psi" && c.subcommand == "print";
    if (c.format.empty()) {
      c.format = print_cmd ? "text" : "json";
    }
    if (c.format != "json" && c.format != "csv" && c.format != "text") {
      throw UsageError("unknown format " + c.format);
    }
    if (c.format == "text" && !print_cmd) {
      throw UsageError("text format is only available for psi print");
    }
    if (c.command == "psi" && c.r < c.n && c.strict == false) {
      std::cerr << "note: r = " << c.r << " < n = " << c.n
                << "; det(X) - 1 is not itself of degree <= r\n";
    }

    auto   start = std::chrono::steady_clock::now();
    Report rep   = run(c);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.runtime = {{"wall_seconds", secs},
                   {"workers", c.workers},
                   {"finished_at", utc_timestamp()}};

    std::string text;
    if (c.format == "text") {
      text = rep.body["sentence"].get<std::string>() + "\n";
    } else if (c.format == "csv") {
      text = to_csv(rep);
    } else {
      text = rep.document().dump(2) + "\n";
    }
    emit(text, c.out, std::cout);

    if (c.command == "corpus" && c.subcommand == "validate" && !rep.pass()) {
      std::cerr << "error: corpus has invalid entries\n";
      return exit_usage;
    }
    return rep.pass() ? exit_pass : exit_fail;
  } catch (CapExceeded const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_cap;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_usage;
  }
}
