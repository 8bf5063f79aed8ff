// Command-line front end: GNF and closure inspection, the staged translation
// pipeline, the four checking engines, the Nash reproduction, and the batch
// differential suite.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "atlscpref/pipeline.hpp"

using namespace atlscpref;

namespace {

std::string slurp(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --formula accepts literal text or a path to a file holding it
std::string formula_text(std::string const& arg) {
  if (std::filesystem::exists(arg)) return slurp(arg);
  return arg;
}

LoadedModel load_model_file(std::string const& path) { return load_model(slurp(path)); }

std::set<int> universe_of(LoadedModel const& m) {
  std::set<int> agents;
  if (m.cgm)
    for (int a : m.cgm->agents) agents.insert(a);
  std::map<int, PreferenceDescription> const& prefs =
      m.cgm ? m.cgm->prefs : m.kripke->prefs;
  for (auto& [agent, d] : prefs) agents.insert(agent);
  return agents;
}

void write_or_print(std::string const& out_dir, std::string const& name,
                    std::string const& content) {
  if (out_dir.empty()) {
    std::cout << "-- " << name << "\n" << content << "\n";
    return;
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream f(out_dir + "/" + name);
  f << content;
  std::cout << "wrote " << out_dir << "/" << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preference-aware strategy logic translation toolkit"};
  app.require_subcommand(1);

  std::string formula_arg, model_arg, out_arg, stage_arg = "paths,pref,atlsc";
  std::string mode_arg = "formb", engine_arg = "ctlstar";
  int bound = 0, count = 25;
  uint64_t seed = 1;
  bool merge = false, log_actions = false, h_sufficient = false, lint = false;

  auto* gnf_cmd = app.add_subcommand("gnf", "print the guard/tail table of an LTL formula");
  gnf_cmd->add_option("--formula", formula_arg, "LTL formula text or file")->required();

  auto* closure_cmd = app.add_subcommand("closure", "print the tail closure of an LTL formula");
  closure_cmd->add_option("--formula", formula_arg, "LTL formula text or file")->required();

  auto* translate_cmd = app.add_subcommand("translate", "run the staged translation pipeline");
  translate_cmd->add_option("--formula", formula_arg, "formula text or file")->required();
  translate_cmd->add_option("--model", model_arg, "model file")->required();
  translate_cmd->add_option("--stage", stage_arg, "comma-separated: paths,pref,atlsc");
  translate_cmd->add_option("--mode", mode_arg, "preference mode: formb|qvars|logvars");
  translate_cmd->add_flag("--merge", merge, "merge unsplit coalitions into one variable");
  translate_cmd->add_flag("--log-actions", log_actions, "log-encode action choices");
  translate_cmd->add_option("--out", out_arg, "directory for stage outputs");

  auto* check_cmd = app.add_subcommand("check", "evaluate a formula on a model");
  check_cmd->add_option("--formula", formula_arg, "formula text or file")->required();
  check_cmd->add_option("--model", model_arg, "model file")->required();
  check_cmd->add_option("--engine", engine_arg, "ctlstar|direct|quantsem|oracle");
  check_cmd->add_option("--bound", bound, "history bound for the oracle engine");
  check_cmd->add_flag("--h-sufficient", h_sufficient,
                      "trust the bound: report true/false instead of unknown");
  check_cmd->add_flag("--lint", lint, "print preference pair-set lint warnings");

  auto* repro_cmd = app.add_subcommand("repro-nash", "reproduce the Nash equilibrium pipeline");
  repro_cmd->add_option("--out", out_arg, "write the report to a file");

  auto* suite_cmd = app.add_subcommand("suite", "run the batch differential suite");
  suite_cmd->add_option("--seed", seed, "random seed");
  suite_cmd->add_option("--count", count, "instances per family");
  suite_cmd->add_option("--out", out_arg, "write the records to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gnf_cmd->parsed()) {
      Formula b = parse_formula(formula_text(formula_arg));
      Gnf g = gnf(b);
      for (size_t mask = 0; mask < g.tails.size(); ++mask)
        std::cout << print_formula(g.guard(mask)) << "  :  X "
                  << print_formula(g.tails[mask]) << "\n";
      return 0;
    }

    if (closure_cmd->parsed()) {
      Formula b = parse_formula(formula_text(formula_arg));
      for (Formula m : closure(b)) std::cout << print_formula(m) << "\n";
      return 0;
    }

    if (translate_cmd->parsed()) {
      LoadedModel m = load_model_file(model_arg);
      Formula a = parse_formula(formula_text(formula_arg), universe_of(m));
      PipelineConfig cfg;
      cfg.stages.clear();
      std::stringstream stages(stage_arg);
      std::string s;
      while (std::getline(stages, s, ',')) cfg.stages.push_back(s);
      if (mode_arg == "qvars")
        cfg.pref_mode = PrefElimMode::QVars;
      else if (mode_arg == "logvars")
        cfg.pref_mode = PrefElimMode::LogVars;
      else if (mode_arg == "formb")
        cfg.pref_mode = PrefElimMode::ForMB;
      else
        throw std::runtime_error("unknown --mode " + mode_arg);
      cfg.atlsc.merge = merge;
      cfg.atlsc.log_actions = log_actions;
      auto const& prefs = m.cgm ? m.cgm->prefs : m.kripke->prefs;
      PipelineResult r = run_pipeline(a, prefs,
                                      m.cgm ? std::optional<Cgm>(*m.cgm) : std::nullopt, cfg);
      for (auto& out : r.outputs)
        write_or_print(out_arg, "after_" + out.stage + ".formula",
                       print_formula(out.formula) + "\n");
      if (r.translation) {
        write_or_print(out_arg, "unfolded.model", model_to_text(r.translation->unfolded));
        for (auto& note : r.translation->notes) std::cerr << "note: " << note << "\n";
      }
      return 0;
    }

    if (check_cmd->parsed()) {
      LoadedModel m = load_model_file(model_arg);
      Formula a = parse_formula(formula_text(formula_arg), universe_of(m));
      auto const& prefs = m.cgm ? m.cgm->prefs : m.kripke->prefs;
      if (lint)
        for (auto& [agent, d] : prefs)
          for (auto& w : lint_preference(d))
            std::cerr << "lint agent " << agent << ": " << w << "\n";
      bool value = false;
      if (engine_arg == "ctlstar") {
        KripkeModel k = m.cgm ? to_kripke(*m.cgm) : *m.kripke;
        value = ctlstar_check(k, a);
      } else if (engine_arg == "direct") {
        KripkeModel k = m.cgm ? to_kripke(*m.cgm) : *m.kripke;
        value = direct_pref_check(k, prefs, a);
      } else if (engine_arg == "quantsem") {
        KripkeModel k = m.cgm ? to_kripke(*m.cgm) : *m.kripke;
        value = quant_sem_check(k, prefs, a);
      } else if (engine_arg == "oracle") {
        if (!m.cgm) throw std::runtime_error("the oracle engine needs a game model");
        Verdict v = atlsc_bounded_check(*m.cgm, a, bound, h_sufficient);
        if (v == Verdict::Unknown) {
          std::cout << "unknown\n";
          return 3;
        }
        value = v == Verdict::True;
      } else {
        throw std::runtime_error("unknown --engine " + engine_arg);
      }
      std::cout << (value ? "true" : "false") << "\n";
      return value ? 0 : 1;
    }

    if (repro_cmd->parsed()) {
      ReproReport r = repro_nash();
      std::ostringstream body;
      for (auto& line : r.lines) body << line << "\n";
      body << (r.ok ? "repro-nash: PASS" : "repro-nash: FAIL") << "\n";
      if (out_arg.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream f(out_arg);
        f << body.str();
        std::cout << (r.ok ? "repro-nash: PASS" : "repro-nash: FAIL") << "\n";
      }
      return r.ok ? 0 : 1;
    }

    if (suite_cmd->parsed()) {
      SuiteResult r = run_suite(seed, count);
      std::ostringstream body;
      for (auto& line : r.lines) body << line << "\n";
      if (out_arg.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream f(out_arg);
        f << body.str();
      }
      std::cout << (r.ok ? "suite: PASS" : "suite: FAIL") << "\n";
      return r.ok ? 0 : 1;
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
