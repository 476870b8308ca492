#include <CLI11.hpp>
#include <iostream>

#include "kbmatch/commands.hpp"
#include "kbmatch/testkit.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relatedness matching for reified n-ary tuples over domain knowledge"};
  app.require_subcommand(1);

  kbmatch::MatchArgs margs;
  bool closure = true;
  auto* match = app.add_subcommand("match", "classify tuple pairs and write alignment links");
  match->add_option("--kb", margs.kb_path, "knowledge base, N-Triples")->required();
  match->add_option("--config", margs.config_path, "matching settings, JSON")->required();
  match->add_option("--out", margs.out_path, "link output file, N-Triples")->required();
  match->add_option("--stats", margs.stats_path, "also write per-source link counts, TSV");
  match->add_option("--threads", margs.threads, "worker count, 0 = hardware concurrency");
  auto* closure_flag =
      match->add_flag("--transitive-closure,!--no-transitive-closure", closure,
                      "override the configured per-level transitive closure");

  std::string val_kb, val_cfg;
  auto* validate = app.add_subcommand("validate", "check matching settings against a knowledge base");
  validate->add_option("--kb", val_kb, "knowledge base, N-Triples")->required();
  validate->add_option("--config", val_cfg, "matching settings, JSON")->required();

  std::string links_path;
  auto* stats = app.add_subcommand("stats", "per-source link counts from an existing link file");
  stats->add_option("links", links_path, "link file written by match")->required();

  kbmatch::GeneratorParams gp;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "emit a synthetic knowledge base and settings");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gp.seed, "generator seed");
  gen->add_option("--tuples", gp.n_tuples, "tuple count");
  gen->add_option("--individuals", gp.n_individuals, "individual count");
  gen->add_option("--classes", gp.n_classes, "class count across the three families");
  gen->add_option("--depth", gp.hierarchy_depth, "subclass depth below a family root");
  gen->add_option("--link-density", gp.link_density, "edge probability for partOf/dependsOn");
  gen->add_option("--sameas-density", gp.sameas_density, "identity statements per individual");
  gen->add_option("--unknown-rate", gp.unknown_rate, "probability an argument stays unspecified");
  gen->add_option("--sources", gp.n_sources, "provenance source count");

  CLI11_PARSE(app, argc, argv);

  if (match->parsed()) {
    if (closure_flag->count()) margs.transitive_closure = closure;
    return kbmatch::runMatch(margs, std::cout, std::cerr);
  }
  if (validate->parsed()) return kbmatch::runValidate(val_kb, val_cfg, std::cout, std::cerr);
  if (stats->parsed()) return kbmatch::runStats(links_path, std::cout, std::cerr);
  if (gen->parsed()) return kbmatch::runGen(gp, gen_out, std::cout, std::cerr);
  return 0;
}
