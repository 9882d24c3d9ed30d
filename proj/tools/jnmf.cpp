// Command-line front end. Every subcommand turns its flags into a key/value
// run configuration and hands it to jnmf_run; a saved manifest can stand in
// for the flags.

#include "jnmf/jnmf.h"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

struct ValueFlag {
  const char* flag;
  const char* key;
  const char* help;
};

struct SwitchFlag {
  const char* flag;
  const char* key;
  const char* value;
  const char* help;
};

const std::vector<ValueFlag> kFactorizeFlags = {
    {"--k", "k", "Number of clusters"},
    {"--alpha", "alpha", "Similarity weight, a number or 'auto' (default auto)"},
    {"--beta", "beta", "Penalty weight, a number or 'auto' (default auto)"},
    {"--max-sweeps", "max_sweeps", "Maximum BCD sweeps (default 500)"},
    {"--tol", "tol", "Relative objective change that stops the sweeps (default 1e-4)"},
    {"--seed", "seed", "Seed of the first trial (default 0)"},
    {"--trials", "trials", "Number of random restarts (default 1)"},
    {"--beta-growth", "beta_growth", "Factor applied to beta after every sweep (default 1)"},
};

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<ValueFlag> values;
  std::vector<SwitchFlag> switches;
  bool factorize = false;
};

std::vector<Subcommand> subcommands() {
  return {
      {"preprocess",
       "Filter a corpus, build the tf-idf matrix X and the similarity matrix S",
       {{"--vocab", "vocab", "Term list, one per line"},
        {"--docs", "docs", "Document ids, one per line"},
        {"--counts", "counts", "Term-document counts (Matrix Market)"},
        {"--edges", "edges", "Directed edge list 'src<TAB>dst' over document indices"},
        {"--hyperedges", "hyperedges", "Hyperedges, one line of member indices each"},
        {"--n-vertices", "n_vertices", "Vertex count of a hyperedge file"},
        {"--min-term-df", "min_term_df", "Drop terms in fewer documents (default 3)"},
        {"--min-doc-len", "min_doc_len", "Drop documents with fewer tokens (default 5)"},
        {"--out", "out", "Output directory"}},
       {{"--raw-adjacency", "raw_adjacency", "true", "Use the symmetrized adjacency as S"},
        {"--dual", "dual", "true", "Documents are hyperedges; cluster them by the dual hypergraph"},
        {"--no-dedupe", "dedupe", "false", "Keep duplicate documents"}}},
      {"cluster",
       "Factorize X and/or S and assign hard clusters",
       {{"--X", "X", "Feature-item matrix (Matrix Market)"},
        {"--S", "S", "Symmetric item similarity (Matrix Market)"},
        {"--method", "method", "joint, nmf or symnmf (default joint)"},
        {"--items", "items", "Item ids, one per line"},
        {"--truth", "truth", "Ground-truth labels 'item<TAB>label', one line per label"},
        {"--incidence", "incidence", "Hypergraph incidence for membership counts"},
        {"--vertices", "vertices", "Vertex ids of the incidence rows"},
        {"--terms", "terms", "Term list for topic keywords"},
        {"--top-terms", "top_terms", "Keywords per cluster (default 10)"},
        {"--out", "out", "Output directory"}},
       {},
       true},
      {"eval",
       "Score hard labels against ground truth, or scored pairs against citations",
       {{"--pred", "pred", "Predicted labels"},
        {"--truth", "truth", "Ground-truth labels"},
        {"--scores", "scores", "Scored pairs 'a<TAB>b<TAB>score'"},
        {"--citations", "citations", "Positive pairs 'a<TAB>b'"},
        {"--roc-out", "roc_out", "Write ROC points here"},
        {"--out", "out", "Write the metric report here"}},
       {}},
      {"recommend",
       "Train on a citation split and rank training documents for test documents",
       {{"--X-train", "X_train", "Training tf-idf matrix"},
        {"--S-train", "S_train", "Training similarity matrix"},
        {"--X-test", "X_test", "Test tf-idf matrix over the training vocabulary"},
        {"--train-ids", "train_ids", "Training document ids"},
        {"--test-ids", "test_ids", "Test document ids"},
        {"--citations", "citations", "Held-out citations 'test<TAB>train'"},
        {"--methods", "methods", "Comma list of joint,nmf1,nmf2,shared-words"},
        {"--threshold", "threshold", "Recommend scores strictly above this (default 0.5)"},
        {"--out", "out", "Output directory"}},
       {},
       true},
      {"hypergraph-sim",
       "Build the normalized hypergraph similarity of a hyperedge file",
       {{"--hyperedges", "hyperedges", "Hyperedges, one line of member indices each"},
        {"--n-vertices", "n_vertices", "Vertex count (default: largest index + 1)"},
        {"--out", "out", "Output similarity (Matrix Market)"}},
       {{"--dual", "dual", "true", "Use the dual hypergraph"}}},
      {"topics",
       "List the top terms of every column of W",
       {{"--W", "W", "Basis matrix (Matrix Market)"},
        {"--terms", "terms", "Term list, one per line"},
        {"--top-terms", "top_terms", "Terms per cluster (default 10)"},
        {"--out", "out", "Output TSV"}},
       {}},
  };
}

void print_log(const char* text, void*) { std::fputs(text, stdout); }

int report(jnmf_status st) {
  std::fprintf(stderr, "jnmf: %s: %s\n", jnmf_status_name(st), jnmf_last_error());
  return jnmf_exit_code(st);
}

// Loads the manifest (if any), applies overrides and runs the command. An
// empty command means the one recorded in the manifest.
int execute(std::string command, const std::string& manifest,
            const std::map<std::string, std::string>& overrides) {
  jnmf_config* cfg = nullptr;
  jnmf_status st = manifest.empty() ? jnmf_config_create(&cfg) : jnmf_config_load(manifest.c_str(), &cfg);
  if (st != JNMF_OK) return report(st);
  if (command.empty()) {
    const char* recorded = jnmf_config_get(cfg, "command");
    if (!recorded) {
      jnmf_config_free(cfg);
      std::fprintf(stderr, "jnmf: manifest '%s' does not record a command\n", manifest.c_str());
      return 1;
    }
    command = recorded;
  }
  // Keys a manifest carries about the run that produced it, not its inputs.
  for (const char* k : {"command", "seeds_consumed", "best_trial"}) jnmf_config_unset(cfg, k);
  for (const auto& [k, v] : overrides)
    if (st == JNMF_OK) st = jnmf_config_set(cfg, k.c_str(), v.c_str());
  if (st == JNMF_OK) st = jnmf_run(command.c_str(), cfg, print_log, nullptr);
  jnmf_config_free(cfg);
  return st == JNMF_OK ? 0 : report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint NMF clustering of items by features and similarity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jnmf_version()));

  const auto specs = subcommands();
  std::vector<std::string> manifests(specs.size());
  std::vector<std::vector<ValueFlag>> flag_sets(specs.size());
  std::vector<CLI::App*> apps;
  // Value options are read through std::optional so "given" and "absent" stay distinct.
  std::vector<std::vector<std::optional<std::string>>> slots(specs.size());
  std::vector<std::vector<bool>> switch_slots(specs.size());

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Subcommand& sc = specs[i];
    CLI::App* sub = app.add_subcommand(sc.name, sc.help);
    apps.push_back(sub);
    flag_sets[i] = sc.values;
    if (sc.factorize) flag_sets[i].insert(flag_sets[i].end(), kFactorizeFlags.begin(), kFactorizeFlags.end());
    slots[i].resize(flag_sets[i].size());
    switch_slots[i].assign(sc.switches.size(), false);
    for (std::size_t f = 0; f < flag_sets[i].size(); ++f)
      sub->add_option(flag_sets[i][f].flag, slots[i][f], flag_sets[i][f].help);
    for (std::size_t f = 0; f < sc.switches.size(); ++f) {
      // vector<bool> elements are proxies; bind through a lambda instead.
      sub->add_flag_callback(sc.switches[f].flag, [&switch_slots, i, f] { switch_slots[i][f] = true; },
                             sc.switches[f].help);
    }
    sub->add_option("--manifest", manifests[i],
                    "Start from the parameters recorded in a previous run's manifest");
  }

  std::string rerun_manifest;
  std::optional<std::string> rerun_out;
  CLI::App* rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  rerun->add_option("manifest", rerun_manifest, "manifest.tsv of a previous run")->required();
  rerun->add_option("--out", rerun_out, "Write to this location instead of the recorded one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (rerun->parsed()) {
    std::map<std::string, std::string> overrides;
    if (rerun_out) overrides["out"] = *rerun_out;
    return execute("", rerun_manifest, overrides);
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!apps[i]->parsed()) continue;
    std::map<std::string, std::string> overrides;
    for (std::size_t f = 0; f < flag_sets[i].size(); ++f)
      if (slots[i][f]) overrides[flag_sets[i][f].key] = *slots[i][f];
    for (std::size_t f = 0; f < specs[i].switches.size(); ++f)
      if (switch_slots[i][f]) overrides[specs[i].switches[f].key] = specs[i].switches[f].value;
    return execute(specs[i].name, manifests[i], overrides);
  }
  return 1;
}
