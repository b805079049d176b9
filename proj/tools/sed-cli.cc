// tools/sed-cli.cc

// Copyright 2026  The nmf-sed Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "base/text-utils.h"
#include "pipeline/pipeline.h"

namespace {

using sed::PipelineConfig;

struct GlobalOptions {
  std::string config_file;
  std::vector<std::string> sets;
  uint64_t seed = 0;
  int32_t threads = 0;
  bool quiet = false;
};

// Flags that map onto config keys.  Only flags given on the command line
// are applied, after the config file.
struct Override {
  CLI::Option *opt;
  std::string key;
  std::string value;
};

void ApplySet(PipelineConfig *cfg, const std::string &kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    sed::Fail("--set expects key=value, got '", kv, "'");
  cfg->Set(sed::Trim(kv.substr(0, eq)), sed::Trim(kv.substr(eq + 1)));
}

std::string OneLine(std::string s) {
  for (char &c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sound event detection with NMF-approximated strong labels"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  GlobalOptions g;
  std::vector<Override> overrides;
  auto add_override = [&overrides](CLI::App *sub, const std::string &flag,
                                   const std::string &key,
                                   const std::string &help) {
    overrides.push_back({nullptr, key, ""});
    Override &o = overrides.back();
    o.opt = sub->add_option(flag, o.value, help);
    return o.opt;
  };
  overrides.reserve(32);

  app.add_option("--config", g.config_file, "key=value configuration file")
      ->check(CLI::ExistingFile);
  CLI::Option *seed_opt =
      app.add_option("--seed", g.seed, "Seed for every random choice");
  CLI::Option *threads_opt = app.add_option(
      "--threads", g.threads, "Worker threads (0: number of cores)");
  app.add_option("--set", g.sets, "Override any config key (key=value)");
  app.add_flag("-q,--quiet", g.quiet, "Do not echo the resolved config");
  app.fallthrough();

  // gen
  std::string gen_out;
  bool gen_hard = false, gen_poly = false;
  CLI::App *gen = app.add_subcommand("gen", "Generate a synthetic corpus");
  add_override(gen, "--classes", "gen.classes", "Number of event classes");
  add_override(gen, "--n-strong", "gen.n_strong", "Strongly labeled clips");
  add_override(gen, "--n-weak", "gen.n_weak", "Weakly labeled clips");
  add_override(gen, "--n-unlabeled", "gen.n_unlabeled", "Unlabeled clips");
  add_override(gen, "--n-validation", "gen.n_validation", "Validation clips");
  CLI::Option *hard_opt =
      gen->add_flag("--hard", gen_hard, "Overlapping class spectra");
  CLI::Option *poly_opt = gen->add_flag(
      "--polyphony", gen_poly, "Allow events of different classes to overlap");
  gen->add_option("out_dir", gen_out, "Output directory")->required();

  // dict
  std::string dict_corpus, dict_out;
  CLI::App *dict =
      app.add_subcommand("dict", "Build class templates from the strong split");
  dict->add_option("corpus_dir", dict_corpus, "Corpus directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  dict->add_option("out_dir", dict_out, "Dictionary directory")->required();

  // label
  std::string label_corpus, label_dict, label_out;
  CLI::App *label = app.add_subcommand(
      "label", "Approximate frame labels for the weak split");
  add_override(label, "--theta", "labeler.theta", "Activation threshold");
  label->add_option("corpus_dir", label_corpus, "Corpus directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  label->add_option("dict_dir", label_dict, "Dictionary directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  label->add_option("out_dir", label_out, "Label directory")->required();

  // train
  std::string train_corpus, train_labels, train_out;
  CLI::App *train = app.add_subcommand("train", "Train the two models");
  add_override(train, "--mode", "train.mode", "Transition scheme: ps1 or ps2");
  add_override(train, "--epochs", "train.epochs", "Total epochs");
  add_override(train, "--transfer-epochs", "train.transfer_epochs",
               "Epochs on synthetic strong data only");
  add_override(train, "--batch-size", "train.batch_size", "Labeled batch size");
  train->add_option("corpus_dir", train_corpus, "Corpus directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  train->add_option("labels_dir", train_labels, "Label directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  train->add_option("out_dir", train_out, "Checkpoint directory")->required();

  // predict
  std::vector<std::string> pred_ckpts;
  std::string pred_audio, pred_clips, pred_out;
  CLI::App *predict = app.add_subcommand(
      "predict", "Detect events; several checkpoints form an ensemble");
  predict->add_option("-c,--checkpoint", pred_ckpts, "System checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--audio-dir", pred_audio, "Directory of the clips")
      ->required();
  predict->add_option("--clips", pred_clips, "File with one clip name per line")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("-o,--out", pred_out, "Prediction TSV")->required();

  // eval
  std::string eval_ref, eval_est, eval_out, eval_classes;
  CLI::App *eval = app.add_subcommand("eval", "Event-based F1 of predictions");
  eval->add_option("ref_tsv", eval_ref, "Reference events")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("est_tsv", eval_est, "Estimated events")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("-o,--out", eval_out, "Report TSV");
  eval->add_option("--classes", eval_classes,
                   "Classes to always report (first column)")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::fprintf(stderr, "sed-cli: error: %s\n", OneLine(e.what()).c_str());
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    PipelineConfig cfg;
    if (!g.config_file.empty()) cfg.ReadFile(g.config_file);
    for (const std::string &kv : g.sets) ApplySet(&cfg, kv);
    if (seed_opt->count() > 0) cfg.seed = g.seed;
    if (threads_opt->count() > 0) cfg.threads = g.threads;
    for (const Override &o : overrides)
      if (o.opt->count() > 0) cfg.Set(o.key, o.value);
    if (hard_opt->count() > 0) cfg.Set("gen.hard", "true");
    if (poly_opt->count() > 0) cfg.Set("gen.polyphony", "true");
    cfg.Resolve();
    sed::ApplyThreads(cfg);
    if (!g.quiet) std::cerr << cfg.Dump();

    if (*gen) {
      sed::RunGen(cfg, gen_out);
    } else if (*dict) {
      sed::RunDict(cfg, dict_corpus, dict_out);
    } else if (*label) {
      sed::RunLabel(cfg, label_corpus, label_dict, label_out);
    } else if (*train) {
      sed::RunTrain(cfg, train_corpus, train_labels, train_out);
    } else if (*predict) {
      const std::vector<std::string> clips = sed::ReadFileList(pred_clips);
      sed::RunPredict(cfg, pred_ckpts, pred_audio, clips, pred_out);
    } else if (*eval) {
      std::vector<std::string> classes;
      if (!eval_classes.empty())
        for (const std::string &line : sed::ReadLines(eval_classes)) {
          const std::string name = sed::Trim(line.substr(0, line.find('\t')));
          if (!name.empty()) classes.push_back(name);
        }
      const sed::ScoreReport r = sed::RunEval(cfg, eval_ref, eval_est, classes);
      std::cout << sed::FormatReportText(r);
      if (!eval_out.empty())
        sed::WriteTextFile(eval_out, sed::FormatReportTsv(r));
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "sed-cli: error: %s\n", OneLine(e.what()).c_str());
    return 1;
  }
  return 0;
}
