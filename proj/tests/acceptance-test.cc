// tests/acceptance-test.cc

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

// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails or runs over its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "base/text-utils.h"
#include "nn/grad-check.h"
#include "nn/nn-loss.h"
#include "pipeline/pipeline.h"

using namespace sed;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "sed-acceptance";

double Now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Collects failed conditions of one criterion.
class Checker {
 public:
  void operator()(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += !ok;
    checks_++;
  }
  bool Ok() const { return failed_ == 0; }
  std::string Summary() const {
    if (Ok()) return std::to_string(checks_) + " checks";
    std::string s = std::to_string(failed_) + " of " + std::to_string(checks_) +
                    " checks failed: ";
    for (size_t i = 0; i < failures_.size(); i++)
      s += (i ? "; " : "") + failures_[i];
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int64 checks_ = 0, failed_ = 0;
};

std::string Fmt(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

// ---------------------------------------------------------------- 1
void FeatureShape(Checker &check, std::string *note) {
  FeatureConfig fc;
  int clips = 0;
  for (bool hard : {false, true})
    for (bool poly : {false, true})
      for (uint64_t seed : {1, 2}) {
        GenSpec spec;
        spec.n_classes = 5;
        spec.hard = hard;
        spec.polyphony = poly;
        spec.max_events = 4;
        auto profiles = MakeClassProfiles(spec.n_classes, hard);
        EventList ev = SampleEvents(spec, profiles, MixSeed(seed, 1));
        Waveform w = SynthesizeClip(spec, profiles, ev, MixSeed(seed, 2));
        MelFeatures f = ComputeLogMel(w, fc);
        check(f.logmel.NumRows() == 640 && f.logmel.NumCols() == 64,
              "clip " + std::to_string(clips) + " is " +
                  std::to_string(f.logmel.NumRows()) + "x" +
                  std::to_string(f.logmel.NumCols()));
        clips++;
      }
  *note = std::to_string(clips) + " clips, all 640x64";
}

// ---------------------------------------------------------------- 2
void NmfMonotone(Checker &check, std::string *note) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> rows(1, 64), cols(1, 640), rank(1, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; trial++) {
    const int f = trial < 10 ? 64 : rows(rng), t = trial < 10 ? 640 : cols(rng);
    Matrix v(f, t);
    for (double &x : v.Values()) x = u(rng);
    // Some exact zeros, as in silent mel bins.
    for (double &x : v.Values())
      if (u(rng) < 0.05) x = 0.0;
    NmfFactors fac = Factorize(v, rank(rng), 50, MixSeed(7, trial));
    const auto &d = fac.divergence_trace;
    for (size_t i = 1; i < d.size(); i++) {
      worst = std::max(worst, d[i] - d[i - 1]);
      check(d[i] <= d[i - 1] + 1e-9,
            "trial " + std::to_string(trial) + " iteration " +
                std::to_string(i) + " increased by " + Fmt("%.3g", d[i] - d[i - 1]));
    }
  }
  *note = "100 matrices x 50 iterations, largest step change " + Fmt("%.3g", worst);
}

// ---------------------------------------------------------------- 3
void NmfRankOne(Checker &check, std::string *note) {
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 20; seed++) {
    std::mt19937_64 rng(MixSeed(3, seed));
    std::uniform_int_distribution<int> rows(2, 64), cols(2, 640);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    const int f = rows(rng), t = cols(rng);
    std::vector<double> a(f), b(t);
    for (double &x : a) x = u(rng);
    for (double &x : b) x = u(rng);
    Matrix v(f, t);
    for (int i = 0; i < f; i++)
      for (int j = 0; j < t; j++) v(i, j) = a[i] * b[j];
    NmfFactors fac = Factorize(v, 1, 500, seed);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < f; i++)
      for (int j = 0; j < t; j++) {
        const double d = v(i, j) - fac.w(i, 0) * fac.h(0, j);
        num += d * d;
        den += v(i, j) * v(i, j);
      }
    const double rel = std::sqrt(num / den);
    worst = std::max(worst, rel);
    check(rel < 1e-3, "seed " + std::to_string(seed) + " error " + Fmt("%.3g", rel));
  }
  *note = "20 seeds, worst relative error " + Fmt("%.3g", worst);
}

// ---------------------------------------------------------------- 4
void LabelerOracle(Checker &check, std::string *note) {
  PipelineConfig cfg;
  cfg.seed = 4;
  cfg.gen.n_classes = 5;
  cfg.gen.n_strong = 30;
  cfg.gen.n_weak = 60;
  cfg.gen.n_unlabeled = 0;
  cfg.gen.n_validation = 0;
  cfg.theta = 0.3;
  cfg.Resolve();
  check(!cfg.gen.hard && cfg.gen.snr_min_db >= 10.0, "corpus is not the easy one");
  const fs::path dir = kRoot / "labeler";
  fs::remove_all(dir);
  RunGen(cfg, (dir / "corpus").string());
  RunDict(cfg, (dir / "corpus").string(), (dir / "dict").string());
  LabelManifest labels =
      RunLabel(cfg, (dir / "corpus").string(), (dir / "dict").string(),
               (dir / "labels").string());
  const CorpusManifest m = LoadManifest((dir / "corpus").string());
  const std::vector<StrongEntry> truth =
      ReadStrongTsv((dir / "corpus" / "hidden" / "weak_truth.tsv").string());
  std::map<std::string, EventList> by_clip;
  for (const StrongEntry &s : truth) by_clip[s.filename] = s.events;
  double sum = 0.0, worst = 1.0;
  for (const auto &[clip, path] : labels) {
    const FrameLabelMatrix got = ReadLabelTsv(path, m.label_set);
    const FrameLabelMatrix ref = StrongLabelMatrix(
        clip, by_clip[clip], m.label_set, 640, cfg.feature.FrameSeconds());
    const double f1 = FrameF1(got.values, ref.values);
    sum += f1;
    worst = std::min(worst, f1);
  }
  const double mean = sum / labels.size();
  check(labels.size() >= 50, "only " + std::to_string(labels.size()) + " clips");
  check(mean >= 0.90, "mean frame F1 " + Fmt("%.4f", mean));
  *note = std::to_string(labels.size()) + " weak clips, 5 classes, mean frame F1 " +
          Fmt("%.4f", mean) + ", worst clip " + Fmt("%.4f", worst);
}

// ---------------------------------------------------------------- 5
nn::Tensor RandomTensor(const nn::Shape &shape, std::mt19937_64 &rng,
                        double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  nn::Tensor t(shape);
  for (size_t i = 0; i < t.Size(); i++) t[i] = u(rng);
  return t;
}

double LayerCheck(const std::string &descriptor, const nn::Shape &in,
                  uint64_t seed, bool training) {
  std::mt19937_64 rng(seed);
  nn::Nnet net;
  net.Append(nn::NewComponent(descriptor));
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (nn::ParamRef &p : net.Params())
    for (double &v : *p.value) v = u(rng);
  nn::Tensor x;
  // Keep relu and max-pool inputs away from kinks and ties.
  do {
    x = RandomTensor(in, rng);
  } while (std::any_of(x.Values().begin(), x.Values().end(),
                       [](double v) { return std::abs(v) < 1e-3; }));
  nn::Tensor r = RandomTensor(net.OutputShape(in), rng);
  nn::GradCheckOptions opts;
  opts.training = training;
  opts.seed = seed;
  return nn::GradCheck(&net, x, [&r](const nn::Tensor &out, nn::Tensor *g) {
    double s = 0.0;
    for (size_t i = 0; i < out.Size(); i++) s += out[i] * r[i];
    *g = r;
    return s;
  }, opts);
}

TrainExample RandomExample(const std::string &id, ExampleKind kind,
                           std::mt19937_64 *rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  TrainExample e;
  e.clip_id = id;
  e.kind = kind;
  e.features = Matrix(8, 16);
  for (double &v : e.features.Values()) v = g(*rng);
  if (kind != ExampleKind::kUnlabeled) {
    e.frame_labels = Matrix(8, 3);
    for (double &v : e.frame_labels.Values()) v = coin(*rng);
    e.clip_labels = ClipFromFrames({id, e.frame_labels}).probs;
  }
  return e;
}

SedSystem TinySystem(uint64_t seed) {
  ModelConfig m;
  m.num_classes = 3;
  m.n_mels = 16;
  m.sm_channels = {3, 4};
  m.dm_channels = {3, 4};
  SedSystem s;
  s.label_set = {"a", "b", "c"};
  s.sm = BuildSm(m);
  s.dm = BuildDm(m);
  s.sm.InitParams(MixSeed(seed, 0));
  s.dm.InitParams(MixSeed(seed, 1));
  s.norm = {0.1, 1.3};
  return s;
}

void GradientChecks(Checker &check, std::string *note) {
  struct Case {
    std::string descriptor;
    nn::Shape in;
    bool training;
  };
  const std::vector<Case> cases = {
      {"conv2d 2 3 3 3", {2, 2, 5, 6}, false},
      {"conv2d 1 2 5 1", {1, 1, 7, 3}, false},
      {"dense 3 4", {2, 3, 4, 2}, false},
      {"context_gate 3", {2, 3, 4, 5}, false},
      {"sigmoid", {2, 2, 3, 3}, false},
      {"relu", {2, 3, 4, 4}, false},
      {"max_pool2d 2 2", {2, 2, 4, 6}, false},
      {"max_pool2d 1 4", {1, 3, 3, 8}, false},
      {"avg_pool2d 2 3", {2, 2, 4, 6}, false},
      {"avg_pool2d 0 0", {2, 3, 4, 6}, false},
      {"max_pool2d 0 0", {2, 3, 4, 6}, false},
      {"batch_norm 3", {3, 3, 2, 4}, true},
      {"batch_norm 3", {3, 3, 2, 4}, false},
      {"dropout 0.3", {2, 2, 3, 4}, true},
      {"dropout 0.3", {2, 2, 3, 4}, false},
  };
  double worst_layer = 0.0;
  for (size_t i = 0; i < cases.size(); i++) {
    const double err =
        LayerCheck(cases[i].descriptor, cases[i].in, 100 + i, cases[i].training);
    worst_layer = std::max(worst_layer, err);
    check(err < 1e-4, cases[i].descriptor + " error " + Fmt("%.3g", err));
  }

  std::mt19937_64 rng(5);
  std::vector<TrainExample> lab, unl;
  for (int i = 0; i < 2; i++)
    lab.push_back(RandomExample("s" + std::to_string(i),
                                ExampleKind::kSyntheticStrong, &rng));
  for (int i = 0; i < 2; i++)
    unl.push_back(RandomExample("u" + std::to_string(i), ExampleKind::kUnlabeled,
                                &rng));
  Batch lb, ub;
  for (const TrainExample &e : lab) lb.push_back(&e);
  for (const TrainExample &e : unl) ub.push_back(&e);
  SedSystem sys = TinySystem(6);
  const GateConfig gate{0.3, false};
  const uint64_t seed = 99;
  const LossRecord r0 = ComputeGradients(&sys, lb, ub, gate, 0.5, true, seed);
  check(r0.l_con > 0.0 && r0.l_unlabel > 0.0, "consistency terms inactive");
  std::vector<std::vector<double>> grads[2];
  for (int which = 0; which < 2; which++)
    for (const nn::ParamRef &p : (which ? sys.dm : sys.sm).Params())
      grads[which].push_back(*p.grad);
  double worst[2] = {0.0, 0.0};
  const double h = 1e-5;
  for (int which = 0; which < 2; which++) {
    auto params = (which ? sys.dm : sys.sm).Params();
    for (size_t a = 0; a < params.size(); a++)
      for (size_t i = 0; i < params[a].value->size(); i++) {
        double &v = (*params[a].value)[i];
        const double saved = v;
        v = saved + h;
        const LossRecord p = ComputeGradients(&sys, lb, ub, gate, 0.5, true, seed);
        v = saved - h;
        const LossRecord m = ComputeGradients(&sys, lb, ub, gate, 0.5, true, seed);
        v = saved;
        const double fd = which ? (p.l_c - m.l_c) / (2 * h)
                                : (p.SmLoss() - m.SmLoss()) / (2 * h);
        worst[which] =
            std::max(worst[which], nn::RelativeError(grads[which][a][i], fd));
      }
  }
  check(worst[0] < 1e-3, "SM composite error " + Fmt("%.3g", worst[0]));
  check(worst[1] < 1e-3, "DM composite error " + Fmt("%.3g", worst[1]));
  *note = std::to_string(cases.size()) + " layer checks (worst " +
          Fmt("%.2g", worst_layer) + "), composite SM " + Fmt("%.2g", worst[0]) +
          " DM " + Fmt("%.2g", worst[1]);
}

// ---------------------------------------------------------------- 6
void ScheduleExact(Checker &check, std::string *note) {
  for (int64 t_i : {1, 10, 500, 12345}) {
    check(LrAt(0, t_i, 0.0012, 1e-6) == 0.0012, "lr_at(0) != 0.0012");
    check(LrAt(t_i, t_i, 0.0012, 1e-6) == 1e-6, "lr_at(T_i) != 1e-6");
  }
  for (int64 n : {1, 2, 5, 40}) {
    RestartSchedule s(n, 2);
    std::vector<int64> cycles;
    int64 since = 0;
    while (cycles.size() < 3) {
      since++;
      if (s.Advance()) {
        cycles.push_back(since);
        since = 0;
      }
    }
    check(cycles == std::vector<int64>{n, 2 * n, 4 * n},
          "cycle lengths for N=" + std::to_string(n));
  }
  for (int64 t_i : {1, 7, 100}) {
    check(RampWeight(t_i, t_i) == 1.0, "ramp_weight(1) != 1");
    check(std::abs(RampWeight(0, t_i) - std::exp(-5.0)) <= 1e-12,
          "ramp_weight(0) != e^-5");
  }
  *note = "lr endpoints exact, cycles N/2N/4N, ramp endpoints";
}

// ---------------------------------------------------------------- 7
void ConsistencyGating(Checker &check, std::string *note) {
  const GateConfig gate{0.9, false};
  const double v = ConsistencyLoss({0.5, 0.9}, {0.95, 0.3}, gate);
  check(std::abs(v - 0.2025) <= 1e-12, "worked example gives " + Fmt("%.17g", v));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GateConfig never{1.0, false};
  for (int rep = 0; rep < 2000; rep++) {
    std::vector<double> a(10), b(10), g;
    for (double &x : a) x = u(rng);
    for (double &x : b) x = u(rng);
    check(ConsistencyLoss(a, b, never, &g) == 0.0, "l_con != 0 at lambda 1");
    check(UnlabeledLoss(a, b, never, u(rng), &g) == 0.0,
          "l_unlabel != 0 at lambda 1");
    check(std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; }),
          "nonzero gradient at lambda 1");
  }

  // Whole-step check on random networks and data.
  for (uint64_t seed = 0; seed < 5; seed++) {
    std::mt19937_64 r(MixSeed(70, seed));
    std::vector<TrainExample> lab, unl;
    for (int i = 0; i < 3; i++) {
      lab.push_back(RandomExample("s", ExampleKind::kSyntheticStrong, &r));
      unl.push_back(RandomExample("u", ExampleKind::kUnlabeled, &r));
    }
    Batch lb, ub;
    for (const TrainExample &e : lab) lb.push_back(&e);
    for (const TrainExample &e : unl) ub.push_back(&e);
    SedSystem sys = TinySystem(seed);
    const LossRecord one = ComputeGradients(&sys, lb, ub, never, 1.0, true, seed);
    check(one.l_con == 0.0 && one.l_unlabel == 0.0, "lambda 1 step has loss");

    // lambda = 0 gates everything in; DM gradients must not change.
    const LossRecord on =
        ComputeGradients(&sys, lb, ub, {0.0, false}, 1.0, true, seed);
    std::vector<std::vector<double>> dm_on;
    for (const nn::ParamRef &p : sys.dm.Params()) dm_on.push_back(*p.grad);
    ComputeGradients(&sys, lb, {}, {1.0, false}, 1.0, false, seed);
    std::vector<std::vector<double>> dm_off;
    for (const nn::ParamRef &p : sys.dm.Params()) dm_off.push_back(*p.grad);
    check(on.l_con > 0.0 && on.l_unlabel > 0.0, "consistency inactive");
    check(dm_on == dm_off, "DM gradient depends on the consistency terms");
  }
  *note = "0.2025 to 1e-12, lambda 1 zero on 2000 random inputs, DM gradients "
          "bit-identical";
}

// ---------------------------------------------------------------- 8
void DecoderRules(Checker &check, std::string *note) {
  const double fs = 345.0 / 22050.0;
  const std::vector<std::string> labels = {"A", "B"};
  DecodeConfig raw;
  raw.median_windows = {{1}};
  auto frames = [] { return FramePrediction{"c", Matrix(640, 2)}; };
  auto fill = [](FramePrediction *f, int k, int b, int e, double v) {
    for (int t = b; t < e; t++) f->probs(t, k) = v;
  };
  auto decode = [&](double clip_a, double clip_b, const FramePrediction &f) {
    return Decode({"c", {clip_a, clip_b}}, f, labels, raw);
  };

  // Clip gate.
  FramePrediction f = frames();
  fill(&f, 0, 100, 200, 0.9);
  check(decode(0.5, 0.0, f).empty(), "clip 0.5 passes the gate");
  EventList e = decode(0.500001, 0.0, f);
  check(e.size() == 1 && e[0].onset == 100 * fs && e[0].offset == 200 * fs,
        "clip above 0.5 does not decode the run");

  // Neighbour expansion down to 0.08 (exclusive).
  f = frames();
  fill(&f, 0, 90, 100, 0.08);
  fill(&f, 0, 100, 110, 0.0801);
  fill(&f, 0, 110, 130, 0.9);
  fill(&f, 0, 130, 140, 0.3);
  e = decode(0.9, 0.0, f);
  check(e.size() == 1 && e[0].onset == 100 * fs && e[0].offset == 140 * fs,
        "expansion bounds");
  f = frames();
  fill(&f, 0, 100, 300, 0.5);
  check(decode(0.9, 0.0, f).empty(), "run without a frame above 0.5 decoded");

  // Removal below 0.1 s: 6 frames (0.094 s) go, 7 frames (0.110 s) stay.
  f = frames();
  fill(&f, 0, 300, 306, 0.9);
  fill(&f, 0, 500, 507, 0.9);
  e = decode(0.9, 0.0, f);
  check(e.size() == 1 && e[0].onset == 500 * fs, "0.1 s removal");

  // Merge below 0.2 s: 12 frame gap (0.188 s) merges, 13 (0.203 s) does not.
  f = frames();
  fill(&f, 1, 100, 132, 0.9);
  fill(&f, 1, 144, 176, 0.9);
  fill(&f, 1, 189, 220, 0.9);
  e = decode(0.0, 0.8, f);
  check(e.size() == 2 && e[0].label == "B" && e[0].onset == 100 * fs &&
            e[0].offset == 176 * fs && e[1].onset == 189 * fs,
        "0.2 s merge");

  // Noise removal happens before merging: two 5-frame blips 5 frames apart
  // would merge into a 0.23 s event; removing first leaves nothing.
  f = frames();
  fill(&f, 0, 100, 105, 0.9);
  fill(&f, 0, 110, 115, 0.9);
  check(decode(0.9, 0.0, f).empty(), "noise merged before removal");
  // A blip next to a real event is dropped, not absorbed.
  fill(&f, 0, 120, 160, 0.9);
  e = decode(0.9, 0.0, f);
  check(e.size() == 1 && e[0].onset == 120 * fs && e[0].offset == 160 * fs,
        "blip absorbed into neighbouring event");
  *note = "gate, expansion, removal, merge, noise-first ordering";
}

// ---------------------------------------------------------------- 9
int32 BruteForce(const EventList &ref, const EventList &est, size_t r,
                 std::vector<char> *used, const EvalConfig &cfg) {
  if (r == ref.size()) return 0;
  int32 best = BruteForce(ref, est, r + 1, used, cfg);
  for (size_t e = 0; e < est.size(); e++)
    if (!(*used)[e] && EventsMatch(ref[r], est[e], cfg)) {
      (*used)[e] = 1;
      best = std::max(best, 1 + BruteForce(ref, est, r + 1, used, cfg));
      (*used)[e] = 0;
    }
  return best;
}

void F1Oracle(Checker &check, std::string *note) {
  std::mt19937_64 rng(9);
  const EvalConfig cfg;
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_real_distribution<double> on(0.0, 1.0), dur(0.05, 1.5);
  auto random_events = [&] {
    EventList ev;
    for (const char *label : {"a", "b"}) {
      const int n = count(rng);
      for (int i = 0; i < n; i++) {
        const double o = on(rng);
        ev.push_back({label, o, o + dur(rng)});
      }
    }
    std::shuffle(ev.begin(), ev.end(), rng);
    return ev;
  };
  int nontrivial = 0;
  for (int rep = 0; rep < 500; rep++) {
    const EventList ref = random_events(), est = random_events();
    const MatchResult m = MatchEvents(ref, est, cfg);
    for (const char *label : {"a", "b"}) {
      EventList r, e;
      for (const Event &x : ref)
        if (x.label == label) r.push_back(x);
      for (const Event &x : est)
        if (x.label == label) e.push_back(x);
      std::vector<char> used(e.size(), 0);
      const int32 best = BruteForce(r, e, 0, &used, cfg);
      int64 tp = 0, fp = -1, fn = -1;
      for (size_t i = 0; i < m.labels.size(); i++)
        if (m.labels[i] == label) {
          tp = m.counts[i].tp;
          fp = m.counts[i].fp;
          fn = m.counts[i].fn;
        }
      if (r.empty() && e.empty()) fp = fn = 0;
      check(tp == best && fp == int64(e.size()) - best &&
                fn == int64(r.size()) - best,
            "instance " + std::to_string(rep) + " class " + label);
      nontrivial += best > 1;
    }
  }
  *note = "500 instances, " + std::to_string(nontrivial) +
          " class blocks with 2+ matches";
}

// ---------------------------------------------------------------- 10, 11
struct SmokeRun {
  PipelineConfig cfg;
  std::vector<std::string> clips;
  std::string corpus, labels;
  double f1 = -1.0;
};

SmokeRun *smoke = nullptr;

PipelineConfig SmokeConfig(uint64_t seed) {
  PipelineConfig cfg;
  cfg.seed = seed;
  cfg.gen.n_classes = 3;
  cfg.gen.n_strong = 20;
  cfg.gen.n_weak = 20;
  cfg.gen.n_unlabeled = 40;
  cfg.gen.n_validation = 20;
  cfg.train.mode = TrainMode::kPs2;
  cfg.train.epochs = 8;
  cfg.train.transfer_epochs = 5;
  cfg.train.t_i_epochs = 1;
  cfg.train.t_mult = 2;
  // Desk-scale model and batch.
  cfg.model.sm_channels = {16, 32, 32};
  cfg.model.dm_channels = {8, 16, 32, 32, 32};
  cfg.train.batch_size = 1;
  cfg.Resolve();
  return cfg;
}

double ScoreOf(const SmokeRun &s, const std::string &pred) {
  return RunEval(s.cfg, (fs::path(s.corpus) / "validation.tsv").string(), pred,
                 LoadManifest(s.corpus).label_set)
      .micro_f1;
}

std::vector<std::string> Files(const fs::path &dir) {
  std::vector<std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), dir).string());
  std::sort(out.begin(), out.end());
  return out;
}

bool SameTree(const fs::path &a, const fs::path &b) {
  if (Files(a) != Files(b)) return false;
  for (const std::string &f : Files(a))
    if (Slurp(a / f) != Slurp(b / f)) return false;
  return true;
}

void EndToEnd(Checker &check, std::string *note) {
  static SmokeRun run;
  smoke = &run;
  run.cfg = SmokeConfig(1);
  const fs::path dir = kRoot / "smoke";
  fs::remove_all(dir);
  run.corpus = (dir / "corpus").string();
  run.labels = (dir / "labels").string();

  auto pipeline = [&](const fs::path &d, const PipelineConfig &cfg,
                      const std::string &pred) {
    RunGen(cfg, (d / "corpus").string());
    RunDict(cfg, (d / "corpus").string(), (d / "dict").string());
    RunLabel(cfg, (d / "corpus").string(), (d / "dict").string(),
             (d / "labels").string());
    RunTrain(cfg, (d / "corpus").string(), (d / "labels").string(),
             (d / "train").string());
    const std::vector<std::string> clips =
        ReadFileList((d / "corpus" / "validation_clips.tsv").string());
    RunPredict(cfg, {(d / "train" / "final.sys").string()},
               (d / "corpus" / "audio").string(), clips, pred);
    return clips;
  };
  run.clips = pipeline(dir, run.cfg, (dir / "pred.tsv").string());
  run.f1 = ScoreOf(run, (dir / "pred.tsv").string());
  check(run.clips.size() == 20, "validation split has " +
                                    std::to_string(run.clips.size()) + " clips");

  // Untrained baseline: same pipeline, no optimizer steps.
  PipelineConfig base = run.cfg;
  base.train.epochs = 0;
  RunTrain(base, run.corpus, run.labels, (dir / "base").string());
  RunPredict(base, {(dir / "base" / "final.sys").string()},
             (dir / "corpus" / "audio").string(), run.clips,
             (dir / "base.tsv").string());
  const double base_f1 = ScoreOf(run, (dir / "base.tsv").string());

  // Same seed, fresh directory: every artifact must be byte-identical.
  const fs::path again = kRoot / "smoke-again";
  fs::remove_all(again);
  pipeline(again, run.cfg, (again / "pred.tsv").string());
  for (const char *sub : {"corpus", "dict", "labels", "train"})
    check(SameTree(dir / sub, again / sub),
          std::string("rerun differs in ") + sub);
  check(Slurp(dir / "pred.tsv") == Slurp(again / "pred.tsv"),
        "rerun predictions differ");

  check(run.f1 >= 0.5, "event F1 " + Fmt("%.4f", run.f1) + " < 0.50");
  check(run.f1 > base_f1, "event F1 " + Fmt("%.4f", run.f1) +
                              " does not beat baseline " + Fmt("%.4f", base_f1));
  *note = "event F1 " + Fmt("%.2f%%", 100 * run.f1) + ", untrained baseline " +
          Fmt("%.2f%%", 100 * base_f1) + ", rerun byte-identical";
}

void Ensemble(Checker &check, std::string *note) {
  if (smoke == nullptr || smoke->f1 < 0.0) {
    check(false, "criterion 10 artifacts missing");
    return;
  }
  const SmokeRun &run = *smoke;
  const fs::path dir = kRoot / "smoke";
  PipelineConfig other = run.cfg;
  other.seed = 2;
  other.Resolve();
  RunTrain(other, run.corpus, run.labels, (dir / "train2").string());
  const std::string audio = (dir / "corpus" / "audio").string();
  RunPredict(other, {(dir / "train2" / "final.sys").string()}, audio, run.clips,
             (dir / "pred2.tsv").string());
  const double f1_b = ScoreOf(run, (dir / "pred2.tsv").string());

  std::vector<SedSystem> systems;
  systems.push_back(SedSystem::ReadFile((dir / "train" / "final.sys").string()));
  systems.push_back(SedSystem::ReadFile((dir / "train2" / "final.sys").string()));
  check(systems[0].sm.Architecture() == systems[1].sm.Architecture(),
        "systems differ in architecture");
  RunPredict(run.cfg, &systems, audio, run.clips, (dir / "ens.tsv").string());
  const double f1_ens = ScoreOf(run, (dir / "ens.tsv").string());

  // Averaged posteriors are valid probabilities.
  std::vector<std::string> paths;
  for (const std::string &c : run.clips) paths.push_back(audio + "/" + c);
  std::vector<MelFeatures> feats = ExtractAll(paths, run.cfg.feature);
  std::vector<const Matrix *> x;
  for (const MelFeatures &f : feats) x.push_back(&f.logmel);
  std::vector<ClipPrediction> c[2];
  std::vector<FramePrediction> fr[2];
  for (int s = 0; s < 2; s++) systems[s].Predict(run.clips, x, &c[s], &fr[s]);
  bool valid = true, differ = false;
  for (size_t i = 0; i < run.clips.size(); i++) {
    auto [clip, frames] =
        EnsembleAverage({{c[0][i], fr[0][i]}, {c[1][i], fr[1][i]}});
    for (double p : clip.probs) valid = valid && std::isfinite(p) && p >= 0 && p <= 1;
    for (double p : frames.probs.Values())
      valid = valid && std::isfinite(p) && p >= 0 && p <= 1;
    differ = differ || c[0][i].probs != c[1][i].probs;
  }
  check(valid, "ensemble posteriors outside [0, 1]");
  check(differ, "the two seeds produced identical systems");
  const double lo = std::min(run.f1, f1_b);
  check(f1_ens >= lo, "ensemble F1 " + Fmt("%.4f", f1_ens) + " < min " +
                          Fmt("%.4f", lo));
  *note = "seed 1 " + Fmt("%.2f%%", 100 * run.f1) + ", seed 2 " +
          Fmt("%.2f%%", 100 * f1_b) + ", ensemble " + Fmt("%.2f%%", 100 * f1_ens);
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Checker &, std::string *)> run;
  bool cumulative = false;  // budget includes the previous criterion
};

}  // namespace

int main() {
  fs::create_directories(kRoot);
  const std::vector<Criterion> criteria = {
      {1, "feature shape", 1.0, FeatureShape},
      {2, "NMF monotonicity", 30.0, NmfMonotone},
      {3, "NMF rank-1 recovery", 30.0, NmfRankOne},
      {4, "labeler oracle", 120.0, LabelerOracle},
      {5, "gradient checks", 120.0, GradientChecks},
      {6, "schedule exactness", 1.0, ScheduleExact},
      {7, "consistency gating", 10.0, ConsistencyGating},
      {8, "decoder rules", 5.0, DecoderRules},
      {9, "event-F1 oracle", 60.0, F1Oracle},
      {10, "end-to-end smoke", 600.0, EndToEnd},
      {11, "ensemble property", 720.0, Ensemble, true},
  };
  int failed = 0;
  double previous = 0.0;
  for (const Criterion &c : criteria) {
    Checker check;
    std::string note;
    const double t0 = Now();
    try {
      c.run(check, &note);
    } catch (const std::exception &e) {
      check(false, std::string("exception: ") + e.what());
    }
    const double elapsed = Now() - t0;
    const double charged = elapsed + (c.cumulative ? previous : 0.0);
    const bool in_time = charged < c.limit_seconds;
    const bool pass = check.Ok() && in_time;
    failed += !pass;
    std::printf("criterion %2d %-22s %s  %.2f s (limit %.0f s)  %s%s\n", c.id,
                c.name.c_str(), pass ? "PASS" : "FAIL", charged,
                c.limit_seconds, check.Ok() ? note.c_str() : check.Summary().c_str(),
                in_time ? "" : "  [over time]");
    std::fflush(stdout);
    previous = elapsed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
