// src/eval/eval.cc

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

#include "eval/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "base/text-utils.h"

namespace sed {

namespace {

// Times are written with millisecond precision, so boundary cases that are
// nominally equal must not fail on representation error.
const double kTimeSlack = 1e-9;

// Kuhn augmenting path from ref r over the candidate graph.
bool Augment(int32 r, const std::vector<std::vector<int32>> &adj,
             std::vector<int32> *est_of_ref, std::vector<int32> *ref_of_est,
             std::vector<char> *visited) {
  for (int32 e : adj[r]) {
    if ((*visited)[e]) continue;
    (*visited)[e] = 1;
    if ((*ref_of_est)[e] < 0 ||
        Augment((*ref_of_est)[e], adj, est_of_ref, ref_of_est, visited)) {
      (*est_of_ref)[r] = e;
      (*ref_of_est)[e] = r;
      return true;
    }
  }
  return false;
}

}  // namespace

EventCounts MatchResult::Total() const {
  EventCounts t;
  for (const EventCounts &c : counts) {
    t.tp += c.tp;
    t.fp += c.fp;
    t.fn += c.fn;
  }
  return t;
}

bool EventsMatch(const Event &ref, const Event &est, const EvalConfig &cfg) {
  if (ref.label != est.label) return false;
  const double off_tol =
      std::max(cfg.onset_collar, cfg.offset_fraction * ref.Duration());
  return std::abs(ref.onset - est.onset) <= cfg.onset_collar + kTimeSlack &&
         std::abs(ref.offset - est.offset) <= off_tol + kTimeSlack;
}

MatchResult MatchEvents(const EventList &ref, const EventList &est,
                        const EvalConfig &cfg) {
  MatchResult m;
  std::set<std::string> labels;
  for (const Event &e : ref) labels.insert(e.label);
  for (const Event &e : est) labels.insert(e.label);
  for (const std::string &label : labels) {
    std::vector<int32> ri, ei;
    for (size_t i = 0; i < ref.size(); i++)
      if (ref[i].label == label) ri.push_back(i);
    for (size_t i = 0; i < est.size(); i++)
      if (est[i].label == label) ei.push_back(i);
    struct Cand {
      double dist;
      int32 r, e;
    };
    std::vector<Cand> cands;
    std::vector<std::vector<int32>> adj(ri.size());
    for (size_t a = 0; a < ri.size(); a++)
      for (size_t b = 0; b < ei.size(); b++)
        if (EventsMatch(ref[ri[a]], est[ei[b]], cfg)) {
          cands.push_back({std::abs(ref[ri[a]].onset - est[ei[b]].onset),
                           static_cast<int32>(a), static_cast<int32>(b)});
          adj[a].push_back(b);
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand &x, const Cand &y) { return x.dist < y.dist; });
    std::vector<int32> est_of_ref(ri.size(), -1), ref_of_est(ei.size(), -1);
    for (const Cand &c : cands)
      if (est_of_ref[c.r] < 0 && ref_of_est[c.e] < 0) {
        est_of_ref[c.r] = c.e;
        ref_of_est[c.e] = c.r;
      }
    for (size_t a = 0; a < ri.size(); a++)
      if (est_of_ref[a] < 0) {
        std::vector<char> visited(ei.size(), 0);
        Augment(a, adj, &est_of_ref, &ref_of_est, &visited);
      }
    EventCounts c;
    for (size_t a = 0; a < ri.size(); a++)
      if (est_of_ref[a] >= 0) {
        c.tp++;
        m.pairs.push_back({ri[a], ei[est_of_ref[a]]});
      }
    c.fn = static_cast<int64>(ri.size()) - c.tp;
    c.fp = static_cast<int64>(ei.size()) - c.tp;
    m.labels.push_back(label);
    m.counts.push_back(c);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

double F1FromCounts(int64 tp, int64 fp, int64 fn) {
  if (tp < 0 || fp < 0 || fn < 0) Fail("F1: counts must be nonnegative");
  const int64 denom = 2 * tp + fp + fn;
  if (denom == 0) return 1.0;
  return 2.0 * tp / denom;
}

ScoreReport ScoreCorpus(const std::vector<StrongEntry> &ref,
                        const std::vector<StrongEntry> &est,
                        const std::vector<std::string> &label_set,
                        const EvalConfig &cfg) {
  std::map<std::string, const EventList *> ref_of, est_of;
  for (const StrongEntry &e : ref)
    if (!ref_of.emplace(e.filename, &e.events).second)
      Fail("eval: clip '", e.filename, "' appears twice in the reference");
  for (const StrongEntry &e : est)
    if (!est_of.emplace(e.filename, &e.events).second)
      Fail("eval: clip '", e.filename, "' appears twice in the estimate");
  std::set<std::string> clips;
  for (const auto &[name, ev] : ref_of) clips.insert(name);
  for (const auto &[name, ev] : est_of) clips.insert(name);

  std::map<std::string, EventCounts> per_class;
  for (const std::string &l : label_set) per_class[l];
  const EventList empty;
  for (const std::string &clip : clips) {
    auto r = ref_of.find(clip), e = est_of.find(clip);
    MatchResult m = MatchEvents(r == ref_of.end() ? empty : *r->second,
                                e == est_of.end() ? empty : *e->second, cfg);
    for (size_t i = 0; i < m.labels.size(); i++) {
      EventCounts &c = per_class[m.labels[i]];
      c.tp += m.counts[i].tp;
      c.fp += m.counts[i].fp;
      c.fn += m.counts[i].fn;
    }
  }
  ScoreReport rep;
  double macro = 0.0;
  int32 active = 0;
  for (const auto &[label, c] : per_class) {
    ClassScore s{label, c, F1FromCounts(c.tp, c.fp, c.fn)};
    rep.classes.push_back(s);
    rep.total.tp += c.tp;
    rep.total.fp += c.fp;
    rep.total.fn += c.fn;
    if (c.tp + c.fp + c.fn > 0) {
      macro += s.f1;
      active++;
    }
  }
  rep.micro_f1 = F1FromCounts(rep.total.tp, rep.total.fp, rep.total.fn);
  rep.macro_f1 = active > 0 ? macro / active : 1.0;
  return rep;
}

std::string FormatReportTsv(const ScoreReport &r) {
  std::string s = "class\ttp\tfp\tfn\tf1\n";
  auto row = [&s](const std::string &name, const EventCounts &c, double f1) {
    s += name + "\t" + std::to_string(c.tp) + "\t" + std::to_string(c.fp) +
         "\t" + std::to_string(c.fn) + "\t" + FormatFixed(f1, 6) + "\n";
  };
  for (const ClassScore &c : r.classes) row(c.label, c.counts, c.f1);
  row("micro", r.total, r.micro_f1);
  row("macro", r.total, r.macro_f1);
  return s;
}

std::string FormatReportText(const ScoreReport &r) {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-24s %6s %6s %6s %8s\n", "class", "tp",
                "fp", "fn", "F1 (%)");
  s += buf;
  for (const ClassScore &c : r.classes) {
    std::snprintf(buf, sizeof(buf), "%-24s %6lld %6lld %6lld %8.2f\n",
                  c.label.c_str(), static_cast<long long>(c.counts.tp),
                  static_cast<long long>(c.counts.fp),
                  static_cast<long long>(c.counts.fn), 100.0 * c.f1);
    s += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "event-based F1: micro %.2f%%, macro %.2f%%\n",
                100.0 * r.micro_f1, 100.0 * r.macro_f1);
  s += buf;
  return s;
}

double FrameF1(const Matrix &est, const Matrix &ref) {
  if (est.NumRows() != ref.NumRows() || est.NumCols() != ref.NumCols())
    Fail("FrameF1: shapes differ");
  int64 tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < est.Values().size(); i++) {
    const bool e = est.Values()[i] > 0.5, r = ref.Values()[i] > 0.5;
    tp += e && r;
    fp += e && !r;
    fn += !e && r;
  }
  return F1FromCounts(tp, fp, fn);
}

}  // namespace sed
