// src/eval/eval.h

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

#ifndef SED_EVAL_EVAL_H_
#define SED_EVAL_EVAL_H_

#include <string>
#include <utility>
#include <vector>

#include "base/events.h"
#include "data/corpus.h"

namespace sed {

struct EvalConfig {
  double onset_collar = 0.2;
  /// Offset tolerance is max(onset_collar, offset_fraction * ref duration).
  double offset_fraction = 0.2;
};

struct EventCounts {
  int64 tp = 0, fp = 0, fn = 0;
};

struct MatchResult {
  std::vector<std::string> labels;  // sorted classes present in ref or est
  std::vector<EventCounts> counts;  // parallel to labels
  /// (ref index, est index) pairs into the input lists.
  std::vector<std::pair<int32, int32>> pairs;

  EventCounts Total() const;
};

/// True if est may match ref: same class, onsets within the collar and
/// offsets within the offset tolerance.
bool EventsMatch(const Event &ref, const Event &est, const EvalConfig &cfg);

/// One-to-one matching per class.  Candidate pairs are taken greedily in
/// ascending onset distance, then augmenting paths grow the matching to
/// maximum size, so the true-positive count is the best achievable.
MatchResult MatchEvents(const EventList &ref, const EventList &est,
                        const EvalConfig &cfg);

/// 2 tp / (2 tp + fp + fn); 1 when all counts are zero.
double F1FromCounts(int64 tp, int64 fp, int64 fn);

struct ClassScore {
  std::string label;
  EventCounts counts;
  double f1 = 0.0;
};

struct ScoreReport {
  std::vector<ClassScore> classes;
  EventCounts total;
  double micro_f1 = 0.0;
  /// Mean class F1 over classes with at least one reference or estimated
  /// event (1 if there are none).
  double macro_f1 = 0.0;
};

/// Scores a corpus.  Clips missing from est count as empty predictions;
/// classes of label_set always appear in the report.  Duplicate clip
/// names in either list are an error.
ScoreReport ScoreCorpus(const std::vector<StrongEntry> &ref,
                        const std::vector<StrongEntry> &est,
                        const std::vector<std::string> &label_set,
                        const EvalConfig &cfg);

/// class TAB tp TAB fp TAB fn TAB f1 rows, then micro and macro rows.
std::string FormatReportTsv(const ScoreReport &r);
std::string FormatReportText(const ScoreReport &r);

/// Frame-level F1 between two binary matrices of equal shape.
double FrameF1(const Matrix &est, const Matrix &ref);

}  // namespace sed

#endif  // SED_EVAL_EVAL_H_
