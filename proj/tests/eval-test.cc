// tests/eval-test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "eval/eval.h"

using namespace sed;

namespace {

// Largest one-to-one matching by exhaustive search.
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

EventList RandomEvents(std::mt19937_64 *rng, int32 max_per_class) {
  std::uniform_int_distribution<int> count(0, max_per_class);
  std::uniform_real_distribution<double> on(0.0, 1.0), dur(0.05, 1.5);
  EventList ev;
  for (const char *label : {"a", "b"}) {
    const int n = count(*rng);
    for (int i = 0; i < n; i++) {
      const double o = on(*rng);
      ev.push_back({label, o, o + dur(*rng)});
    }
  }
  std::shuffle(ev.begin(), ev.end(), *rng);
  return ev;
}

}  // namespace

TEST_CASE("match rule") {
  EvalConfig cfg;
  Event ref{"Dog", 1.0, 2.0};
  CHECK(EventsMatch(ref, {"Dog", 1.1, 2.0}, cfg));
  CHECK(EventsMatch(ref, {"Dog", 1.2, 2.2}, cfg));
  CHECK(!EventsMatch(ref, {"Dog", 1.21, 2.0}, cfg));
  CHECK(!EventsMatch(ref, {"Cat", 1.0, 2.0}, cfg));
  // Long events get 20% of their duration as offset tolerance.
  Event longer{"Dog", 0.0, 5.0};
  CHECK(EventsMatch(longer, {"Dog", 0.0, 5.9}, cfg));
  CHECK(!EventsMatch(longer, {"Dog", 0.0, 6.1}, cfg));
}

TEST_CASE("f1 algebra") {
  CHECK(F1FromCounts(1, 0, 0) == 1.0);
  CHECK(F1FromCounts(0, 3, 2) == 0.0);
  CHECK(F1FromCounts(3, 1, 2) == doctest::Approx(6.0 / 9.0).epsilon(1e-15));
  CHECK(F1FromCounts(0, 0, 0) == 1.0);
  CHECK_THROWS_AS(F1FromCounts(-1, 0, 0), SedError);
}

TEST_CASE("basic matching") {
  EvalConfig cfg;
  EventList ref = {{"Dog", 1.0, 2.0}, {"Cat", 3.0, 4.0}, {"Dog", 5.0, 6.5}};
  MatchResult m = MatchEvents(ref, ref, cfg);
  CHECK(m.Total().tp == 3);
  CHECK(m.Total().fp == 0);
  CHECK(m.Total().fn == 0);
  CHECK(m.pairs == std::vector<std::pair<int32, int32>>{{0, 0}, {1, 1}, {2, 2}});
  MatchResult none = MatchEvents(ref, {}, cfg);
  CHECK(none.Total().fn == 3);
  CHECK(F1FromCounts(none.Total().tp, none.Total().fp, none.Total().fn) == 0.0);
  MatchResult shifted = MatchEvents({{"Dog", 1.0, 2.0}}, {{"Dog", 1.1, 2.0}}, cfg);
  CHECK(shifted.Total().tp == 1);

  // Greedy by onset distance alone would pair ref 0 with est 0 and strand
  // ref 1; the augmenting pass recovers both.
  EventList r2 = {{"x", 1.0, 2.0}, {"x", 1.15, 1.4}};
  EventList e2 = {{"x", 1.05, 1.35}, {"x", 1.2, 2.1}};
  CHECK(MatchEvents(r2, e2, cfg).Total().tp == 2);
}

TEST_CASE("matching is maximum on random instances") {
  std::mt19937_64 rng(1);
  EvalConfig cfg;
  int nontrivial = 0;
  for (int rep = 0; rep < 500; rep++) {
    EventList ref = RandomEvents(&rng, 6), est = RandomEvents(&rng, 6);
    MatchResult m = MatchEvents(ref, est, cfg);
    for (const char *label : {"a", "b"}) {
      EventList r, e;
      for (const Event &x : ref) if (x.label == label) r.push_back(x);
      for (const Event &x : est) if (x.label == label) e.push_back(x);
      std::vector<char> used(e.size(), 0);
      const int32 best = BruteForce(r, e, 0, &used, cfg);
      int64 tp = 0;
      for (size_t i = 0; i < m.labels.size(); i++)
        if (m.labels[i] == label) tp = m.counts[i].tp;
      CHECK(tp == best);
      nontrivial += best > 1;
    }
    // Pairs are one-to-one, same class and within the collars.
    std::set<int32> rs, es;
    for (auto [r, e] : m.pairs) {
      CHECK(rs.insert(r).second);
      CHECK(es.insert(e).second);
      CHECK(EventsMatch(ref[r], est[e], cfg));
    }
  }
  CHECK(nontrivial > 100);
}

TEST_CASE("symmetry and monotonicity") {
  std::mt19937_64 rng(2);
  EvalConfig cfg;
  cfg.offset_fraction = 0.0;  // symmetric rule: both tolerances are 0.2 s
  for (int rep = 0; rep < 200; rep++) {
    EventList a = RandomEvents(&rng, 5), b = RandomEvents(&rng, 5);
    EventCounts ab = MatchEvents(a, b, cfg).Total(), ba = MatchEvents(b, a, cfg).Total();
    CHECK(ab.tp == ba.tp);
    CHECK(F1FromCounts(ab.tp, ab.fp, ab.fn) == F1FromCounts(ba.tp, ba.fp, ba.fn));
    // A spurious extra estimate never raises F1.
    EventList more = b;
    more.push_back({"a", 8.0, 9.0});
    EventCounts c = MatchEvents(a, more, cfg).Total();
    CHECK(F1FromCounts(c.tp, c.fp, c.fn) <= F1FromCounts(ab.tp, ab.fp, ab.fn));
  }
}

TEST_CASE("corpus scoring") {
  EvalConfig cfg;
  std::vector<StrongEntry> ref = {
      {"a.wav", {{"Dog", 1.0, 2.0}, {"Dog", 4.0, 5.0}}},
      {"b.wav", {{"Cat", 0.5, 3.0}, {"Cat", 6.0, 8.0}}},
  };
  std::vector<std::string> labels = {"Cat", "Dog", "Speech"};
  ScoreReport same = ScoreCorpus(ref, ref, labels, cfg);
  CHECK(same.micro_f1 == 1.0);
  CHECK(same.macro_f1 == 1.0);
  REQUIRE(same.classes.size() == 3);
  CHECK(same.classes[2].label == "Speech");
  CHECK(same.classes[2].counts.tp == 0);

  std::vector<StrongEntry> half = {{"a.wav", {{"Dog", 1.0, 2.0}}},
                                   {"b.wav", {{"Cat", 0.5, 3.0}}}};
  ScoreReport h = ScoreCorpus(ref, half, labels, cfg);
  CHECK(h.micro_f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(h.total.tp == 2);
  CHECK(h.total.fn == 2);

  // Missing clips are empty predictions; extra clips are all false positives.
  ScoreReport missing = ScoreCorpus(ref, {{"a.wav", ref[0].events}}, labels, cfg);
  CHECK(missing.total.tp == 2);
  CHECK(missing.total.fn == 2);
  ScoreReport extra =
      ScoreCorpus(ref, {{"c.wav", {{"Speech", 0.0, 1.0}}}}, labels, cfg);
  CHECK(extra.total.fp == 1);
  CHECK(extra.micro_f1 == 0.0);

  CHECK_THROWS_AS(ScoreCorpus({ref[0], ref[0]}, ref, labels, cfg), SedError);
  CHECK_THROWS_AS(ScoreCorpus(ref, {half[0], half[0]}, labels, cfg), SedError);

  const std::string tsv = FormatReportTsv(h);
  CHECK(tsv.find("class\ttp\tfp\tfn\tf1\n") == 0);
  CHECK(tsv.find("Cat\t1\t0\t1\t0.666667\n") != std::string::npos);
  CHECK(tsv.find("Speech\t0\t0\t0\t1.000000\n") != std::string::npos);
  CHECK(tsv.find("micro\t2\t0\t2\t0.666667\n") != std::string::npos);
  CHECK(FormatReportText(h).find("micro 66.67%") != std::string::npos);
}

TEST_CASE("frame F1") {
  Matrix a(4, 2), b(4, 2);
  a(0, 0) = a(1, 0) = 1;
  b(1, 0) = b(2, 0) = 1;
  CHECK(FrameF1(a, b) == doctest::Approx(0.5));
  CHECK(FrameF1(a, a) == 1.0);
  CHECK_THROWS_AS(FrameF1(a, Matrix(3, 2)), SedError);
}
