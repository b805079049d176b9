// src/data/generator.cc

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

#include "data/generator.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <random>

#include "base/text-utils.h"
#include "dsp/feature-logmel.h"

namespace sed {

namespace {

const char *const kLabelNames[] = {
    "Alarm_bell_ringing", "Blender", "Cat",     "Dishes",  "Dog",
    "Electric_shaver",    "Frying",  "Running_water", "Speech",
    "Vacuum_cleaner"};
const int32 kMaxClasses = 10;

std::mutex fftw_planner_mutex;

// Forward FFT, per-bin gain, inverse FFT.
template <typename Gain>
void ShapeSpectrum(std::vector<double> *x, Gain gain) {
  const int n = static_cast<int>(x->size());
  if (n < 2) return;
  std::vector<std::complex<double>> spec(n / 2 + 1);
  fftw_plan fwd, inv;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fwd = fftw_plan_dft_r2c_1d(n, x->data(),
                               reinterpret_cast<fftw_complex *>(spec.data()),
                               FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    inv = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex *>(spec.data()),
                               x->data(), FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  for (int k = 0; k <= n / 2; k++) spec[k] *= gain(k, n) / n;
  fftw_execute(inv);
  std::lock_guard<std::mutex> lock(fftw_planner_mutex);
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(inv);
}

double MeanSquare(const double *x, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; i++) s += x[i] * x[i];
  return n ? s / n : 0.0;
}

std::vector<double> RenderEvent(const ClassProfile &p, size_t n, int32 rate,
                                std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n, 0.0);
  const double lo = p.lo_hz, hi = p.hi_hz;
  switch (p.archetype) {
    case Archetype::kHarmonic: {
      // Partials of f0 inside the band; f0 scales with the band width so
      // every class gets several partials.  A 3% vibrato spreads each
      // partial over neighbouring bins.
      const double f0 = 0.25 * (hi - lo) * (1.0 + 0.05 * u(rng));
      const double vib_hz = 5.0 + 2.0 * u(rng), vib_phase = 2.0 * M_PI * u(rng);
      const int first = static_cast<int>(std::ceil(lo / f0));
      for (int k = first; k * f0 <= hi; k++) {
        double phase = 2.0 * M_PI * u(rng);
        for (size_t i = 0; i < n; i++) {
          const double vib =
              1.0 + 0.03 * std::sin(2.0 * M_PI * vib_hz * i / rate + vib_phase);
          phase += 2.0 * M_PI * k * f0 * vib / rate;
          x[i] += std::sin(phase) / std::sqrt(k - first + 1.0);
        }
      }
      break;
    }
    case Archetype::kBandNoise:
      for (double &v : x) v = g(rng);
      break;
    case Archetype::kChirp: {
      const double period = 0.02 + 0.02 * u(rng);
      double phase = 0.0;
      for (size_t i = 0; i < n; i++) {
        const double frac = std::fmod(static_cast<double>(i) / rate, period) / period;
        phase += 2.0 * M_PI * (lo + frac * (hi - lo)) / rate;
        x[i] = std::sin(phase);
      }
      break;
    }
    case Archetype::kImpulseTrain: {
      const double rate_hz = 20.0 + 10.0 * u(rng);
      const double tau = 0.02 * rate;
      const size_t period = static_cast<size_t>(rate / rate_hz);
      for (size_t start = 0; start < n; start += period)
        for (size_t i = start; i < std::min(n, start + period); i++)
          x[i] = g(rng) * std::exp(-static_cast<double>(i - start) / tau);
      break;
    }
  }
  BandLimit(&x, rate, lo, hi);
  // 10 ms raised-cosine fades.
  const size_t fade = std::min(n / 2, static_cast<size_t>(0.01 * rate));
  for (size_t i = 0; i < fade; i++) {
    const double w = 0.5 - 0.5 * std::cos(M_PI * (i + 0.5) / fade);
    x[i] *= w;
    x[n - 1 - i] *= w;
  }
  return x;
}

}  // namespace

std::string ArchetypeName(Archetype a) {
  switch (a) {
    case Archetype::kHarmonic: return "harmonic";
    case Archetype::kBandNoise: return "band_noise";
    case Archetype::kChirp: return "chirp";
    case Archetype::kImpulseTrain: return "impulse_train";
  }
  return "unknown";
}

void GenSpec::Check() const {
  if (n_classes < 2 || n_classes > kMaxClasses)
    Fail("gen: classes must be in [2, ", kMaxClasses, "], got ", n_classes);
  if (n_strong < 0 || n_weak < 0 || n_unlabeled < 0 || n_validation < 0)
    Fail("gen: clip counts must be non-negative");
  if (min_events < 1 || max_events < min_events)
    Fail("gen: need 1 <= min_events <= max_events");
  if (!(min_duration >= 0.25 && max_duration >= min_duration &&
        max_duration <= clip_seconds))
    Fail("gen: need 0.25 <= min_duration <= max_duration <= clip length");
  if (!(snr_max_db >= snr_min_db)) Fail("gen: snr range is empty");
  if (sample_rate < 20000) Fail("gen: sample rate too low for the bands");
}

std::vector<ClassProfile> MakeClassProfiles(int32 n_classes, bool hard) {
  if (n_classes < 1 || n_classes > kMaxClasses)
    Fail("gen: classes must be in [1, ", kMaxClasses, "]");
  const double m_lo = HzToMel(200.0), m_hi = HzToMel(9000.0);
  const double width = (m_hi - m_lo) / n_classes;
  const Archetype kinds[] = {Archetype::kHarmonic, Archetype::kBandNoise,
                             Archetype::kChirp, Archetype::kImpulseTrain};
  std::vector<ClassProfile> out;
  for (int32 c = 0; c < n_classes; c++) {
    const double start = m_lo + c * width;
    double a, b;
    if (hard) {
      a = std::max(m_lo, start - 0.5 * width);
      b = std::min(m_hi, start + 1.5 * width);
    } else {
      a = start + 0.2 * width;
      b = start + 0.8 * width;
    }
    out.push_back({kLabelNames[c], kinds[c % 4], MelToHz(a), MelToHz(b)});
  }
  return out;
}

EventList SampleEvents(const GenSpec &spec,
                       const std::vector<ClassProfile> &profiles,
                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int32> count(spec.min_events, spec.max_events);
  std::uniform_int_distribution<size_t> cls(0, profiles.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int32 n = count(rng);
  EventList events;
  for (int32 i = 0, tries = 0; i < n && tries < 200; tries++) {
    Event e;
    e.label = profiles[cls(rng)].label;
    const double dur = spec.min_duration + u(rng) * (spec.max_duration - spec.min_duration);
    e.onset = std::round(u(rng) * (spec.clip_seconds - dur) * 1000.0) / 1000.0;
    e.offset = std::min(spec.clip_seconds,
                        std::round((e.onset + dur) * 1000.0) / 1000.0);
    bool clash = false;
    for (const Event &o : events) {
      const double gap = (o.label == e.label) ? 0.5 : (spec.polyphony ? -1e9 : 0.0);
      if (e.onset < o.offset + gap && o.onset < e.offset + gap) clash = true;
    }
    if (clash) continue;
    events.push_back(e);
    i++;
  }
  std::sort(events.begin(), events.end(), [](const Event &a, const Event &b) {
    return a.onset < b.onset || (a.onset == b.onset && a.label < b.label);
  });
  return events;
}

void BandLimit(std::vector<double> *x, int32 sample_rate, double lo_hz,
               double hi_hz) {
  ShapeSpectrum(x, [&](int k, int n) {
    const double f = static_cast<double>(k) * sample_rate / n;
    return (f >= lo_hz && f <= hi_hz) ? 1.0 : 0.0;
  });
}

Waveform SynthesizeClip(const GenSpec &spec,
                        const std::vector<ClassProfile> &profiles,
                        const EventList &events, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const size_t n = static_cast<size_t>(std::llround(spec.clip_seconds * spec.sample_rate));
  Waveform w;
  w.sample_rate = spec.sample_rate;
  w.samples.resize(n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double &v : w.samples) v = g(rng);
  ShapeSpectrum(&w.samples, [](int k, int) {
    return k == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(k));
  });
  const double bg_rms = 0.05;
  const double scale = bg_rms / std::sqrt(MeanSquare(w.samples.data(), n));
  for (double &v : w.samples) v *= scale;

  const double snr_db =
      std::uniform_real_distribution<double>(spec.snr_min_db, spec.snr_max_db)(rng);
  for (const Event &e : events) {
    auto it = std::find_if(profiles.begin(), profiles.end(),
                           [&](const ClassProfile &p) { return p.label == e.label; });
    if (it == profiles.end()) Fail("gen: unknown class '", e.label, "'");
    const size_t start = static_cast<size_t>(std::llround(e.onset * spec.sample_rate));
    const size_t end = std::min(n, static_cast<size_t>(std::llround(e.offset * spec.sample_rate)));
    if (end <= start) continue;
    std::vector<double> x = RenderEvent(*it, end - start, spec.sample_rate, rng);
    const double bg_power = MeanSquare(w.samples.data() + start, end - start);
    const double target = bg_power * std::pow(10.0, snr_db / 10.0);
    const double gain = std::sqrt(target / std::max(MeanSquare(x.data(), x.size()), 1e-30));
    for (size_t i = 0; i < x.size(); i++) w.samples[start + i] += gain * x[i];
  }
  double peak = 0.0;
  for (double v : w.samples) peak = std::max(peak, std::abs(v));
  const double norm = std::pow(10.0, -3.0 / 20.0) / std::max(peak, 1e-30);
  for (double &v : w.samples) v *= norm;
  return w;
}

CorpusManifest GenerateCorpus(const GenSpec &spec, const std::string &out_dir) {
  namespace fs = std::filesystem;
  spec.Check();
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "audio", ec);
  if (!ec) fs::create_directories(fs::path(out_dir) / "hidden", ec);
  if (ec) Fail("gen: cannot create '", out_dir, "': ", ec.message());
  const std::vector<ClassProfile> profiles = MakeClassProfiles(spec.n_classes, spec.hard);

  struct Split {
    std::string name;
    int32 count;
  };
  const Split splits[] = {{"strong", spec.n_strong},
                          {"weak", spec.n_weak},
                          {"unlabeled", spec.n_unlabeled},
                          {"validation", spec.n_validation}};
  std::vector<std::vector<StrongEntry>> truth(4);
  for (int s = 0; s < 4; s++) {
    const uint64_t split_seed = MixSeed(spec.seed, s);
    std::vector<StrongEntry> &entries = truth[s];
    entries.resize(splits[s].count);
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (int32 i = 0; i < splits[s].count; i++) {
      try {
        const uint64_t clip_seed = MixSeed(split_seed, i);
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%04d.wav", splits[s].name.c_str(), i);
        entries[i].filename = name;
        entries[i].events = SampleEvents(spec, profiles, MixSeed(clip_seed, 0));
        Waveform w = SynthesizeClip(spec, profiles, entries[i].events,
                                    MixSeed(clip_seed, 1));
        WriteWav((fs::path(out_dir) / "audio" / name).string(), w);
      } catch (const std::exception &e) {
#pragma omp critical
        error = e.what();
      }
    }
    if (!error.empty()) Fail("gen: ", error);
  }

  auto weak_of = [](const std::vector<StrongEntry> &entries) {
    std::vector<WeakEntry> weak;
    for (const StrongEntry &s : entries) {
      WeakEntry w{s.filename, {}};
      for (const Event &e : s.events) w.tags.push_back(e.label);
      std::sort(w.tags.begin(), w.tags.end());
      w.tags.erase(std::unique(w.tags.begin(), w.tags.end()), w.tags.end());
      weak.push_back(w);
    }
    return weak;
  };
  auto names_of = [](const std::vector<StrongEntry> &entries) {
    std::vector<std::string> names;
    for (const StrongEntry &s : entries) names.push_back(s.filename);
    return names;
  };

  const fs::path root(out_dir);
  WriteStrongTsv((root / "strong.tsv").string(), truth[0]);
  WriteWeakTsv((root / "weak.tsv").string(), weak_of(truth[1]));
  WriteFileList((root / "unlabeled.tsv").string(), names_of(truth[2]));
  WriteStrongTsv((root / "validation.tsv").string(), truth[3]);
  WriteFileList((root / "validation_clips.tsv").string(), names_of(truth[3]));
  WriteStrongTsv((root / "hidden" / "weak_truth.tsv").string(), truth[1]);
  WriteStrongTsv((root / "hidden" / "unlabeled_truth.tsv").string(), truth[2]);

  std::string classes;
  for (const ClassProfile &p : profiles)
    classes += p.label + "\t" + ArchetypeName(p.archetype) + "\t" +
               FormatFixed(p.lo_hz, 1) + "\t" + FormatFixed(p.hi_hz, 1) + "\n";
  WriteTextFile((root / "classes.tsv").string(), classes);
  return LoadManifest(out_dir);
}

}  // namespace sed
