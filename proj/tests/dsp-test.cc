// tests/dsp-test.cc

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

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "dsp/feature-logmel.h"
#include "dsp/resample.h"
#include "dsp/wave-io.h"

using namespace sed;

namespace {

std::string TempPath(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "sed-dsp-test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void PutU32(std::vector<unsigned char> *b, uint32_t v) {
  for (int i = 0; i < 4; i++) b->push_back((v >> (8 * i)) & 0xFF);
}
void PutU16(std::vector<unsigned char> *b, uint16_t v) {
  b->push_back(v & 0xFF);
  b->push_back(v >> 8);
}

// Hand-assembled RIFF file so the reader is not checked against its own
// writer.
std::vector<unsigned char> MakeWav(uint16_t format, uint16_t channels,
                                   uint32_t rate, uint16_t bits,
                                   const std::vector<unsigned char> &payload) {
  std::vector<unsigned char> b;
  b.insert(b.end(), {'R', 'I', 'F', 'F'});
  PutU32(&b, 36 + static_cast<uint32_t>(payload.size()));
  b.insert(b.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(&b, 16);
  PutU16(&b, format);
  PutU16(&b, channels);
  PutU32(&b, rate);
  PutU32(&b, rate * channels * bits / 8);
  PutU16(&b, channels * bits / 8);
  PutU16(&b, bits);
  b.insert(b.end(), {'d', 'a', 't', 'a'});
  PutU32(&b, static_cast<uint32_t>(payload.size()));
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

// Peak bin of a naive DFT magnitude (oracle independent of FFTW).
int PeakDftBin(const std::vector<double> &x) {
  const size_t n = x.size();
  int best = 0;
  double best_mag = -1.0;
  for (size_t k = 1; k < n / 2; k++) {
    std::complex<double> acc = 0.0;
    const double step = -2.0 * M_PI * k / n;
    std::complex<double> rot(std::cos(step), std::sin(step)), ph = 1.0;
    for (size_t i = 0; i < n; i++) {
      acc += x[i] * ph;
      ph *= rot;
    }
    if (std::abs(acc) > best_mag) {
      best_mag = std::abs(acc);
      best = static_cast<int>(k);
    }
  }
  return best;
}

double SlaneyMel(double hz) {
  return hz < 1000.0 ? 3.0 * hz / 200.0
                     : 15.0 + 27.0 * std::log(hz / 1000.0) / std::log(6.4);
}
double SlaneyHz(double mel) {
  return mel < 15.0 ? 200.0 * mel / 3.0
                    : 1000.0 * std::pow(6.4, (mel - 15.0) / 27.0);
}

Waveform Sine(double freq, double seconds, int rate, double amp = 0.5) {
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(static_cast<size_t>(std::llround(seconds * rate)));
  for (size_t i = 0; i < w.samples.size(); i++)
    w.samples[i] = amp * std::sin(2.0 * M_PI * freq * i / rate);
  return w;
}

}  // namespace

TEST_CASE("load_wav: silence, stereo average, float, errors") {
  {
    std::vector<unsigned char> payload(44100 * 2, 0);
    Waveform w = ParseWav(MakeWav(1, 1, 44100, 16, payload), "silence");
    CHECK(w.sample_rate == 44100);
    REQUIRE(w.samples.size() == 44100);
    for (double s : w.samples) CHECK(s == 0.0);
  }
  {
    std::vector<unsigned char> payload;
    for (int i = 0; i < 100; i++) {
      PutU16(&payload, static_cast<uint16_t>(16384));
      PutU16(&payload, static_cast<uint16_t>(static_cast<int16_t>(-16384)));
    }
    Waveform w = ParseWav(MakeWav(1, 2, 16000, 16, payload), "stereo");
    REQUIRE(w.samples.size() == 100);
    for (double s : w.samples) CHECK(s == 0.0);
  }
  {
    std::vector<unsigned char> payload;
    const float vals[] = {0.25f, -0.75f, 1.0f};
    for (float v : vals) {
      uint32_t u;
      std::memcpy(&u, &v, 4);
      PutU32(&payload, u);
    }
    Waveform w = ParseWav(MakeWav(3, 1, 8000, 32, payload), "float");
    REQUIRE(w.samples.size() == 3);
    CHECK(w.samples[0] == 0.25);
    CHECK(w.samples[1] == -0.75);
  }
  {
    auto good = MakeWav(1, 1, 8000, 16, std::vector<unsigned char>(200, 0));
    std::vector<unsigned char> truncated(good.begin(), good.begin() + 30);
    CHECK_THROWS_AS(ParseWav(truncated, "trunc"), SedError);
    std::vector<unsigned char> short_data(good.begin(), good.end() - 50);
    CHECK_THROWS_AS(ParseWav(short_data, "short"), SedError);
    auto bits24 = MakeWav(1, 1, 8000, 24, std::vector<unsigned char>(30, 0));
    CHECK_THROWS_WITH_AS(ParseWav(bits24, "b24"),
                         doctest::Contains("unsupported encoding"), SedError);
    CHECK_THROWS_AS(LoadWav(TempPath("does-not-exist.wav")), SedError);
  }
}

TEST_CASE("wav write/read round trip through 16-bit PCM") {
  Waveform w = Sine(300.0, 0.1, 22050);
  const std::string path = TempPath("rt.wav");
  WriteWav(path, w);
  Waveform r = LoadWav(path);
  CHECK(r.sample_rate == 22050);
  REQUIRE(r.samples.size() == w.samples.size());
  for (size_t i = 0; i < w.samples.size(); i++)
    CHECK(std::abs(r.samples[i] - w.samples[i]) < 1.0 / 32767.0);
}

TEST_CASE("fix_length truncates or pads at the end") {
  Waveform w;
  w.sample_rate = 100;
  w.samples.resize(1200);
  for (size_t i = 0; i < w.samples.size(); i++) w.samples[i] = i + 1.0;
  Waveform a = FixLength(w, 10.0);
  REQUIRE(a.samples.size() == 1000);
  CHECK(a.samples.front() == 1.0);
  CHECK(a.samples.back() == 1000.0);

  w.samples.resize(1000);
  CHECK(FixLength(w, 10.0).samples == w.samples);

  w.samples.resize(700);
  Waveform b = FixLength(w, 10.0);
  REQUIRE(b.samples.size() == 1000);
  CHECK(b.samples[699] == 700.0);
  for (size_t i = 700; i < 1000; i++) CHECK(b.samples[i] == 0.0);
  CHECK_THROWS_AS(FixLength(w, 0.0), SedError);
}

TEST_CASE("resample: identity, DC invariance, tone frequency") {
  Waveform same = Sine(440.0, 0.05, 22050);
  CHECK(Resample(same, 22050).samples == same.samples);

  Waveform dc;
  dc.sample_rate = 44100;
  dc.samples.assign(44100, 1.0);
  Waveform dc_out = Resample(dc, 22050);
  CHECK(dc_out.sample_rate == 22050);
  CHECK(dc_out.samples.size() == 22050);
  double worst = 0.0;
  for (double s : dc_out.samples) worst = std::max(worst, std::abs(s - 1.0));
  CHECK(worst < 1e-3);

  Waveform tone = Sine(440.0, 0.2, 44100);
  Waveform down = Resample(tone, 22050);
  REQUIRE(down.samples.size() == 4410);
  // 0.2 s at either rate puts 440 Hz in bin 88.
  CHECK(PeakDftBin(tone.samples) == 88);
  CHECK(PeakDftBin(down.samples) == 88);

  // A non-integer ratio keeps DC as well.
  Waveform dc48;
  dc48.sample_rate = 48000;
  dc48.samples.assign(4800, 1.0);
  Waveform dc48_out = Resample(dc48, 22050);
  CHECK(dc48_out.samples.size() == 2205);
  worst = 0.0;
  for (double s : dc48_out.samples) worst = std::max(worst, std::abs(s - 1.0));
  CHECK(worst < 1e-3);
}

TEST_CASE("logmel: shape, floor, tone bin, scaling, determinism") {
  FeatureConfig cfg;
  CHECK(cfg.NumFrames() == 640);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 0.1);
  Waveform noise;
  noise.sample_rate = 22050;
  noise.samples.resize(220500);
  for (double &s : noise.samples) s = g(rng);
  MelFeatures f = ComputeLogMel(noise, cfg);
  CHECK(f.mel.NumRows() == 640);
  CHECK(f.mel.NumCols() == 64);
  CHECK(f.logmel.NumRows() == 640);
  CHECK(f.logmel.NumCols() == 64);
  for (size_t i = 0; i < f.mel.Values().size(); i++) {
    CHECK(f.mel.Values()[i] >= 0.0);
    CHECK(f.logmel.Values()[i] >= std::log(cfg.log_floor));
  }
  CHECK(ComputeLogMel(noise, cfg).logmel == f.logmel);

  // Monotone: logmel order follows mel order.
  for (size_t i = 1; i < f.mel.Values().size(); i++)
    if (f.mel.Values()[i] > f.mel.Values()[i - 1])
      CHECK(f.logmel.Values()[i] >= f.logmel.Values()[i - 1]);

  // Energy scales with alpha^2.
  for (double alpha : {0.3, 2.5}) {
    Waveform scaled = noise;
    for (double &s : scaled.samples) s *= alpha;
    MelFeatures fs = ComputeLogMel(scaled, cfg);
    double e0 = 0.0, e1 = 0.0;
    for (double x : f.mel.Values()) e0 += x * x;
    for (double x : fs.mel.Values()) e1 += x * x;
    CHECK(std::abs(e1 - alpha * alpha * e0) <= 1e-9 * alpha * alpha * e0);
  }

  Waveform zero;
  zero.sample_rate = 22050;
  zero.samples.assign(220500, 0.0);
  MelFeatures fz = ComputeLogMel(zero, cfg);
  for (double x : fz.logmel.Values()) CHECK(x == std::log(1e-10));

  Waveform tone = Sine(1000.0, 10.0, 22050);
  MelFeatures ft = ComputeLogMel(tone, cfg);
  std::vector<double> avg(64, 0.0);
  for (int t = 0; t < 640; t++)
    for (int m = 0; m < 64; m++) avg[m] += ft.mel(t, m);
  int argmax = static_cast<int>(std::max_element(avg.begin(), avg.end()) - avg.begin());
  // Oracle: centre frequencies from the mel-scale formula.
  const double top = SlaneyMel(11025.0);
  int nearest = 0;
  double best = 1e300;
  for (int m = 0; m < 64; m++) {
    double centre = SlaneyHz(top * (m + 1) / 65.0);
    if (std::abs(centre - 1000.0) < best) {
      best = std::abs(centre - 1000.0);
      nearest = m;
    }
  }
  CHECK(argmax == nearest);
  CHECK(MelCenterFrequencies(cfg)[nearest] == doctest::Approx(SlaneyHz(top * (nearest + 1) / 65.0)));

  Waveform wrong = Sine(1000.0, 9.0, 22050);
  CHECK_THROWS_AS(ComputeLogMel(wrong, cfg), SedError);
  Waveform wrong_rate = Sine(1000.0, 10.0, 16000);
  CHECK_THROWS_AS(ComputeLogMel(wrong_rate, cfg), SedError);
}

TEST_CASE("extract features from a 44.1 kHz 12 s file") {
  Waveform w = Sine(2000.0, 12.0, 44100, 0.3);
  const std::string path = TempPath("long.wav");
  WriteWav(path, w);
  FeatureConfig cfg;
  MelFeatures f = ExtractFeatures(path, cfg);
  CHECK(f.logmel.NumRows() == 640);
  CHECK(f.logmel.NumCols() == 64);
}
