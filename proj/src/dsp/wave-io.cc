// src/dsp/wave-io.cc

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

#include "dsp/wave-io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace sed {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t ReadU32(const unsigned char *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const unsigned char *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<unsigned char> *out, uint32_t v) {
  for (int i = 0; i < 4; i++) out->push_back((v >> (8 * i)) & 0xFF);
}

void PutU16(std::vector<unsigned char> *out, uint16_t v) {
  out->push_back(v & 0xFF);
  out->push_back((v >> 8) & 0xFF);
}

}  // namespace

Waveform ParseWav(const std::vector<unsigned char> &bytes,
                  const std::string &name) {
  const size_t n = bytes.size();
  if (n < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    Fail(name, ": not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const unsigned char *data = nullptr;
  size_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= n) {
    const unsigned char *hdr = bytes.data() + pos;
    uint32_t size = ReadU32(hdr + 4);
    size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || body + size > n) Fail(name, ": truncated fmt chunk");
      const unsigned char *f = bytes.data() + body;
      format = ReadU16(f);
      channels = ReadU16(f + 2);
      rate = ReadU32(f + 4);
      bits = ReadU16(f + 14);
      if (format == kFormatExtensible) {
        if (size < 40) Fail(name, ": truncated WAVE_FORMAT_EXTENSIBLE header");
        // The first two bytes of the sub-format GUID carry the real tag.
        format = ReadU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (body + size > n) Fail(name, ": truncated data chunk");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) Fail(name, ": missing fmt chunk");
  if (data == nullptr) Fail(name, ": missing data chunk");
  if (channels == 0) Fail(name, ": zero channels");
  if (rate == 0) Fail(name, ": zero sample rate");

  int bytes_per_sample = 0;
  if (format == kFormatPcm && bits == 16) {
    bytes_per_sample = 2;
  } else if (format == kFormatFloat && bits == 32) {
    bytes_per_sample = 4;
  } else {
    Fail(name, ": unsupported encoding (format ", format, ", ", bits,
         " bits); expected 16-bit PCM or 32-bit float");
  }
  const size_t frame_bytes = static_cast<size_t>(bytes_per_sample) * channels;
  const size_t num_frames = data_size / frame_bytes;

  Waveform wave;
  wave.sample_rate = static_cast<int32>(rate);
  wave.samples.resize(num_frames);
  for (size_t i = 0; i < num_frames; i++) {
    const unsigned char *frame = data + i * frame_bytes;
    double sum = 0.0;
    for (int c = 0; c < channels; c++) {
      const unsigned char *s = frame + c * bytes_per_sample;
      if (bytes_per_sample == 2) {
        sum += static_cast<int16_t>(ReadU16(s)) / 32768.0;
      } else {
        uint32_t u = ReadU32(s);
        float x;
        std::memcpy(&x, &u, 4);
        sum += x;
      }
    }
    wave.samples[i] = sum / channels;
    if (!std::isfinite(wave.samples[i]))
      Fail(name, ": non-finite sample at frame ", i);
  }
  return wave;
}

Waveform LoadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open ", path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  return ParseWav(bytes, path);
}

std::vector<unsigned char> EncodeWav16(const Waveform &wave) {
  SED_ASSERT(wave.sample_rate > 0);
  const uint32_t data_size = static_cast<uint32_t>(wave.samples.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(&out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(&out, 16);
  PutU16(&out, kFormatPcm);
  PutU16(&out, 1);
  PutU32(&out, static_cast<uint32_t>(wave.sample_rate));
  PutU32(&out, static_cast<uint32_t>(wave.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(&out, data_size);
  for (double x : wave.samples) {
    double c = std::clamp(x, -1.0, 1.0);
    long q = std::lround(c * 32767.0);
    PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  return out;
}

void WriteWav(const std::string &path, const Waveform &wave) {
  std::vector<unsigned char> bytes = EncodeWav16(wave);
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot write ", path);
  os.write(reinterpret_cast<const char *>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) Fail("error writing ", path);
}

}  // namespace sed
