// src/base/events.h

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

#ifndef SED_BASE_EVENTS_H_
#define SED_BASE_EVENTS_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "base/sed-common.h"

namespace sed {

/// A labelled time interval in seconds, onset < offset.
struct Event {
  std::string label;
  double onset = 0.0;
  double offset = 0.0;

  double Duration() const { return offset - onset; }
  bool operator==(const Event &o) const {
    return label == o.label && onset == o.onset && offset == o.offset;
  }
};

typedef std::vector<Event> EventList;

/// Frames [begin, end) whose centre time t * frame_seconds lies in
/// [onset, offset), clipped to [0, num_frames).
inline std::pair<int32, int32> EventFrameRange(const Event &e,
                                               double frame_seconds,
                                               int32 num_frames) {
  auto first_at_or_after = [&](double sec) {
    double f = std::ceil(sec / frame_seconds - 1e-9);
    return static_cast<int32>(std::clamp(f, 0.0, static_cast<double>(num_frames)));
  };
  return {first_at_or_after(e.onset), first_at_or_after(e.offset)};
}

/// splitmix64 finalizer; combines a base seed with a stream index so that
/// parallel work items get independent, schedule-free seeds.
inline uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace sed

#endif  // SED_BASE_EVENTS_H_
