// src/base/text-utils.h

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

#ifndef SED_BASE_TEXT_UTILS_H_
#define SED_BASE_TEXT_UTILS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "base/sed-common.h"

namespace sed {

std::vector<std::string> SplitString(std::string_view s, char delim);

/// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Trim(std::string_view s);

/// Strict conversions: the whole string must parse, else false.
bool ParseDouble(std::string_view s, double *out);
bool ParseInt(std::string_view s, int64 *out);

/// Shortest decimal representation that round-trips exactly.
std::string FormatDouble(double v);

/// Fixed-point with the given number of decimals.
std::string FormatFixed(double v, int decimals);

/// Reads a text file into lines (no trailing '\n', '\r' stripped).
/// Throws SedError if the file cannot be opened.
std::vector<std::string> ReadLines(const std::string &path);

/// Writes the text to path, throwing SedError on failure.
void WriteTextFile(const std::string &path, const std::string &text);

/// key=value lines; '#' starts a comment; blank lines ignored.
/// Returns (key, value, line number) triples in file order.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int32 line;
};
std::vector<KeyValueEntry> ReadKeyValueFile(const std::string &path);

}  // namespace sed

#endif  // SED_BASE_TEXT_UTILS_H_
