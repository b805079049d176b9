// src/data/corpus.cc

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

#include "data/corpus.h"

#include <algorithm>
#include <filesystem>
#include <set>

#include "base/text-utils.h"

namespace sed {

std::string CorpusManifest::AudioPath(const std::string &filename) const {
  return (std::filesystem::path(root) / "audio" / filename).string();
}

namespace {

bool IsHeader(const std::vector<std::string> &f) {
  return !f.empty() && f[0] == "filename";
}

void CheckLabel(const std::string &label, const std::string &path,
                size_t line) {
  if (label.empty() ||
      label.find_first_of(" \t,/\\") != std::string::npos)
    Fail(path, ":", line, ": invalid event label '", label, "'");
}

}  // namespace

std::vector<StrongEntry> ReadStrongTsv(const std::string &path) {
  std::vector<StrongEntry> out;
  std::map<std::string, size_t> index;
  std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); i++) {
    const size_t line = i + 1;
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> f = SplitString(lines[i], '\t');
    if (i == 0 && IsHeader(f)) continue;
    if (f.size() != 4)
      Fail(path, ":", line, ": expected 4 tab-separated fields, got ",
           f.size());
    Event e;
    if (!ParseDouble(f[1], &e.onset) || !ParseDouble(f[2], &e.offset))
      Fail(path, ":", line, ": onset/offset must be numbers");
    if (!(e.onset >= 0.0 && e.onset < e.offset))
      Fail(path, ":", line, ": onset ", f[1], " must be >= 0 and < offset ",
           f[2]);
    e.label = f[3];
    CheckLabel(e.label, path, line);
    auto it = index.find(f[0]);
    if (it == index.end()) {
      it = index.emplace(f[0], out.size()).first;
      out.push_back({f[0], {}});
    }
    out[it->second].events.push_back(e);
  }
  return out;
}

void WriteStrongTsv(const std::string &path,
                    const std::vector<StrongEntry> &entries) {
  std::string text;
  for (const StrongEntry &s : entries)
    for (const Event &e : s.events)
      text += s.filename + "\t" + FormatDouble(e.onset) + "\t" +
              FormatDouble(e.offset) + "\t" + e.label + "\n";
  WriteTextFile(path, text);
}

std::vector<WeakEntry> ReadWeakTsv(const std::string &path) {
  std::vector<WeakEntry> out;
  std::set<std::string> seen;
  std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); i++) {
    const size_t line = i + 1;
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> f = SplitString(lines[i], '\t');
    if (i == 0 && IsHeader(f)) continue;
    if (f.size() != 2)
      Fail(path, ":", line, ": expected filename<TAB>labels");
    if (!seen.insert(f[0]).second)
      Fail(path, ":", line, ": duplicate filename '", f[0], "'");
    WeakEntry w{f[0], SplitString(f[1], ',')};
    for (const std::string &t : w.tags) CheckLabel(t, path, line);
    std::sort(w.tags.begin(), w.tags.end());
    if (std::adjacent_find(w.tags.begin(), w.tags.end()) != w.tags.end())
      Fail(path, ":", line, ": repeated label");
    out.push_back(std::move(w));
  }
  return out;
}

void WriteWeakTsv(const std::string &path,
                  const std::vector<WeakEntry> &entries) {
  std::string text;
  for (const WeakEntry &w : entries) {
    text += w.filename + "\t";
    for (size_t i = 0; i < w.tags.size(); i++)
      text += (i ? "," : "") + w.tags[i];
    text += "\n";
  }
  WriteTextFile(path, text);
}

std::vector<std::string> ReadFileList(const std::string &path) {
  std::vector<std::string> out;
  std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); i++) {
    std::string s = Trim(lines[i]);
    if (s.empty() || (i == 0 && s == "filename")) continue;
    if (s.find('\t') != std::string::npos)
      Fail(path, ":", i + 1, ": expected a single filename");
    out.push_back(s);
  }
  return out;
}

void WriteFileList(const std::string &path,
                   const std::vector<std::string> &files) {
  std::string text;
  for (const std::string &f : files) text += f + "\n";
  WriteTextFile(path, text);
}

std::vector<std::string> CollectLabels(const std::vector<StrongEntry> &strong,
                                       const std::vector<WeakEntry> &weak) {
  std::set<std::string> labels;
  for (const StrongEntry &s : strong)
    for (const Event &e : s.events) labels.insert(e.label);
  for (const WeakEntry &w : weak) labels.insert(w.tags.begin(), w.tags.end());
  return {labels.begin(), labels.end()};
}

CorpusManifest LoadManifest(const std::string &dir) {
  namespace fs = std::filesystem;
  CorpusManifest m;
  m.root = dir;
  m.strong = ReadStrongTsv((fs::path(dir) / "strong.tsv").string());
  m.weak = ReadWeakTsv((fs::path(dir) / "weak.tsv").string());
  m.unlabeled = ReadFileList((fs::path(dir) / "unlabeled.tsv").string());
  std::set<std::string> names;
  auto claim = [&](const std::string &name) {
    if (!names.insert(name).second)
      Fail(dir, ": clip '", name, "' is listed more than once");
  };
  for (const StrongEntry &s : m.strong) claim(s.filename);
  for (const WeakEntry &w : m.weak) claim(w.filename);
  for (const std::string &u : m.unlabeled) claim(u);
  m.label_set = CollectLabels(m.strong, m.weak);
  return m;
}

}  // namespace sed
