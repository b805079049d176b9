// src/data/corpus.h

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

#ifndef SED_DATA_CORPUS_H_
#define SED_DATA_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "base/events.h"

namespace sed {

struct StrongEntry {
  std::string filename;
  EventList events;
};

struct WeakEntry {
  std::string filename;
  std::vector<std::string> tags;
};

/// Training manifests of a corpus directory.  Audio lives in
/// <root>/audio/<filename>.
struct CorpusManifest {
  std::string root;
  std::vector<StrongEntry> strong;
  std::vector<WeakEntry> weak;
  std::vector<std::string> unlabeled;
  std::vector<std::string> label_set;  // sorted union of all labels

  std::string AudioPath(const std::string &filename) const;
};

/// filename TAB onset TAB offset TAB label.  Rows of one file are grouped
/// per filename in order of first appearance.  A leading header row is
/// skipped.
std::vector<StrongEntry> ReadStrongTsv(const std::string &path);
void WriteStrongTsv(const std::string &path,
                    const std::vector<StrongEntry> &entries);

/// filename TAB comma-separated labels.
std::vector<WeakEntry> ReadWeakTsv(const std::string &path);
void WriteWeakTsv(const std::string &path, const std::vector<WeakEntry> &entries);

/// One filename per line.
std::vector<std::string> ReadFileList(const std::string &path);
void WriteFileList(const std::string &path,
                   const std::vector<std::string> &files);

/// Reads strong.tsv, weak.tsv and unlabeled.tsv from dir.
CorpusManifest LoadManifest(const std::string &dir);

/// Sorted union of the labels in the given entries.
std::vector<std::string> CollectLabels(const std::vector<StrongEntry> &strong,
                                       const std::vector<WeakEntry> &weak);

}  // namespace sed

#endif  // SED_DATA_CORPUS_H_
