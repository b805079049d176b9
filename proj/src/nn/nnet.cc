// src/nn/nnet.cc

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

#include "nn/nnet.h"

#include <cstring>
#include <istream>
#include <ostream>
#include <random>

namespace sed {
namespace nn {

namespace {

const char kMagic[8] = {'S', 'E', 'D', 'N', 'N', 'E', 'T', '\0'};
const uint32_t kVersion = 1;

template <typename T>
void WritePod(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::istream &is) {
  T v;
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) Fail("checkpoint: unexpected end of data");
  return v;
}

void WriteArray(std::ostream &os, const std::vector<double> &v) {
  WritePod<uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char *>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void ReadArray(std::istream &is, std::vector<double> *v,
               const std::string &layer) {
  const uint64_t n = ReadPod<uint64_t>(is);
  if (n != v->size())
    Fail("checkpoint: layer '", layer, "' expects an array of ", v->size(),
         " values, file has ", n);
  is.read(reinterpret_cast<char *>(v->data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) Fail("checkpoint: unexpected end of data");
}

}  // namespace

uint64_t Fnv1a64(const std::string &s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Nnet &Nnet::operator=(const Nnet &other) {
  if (this == &other) return *this;
  components_.clear();
  for (const auto &c : other.components_) components_.push_back(c->Copy());
  activations_.clear();
  return *this;
}

Shape Nnet::OutputShape(const Shape &in) const {
  Shape s = in;
  for (size_t i = 0; i < components_.size(); i++) {
    try {
      s = components_[i]->OutputShape(s);
    } catch (const SedError &e) {
      Fail("layer ", i, " (", components_[i]->Describe(), "): ", e.what());
    }
  }
  return s;
}

void Nnet::Propagate(const Tensor &in, Tensor *out, bool training,
                     uint64_t seed) {
  OutputShape(in.GetShape());
  if (components_.empty()) {
    *out = in;
    return;
  }
  std::mt19937_64 rng(seed);
  activations_.resize(components_.size() + 1);
  const Tensor *cur = &in;
  for (size_t i = 0; i < components_.size(); i++) {
    Tensor *next = (i + 1 == components_.size()) ? out : &activations_[i];
    components_[i]->Propagate(*cur, next, training, &rng);
    cur = next;
  }
}

void Nnet::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  Tensor a = out_diff, b;
  for (size_t i = components_.size(); i-- > 0;) {
    components_[i]->Backpropagate(a, &b);
    std::swap(a, b);
  }
  if (in_diff) *in_diff = std::move(a);
}

std::vector<ParamRef> Nnet::Params() {
  std::vector<ParamRef> all;
  for (auto &c : components_)
    for (const ParamRef &p : c->Params()) all.push_back(p);
  return all;
}

size_t Nnet::NumParams() {
  size_t n = 0;
  for (const ParamRef &p : Params()) n += p.value->size();
  return n;
}

void Nnet::ZeroGrad() {
  for (ParamRef &p : Params()) std::fill(p.grad->begin(), p.grad->end(), 0.0);
}

void Nnet::InitParams(uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto &c : components_) c->InitParams(&rng);
}

std::string Nnet::Architecture() const {
  std::string s;
  for (const auto &c : components_) s += c->Describe() + "\n";
  return s;
}

uint64_t Nnet::ArchitectureHash() const { return Fnv1a64(Architecture()); }

void Nnet::Write(std::ostream &os) const {
  os.write(kMagic, sizeof(kMagic));
  WritePod<uint32_t>(os, kVersion);
  WritePod<uint64_t>(os, ArchitectureHash());
  WritePod<uint32_t>(os, static_cast<uint32_t>(components_.size()));
  for (const auto &c : components_) {
    const std::string d = c->Describe();
    WritePod<uint32_t>(os, static_cast<uint32_t>(d.size()));
    os.write(d.data(), static_cast<std::streamsize>(d.size()));
    // Params() and Buffers() are non-const only to expose mutable pointers.
    Component &mc = const_cast<Component &>(*c);
    for (const ParamRef &p : mc.Params()) WriteArray(os, *p.value);
    for (std::vector<double> *b : mc.Buffers()) WriteArray(os, *b);
  }
  if (!os) Fail("checkpoint: write failed");
}

Nnet Nnet::Read(std::istream &is) {
  char magic[sizeof(kMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    Fail("checkpoint: bad magic, not a network file");
  const uint32_t version = ReadPod<uint32_t>(is);
  if (version != kVersion) Fail("checkpoint: unsupported version ", version);
  const uint64_t hash = ReadPod<uint64_t>(is);
  const uint32_t n = ReadPod<uint32_t>(is);
  Nnet net;
  for (uint32_t i = 0; i < n; i++) {
    const uint32_t len = ReadPod<uint32_t>(is);
    if (len > 4096) Fail("checkpoint: corrupt component descriptor");
    std::string d(len, '\0');
    is.read(d.data(), len);
    if (!is) Fail("checkpoint: unexpected end of data");
    std::unique_ptr<Component> c = NewComponent(d);
    for (ParamRef &p : c->Params()) ReadArray(is, p.value, d);
    for (std::vector<double> *b : c->Buffers()) ReadArray(is, b, d);
    net.Append(std::move(c));
  }
  if (net.ArchitectureHash() != hash)
    Fail("checkpoint: architecture hash mismatch");
  return net;
}

}  // namespace nn
}  // namespace sed
