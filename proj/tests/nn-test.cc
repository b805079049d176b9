// tests/nn-test.cc

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
#include <random>
#include <sstream>

#include "nn/adam.h"
#include "nn/grad-check.h"
#include "nn/nn-loss.h"
#include "nn/nnet.h"

using namespace sed;
using namespace sed::nn;

namespace {

Tensor RandomTensor(const Shape &shape, std::mt19937_64 &rng, double lo = -1.0,
                    double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(shape);
  for (size_t i = 0; i < t.Size(); i++) t[i] = u(rng);
  return t;
}

void RandomizeParams(Nnet *net, std::mt19937_64 &rng, double scale = 0.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (ParamRef &p : net->Params())
    for (double &v : *p.value) v = u(rng);
}

// Loss = sum(out * r) for a fixed random r, so dLoss/dOut = r.
LossFn ProjectionLoss(const Shape &out_shape, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tensor r = RandomTensor(out_shape, rng);
  return [r](const Tensor &out, Tensor *grad) {
    double s = 0.0;
    for (size_t i = 0; i < out.Size(); i++) s += out[i] * r[i];
    *grad = r;
    return s;
  };
}

LossFn MseLoss(const Tensor &target) {
  return [target](const Tensor &out, Tensor *grad) {
    return Mse(out, target, grad);
  };
}

double CheckSingle(std::unique_ptr<Component> c, const Shape &in_shape,
                   uint64_t seed, bool training = false) {
  std::mt19937_64 rng(seed);
  Nnet net;
  net.Append(std::move(c));
  RandomizeParams(&net, rng);
  Tensor x = RandomTensor(in_shape, rng);
  GradCheckOptions opts;
  opts.h = 1e-5;
  opts.training = training;
  opts.seed = seed;
  return GradCheck(&net, x, ProjectionLoss(net.OutputShape(in_shape), seed + 7),
                   opts);
}

double Sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TEST_CASE("forward: empty stack, sigmoid, identity conv") {
  std::mt19937_64 rng(1);
  Tensor x = RandomTensor({2, 3, 5, 4}, rng);
  Nnet empty;
  Tensor y;
  empty.Propagate(x, &y, false);
  CHECK(y == x);

  Nnet sig;
  sig.Append(std::make_unique<Sigmoid>());
  Tensor zero({1, 1, 1, 3});
  sig.Propagate(zero, &y, false);
  for (size_t i = 0; i < y.Size(); i++) CHECK(y[i] == 0.5);

  auto conv = std::make_unique<Conv2d>(3, 3, 3, 3);
  // weight is out x (in*3*3); the centre tap of channel c feeds output c.
  for (int c = 0; c < 3; c++) conv->Weight()[c * 27 + c * 9 + 4] = 1.0;
  Nnet idn;
  idn.Append(std::move(conv));
  idn.Propagate(x, &y, false);
  CHECK(y == x);
}

TEST_CASE("conv2d and dense match direct loop oracles") {
  std::mt19937_64 rng(2);
  const int n = 2, cin = 3, cout = 4, h = 6, w = 5, kh = 3, kw = 5;
  Conv2d conv(cin, cout, kh, kw);
  for (double &v : conv.Weight()) v = std::uniform_real_distribution<>(-1, 1)(rng);
  for (double &v : conv.Bias()) v = std::uniform_real_distribution<>(-1, 1)(rng);
  Tensor x = RandomTensor({n, cin, h, w}, rng), y;
  conv.Propagate(x, &y, false, nullptr);
  double worst = 0.0;
  for (int b = 0; b < n; b++)
    for (int o = 0; o < cout; o++)
      for (int i = 0; i < h; i++)
        for (int j = 0; j < w; j++) {
          double acc = conv.Bias()[o];
          for (int c = 0; c < cin; c++)
            for (int dy = 0; dy < kh; dy++)
              for (int dx = 0; dx < kw; dx++) {
                int si = i + dy - kh / 2, sj = j + dx - kw / 2;
                if (si < 0 || si >= h || sj < 0 || sj >= w) continue;
                acc += conv.Weight()[((o * cin + c) * kh + dy) * kw + dx] *
                       x.At(b, c, si, sj);
              }
          worst = std::max(worst, std::abs(acc - y.At(b, o, i, j)));
        }
  CHECK(worst < 1e-12);

  Dense dense(cin, cout);
  for (double &v : dense.Weight()) v = std::uniform_real_distribution<>(-1, 1)(rng);
  for (double &v : dense.Bias()) v = std::uniform_real_distribution<>(-1, 1)(rng);
  dense.Propagate(x, &y, false, nullptr);
  worst = 0.0;
  for (int b = 0; b < n; b++)
    for (int o = 0; o < cout; o++)
      for (int i = 0; i < h; i++)
        for (int j = 0; j < w; j++) {
          double acc = dense.Bias()[o];
          for (int c = 0; c < cin; c++)
            acc += dense.Weight()[o * cin + c] * x.At(b, c, i, j);
          worst = std::max(worst, std::abs(acc - y.At(b, o, i, j)));
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("context gate: zero weights halve, saturated bias passes, oracle") {
  std::mt19937_64 rng(3);
  const int c = 4;
  Tensor x = RandomTensor({2, c, 3, 5}, rng), y;
  ContextGate gate(c);
  gate.Propagate(x, &y, false, nullptr);
  for (size_t i = 0; i < x.Size(); i++) CHECK(y[i] == x[i] / 2.0);

  std::fill(gate.Bias().begin(), gate.Bias().end(), 50.0);
  gate.Propagate(x, &y, false, nullptr);
  for (size_t i = 0; i < x.Size(); i++) CHECK(std::abs(y[i] - x[i]) < 1e-15);

  for (double &v : gate.Weight()) v = std::uniform_real_distribution<>(-2, 2)(rng);
  for (double &v : gate.Bias()) v = std::uniform_real_distribution<>(-1, 1)(rng);
  gate.Propagate(x, &y, false, nullptr);
  double worst = 0.0;
  for (int b = 0; b < 2; b++)
    for (int k = 0; k < c; k++)
      for (int i = 0; i < 3; i++)
        for (int j = 0; j < 5; j++) {
          double z = gate.Bias()[k];
          for (int m = 0; m < c; m++)
            z += gate.Weight()[k * c + m] * x.At(b, m, i, j);
          worst = std::max(worst, std::abs(x.At(b, k, i, j) * Sig(z) - y.At(b, k, i, j)));
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("bce and mse closed forms and oracles") {
  Tensor p({1, 1, 1, 1}, 0.5), y({1, 1, 1, 1}, 1.0);
  CHECK(Bce(p, y) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  Tensor p2({1, 1, 1, 4}), y2({1, 1, 1, 4});
  const double vals[] = {0.0, 1.0, 1.0, 0.0};
  for (int i = 0; i < 4; i++) p2[i] = y2[i] = vals[i];
  CHECK(Bce(p2, y2) <= 1e-6);

  std::mt19937_64 rng(4);
  Tensor pr = RandomTensor({3, 2, 4, 5}, rng, 0.01, 0.99);
  Tensor yr = RandomTensor({3, 2, 4, 5}, rng, 0.0, 1.0);
  double ref = 0.0;
  for (size_t i = 0; i < pr.Size(); i++)
    ref -= yr[i] * std::log(pr[i]) + (1 - yr[i]) * std::log(1 - pr[i]);
  ref /= pr.Size();
  Tensor g;
  CHECK(std::abs(Bce(pr, yr, &g) - ref) < 1e-12);
  // Gradient against finite differences of the scalar loss.
  for (size_t i : {size_t(0), size_t(17), size_t(101)}) {
    Tensor a = pr, b = pr;
    a[i] += 1e-6;
    b[i] -= 1e-6;
    CHECK(RelativeError(g[i], (Bce(a, yr) - Bce(b, yr)) / 2e-6) < 1e-5);
  }

  Tensor a({1, 1, 1, 2}), b({1, 1, 1, 2});
  a[0] = 1.0;
  CHECK(Mse(a, b) == 0.5);
  CHECK(Mse(pr, pr) == 0.0);
  double mref = 0.0;
  for (size_t i = 0; i < pr.Size(); i++) mref += (pr[i] - yr[i]) * (pr[i] - yr[i]);
  CHECK(std::abs(Mse(pr, yr) - mref / pr.Size()) < 1e-12);

  CHECK_THROWS_AS(Bce(pr, a), SedError);
  CHECK_THROWS_AS(Mse(pr, a), SedError);
}

TEST_CASE("adam: zero gradient, first step, quadratic descent") {
  std::vector<double> x = {1.0, -2.0, 3.0}, g(3, 0.0);
  Adam adam;
  adam.Step({{&x, &g}}, 0.01);
  CHECK(x == std::vector<double>{1.0, -2.0, 3.0});
  CHECK(adam.StepCount() == 1);

  std::vector<double> x1 = {0.0, 0.0, 0.0}, g1 = {2.5, -0.75, 40.0};
  Adam first;
  first.Step({{&x1, &g1}}, 0.05);
  CHECK(std::abs(x1[0] + 0.05) < 1e-9);
  CHECK(std::abs(x1[1] - 0.05) < 1e-9);
  CHECK(std::abs(x1[2] + 0.05) < 1e-9);
  // For tiny gradients epsilon is visible: the step is lr*|g|/(|g|+eps).
  std::vector<double> x2 = {0.0}, g2 = {-1e-3};
  Adam small;
  small.Step({{&x2, &g2}}, 0.05);
  CHECK(x2[0] == doctest::Approx(0.05 * 1e-3 / (1e-3 + 1e-8)).epsilon(1e-12));

  std::vector<double> q = {0.0}, dq = {0.0};
  Adam opt;
  for (int i = 0; i < 200; i++) {
    dq[0] = 2.0 * (q[0] - 3.0);
    opt.Step({{&q, &dq}}, 0.1);
  }
  CHECK(std::abs(q[0] - 3.0) < 0.1);
}

TEST_CASE("grad check: dense + mse is exact to roundoff") {
  std::mt19937_64 rng(5);
  Nnet net;
  net.Append(std::make_unique<Dense>(4, 3));
  RandomizeParams(&net, rng);
  Tensor x = RandomTensor({2, 4, 3, 2}, rng);
  Tensor target = RandomTensor(net.OutputShape(x.GetShape()), rng);
  GradCheckOptions opts;
  opts.h = 1e-4;
  CHECK(GradCheck(&net, x, MseLoss(target), opts) < 1e-6);
}

TEST_CASE("grad check: every layer type") {
  CHECK(CheckSingle(std::make_unique<Conv2d>(2, 3, 3, 3), {2, 2, 5, 6}, 10) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Conv2d>(1, 2, 5, 1), {1, 1, 7, 3}, 11) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Dense>(3, 4), {2, 3, 4, 2}, 12) < 1e-4);
  CHECK(CheckSingle(std::make_unique<ContextGate>(3), {2, 3, 4, 5}, 13) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Sigmoid>(), {2, 2, 3, 3}, 14) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Pool2d>(true, 2, 2), {2, 2, 4, 6}, 15) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Pool2d>(true, 1, 4), {1, 3, 3, 8}, 16) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Pool2d>(false, 2, 3), {2, 2, 4, 6}, 17) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Pool2d>(false, 0, 0), {2, 3, 4, 6}, 18) < 1e-4);
  CHECK(CheckSingle(std::make_unique<BatchNorm>(3), {3, 3, 2, 4}, 19, true) < 1e-4);
  CHECK(CheckSingle(std::make_unique<BatchNorm>(3), {3, 3, 2, 4}, 20, false) < 1e-4);
  // A fixed dropout mask is linear, so even training mode checks out.
  CHECK(CheckSingle(std::make_unique<Dropout>(0.3), {2, 2, 3, 4}, 21, true) < 1e-4);
  CHECK(CheckSingle(std::make_unique<Dropout>(0.3), {2, 2, 3, 4}, 22, false) < 1e-4);
}

TEST_CASE("grad check: relu away from its kink") {
  std::mt19937_64 rng(6);
  Tensor x;
  do {
    x = RandomTensor({2, 3, 4, 4}, rng);
  } while (std::any_of(x.Values().begin(), x.Values().end(),
                       [](double v) { return std::abs(v) < 1e-3; }));
  Nnet net;
  net.Append(std::make_unique<Relu>());
  GradCheckOptions opts;
  CHECK(GradCheck(&net, x, ProjectionLoss(x.GetShape(), 1), opts) < 1e-4);
}

TEST_CASE("grad check: two-layer conv + gate network") {
  std::mt19937_64 rng(7);
  Nnet net;
  net.Append(std::make_unique<Conv2d>(1, 4, 3, 3));
  net.Append(std::make_unique<ContextGate>(4));
  net.Append(std::make_unique<Conv2d>(4, 3, 3, 3));
  net.Append(std::make_unique<ContextGate>(3));
  net.Append(std::make_unique<Pool2d>(true, 1, 2));
  net.Append(std::make_unique<Dense>(3, 2));
  net.Append(std::make_unique<Sigmoid>());
  RandomizeParams(&net, rng);
  Tensor x = RandomTensor({2, 1, 6, 4}, rng);
  Tensor y = RandomTensor(net.OutputShape(x.GetShape()), rng, 0.0, 1.0);
  GradCheckOptions opts;
  CHECK(GradCheck(&net, x,
                  [&](const Tensor &out, Tensor *g) { return Bce(out, y, g); },
                  opts) < 1e-4);
}

TEST_CASE("dropout: identity at inference, unbiased in training") {
  std::mt19937_64 rng(8);
  Tensor x = RandomTensor({1, 1, 100, 200}, rng, 0.5, 1.5);
  Dropout d(0.35);
  Tensor y;
  d.Propagate(x, &y, false, &rng);
  CHECK(y == x);

  double sum_in = 0.0, sum_out = 0.0;
  size_t zeros = 0;
  for (int rep = 0; rep < 5; rep++) {
    d.Propagate(x, &y, true, &rng);
    for (size_t i = 0; i < x.Size(); i++) {
      sum_in += x[i];
      sum_out += y[i];
      zeros += (y[i] == 0.0);
    }
  }
  CHECK(std::abs(sum_out / sum_in - 1.0) < 0.02);
  CHECK(std::abs(zeros / (5.0 * x.Size()) - 0.35) < 0.02);
}

TEST_CASE("forward determinism and shape errors name the layer") {
  std::mt19937_64 rng(9);
  Nnet net;
  net.Append(std::make_unique<Conv2d>(1, 2, 3, 3));
  net.Append(std::make_unique<Dropout>(0.5));
  net.Append(std::make_unique<Pool2d>(true, 2, 2));
  net.InitParams(3);
  Tensor x = RandomTensor({1, 1, 4, 4}, rng), a, b, c;
  net.Propagate(x, &a, true, 42);
  net.Propagate(x, &b, true, 42);
  net.Propagate(x, &c, true, 43);
  CHECK(a == b);
  CHECK(!(a == c));

  Tensor bad({1, 2, 4, 4});
  CHECK_THROWS_WITH_AS(net.Propagate(bad, &a, false),
                       doctest::Contains("layer 0 (conv2d 1 2 3 3)"), SedError);
  Tensor odd({1, 1, 5, 4});
  CHECK_THROWS_WITH_AS(net.Propagate(odd, &a, false),
                       doctest::Contains("layer 2 (max_pool2d 2 2)"), SedError);
}

TEST_CASE("checkpoint round trip is bit exact") {
  Nnet net;
  net.Append(std::make_unique<Conv2d>(1, 3, 3, 3));
  net.Append(std::make_unique<BatchNorm>(3));
  net.Append(std::make_unique<ContextGate>(3));
  net.Append(std::make_unique<Pool2d>(true, 1, 4));
  net.Append(std::make_unique<Dropout>(0.35));
  net.Append(std::make_unique<Pool2d>(false, 0, 0));
  net.Append(std::make_unique<Dense>(3, 2));
  net.Append(std::make_unique<Sigmoid>());
  net.InitParams(77);
  std::mt19937_64 rng(10);
  Tensor x = RandomTensor({2, 1, 8, 8}, rng), y0, y1;
  net.Propagate(x, &y0, true, 5);  // moves batch-norm running stats

  std::stringstream ss;
  net.Write(ss);
  Nnet back = Nnet::Read(ss);
  CHECK(back.Architecture() == net.Architecture());
  CHECK(back.ArchitectureHash() == net.ArchitectureHash());
  auto pa = net.Params(), pb = back.Params();
  REQUIRE(pa.size() == pb.size());
  for (size_t i = 0; i < pa.size(); i++) CHECK(*pa[i].value == *pb[i].value);
  net.Propagate(x, &y0, false);
  back.Propagate(x, &y1, false);
  CHECK(y0 == y1);

  std::string bytes = ss.str();
  std::string corrupt = bytes;
  corrupt[0] = 'X';
  std::stringstream bad_magic(corrupt);
  CHECK_THROWS_AS(Nnet::Read(bad_magic), SedError);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 9));
  CHECK_THROWS_AS(Nnet::Read(truncated), SedError);
  std::string hashed = bytes;
  hashed[12] ^= 1;
  std::stringstream bad_hash(hashed);
  CHECK_THROWS_WITH_AS(Nnet::Read(bad_hash), doctest::Contains("hash"), SedError);

  Nnet copy = net;
  (*copy.Params()[0].value)[0] += 1.0;
  CHECK((*copy.Params()[0].value)[0] != (*net.Params()[0].value)[0]);
}
