// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random streams. Every consumer derives its own stream from
// (run seed, purpose, indices), so serial and per-node-parallel execution
// draw identical values. Samplers are hand-rolled rather than taken from
// <random> distributions, whose output is implementation-defined.

#ifndef DPADMM_RNG_HPP_
#define DPADMM_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace dpadmm {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream purposes; folded into derived seeds so distinct uses of one run
// seed never share a stream.
enum class StreamKind : uint64_t {
  kInit = 1,      // initial primal vectors
  kNoise = 2,     // dual perturbation noise
  kShuffle = 3,   // data partitioning
  kData = 4,      // synthetic data generation
  kTopology = 5,  // random graph generation
  kTrial = 6,     // Monte-Carlo trials
};

inline uint64_t derive_seed(uint64_t base, StreamKind kind, uint64_t a = 0,
                            uint64_t b = 0) {
  uint64_t s = base;
  splitmix64(s);
  s ^= static_cast<uint64_t>(kind) + 0x9e3779b97f4a7c15ULL + (s << 12) + (s >> 4);
  splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL + (s << 12) + (s >> 4);
  splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL + (s << 12) + (s >> 4);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], rejection sampled to avoid modulo bias.
  int uniform_int(int lo, int hi) {
    uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<int>(x % range);
  }

  // Standard normal via Box-Muller; the second deviate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    return -std::log(1.0 - uniform01()) / rate;
  }

  // Gamma with integer shape and given scale, as a sum of exponentials.
  // Exact for integer shapes, which is all the noise sampler needs.
  double gamma_int(int shape, double scale) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum += -std::log(1.0 - uniform01());
    return sum * scale;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i - 1))]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dpadmm

#endif  // DPADMM_RNG_HPP_
