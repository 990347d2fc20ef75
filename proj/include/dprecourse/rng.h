// Copyright 2026 The DP Recourse Authors
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

#ifndef DPRECOURSE_RNG_H_
#define DPRECOURSE_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace dprecourse {

// Derives an independent 64-bit seed for a named substream of a master seed.
// The scheme is splitmix64(master ^ fnv1a64(stream) + golden * (index + 1)),
// so adding or removing one consumer (e.g. more shadow models) never shifts
// the seeds handed to any other stream.
uint64_t DeriveSeed(uint64_t master, std::string_view stream,
                    uint64_t index = 0);

// Explicit RNG handle. Every sampler in the library takes one of these by
// reference; there is no global generator.
class Rng {
 public:
  explicit Rng(uint64_t seed, std::string lineage = "root");

  // Child generator for (stream, index), seeded via DeriveSeed.
  Rng Substream(std::string_view stream, uint64_t index = 0) const;

  // Uniform draw in the open interval (0, 1) with 53 bits of resolution.
  double UniformOpen();
  double StandardNormal();
  // Uniform integer in [0, n).
  uint64_t UniformIndex(uint64_t n);

  uint64_t seed() const { return seed_; }
  const std::string& lineage() const { return lineage_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  std::string lineage_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dprecourse

#endif  // DPRECOURSE_RNG_H_
