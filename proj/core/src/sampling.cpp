// Copyright 2026 The pinchcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pinchcert/sampling.hpp"

#include <array>
#include <cmath>
#include <random>

#include "pinchcert/errors.hpp"

namespace pinchcert {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unit-rate exponential from 53 random bits; u lies in (0, 1].
double exponential(std::mt19937_64& rng) {
  const double u = static_cast<double>((rng() >> 11) + 1) * 0x1p-53;
  return -std::log(u);
}

}  // namespace

std::string to_string(SamplerKind kind) {
  return kind == SamplerKind::kMonteCarlo ? "monte_carlo" : "grid";
}

std::uint64_t grid_size(std::uint64_t resolution) {
  if (resolution < 3) return 0;
  return (resolution - 1) * (resolution - 2) / 2;
}

SampleStream::SampleStream(const SamplerConfig& config) : config_(config) {
  if (config.kind == SamplerKind::kMonteCarlo) {
    if (config.count < 1) throw InvalidArgument("sample count must be at least 1");
    size_ = config.count;
  } else {
    if (config.count < 2) throw InvalidArgument("grid resolution must be at least 2");
    size_ = grid_size(config.count);
  }
}

void SampleStream::block(std::uint64_t b, std::vector<CurvaturePoint>& out) const {
  out.clear();
  if (b >= block_count()) return;
  if (config_.kind == SamplerKind::kMonteCarlo) {
    monte_carlo_block(b, out);
  } else {
    grid_block(b, out);
  }
}

void SampleStream::monte_carlo_block(std::uint64_t b, std::vector<CurvaturePoint>& out) const {
  std::mt19937_64 rng(splitmix64(splitmix64(config_.seed) + b));
  const std::uint64_t first = b * kBlockSize;
  const std::uint64_t last = std::min(size_, first + kBlockSize);
  for (std::uint64_t i = first; i < last; ++i) {
    for (;;) {
      std::array<double, 3> e{exponential(rng), exponential(rng), exponential(rng)};
      const double total = e[0] + e[1] + e[2];
      for (double& v : e) v /= total;
      if (std::min({e[0], e[1], e[2]}) < kMinSimplexCoordinate) continue;
      out.emplace_back(std::span<const double>(e));
      break;
    }
  }
}

void SampleStream::grid_block(std::uint64_t b, std::vector<CurvaturePoint>& out) const {
  const std::uint64_t r = config_.count;
  const double scale = static_cast<double>(r);
  std::uint64_t skip = b * kBlockSize;
  const std::uint64_t want = std::min(size_ - skip, kBlockSize);
  // Rows i = 1 .. r-2 hold j = 1 .. r-1-i.
  std::uint64_t i = 1;
  while (skip >= r - 1 - i) {
    skip -= r - 1 - i;
    ++i;
  }
  std::uint64_t j = 1 + skip;
  while (out.size() < want) {
    const std::uint64_t k = r - i - j;
    const std::array<double, 3> coords{static_cast<double>(i) / scale,
                                       static_cast<double>(j) / scale,
                                       static_cast<double>(k) / scale};
    out.emplace_back(std::span<const double>(coords));
    if (++j > r - 1 - i) {
      ++i;
      j = 1;
    }
  }
}

std::vector<CurvaturePoint> sample_simplex(std::uint64_t count, std::uint64_t seed) {
  const SampleStream stream({SamplerKind::kMonteCarlo, count, seed, 1});
  std::vector<CurvaturePoint> all;
  all.reserve(count);
  std::vector<CurvaturePoint> block;
  for (std::uint64_t b = 0; b < stream.block_count(); ++b) {
    stream.block(b, block);
    all.insert(all.end(), block.begin(), block.end());
  }
  return all;
}

std::vector<CurvaturePoint> grid_simplex(std::uint64_t resolution) {
  const SampleStream stream({SamplerKind::kGrid, resolution, 0, 1});
  std::vector<CurvaturePoint> all;
  all.reserve(stream.size());
  std::vector<CurvaturePoint> block;
  for (std::uint64_t b = 0; b < stream.block_count(); ++b) {
    stream.block(b, block);
    all.insert(all.end(), block.begin(), block.end());
  }
  return all;
}

}  // namespace pinchcert
