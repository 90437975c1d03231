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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pinchcert/curvature_point.hpp"

namespace pinchcert {

enum class SamplerKind { kMonteCarlo, kGrid };

std::string to_string(SamplerKind kind);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kMonteCarlo;
  /// Number of samples for Monte-Carlo, lattice resolution for the grid.
  std::uint64_t count = 1'000'000;
  std::uint64_t seed = 1;
  /// Execution detail only; results do not depend on it.
  unsigned workers = 1;
};

/// Points per block. Block b of a Monte-Carlo stream draws from its own
/// generator seeded by (seed, b), so the stream does not depend on how blocks
/// are distributed over workers.
inline constexpr std::uint64_t kBlockSize = 4096;

/// Points with a coordinate below this are redrawn.
inline constexpr double kMinSimplexCoordinate = 1e-12;

/// Number of lattice points (i, j, k) / R with i + j + k = R, i, j, k >= 1.
std::uint64_t grid_size(std::uint64_t resolution);

/// Indexed stream of points on the open 2-simplex, generated block by block.
class SampleStream {
 public:
  explicit SampleStream(const SamplerConfig& config);

  const SamplerConfig& config() const { return config_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t block_count() const { return (size_ + kBlockSize - 1) / kBlockSize; }
  /// Replaces `out` with the points of block b, in stream order.
  void block(std::uint64_t b, std::vector<CurvaturePoint>& out) const;

 private:
  void monte_carlo_block(std::uint64_t b, std::vector<CurvaturePoint>& out) const;
  void grid_block(std::uint64_t b, std::vector<CurvaturePoint>& out) const;

  SamplerConfig config_;
  std::uint64_t size_ = 0;
};

/// Uniform samples on {a + b + c = 1, a, b, c > 0} from normalized unit
/// exponential draws.
std::vector<CurvaturePoint> sample_simplex(std::uint64_t count, std::uint64_t seed);

/// Interior barycentric lattice of the given resolution (>= 3 for a non-empty result).
std::vector<CurvaturePoint> grid_simplex(std::uint64_t resolution);

/// Runs fn(first_index, points, acc) over every block of the stream using up
/// to `workers` threads and returns the per-block accumulators in block order.
/// Callers merge them sequentially, which keeps results independent of the
/// worker count.
template <class Acc, class Fn>
std::vector<Acc> map_blocks(const SampleStream& stream, unsigned workers, Fn fn) {
  const std::uint64_t blocks = stream.block_count();
  std::vector<Acc> results(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run = [&] {
    std::vector<CurvaturePoint> points;
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      try {
        stream.block(b, points);
        fn(b * kBlockSize, std::span<const CurvaturePoint>(points), results[b]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks;
      }
    }
  };

  const unsigned count = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(blocks, 1)));
  if (count <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace pinchcert
