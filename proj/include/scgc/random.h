// Copyright 2026 The SCGC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCGC_RANDOM_H_
#define SCGC_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace scgc {

// Stream tags so that independent consumers of one user seed never share a
// random sequence.
enum class StreamTag : std::uint32_t {
  kInitView1 = 1,
  kInitView2 = 2,
  kNoise = 3,
  kKMeans = 4,
  kDropEdges = 5,
  kAddEdges = 6,
  kSbmGraph = 7,
  kSbmFeatures = 8,
};

// Deterministic generator keyed by (seed, tag, extra...).
inline std::mt19937_64 MakeStream(std::uint64_t seed, StreamTag tag,
                                  std::initializer_list<std::uint64_t> extra = {}) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  words.push_back(static_cast<std::uint32_t>(tag));
  for (std::uint64_t e : extra) {
    words.push_back(static_cast<std::uint32_t>(e));
    words.push_back(static_cast<std::uint32_t>(e >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace scgc

#endif  // SCGC_RANDOM_H_
