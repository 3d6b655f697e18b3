// Copyright 2026 The quasispec Authors
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
#ifndef QUASISPEC_RNG_H
#define QUASISPEC_RNG_H

#include <cstdint>
#include <random>

namespace quasispec {

/// Identifies one reproducible random stream. Equal (master, stream) pairs
/// produce equal sample sequences on the same build.
struct RngSeed {
    uint64_t master = 0;
    uint64_t stream = 0;

    bool operator==(const RngSeed &) const = default;
};

using Engine = std::mt19937_64;

/// Engine for a stream. Both words go through a SplitMix64 finalizer so
/// neighbouring seeds give unrelated engines.
Engine make_engine(RngSeed seed);

/// Child stream of `seed`, for code that needs several independent
/// sub-streams out of one caller-provided seed.
RngSeed substream(RngSeed seed, uint64_t index);

}  // namespace quasispec

#endif
