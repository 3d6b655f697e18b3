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
#include "quasispec/rng.h"

namespace quasispec {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Engine make_engine(RngSeed seed) {
    uint64_t a = splitmix64(seed.master);
    uint64_t b = splitmix64(a ^ splitmix64(seed.stream));
    std::seed_seq seq{
        static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
        static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
    return Engine(seq);
}

RngSeed substream(RngSeed seed, uint64_t index) {
    return RngSeed{seed.master, splitmix64(seed.stream ^ splitmix64(index + 1))};
}

}  // namespace quasispec
