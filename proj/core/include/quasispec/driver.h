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
#ifndef QUASISPEC_DRIVER_H
#define QUASISPEC_DRIVER_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "quasispec/filter.h"
#include "quasispec/matlin.h"
#include "quasispec/rng.h"

namespace quasispec {

enum class AsdMode {
    kEmpirical,    // M = n^5
    kTheoretical,  // M = ceil(min(delta', n^-50)^-1.6), refused above kMaxTheoreticalM
};

/// Floor applied to delta' before it reaches the filter.
inline constexpr double kDeltaPrimeFloor = 1e-12;
inline constexpr double kMaxTheoreticalM = 1e8;

struct AsdParams {
    size_t n = 0;
    double delta = 0.0;
    double B = 0.0;
    double delta_prime = 0.0;      // min(delta, B)^13 / 4, possibly subnormal or 0
    double delta_prime_eff = 0.0;  // max(delta_prime, kDeltaPrimeFloor)
    bool clamped = false;
    double alpha = 0.0;  // sqrt(ln(1 / delta_prime_eff))
    uint64_t M = 0;
    uint64_t T = 0;      // max(1, ceil(60 n alpha log2 n))
    double sigma = 0.0;  // sqrt(delta_prime_eff^2 + delta^2 / (9 n))
    AsdMode mode = AsdMode::kEmpirical;
};

/// Requires n >= 1 and 0 < delta <= 1/n; B defaults to delta.
AsdParams compute_asd_params(size_t n, double delta, std::optional<double> b_config = std::nullopt,
                             AsdMode mode = AsdMode::kEmpirical);

/// A + sigma * gue_sample(n, seed).
HermitianMatrix perturb(const HermitianMatrix &a, double sigma, RngSeed seed);

struct AsdDatabase {
    std::vector<EigenEstimate> entries;  // ascending lambda_hat
    double bin_width = 0.0;
    SpectrumTransform transform;
};

/// Sorts by (lambda_hat, copy_id) and opens a new bin at the first estimate
/// and at every estimate at least bin_width above the current bin start.
/// Each bin is represented by its smallest-residual member; bins whose
/// representatives would end up closer than bin_width fall back to the bin
/// start.
AsdDatabase bin_eigenvalues(std::vector<EigenEstimate> estimates, double bin_width);

inline constexpr size_t kHistogramBuckets = 10;

struct CopyStats {
    uint64_t copies = 0;
    uint64_t accepted = 0;
    uint64_t rejected_degenerate = 0;
    uint64_t rejected_residual = 0;
    uint64_t rejected_quotient = 0;
    uint64_t m_min = 0;
    uint64_t m_max = 0;
    double m_mean = 0.0;
    /// Counts of m over kHistogramBuckets equal-width buckets covering [1, M].
    std::array<uint64_t, kHistogramBuckets> m_histogram{};

    double accept_rate() const {
        return copies == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(copies);
    }
};

struct AsdOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Replaces params.T when set.
    std::optional<uint64_t> copies;
    /// Recorded in the database; the caller has already applied it.
    SpectrumTransform transform;
};

struct AsdResult {
    /// True iff binning produced exactly n entries.
    bool complete = false;
    AsdDatabase database;
    HermitianMatrix perturbed = HermitianMatrix::zero(1);
    CopyStats stats;
    /// Every accepted estimate, ordered by copy_id.
    std::vector<EigenEstimate> accepted;
};

/// Perturbs A with substream 0 of `seed` and runs the copies, copy i drawing
/// m ~ U{1..M} and its start vector from substream i of substream 1. The
/// result does not depend on the thread count.
AsdResult asd_run(const HermitianMatrix &a, RngSeed seed, const AsdParams &params,
                  const AsdOptions &options = {});

struct AsdVerification {
    bool ok = false;
    double residual_max = 0.0;
    double reconstruction_error = 0.0;
};

/// max_i ||A v_i - lambda_i v_i|| <= delta and
/// ||sum_i lambda_i v_i v_i^H - A|| <= delta ||A||. A database with a
/// number of entries other than n is never ok.
AsdVerification verify_asd(const HermitianMatrix &a, const AsdDatabase &db, double delta);

/// Smallest gap between adjacent oracle eigenvalues; +inf when n = 1.
double min_gap(const HermitianMatrix &a);

}  // namespace quasispec

#endif
