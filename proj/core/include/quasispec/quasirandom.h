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
#ifndef QUASISPEC_QUASIRANDOM_H
#define QUASISPEC_QUASIRANDOM_H

#include <cstdint>
#include <span>
#include <vector>

#include "quasispec/filter.h"
#include "quasispec/rng.h"

namespace quasispec {

/// Fractional part in [0, 1), including negative inputs.
double frac(double x);

/// frac(m * lambda). The product is rounded once, so the absolute error is
/// about m * |lambda| * 2^-53.
double frac_multiple(uint64_t m, double lambda);

/// min(|x - y|, 1 - |x - y|) for x, y in [0, 1).
double circ_dist(double x, double y);

/// Lazily evaluated residuals ({m * lambda_i})_{m = 1..length}.
class ResidualSequence {
   public:
    ResidualSequence(std::vector<double> seed_values, uint64_t length);

    /// Coordinate i of element m, for 1 <= m <= length().
    double at(uint64_t m, size_t i) const;
    std::vector<double> point(uint64_t m) const;
    /// Restriction to the given coordinates (0-based).
    ResidualSequence select(std::span<const size_t> coords) const;

    size_t dimension() const { return seeds_.size(); }
    uint64_t length() const { return length_; }
    const std::vector<double> &seed_values() const { return seeds_; }

   private:
    std::vector<double> seeds_;
    uint64_t length_;
};

ResidualSequence residual_sequence(std::span<const double> lams, uint64_t length);

/// True iff frac(m * lams[k]) is within r_in of 0 on the circle and every
/// other frac(m * lams[j]) is at least r_out away. `k` is 0-based. Any
/// half-widths in [0, 1/2] are accepted here.
bool separates(std::span<const double> lams, size_t k, uint64_t m, const Bands &bands);

/// Fraction of m in {1..length} separating k, by full enumeration.
double separation_probability_exact(std::span<const double> lams, size_t k, uint64_t length,
                                    const Bands &bands);

inline constexpr uint64_t kExhaustiveSeparationLimit = 1'000'000;

/// Estimate of P_{m ~ U{1..length}}(m separates k). Enumerates exactly when
/// trials >= length and length <= kExhaustiveSeparationLimit; otherwise
/// draws `trials` values of m from `seed`.
double separation_probability(std::span<const double> lams, size_t k, uint64_t length,
                              const Bands &bands, uint64_t trials, RngSeed seed);

struct DiscrepancyReport {
    double estimate = 0.0;
    /// Grid resolution; 0 for the exact 1D algorithm.
    uint32_t resolution = 0;
    /// The true discrepancy lies in [estimate, estimate + upper_error].
    double upper_error = 0.0;
    size_t dimension = 0;
    uint64_t length = 0;
};

inline constexpr uint64_t kStarDiscrepancyMaxLength = 10'000'000;

/// Exact star discrepancy of a 1D point set: after sorting,
/// max_i max(x_(i) - (i-1)/M, i/M - x_(i)).
DiscrepancyReport star_discrepancy_1d(std::span<const double> points);
DiscrepancyReport star_discrepancy_1d(const ResidualSequence &seq);

inline constexpr uint32_t kDefaultGridResolution = 128;
inline constexpr uint32_t kMaxGridResolution = 512;
inline constexpr uint32_t kMaxGridResolution2d = 256;

/// Max over wrap-around boxes with corners on the k-grid of
/// |count / M - volume|. `coords` is row-major, `dimension` values per
/// point, each in [0, 1). dimension must be 1 or 2.
DiscrepancyReport box_discrepancy(std::span<const double> coords, size_t dimension, uint32_t k);
DiscrepancyReport box_discrepancy(const ResidualSequence &seq, uint32_t k = kDefaultGridResolution);

inline constexpr uint64_t kRSumBudget = uint64_t{1} << 24;

/// Niederreiter's R(g, P): sum of 1 / prod max(1, |h_i|) over nonzero
/// h in [-P/2, P/2)^s with h . g = 0 (mod P). s in {1, 2, 3} and
/// P^s <= kRSumBudget.
double r_sum(std::span<const int64_t> g, int64_t modulus);

/// x_n for n = 1..count: the binary digits of n mirrored about the radix point.
std::vector<double> van_der_corput(uint64_t count);

/// Points {g n / N}, n = 1..N, computed with exact integer residues. Row-major.
std::vector<double> lattice_points(std::span<const int64_t> g, int64_t modulus);

struct GoodSeedReport {
    double pass_fraction = 0.0;
    uint64_t trials = 0;
    double threshold = 0.0;  // log2(N)^s / N + s / k
    double worst_estimate = 0.0;
};

/// Draws g ~ U({0..N-1}^s) `trials` times and reports how often the grid
/// estimate of the lattice sequence's discrepancy is within log2(N)^s / N + s / k.
GoodSeedReport good_seed_test(int64_t modulus, size_t dimension, uint64_t trials, RngSeed seed,
                              uint32_t k = kDefaultGridResolution);

}  // namespace quasispec

#endif
