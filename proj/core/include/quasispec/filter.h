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
#ifndef QUASISPEC_FILTER_H
#define QUASISPEC_FILTER_H

#include <cstdint>
#include <optional>
#include <variant>

#include "quasispec/matlin.h"

namespace quasispec {

/// Circular bands around 0 (mod 1), stored as fractional half-widths.
/// A residual x is inside B_in when circ_dist(x, 0) <= r_in and avoids
/// B_out when circ_dist(x, 0) >= r_out.
struct Bands {
    double r_in = 0.0;
    double r_out = 0.0;

    /// Checks 0 < r_in < r_out < 1/2; throws std::invalid_argument.
    void validate() const;
};

enum class BandMode {
    /// Radian half-widths 1/(2 n alpha) and 1/(2 n) divided by 2 pi. These are
    /// the widths at which the attenuation constants of the filter analysis
    /// hold under the exp(2 pi i A) convention.
    kProofConstants,
    /// Fractional half-widths 1/(alpha n) and 1/(4 n) read literally.
    kNominal,
};

Bands make_bands(size_t n, double alpha, BandMode mode = BandMode::kProofConstants);

struct FilterParams {
    size_t n = 0;
    uint64_t m = 0;
    double delta = 0.0;
    uint64_t p = 0;      // 24 n^2 ceil(ln(1/delta))
    double zeta = 0.0;   // delta^2 / (2 p m)
    double alpha = 0.0;  // sqrt(ln(1/delta))
    Bands bands;
};

/// Requires n >= 1, m >= 1 and 0 < delta < 1/e.
FilterParams compute_filter_params(size_t n, uint64_t m, double delta,
                                   BandMode mode = BandMode::kProofConstants);

/// Filter exponent p alone; same preconditions on delta.
uint64_t filter_exponent(size_t n, double delta);

struct EigenEstimate {
    UnitVector w;
    double lambda_hat = 0.0;
    double residual = 0.0;
    uint64_t copy_id = 0;
    uint64_t m_used = 0;
};

struct Rejection {
    enum class Reason {
        kDegenerate,       // ||B w0|| fell below the underflow threshold
        kResidual,         // ||A w - lambda w|| above 3 delta sqrt(n)
        kComplexQuotient,  // |Im c| above 3 delta sqrt(n)
    };
    Reason reason = Reason::kResidual;
    double residual = 0.0;
    uint64_t copy_id = 0;
    uint64_t m_used = 0;
};

using FilterOutcome = std::variant<EigenEstimate, Rejection>;

inline bool accepted(const FilterOutcome &o) { return std::holds_alternative<EigenEstimate>(o); }

inline constexpr double kFilterUnderflow = 1e-280;

struct Decision {
    bool accept = false;
    double lambda_hat = 0.0;
    double residual = 0.0;
    double quotient_imag = 0.0;
};

/// 3 delta sqrt(n).
double acceptance_threshold(size_t n, double delta);

/// Rayleigh-style test on a candidate vector: with z = A w and i0 the first
/// index of max |w_i|, c = z_i0 / w_i0 and lambda_hat = Re c. Accepts when
/// ||A w - lambda_hat w|| and |Im c| are both within acceptance_threshold.
Decision decide(const HermitianMatrix &a, const UnitVector &w, double delta);

/// B = ((I + U~^m) / 2)^p with U~ = unitary_exp(A, zeta), by repeated squaring.
Matrix build_filter_matrix(const HermitianMatrix &a, const FilterParams &params);

/// Runs Filter(A, m, delta) for any m up to `max_m`. The exponential is
/// computed once at the tolerance required by the largest m, and its binary
/// powers are kept, so U~^m costs popcount(m) - 1 products per run. Safe to
/// share read-only between threads.
class FilterEngine {
   public:
    FilterEngine(HermitianMatrix a, double delta, uint64_t max_m);

    /// Draws the start vector from `rng`.
    FilterOutcome run(uint64_t m, Engine &rng, uint64_t copy_id = 0) const;
    FilterOutcome run_from(uint64_t m, const UnitVector &w0, uint64_t copy_id = 0) const;

    /// B w0 (unnormalized); std::nullopt once the result is provably below
    /// kFilterUnderflow.
    std::optional<Vector> apply_filter(uint64_t m, const Vector &w0) const;

    const HermitianMatrix &matrix() const { return a_; }
    double delta() const { return delta_; }
    uint64_t exponent() const { return p_; }
    double exp_tolerance() const { return exp_tolerance_; }
    uint64_t max_m() const { return ladder_.max_exponent(); }

   private:
    HermitianMatrix a_;
    double delta_;
    uint64_t p_;
    double exp_tolerance_;
    PowerLadder ladder_;
};

/// Filter(A, m, delta) with its start vector drawn from `seed`.
FilterOutcome filter_run(const HermitianMatrix &a, uint64_t m, double delta, RngSeed seed);

}  // namespace quasispec

#endif
