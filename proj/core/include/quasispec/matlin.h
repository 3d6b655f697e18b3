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
#ifndef QUASISPEC_MATLIN_H
#define QUASISPEC_MATLIN_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "quasispec/rng.h"

namespace quasispec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense Hermitian matrix. Construction validates finiteness and the
/// Hermitian invariant to 1e-12 * (1 + max|entry|); entries are stored
/// exactly as given.
class HermitianMatrix {
   public:
    static HermitianMatrix from_matrix(Matrix m);
    static HermitianMatrix from_row_major(size_t n, std::span<const Complex> entries);
    static HermitianMatrix diagonal(std::span<const double> values);
    static HermitianMatrix zero(size_t n);

    size_t size() const { return static_cast<size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }
    Complex operator()(size_t i, size_t j) const { return m_(i, j); }

   private:
    explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Unitary matrix checked against `tolerance` in ||U^H U - I||_F.
class UnitaryMatrix {
   public:
    static UnitaryMatrix from_matrix(Matrix m, double tolerance);
    static UnitaryMatrix identity(size_t n);

    size_t size() const { return static_cast<size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

   private:
    explicit UnitaryMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Vector of unit 2-norm (to 1e-12).
class UnitVector {
   public:
    static UnitVector from_vector(Vector v);
    /// Divides by the norm first. Throws on a zero or non-finite vector.
    static UnitVector normalized(const Vector &v);

    size_t size() const { return static_cast<size_t>(v_.size()); }
    const Vector &vector() const { return v_; }
    Complex operator[](size_t i) const { return v_(i); }

   private:
    explicit UnitVector(Vector v) : v_(std::move(v)) {}
    Vector v_;
};

/// Affine spectrum map lambda' = scale * lambda + shift.
struct SpectrumTransform {
    double scale = 1.0;
    double shift = 0.0;

    double apply(double lambda) const { return scale * lambda + shift; }
    double invert(double lambda_prime) const { return (lambda_prime - shift) / scale; }
};

struct RescaledMatrix {
    HermitianMatrix matrix;
    SpectrumTransform transform;
};

/// GUE sample: real N(0,1) diagonal, off-diagonal entries with independent
/// N(0,1/2) real and imaginary parts. Exactly Hermitian.
HermitianMatrix gue_sample(size_t n, RngSeed seed);
HermitianMatrix gue_sample(size_t n, Engine &rng);

/// Normalized standard complex Gaussian vector.
UnitVector sample_unit_vector(size_t n, RngSeed seed);
UnitVector sample_unit_vector(size_t n, Engine &rng);

/// Haar-random unitary (QR of a complex Ginibre matrix with the R-diagonal
/// phases folded back in).
UnitaryMatrix haar_unitary(size_t n, RngSeed seed);

/// Number of Taylor terms used by unitary_exp for tolerance `eps`.
int taylor_terms(double eps);

/// Number of squarings applied after the truncated series.
inline constexpr int kExpSquarings = 3;

/// Approximates exp(2*pi*i*A) for spectrum(A) in [0, 0.9]: the argument is
/// scaled by 2^-3 so its norm stays below one, the series is truncated
/// after taylor_terms(eps) terms, and the result is squared three times.
UnitaryMatrix unitary_exp(const HermitianMatrix &a, double eps);

/// Binary powers base, base^2, base^4, ... up to the largest needed for
/// `max_exponent`. power(m) multiplies the rungs for the set bits of m in
/// increasing order, so it reproduces power_by_squaring exactly.
class PowerLadder {
   public:
    PowerLadder(const Matrix &base, uint64_t max_exponent);

    Matrix power(uint64_t m) const;
    uint64_t max_exponent() const { return max_exponent_; }
    size_t dimension() const { return static_cast<size_t>(rungs_.front().rows()); }

   private:
    std::vector<Matrix> rungs_;
    uint64_t max_exponent_;
};

/// base^m by repeated squaring: floor(log2 m) squarings plus popcount(m) - 1
/// multiplications. m = 0 gives the identity.
Matrix power_by_squaring(const Matrix &base, uint64_t m);

/// Multiplications performed by power_by_squaring for exponent m.
uint64_t squaring_multiplications(uint64_t m);

UnitaryMatrix mat_power(const UnitaryMatrix &u, uint64_t m);

/// Gershgorin bound: max_i sum_j |A_ij| >= ||A||.
double op_norm_upper(const HermitianMatrix &a);

/// Maps the spectrum into [0.05, 0.85]: A' = (A + r I) * 0.8 / (2 r) + 0.05 I
/// with r = op_norm_upper(A). The zero matrix maps to 0.45 I.
RescaledMatrix rescale_to_range(const HermitianMatrix &a);

/// Rotates `v` so its largest-magnitude coordinate (lowest index on ties)
/// is real and positive.
void canonicalize_phase(Vector &v);

/// min over theta of ||a - e^{i theta} b|| for unit vectors a, b.
double phase_distance(const Vector &a, const Vector &b);

}  // namespace quasispec

#endif
