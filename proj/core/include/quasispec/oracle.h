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
#ifndef QUASISPEC_ORACLE_H
#define QUASISPEC_ORACLE_H

#include <stdexcept>
#include <vector>

#include "quasispec/matlin.h"

namespace quasispec {

/// Thrown when the Jacobi sweep cap is hit before convergence.
class JacobiNonConvergence : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalues sorted descending; column i of `vectors` is the unit
/// eigenvector for values[i], phase-canonicalized.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
    int sweeps = 0;

    size_t size() const { return values.size(); }
    Vector vector(size_t i) const { return vectors.col(static_cast<Eigen::Index>(i)); }
};

inline constexpr int kJacobiMaxSweeps = 60;
inline constexpr double kJacobiRelativeOffTolerance = 1e-13;

/// Reference eigensolver: cyclic-by-row complex Jacobi rotations until the
/// off-diagonal Frobenius mass drops below 1e-13 * ||A||_F. Throws
/// JacobiNonConvergence after kJacobiMaxSweeps sweeps.
EigenDecomposition jacobi_eigh(const HermitianMatrix &a);

/// Largest singular value of any (possibly rectangular) matrix, from the top
/// eigenvalue of the Hermitian dilation [[0, X], [X^H, 0]].
double spectral_norm(const Matrix &x);

/// Gaps between consecutive sorted eigenvalues are >= delta and the top
/// eigenvalue is <= 1 - delta.
bool is_delta_separated(const HermitianMatrix &a, double delta);

/// V diag(exp(2 pi i lambda)) V^H from the Jacobi decomposition, with one
/// sweep past the stopping rule.
Matrix oracle_exp_2pi_i(const HermitianMatrix &a);

}  // namespace quasispec

#endif
