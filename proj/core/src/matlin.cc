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
#include "quasispec/matlin.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quasispec {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitNormTol = 1e-12;

std::string entry_name(Eigen::Index i, Eigen::Index j) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void check_hermitian(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("Hermitian matrix must be square with n >= 1");
    }
    double max_abs = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("non-finite entry at " + entry_name(i, j));
            }
            max_abs = std::max(max_abs, std::abs(z));
        }
    }
    double tol = kHermitianTol * (1.0 + max_abs);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (std::abs(m(i, i).imag()) > kHermitianTol) {
            throw std::invalid_argument("diagonal entry " + entry_name(i, i) + " is not real");
        }
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                throw std::invalid_argument(
                    "entries " + entry_name(i, j) + " and " + entry_name(j, i) +
                    " are not complex conjugates");
            }
        }
    }
}

Complex standard_complex_normal(Engine &rng, double variance_per_part) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance_per_part));
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

}  // namespace

HermitianMatrix HermitianMatrix::from_matrix(Matrix m) {
    check_hermitian(m);
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::from_row_major(size_t n, std::span<const Complex> entries) {
    if (n == 0 || entries.size() != n * n) {
        throw std::invalid_argument(
            "expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
    }
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            m(i, j) = entries[i * n + j];
        }
    }
    return from_matrix(std::move(m));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
    Matrix m = Matrix::Zero(values.size(), values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return from_matrix(std::move(m));
}

HermitianMatrix HermitianMatrix::zero(size_t n) {
    return from_matrix(Matrix::Zero(n, n));
}

UnitaryMatrix UnitaryMatrix::from_matrix(Matrix m, double tolerance) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("unitary matrix must be square with n >= 1");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("unitary matrix has non-finite entries");
    }
    const auto n = m.rows();
    double defect = (m.adjoint() * m - Matrix::Identity(n, n)).norm();
    if (defect > tolerance) {
        throw std::invalid_argument(
            "matrix is not unitary: ||U^H U - I||_F = " + std::to_string(defect));
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(size_t n) {
    return UnitaryMatrix(Matrix::Identity(n, n));
}

UnitVector UnitVector::from_vector(Vector v) {
    if (v.size() == 0 || !v.allFinite()) {
        throw std::invalid_argument("unit vector must be non-empty and finite");
    }
    if (std::abs(v.norm() - 1.0) > kUnitNormTol) {
        throw std::invalid_argument("vector is not unit norm");
    }
    return UnitVector(std::move(v));
}

UnitVector UnitVector::normalized(const Vector &v) {
    double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return UnitVector(v / norm);
}

HermitianMatrix gue_sample(size_t n, Engine &rng) {
    if (n == 0) {
        throw std::invalid_argument("gue_sample: n must be >= 1");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m(i, i) = Complex(normal(rng), 0.0);
        for (size_t j = i + 1; j < n; ++j) {
            Complex z = standard_complex_normal(rng, 0.5);
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return HermitianMatrix::from_matrix(std::move(m));
}

HermitianMatrix gue_sample(size_t n, RngSeed seed) {
    Engine rng = make_engine(seed);
    return gue_sample(n, rng);
}

UnitVector sample_unit_vector(size_t n, Engine &rng) {
    if (n == 0) {
        throw std::invalid_argument("sample_unit_vector: n must be >= 1");
    }
    Vector v(n);
    while (true) {
        for (size_t i = 0; i < n; ++i) {
            v(i) = standard_complex_normal(rng, 0.5);
        }
        if (v.norm() >= 1e-30) {
            return UnitVector::normalized(v);
        }
    }
}

UnitVector sample_unit_vector(size_t n, RngSeed seed) {
    Engine rng = make_engine(seed);
    return sample_unit_vector(n, rng);
}

UnitaryMatrix haar_unitary(size_t n, RngSeed seed) {
    if (n == 0) {
        throw std::invalid_argument("haar_unitary: n must be >= 1");
    }
    Engine rng = make_engine(seed);
    Matrix z(n, n);
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) {
            z(i, j) = standard_complex_normal(rng, 0.5);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (size_t j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return UnitaryMatrix::from_matrix(std::move(q), static_cast<double>(n) * 1e-10);
}

int taylor_terms(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    return static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 4;
}

UnitaryMatrix unitary_exp(const HermitianMatrix &a, double eps) {
    const int terms = taylor_terms(eps);
    const auto n = static_cast<Eigen::Index>(a.size());
    const double scale = 2.0 * std::numbers::pi / static_cast<double>(1 << kExpSquarings);
    const Matrix ix = a.matrix() * Complex(0.0, scale);
    const Matrix identity = Matrix::Identity(n, n);

    // Horner form of sum_{j < terms} (iX)^j / j!.
    Matrix u = identity;
    for (int j = terms - 1; j >= 1; --j) {
        u = identity + (ix * u) / static_cast<double>(j);
    }
    for (int k = 0; k < kExpSquarings; ++k) {
        u = u * u;
    }
    // ||U~ - U|| <= eps bounds the unitarity defect by about 2 eps.
    double tolerance = static_cast<double>(n) * 1e-10 + 4.0 * std::sqrt(static_cast<double>(n)) * eps;
    return UnitaryMatrix::from_matrix(std::move(u), tolerance);
}

PowerLadder::PowerLadder(const Matrix &base, uint64_t max_exponent) : max_exponent_(max_exponent) {
    if (base.rows() != base.cols() || base.rows() == 0) {
        throw std::invalid_argument("PowerLadder: base must be square and non-empty");
    }
    rungs_.push_back(base);
    int top = max_exponent == 0 ? 0 : std::bit_width(max_exponent) - 1;
    for (int j = 1; j <= top; ++j) {
        const Matrix &prev = rungs_.back();
        rungs_.push_back(prev * prev);
    }
}

Matrix PowerLadder::power(uint64_t m) const {
    if (m > max_exponent_) {
        throw std::out_of_range("PowerLadder: exponent exceeds the precomputed range");
    }
    const auto n = rungs_.front().rows();
    if (m == 0) {
        return Matrix::Identity(n, n);
    }
    Matrix result;
    bool first = true;
    for (size_t j = 0; m != 0; ++j, m >>= 1) {
        if (m & 1) {
            if (first) {
                result = rungs_[j];
                first = false;
            } else {
                result = result * rungs_[j];
            }
        }
    }
    return result;
}

Matrix power_by_squaring(const Matrix &base, uint64_t m) {
    return PowerLadder(base, m).power(m);
}

uint64_t squaring_multiplications(uint64_t m) {
    if (m == 0) {
        return 0;
    }
    return static_cast<uint64_t>(std::bit_width(m) - 1) + static_cast<uint64_t>(std::popcount(m)) - 1;
}

UnitaryMatrix mat_power(const UnitaryMatrix &u, uint64_t m) {
    Matrix p = power_by_squaring(u.matrix(), m);
    const double n = static_cast<double>(u.size());
    // The input's own defect grows linearly in m; rounding adds a little
    // per multiplication on top.
    const auto id = Matrix::Identity(u.matrix().rows(), u.matrix().cols());
    const double defect = (u.matrix().adjoint() * u.matrix() - id).norm();
    const double tolerance = n * 1e-10 + 2.0 * static_cast<double>(m) * (defect + n * 1e-15) +
                             n * 1e-14 * static_cast<double>(squaring_multiplications(m) + 1);
    return UnitaryMatrix::from_matrix(std::move(p), tolerance);
}

double op_norm_upper(const HermitianMatrix &a) {
    return a.matrix().cwiseAbs().rowwise().sum().maxCoeff();
}

RescaledMatrix rescale_to_range(const HermitianMatrix &a) {
    const double r = op_norm_upper(a);
    SpectrumTransform t;
    if (r > 0.0) {
        t.scale = 0.8 / (2.0 * r);
        t.shift = 0.8 / 2.0 + 0.05;
    } else {
        t.scale = 1.0;
        t.shift = 0.45;
    }
    const auto n = static_cast<Eigen::Index>(a.size());
    Matrix m = a.matrix() * t.scale;
    m.diagonal().array() += t.shift;
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = Complex(m(i, i).real(), 0.0);
    }
    return RescaledMatrix{HermitianMatrix::from_matrix(std::move(m)), t};
}

void canonicalize_phase(Vector &v) {
    if (v.size() == 0) {
        return;
    }
    Eigen::Index best = 0;
    double best_abs = std::abs(v(0));
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (best_abs == 0.0) {
        return;
    }
    v *= std::conj(v(best)) / best_abs;
    v(best) = Complex(v(best).real(), 0.0);
}

double phase_distance(const Vector &a, const Vector &b) {
    // Eigen's dot conjugates its left operand: b.dot(a) = b^H a.
    Complex overlap = b.dot(a);
    double mag = std::abs(overlap);
    Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return (a - phase * b).norm();
}

}  // namespace quasispec
