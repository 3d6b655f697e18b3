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
#include "quasispec/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "testing/reference.h"

namespace quasispec {
namespace {

double reconstruction_error(const HermitianMatrix &a, const EigenDecomposition &e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(e.values.data(), n);
    Matrix r = e.vectors * lam.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    return (r - a.matrix()).norm();
}

TEST(JacobiEigh, DiagonalInput) {
    std::vector<double> d{0.3, -1.0, 2.5, 0.7};
    EigenDecomposition e = jacobi_eigh(HermitianMatrix::diagonal(d));
    EXPECT_EQ(e.values, (std::vector<double>{2.5, 0.7, 0.3, -1.0}));
    const std::vector<int> source{2, 3, 0, 1};
    for (size_t i = 0; i < 4; ++i) {
        Vector expect = Vector::Zero(4);
        expect(source[i]) = 1.0;
        EXPECT_EQ(e.vector(i), expect);
    }
}

TEST(JacobiEigh, TwoByTwoClosedForm) {
    Matrix m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    EigenDecomposition e = jacobi_eigh(HermitianMatrix::from_matrix(m));
    EXPECT_NEAR(e.values[0], 3.0, 1e-14);
    EXPECT_NEAR(e.values[1], 1.0, 1e-14);
    Vector v0(2), v1(2);
    v0 << 1.0, 1.0;
    v1 << 1.0, -1.0;
    EXPECT_LE(phase_distance(e.vector(0), v0 / std::sqrt(2.0)), 1e-14);
    EXPECT_LE(phase_distance(e.vector(1), v1 / std::sqrt(2.0)), 1e-14);
}

TEST(JacobiEigh, RandomTwoAndThreeAgainstCharacteristicPolynomial) {
    Engine rng = make_engine(RngSeed{123, 0});
    for (int t = 0; t < 200; ++t) {
        HermitianMatrix a2 = gue_sample(2, rng);
        auto cf2 = testing::eig2_closed_form(a2(0, 0).real(), a2(0, 1), a2(1, 1).real());
        EigenDecomposition e2 = jacobi_eigh(a2);
        EXPECT_NEAR(e2.values[0], cf2[0], 1e-12);
        EXPECT_NEAR(e2.values[1], cf2[1], 1e-12);

        HermitianMatrix a3 = gue_sample(3, rng);
        auto cf3 = testing::eig3_closed_form(a3.matrix());
        EigenDecomposition e3 = jacobi_eigh(a3);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(e3.values[static_cast<size_t>(i)], cf3[static_cast<size_t>(i)], 1e-12);
        }
    }
}

TEST(JacobiEigh, ReconstructionAndOrthonormality) {
    for (size_t n : {1u, 2u, 5u, 16u, 40u}) {
        HermitianMatrix a = gue_sample(n, RngSeed{n, 50});
        EigenDecomposition e = jacobi_eigh(a);
        const double nn = static_cast<double>(n);
        EXPECT_LE(reconstruction_error(a, e), 1e-10);
        EXPECT_LE((e.vectors.adjoint() * e.vectors - Matrix::Identity(e.vectors.cols(), e.vectors.cols())).norm(),
                  nn * 1e-11);
        for (size_t i = 0; i < n; ++i) {
            const Vector v = e.vector(i);
            EXPECT_LE((a.matrix() * v - e.values[i] * v).norm(), nn * 1e-11 * (1.0 + a.matrix().norm()));
        }
        for (size_t i = 0; i + 1 < n; ++i) {
            EXPECT_GE(e.values[i], e.values[i + 1]);
        }
    }
}

TEST(JacobiEigh, VectorsPhaseCanonical) {
    HermitianMatrix a = gue_sample(6, RngSeed{7, 7});
    EigenDecomposition e = jacobi_eigh(a);
    for (size_t i = 0; i < 6; ++i) {
        Vector v = e.vector(i);
        Eigen::Index top = 0;
        v.cwiseAbs().maxCoeff(&top);
        EXPECT_EQ(v(top).imag(), 0.0);
        EXPECT_GT(v(top).real(), 0.0);
    }
}

TEST(JacobiEigh, ZeroAndRepeated) {
    EigenDecomposition z = jacobi_eigh(HermitianMatrix::zero(3));
    EXPECT_EQ(z.values, (std::vector<double>{0.0, 0.0, 0.0}));
    std::vector<double> lams{0.4, 0.4, 0.8};
    HermitianMatrix a = testing::with_spectrum(haar_unitary(3, RngSeed{2, 2}).matrix(), lams);
    EigenDecomposition e = jacobi_eigh(a);
    EXPECT_NEAR(e.values[0], 0.8, 1e-13);
    EXPECT_NEAR(e.values[1], 0.4, 1e-13);
    EXPECT_NEAR(e.values[2], 0.4, 1e-13);
    EXPECT_LE(reconstruction_error(a, e), 1e-12);
}

TEST(SpectralNorm, KnownValues) {
    EXPECT_NEAR(spectral_norm(Matrix::Identity(4, 4)), 1.0, 1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = -3.0;
    d(1, 1) = 2.0;
    EXPECT_NEAR(spectral_norm(d), 3.0, 1e-14);
    Vector u = sample_unit_vector(5, RngSeed{1, 0}).vector();
    Vector v = sample_unit_vector(5, RngSeed{2, 0}).vector();
    Matrix r1 = u * v.adjoint();
    EXPECT_NEAR(spectral_norm(r1), 1.0, 1e-13);
    EXPECT_NEAR(spectral_norm(r1), r1.norm(), 1e-13);
}

TEST(SpectralNorm, BelowFrobeniusAndMatchesSvd) {
    for (uint64_t s = 0; s < 10; ++s) {
        Matrix x = haar_unitary(7, RngSeed{s, 1}).matrix() * gue_sample(7, RngSeed{s, 2}).matrix();
        double sn = spectral_norm(x);
        EXPECT_LE(sn, x.norm() * (1.0 + 1e-14));
        // Independent check through Eigen's SVD.
        Eigen::JacobiSVD<Matrix> svd(x);
        EXPECT_NEAR(sn, svd.singularValues()(0), 1e-12 * sn);
    }
}

TEST(IsDeltaSeparated, Examples) {
    std::vector<double> a{0.1, 0.5, 0.9};
    EXPECT_TRUE(is_delta_separated(HermitianMatrix::diagonal(a), 0.05));
    std::vector<double> b{0.1, 0.5, 0.97};
    EXPECT_FALSE(is_delta_separated(HermitianMatrix::diagonal(b), 0.05));
    std::vector<double> c{0.5, 0.5};
    EXPECT_FALSE(is_delta_separated(HermitianMatrix::diagonal(c), 1e-9));
}

TEST(OracleExp, DiagonalValues) {
    std::vector<double> d{0.5, 0.25, 0.0};
    Matrix u = oracle_exp_2pi_i(HermitianMatrix::diagonal(d));
    EXPECT_LT(std::abs(u(0, 0) - Complex(-1.0, 0.0)), 1e-14);
    EXPECT_LT(std::abs(u(1, 1) - Complex(0.0, 1.0)), 1e-14);
    EXPECT_LT(std::abs(u(2, 2) - Complex(1.0, 0.0)), 1e-14);
}

}  // namespace
}  // namespace quasispec
