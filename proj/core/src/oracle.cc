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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace quasispec {

namespace {

double off_diagonal_norm(const Matrix &a) {
    double sum = 0.0;
    const auto n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

// Annihilates a(p, q) with J = diag(1, conj(e)) * R(c, s), where e is the
// phase of a(p, q) and R is the real Jacobi rotation for the resulting real
// 2x2 block. Updates a <- J^H a J and v <- v J.
void rotate(Matrix &a, Matrix &v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const Complex e = apq / mag;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex ce = std::conj(e);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const auto n = a.rows();

    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * ce * akq;
        a(k, q) = s * akp + c * ce * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * e * aqk;
        a(q, k) = s * apk + c * e * aqk;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * ce * vkq;
        v(k, q) = s * vkp + c * ce * vkq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
}

// Runs sweeps until the off-diagonal mass is below target, then
// polish_sweeps more.
EigenDecomposition jacobi_run(const HermitianMatrix &input, int polish_sweeps) {
    const auto n = static_cast<Eigen::Index>(input.size());
    Matrix a = input.matrix();
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }
    Matrix v = Matrix::Identity(n, n);
    const double target = kJacobiRelativeOffTolerance * input.matrix().norm();

    int sweeps = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweeps == kJacobiMaxSweeps) {
            throw JacobiNonConvergence(
                "jacobi_eigh: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                " sweeps (n = " + std::to_string(n) + ")");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }
    for (int extra = 0; extra < polish_sweeps; ++extra) {
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() > a(y, y).real();
    });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.values.reserve(static_cast<size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<size_t>(k)];
        out.values.push_back(a(src, src).real());
        Vector col = v.col(src);
        canonicalize_phase(col);
        out.vectors.col(k) = col;
    }
    return out;
}

}  // namespace

EigenDecomposition jacobi_eigh(const HermitianMatrix &input) { return jacobi_run(input, 0); }

double spectral_norm(const Matrix &x) {
    const auto r = x.rows();
    const auto c = x.cols();
    if (r == 0 || c == 0) {
        return 0.0;
    }
    Matrix dilation = Matrix::Zero(r + c, r + c);
    dilation.topRightCorner(r, c) = x;
    dilation.bottomLeftCorner(c, r) = x.adjoint();
    EigenDecomposition eig = jacobi_eigh(HermitianMatrix::from_matrix(std::move(dilation)));
    return std::max(0.0, eig.values.front());
}

bool is_delta_separated(const HermitianMatrix &a, double delta) {
    EigenDecomposition eig = jacobi_eigh(a);
    if (eig.values.front() > 1.0 - delta) {
        return false;
    }
    for (size_t j = 0; j + 1 < eig.values.size(); ++j) {
        if (eig.values[j] - eig.values[j + 1] < delta) {
            return false;
        }
    }
    return true;
}

Matrix oracle_exp_2pi_i(const HermitianMatrix &a) {
    // At the stopping rule the eigenvectors can still be off by ~1e-13 in
    // absolute terms, too coarse to referee eps = 1e-12; one more sweep
    // squares that.
    EigenDecomposition eig = jacobi_run(a, 1);
    const auto n = static_cast<Eigen::Index>(eig.size());
    Vector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        phases(i) = std::polar(1.0, 2.0 * std::numbers::pi * eig.values[static_cast<size_t>(i)]);
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace quasispec
