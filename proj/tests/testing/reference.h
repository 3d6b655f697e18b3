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
#ifndef QUASISPEC_TESTS_TESTING_REFERENCE_H
#define QUASISPEC_TESTS_TESTING_REFERENCE_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "quasispec/matlin.h"

// Slow, direct reimplementations used as oracles. None of these call into
// the library code they check.
namespace quasispec::testing {

/// Triple-loop product.
Matrix naive_product(const Matrix &a, const Matrix &b);

/// base * base * ... * base, m factors, left to right.
Matrix naive_power(const Matrix &base, uint64_t m);

/// Eigenvalues of [[a, b], [conj(b), d]], descending.
std::array<double, 2> eig2_closed_form(double a, Complex b, double d);

/// Eigenvalues of a 3x3 Hermitian matrix from the trigonometric solution of
/// its characteristic cubic, descending.
std::array<double, 3> eig3_closed_form(const Matrix &a);

/// sup over anchored intervals [0, t) and [0, t] with t a sample point or 1
/// of |count / M - t|, by direct counting.
double brute_star_discrepancy(std::span<const double> points);

/// Max over every grid box (wrap-around allowed) of |count / M - volume|,
/// counting points box by box. dimension is 1 or 2.
double brute_box_discrepancy(std::span<const double> coords, size_t dimension, uint32_t k);

/// R(g, P) by enumerating the whole cube [-P/2, P/2)^s in lexicographic order.
double brute_r_sum(std::span<const int64_t> g, int64_t modulus);

/// Hermitian matrix V diag(lams) V^H.
HermitianMatrix with_spectrum(const Matrix &v, std::span<const double> lams);

}  // namespace quasispec::testing

#endif
