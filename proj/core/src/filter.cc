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
#include "quasispec/filter.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quasispec {

void Bands::validate() const {
    if (!(r_in > 0.0 && r_in < r_out && r_out < 0.5)) {
        throw std::invalid_argument("bands must satisfy 0 < r_in < r_out < 1/2");
    }
}

Bands make_bands(size_t n, double alpha, BandMode mode) {
    if (n == 0 || !(alpha > 0.0)) {
        throw std::invalid_argument("make_bands: need n >= 1 and alpha > 0");
    }
    const double nn = static_cast<double>(n);
    Bands b;
    switch (mode) {
        case BandMode::kProofConstants:
            b.r_in = 1.0 / (4.0 * std::numbers::pi * nn * alpha);
            b.r_out = 1.0 / (4.0 * std::numbers::pi * nn);
            break;
        case BandMode::kNominal:
            b.r_in = 1.0 / (alpha * nn);
            b.r_out = 1.0 / (4.0 * nn);
            break;
    }
    return b;
}

uint64_t filter_exponent(size_t n, double delta) {
    if (n == 0) {
        throw std::invalid_argument("filter: n must be >= 1");
    }
    if (!(delta > 0.0 && delta < std::exp(-1.0))) {
        throw std::invalid_argument("filter: delta must lie in (0, 1/e)");
    }
    const auto nn = static_cast<uint64_t>(n);
    return 24 * nn * nn * static_cast<uint64_t>(std::ceil(std::log(1.0 / delta)));
}

FilterParams compute_filter_params(size_t n, uint64_t m, double delta, BandMode mode) {
    if (m < 1) {
        throw std::invalid_argument("filter: m must be >= 1");
    }
    FilterParams params;
    params.n = n;
    params.m = m;
    params.delta = delta;
    params.p = filter_exponent(n, delta);
    params.zeta = delta * delta / (2.0 * static_cast<double>(params.p) * static_cast<double>(m));
    params.alpha = std::sqrt(std::log(1.0 / delta));
    params.bands = make_bands(n, params.alpha, mode);
    return params;
}

double acceptance_threshold(size_t n, double delta) {
    return 3.0 * delta * std::sqrt(static_cast<double>(n));
}

Decision decide(const HermitianMatrix &a, const UnitVector &w, double delta) {
    if (a.size() != w.size()) {
        throw std::invalid_argument("decide: dimension mismatch");
    }
    const Vector &v = w.vector();
    const Vector z = a.matrix() * v;
    Eigen::Index i0 = 0;
    double best = std::abs(v(0));
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        double mag = std::abs(v(i));
        if (mag > best) {
            best = mag;
            i0 = i;
        }
    }
    const Complex c = z(i0) / v(i0);
    Decision d;
    d.lambda_hat = c.real();
    d.quotient_imag = c.imag();
    d.residual = (z - d.lambda_hat * v).norm();
    const double threshold = acceptance_threshold(a.size(), delta);
    d.accept = d.residual <= threshold && std::abs(d.quotient_imag) <= threshold;
    return d;
}

Matrix build_filter_matrix(const HermitianMatrix &a, const FilterParams &params) {
    if (a.size() != params.n) {
        throw std::invalid_argument("build_filter_matrix: dimension mismatch");
    }
    const UnitaryMatrix u = unitary_exp(a, params.zeta);
    const UnitaryMatrix um = mat_power(u, params.m);
    const auto n = static_cast<Eigen::Index>(params.n);
    const Matrix half = (Matrix::Identity(n, n) + um.matrix()) * 0.5;
    return power_by_squaring(half, params.p);
}

FilterEngine::FilterEngine(HermitianMatrix a, double delta, uint64_t max_m)
    : a_(std::move(a)),
      delta_(delta),
      p_(filter_exponent(a_.size(), delta)),
      exp_tolerance_(compute_filter_params(a_.size(), max_m, delta).zeta),
      ladder_(unitary_exp(a_, exp_tolerance_).matrix(), max_m) {}

std::optional<Vector> FilterEngine::apply_filter(uint64_t m, const Vector &w0) const {
    if (m < 1 || m > ladder_.max_exponent()) {
        throw std::invalid_argument("FilterEngine: m outside [1, max_m]");
    }
    const auto n = static_cast<Eigen::Index>(a_.size());
    Matrix base = (Matrix::Identity(n, n) + ladder_.power(m)) * 0.5;

    // C^p w0 by repeated squaring, applying each needed power of C to the
    // vector instead of accumulating B. Once ||C^(2^j)||_F <= 1 every
    // remaining factor is bounded by it, so the product can be cut short when
    // it is certain to underflow.
    Vector v = w0;
    uint64_t e = p_;
    while (true) {
        if (e & 1) {
            v = base * v;
        }
        e >>= 1;
        if (e == 0) {
            break;
        }
        base = base * base;
        const double base_norm = base.norm();
        if (base_norm <= 1.0 && base_norm * v.norm() < kFilterUnderflow) {
            return std::nullopt;
        }
    }
    if (v.norm() < kFilterUnderflow) {
        return std::nullopt;
    }
    return v;
}

FilterOutcome FilterEngine::run_from(uint64_t m, const UnitVector &w0, uint64_t copy_id) const {
    std::optional<Vector> filtered = apply_filter(m, w0.vector());
    if (!filtered) {
        return Rejection{Rejection::Reason::kDegenerate, 0.0, copy_id, m};
    }
    Vector w = *filtered / filtered->norm();
    canonicalize_phase(w);
    UnitVector unit = UnitVector::normalized(w);
    const Decision d = decide(a_, unit, delta_);
    if (!d.accept) {
        const double threshold = acceptance_threshold(a_.size(), delta_);
        auto reason = d.residual > threshold ? Rejection::Reason::kResidual
                                             : Rejection::Reason::kComplexQuotient;
        return Rejection{reason, d.residual, copy_id, m};
    }
    return EigenEstimate{std::move(unit), d.lambda_hat, d.residual, copy_id, m};
}

FilterOutcome FilterEngine::run(uint64_t m, Engine &rng, uint64_t copy_id) const {
    UnitVector w0 = sample_unit_vector(a_.size(), rng);
    return run_from(m, w0, copy_id);
}

FilterOutcome filter_run(const HermitianMatrix &a, uint64_t m, double delta, RngSeed seed) {
    FilterEngine engine(a, delta, m);
    Engine rng = make_engine(seed);
    return engine.run(m, rng);
}

}  // namespace quasispec
