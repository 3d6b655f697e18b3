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
#include "quasispec/driver.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "quasispec/oracle.h"

namespace quasispec {

AsdParams compute_asd_params(size_t n, double delta, std::optional<double> b_config, AsdMode mode) {
    if (n == 0) {
        throw std::invalid_argument("asd: n must be >= 1");
    }
    const double nn = static_cast<double>(n);
    if (!(delta > 0.0) || delta > 1.0 / nn) {
        throw std::invalid_argument("asd: delta must lie in (0, 1/n], got " + std::to_string(delta));
    }
    if (b_config && !(*b_config > 0.0 && std::isfinite(*b_config))) {
        throw std::invalid_argument("asd: B must be positive and finite");
    }
    AsdParams p;
    p.n = n;
    p.delta = delta;
    p.mode = mode;
    p.B = b_config ? std::min(delta, *b_config) : delta;
    p.delta_prime = std::pow(std::min(delta, p.B), 13.0) / 4.0;
    p.clamped = p.delta_prime < kDeltaPrimeFloor;
    p.delta_prime_eff = std::max(p.delta_prime, kDeltaPrimeFloor);
    p.alpha = std::sqrt(std::log(1.0 / p.delta_prime_eff));
    p.T = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(60.0 * nn * p.alpha * std::log2(nn))));
    p.sigma = std::sqrt(p.delta_prime_eff * p.delta_prime_eff + delta * delta / (9.0 * nn));
    if (mode == AsdMode::kEmpirical) {
        uint64_t m = 1;
        for (int i = 0; i < 5; ++i) {
            if (m > std::numeric_limits<uint64_t>::max() / n) {
                throw std::invalid_argument("asd: n^5 overflows");
            }
            m *= n;
        }
        p.M = m;
    } else {
        // Work in log space: the base is far below double range for any
        // interesting n.
        const double log_floor = std::min(std::log(p.delta_prime), -50.0 * std::log(nn));
        const double log_m = -1.6 * log_floor;
        if (!std::isfinite(log_m) || log_m > std::log(kMaxTheoreticalM)) {
            throw std::invalid_argument("asd: theoretical M exceeds 1e8; use empirical mode");
        }
        p.M = static_cast<uint64_t>(std::ceil(std::exp(log_m)));
    }
    return p;
}

HermitianMatrix perturb(const HermitianMatrix &a, double sigma, RngSeed seed) {
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("perturb: sigma must be >= 0");
    }
    if (sigma == 0.0) {
        return a;
    }
    HermitianMatrix e = gue_sample(a.size(), seed);
    return HermitianMatrix::from_matrix(a.matrix() + sigma * e.matrix());
}

AsdDatabase bin_eigenvalues(std::vector<EigenEstimate> estimates, double bin_width) {
    if (estimates.empty()) {
        throw std::invalid_argument("bin_eigenvalues: no estimates");
    }
    if (!(bin_width > 0.0)) {
        throw std::invalid_argument("bin_eigenvalues: bin width must be positive");
    }
    std::stable_sort(estimates.begin(), estimates.end(), [](const EigenEstimate &x, const EigenEstimate &y) {
        if (x.lambda_hat != y.lambda_hat) {
            return x.lambda_hat < y.lambda_hat;
        }
        return x.copy_id < y.copy_id;
    });

    std::vector<size_t> starts;
    std::vector<size_t> best;
    double gamma = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        if (starts.empty() || estimates[i].lambda_hat - gamma >= bin_width) {
            starts.push_back(i);
            best.push_back(i);
            gamma = estimates[i].lambda_hat;
        } else if (estimates[i].residual < estimates[best.back()].residual) {
            best.back() = i;
        }
    }

    // Bin starts are bin_width apart by construction; representatives are
    // pinned back to them until every adjacent pair is again far enough.
    std::vector<size_t> chosen = best;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t b = 0; b + 1 < chosen.size(); ++b) {
            if (estimates[chosen[b + 1]].lambda_hat - estimates[chosen[b]].lambda_hat < bin_width) {
                for (size_t c : {b, b + 1}) {
                    if (chosen[c] != starts[c]) {
                        chosen[c] = starts[c];
                        changed = true;
                    }
                }
            }
        }
    }

    AsdDatabase db;
    db.bin_width = bin_width;
    db.entries.reserve(chosen.size());
    for (size_t idx : chosen) {
        db.entries.push_back(estimates[idx]);
    }
    return db;
}

namespace {

void record(CopyStats &stats, const FilterOutcome &outcome, uint64_t m, uint64_t big_m) {
    ++stats.copies;
    if (const auto *rej = std::get_if<Rejection>(&outcome)) {
        switch (rej->reason) {
            case Rejection::Reason::kDegenerate:
                ++stats.rejected_degenerate;
                break;
            case Rejection::Reason::kResidual:
                ++stats.rejected_residual;
                break;
            case Rejection::Reason::kComplexQuotient:
                ++stats.rejected_quotient;
                break;
        }
    } else {
        ++stats.accepted;
    }
    stats.m_min = stats.copies == 1 ? m : std::min(stats.m_min, m);
    stats.m_max = std::max(stats.m_max, m);
    stats.m_mean += (static_cast<double>(m) - stats.m_mean) / static_cast<double>(stats.copies);
    const auto bucket = static_cast<size_t>((m - 1) * kHistogramBuckets / big_m);
    ++stats.m_histogram[std::min(bucket, kHistogramBuckets - 1)];
}

}  // namespace

AsdResult asd_run(const HermitianMatrix &a, RngSeed seed, const AsdParams &params, const AsdOptions &options) {
    if (a.size() != params.n) {
        throw std::invalid_argument("asd_run: matrix size does not match params.n");
    }
    const uint64_t copies = options.copies.value_or(params.T);
    if (copies < 1) {
        throw std::invalid_argument("asd_run: copies must be >= 1");
    }
    AsdResult result;
    result.perturbed = perturb(a, params.sigma, substream(seed, 0));
    const RngSeed copy_root = substream(seed, 1);

    const FilterEngine engine(result.perturbed, params.delta_prime_eff, params.M);
    std::vector<std::optional<FilterOutcome>> outcomes(copies);
    std::vector<uint64_t> ms(copies);

    auto worker = [&](std::atomic<uint64_t> &next) {
        std::uniform_int_distribution<uint64_t> pick(1, params.M);
        for (uint64_t i = next++; i < copies; i = next++) {
            Engine rng = make_engine(substream(copy_root, i));
            ms[i] = pick(rng);
            outcomes[i] = engine.run(ms[i], rng, i);
        }
    };
    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, copies));
    std::atomic<uint64_t> next{0};
    if (threads <= 1) {
        worker(next);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] { worker(next); });
        }
    }

    for (uint64_t i = 0; i < copies; ++i) {
        record(result.stats, *outcomes[i], ms[i], params.M);
        if (auto *est = std::get_if<EigenEstimate>(&*outcomes[i])) {
            result.accepted.push_back(std::move(*est));
        }
    }

    const double bin_width = params.B / 4.0;
    if (result.accepted.empty()) {
        result.database.bin_width = bin_width;
    } else {
        result.database = bin_eigenvalues(result.accepted, bin_width);
    }
    result.database.transform = options.transform;
    result.complete = result.database.entries.size() == params.n;
    return result;
}

AsdVerification verify_asd(const HermitianMatrix &a, const AsdDatabase &db, double delta) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Matrix recon = Matrix::Zero(n, n);
    AsdVerification v;
    for (const EigenEstimate &e : db.entries) {
        if (e.w.size() != a.size()) {
            throw std::invalid_argument("verify_asd: vector dimension does not match the matrix");
        }
        const Vector &w = e.w.vector();
        v.residual_max = std::max(v.residual_max, (a.matrix() * w - e.lambda_hat * w).norm());
        recon.noalias() += e.lambda_hat * (w * w.adjoint());
    }
    v.reconstruction_error = spectral_norm(recon - a.matrix());
    const double a_norm = spectral_norm(a.matrix());
    v.ok = db.entries.size() == a.size() && v.residual_max <= delta && v.reconstruction_error <= delta * a_norm;
    return v;
}

double min_gap(const HermitianMatrix &a) {
    const EigenDecomposition eig = jacobi_eigh(a);
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < eig.values.size(); ++i) {
        gap = std::min(gap, eig.values[i] - eig.values[i + 1]);
    }
    return gap;
}

}  // namespace quasispec
