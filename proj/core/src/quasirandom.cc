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
#include "quasispec/quasirandom.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quasispec {

double frac(double x) {
    double f = x - std::floor(x);
    // Tiny negative x rounds x - floor(x) up to exactly 1.
    return f >= 1.0 ? 0.0 : f;
}

double frac_multiple(uint64_t m, double lambda) {
    return frac(static_cast<double>(m) * lambda);
}

double circ_dist(double x, double y) {
    double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
}

ResidualSequence::ResidualSequence(std::vector<double> seed_values, uint64_t length)
    : seeds_(std::move(seed_values)), length_(length) {
    if (length_ < 1) {
        throw std::invalid_argument("residual sequence length must be >= 1");
    }
    if (seeds_.empty()) {
        throw std::invalid_argument("residual sequence needs at least one seed value");
    }
    for (double s : seeds_) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("residual sequence seed values must be finite");
        }
    }
}

double ResidualSequence::at(uint64_t m, size_t i) const {
    if (m < 1 || m > length_ || i >= seeds_.size()) {
        throw std::out_of_range("residual sequence index out of range");
    }
    return frac_multiple(m, seeds_[i]);
}

std::vector<double> ResidualSequence::point(uint64_t m) const {
    std::vector<double> out(seeds_.size());
    for (size_t i = 0; i < seeds_.size(); ++i) {
        out[i] = at(m, i);
    }
    return out;
}

ResidualSequence ResidualSequence::select(std::span<const size_t> coords) const {
    std::vector<double> picked;
    picked.reserve(coords.size());
    for (size_t c : coords) {
        if (c >= seeds_.size()) {
            throw std::out_of_range("residual sequence coordinate out of range");
        }
        picked.push_back(seeds_[c]);
    }
    return ResidualSequence(std::move(picked), length_);
}

ResidualSequence residual_sequence(std::span<const double> lams, uint64_t length) {
    return ResidualSequence(std::vector<double>(lams.begin(), lams.end()), length);
}

bool separates(std::span<const double> lams, size_t k, uint64_t m, const Bands &bands) {
    if (k >= lams.size()) {
        throw std::out_of_range("separates: k out of range");
    }
    if (m < 1) {
        throw std::invalid_argument("separates: m must be >= 1");
    }
    if (circ_dist(frac_multiple(m, lams[k]), 0.0) > bands.r_in) {
        return false;
    }
    for (size_t j = 0; j < lams.size(); ++j) {
        if (j != k && circ_dist(frac_multiple(m, lams[j]), 0.0) < bands.r_out) {
            return false;
        }
    }
    return true;
}

double separation_probability_exact(std::span<const double> lams, size_t k, uint64_t length,
                                    const Bands &bands) {
    if (length < 1) {
        throw std::invalid_argument("separation_probability: length must be >= 1");
    }
    uint64_t hits = 0;
    for (uint64_t m = 1; m <= length; ++m) {
        hits += separates(lams, k, m, bands) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(length);
}

double separation_probability(std::span<const double> lams, size_t k, uint64_t length,
                              const Bands &bands, uint64_t trials, RngSeed seed) {
    if (trials < 1) {
        throw std::invalid_argument("separation_probability: trials must be >= 1");
    }
    if (trials >= length && length <= kExhaustiveSeparationLimit) {
        return separation_probability_exact(lams, k, length, bands);
    }
    Engine rng = make_engine(seed);
    std::uniform_int_distribution<uint64_t> pick(1, length);
    uint64_t hits = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        hits += separates(lams, k, pick(rng), bands) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

DiscrepancyReport star_discrepancy_1d(std::span<const double> points) {
    if (points.empty()) {
        throw std::invalid_argument("star_discrepancy_1d: empty point set");
    }
    if (points.size() > kStarDiscrepancyMaxLength) {
        throw std::invalid_argument("star_discrepancy_1d: more than 1e7 points");
    }
    std::vector<double> x(points.begin(), points.end());
    std::sort(x.begin(), x.end());
    const double count = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double below = static_cast<double>(i) / count;      // (i-1)/M, 1-based
        const double upto = static_cast<double>(i + 1) / count;   // i/M, 1-based
        d = std::max(d, std::max(x[i] - below, upto - x[i]));
    }
    DiscrepancyReport r;
    r.estimate = d;
    r.resolution = 0;
    r.upper_error = 0.0;
    r.dimension = 1;
    r.length = x.size();
    return r;
}

DiscrepancyReport star_discrepancy_1d(const ResidualSequence &seq) {
    if (seq.dimension() != 1) {
        throw std::invalid_argument("star_discrepancy_1d: sequence must be one-dimensional");
    }
    if (seq.length() > kStarDiscrepancyMaxLength) {
        throw std::invalid_argument("star_discrepancy_1d: more than 1e7 points");
    }
    std::vector<double> x(seq.length());
    for (uint64_t m = 1; m <= seq.length(); ++m) {
        x[m - 1] = seq.at(m, 0);
    }
    return star_discrepancy_1d(x);
}

namespace {

uint32_t grid_cell(double x, uint32_t k) {
    auto c = static_cast<int64_t>(std::floor(x * static_cast<double>(k)));
    return static_cast<uint32_t>(std::clamp<int64_t>(c, 0, static_cast<int64_t>(k) - 1));
}

void check_grid(size_t dimension, uint32_t k) {
    if (dimension != 1 && dimension != 2) {
        throw std::invalid_argument("box_discrepancy: dimension must be 1 or 2");
    }
    if (k < 1 || k > kMaxGridResolution) {
        throw std::invalid_argument("box_discrepancy: k must lie in [1, 512]");
    }
    if (dimension == 2 && k > kMaxGridResolution2d) {
        throw std::invalid_argument("box_discrepancy: k must be <= 256 in two dimensions");
    }
}

// Largest |count * k^s - length * L| over circular intervals of a row of
// cell counts, where L is the count-equivalent of one unit of length. With
// prefix values F(j) = S(j) k^s - j L, an ordinary interval [j1, j2) scores
// F(j2) - F(j1) and the wrap-around interval complementing it scores
// F(k) - (F(j2) - F(j1)), so only the extreme differences matter. All
// integer, so the maximum is exact.
int64_t max_circular_gap(const int64_t *counts, int64_t k, int64_t volume_scale, int64_t unit) {
    int64_t prefix = 0;
    int64_t f_min = 0;
    int64_t f_max = 0;
    int64_t d_max = 0;
    int64_t d_min = 0;
    for (int64_t j = 1; j <= k; ++j) {
        prefix += counts[j - 1];
        const int64_t f = prefix * volume_scale - j * unit;
        d_max = std::max(d_max, f - f_min);
        d_min = std::min(d_min, f - f_max);
        f_min = std::min(f_min, f);
        f_max = std::max(f_max, f);
    }
    const int64_t whole = prefix * volume_scale - k * unit;
    return std::max({d_max, -d_min, std::abs(whole - d_max), std::abs(whole - d_min)});
}

int64_t max_scaled_gap_1d(const std::vector<int64_t> &hist, int64_t total) {
    const auto k = static_cast<int64_t>(hist.size());
    return max_circular_gap(hist.data(), k, k, total);
}

int64_t max_scaled_gap_2d(const std::vector<int64_t> &hist, uint32_t k32, int64_t total) {
    const auto k = static_cast<int64_t>(k32);
    std::vector<int64_t> strip(static_cast<size_t>(k));
    int64_t best = 0;
    for (int64_t a1 = 0; a1 < k; ++a1) {
        std::fill(strip.begin(), strip.end(), 0);
        for (int64_t len1 = 1; len1 <= k; ++len1) {
            const int64_t *row = hist.data() + ((a1 + len1 - 1) % k) * k;
            for (int64_t j = 0; j < k; ++j) {
                strip[static_cast<size_t>(j)] += row[j];
            }
            best = std::max(best, max_circular_gap(strip.data(), k, k * k, len1 * total));
        }
    }
    return best;
}

}  // namespace

DiscrepancyReport box_discrepancy(std::span<const double> coords, size_t dimension, uint32_t k) {
    check_grid(dimension, k);
    if (coords.empty() || coords.size() % dimension != 0) {
        throw std::invalid_argument("box_discrepancy: coordinate array does not hold whole points");
    }
    const auto count = static_cast<int64_t>(coords.size() / dimension);
    std::vector<int64_t> hist(dimension == 1 ? k : static_cast<size_t>(k) * k, 0);
    for (int64_t p = 0; p < count; ++p) {
        if (dimension == 1) {
            ++hist[grid_cell(coords[static_cast<size_t>(p)], k)];
        } else {
            uint32_t r = grid_cell(coords[static_cast<size_t>(2 * p)], k);
            uint32_t c = grid_cell(coords[static_cast<size_t>(2 * p + 1)], k);
            ++hist[static_cast<size_t>(r) * k + c];
        }
    }
    int64_t gap = dimension == 1 ? max_scaled_gap_1d(hist, count) : max_scaled_gap_2d(hist, k, count);
    double scale = static_cast<double>(count) * std::pow(static_cast<double>(k), static_cast<double>(dimension));
    DiscrepancyReport r;
    r.estimate = static_cast<double>(gap) / scale;
    r.resolution = k;
    r.upper_error = static_cast<double>(dimension) / static_cast<double>(k);
    r.dimension = dimension;
    r.length = static_cast<uint64_t>(count);
    return r;
}

DiscrepancyReport box_discrepancy(const ResidualSequence &seq, uint32_t k) {
    check_grid(seq.dimension(), k);
    const size_t s = seq.dimension();
    std::vector<double> coords(seq.length() * s);
    for (uint64_t m = 1; m <= seq.length(); ++m) {
        for (size_t i = 0; i < s; ++i) {
            coords[(m - 1) * s + i] = seq.at(m, i);
        }
    }
    return box_discrepancy(coords, s, k);
}

namespace {

int64_t mod_floor(int64_t a, int64_t p) {
    int64_t r = a % p;
    return r < 0 ? r + p : r;
}

// Inverse of a modulo p for gcd(a, p) = 1.
int64_t mod_inverse(int64_t a, int64_t p) {
    int64_t old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return mod_floor(old_s, p);
}

struct RSumWalker {
    std::span<const int64_t> g;
    int64_t modulus;
    int64_t lo;
    int64_t hi;
    std::vector<int64_t> h;
    double sum = 0.0;

    double weight() const {
        double w = 1.0;
        for (int64_t v : h) {
            w *= static_cast<double>(std::max<int64_t>(1, std::abs(v)));
        }
        return 1.0 / w;
    }

    // Coordinates before `pos` are fixed; the last coordinate is solved
    // from the congruence instead of enumerated.
    void walk(size_t pos, int64_t partial) {
        const size_t last = g.size() - 1;
        if (pos < last) {
            for (int64_t v = lo; v <= hi; ++v) {
                h[pos] = v;
                walk(pos + 1, mod_floor(partial + mod_floor(g[pos], modulus) * mod_floor(v, modulus), modulus));
            }
            return;
        }
        // g_last * h_last = -partial (mod P)
        const int64_t a = mod_floor(g[last], modulus);
        const int64_t target = mod_floor(-partial, modulus);
        const int64_t d = std::gcd(a, modulus);
        if (target % d != 0) {
            return;
        }
        const int64_t step = modulus / d;
        const int64_t base = step == 1 ? 0 : mod_floor((target / d) * mod_inverse(a / d, step), step);
        int64_t v = lo + mod_floor(base - lo, step);
        for (; v <= hi; v += step) {
            h[last] = v;
            bool all_zero = std::all_of(h.begin(), h.end(), [](int64_t x) { return x == 0; });
            if (!all_zero) {
                sum += weight();
            }
        }
    }
};

}  // namespace

double r_sum(std::span<const int64_t> g, int64_t modulus) {
    const size_t s = g.size();
    if (s < 1 || s > 3) {
        throw std::invalid_argument("r_sum: dimension must be 1, 2 or 3");
    }
    if (modulus < 2) {
        throw std::invalid_argument("r_sum: modulus must be >= 2");
    }
    double cells = std::pow(static_cast<double>(modulus), static_cast<double>(s));
    if (cells > static_cast<double>(kRSumBudget)) {
        throw std::invalid_argument("r_sum: P^s exceeds the enumeration budget of 2^24");
    }
    RSumWalker walker{g, modulus, -(modulus / 2), modulus - 1 - modulus / 2, std::vector<int64_t>(s, 0)};
    walker.walk(0, 0);
    return walker.sum;
}

std::vector<double> van_der_corput(uint64_t count) {
    if (count < 1) {
        throw std::invalid_argument("van_der_corput: count must be >= 1");
    }
    std::vector<double> out;
    out.reserve(count);
    for (uint64_t n = 1; n <= count; ++n) {
        double x = 0.0;
        double place = 0.5;
        for (uint64_t v = n; v != 0; v >>= 1) {
            if (v & 1) {
                x += place;
            }
            place *= 0.5;
        }
        out.push_back(x);
    }
    return out;
}

std::vector<double> lattice_points(std::span<const int64_t> g, int64_t modulus) {
    if (modulus < 1 || g.empty()) {
        throw std::invalid_argument("lattice_points: need N >= 1 and a non-empty seed");
    }
    const size_t s = g.size();
    std::vector<double> out(static_cast<size_t>(modulus) * s);
    for (int64_t n = 1; n <= modulus; ++n) {
        for (size_t i = 0; i < s; ++i) {
            // (g_i * n) mod N without overflow for N < 2^31.
            int64_t r = mod_floor(mod_floor(g[i], modulus) * n, modulus);
            out[static_cast<size_t>(n - 1) * s + i] = static_cast<double>(r) / static_cast<double>(modulus);
        }
    }
    return out;
}

GoodSeedReport good_seed_test(int64_t modulus, size_t dimension, uint64_t trials, RngSeed seed, uint32_t k) {
    if (modulus < 2 || modulus >= (int64_t{1} << 31)) {
        throw std::invalid_argument("good_seed_test: N must lie in [2, 2^31)");
    }
    if (trials < 1) {
        throw std::invalid_argument("good_seed_test: trials must be >= 1");
    }
    check_grid(dimension, k);
    GoodSeedReport report;
    report.trials = trials;
    report.threshold = std::pow(std::log2(static_cast<double>(modulus)), static_cast<double>(dimension)) /
                           static_cast<double>(modulus) +
                       static_cast<double>(dimension) / static_cast<double>(k);
    Engine rng = make_engine(seed);
    std::uniform_int_distribution<int64_t> pick(0, modulus - 1);
    uint64_t passes = 0;
    std::vector<int64_t> g(dimension);
    for (uint64_t t = 0; t < trials; ++t) {
        for (auto &gi : g) {
            gi = pick(rng);
        }
        DiscrepancyReport d = box_discrepancy(lattice_points(g, modulus), dimension, k);
        report.worst_estimate = std::max(report.worst_estimate, d.estimate);
        passes += d.estimate <= report.threshold ? 1 : 0;
    }
    report.pass_fraction = static_cast<double>(passes) / static_cast<double>(trials);
    return report;
}

}  // namespace quasispec
