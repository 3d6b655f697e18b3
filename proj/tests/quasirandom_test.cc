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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "testing/reference.h"

namespace quasispec {
namespace {

TEST(Frac, UnitIntervalConvention) {
    EXPECT_EQ(frac(0.25), 0.25);
    EXPECT_EQ(frac(-0.25), 0.75);
    EXPECT_EQ(frac(3.0), 0.0);
    EXPECT_EQ(frac(-1e-18), 0.0);
    Engine rng = make_engine(RngSeed{1, 0});
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    std::uniform_int_distribution<uint64_t> big(1, 100'000'000);
    for (int i = 0; i < 10000; ++i) {
        double f = frac_multiple(big(rng), unif(rng));
        EXPECT_GE(f, 0.0);
        EXPECT_LT(f, 1.0);
    }
}

TEST(ResidualSequence, Examples) {
    std::vector<double> q{0.25};
    ResidualSequence a = residual_sequence(q, 4);
    EXPECT_EQ(a.at(1, 0), 0.25);
    EXPECT_EQ(a.at(2, 0), 0.5);
    EXPECT_EQ(a.at(3, 0), 0.75);
    EXPECT_EQ(a.at(4, 0), 0.0);

    std::vector<double> two{1.0 / 3.0, 0.5};
    std::vector<double> p = residual_sequence(two, 3).point(3);
    EXPECT_NEAR(circ_dist(p[0], 0.0), 0.0, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);

    std::vector<double> neg{-0.25};
    EXPECT_EQ(residual_sequence(neg, 1).at(1, 0), 0.75);
}

TEST(ResidualSequence, BoundsAndSelection) {
    std::vector<double> s{0.1, 0.2, 0.3};
    ResidualSequence seq = residual_sequence(s, 10);
    EXPECT_THROW(seq.at(0, 0), std::out_of_range);
    EXPECT_THROW(seq.at(11, 0), std::out_of_range);
    EXPECT_THROW(seq.at(1, 3), std::out_of_range);
    std::vector<size_t> pick{2, 0};
    ResidualSequence sub = seq.select(pick);
    EXPECT_EQ(sub.dimension(), 2u);
    EXPECT_EQ(sub.at(7, 0), seq.at(7, 2));
    EXPECT_EQ(sub.at(7, 1), seq.at(7, 0));
    EXPECT_THROW(residual_sequence(s, 0), std::invalid_argument);
}

TEST(CircDist, Examples) {
    EXPECT_NEAR(circ_dist(0.1, 0.9), 0.2, 1e-15);
    EXPECT_EQ(circ_dist(0.0, 0.5), 0.5);
    EXPECT_EQ(circ_dist(0.37, 0.37), 0.0);
}

TEST(Separates, Examples) {
    std::vector<double> lams{0.5, 1.0 / 3.0};
    Bands b{0.005, 0.04};
    EXPECT_TRUE(separates(lams, 1, 3, b));
    EXPECT_FALSE(separates(lams, 1, 2, b));
    std::vector<double> quarter{0.25, 0.75};
    EXPECT_FALSE(separates(quarter, 0, 4, b));
    EXPECT_THROW(separates(lams, 2, 1, b), std::out_of_range);
}

TEST(Separates, MonotoneInBands) {
    Engine rng = make_engine(RngSeed{5, 0});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<uint64_t> pick(1, 5000);
    for (int t = 0; t < 2000; ++t) {
        std::vector<double> lams(4);
        for (double &l : lams) {
            l = unif(rng);
        }
        Bands b{0.02 * unif(rng), 0.02 + 0.05 * unif(rng)};
        Bands wider{b.r_in * 1.5, b.r_out * 0.5};
        const uint64_t m = pick(rng);
        const size_t k = static_cast<size_t>(t % 4);
        if (separates(lams, k, m, b)) {
            EXPECT_TRUE(separates(lams, k, m, wider));
        }
    }
}

TEST(SeparationProbability, ExhaustiveSmallCases) {
    std::vector<double> half{0.5};
    Bands b{0.01, 0.04};
    EXPECT_EQ(separation_probability(half, 0, 2, b, 2, RngSeed{0, 0}), 0.5);

    std::vector<double> lams{1.0 / 3.0, 0.5};
    size_t count = 0;
    for (uint64_t m = 1; m <= 6; ++m) {
        const double x = std::fmod(static_cast<double>(m) / 3.0, 1.0);
        const double y = std::fmod(static_cast<double>(m) / 2.0, 1.0);
        const bool in = std::min(x, 1.0 - x) <= b.r_in;
        const bool out = std::min(y, 1.0 - y) >= b.r_out;
        count += (in && out) ? 1 : 0;
    }
    EXPECT_EQ(separation_probability(lams, 0, 6, b, 6, RngSeed{0, 0}), static_cast<double>(count) / 6.0);
    EXPECT_EQ(count, 1u);
}

TEST(SeparationProbability, MonteCarloConverges) {
    std::vector<double> half{0.5};
    Bands b{0.01, 0.04};
    const uint64_t trials = 4000;
    double est = separation_probability(half, 0, 2000, b, trials, RngSeed{3, 0});
    EXPECT_NEAR(est, 0.5, 3.0 * std::sqrt(0.25 / trials));
    EXPECT_EQ(est, separation_probability(half, 0, 2000, b, trials, RngSeed{3, 0}));
}

TEST(SeparationProbability, VacuousBands) {
    std::vector<double> lams{0.123, 0.456, 0.789};
    Bands b{0.5 - 1e-12, 0.0};
    EXPECT_EQ(separation_probability(lams, 1, 1000, b, 1000, RngSeed{0, 0}), 1.0);
}

TEST(StarDiscrepancy, LatticeAndDegenerate) {
    for (uint64_t mp : {1u, 7u, 64u, 199u}) {
        std::vector<double> s{1.0 / static_cast<double>(mp)};
        DiscrepancyReport r = star_discrepancy_1d(residual_sequence(s, mp));
        EXPECT_NEAR(r.estimate, 1.0 / static_cast<double>(mp), 1e-12);
        EXPECT_EQ(r.upper_error, 0.0);
        EXPECT_EQ(r.resolution, 0u);
    }
    std::vector<double> zeros(50, 0.0);
    EXPECT_EQ(star_discrepancy_1d(zeros).estimate, 1.0);
    EXPECT_EQ(testing::brute_star_discrepancy(zeros), 1.0);
}

TEST(StarDiscrepancy, MatchesBruteForceExactly) {
    Engine rng = make_engine(RngSeed{17, 0});
    std::uniform_int_distribution<size_t> len(1, 100);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> pts(len(rng));
        for (double &x : pts) {
            x = unif(rng);
        }
        if (t % 5 == 0) {
            // Repeated points exercise the tie handling.
            pts.push_back(pts.front());
        }
        EXPECT_EQ(star_discrepancy_1d(pts).estimate, testing::brute_star_discrepancy(pts));
    }
}

TEST(StarDiscrepancy, VanDerCorputPrefix) {
    std::vector<double> v = van_der_corput(64);
    const double d = star_discrepancy_1d(v).estimate;
    EXPECT_LE(d, (std::log2(64.0) + 2.0) / 64.0);
    EXPECT_EQ(d, testing::brute_star_discrepancy(v));
}

TEST(StarDiscrepancy, PointwisePerturbationStability) {
    // Anchored boxes move by at most eps in one dimension.
    Engine rng = make_engine(RngSeed{23, 0});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const double eps = 1e-3;
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(300), y(300);
        for (size_t i = 0; i < x.size(); ++i) {
            x[i] = unif(rng);
            y[i] = std::clamp(x[i] + eps * jitter(rng), 0.0, std::nextafter(1.0, 0.0));
        }
        EXPECT_LE(std::abs(star_discrepancy_1d(x).estimate - star_discrepancy_1d(y).estimate), eps + 1e-15);
    }
}

TEST(BoxDiscrepancy, OneDimensionalLatticeAgreesWithStar) {
    const uint32_t k = 100;
    std::vector<double> s{1.0 / k};
    ResidualSequence seq = residual_sequence(s, k);
    DiscrepancyReport box = box_discrepancy(seq, k);
    DiscrepancyReport star = star_discrepancy_1d(seq);
    EXPECT_NEAR(box.estimate, star.estimate, 1.0 / k);
    EXPECT_EQ(box.upper_error, 1.0 / k);
    EXPECT_EQ(box.resolution, k);
}

TEST(BoxDiscrepancy, DiagonalPointsAgainstDirectEnumeration) {
    std::vector<double> coords;
    for (int j = 0; j < 4; ++j) {
        coords.push_back(0.125 + 0.25 * j);
        coords.push_back(0.125 + 0.25 * j);
    }
    DiscrepancyReport r = box_discrepancy(coords, 2, 8);
    EXPECT_EQ(r.estimate, testing::brute_box_discrepancy(coords, 2, 8));
    EXPECT_EQ(r.dimension, 2u);
    EXPECT_EQ(r.upper_error, 2.0 / 8.0);
}

TEST(BoxDiscrepancy, RandomAgainstDirectEnumeration) {
    Engine rng = make_engine(RngSeed{31, 0});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const size_t dim = 1 + static_cast<size_t>(t % 2);
        const uint32_t k = dim == 1 ? 5 + static_cast<uint32_t>(t) : 3 + static_cast<uint32_t>(t % 7);
        std::vector<double> coords(dim * (1 + static_cast<size_t>(t) * 3));
        for (double &c : coords) {
            c = unif(rng);
        }
        EXPECT_EQ(box_discrepancy(coords, dim, k).estimate, testing::brute_box_discrepancy(coords, dim, k))
            << "dim " << dim << " k " << k;
    }
}

TEST(BoxDiscrepancy, EstimateInUnitInterval) {
    std::vector<double> zeros(20, 0.0);
    DiscrepancyReport r = box_discrepancy(zeros, 2, 16);
    EXPECT_GE(r.estimate, 0.0);
    EXPECT_LE(r.estimate, 1.0);
    EXPECT_NEAR(r.estimate, 1.0 - 1.0 / 256.0, 1e-15);
}

TEST(BoxDiscrepancy, RejectsUnsupportedShapes) {
    std::vector<double> three{0.1, 0.2, 0.3};
    EXPECT_THROW(box_discrepancy(three, 3, 8), std::invalid_argument);
    EXPECT_THROW(box_discrepancy(three, 1, 0), std::invalid_argument);
    EXPECT_THROW(box_discrepancy(three, 1, 513), std::invalid_argument);
    std::vector<double> pairs{0.1, 0.2};
    EXPECT_THROW(box_discrepancy(pairs, 2, 257), std::invalid_argument);
    EXPECT_THROW(box_discrepancy(three, 2, 8), std::invalid_argument);
    std::vector<double> s{0.1, 0.2, 0.3};
    EXPECT_THROW(box_discrepancy(residual_sequence(s, 10), 8), std::invalid_argument);
}

TEST(BoxDiscrepancy, GridShiftInvariance) {
    // A constant shift by whole grid cells permutes the cells cyclically;
    // an arbitrary shift stays within the two sandwich errors.
    Engine rng = make_engine(RngSeed{41, 0});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const uint32_t k = 32;
    for (int t = 0; t < 10; ++t) {
        std::vector<double> x(2 * 400);
        for (double &c : x) {
            c = unif(rng);
        }
        std::vector<double> cell_shift(x.size()), any_shift(x.size());
        const double c1 = 5.0 / k, c2 = 19.0 / k;
        const double z1 = unif(rng), z2 = unif(rng);
        for (size_t i = 0; i < x.size(); i += 2) {
            cell_shift[i] = frac(x[i] + c1);
            cell_shift[i + 1] = frac(x[i + 1] + c2);
            any_shift[i] = frac(x[i] + z1);
            any_shift[i + 1] = frac(x[i + 1] + z2);
        }
        const double dx = box_discrepancy(x, 2, k).estimate;
        EXPECT_NEAR(box_discrepancy(cell_shift, 2, k).estimate, dx, 1e-12);
        EXPECT_LE(std::abs(box_discrepancy(any_shift, 2, k).estimate - dx), 2.0 * 2.0 / k);
    }
}

TEST(BoxDiscrepancy, PointwisePerturbationStability) {
    Engine rng = make_engine(RngSeed{43, 0});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const double eps = 1e-3;
    const uint32_t k = 64;
    for (size_t dim : {1u, 2u}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<double> x(dim * 2000), y(x.size());
            for (size_t i = 0; i < x.size(); ++i) {
                x[i] = unif(rng);
                y[i] = frac(x[i] + eps * jitter(rng));
            }
            const double s = static_cast<double>(dim);
            EXPECT_LE(std::abs(box_discrepancy(x, dim, k).estimate - box_discrepancy(y, dim, k).estimate),
                      s * eps + 2.0 * s / k);
        }
    }
}

TEST(RSum, Examples) {
    std::vector<int64_t> g12{1, 2};
    EXPECT_EQ(r_sum(g12, 5), 2.0);
    std::vector<int64_t> g1{1};
    EXPECT_EQ(r_sum(g1, 4), 0.0);
    std::vector<int64_t> g0{0};
    EXPECT_EQ(r_sum(g0, 4), 2.5);
}

TEST(RSum, MatchesBruteForceExactly) {
    Engine rng = make_engine(RngSeed{53, 0});
    std::uniform_int_distribution<int64_t> mod(2, 40);
    for (int t = 0; t < 60; ++t) {
        const int64_t p = mod(rng);
        const size_t s = 1 + static_cast<size_t>(t % 3);
        std::uniform_int_distribution<int64_t> coord(-p, 2 * p);
        std::vector<int64_t> g(s);
        for (int64_t &x : g) {
            x = coord(rng);
        }
        EXPECT_EQ(r_sum(g, p), testing::brute_r_sum(g, p)) << "P " << p << " s " << s;
    }
}

TEST(RSum, Budget) {
    std::vector<int64_t> g2{1, 3};
    EXPECT_NO_THROW(r_sum(g2, 4096));
    EXPECT_THROW(r_sum(g2, 4097), std::invalid_argument);
    std::vector<int64_t> g4{1, 2, 3, 4};
    EXPECT_THROW(r_sum(g4, 5), std::invalid_argument);
    EXPECT_THROW(r_sum(g2, 1), std::invalid_argument);
}

TEST(VanDerCorput, FirstTerms) {
    std::vector<double> v = van_der_corput(7);
    EXPECT_EQ(v, (std::vector<double>{0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875}));
}

TEST(GoodSeed, KnownSeeds) {
    const int64_t n = 251;
    std::vector<int64_t> one{1};
    std::vector<double> pts = lattice_points(one, n);
    const double d = star_discrepancy_1d(pts).estimate;
    EXPECT_NEAR(d, 1.0 / n, 1e-15);
    EXPECT_LE(d, std::log2(static_cast<double>(n)) / n);

    std::vector<int64_t> zero{0};
    EXPECT_GE(star_discrepancy_1d(lattice_points(zero, n)).estimate, 1.0 - 1.0 / n);
}

TEST(GoodSeed, PassFractionOneDimension) {
    GoodSeedReport r = good_seed_test(251, 1, 50, RngSeed{61, 0}, 251);
    EXPECT_GE(r.pass_fraction, 0.9);
    EXPECT_EQ(r.trials, 50u);
    EXPECT_NEAR(r.threshold, std::log2(251.0) / 251.0 + 1.0 / 251.0, 1e-15);
}

}  // namespace
}  // namespace quasispec
