/*
   Copyright 2026 The cogrelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cogrelay/ber.hpp"
#include "cogrelay/capacity.hpp"
#include "cogrelay/montecarlo.hpp"
#include "cogrelay/outage.hpp"

using namespace cogrelay;

namespace {

McOptions options(std::uint64_t trials, std::uint64_t seed, unsigned chunks = 1)
{
    McOptions o;
    o.trials = trials;
    o.seed = seed;
    o.chunks = chunks;
    return o;
}

void expect_within_three_sigma(const McEstimate& e, double exact)
{
    EXPECT_LE(std::abs(e.value - exact), 3.0 * e.std_error) << "estimate " << e.value << " exact " << exact
                                                             << " std_error " << e.std_error;
}

}  // namespace

TEST(MonteCarlo, OutageZeroThreshold)
{
    const auto e = mc_outage(std::vector<double>{1.0, 2.0}, 0.0, options(10000, 1));
    EXPECT_EQ(e.value, 0.0);
    EXPECT_EQ(e.std_error, 0.0);
    EXPECT_EQ(e.trials, 10000u);
    EXPECT_EQ(e.seed, 1u);
}

TEST(MonteCarlo, OutageMedianThreshold)
{
    const auto e = mc_outage(std::vector<double>{2.5}, 2.5, options(1'000'000, 11));
    expect_within_three_sigma(e, 0.5);
}

TEST(MonteCarlo, OutageDefaultScenario)
{
    Scenario s;
    s.ip_over_n0 = db_to_linear(15.0);
    const auto e = mc_outage(s, options(1'000'000, 12));
    expect_within_three_sigma(e, outage_exact(alphas_of(derive_hop_statistics(s)), s.gamma_th));
}

TEST(MonteCarlo, BerSingleHop)
{
    const auto e = mc_ber(std::vector<double>{1.0}, 4, options(1'000'000, 13));
    expect_within_three_sigma(e, 0.12106392192934395);
    EXPECT_GE(e.value, 0.0);
    EXPECT_LE(e.value, 0.5);
}

TEST(MonteCarlo, BerTwoHopsIndependent)
{
    const std::vector<double> a{3.0, 12.0};
    const auto c = qam_constants(16);
    const double exact = e2e_ber_from_alphas(a, c);
    const auto e = mc_ber(a, 16, options(1'000'000, 14));
    EXPECT_NEAR(e.value, exact, 0.02 * exact);
    expect_within_three_sigma(e, exact);
}

TEST(MonteCarlo, BerVanishesForStrongLinks)
{
    Scenario s;
    s.hop_count = 2;
    s.lambda_overrides = std::vector<LinkPowers>{{1e12, 1.0}, {1e12, 1.0}};
    const auto e = mc_ber(s, options(20000, 15));
    EXPECT_LT(e.value, 1e-9);
}

TEST(MonteCarlo, CapacityReferences)
{
    expect_within_three_sigma(mc_capacity(std::vector<double>{1.0}, options(1'000'000, 16)), 1.4426950408889634);
    expect_within_three_sigma(mc_capacity(std::vector<double>{1.0, 2.0}, options(1'000'000, 17)),
                              0.44269504088896341);
}

TEST(MonteCarlo, StdErrorShrinksWithTrials)
{
    const std::vector<double> a{1.0, 4.0};
    const auto small = mc_capacity(a, options(200'000, 18));
    const auto big = mc_capacity(a, options(400'000, 18));
    EXPECT_NEAR(small.std_error / big.std_error, std::sqrt(2.0), 0.05);
}

TEST(MonteCarlo, DeterministicAndChunkInvariant)
{
    Scenario s;
    s.ip_over_n0 = 10.0;
    const auto ref = mc_ber(s, options(100'003, 99, 1));
    for (unsigned chunks : {1u, 2u, 4u, 16u, 64u}) {
        const auto e = mc_ber(s, options(100'003, 99, chunks));
        EXPECT_EQ(e.value, ref.value) << chunks;
        EXPECT_EQ(e.std_error, ref.std_error) << chunks;
        EXPECT_EQ(e.trials, 100'003u);
    }
    EXPECT_NE(mc_ber(s, options(100'003, 100)).value, ref.value);
}

TEST(MonteCarlo, TinyRuns)
{
    const auto one = mc_outage(std::vector<double>{1.0}, 1.0, options(1, 3));
    EXPECT_EQ(one.trials, 1u);
    EXPECT_EQ(one.std_error, 0.0);
    EXPECT_TRUE(one.value == 0.0 || one.value == 1.0);
    EXPECT_THROW(mc_outage(std::vector<double>{1.0}, 1.0, options(0, 3)), DomainError);
    EXPECT_THROW(mc_outage(std::vector<double>{1.0}, 1.0, options(10, 3, 0)), DomainError);
    EXPECT_THROW(mc_capacity(std::vector<double>{}, options(10, 3)), DomainError);
}

TEST(MonteCarlo, MergedStatisticsMatchSinglePass)
{
    detail::RunningStats all;
    detail::RunningStats left;
    detail::RunningStats right;
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform_open0() * 10.0;
        all.push(v);
        (i < 377 ? left : right).push(v);
    }
    left.merge(right);
    EXPECT_EQ(left.n, all.n);
    EXPECT_NEAR(left.mean, all.mean, 1e-13);
    EXPECT_NEAR(left.m2, all.m2, 1e-9);
}
