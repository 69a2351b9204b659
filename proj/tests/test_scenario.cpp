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
#include <numeric>

#include <gtest/gtest.h>

#include "cogrelay/scenario.hpp"

using namespace cogrelay;

TEST(PathLoss, SingleSlope)
{
    EXPECT_DOUBLE_EQ(average_channel_power(1.0, 4.0), 1.0);
    EXPECT_DOUBLE_EQ(average_channel_power(0.5, 4.0), 16.0);
    EXPECT_DOUBLE_EQ(average_channel_power(2.0, 2.0), 0.25);
    EXPECT_THROW(average_channel_power(0.0, 4.0), DomainError);
    EXPECT_THROW(average_channel_power(-1.0, 4.0), DomainError);
    EXPECT_THROW(average_channel_power(1.0, 1.5), DomainError);
}

TEST(Geometry, DefaultPrimaryReceiver)
{
    Scenario s;
    s.hop_count = 1;
    auto g = hop_geometry(s);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_DOUBLE_EQ(g[0].d_data, 1.0);
    EXPECT_NEAR(g[0].d_interference, std::sqrt(0.245), 1e-15);

    s.hop_count = 2;
    g = hop_geometry(s);
    EXPECT_DOUBLE_EQ(g[0].d_data, 0.5);
    EXPECT_DOUBLE_EQ(g[1].d_data, 0.5);
    EXPECT_NEAR(g[0].d_interference, 0.4949747468305833, 1e-15);
    EXPECT_NEAR(g[1].d_interference, std::sqrt(0.15 * 0.15 + 0.35 * 0.35), 1e-15);
}

TEST(Geometry, HopLengthsSumToOne)
{
    Scenario s;
    for (int k = 1; k <= 64; ++k) {
        s.hop_count = k;
        const auto g = hop_geometry(s);
        double sum = 0.0;
        for (const auto& h : g) {
            sum += h.d_data;
            EXPECT_GE(h.d_interference, std::abs(s.primary_receiver.y));
        }
        EXPECT_NEAR(sum, 1.0, 1e-12) << k;
    }
}

TEST(Geometry, ExplicitRelays)
{
    Scenario s;
    s.hop_count = 3;
    s.relay_positions = {0.2, 0.7};
    const auto g = hop_geometry(s);
    EXPECT_DOUBLE_EQ(g[0].d_data, 0.2);
    EXPECT_DOUBLE_EQ(g[1].d_data, 0.5);
    EXPECT_NEAR(g[2].d_data, 0.3, 1e-15);
    EXPECT_NEAR(g[1].d_interference, std::hypot(0.35 - 0.2, 0.35), 1e-15);
}

TEST(HopStatistics, SingleHopReference)
{
    Scenario s;
    s.hop_count = 1;
    const auto st = derive_hop_statistics(s);
    EXPECT_DOUBLE_EQ(st[0].lambda_d, 1.0);
    EXPECT_NEAR(st[0].lambda_i, 1.0 / (0.245 * 0.245), 1e-10);
    EXPECT_NEAR(st[0].alpha, 0.060025, 1e-15);
}

TEST(HopStatistics, OverridesWin)
{
    Scenario s;
    s.hop_count = 2;
    s.ip_over_n0 = 10.0;
    s.lambda_overrides = std::vector<LinkPowers>{{3.0, 3.0}, {2.0, 1.0}};
    const auto st = derive_hop_statistics(s);
    EXPECT_DOUBLE_EQ(st[0].alpha, 10.0);
    EXPECT_DOUBLE_EQ(st[1].alpha, 20.0);

    s.lambda_overrides->pop_back();
    EXPECT_THROW(derive_hop_statistics(s), ConfigError);
}

TEST(HopStatistics, AlphaIsLinearInInterferenceBudget)
{
    Scenario s;
    s.hop_count = 4;
    s.ip_over_n0 = 3.0;
    const auto a = derive_hop_statistics(s);
    s.ip_over_n0 = 6.0;
    const auto b = derive_hop_statistics(s);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_DOUBLE_EQ(b[k].alpha, 2.0 * a[k].alpha);
        EXPECT_DOUBLE_EQ(a[k].alpha, a[k].lambda_d / a[k].lambda_i * 3.0);
    }
}

TEST(HopStatistics, JointPowerScalingInvariance)
{
    Scenario s;
    s.hop_count = 2;
    s.ip_over_n0 = 5.0;
    s.lambda_overrides = std::vector<LinkPowers>{{0.3, 1.7}, {2.5, 0.4}};
    const auto a = derive_hop_statistics(s);
    for (auto& p : *s.lambda_overrides) {
        p.lambda_d *= 1e3;
        p.lambda_i *= 1e3;
    }
    const auto b = derive_hop_statistics(s);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_NEAR(b[k].alpha, a[k].alpha, 1e-14 * a[k].alpha);
    }
}

TEST(ScenarioValidation, RejectsBadFields)
{
    auto bad = [](auto mutate) {
        Scenario s;
        mutate(s);
        EXPECT_THROW(s.validate(), ConfigError);
    };
    bad([](Scenario& s) { s.hop_count = 0; });
    bad([](Scenario& s) { s.path_loss_exponent = 1.9; });
    bad([](Scenario& s) { s.ip_over_n0 = 0.0; });
    bad([](Scenario& s) { s.gamma_th = -1.0; });
    bad([](Scenario& s) { s.qam_order = 8; });
    bad([](Scenario& s) { s.qam_order = 2; });
    bad([](Scenario& s) { s.destination = {2.0, 0.0}; });
    bad([](Scenario& s) { s.relay_positions = {0.5}; });
    bad([](Scenario& s) { s.relay_positions = {0.6, 0.4}; });
    bad([](Scenario& s) { s.relay_positions = {0.4, 1.0}; });
    bad([](Scenario& s) { s.relay_positions = {0.0, 0.5}; });
    Scenario ok;
    EXPECT_NO_THROW(ok.validate());
}

TEST(ScenarioValidation, PowerOfFour)
{
    EXPECT_TRUE(is_power_of_four(4));
    EXPECT_TRUE(is_power_of_four(16));
    EXPECT_TRUE(is_power_of_four(256));
    EXPECT_FALSE(is_power_of_four(1));
    EXPECT_FALSE(is_power_of_four(8));
    EXPECT_FALSE(is_power_of_four(32));
}

TEST(ScenarioValidation, PrimaryReceiverOnTransmitter)
{
    Scenario s;
    s.hop_count = 2;
    s.primary_receiver = {0.5, 0.0};
    EXPECT_THROW(derive_hop_statistics(s), ConfigError);
}

TEST(Relays, PositionsFromHops)
{
    const auto xs = relay_positions_from_hops({0.25, 0.5, 0.25});
    ASSERT_EQ(xs.size(), 2u);
    EXPECT_DOUBLE_EQ(xs[0], 0.25);
    EXPECT_DOUBLE_EQ(xs[1], 0.75);
}
