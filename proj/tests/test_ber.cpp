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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "cogrelay/ber.hpp"
#include "cogrelay/channel.hpp"
#include "cogrelay/numerics.hpp"

using namespace cogrelay;

namespace {

/// Average of the instantaneous BER against the hop SNR density, by quadrature.
double hop_ber_by_quadrature(double alpha, const QamConstants& c)
{
    QuadOptions o;
    o.tol = 1e-13;
    o.scale = std::max(alpha, 1.0);
    o.breakpoints = {0.25, 1.0, 4.0, 16.0, 64.0, 256.0};
    if (alpha > 256.0) {
        o.breakpoints.push_back(alpha);
    }
    return quad_semiinfinite([&](double g) { return instantaneous_ber(g, c) * snr_pdf(g, alpha); }, o);
}

/// Probability of an odd number of hop errors by enumerating all 2^K patterns.
double odd_error_probability(const std::vector<double>& p)
{
    const std::size_t k = p.size();
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        double prob = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            prob *= (mask >> i & 1u) ? p[i] : 1.0 - p[i];
        }
        if (std::popcount(mask) % 2 == 1) {
            total += prob;
        }
    }
    return total;
}

}  // namespace

TEST(QamConstants, FourQam)
{
    const auto c = qam_constants(4);
    ASSERT_EQ(c.terms.size(), 1u);
    EXPECT_EQ(c.terms[0].upsilon, 0);
    EXPECT_DOUBLE_EQ(c.terms[0].omega, 1.0);
    EXPECT_EQ(c.terms[0].phi, 1);
    EXPECT_DOUBLE_EQ(c.a, 0.5);
    EXPECT_DOUBLE_EQ(c.b, 1.0);
}

TEST(QamConstants, SixteenQam)
{
    const auto c = qam_constants(16);
    ASSERT_EQ(c.terms.size(), 5u);
    const std::vector<int> upsilon{1, 1, 2, 2, 2};
    const std::vector<int> phi{1, 1, 2, 1, -1};
    const std::vector<double> omega{0.4, 3.6, 0.4, 3.6, 10.0};
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        EXPECT_EQ(c.terms[i].upsilon, upsilon[i]);
        EXPECT_EQ(c.terms[i].phi, phi[i]);
        EXPECT_NEAR(c.terms[i].omega, omega[i], 1e-15);
    }
    EXPECT_DOUBLE_EQ(c.a, 3.0 / 8.0);
    EXPECT_DOUBLE_EQ(c.b, 0.4);
}

TEST(QamConstants, RejectsNonSquare)
{
    for (int m : {0, 1, 2, 8, 32, 128, -4}) {
        EXPECT_THROW(qam_constants(m), DomainError) << m;
    }
    EXPECT_NO_THROW(qam_constants(256));
}

TEST(QamConstants, HighSnrLeadingTermMatchesAsymptote)
{
    // the erfc terms with the smallest omega carry weight sum phi = sqrt(M) - 1
    for (int m : {4, 16, 64, 256}) {
        const auto c = qam_constants(m);
        const double omega_min = c.terms.front().omega;
        double weight = 0.0;
        for (const auto& t : c.terms) {
            if (t.omega == omega_min) {
                weight += t.phi;
            }
        }
        EXPECT_NEAR(weight / c.normalizer, c.a, 1e-15) << m;
        EXPECT_NEAR(omega_min, c.b, 1e-15) << m;
    }
}

TEST(InstantaneousBer, ReferenceValues)
{
    const auto c4 = qam_constants(4);
    EXPECT_DOUBLE_EQ(instantaneous_ber(0.0, c4), 0.5);
    EXPECT_NEAR(instantaneous_ber(1.0, c4), 0.5 * 0.15729920705028513, 1e-15);
    for (int m : {4, 16, 64}) {
        EXPECT_LT(instantaneous_ber(1e4, qam_constants(m)), 1e-300);
    }
    EXPECT_THROW(instantaneous_ber(-1.0, c4), DomainError);
}

TEST(HopBer, FrozenReferenceValues)
{
    // 50-digit closed-form evaluations, cross-checked by high-precision quadrature
    struct Case {
        int m;
        double alpha;
        double value;
    };
    const std::vector<Case> cases{
        {4, 0.1, 0.2972174603979018},        {4, 1.0, 0.12106392192934395},
        {4, 10.0, 0.021956693534861637},     {4, 1e3, 0.00024962593423343494},
        {4, 1e6, 2.499996250009375e-7},      {16, 0.1, 0.33622663857049123},
        {16, 1.0, 0.16246524616888994},      {16, 10.0, 0.038213083684386423},
        {16, 1e3, 0.00049546178069710788},   {16, 1e6, 4.9722045089062567e-7},
        {64, 0.1, 0.36376986710954281},      {64, 1.0, 0.2067379430510635},
        {64, 10.0, 0.0654164680453592},      {64, 1e3, 0.0011025131490890552},
        {64, 1e6, 1.1131488848947992e-6},
    };
    for (const auto& cs : cases) {
        EXPECT_NEAR(hop_ber(cs.alpha, qam_constants(cs.m)), cs.value, 1e-12 * cs.value)
            << "M=" << cs.m << " alpha=" << cs.alpha;
    }
}

TEST(HopBer, MatchesQuadrature)
{
    for (int m : {4, 16, 64}) {
        const auto c = qam_constants(m);
        for (double a : {0.1, 1.0, 10.0, 1e3, 1e6}) {
            const double closed = hop_ber(a, c);
            EXPECT_NEAR(closed, hop_ber_by_quadrature(a, c), 1e-8 * closed) << "M=" << m << " alpha=" << a;
        }
    }
}

TEST(HopBer, Limits)
{
    const auto c = qam_constants(4);
    EXPECT_NEAR(hop_ber(1e-12, c), 0.5, 1e-5);
    EXPECT_NEAR(hop_ber(1e6, c), c.a / (2.0 * c.b * 1e6), 1e-12);
    for (int m : {4, 16, 64, 256}) {
        const auto cm = qam_constants(m);
        const double limit = hop_ber(1e300, cm) * 1e300;
        for (double a : {1e10, 1e100, 1e300}) {
            const double v = hop_ber(a, cm);
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_GT(v, 0.0);
            EXPECT_NEAR(v * a, limit, 1e-8 * limit) << m << ' ' << a;
        }
        // only the leading erfc term survives for 4-QAM; higher orders keep a larger 1/alpha constant
        if (m == 4) {
            EXPECT_NEAR(limit, cm.a / (2.0 * cm.b), 1e-12);
        } else {
            EXPECT_GT(limit, cm.a / (2.0 * cm.b));
        }
    }
    EXPECT_THROW(hop_ber(0.0, c), DomainError);
}

TEST(HopBer, StrictlyDecreasing)
{
    for (int m : {4, 16, 64}) {
        const auto c = qam_constants(m);
        double prev = hop_ber(1e-3, c);
        for (double a = 1.2e-3; a < 1e8; a *= 1.2) {
            const double v = hop_ber(a, c);
            EXPECT_LT(v, prev) << m << ' ' << a;
            EXPECT_LE(v, 0.5);
            prev = v;
        }
    }
}

TEST(E2eBer, ReferenceValues)
{
    EXPECT_DOUBLE_EQ(e2e_ber(std::vector<double>{0.3}), 0.3);
    EXPECT_NEAR(e2e_ber(std::vector<double>{0.1, 0.2}), 0.26, 1e-15);
    EXPECT_EQ(e2e_ber(std::vector<double>{0.0, 0.0, 0.0}), 0.0);
    EXPECT_THROW(e2e_ber(std::vector<double>{0.1, 0.6}), DomainError);
    EXPECT_THROW(e2e_ber(std::vector<double>{-0.1}), DomainError);
}

TEST(E2eBer, EnumerationPermutationAndBounds)
{
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 8);
        std::vector<double> p(k);
        for (auto& v : p) {
            v = 0.5 * rng.uniform_open0();
        }
        const double e = e2e_ber(p);
        EXPECT_NEAR(e, odd_error_probability(p), 1e-14);
        EXPECT_GE(e, *std::max_element(p.begin(), p.end()) - 1e-15);
        EXPECT_LE(e, std::accumulate(p.begin(), p.end(), 0.0) + 1e-15);
        EXPECT_LE(e, 0.5);
        std::reverse(p.begin(), p.end());
        EXPECT_NEAR(e2e_ber(p), e, 1e-15);
        std::shuffle(p.begin(), p.end(), rng);
        EXPECT_NEAR(e2e_ber(p), e, 1e-15);
    }
}

TEST(E2eBer, IdenticalHops)
{
    for (int m : {4, 16, 64}) {
        const auto c = qam_constants(m);
        for (double a : {0.05, 1.0, 37.0, 1e5}) {
            const double p = hop_ber(a, c);
            EXPECT_DOUBLE_EQ(e2e_ber_iid(a, 1, c), p);
            EXPECT_NEAR(e2e_ber_iid(a, 2, c), 2.0 * p * (1.0 - p), 1e-15);
            for (int k = 1; k <= 6; ++k) {
                const std::vector<double> alphas(k, a);
                const double via_list = e2e_ber_from_alphas(alphas, c);
                EXPECT_NEAR(e2e_ber_iid(a, k, c), via_list, 1e-12 * via_list);
            }
        }
    }
}

TEST(E2eBer, Asymptote)
{
    const auto c = qam_constants(4);
    EXPECT_DOUBLE_EQ(e2e_ber_asymptotic(100.0, 2, c), 0.005);
    EXPECT_DOUBLE_EQ(e2e_ber_asymptotic(std::vector<double>{100.0, 200.0}, c), 0.00375);
    const std::vector<double> alphas(3, 1e5);
    const double ratio = e2e_ber_from_alphas(alphas, c) / e2e_ber_asymptotic(alphas, c);
    EXPECT_GE(ratio, 0.95);
    EXPECT_LE(ratio, 1.05);
    EXPECT_THROW(e2e_ber_asymptotic(0.0, 2, c), DomainError);
}

TEST(E2eBer, HigherOrderAsymptoteRatio)
{
    // exact / leading-term ratio at high SNR for 16- and 64-QAM
    const std::vector<double> alphas(2, 1e8);
    EXPECT_NEAR(e2e_ber_from_alphas(alphas, qam_constants(16)) / e2e_ber_asymptotic(alphas, qam_constants(16)),
                1.0607407, 1e-6);
    EXPECT_NEAR(e2e_ber_from_alphas(alphas, qam_constants(64)) / e2e_ber_asymptotic(alphas, qam_constants(64)),
                1.0904421, 1e-6);
}
