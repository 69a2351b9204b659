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

#pragma once

#include <cmath>
#include <numeric>
#include <span>

#include "cogrelay/errors.hpp"
#include "cogrelay/scenario.hpp"

namespace cogrelay {

struct OutageResult {
    double op_exact = 0.0;
    double op_asymptotic = 0.0;
    double diversity_order = 1.0;
    double coding_gain = 0.0;
};

/*!
 * End-to-end outage probability 1 - prod_k alpha_k / (gamma_th + alpha_k).
 *
 * The product is accumulated as a sum of log1p terms and mapped back with
 * expm1, which keeps full relative precision for tiny outages and avoids
 * underflow of the product for long routes.
 */
inline double outage_exact(std::span<const double> alphas, double gamma_th)
{
    detail::require(!alphas.empty(), "outage_exact: at least one hop required");
    detail::require(gamma_th >= 0.0, "outage_exact: gamma_th must be non-negative");
    double log_survival = 0.0;
    for (double a : alphas) {
        detail::require(a > 0.0, "outage_exact: alpha must be positive");
        log_survival -= std::log1p(gamma_th / a);
    }
    return -std::expm1(log_survival);
}

inline double ratio_sum(std::span<const LinkPowers> links)
{
    double s = 0.0;
    for (const auto& l : links) {
        detail::require(l.lambda_d > 0.0 && l.lambda_i > 0.0, "channel powers must be positive");
        s += l.lambda_i / l.lambda_d;
    }
    return s;
}

/// High-SNR outage (gamma_th / (I_p/N_0)) * sum_k lambda_I,k / lambda_D,k.
inline double outage_asymptotic(std::span<const LinkPowers> links, double ip_over_n0, double gamma_th)
{
    detail::require(ip_over_n0 > 0.0, "outage_asymptotic: I_p/N_0 must be positive");
    detail::require(gamma_th >= 0.0, "outage_asymptotic: gamma_th must be non-negative");
    return gamma_th / ip_over_n0 * ratio_sum(links);
}

struct DiversityCodingGain {
    double diversity_order = 1.0;
    double coding_gain = 0.0;
};

/// Outage behaves as (G_c I_p/N_0)^{-G_d}; diversity is one for any hop count.
inline DiversityCodingGain diversity_coding_gain(std::span<const LinkPowers> links, double gamma_th)
{
    detail::require(gamma_th > 0.0, "diversity_coding_gain: gamma_th must be positive");
    detail::require(!links.empty(), "diversity_coding_gain: at least one hop required");
    return {1.0, 1.0 / (gamma_th * ratio_sum(links))};
}

inline OutageResult analyze_outage(std::span<const HopStatistics> hops, double ip_over_n0, double gamma_th)
{
    std::vector<double> alphas;
    std::vector<LinkPowers> links;
    for (const auto& h : hops) {
        alphas.push_back(h.alpha);
        links.push_back({h.lambda_d, h.lambda_i});
    }
    OutageResult r;
    r.op_exact = outage_exact(alphas, gamma_th);
    r.op_asymptotic = outage_asymptotic(links, ip_over_n0, gamma_th);
    if (gamma_th > 0.0) {
        const auto g = diversity_coding_gain(links, gamma_th);
        r.diversity_order = g.diversity_order;
        r.coding_gain = g.coding_gain;
    } else {
        r.coding_gain = std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace cogrelay
