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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "cogrelay/ber.hpp"
#include "cogrelay/channel.hpp"
#include "cogrelay/errors.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/scenario.hpp"

namespace cogrelay {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    /// Number of concurrent workers; does not change the result.
    unsigned chunks = 1;
};

/// Trials per substream. Block b always draws from Rng(seed, b).
inline constexpr std::uint64_t kBlockTrials = 8192;

namespace detail {

struct RunningStats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v)
    {
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }

    void merge(const RunningStats& o)
    {
        if (o.n == 0) {
            return;
        }
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        const double nt = na + nb;
        const double delta = o.mean - mean;
        mean += delta * nb / nt;
        m2 += o.m2 + delta * delta * na * nb / nt;
        n += o.n;
    }
};

struct SampledHop {
    double lambda_d;
    double lambda_i;
};

/*!
 * Runs `trials` trials of `value(gammas)` in fixed blocks of kBlockTrials.
 *
 * Chunks own contiguous block ranges and write only their own slots; the
 * block statistics are then merged in block order, so the estimate does not
 * depend on the chunk count.
 */
template <class TrialValue>
McEstimate run_blocks(std::span<const SampledHop> hops, double ip_over_n0, const McOptions& opts,
                      const TrialValue& value)
{
    require(opts.trials >= 1, "monte carlo: trials must be at least 1");
    require(opts.chunks >= 1, "monte carlo: chunks must be at least 1");
    require(!hops.empty(), "monte carlo: at least one hop required");

    const std::uint64_t blocks = (opts.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<RunningStats> per_block(blocks);

    auto run_range = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<double> gammas(hops.size());
        for (std::uint64_t b = first; b < last; ++b) {
            Rng rng(opts.seed, b);
            const std::uint64_t n = std::min(kBlockTrials, opts.trials - b * kBlockTrials);
            RunningStats st;
            for (std::uint64_t t = 0; t < n; ++t) {
                for (std::size_t k = 0; k < hops.size(); ++k) {
                    gammas[k] = sample_hop_snr(rng, hops[k].lambda_d, hops[k].lambda_i, ip_over_n0);
                }
                st.push(value(std::span<const double>(gammas)));
            }
            per_block[b] = st;
        }
    };

    const std::uint64_t chunks = std::min<std::uint64_t>(opts.chunks, blocks);
    if (chunks <= 1) {
        run_range(0, blocks);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(chunks);
        for (std::uint64_t c = 0; c < chunks; ++c) {
            workers.emplace_back(run_range, c * blocks / chunks, (c + 1) * blocks / chunks);
        }
    }

    RunningStats total;
    for (const auto& st : per_block) {
        total.merge(st);
    }
    McEstimate est;
    est.value = total.mean;
    est.trials = total.n;
    est.seed = opts.seed;
    est.std_error = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n))
                                : 0.0;
    return est;
}

inline std::vector<SampledHop> sampled_hops(std::span<const HopStatistics> stats)
{
    std::vector<SampledHop> out;
    out.reserve(stats.size());
    for (const auto& h : stats) {
        out.push_back({h.lambda_d, h.lambda_i});
    }
    return out;
}

/// Hops with the given alpha, sampled as lambda_D = alpha, lambda_I = 1, I_p/N_0 = 1.
inline std::vector<SampledHop> sampled_hops(std::span<const double> alphas)
{
    std::vector<SampledHop> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        require(a > 0.0, "monte carlo: alpha must be positive");
        out.push_back({a, 1.0});
    }
    return out;
}

inline double min_of(std::span<const double> g)
{
    return *std::min_element(g.begin(), g.end());
}

}  // namespace detail

// Outage: fraction of trials with min_k gamma_k < gamma_th.

inline McEstimate mc_outage(std::span<const double> alphas, double gamma_th, const McOptions& opts)
{
    detail::require(gamma_th >= 0.0, "mc_outage: gamma_th must be non-negative");
    const auto hops = detail::sampled_hops(alphas);
    return detail::run_blocks(hops, 1.0, opts,
                              [gamma_th](std::span<const double> g) { return detail::min_of(g) < gamma_th ? 1.0 : 0.0; });
}

inline McEstimate mc_outage(const Scenario& s, const McOptions& opts)
{
    const auto hops = detail::sampled_hops(derive_hop_statistics(s));
    const double gth = s.gamma_th;
    return detail::run_blocks(hops, s.ip_over_n0, opts,
                              [gth](std::span<const double> g) { return detail::min_of(g) < gth ? 1.0 : 0.0; });
}

// BER: per trial, instantaneous per-hop BER combined by the odd-error recursion.

namespace detail {

inline auto ber_trial(const QamConstants& c)
{
    return [&c](std::span<const double> g) {
        double e = 0.0;
        for (double gamma : g) {
            const double b = std::min(instantaneous_ber(gamma, c), 0.5);
            e = e * (1.0 - 2.0 * b) + b;
        }
        return e;
    };
}

}  // namespace detail

inline McEstimate mc_ber(std::span<const double> alphas, int qam_order, const McOptions& opts)
{
    const auto c = qam_constants(qam_order);
    const auto hops = detail::sampled_hops(alphas);
    return detail::run_blocks(hops, 1.0, opts, detail::ber_trial(c));
}

inline McEstimate mc_ber(const Scenario& s, const McOptions& opts)
{
    const auto c = qam_constants(s.qam_order);
    const auto hops = detail::sampled_hops(derive_hop_statistics(s));
    return detail::run_blocks(hops, s.ip_over_n0, opts, detail::ber_trial(c));
}

// Capacity under the min-SNR approximation: (1/K) log2(1 + min_k gamma_k).

inline McEstimate mc_capacity(std::span<const double> alphas, const McOptions& opts)
{
    const auto hops = detail::sampled_hops(alphas);
    const double inv_k = 1.0 / static_cast<double>(alphas.size());
    return detail::run_blocks(hops, 1.0, opts,
                              [inv_k](std::span<const double> g) { return inv_k * std::log2(1.0 + detail::min_of(g)); });
}

inline McEstimate mc_capacity(const Scenario& s, const McOptions& opts)
{
    const auto hops = detail::sampled_hops(derive_hop_statistics(s));
    const double inv_k = 1.0 / static_cast<double>(hops.size());
    return detail::run_blocks(hops, s.ip_over_n0, opts,
                              [inv_k](std::span<const double> g) { return inv_k * std::log2(1.0 + detail::min_of(g)); });
}

}  // namespace cogrelay
