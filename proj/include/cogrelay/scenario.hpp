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
#include <optional>
#include <string>
#include <vector>

#include "cogrelay/errors.hpp"

namespace cogrelay {

/// Planar coordinate, normalized so the source-destination distance is 1.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Mean channel powers of one hop: data link and link to the primary receiver.
struct LinkPowers {
    double lambda_d = 1.0;
    double lambda_i = 1.0;
};

struct HopGeometry {
    double d_data = 0.0;          ///< transmitter to next secondary node
    double d_interference = 0.0;  ///< transmitter to primary receiver
};

struct HopStatistics {
    double lambda_d = 0.0;
    double lambda_i = 0.0;
    double alpha = 0.0;  ///< (lambda_d / lambda_i) * (I_p / N_0)
};

/*!
 * Full description of a linear multi-hop secondary network.
 *
 * Quantities are linear; conversion from dB happens at the configuration
 * layer. When `lambda_overrides` is set, the per-hop channel powers come from
 * it and the geometry is ignored for statistics.
 */
struct Scenario {
    int hop_count = 3;
    Point source{0.0, 0.0};
    Point destination{1.0, 0.0};
    Point primary_receiver{0.35, 0.35};
    /// K-1 relay abscissae in (0, 1); empty means equidistant relays.
    std::vector<double> relay_positions;
    double path_loss_exponent = 4.0;
    double ip_over_n0 = 1.0;
    double gamma_th = 1.0;
    int qam_order = 4;
    std::optional<std::vector<LinkPowers>> lambda_overrides;

    void validate() const;
    /// Transmitter abscissae x_1 = 0 < x_2 < ... < x_K followed by the destination at 1.
    std::vector<double> node_positions() const;
};

inline bool is_power_of_four(int m)
{
    if (m < 4) {
        return false;
    }
    while (m % 4 == 0) {
        m /= 4;
    }
    return m == 1;
}

inline void Scenario::validate() const
{
    using detail::require;
    require<ConfigError>(hop_count >= 1, "hop_count must be a positive integer");
    require<ConfigError>(path_loss_exponent >= 2.0 && std::isfinite(path_loss_exponent),
                         "path_loss_exponent must be >= 2");
    require<ConfigError>(ip_over_n0 > 0.0 && std::isfinite(ip_over_n0), "I_p/N_0 must be positive");
    require<ConfigError>(gamma_th >= 0.0 && std::isfinite(gamma_th), "gamma_th must be non-negative");
    require<ConfigError>(is_power_of_four(qam_order), "qam_order must be a power of 4 (square M-QAM)");

    if (lambda_overrides) {
        require<ConfigError>(static_cast<int>(lambda_overrides->size()) == hop_count,
                             "lambda_overrides must list exactly hop_count pairs");
        for (const auto& p : *lambda_overrides) {
            require<ConfigError>(p.lambda_d > 0.0 && p.lambda_i > 0.0, "lambda_overrides must be positive");
        }
        return;
    }

    require<ConfigError>(source == Point{0.0, 0.0} && destination == Point{1.0, 0.0},
                         "geometry requires source (0,0) and destination (1,0)");
    require<ConfigError>(std::isfinite(primary_receiver.x) && std::isfinite(primary_receiver.y),
                         "primary receiver coordinate must be finite");
    if (!relay_positions.empty()) {
        require<ConfigError>(static_cast<int>(relay_positions.size()) == hop_count - 1,
                             "relay_positions must list hop_count - 1 abscissae");
        double prev = 0.0;
        for (double x : relay_positions) {
            require<ConfigError>(x > prev && x < 1.0, "relay positions must increase strictly within (0, 1)");
            prev = x;
        }
    }
}

inline std::vector<double> Scenario::node_positions() const
{
    std::vector<double> xs;
    xs.reserve(hop_count + 1);
    xs.push_back(0.0);
    if (relay_positions.empty()) {
        for (int k = 1; k < hop_count; ++k) {
            xs.push_back(static_cast<double>(k) / hop_count);
        }
    } else {
        xs.insert(xs.end(), relay_positions.begin(), relay_positions.end());
    }
    xs.push_back(1.0);
    return xs;
}

/// Single-slope path loss: distance^(-eta).
inline double average_channel_power(double distance, double eta)
{
    detail::require(distance > 0.0, "average_channel_power: distance must be positive");
    detail::require(eta >= 2.0, "average_channel_power: path loss exponent must be >= 2");
    return std::pow(distance, -eta);
}

inline std::vector<HopGeometry> hop_geometry(const Scenario& s)
{
    s.validate();
    const auto xs = s.node_positions();
    std::vector<HopGeometry> hops(s.hop_count);
    for (int k = 0; k < s.hop_count; ++k) {
        hops[k].d_data = xs[k + 1] - xs[k];
        hops[k].d_interference = std::hypot(s.primary_receiver.x - xs[k], s.primary_receiver.y);
    }
    return hops;
}

inline std::vector<HopStatistics> derive_hop_statistics(const Scenario& s)
{
    s.validate();
    std::vector<HopStatistics> out(s.hop_count);
    if (s.lambda_overrides) {
        for (int k = 0; k < s.hop_count; ++k) {
            out[k].lambda_d = (*s.lambda_overrides)[k].lambda_d;
            out[k].lambda_i = (*s.lambda_overrides)[k].lambda_i;
        }
    } else {
        const auto geo = hop_geometry(s);
        for (int k = 0; k < s.hop_count; ++k) {
            out[k].lambda_d = average_channel_power(geo[k].d_data, s.path_loss_exponent);
            detail::require<ConfigError>(geo[k].d_interference > 0.0,
                                         "primary receiver coincides with a secondary transmitter");
            out[k].lambda_i = average_channel_power(geo[k].d_interference, s.path_loss_exponent);
        }
    }
    for (auto& h : out) {
        h.alpha = (h.lambda_d / h.lambda_i) * s.ip_over_n0;
    }
    return out;
}

inline std::vector<double> alphas_of(const std::vector<HopStatistics>& stats)
{
    std::vector<double> a;
    a.reserve(stats.size());
    for (const auto& h : stats) {
        a.push_back(h.alpha);
    }
    return a;
}

inline std::vector<LinkPowers> link_powers_of(const std::vector<HopStatistics>& stats)
{
    std::vector<LinkPowers> p;
    p.reserve(stats.size());
    for (const auto& h : stats) {
        p.push_back({h.lambda_d, h.lambda_i});
    }
    return p;
}

/// Relay abscissae from consecutive hop lengths.
inline std::vector<double> relay_positions_from_hops(const std::vector<double>& d_data)
{
    std::vector<double> xs;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < d_data.size(); ++k) {
        acc += d_data[k];
        xs.push_back(acc);
    }
    return xs;
}

}  // namespace cogrelay
