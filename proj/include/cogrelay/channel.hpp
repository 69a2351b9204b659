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

#include "cogrelay/errors.hpp"
#include "cogrelay/rng.hpp"

// Per-hop SNR law under the peak-interference power rule P_k = I_p / |h_I,k|^2:
// gamma_k = (I_p/N_0) |h_D,k|^2 / |h_I,k|^2 with exponential channel powers.

namespace cogrelay {

inline double snr_pdf(double gamma, double alpha)
{
    detail::require(gamma >= 0.0, "snr_pdf: gamma must be non-negative");
    detail::require(alpha > 0.0, "snr_pdf: alpha must be positive");
    const double s = gamma + alpha;
    return alpha / (s * s);
}

inline double snr_cdf(double gamma, double alpha)
{
    detail::require(gamma >= 0.0, "snr_cdf: gamma must be non-negative");
    detail::require(alpha > 0.0, "snr_cdf: alpha must be positive");
    if (std::isinf(gamma)) {
        return 1.0;
    }
    return gamma / (gamma + alpha);
}

struct HopSnrDistribution {
    double alpha = 1.0;

    double pdf(double gamma) const { return snr_pdf(gamma, alpha); }
    double cdf(double gamma) const { return snr_cdf(gamma, alpha); }
};

/// Smallest interference-channel draw admitted before the division.
inline constexpr double kMinChannelPower = 1e-300;

/// Draws one hop SNR; both channel powers by inversion, -lambda * ln(U) with U in (0, 1].
inline double sample_hop_snr(Rng& rng, double lambda_d, double lambda_i, double ip_over_n0)
{
    const double x = -lambda_d * std::log(rng.uniform_open0());
    const double y = std::max(-lambda_i * std::log(rng.uniform_open0()), kMinChannelPower);
    return ip_over_n0 * x / y;
}

}  // namespace cogrelay
