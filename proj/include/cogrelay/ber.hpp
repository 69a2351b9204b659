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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "cogrelay/errors.hpp"
#include "cogrelay/numerics.hpp"

namespace cogrelay {

/// One erfc term of the square M-QAM bit error expansion.
struct QamTerm {
    int j = 1;        ///< bit level, 1..log2(sqrt(M))
    int n = 0;        ///< 0..upsilon_j
    int upsilon = 0;  ///< (1 - 2^-j) sqrt(M) - 1
    double omega = 0.0;
    int phi = 0;      ///< signed integer weight
};

struct QamConstants {
    int order = 4;
    std::vector<QamTerm> terms;
    double normalizer = 1.0;  ///< sqrt(M) log2(sqrt(M))
    double a = 0.0;           ///< leading-term amplitude of the high-SNR approximation
    double b = 0.0;           ///< leading-term SNR scale of the high-SNR approximation
};

/*!
 * Exact square M-QAM (Gray) bit error coefficients.
 *
 *   BER(gamma) = sum_j sum_n phi_n^j erfc(sqrt(omega_n gamma)) / (sqrt(M) log2 sqrt(M))
 *
 * with omega_n = (2n+1)^2 3 log2(M) / (2M - 2) and
 * phi_n^j = (-1)^floor(n 2^{j-1} / sqrt(M)) (2^{j-1} - floor(n 2^{j-1} / sqrt(M) + 1/2)).
 * All floors are taken in integer arithmetic.
 */
inline QamConstants qam_constants(int order)
{
    int m = 0;
    for (int v = order; v > 1 && v % 4 == 0; v /= 4) {
        ++m;
    }
    if (order < 4 || (1 << (2 * m)) != order) {
        throw DomainError("qam_constants: order " + std::to_string(order) + " is not a power of 4");
    }
    const int root = 1 << m;  // sqrt(M)
    const int log2_order = 2 * m;

    QamConstants c;
    c.order = order;
    c.normalizer = static_cast<double>(root) * m;
    c.a = (root - 1.0) / (root * static_cast<double>(m));
    c.b = 3.0 * log2_order / (2.0 * (order - 1.0));
    for (int j = 1; j <= m; ++j) {
        const int pow_j = 1 << (j - 1);
        const int upsilon = root - root / (1 << j) - 1;
        for (int n = 0; n <= upsilon; ++n) {
            const int q = (n * pow_j) / root;
            const int rounded = (2 * n * pow_j + root) / (2 * root);
            QamTerm t;
            t.j = j;
            t.n = n;
            t.upsilon = upsilon;
            t.omega = (2.0 * n + 1.0) * (2.0 * n + 1.0) * 3.0 * log2_order / (2.0 * order - 2.0);
            t.phi = (q % 2 == 0 ? 1 : -1) * (pow_j - rounded);
            c.terms.push_back(t);
        }
    }
    return c;
}

/// AWGN bit error rate at instantaneous SNR gamma, clamped to [0, 1].
inline double instantaneous_ber(double gamma, const QamConstants& c)
{
    detail::require(gamma >= 0.0, "instantaneous_ber: gamma must be non-negative");
    double s = 0.0;
    for (const auto& t : c.terms) {
        s += t.phi * erfc(std::sqrt(t.omega * gamma));
    }
    return std::clamp(s / c.normalizer, 0.0, 1.0);
}

namespace detail {

/// 1 - sqrt(pi z) e^z erfc(sqrt(z)), the fading average of erfc(sqrt(omega gamma)).
inline double faded_erfc_average(double z)
{
    if (z < 40.0) {
        return 1.0 - std::sqrt(std::numbers::pi * z) * erfcx(std::sqrt(z));
    }
    // asymptotic: sum_{n>=1} (-1)^{n+1} (2n-1)!! / (2z)^n
    const double inv = 1.0 / (2.0 * z);
    double term = inv;
    double sum = inv;
    for (int n = 2; n < 40; ++n) {
        term *= -(2.0 * n - 1.0) * inv;
        sum += term;
        if (std::abs(term) < 1e-18 * sum) {
            break;
        }
    }
    return sum;
}

inline double clamp_probability(double p, double hi)
{
    if (p < 0.0 && p >= -1e-15) {
        return 0.0;
    }
    return std::clamp(p, 0.0, hi);
}

}  // namespace detail

/// Average BER of one hop whose SNR has density alpha / (gamma + alpha)^2.
inline double hop_ber(double alpha, const QamConstants& c)
{
    detail::require(alpha > 0.0, "hop_ber: alpha must be positive");
    double s = 0.0;
    for (const auto& t : c.terms) {
        s += t.phi * detail::faded_erfc_average(t.omega * alpha);
    }
    return detail::clamp_probability(s / c.normalizer, 0.5);
}

/// Odd-error-count recursion: E_k = E_{k-1} (1 - 2 b_k) + b_k.
inline double e2e_ber(std::span<const double> per_hop)
{
    double e = 0.0;
    for (double b : per_hop) {
        detail::require(b >= 0.0 && b <= 0.5, "e2e_ber: per-hop BER must lie in [0, 0.5]");
        e = e * (1.0 - 2.0 * b) + b;
    }
    return e;
}

inline double e2e_ber_iid(double alpha, int hops, const QamConstants& c)
{
    detail::require(hops >= 1, "e2e_ber_iid: hop count must be positive");
    const double p = hop_ber(alpha, c);
    if (p >= 0.5) {
        return 0.5;
    }
    return -0.5 * std::expm1(hops * std::log1p(-2.0 * p));
}

/// High-SNR end-to-end BER (a / 2b) sum_p 1 / alpha_p.
inline double e2e_ber_asymptotic(std::span<const double> alphas, const QamConstants& c)
{
    double s = 0.0;
    for (double a : alphas) {
        detail::require(a > 0.0, "e2e_ber_asymptotic: alpha must be positive");
        s += 1.0 / a;
    }
    return c.a / (2.0 * c.b) * s;
}

inline double e2e_ber_asymptotic(double alpha, int hops, const QamConstants& c)
{
    detail::require(alpha > 0.0 && hops >= 1, "e2e_ber_asymptotic: invalid arguments");
    return hops * c.a / (2.0 * c.b * alpha);
}

/// Per-hop average BERs followed by the end-to-end recursion.
inline double e2e_ber_from_alphas(std::span<const double> alphas, const QamConstants& c)
{
    std::vector<double> per_hop;
    per_hop.reserve(alphas.size());
    for (double a : alphas) {
        per_hop.push_back(hop_ber(a, c));
    }
    return e2e_ber(per_hop);
}

}  // namespace cogrelay
