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
#include <vector>

#include "cogrelay/errors.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/rng.hpp"

namespace cogrelay {

/// Density of min_k gamma_k: sum_k prod_n alpha_n / ((gamma + alpha_k) prod_n (gamma + alpha_n)).
inline double min_snr_pdf(double gamma, std::span<const double> alphas)
{
    detail::require(gamma >= 0.0, "min_snr_pdf: gamma must be non-negative");
    detail::require(!alphas.empty(), "min_snr_pdf: at least one hop required");
    double survival = 1.0;
    double hazard = 0.0;
    for (double a : alphas) {
        detail::require(a > 0.0, "min_snr_pdf: alpha must be positive");
        survival *= a / (gamma + a);
        hazard += 1.0 / (gamma + a);
    }
    return survival * hazard;
}

/*!
 * Partial fractions of the min-SNR density,
 *   prefactor * sum_n sum_{l=1}^{r_n} A_{n,l} / (gamma + beta_n)^{l+1}.
 *
 * `coefficients[n][l-1]` holds A_{n,l}. Only orders >= 2 appear because the
 * density is -d/dgamma of 1 / prod_n (gamma + beta_n)^{r_n}.
 */
struct PartialFractionExpansion {
    std::vector<double> betas;  ///< distinct poles, ascending
    std::vector<int> multiplicities;
    std::vector<std::vector<double>> coefficients;
    double prefactor = 1.0;  ///< prod_n beta_n^{r_n}

    int hop_count() const
    {
        int k = 0;
        for (int r : multiplicities) {
            k += r;
        }
        return k;
    }

    double evaluate(double gamma) const
    {
        double s = 0.0;
        for (std::size_t n = 0; n < betas.size(); ++n) {
            const double inv = 1.0 / (gamma + betas[n]);
            double p = inv;
            for (double a : coefficients[n]) {
                p *= inv;
                s += a * p;
            }
        }
        return prefactor * s;
    }
};

enum class PfeMethod {
    residue,       ///< Taylor coefficients at each pole (exact)
    probe_system,  ///< K x K linear system at probe abscissae
};

namespace detail {

struct PoleClusters {
    std::vector<double> betas;
    std::vector<int> multiplicities;
};

/// Sorts alphas and merges runs whose relative spread from the run head is <= tol.
inline PoleClusters cluster_poles(std::span<const double> alphas, double tol)
{
    require(!alphas.empty(), "partial_fraction_expand: at least one hop required");
    require(tol >= 0.0, "partial_fraction_expand: cluster tolerance must be non-negative");
    std::vector<double> sorted(alphas.begin(), alphas.end());
    for (double a : sorted) {
        require(a > 0.0 && std::isfinite(a), "partial_fraction_expand: alpha must be positive and finite");
    }
    std::sort(sorted.begin(), sorted.end());

    PoleClusters out;
    std::vector<double> sums;
    double head = 0.0;
    for (double a : sorted) {
        if (!out.betas.empty() && a - head <= tol * head) {
            ++out.multiplicities.back();
            sums.back() += a;
        } else {
            head = a;
            out.multiplicities.push_back(1);
            sums.push_back(a);
            out.betas.push_back(a);
        }
    }
    for (std::size_t n = 0; n < out.betas.size(); ++n) {
        out.betas[n] = sums[n] / out.multiplicities[n];
    }
    return out;
}

inline std::vector<std::vector<double>> residue_coefficients(const PoleClusters& pc)
{
    const std::size_t count = pc.betas.size();
    std::vector<std::vector<double>> coeffs(count);
    for (std::size_t n = 0; n < count; ++n) {
        const int r = pc.multiplicities[n];
        // Taylor series in s = gamma + beta_n of prod_{m != n} (s + d_m)^{-r_m}, to order r - 1
        std::vector<double> series(r, 0.0);
        series[0] = 1.0;
        std::vector<double> factor(r);
        std::vector<double> next(r);
        for (std::size_t m = 0; m < count; ++m) {
            if (m == n) {
                continue;
            }
            const double d = pc.betas[m] - pc.betas[n];
            const int rm = pc.multiplicities[m];
            double c = std::pow(d, -rm);
            for (int j = 0; j < r; ++j) {
                factor[j] = c;
                c *= -(rm + j) / ((j + 1.0) * d);
            }
            for (int k = 0; k < r; ++k) {
                double acc = 0.0;
                for (int i = 0; i <= k; ++i) {
                    acc += series[i] * factor[k - i];
                }
                next[k] = acc;
            }
            series.swap(next);
        }
        coeffs[n].resize(r);
        for (int l = 1; l <= r; ++l) {
            coeffs[n][l - 1] = l * series[r - l];
        }
    }
    return coeffs;
}

inline std::vector<std::vector<double>> probe_coefficients(const PoleClusters& pc)
{
    int k_total = 0;
    for (int r : pc.multiplicities) {
        k_total += r;
    }
    const double beta_max = pc.betas.back();
    const double beta_min = pc.betas.front();

    Rng rng(0x70726f6265ULL);  // fixed stream for probe re-draws
    for (int attempt = 0; attempt <= 3; ++attempt) {
        std::vector<double> probes(k_total);
        if (attempt == 0) {
            for (int u = 0; u < k_total; ++u) {
                probes[u] = (u + 1.0) * (1.0 + beta_max);
            }
        } else {
            // log-uniform re-draw over the pole range
            const double lo = std::log(beta_min / 4.0);
            const double hi = std::log(4.0 * beta_max);
            for (auto& p : probes) {
                p = std::exp(lo + (hi - lo) * rng.uniform_open0());
            }
            std::sort(probes.begin(), probes.end());
        }

        Matrix c(k_total, k_total);
        Vector d(k_total);
        for (int u = 0; u < k_total; ++u) {
            const double bu = probes[u];
            int v = 0;
            for (std::size_t n = 0; n < pc.betas.size(); ++n) {
                for (int l = 1; l <= pc.multiplicities[n]; ++l) {
                    c(u, v++) = std::pow(bu + pc.betas[n], -(l + 1));
                }
            }
            double prod = 1.0;
            double sum = 0.0;
            for (std::size_t n = 0; n < pc.betas.size(); ++n) {
                prod *= std::pow(bu + pc.betas[n], -pc.multiplicities[n]);
                sum += pc.multiplicities[n] / (bu + pc.betas[n]);
            }
            d[u] = prod * sum;
        }
        // equilibrate rows then columns before judging the conditioning
        Vector row_scale = c.cwiseAbs().rowwise().maxCoeff().cwiseInverse();
        c = row_scale.asDiagonal() * c;
        d = row_scale.asDiagonal() * d;
        Vector col_scale = c.cwiseAbs().colwise().maxCoeff().transpose().cwiseInverse();
        c = c * col_scale.asDiagonal();
        try {
            const auto sol = solve_linear(c, d);
            const Vector x = col_scale.asDiagonal() * sol.x;
            std::vector<std::vector<double>> coeffs(pc.betas.size());
            int v = 0;
            for (std::size_t n = 0; n < pc.betas.size(); ++n) {
                for (int l = 1; l <= pc.multiplicities[n]; ++l) {
                    coeffs[n].push_back(x[v++]);
                }
            }
            return coeffs;
        } catch (const IllConditionedError&) {
            continue;
        }
    }
    throw IllConditionedError("partial_fraction_expand: probe system ill-conditioned after 3 re-draws");
}

}  // namespace detail

inline PartialFractionExpansion partial_fraction_expand(std::span<const double> alphas, double cluster_tol = 1e-6,
                                                        PfeMethod method = PfeMethod::residue)
{
    auto pc = detail::cluster_poles(alphas, cluster_tol);
    PartialFractionExpansion pfe;
    pfe.coefficients = method == PfeMethod::residue ? detail::residue_coefficients(pc)
                                                    : detail::probe_coefficients(pc);
    pfe.prefactor = 1.0;
    for (std::size_t n = 0; n < pc.betas.size(); ++n) {
        pfe.prefactor *= std::pow(pc.betas[n], pc.multiplicities[n]);
    }
    pfe.betas = std::move(pc.betas);
    pfe.multiplicities = std::move(pc.multiplicities);
    return pfe;
}

/*!
 * beta^l I_l(beta), where
 *   I_l(beta) = int_0^inf log2(1 + gamma) / (beta + gamma)^{l+1} dgamma
 *             = 1 / (l ln 2) int_0^inf dgamma / ((1 + gamma)(gamma + beta)^l).
 *
 * Three evaluations, each used where it is accurate:
 *  - beta in [1/2, 1): sum_m C(l+m-1, m) (1-beta)^m / (l+m), times beta^l
 *  - beta in [1, 4(l+1)]: sum_m x^m / (l+m) with x = (beta-1)/beta
 *  - otherwise the closed form, rewritten with rho = beta/(beta-1) as
 *      ln(beta) rho^l - sum_{k=1}^{l-1} rho^k / (l-k).
 * All three carry the 1 / (l ln 2) factor.
 */
inline double scaled_auxiliary_integral(int l, double beta)
{
    detail::require(l >= 1, "auxiliary_integral: l must be a positive integer");
    detail::require(beta > 0.0, "auxiliary_integral: beta must be positive");
    const double norm = 1.0 / (l * std::numbers::ln2);

    if (beta >= 1.0 && beta <= 4.0 * (l + 1)) {
        const double x = (beta - 1.0) / beta;
        double xm = 1.0;
        double sum = 0.0;
        for (int m = 0; m < 1000000; ++m) {
            const double term = xm / (l + m);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
            xm *= x;
        }
        return norm * sum;
    }
    if (beta >= 0.5 && beta < 1.0) {
        const double y = 1.0 - beta;
        double coef = 1.0;  // C(l+m-1, m) y^m
        double sum = 0.0;
        for (int m = 0; m < 1000000; ++m) {
            const double term = coef / (l + m);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
            coef *= y * (l + m) / (m + 1.0);
        }
        return norm * sum * std::pow(beta, l);
    }
    const double rho = beta / (beta - 1.0);
    double acc = std::log(beta) * std::pow(rho, l);
    double rk = 1.0;
    for (int k = 1; k < l; ++k) {
        rk *= rho;
        acc -= rk / (l - k);
    }
    return norm * acc;
}

/// I_l(beta) = int_0^inf log2(1 + gamma) / (beta + gamma)^{l+1} dgamma.
inline double auxiliary_integral(int l, double beta)
{
    return scaled_auxiliary_integral(l, beta) * std::pow(beta, -l);
}

/*!
 * Ergodic capacity (bits/s/Hz) of the min-SNR end-to-end approximation for
 * independent, non-identical hops:
 *   C = (prod_k alpha_k / K) sum_n sum_l A_{n,l} I_l(beta_n).
 *
 * Each term is assembled as sign(A) exp(log|A| + log prefactor - l log beta)
 * times beta^l I_l(beta) so that the prefactor never overflows on its own.
 */
inline double ergodic_capacity_ind(std::span<const double> alphas, double cluster_tol = 1e-6)
{
    const auto pfe = partial_fraction_expand(alphas, cluster_tol);
    double log_prefactor = 0.0;
    for (std::size_t n = 0; n < pfe.betas.size(); ++n) {
        log_prefactor += pfe.multiplicities[n] * std::log(pfe.betas[n]);
    }
    double sum = 0.0;
    for (std::size_t n = 0; n < pfe.betas.size(); ++n) {
        const double log_beta = std::log(pfe.betas[n]);
        for (int l = 1; l <= pfe.multiplicities[n]; ++l) {
            const double a = pfe.coefficients[n][l - 1];
            if (a == 0.0) {
                continue;
            }
            const double mag = std::exp(std::log(std::abs(a)) + log_prefactor - l * log_beta);
            sum += std::copysign(mag, a) * scaled_auxiliary_integral(l, pfe.betas[n]);
        }
    }
    return std::max(sum / static_cast<double>(alphas.size()), 0.0);
}

/// Identical hops: alpha^K I_K(alpha).
inline double ergodic_capacity_iid(double alpha, int hops)
{
    detail::require(alpha > 0.0, "ergodic_capacity_iid: alpha must be positive");
    detail::require(hops >= 1, "ergodic_capacity_iid: hop count must be positive");
    return scaled_auxiliary_integral(hops, alpha);
}

/// Time-shared Shannon capacity of one hop, (1/K) alpha I_1(alpha).
inline double per_hop_capacity(double alpha, int hops)
{
    detail::require(alpha > 0.0, "per_hop_capacity: alpha must be positive");
    detail::require(hops >= 1, "per_hop_capacity: hop count must be positive");
    return scaled_auxiliary_integral(1, alpha) / hops;
}

/// Min-cut bound: smallest per-hop capacity along the route.
inline double min_per_hop_capacity(std::span<const double> alphas)
{
    detail::require(!alphas.empty(), "min_per_hop_capacity: at least one hop required");
    double best = INFINITY;
    for (double a : alphas) {
        best = std::min(best, per_hop_capacity(a, static_cast<int>(alphas.size())));
    }
    return best;
}

}  // namespace cogrelay
