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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogrelay/ber.hpp"
#include "cogrelay/errors.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/scenario.hpp"

// Relay placement on the segment from (0,0) to (1,0) for a fixed primary
// receiver. The equal-ratio solver enforces d_D,k / d_I,k = const across hops;
// direct_search minimizes sum_k (d_D,k / d_I,k)^eta itself and is a diagnostic.

namespace cogrelay {

struct PlacementResult {
    std::vector<double> d_data;          ///< hop lengths, sum 1
    std::vector<double> d_interference;  ///< transmitter k to primary receiver
    double ratio = 0.0;                  ///< common d_data / d_interference
    double residual_norm = 0.0;
    int iterations = 0;
    std::optional<double> op_min;
    std::optional<double> ber_min;
};

/// Distances from each transmitter to the primary receiver for given hop lengths.
inline std::vector<double> interference_distances(const std::vector<double>& d_data, Point pu)
{
    std::vector<double> out(d_data.size());
    double x = 0.0;
    for (std::size_t k = 0; k < d_data.size(); ++k) {
        out[k] = std::hypot(pu.x - x, pu.y);
        x += d_data[k];
    }
    return out;
}

/// sum_k (d_D,k / d_I,k)^eta; +inf outside the open simplex.
inline double placement_objective(const std::vector<double>& d_data, Point pu, double eta)
{
    const auto d_i = interference_distances(d_data, pu);
    double s = 0.0;
    for (std::size_t k = 0; k < d_data.size(); ++k) {
        if (!(d_data[k] > 0.0) || !(d_i[k] > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        s += std::pow(d_data[k] / d_i[k], eta);
    }
    return s;
}

namespace detail {

inline std::vector<double> complete_hops(const Vector& free)
{
    std::vector<double> d(free.size() + 1);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < free.size(); ++k) {
        d[k] = free[k];
        sum += free[k];
    }
    d.back() = 1.0 - sum;
    return d;
}

/*!
 * Equal-ratio residuals in the K-1 free hop lengths (d_K = 1 - sum):
 *   ((x_P - S_{k-1})^2 + y_P^2) / (x_P^2 + y_P^2) - (d_k / d_1)^2,  k = 2..K.
 * Dividing by x_P^2 + y_P^2 makes the system dimensionless so the residual
 * tolerance means the same thing for near and far primary receivers.
 */
inline Vector equal_ratio_residual(const Vector& free, Point pu)
{
    const auto d = complete_hops(free);
    const double norm = pu.x * pu.x + pu.y * pu.y;
    Vector r(free.size());
    for (double v : d) {
        if (!(v > 0.0)) {
            r.setConstant(std::numeric_limits<double>::quiet_NaN());
            return r;
        }
    }
    double s = d[0];
    for (std::size_t k = 1; k < d.size(); ++k) {
        const double dx = pu.x - s;
        const double q = d[k] / d[0];
        r[k - 1] = (dx * dx + pu.y * pu.y) / norm - q * q;
        s += d[k];
    }
    return r;
}

}  // namespace detail

inline constexpr double kMinHopLength = 1e-6;
inline constexpr int kPlacementRestarts = 5;

/*!
 * Hop lengths satisfying the equal-ratio condition, by damped Newton from
 * the uniform split 1/K.
 *
 * Iterates are projected to d_k >= 1e-6. On failure the solve restarts from a
 * perturbed uniform point, at most five times.
 */
inline PlacementResult solve_equal_ratio(int hops, Point pu, const NewtonOptions& opts = {})
{
    detail::require(hops >= 1, "solve_equal_ratio: hop count must be positive");
    detail::require(std::isfinite(pu.x) && std::isfinite(pu.y), "solve_equal_ratio: primary receiver must be finite");
    detail::require(pu.y != 0.0 || pu.x < 0.0 || pu.x > 1.0,
                    "solve_equal_ratio: primary receiver lies on the secondary route");

    PlacementResult res;
    if (hops == 1) {
        res.d_data = {1.0};
        res.d_interference = interference_distances(res.d_data, pu);
        res.ratio = 1.0 / res.d_interference[0];
        return res;
    }

    auto residual = [pu](const Vector& x) { return detail::equal_ratio_residual(x, pu); };
    auto project = [](Vector& x) {
        for (auto& v : x) {
            v = std::max(v, kMinHopLength);
        }
    };

    Rng rng(0x706c6163ULL);
    std::optional<NewtonResult> solved;
    std::string last_failure;
    bool infeasible = false;
    for (int attempt = 0; attempt <= kPlacementRestarts && !solved; ++attempt) {
        Vector x0 = Vector::Constant(hops - 1, 1.0 / hops);
        if (attempt > 0) {
            std::vector<double> w(hops);
            double total = 0.0;
            for (auto& v : w) {
                v = 1.0 + 0.2 * (rng.uniform_open0() - 0.5);
                total += v;
            }
            for (int k = 0; k + 1 < hops; ++k) {
                x0[k] = w[k] / total;
            }
        }
        try {
            solved = newton_system(residual, x0, opts, {}, project);
        } catch (const NumericError& e) {
            last_failure = e.what();
            infeasible = std::string_view(e.what()).find("not finite") != std::string_view::npos;
        }
    }
    if (!solved) {
        if (infeasible) {
            throw InfeasibleError("solve_equal_ratio: iterates left the simplex: " + last_failure);
        }
        throw ConvergenceError("solve_equal_ratio: " + last_failure);
    }

    res.d_data = detail::complete_hops(solved->x);
    if (res.d_data.back() <= 0.0) {
        throw InfeasibleError("solve_equal_ratio: last hop length not positive");
    }
    res.d_interference = interference_distances(res.d_data, pu);
    res.ratio = res.d_data[0] / res.d_interference[0];
    res.residual_norm = solved->residual_norm;
    res.iterations = solved->iterations;
    return res;
}

/// (gamma_th / (I_p/N_0)) K (prod_k d_D,k / d_I,k)^{eta/K}.
inline double op_min(const PlacementResult& p, double gamma_th, double ip_over_n0, double eta)
{
    detail::require(ip_over_n0 > 0.0, "op_min: I_p/N_0 must be positive");
    const double k = static_cast<double>(p.d_data.size());
    double log_prod = 0.0;
    for (std::size_t i = 0; i < p.d_data.size(); ++i) {
        log_prod += std::log(p.d_data[i] / p.d_interference[i]);
    }
    return gamma_th / ip_over_n0 * k * std::exp(eta / k * log_prod);
}

/// (a / 2b) K (prod_k d_D,k / d_I,k)^{eta/K}.
inline double ber_min(const PlacementResult& p, const QamConstants& c, double eta)
{
    const double k = static_cast<double>(p.d_data.size());
    double log_prod = 0.0;
    for (std::size_t i = 0; i < p.d_data.size(); ++i) {
        log_prod += std::log(p.d_data[i] / p.d_interference[i]);
    }
    return c.a / (2.0 * c.b) * k * std::exp(eta / k * log_prod);
}

struct DirectSearchResult {
    std::vector<double> d_data;
    double objective = 0.0;
};

namespace detail {

/// Pattern search over the directions e_i - e_K, halving the step on failure.
inline void refine_on_simplex(std::vector<double>& d, double& best, Point pu, double eta, double step)
{
    const std::size_t kk = d.size();
    while (step > 1e-13) {
        bool improved = false;
        for (std::size_t i = 0; i + 1 < kk; ++i) {
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> t = d;
                t[i] += sgn * step;
                t[kk - 1] -= sgn * step;
                const double f = placement_objective(t, pu, eta);
                if (f < best) {
                    best = f;
                    d = std::move(t);
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
}

inline void grid_scan(std::vector<double>& cur, int depth, int remaining, int resolution, Point pu, double eta,
                      std::vector<double>& best_d, double& best)
{
    const int kk = static_cast<int>(cur.size());
    if (depth == kk - 1) {
        cur[depth] = static_cast<double>(remaining) / resolution;
        const double f = placement_objective(cur, pu, eta);
        // lexicographic order of the scan breaks ties toward the smallest d_data
        if (f < best) {
            best = f;
            best_d = cur;
        }
        return;
    }
    for (int i = 1; i <= remaining - (kk - 1 - depth); ++i) {
        cur[depth] = static_cast<double>(i) / resolution;
        grid_scan(cur, depth + 1, remaining - i, resolution, pu, eta, best_d, best);
    }
}

}  // namespace detail

/*!
 * Direct minimization of sum_k (d_D,k / d_I,k)^eta over the simplex.
 *
 * K <= 4: exhaustive grid of the given resolution, then pattern-search
 * refinement. K > 4: pattern search from the uniform split only, so the
 * result is a local minimum.
 */
inline DirectSearchResult direct_search(int hops, Point pu, double eta, int resolution = 200)
{
    detail::require(hops >= 1, "direct_search: hop count must be positive");
    detail::require(eta >= 2.0, "direct_search: path loss exponent must be >= 2");
    detail::require(resolution >= hops, "direct_search: resolution too small for the hop count");

    DirectSearchResult res;
    if (hops == 1) {
        res.d_data = {1.0};
        res.objective = placement_objective(res.d_data, pu, eta);
        return res;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_d(hops, 1.0 / hops);
    if (hops <= 4) {
        std::vector<double> cur(hops);
        detail::grid_scan(cur, 0, resolution, resolution, pu, eta, best_d, best);
    } else {
        best = placement_objective(best_d, pu, eta);
    }
    detail::refine_on_simplex(best_d, best, pu, eta, 1.0 / resolution);
    res.d_data = std::move(best_d);
    res.objective = best;
    return res;
}

}  // namespace cogrelay
