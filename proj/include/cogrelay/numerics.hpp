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
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cogrelay/errors.hpp"

// Special functions and small numeric kernels shared by the analytic modules.

namespace cogrelay {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Complementary error function.
inline double erfc(double x)
{
    return std::erfc(x);
}

/*!
 * Scaled complementary error function e^{x^2} erfc(x) for x >= 0.
 *
 * Below x = 12 the product is formed directly, with x^2 split into an exact
 * head and tail so exp() sees no rounding of the exponent. Above, the
 * asymptotic series 1/(x sqrt(pi)) sum (-1)^n (2n-1)!! / (2x^2)^n is summed
 * until terms fall below 1e-17; its truncation error there is below e^{-144}.
 */
inline double erfcx(double x)
{
    detail::require(x >= 0.0, "erfcx: argument must be non-negative");
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < 12.0) {
        const double hi = x * x;
        const double lo = std::fma(x, x, -hi);
        return std::exp(hi) * (1.0 + lo) * std::erfc(x);
    }
    const double inv = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 60; ++n) {
        term *= -(2.0 * n - 1.0) * inv;
        sum += term;
        if (std::abs(term) < 1e-17 * sum) {
            break;
        }
    }
    return sum / (x * std::sqrt(std::numbers::pi));
}

struct QuadOptions {
    double tol = 1e-10;  ///< relative tolerance
    double scale = 1.0;  ///< characteristic width of the integrand
    /// Interior points where the integrand changes character; the range is
    /// split there before integrating.
    std::vector<double> breakpoints;
    unsigned max_depth = 30;
};

namespace detail {

struct QuadSegment {
    double a;
    double b;
    double value;
    double error;
    double l1;
    unsigned depth;
};

/// One 61-point Kronrod rule on [a, b] with its error estimate in the units of the integral.
inline QuadSegment kronrod_segment(const std::function<double(double)>& f, double a, double b, unsigned depth)
{
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double l1 = 0.0;
    // depth 0 is the plain rule; its error comes back on the reference
    // interval [-1, 1] and is rescaled here
    const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err, &l1);
    return {a, b, v, err * 0.5 * (b - a), l1, depth};
}

}  // namespace detail

/*!
 * Adaptive Gauss-Kronrod estimate of the integral of f over [0, inf).
 *
 * The range is cut at the breakpoints; the last piece [a, inf) is mapped to
 * [0, 1) by gamma = a + s t / (1 - t) with s = max(scale, a). The segment
 * with the largest error is bisected until the summed error is below tol
 * times the integral's L1 norm. Throws NumericError if that needs a segment
 * deeper than max_depth bisections.
 */
inline double quad_semiinfinite(const std::function<double(double)>& f, const QuadOptions& opts = {})
{
    detail::require(opts.tol > 0.0, "quad_semiinfinite: tol must be positive");
    detail::require(opts.scale > 0.0, "quad_semiinfinite: scale must be positive");

    std::vector<double> cuts{0.0};
    std::vector<double> pts = opts.breakpoints;
    std::sort(pts.begin(), pts.end());
    for (double p : pts) {
        if (p > cuts.back() && std::isfinite(p)) {
            cuts.push_back(p);
        }
    }
    const double tail_start = cuts.back();
    const double tail_scale = std::max(opts.scale, tail_start);
    std::function<double(double)> tail = [&](double t) {
        const double w = 1.0 - t;
        return f(tail_start + tail_scale * t / w) * tail_scale / (w * w);
    };

    std::vector<detail::QuadSegment> segs;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        segs.push_back(detail::kronrod_segment(f, cuts[i], cuts[i + 1], 0));
    }
    const std::size_t tail_index = segs.size();
    segs.push_back(detail::kronrod_segment(tail, 0.0, 1.0, 0));
    auto eval = [&](std::size_t owner, double a, double b, unsigned depth) {
        return detail::kronrod_segment(owner == tail_index ? tail : f, a, b, depth);
    };
    std::vector<std::size_t> owner(segs.size());
    for (std::size_t i = 0; i < owner.size(); ++i) {
        owner[i] = i;
    }

    while (true) {
        double total = 0.0;
        double total_err = 0.0;
        double total_l1 = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            total_err += segs[i].error;
            total_l1 += segs[i].l1;
            if (segs[i].error > segs[worst].error) {
                worst = i;
            }
        }
        if (!std::isfinite(total)) {
            throw NumericError("quad_semiinfinite: integrand is not finite");
        }
        if (total_err <= opts.tol * total_l1 || total_err == 0.0) {
            return total;
        }
        const auto w = segs[worst];
        if (w.depth >= opts.max_depth) {
            std::ostringstream msg;
            msg << "quad_semiinfinite: no convergence (estimate " << total << ", error " << total_err << ")";
            throw NumericError(msg.str());
        }
        const double mid = 0.5 * (w.a + w.b);
        const std::size_t o = owner[worst];
        segs[worst] = eval(o, w.a, mid, w.depth + 1);
        segs.push_back(eval(o, mid, w.b, w.depth + 1));
        owner.push_back(o);
    }
}

struct LinearSolution {
    Vector x;
    double condition = 1.0;  ///< 1-norm condition estimate
};

/// Solves A x = b by LU with partial pivoting.
/// Throws IllConditionedError when the condition estimate exceeds max_condition.
inline LinearSolution solve_linear(const Matrix& a, const Vector& b, double max_condition = 1e12)
{
    detail::require(a.rows() == a.cols(), "solve_linear: matrix must be square");
    detail::require(a.rows() == b.size(), "solve_linear: right-hand side size mismatch");
    if (a.rows() == 0) {
        return {Vector{}, 1.0};
    }
    Eigen::PartialPivLU<Matrix> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > max_condition) {
        throw IllConditionedError("solve_linear: condition estimate " +
                                  std::to_string(rcond > 0.0 ? 1.0 / rcond : INFINITY) +
                                  " exceeds limit");
    }
    Vector x = lu.solve(b);
    // one round of iterative refinement
    const Vector r = b - a * x;
    x += lu.solve(r);
    return {std::move(x), 1.0 / rcond};
}

struct NewtonOptions {
    double tol = 1e-10;  ///< sup-norm of the residual
    int max_iter = 100;
    double damping = 1.0;  ///< initial step fraction, in (0, 1]
};

struct NewtonResult {
    Vector x;
    double residual_norm = 0.0;
    int iterations = 0;
};

using VectorFunction = std::function<Vector(const Vector&)>;
using JacobianFunction = std::function<Matrix(const Vector&)>;
using Projection = std::function<void(Vector&)>;

/// Central-difference Jacobian with step sqrt(eps) * max(1, |x_j|).
inline Matrix finite_difference_jacobian(const VectorFunction& f, const Vector& x)
{
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    const Vector f0 = f(x);
    Matrix jac(f0.size(), x.size());
    Vector xp = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double h = root_eps * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        const Vector fp = f(xp);
        xp[j] = x[j] - h;
        const Vector fm = f(xp);
        xp[j] = x[j];
        jac.col(j) = (fp - fm) / (2.0 * h);
    }
    return jac;
}

namespace detail {
inline double sup_norm(const Vector& v)
{
    if (v.size() == 0) {
        return 0.0;
    }
    if (!v.allFinite()) {
        return std::numeric_limits<double>::infinity();
    }
    return v.cwiseAbs().maxCoeff();
}
}  // namespace detail

/*!
 * Damped Newton iteration for F(x) = 0.
 *
 * Each step starts at `damping` times the full Newton step and is halved
 * until the residual sup-norm decreases (non-finite residuals count as an
 * increase). The optional projection is applied to every trial iterate.
 */
inline NewtonResult newton_system(const VectorFunction& f, Vector x0, const NewtonOptions& opts = {},
                                  const JacobianFunction& jacobian = {}, const Projection& project = {})
{
    detail::require(opts.tol > 0.0, "newton_system: tol must be positive");
    detail::require(opts.max_iter >= 1, "newton_system: max_iter must be at least 1");
    detail::require(opts.damping > 0.0 && opts.damping <= 1.0, "newton_system: damping must lie in (0, 1]");

    Vector x = std::move(x0);
    if (project) {
        project(x);
    }
    Vector r = f(x);
    double norm = detail::sup_norm(r);
    if (!std::isfinite(norm)) {
        throw NumericError("newton_system: residual not finite at starting point");
    }

    for (int it = 0; it <= opts.max_iter; ++it) {
        if (norm <= opts.tol) {
            return {std::move(x), norm, it};
        }
        if (it == opts.max_iter) {
            break;
        }
        const Matrix jac = jacobian ? jacobian(x) : finite_difference_jacobian(f, x);
        Eigen::PartialPivLU<Matrix> lu(jac);
        if (!(lu.rcond() > 1e-14)) {
            throw NumericError("newton_system: Jacobian is singular");
        }
        const Vector step = lu.solve(-r);

        double lambda = opts.damping;
        bool accepted = false;
        while (lambda > 1e-12) {
            Vector trial = x + lambda * step;
            if (project) {
                project(trial);
            }
            Vector rt = f(trial);
            const double nt = detail::sup_norm(rt);
            if (nt < norm) {
                x = std::move(trial);
                r = std::move(rt);
                norm = nt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            throw ConvergenceError("newton_system: line search stalled at residual " + std::to_string(norm));
        }
    }
    throw ConvergenceError("newton_system: no convergence after " + std::to_string(opts.max_iter) +
                           " iterations (residual " + std::to_string(norm) + ")");
}

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double value)
{
    return 10.0 * std::log10(value);
}

}  // namespace cogrelay
