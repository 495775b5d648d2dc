// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcrit/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace qcrit {
namespace {

struct TrialPoint {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative along the search direction
  RealVector x;
  RealVector gradient;
};

class LineSearch {
 public:
  LineSearch(const GradientObjective& objective, const MinimizerOptions& options, int& evaluations)
      : objective_(objective), options_(options), evaluations_(evaluations) {}

  // Returns an acceptable point (see sufficient_decrease), or nullopt if none was found.
  std::optional<TrialPoint> search(const TrialPoint& start, const RealVector& direction,
                                   double initial_step) {
    start_ = &start;
    direction_ = &direction;
    noise_ = options_.value_noise * (1.0 + std::abs(start.value));
    budget_ = options_.max_line_search_evaluations;
    best_.reset();

    TrialPoint prev = start;
    double alpha = initial_step;
    for (int i = 0; budget_ > 0; ++i) {
      TrialPoint cur = evaluate(alpha);
      if (!sufficient_decrease(cur) || (i > 0 && not_lower(cur, prev))) {
        return zoom(prev, cur);
      }
      if (std::abs(cur.slope) <= -options_.curvature * start.slope) return cur;
      if (cur.slope >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return best_;
  }

 private:
  TrialPoint evaluate(double alpha) {
    --budget_;
    ++evaluations_;
    TrialPoint t;
    t.alpha = alpha;
    t.x = start_->x + alpha * *direction_;
    t.gradient.resize(t.x.size());
    t.value = objective_(t.x, t.gradient);
    t.slope = t.gradient.dot(*direction_);
    if (sufficient_decrease(t) && (!best_ || t.value < best_->value)) best_ = t;
    return t;
  }

  bool within_noise(const TrialPoint& a, const TrialPoint& b) const {
    return std::abs(a.value - b.value) <= noise_;
  }

  // Armijo, or its derivative form once f(alpha) - f(0) is below round-off.
  bool sufficient_decrease(const TrialPoint& t) const {
    if (!std::isfinite(t.value)) return false;
    if (t.value <= start_->value + options_.armijo * t.alpha * start_->slope) return true;
    return within_noise(t, *start_) &&
           t.slope <= (2.0 * options_.armijo - 1.0) * start_->slope;
  }

  // cur is no better than ref; inside the noise band, the trapezoid estimate
  // of f(cur) - f(ref) from the two slopes decides.
  bool not_lower(const TrialPoint& cur, const TrialPoint& ref) const {
    if (!within_noise(cur, ref)) return cur.value >= ref.value;
    return 0.5 * (cur.alpha - ref.alpha) * (cur.slope + ref.slope) >= 0.0;
  }

  // Nocedal & Wright, Algorithm 3.6, with safeguarded cubic interpolation.
  std::optional<TrialPoint> zoom(TrialPoint lo, TrialPoint hi) {
    while (budget_ > 0) {
      const double width = hi.alpha - lo.alpha;
      if (std::abs(width) <= 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
      double alpha = within_noise(lo, hi) ? secant_root(lo, hi) : cubic_minimizer(lo, hi);
      const double a = std::min(lo.alpha, hi.alpha);
      const double b = std::max(lo.alpha, hi.alpha);
      const double margin = 0.1 * (b - a);
      if (!std::isfinite(alpha) || alpha < a + margin || alpha > b - margin) {
        alpha = 0.5 * (lo.alpha + hi.alpha);
      }
      TrialPoint cur = evaluate(alpha);
      if (!sufficient_decrease(cur) || not_lower(cur, lo)) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -options_.curvature * start_->slope) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
    }
    return best_;
  }

  static double secant_root(const TrialPoint& p, const TrialPoint& q) {
    const double ds = q.slope - p.slope;
    if (ds == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return p.alpha - p.slope * (q.alpha - p.alpha) / ds;
  }

  static double cubic_minimizer(const TrialPoint& p, const TrialPoint& q) {
    if (!std::isfinite(q.value) || !std::isfinite(p.value)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    const double d1 = p.slope + q.slope - 3.0 * (p.value - q.value) / (p.alpha - q.alpha);
    const double disc = d1 * d1 - p.slope * q.slope;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double sign = q.alpha > p.alpha ? 1.0 : -1.0;
    const double d2 = sign * std::sqrt(disc);
    return q.alpha - (q.alpha - p.alpha) * (q.slope + d2 - d1) / (q.slope - p.slope + 2.0 * d2);
  }

  const GradientObjective& objective_;
  const MinimizerOptions& options_;
  int& evaluations_;
  const TrialPoint* start_ = nullptr;
  const RealVector* direction_ = nullptr;
  int budget_ = 0;
  double noise_ = 0.0;
  std::optional<TrialPoint> best_;
};

}  // namespace

MinimizerResult minimize_bfgs(const GradientObjective& objective, RealVector x0,
                              const MinimizerOptions& options) {
  MinimizerResult result;
  const Eigen::Index n = x0.size();

  TrialPoint current;
  current.x = std::move(x0);
  current.gradient.resize(n);
  current.value = objective(current.x, current.gradient);
  result.evaluations = 1;

  auto finish = [&](std::string reason) {
    result.x = current.x;
    result.value = current.value;
    result.gradient = current.gradient;
    result.gradient_norm = current.gradient.norm();
    result.converged =
        std::isfinite(result.value) && result.gradient_norm <= options.gradient_tolerance;
    result.stop_reason = std::move(reason);
    return result;
  };

  if (!std::isfinite(current.value)) return finish("non-finite objective at start");
  if (options.record_trace) result.trace.push_back({0, current.value, current.gradient.norm()});

  Eigen::MatrixXd inverse_hessian = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  LineSearch line_search(objective, options, result.evaluations);

  while (result.iterations < options.max_iterations) {
    const double gnorm = current.gradient.norm();
    if (gnorm <= options.gradient_tolerance) return finish("gradient tolerance reached");

    RealVector direction = -(inverse_hessian * current.gradient);
    current.slope = current.gradient.dot(direction);
    if (!(current.slope < 0.0)) {
      inverse_hessian.setIdentity();
      fresh_hessian = true;
      direction = -current.gradient;
      current.slope = -gnorm * gnorm;
    }
    const double initial_step = fresh_hessian ? std::min(1.0, 1.0 / gnorm) : 1.0;
    current.alpha = 0.0;

    std::optional<TrialPoint> next = line_search.search(current, direction, initial_step);
    if (!next) {
      if (fresh_hessian) return finish("line search failed");
      // Retry once along steepest descent before giving up.
      inverse_hessian.setIdentity();
      fresh_hessian = true;
      continue;
    }

    const RealVector s = next->x - current.x;
    const RealVector y = next->gradient - current.gradient;
    const double sy = s.dot(y);
    current = std::move(*next);
    ++result.iterations;
    if (options.record_trace) {
      result.trace.push_back({result.iterations, current.value, current.gradient.norm()});
    }

    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (fresh_hessian) {
        inverse_hessian *= sy / y.squaredNorm();
        fresh_hessian = false;
      }
      const double rho = 1.0 / sy;
      const RealVector hy = inverse_hessian * y;
      const double yhy = y.dot(hy);
      // H+ = H - rho (s hy^T + hy s^T) + (rho^2 yHy + rho) s s^T
      inverse_hessian.noalias() -= rho * (s * hy.transpose() + hy * s.transpose());
      inverse_hessian.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
    }
  }
  return finish(current.gradient.norm() <= options.gradient_tolerance ? "gradient tolerance reached"
                                                                       : "iteration limit reached");
}

}  // namespace qcrit
