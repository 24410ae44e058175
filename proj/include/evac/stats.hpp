#pragma once

#include <cmath>
#include <span>

namespace evac {

/// Neumaier-compensated running sum.
///
/// Used wherever a float total must be reproducible and effectively exact
/// (route costs, experiment aggregates): the compensated result is correctly
/// rounded for the magnitudes involved here, so two different summation
/// orders of the same terms agree bitwise.
class NeumaierAccumulator {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double total() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double neumaier_sum(std::span<const double> xs);

struct MeanCi {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double half_width = 0.0;
};

/// Two-sided 98% Student-t confidence interval for the mean. Needs n >= 2.
MeanCi mean_ci98(std::span<const double> xs);

/// One-sided paired t-test: p-value for the alternative mean(a - b) < 0.
/// Sizes must match, n >= 2. A zero-variance difference vector short-circuits
/// to p = 0 or 1 by the sign of the mean difference.
double paired_t_pvalue_less(std::span<const double> a, std::span<const double> b);

}  // namespace evac
