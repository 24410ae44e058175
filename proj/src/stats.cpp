#include "evac/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <stdexcept>
#include <vector>

namespace evac {

double neumaier_sum(std::span<const double> xs) {
  NeumaierAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.total();
}

namespace {

struct Moments {
  double mean;
  double sd;  // sample standard deviation
  std::size_t n;
};

Moments moments(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
  NeumaierAccumulator sum;
  for (double x : xs) sum.add(x);
  const double mean = sum.total() / static_cast<double>(n);
  NeumaierAccumulator sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  const double var = sq.total() / static_cast<double>(n - 1);
  return {mean, std::sqrt(var), n};
}

}  // namespace

MeanCi mean_ci98(std::span<const double> xs) {
  const Moments m = moments(xs);
  const boost::math::students_t dist(static_cast<double>(m.n - 1));
  const double tq = boost::math::quantile(dist, 0.99);  // 1% in each tail
  const double half = tq * m.sd / std::sqrt(static_cast<double>(m.n));
  return {m.mean, m.mean - half, m.mean + half, half};
}

double paired_t_pvalue_less(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples must have equal size");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const Moments m = moments(d);
  if (m.sd == 0.0) return m.mean < 0.0 ? 0.0 : 1.0;
  const double t = m.mean / (m.sd / std::sqrt(static_cast<double>(m.n)));
  const boost::math::students_t dist(static_cast<double>(m.n - 1));
  return boost::math::cdf(dist, t);
}

}  // namespace evac
