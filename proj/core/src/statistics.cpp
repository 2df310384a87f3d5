#include "razor/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "razor/errors.hpp"

namespace razor::stats {

std::vector<double> average_ranks(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && !less(order[i], order[j]) && !less(order[j], order[i])) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("pearson: samples differ in length");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> partial(std::optional<double> rxy, std::optional<double> rxz, std::optional<double> ryz) {
  if (!rxy || !rxz || !ryz) return std::nullopt;
  constexpr double kCollinear = 1e-12;
  const double dx = 1.0 - *rxz * *rxz;
  const double dy = 1.0 - *ryz * *ryz;
  if (dx <= kCollinear || dy <= kCollinear) return std::nullopt;
  return std::clamp((*rxy - *rxz * *ryz) / std::sqrt(dx * dy), -1.0, 1.0);
}

double percentile(std::vector<double> sample, double q) {
  if (sample.empty()) throw UsageError("percentile of an empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sample.size());
  return sample[rank - 1];
}

}  // namespace razor::stats
