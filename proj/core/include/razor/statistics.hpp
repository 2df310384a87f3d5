#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace razor::stats {

/// 1-based ranks with ties sharing their average rank. `less` orders item indices.
std::vector<double> average_ranks(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less);

/// Pearson correlation; nullopt when either side is constant or fewer than two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Spearman correlation from precomputed average ranks.
inline std::optional<double> spearman(std::span<const double> rx, std::span<const double> ry) { return pearson(rx, ry); }

/// First-order partial correlation of x and y controlling for z; nullopt when
/// any input is undefined or x or y is perfectly collinear with z.
std::optional<double> partial(std::optional<double> rxy, std::optional<double> rxz, std::optional<double> ryz);

/// Nearest-rank percentile of an unsorted sample, q in [0, 1].
double percentile(std::vector<double> sample, double q);

}  // namespace razor::stats
