#pragma once

#include <optional>
#include <span>
#include <vector>

namespace raschkit::stats {

double mean(std::span<const double> x);
// Population variance (divides by N).
double population_variance(std::span<const double> x);
// Sample standard deviation (divides by N - 1); 0 for fewer than two values.
double sample_sd(std::span<const double> x);
double median(std::vector<double> x);

// Absent when either side has zero variance or fewer than two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Mid-ranks, 1-based.
std::vector<double> ranks(std::span<const double> x);

}  // namespace raschkit::stats
