#include "raschkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "raschkit/error.hpp"

namespace raschkit::stats {

double mean(std::span<const double> x) {
    if (x.empty()) fail(ErrorKind::InvalidArgument, "mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double population_variance(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double n = static_cast<double>(x.size());
    return std::sqrt(population_variance(x) * n / (n - 1.0));
}

double median(std::vector<double> x) {
    if (x.empty()) fail(ErrorKind::InvalidArgument, "median of an empty sample");
    std::sort(x.begin(), x.end());
    const std::size_t h = x.size() / 2;
    return x.size() % 2 ? x[h] : 0.5 * (x[h - 1] + x[h]);
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorKind::Dimension, "pearson: samples differ in length");
    if (x.size() < 2) return std::nullopt;
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t k = 0; k < order.size();) {
        std::size_t j = k;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[k]]) ++j;
        const double mid = 0.5 * static_cast<double>(k + j) + 1.0;
        for (std::size_t q = k; q <= j; ++q) r[order[q]] = mid;
        k = j + 1;
    }
    return r;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson(rx, ry);
}

}  // namespace raschkit::stats
