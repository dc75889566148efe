#pragma once

// Local independence and unidimensionality checks on the standardized
// residuals of a partial credit run.

#include <optional>
#include <string>
#include <vector>

#include "raschkit/estimation.hpp"
#include "raschkit/model.hpp"

namespace raschkit {

struct ResidualMatrix {
    std::vector<std::string> persons;
    std::vector<std::string> items;
    std::vector<std::vector<std::optional<double>>> z;  // [person][item]
};

// z = (x - E) / sqrt(W) per observed cell; cells with W = 0 stay missing.
ResidualMatrix residual_matrix(const ObservationSet& obs, const ParameterSet& params);

struct ItemPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double r = 0.0;
};

struct CorrelationTable {
    std::vector<std::string> items;
    std::vector<std::vector<std::optional<double>>> r;
    std::vector<std::vector<int>> n;  // jointly observed persons
    std::optional<ItemPair> most_positive;
    std::optional<ItemPair> most_negative;
};

CorrelationTable residual_item_correlations(const ResidualMatrix& res);

struct ClusterCorrelation {
    int first = 0;
    int second = 0;
    int persons = 0;
    std::optional<double> observed;
    double reliability_first = 0.0;
    double reliability_second = 0.0;
    std::optional<double> disattenuated;
};

struct ContrastReport {
    std::vector<std::string> items;
    std::vector<double> eigenvalues;                // all, descending
    std::vector<std::vector<double>> loadings;      // [contrast][item], unit length
    std::vector<int> clusters;                      // 1 high, 2 middle, 3 low
    std::vector<ClusterCorrelation> correlations;   // (2-1) and (2-3) when computed
};

// Eigen-decomposition of the pairwise residual correlation matrix.
ContrastReport residual_pca(const ResidualMatrix& res, int contrasts = 2);

// Tertiles of the first-contrast loadings: sizes (n+2)/3, (n+1)/3, n/3 from
// the highest loading down.
std::vector<int> loading_clusters(const std::vector<double>& loadings);

// Person measures per cluster with items anchored at the main run, then the
// (2-1) and (2-3) correlations divided by sqrt(rel_a * rel_b), capped at 1.
std::vector<ClusterCorrelation> disattenuated_cluster_correlations(const ObservationSet& obs,
                                                                   const ParameterSet& main,
                                                                   const std::vector<std::string>& items,
                                                                   const std::vector<int>& clusters,
                                                                   const EstimationConfig& config = {});

}  // namespace raschkit
