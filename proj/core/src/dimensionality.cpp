#include "raschkit/dimensionality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "raschkit/diagnostics.hpp"
#include "raschkit/error.hpp"
#include "raschkit/stats.hpp"

namespace raschkit {

ResidualMatrix residual_matrix(const ObservationSet& obs, const ParameterSet& params) {
    if (params.model == Model::ThreeFacet) fail(ErrorKind::InvalidArgument, "residual matrix expects a person x item run");
    const auto fits = observation_fits(params, obs);
    ResidualMatrix res;
    res.persons = obs.examinees.ids();
    res.items = obs.tasks.ids();
    res.z.assign(res.persons.size(), std::vector<std::optional<double>>(res.items.size()));
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto& o = obs.observations[i];
        const auto& f = fits[i];
        if (f.variance > 0.0) res.z[o.examinee][o.task] = (f.observed - f.expected) / std::sqrt(f.variance);
    }
    return res;
}

CorrelationTable residual_item_correlations(const ResidualMatrix& res) {
    const std::size_t ni = res.items.size();
    CorrelationTable t;
    t.items = res.items;
    t.r.assign(ni, std::vector<std::optional<double>>(ni));
    t.n.assign(ni, std::vector<int>(ni, 0));
    for (std::size_t a = 0; a < ni; ++a) {
        for (std::size_t b = a; b < ni; ++b) {
            std::vector<double> x, y;
            for (const auto& row : res.z) {
                if (row[a] && row[b]) {
                    x.push_back(*row[a]);
                    y.push_back(*row[b]);
                }
            }
            t.n[a][b] = t.n[b][a] = static_cast<int>(x.size());
            const auto r = a == b ? (x.size() >= 2 ? std::optional<double>(1.0) : std::nullopt) : stats::pearson(x, y);
            t.r[a][b] = t.r[b][a] = r;
            if (a == b || !r) continue;
            if (*r > 0.0 && (!t.most_positive || *r > t.most_positive->r)) t.most_positive = ItemPair{a, b, *r};
            if (*r < 0.0 && (!t.most_negative || *r < t.most_negative->r)) t.most_negative = ItemPair{a, b, *r};
        }
    }
    return t;
}

std::vector<int> loading_clusters(const std::vector<double>& loadings) {
    const std::size_t n = loadings.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return loadings[a] > loadings[b]; });
    const std::size_t high = (n + 2) / 3, middle = (n + 1) / 3;
    std::vector<int> clusters(n, 3);
    for (std::size_t k = 0; k < n; ++k) clusters[order[k]] = k < high ? 1 : (k < high + middle ? 2 : 3);
    return clusters;
}

ContrastReport residual_pca(const ResidualMatrix& res, int contrasts) {
    const auto table = residual_item_correlations(res);
    const auto ni = static_cast<Eigen::Index>(res.items.size());
    if (ni < 2) fail(ErrorKind::InvalidArgument, "residual PCA needs at least two items");
    if (contrasts < 1 || contrasts > ni) fail(ErrorKind::InvalidArgument, "contrast count out of range");
    Eigen::MatrixXd c(ni, ni);
    for (Eigen::Index a = 0; a < ni; ++a) {
        for (Eigen::Index b = 0; b < ni; ++b) {
            const auto& r = table.r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (!r) {
                fail(ErrorKind::InvalidArgument, "degenerate residual correlation between '" +
                                                     res.items[static_cast<std::size_t>(a)] + "' and '" +
                                                     res.items[static_cast<std::size_t>(b)] + "'");
            }
            c(a, b) = *r;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
    if (solver.info() != Eigen::Success) fail(ErrorKind::InvalidArgument, "eigen-decomposition failed");

    ContrastReport out;
    out.items = res.items;
    const auto& values = solver.eigenvalues();  // ascending
    const auto& vectors = solver.eigenvectors();
    for (Eigen::Index k = ni - 1; k >= 0; --k) out.eigenvalues.push_back(values(k));
    for (int k = 0; k < contrasts; ++k) {
        Eigen::VectorXd v = vectors.col(ni - 1 - k);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        out.loadings.emplace_back(v.data(), v.data() + v.size());
    }
    out.clusters = loading_clusters(out.loadings.front());
    return out;
}

std::vector<ClusterCorrelation> disattenuated_cluster_correlations(const ObservationSet& obs,
                                                                   const ParameterSet& main,
                                                                   const std::vector<std::string>& items,
                                                                   const std::vector<int>& clusters,
                                                                   const EstimationConfig& config) {
    if (items.size() != clusters.size()) fail(ErrorKind::Dimension, "one cluster label per item expected");
    std::vector<FacetMeasures> measures(3);
    for (int c = 1; c <= 3; ++c) {
        std::vector<std::string> members;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (clusters[i] == c) members.push_back(items[i]);
        }
        if (members.size() < 2) {
            fail(ErrorKind::InvalidArgument, "cluster " + std::to_string(c) + " needs at least two items");
        }
        ObservationSet sub;
        sub.scale = obs.scale;
        for (const auto& p : obs.examinees.ids()) sub.examinees.add(p);
        for (const auto& o : obs.observations) {
            const auto& item = obs.tasks.at(o.task);
            if (std::find(members.begin(), members.end(), item) == members.end()) continue;
            sub.observations.push_back({o.examinee, 0, sub.tasks.add(item), o.category});
        }
        measures[static_cast<std::size_t>(c - 1)] = estimate_anchored_persons(sub, main, config);
    }

    std::vector<ClusterCorrelation> out;
    for (auto [a, b] : {std::pair{2, 1}, std::pair{2, 3}}) {
        const auto& ma = measures[static_cast<std::size_t>(a - 1)];
        const auto& mb = measures[static_cast<std::size_t>(b - 1)];
        ClusterCorrelation cc;
        cc.first = a;
        cc.second = b;
        std::vector<double> x, y;
        for (std::size_t n = 0; n < ma.size(); ++n) {
            if (ma.se[n] && mb.se[n]) {
                x.push_back(ma.measure[n]);
                y.push_back(mb.measure[n]);
            }
        }
        cc.persons = static_cast<int>(x.size());
        cc.observed = stats::pearson(x, y);
        cc.reliability_first = reliability_of(ma).reliability;
        cc.reliability_second = reliability_of(mb).reliability;
        const double denom = std::sqrt(cc.reliability_first * cc.reliability_second);
        if (cc.observed && denom > 0.0) cc.disattenuated = std::clamp(*cc.observed / denom, -1.0, 1.0);
        out.push_back(cc);
    }
    return out;
}

}  // namespace raschkit
