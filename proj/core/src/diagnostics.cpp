#include "raschkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "raschkit/error.hpp"
#include "raschkit/stats.hpp"

namespace raschkit {

std::string misfit_band(double mnsq, const FitConfig& config) {
    if (mnsq > config.degrading) return "degrading";
    if (mnsq > config.noticeable) return "noticeable";
    return "";
}

std::vector<FitRow> fit_statistics(const ObservationSet& obs, const ParameterSet& params, FacetRole facet,
                                   const FitConfig& config) {
    if (facet == FacetRole::Rater && params.model != Model::ThreeFacet) {
        fail(ErrorKind::InvalidArgument, "rater fit needs a three-facet run");
    }
    const auto& fm = params.facet(facet);
    const auto fits = observation_fits(params, obs);

    const ElementRegistry& reg =
        facet == FacetRole::Examinee ? obs.examinees : (facet == FacetRole::Task ? obs.tasks : obs.raters);
    std::vector<std::vector<std::size_t>> members(fm.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto& o = obs.observations[i];
        const std::uint32_t e = facet == FacetRole::Examinee ? o.examinee : (facet == FacetRole::Task ? o.task : o.rater);
        members[*fm.find(reg.at(e))].push_back(i);
    }

    std::vector<FitRow> rows;
    rows.reserve(fm.size());
    for (std::size_t e = 0; e < fm.size(); ++e) {
        FitRow row;
        row.facet = facet;
        row.element_id = fm.ids[e];
        row.measure = fm.measure[e];
        row.se = fm.se.empty() ? std::nullopt : fm.se[e];
        row.count = static_cast<int>(members[e].size());
        double sq = 0.0, info = 0.0, z2 = 0.0;
        int z_count = 0;
        std::vector<double> x, w;
        for (auto i : members[e]) {
            const auto& f = fits[i];
            const double r = f.observed - f.expected;
            sq += r * r;
            info += f.variance;
            if (f.variance > 0.0) {
                z2 += r * r / f.variance;
                ++z_count;
            }
            x.push_back(f.observed);
            w.push_back(f.combined_measure);
        }
        if (info > 0.0) row.infit = sq / info;
        if (z_count > 0) row.outfit = z2 / z_count;
        if (!row.infit) row.flag = "no information";
        if (facet == FacetRole::Examinee) {
            if (row.count >= 2) {
                row.ptmea = stats::pearson(x, w);
                if (!row.ptmea && row.flag.empty()) row.flag = "zero variance; no correlation";
            }
        }
        if (row.flag.empty()) {
            row.flag = misfit_band(std::max(row.infit.value_or(0.0), row.outfit.value_or(0.0)), config);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ReliabilityReport reliability_of(const FacetMeasures& fm) {
    std::vector<double> m, se2;
    for (std::size_t e = 0; e < fm.size(); ++e) {
        if (e < fm.se.size() && fm.se[e]) {
            m.push_back(fm.measure[e]);
            se2.push_back(*fm.se[e] * *fm.se[e]);
        }
    }
    if (m.size() < 2) {
        fail(ErrorKind::InvalidArgument,
             "reliability of " + std::string(to_string(fm.role)) + " needs two elements with standard errors");
    }
    ReliabilityReport r;
    r.facet = fm.role;
    r.elements = static_cast<int>(m.size());
    r.mean = stats::mean(m);
    const double var = stats::population_variance(m);
    r.observed_sd = std::sqrt(var);
    const double mse = stats::mean(se2);
    r.rmse = std::sqrt(mse);
    const double true_var = std::max(0.0, var - mse);
    r.reliability = var > 0.0 ? std::clamp(true_var / var, 0.0, 1.0) : 0.0;
    r.separation = r.rmse > 0.0 ? std::sqrt(true_var) / r.rmse : 0.0;
    return r;
}

ReliabilityReport separation_reliability(const ParameterSet& params, FacetRole facet) {
    return reliability_of(params.facet(facet));
}

ReliabilityReport person_reliability(const ParameterSet& params) { return reliability_of(params.examinees); }

WaldTest wald_equal_severity(const FacetMeasures& fm) {
    std::vector<std::size_t> usable;
    for (std::size_t j = 0; j < fm.size(); ++j) {
        if (j < fm.se.size() && fm.se[j] && *fm.se[j] > 0.0) usable.push_back(j);
    }
    if (usable.size() < 2) fail(ErrorKind::InvalidArgument, "Wald test needs at least two elements with SEs");
    WaldTest out;
    double sw = 0.0, swa = 0.0;
    for (auto j : usable) {
        const double w = 1.0 / (*fm.se[j] * *fm.se[j]);
        sw += w;
        swa += w * fm.measure[j];
    }
    out.weighted_mean = swa / sw;
    for (auto j : usable) {
        const double d = fm.measure[j] - out.weighted_mean;
        out.statistic += d * d / (*fm.se[j] * *fm.se[j]);
    }
    out.df = static_cast<int>(usable.size()) - 1;
    boost::math::chi_squared chi(out.df);
    out.p_value = out.statistic <= 0.0 ? 1.0 : boost::math::cdf(boost::math::complement(chi, out.statistic));

    boost::math::normal normal;
    for (std::size_t a = 0; a < usable.size(); ++a) {
        for (std::size_t b = a + 1; b < usable.size(); ++b) {
            PairwiseWald pw;
            const auto ja = usable[a], jb = usable[b];
            pw.a = fm.ids[ja];
            pw.b = fm.ids[jb];
            pw.difference = fm.measure[ja] - fm.measure[jb];
            pw.se = std::hypot(*fm.se[ja], *fm.se[jb]);
            pw.z = pw.difference / pw.se;
            pw.p_value = 2.0 * boost::math::cdf(boost::math::complement(normal, std::abs(pw.z)));
            out.pairwise.push_back(pw);
        }
    }
    return out;
}

WaldTest wald_equal_severity(const ParameterSet& params, FacetRole facet) {
    return wald_equal_severity(params.facet(facet));
}

void RaterScoreTable::validate() const {
    if (scores.size() != raters.size()) fail(ErrorKind::Dimension, "score table needs one row per rater");
    for (const auto& row : scores) {
        if (row.size() != items.size()) fail(ErrorKind::Dimension, "score table needs one column per item");
    }
}

std::string disagreement_band(int difference) {
    switch (std::abs(difference)) {
        case 0: return "perfect agreement";
        case 1: return "very low disagreement";
        case 2: return "low disagreement";
        case 3: return "medium disagreement";
        default: return "high disagreement";
    }
}

std::vector<PairwiseDifferenceMatrix> pairwise_difference_matrices(const RaterScoreTable& table) {
    table.validate();
    const std::size_t nr = table.raters.size();
    std::vector<PairwiseDifferenceMatrix> out;
    for (std::size_t i = 0; i < table.items.size(); ++i) {
        PairwiseDifferenceMatrix m;
        m.item_id = table.items[i];
        m.raters = table.raters;
        m.cells.assign(nr, std::vector<std::optional<int>>(nr));
        for (std::size_t a = 0; a < nr; ++a) {
            for (std::size_t b = 0; b < nr; ++b) {
                const auto& sa = table.scores[a][i];
                const auto& sb = table.scores[b][i];
                if (sa && sb) m.cells[a][b] = *sa - *sb;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace raschkit
