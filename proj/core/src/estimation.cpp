#include "raschkit/estimation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "raschkit/error.hpp"

namespace raschkit {

void EstimationConfig::validate() const {
    if (!(convergence_tol > 0.0)) fail(ErrorKind::Validation, "convergence_tol must be positive");
    if (max_iterations < 1) fail(ErrorKind::Validation, "max_iterations must be at least 1");
    if (!(step_clamp > 0.0)) fail(ErrorKind::Validation, "step_clamp must be positive");
    if (!(extreme_score_adjustment > 0.0 && extreme_score_adjustment < 0.5)) {
        fail(ErrorKind::Validation, "extreme_score_adjustment must lie in (0, 0.5)");
    }
}

namespace {

constexpr std::size_t kMaxCategories = 64;

struct CategoryMoments {
    double expected = 0.0;
    double variance = 0.0;
};

// Moments of the adjacent-category logit distribution, computed in one pass.
// probs receives the normalised category probabilities.
CategoryMoments category_moments(double eta, std::span<const double> tau, double* probs) {
    const std::size_t m = tau.size();
    double acc = 0.0;
    double top = 0.0;
    probs[0] = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        acc += eta - tau[k];
        probs[k + 1] = acc;
        top = std::max(top, acc);
    }
    double z = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c <= m; ++c) {
        const double v = std::exp(probs[c] - top);
        probs[c] = v;
        z += v;
        s1 += static_cast<double>(c) * v;
        s2 += static_cast<double>(c * c) * v;
    }
    for (std::size_t c = 0; c <= m; ++c) probs[c] /= z;
    const double e = s1 / z;
    return {e, std::max(0.0, s2 / z - e * e)};
}

double clamp_step(double step, double limit) { return std::clamp(step, -limit, limit); }

struct EngineObs {
    std::array<std::uint32_t, 3> element{};
    std::uint32_t group = 0;
    int category = 0;
};

// Shared JMLE machinery. Facet slots: 0 examinee, 1 task, 2 rater.
class Engine {
public:
    int nfacets = 3;
    std::array<int, 3> orient{1, -1, -1};
    std::array<bool, 3> centered{false, true, true};
    bool tau_per_task = false;
    std::array<std::vector<double>, 3> measure;
    std::vector<std::vector<double>> tau;
    std::vector<bool> tau_free;
    std::vector<EngineObs> obs;
    EstimationConfig config;

    std::array<std::vector<char>, 3> extreme;
    std::vector<ExtremeElement> extremes;

    void prepare() {
        for (int f = 0; f < nfacets; ++f) {
            all_obs_[f].assign(measure[f].size(), {});
            extreme[f].assign(measure[f].size(), 0);
        }
        for (std::uint32_t i = 0; i < obs.size(); ++i) {
            for (int f = 0; f < nfacets; ++f) all_obs_[f][obs[i].element[f]].push_back(i);
        }
        active_.assign(obs.size(), 1);
        find_extremes();
        for (int f = 0; f < nfacets; ++f) {
            act_obs_[f].assign(measure[f].size(), {});
            target_[f].assign(measure[f].size(), 0.0);
        }
        group_obs_.assign(tau.size(), {});
        std::size_t active_count = 0;
        for (std::uint32_t i = 0; i < obs.size(); ++i) {
            if (!active_[i]) continue;
            ++active_count;
            for (int f = 0; f < nfacets; ++f) {
                act_obs_[f][obs[i].element[f]].push_back(i);
                target_[f][obs[i].element[f]] += obs[i].category;
            }
            group_obs_[obs[i].group].push_back(i);
        }
        if (active_count == 0) {
            fail(ErrorKind::Validation, "every element has an extreme score; nothing left to estimate");
        }
        for (std::size_t g = 0; g < tau.size(); ++g) {
            if (!tau_free[g]) continue;
            std::vector<int> counts(tau[g].size() + 1, 0);
            for (auto i : group_obs_[g]) ++counts[static_cast<std::size_t>(obs[i].category)];
            for (std::size_t c = 0; c < counts.size(); ++c) {
                if (counts[c] == 0) {
                    fail(ErrorKind::Validation, "category index " + std::to_string(c) + group_label(g) +
                                                    " is never observed among non-extreme data; collapse the scale");
                }
            }
        }
    }

    // One Gauss-Seidel sweep; returns the largest parameter change.
    double sweep() {
        double max_change = 0.0;
        for (int f = 0; f < nfacets; ++f) {
            for (std::size_t e = 0; e < measure[f].size(); ++e) {
                if (extreme[f][e]) continue;
                const auto [expected, variance] = element_moments(act_obs_[f][e]);
                if (variance <= 0.0) continue;
                const double step =
                    clamp_step(orient[f] * (target_[f][e] - expected) / variance, config.step_clamp);
                measure[f][e] += step;
                max_change = std::max(max_change, std::abs(step));
            }
        }
        for (std::size_t g = 0; g < tau.size(); ++g) {
            if (tau_free[g]) max_change = std::max(max_change, threshold_step(g));
        }
        center(false);
        return max_change;
    }

    // Anchored estimation of the extreme elements from adjusted scores.
    void estimate_extremes() {
        bool any = false;
        for (int f = 0; f < nfacets; ++f) {
            for (char x : extreme[f]) any = any || x;
        }
        if (!any) return;
        for (int round = 0; round < 500; ++round) {
            double max_change = 0.0;
            for (int f = 0; f < nfacets; ++f) {
                for (std::size_t e = 0; e < measure[f].size(); ++e) {
                    if (!extreme[f][e]) continue;
                    const auto& list = all_obs_[f][e];
                    const auto [expected, variance] = element_moments(list);
                    if (variance <= 0.0) continue;
                    const double step = clamp_step(orient[f] * (extreme_target(f, e) - expected) / variance,
                                                   config.step_clamp);
                    measure[f][e] += step;
                    max_change = std::max(max_change, std::abs(step));
                }
            }
            if (max_change < config.convergence_tol * 0.01) break;
        }
    }

    double extreme_target(int f, std::size_t e) const {
        double raw = 0.0, top = 0.0;
        for (auto i : all_obs_[f][e]) {
            raw += obs[i].category;
            top += static_cast<double>(tau[obs[i].group].size());
        }
        if (raw <= 0.0) return config.extreme_score_adjustment;
        if (raw >= top) return top - config.extreme_score_adjustment;
        return raw;
    }

    // Center constrained facets (all elements when `final`, else active ones)
    // and the thresholds, compensating through the examinee facet.
    void center(bool final) {
        for (std::size_t g = 0; g < tau.size(); ++g) {
            if (!tau_free[g] || tau[g].empty()) continue;
            const double c = std::accumulate(tau[g].begin(), tau[g].end(), 0.0) / static_cast<double>(tau[g].size());
            for (auto& t : tau[g]) t -= c;
            // Lowering every threshold by c raises each log-odds by c.
            if (tau_per_task) {
                measure[1][g] -= c * orient[1];
            } else {
                for (auto& th : measure[0]) th -= c * orient[0];
            }
        }
        for (int f = 1; f < nfacets; ++f) {
            if (!centered[f]) continue;
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t e = 0; e < measure[f].size(); ++e) {
                if (!final && extreme[f][e]) continue;
                sum += measure[f][e];
                ++n;
            }
            if (n == 0) continue;
            const double c = sum / static_cast<double>(n);
            for (std::size_t e = 0; e < measure[f].size(); ++e) {
                if (!final && extreme[f][e]) continue;
                measure[f][e] -= c;
            }
            for (auto& th : measure[0]) th += orient[0] * orient[f] * c;
        }
    }

private:
    std::array<std::vector<std::vector<std::uint32_t>>, 3> all_obs_;
    std::array<std::vector<std::vector<std::uint32_t>>, 3> act_obs_;
    std::array<std::vector<double>, 3> target_;
    std::vector<std::vector<std::uint32_t>> group_obs_;
    std::vector<char> active_;

    std::string group_label(std::size_t g) const {
        return tau_per_task ? " of item " + std::to_string(g) : "";
    }

    double eta(const EngineObs& o) const {
        double v = 0.0;
        for (int f = 0; f < nfacets; ++f) v += orient[f] * measure[f][o.element[f]];
        return v;
    }

    CategoryMoments element_moments(const std::vector<std::uint32_t>& list) const {
        std::array<double, kMaxCategories> probs{};
        CategoryMoments sum;
        for (auto i : list) {
            const auto& o = obs[i];
            const auto m = category_moments(eta(o), tau[o.group], probs.data());
            sum.expected += m.expected;
            sum.variance += m.variance;
        }
        return sum;
    }

    // Newton step on one threshold vector using the full information matrix
    // of the cumulative indicators [X >= k].
    double threshold_step(std::size_t g) {
        const std::size_t m = tau[g].size();
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        Eigen::MatrixXd info = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        std::array<double, kMaxCategories> probs{};
        std::array<double, kMaxCategories> at_least{};
        for (auto i : group_obs_[g]) {
            const auto& o = obs[i];
            category_moments(eta(o), tau[g], probs.data());
            double tail = 0.0;
            for (std::size_t c = m; c >= 1; --c) {
                tail += probs[c];
                at_least[c] = tail;
            }
            for (std::size_t k = 1; k <= m; ++k) {
                const auto ki = static_cast<Eigen::Index>(k - 1);
                grad(ki) += at_least[k] - (o.category >= static_cast<int>(k) ? 1.0 : 0.0);
                for (std::size_t l = 1; l <= m; ++l) {
                    info(ki, static_cast<Eigen::Index>(l - 1)) += at_least[std::max(k, l)] - at_least[k] * at_least[l];
                }
            }
        }
        Eigen::VectorXd step = info.ldlt().solve(grad);
        if (!step.allFinite()) {
            step = grad.cwiseQuotient(info.diagonal().cwiseMax(1e-12));
        }
        const double largest = step.cwiseAbs().maxCoeff();
        if (largest > config.step_clamp) step *= config.step_clamp / largest;
        for (std::size_t k = 0; k < m; ++k) tau[g][k] += step(static_cast<Eigen::Index>(k));
        return std::min(largest, config.step_clamp);
    }

    void find_extremes() {
        static constexpr std::array<FacetRole, 3> roles{FacetRole::Examinee, FacetRole::Task, FacetRole::Rater};
        bool changed = true;
        while (changed) {
            changed = false;
            for (int f = 0; f < nfacets; ++f) {
                for (std::size_t e = 0; e < measure[f].size(); ++e) {
                    if (extreme[f][e]) continue;
                    double raw = 0.0, top = 0.0;
                    std::size_t count = 0;
                    for (auto i : all_obs_[f][e]) {
                        if (!active_[i]) continue;
                        raw += obs[i].category;
                        top += static_cast<double>(tau[obs[i].group].size());
                        ++count;
                    }
                    if (count > 0 && raw > 0.0 && raw < top) continue;
                    extreme[f][e] = 1;
                    changed = true;
                    for (auto i : all_obs_[f][e]) active_[i] = 0;
                    ExtremeElement x;
                    x.facet = roles[static_cast<std::size_t>(f)];
                    x.id = std::to_string(e);  // replaced with the real id by the caller
                    for (auto i : all_obs_[f][e]) {
                        x.raw_score += obs[i].category;
                        x.max_score += static_cast<double>(tau[obs[i].group].size());
                    }
                    x.adjusted_score = extreme_target(f, e);
                    if (count == 0) {
                        x.policy = "no non-extreme observations; estimated with other measures anchored";
                    } else {
                        x.policy = "extreme score adjusted by " + std::to_string(config.extreme_score_adjustment) +
                                   "; estimated with other measures anchored";
                    }
                    extremes.push_back(std::move(x));
                }
            }
        }
    }
};

// Runs the sweep loop and final centering; fills the common result fields.
void run(Engine& engine, EstimationResult& result) {
    engine.prepare();
    result.converged = false;
    for (int it = 1; it <= engine.config.max_iterations; ++it) {
        result.max_change = engine.sweep();
        result.iterations = it;
        if (result.max_change < engine.config.convergence_tol) {
            result.converged = true;
            break;
        }
    }
    engine.estimate_extremes();
    engine.center(true);
}

void check_common(const ObservationSet& obs, const EstimationConfig& config) {
    config.validate();
    if (obs.observations.empty()) fail(ErrorKind::InvalidArgument, "no observations to estimate from");
    obs.validate();
    if (obs.distinct_categories() < 2) {
        fail(ErrorKind::Validation, "at least two distinct categories must be observed");
    }
    if (obs.scale.size() > kMaxCategories) fail(ErrorKind::Validation, "too many rating categories");
}

bool is_centered(const FacetSpec& f, const EstimationConfig& config) {
    if (config.centering.empty()) return f.centered;
    return std::find(config.centering.begin(), config.centering.end(), f.role) != config.centering.end();
}

void name_extremes(Engine& engine, const ParameterSet& p) {
    for (auto& x : engine.extremes) {
        const auto idx = static_cast<std::size_t>(std::stoul(x.id));
        x.id = p.facet(x.facet).ids[idx];
    }
}

}  // namespace

EstimationResult estimate_3frsm(const ObservationSet& obs, std::span<const FacetSpec> facets,
                                const EstimationConfig& config) {
    check_common(obs, config);
    if (!obs.has_raters()) fail(ErrorKind::Validation, "three-facet estimation needs rater ids");
    std::vector<FacetSpec> specs(facets.begin(), facets.end());
    for (auto& f : specs) f.centered = is_centered(f, config);
    validate_facets(specs);
    if (specs.size() != 3) fail(ErrorKind::Validation, "three-facet estimation needs examinee, task and rater facets");

    EstimationResult result;
    result.params = make_parameter_set(obs, Model::ThreeFacet, specs);
    auto& p = result.params;

    Engine engine;
    engine.config = config;
    engine.nfacets = 3;
    const auto o = p.orientations();
    engine.orient = {o.examinee, o.task, o.rater};
    engine.centered = {p.examinees.centered, p.tasks.centered, p.raters.centered};
    engine.measure = {p.examinees.measure, p.tasks.measure, p.raters.measure};
    engine.tau = {std::vector<double>(static_cast<std::size_t>(obs.scale.max_index()), 0.0)};
    engine.tau_free = {true};
    engine.obs.reserve(obs.size());
    for (const auto& ob : obs.observations) engine.obs.push_back({{ob.examinee, ob.task, ob.rater}, 0, ob.category});

    run(engine, result);

    p.examinees.measure = engine.measure[0];
    p.tasks.measure = engine.measure[1];
    p.raters.measure = engine.measure[2];
    p.tau = engine.tau[0];
    name_extremes(engine, p);
    result.dropped_elements = std::move(engine.extremes);
    result.params = standard_errors(p, obs);
    return result;
}

EstimationResult estimate_pcm(const ObservationSet& obs, const EstimationConfig& config) {
    check_common(obs, config);
    if (obs.scale.size() < 2) fail(ErrorKind::Validation, "scale needs at least two categories");
    auto specs = default_facets(Model::PartialCredit);
    for (auto& f : specs) f.centered = is_centered(f, config);
    validate_facets(specs);

    EstimationResult result;
    result.params = make_parameter_set(obs, Model::PartialCredit, specs);
    auto& p = result.params;

    // Item structure: the categories observed on each item, renumbered 0..m_i.
    std::vector<std::set<int>> seen(obs.tasks.size());
    for (const auto& ob : obs.observations) seen[ob.task].insert(ob.category);
    p.item_categories.assign(obs.tasks.size(), {});
    p.item_tau.assign(obs.tasks.size(), {});
    for (std::size_t i = 0; i < seen.size(); ++i) {
        std::vector<int> cats(seen[i].begin(), seen[i].end());
        if (cats.size() == 1) {
            // Single observed category: keep a dichotomous structure so the
            // item is treated as extreme rather than uninformative.
            const int c = cats.front();
            cats = c < obs.scale.max_index() ? std::vector<int>{c, c + 1} : std::vector<int>{c - 1, c};
        }
        bool identity = true;
        for (std::size_t k = 0; k < cats.size(); ++k) identity = identity && cats[k] == static_cast<int>(k);
        if (!identity) {
            ItemRecode rc{obs.tasks.at(static_cast<std::uint32_t>(i)), {}};
            for (int c : cats) rc.source_codes.push_back(obs.scale.code_of(c));
            result.recodes.push_back(std::move(rc));
        }
        p.item_tau[i].assign(cats.size() - 1, 0.0);
        p.item_categories[i] = std::move(cats);
    }

    Engine engine;
    engine.config = config;
    engine.nfacets = 2;
    engine.tau_per_task = true;
    engine.orient = {p.examinees.orientation, p.tasks.orientation, -1};
    engine.centered = {p.examinees.centered, p.tasks.centered, false};
    engine.measure = {p.examinees.measure, p.tasks.measure, {}};
    engine.tau = p.item_tau;
    engine.tau_free.assign(p.item_tau.size(), false);
    for (std::size_t i = 0; i < p.item_tau.size(); ++i) engine.tau_free[i] = p.item_tau[i].size() >= 2;
    engine.obs.reserve(obs.size());
    for (const auto& ob : obs.observations) {
        const auto& cats = p.item_categories[ob.task];
        const int internal = static_cast<int>(std::find(cats.begin(), cats.end(), ob.category) - cats.begin());
        engine.obs.push_back({{ob.examinee, ob.task, 0}, ob.task, internal});
    }

    run(engine, result);

    p.examinees.measure = engine.measure[0];
    p.tasks.measure = engine.measure[1];
    p.item_tau = engine.tau;
    name_extremes(engine, p);
    result.dropped_elements = std::move(engine.extremes);
    result.params = standard_errors(p, obs);
    return result;
}

ParameterSet standard_errors(const ParameterSet& params, const ObservationSet& obs) {
    ParameterSet out = params;
    const auto fits = observation_fits(params, obs);
    auto accumulate = [&](FacetMeasures& fm, const ElementRegistry& reg, auto element_of) {
        std::vector<double> info(fm.size(), 0.0);
        for (std::size_t i = 0; i < fits.size(); ++i) {
            const auto idx = fm.find(reg.at(element_of(obs.observations[i])));
            info[*idx] += fits[i].variance;
        }
        fm.se.assign(fm.size(), std::nullopt);
        for (std::size_t e = 0; e < fm.size(); ++e) {
            if (info[e] > 0.0) fm.se[e] = 1.0 / std::sqrt(info[e]);
        }
    };
    accumulate(out.examinees, obs.examinees, [](const Observation& o) { return o.examinee; });
    accumulate(out.tasks, obs.tasks, [](const Observation& o) { return o.task; });
    if (params.model == Model::ThreeFacet) {
        accumulate(out.raters, obs.raters, [](const Observation& o) { return o.rater; });
    }
    return out;
}

BiasTable estimate_bias_interactions(const ObservationSet& obs, const EstimationResult& main,
                                     const EstimationConfig& config) {
    config.validate();
    const auto& p = main.params;
    if (p.model != Model::ThreeFacet) fail(ErrorKind::InvalidArgument, "bias analysis needs a three-facet run");
    if (!main.converged) fail(ErrorKind::InvalidArgument, "bias analysis needs a converged main-effects run");
    const auto fits = observation_fits(p, obs);
    const int rater_sign = p.raters.orientation;
    const double top = static_cast<double>(p.tau.size());

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> pairs;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        pairs[{obs.observations[i].examinee, obs.observations[i].rater}].push_back(i);
    }

    BiasTable table;
    std::array<double, kMaxCategories> probs{};
    for (const auto& [key, list] : pairs) {
        BiasRow row;
        row.examinee_id = obs.examinees.at(key.first);
        row.rater_id = obs.raters.at(key.second);
        row.count = static_cast<int>(list.size());
        for (auto i : list) {
            row.observed += fits[i].observed;
            row.expected += fits[i].expected;
        }
        const double max_score = top * static_cast<double>(list.size());
        double target = row.observed;
        if (row.observed <= 0.0) {
            target = config.extreme_score_adjustment;
            row.flag = "extreme (minimum) score adjusted";
        } else if (row.observed >= max_score) {
            target = max_score - config.extreme_score_adjustment;
            row.flag = "extreme (maximum) score adjusted";
        }
        double phi = 0.0;
        double information = 0.0;
        for (int it = 0; it < 100; ++it) {
            double expected = 0.0;
            information = 0.0;
            for (auto i : list) {
                const auto m = category_moments(fits[i].combined_measure + rater_sign * phi, p.tau, probs.data());
                expected += m.expected;
                information += m.variance;
            }
            if (information <= 0.0) break;
            const double step = clamp_step(rater_sign * (target - expected) / information, config.step_clamp);
            phi += step;
            if (std::abs(step) < 1e-8) break;
        }
        row.phi = phi;
        row.df = row.count - 1;
        if (information <= 0.0) {
            row.flag = "no residual information";
        } else {
            row.se = 1.0 / std::sqrt(information);
            row.t = phi / *row.se;
            if (row.df >= 1) {
                boost::math::students_t dist(row.df);
                row.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(*row.t)));
                row.significant = *row.p_value < table.alpha_level;
            } else if (row.flag.empty()) {
                row.flag = "single observation; no test";
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

FacetMeasures estimate_anchored_persons(const ObservationSet& obs, const ParameterSet& anchors,
                                        const EstimationConfig& config) {
    config.validate();
    if (anchors.model == Model::ThreeFacet) {
        fail(ErrorKind::InvalidArgument, "anchored person estimation expects a partial credit run");
    }
    struct Item {
        double beta;
        const std::vector<double>* tau;
        const std::vector<int>* cats;
    };
    std::vector<Item> items;
    for (std::uint32_t t = 0; t < obs.tasks.size(); ++t) {
        const auto idx = anchors.tasks.find(obs.tasks.at(t));
        if (!idx) fail(ErrorKind::MissingParameter, "no anchor for item '" + obs.tasks.at(t) + "'");
        items.push_back({anchors.tasks.measure[*idx], &anchors.item_tau[*idx], &anchors.item_categories[*idx]});
    }
    std::vector<std::vector<std::pair<std::size_t, int>>> by_person(obs.examinees.size());
    for (const auto& o : obs.observations) {
        const auto& cats = *items[o.task].cats;
        auto it = std::find(cats.begin(), cats.end(), o.category);
        if (it == cats.end()) {
            fail(ErrorKind::Validation, "category not in anchored structure of item '" + obs.tasks.at(o.task) + "'");
        }
        by_person[o.examinee].emplace_back(o.task, static_cast<int>(it - cats.begin()));
    }

    FacetMeasures out;
    out.role = FacetRole::Examinee;
    out.orientation = anchors.examinees.orientation;
    out.ids = obs.examinees.ids();
    out.measure.assign(out.ids.size(), 0.0);
    out.se.assign(out.ids.size(), std::nullopt);
    const int person_sign = anchors.examinees.orientation;
    const int item_sign = anchors.tasks.orientation;
    std::array<double, kMaxCategories> probs{};
    for (std::size_t n = 0; n < by_person.size(); ++n) {
        double raw = 0.0, top = 0.0;
        for (const auto& [item, cat] : by_person[n]) {
            raw += cat;
            top += static_cast<double>(items[item].tau->size());
        }
        if (top <= 0.0) continue;
        double target = raw;
        if (raw <= 0.0) target = config.extreme_score_adjustment;
        if (raw >= top) target = top - config.extreme_score_adjustment;
        double theta = 0.0, information = 0.0;
        for (int it = 0; it < 200; ++it) {
            double expected = 0.0;
            information = 0.0;
            for (const auto& [item, cat] : by_person[n]) {
                const auto& tau = *items[item].tau;
                if (tau.empty()) continue;
                const auto m = category_moments(person_sign * theta + item_sign * items[item].beta, tau, probs.data());
                expected += m.expected;
                information += m.variance;
            }
            if (information <= 0.0) break;
            const double step = clamp_step(person_sign * (target - expected) / information, config.step_clamp);
            theta += step;
            if (std::abs(step) < config.convergence_tol * 0.01) break;
        }
        out.measure[n] = theta;
        if (information > 0.0) out.se[n] = 1.0 / std::sqrt(information);
    }
    return out;
}

}  // namespace raschkit
