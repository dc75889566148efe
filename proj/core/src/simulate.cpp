#include "raschkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "raschkit/error.hpp"

namespace raschkit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::string padded(const char* prefix, int index, int total) {
    const int width = total >= 100 ? 3 : (total >= 10 ? 2 : 1);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, index);
    return buf;
}

std::vector<double> spaced(int n, double spread) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    if (n == 1) return v;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = -spread + 2.0 * spread * i / (n - 1);
    return v;
}

FacetMeasures make_facet(FacetRole role, int orientation, bool centered, const char* prefix, int n,
                         double spread) {
    FacetMeasures f;
    f.role = role;
    f.orientation = orientation;
    f.centered = centered;
    for (int i = 1; i <= n; ++i) f.ids.push_back(padded(prefix, i, n));
    f.measure = spaced(n, spread);
    f.se.assign(static_cast<std::size_t>(n), std::nullopt);
    return f;
}

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication) noexcept {
    return CounterRng::mix(seed ^ CounterRng::mix(replication + 1));
}

int sample_category(std::span<const double> probabilities, CounterRng& rng) {
    if (probabilities.empty()) fail(ErrorKind::InvalidArgument, "empty probability vector");
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t c = 0; c < probabilities.size(); ++c) {
        cumulative += probabilities[c];
        if (u < cumulative) return static_cast<int>(c);
    }
    return static_cast<int>(probabilities.size()) - 1;
}

void SimulationDesign::validate() const {
    if (replications < 1) fail(ErrorKind::Validation, "replications must be at least 1");
    if (!(missing_rate >= 0.0 && missing_rate < 1.0)) fail(ErrorKind::Validation, "missing_rate must lie in [0, 1)");
    const auto& g = generating;
    if (g.examinees.size() == 0 || g.tasks.size() == 0) {
        fail(ErrorKind::Validation, "simulation design needs examinees and tasks");
    }
    for (const auto* f : {&g.examinees, &g.tasks, &g.raters}) {
        if (f->centered && f->size() > 0 && std::abs(f->mean()) > 1e-9) {
            fail(ErrorKind::Validation, "generating " + std::string(to_string(f->role)) + " measures must have mean 0");
        }
        if (f->measure.size() != f->ids.size()) fail(ErrorKind::Validation, "generator ids and measures differ in size");
    }
    if (g.model == Model::ThreeFacet) {
        if (g.raters.size() == 0) fail(ErrorKind::Validation, "three-facet design needs raters");
        if (g.tau.empty()) fail(ErrorKind::Validation, "three-facet design needs thresholds");
        if (std::abs(std::accumulate(g.tau.begin(), g.tau.end(), 0.0)) > 1e-9) {
            fail(ErrorKind::Validation, "generating thresholds must sum to 0");
        }
        if (static_cast<int>(g.tau.size()) != scale.max_index()) {
            fail(ErrorKind::Validation, "threshold count does not match the scale");
        }
    } else {
        if (g.item_tau.size() != g.tasks.size()) fail(ErrorKind::Validation, "every item needs thresholds");
        for (std::size_t i = 0; i < g.item_tau.size(); ++i) {
            const auto& t = g.item_tau[i];
            if (t.empty() || std::abs(std::accumulate(t.begin(), t.end(), 0.0)) > 1e-9) {
                fail(ErrorKind::Validation, "item thresholds must be non-empty and sum to 0");
            }
            if (!g.item_categories.empty() && g.item_categories[i].size() != t.size() + 1) {
                fail(ErrorKind::Validation, "item category map does not match its thresholds");
            }
            if (static_cast<int>(t.size()) > scale.max_index()) {
                fail(ErrorKind::Validation, "item thresholds exceed the scale");
            }
        }
    }
}

ObservationSet generate_replication(const SimulationDesign& design, int replication) {
    design.validate();
    const auto& g = design.generating;
    CounterRng rng(replication_seed(design.seed, static_cast<std::uint64_t>(replication)));
    ObservationSet obs;
    obs.scale = design.scale;
    for (const auto& id : g.examinees.ids) obs.examinees.add(id);
    for (const auto& id : g.tasks.ids) obs.tasks.add(id);
    const auto o = g.orientations();
    if (g.model == Model::ThreeFacet) {
        for (const auto& id : g.raters.ids) obs.raters.add(id);
        for (std::uint32_t e = 0; e < g.examinees.size(); ++e) {
            for (std::uint32_t r = 0; r < g.raters.size(); ++r) {
                for (std::uint32_t t = 0; t < g.tasks.size(); ++t) {
                    // The missingness draw is always consumed so streams stay aligned.
                    const bool missing = rng.uniform() < design.missing_rate;
                    const auto probs = mfrm_category_probabilities(g.examinees.measure[e], g.tasks.measure[t],
                                                                   g.raters.measure[r], g.tau, o);
                    const int c = sample_category(probs, rng);
                    if (!missing) obs.observations.push_back({e, r, t, c});
                }
            }
        }
    } else {
        for (std::uint32_t n = 0; n < g.examinees.size(); ++n) {
            for (std::uint32_t i = 0; i < g.tasks.size(); ++i) {
                const bool missing = rng.uniform() < design.missing_rate;
                const double eta = o.examinee * g.examinees.measure[n] + o.task * g.tasks.measure[i];
                const auto probs = category_probabilities(eta, g.item_tau[i]);
                int c = sample_category(probs, rng);
                if (!g.item_categories.empty()) c = g.item_categories[i][static_cast<std::size_t>(c)];
                if (!missing) obs.observations.push_back({n, 0, i, c});
            }
        }
    }
    return obs;
}

std::vector<ObservationSet> generate_observations(const SimulationDesign& design) {
    design.validate();
    std::vector<ObservationSet> out;
    out.reserve(static_cast<std::size_t>(design.replications));
    for (int r = 0; r < design.replications; ++r) out.push_back(generate_replication(design, r));
    return out;
}

ObservationSet plant_bias(const ObservationSet& obs, const std::string& examinee_id, const std::string& rater_id,
                          int shift) {
    const auto e = obs.examinees.find(examinee_id);
    const auto r = obs.raters.find(rater_id);
    if (!e || !r) fail(ErrorKind::InvalidArgument, "unknown examinee-rater pair " + examinee_id + "/" + rater_id);
    ObservationSet out = obs;
    bool found = false;
    for (auto& o : out.observations) {
        if (o.examinee == *e && o.rater == *r) {
            o.category = std::clamp(o.category + shift, 0, out.scale.max_index());
            found = true;
        }
    }
    if (!found) fail(ErrorKind::InvalidArgument, "pair " + examinee_id + "/" + rater_id + " has no observations");
    return out;
}

ParameterSet make_three_facet_generators(const ThreeFacetLayout& layout) {
    ParameterSet p;
    p.model = Model::ThreeFacet;
    p.examinees = make_facet(FacetRole::Examinee, layout.orientations.examinee, false, "E", layout.examinees,
                             layout.examinee_spread);
    p.tasks = make_facet(FacetRole::Task, layout.orientations.task, true, "T", layout.tasks, layout.task_spread);
    p.raters = make_facet(FacetRole::Rater, layout.orientations.rater, true, "R", layout.raters, layout.rater_spread);
    p.tau = layout.tau;
    return p;
}

ParameterSet make_partial_credit_generators(const PartialCreditLayout& layout) {
    ParameterSet p;
    p.model = Model::PartialCredit;
    p.examinees = make_facet(FacetRole::Examinee, 1, false, "P", layout.persons, layout.person_spread);
    p.tasks = make_facet(FacetRole::Task, -1, true, "I", layout.items, layout.item_spread);
    p.raters.role = FacetRole::Rater;
    p.item_tau.assign(static_cast<std::size_t>(layout.items), layout.tau);
    std::vector<int> cats(layout.tau.size() + 1);
    std::iota(cats.begin(), cats.end(), 0);
    p.item_categories.assign(static_cast<std::size_t>(layout.items), cats);
    return p;
}

}  // namespace raschkit
