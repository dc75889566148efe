#include "fixtures.hpp"

#include <filesystem>
#include <map>
#include <set>

#include "raschkit/csv.hpp"
#include "raschkit/simulate.hpp"

namespace raschkit::testing {

std::string data_path(const std::string& name) { return std::string(RASCHKIT_DATA_DIR) + "/" + name; }

std::string read_data(const std::string& name) { return csv::read_file(data_path(name)); }

std::string scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("raschkit_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

namespace {

double uniform(CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

bool any_extreme(const ObservationSet& obs, int max_category) {
    std::map<std::pair<int, std::uint32_t>, std::pair<int, int>> score;  // (facet, element) -> (sum, max)
    for (const auto& o : obs.observations) {
        for (auto key : {std::make_pair(0, o.examinee), std::make_pair(1, o.task), std::make_pair(2, o.rater)}) {
            if (key.first == 2 && !obs.has_raters()) continue;
            auto& s = score[key];
            s.first += o.category;
            s.second += max_category;
        }
    }
    for (const auto& [key, s] : score) {
        if (s.first == 0 || s.first == s.second) return true;
    }
    return false;
}

}  // namespace

std::optional<ObservationSet> random_dichotomous_three_facet(std::uint64_t seed) {
    CounterRng rng(CounterRng::mix(seed));
    const double theta[2] = {uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
    const double b = uniform(rng, -1.0, 1.0);
    const double a = uniform(rng, -1.0, 1.0);
    const double beta[2] = {b, -b};
    const double alpha[2] = {a, -a};
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 1);
    for (int e = 0; e < 2; ++e) {
        for (int r = 0; r < 2; ++r) {
            for (int t = 0; t < 2; ++t) {
                const double p = dichotomous_probability(theta[e], beta[t] + alpha[r]);
                obs.add("E" + std::to_string(e + 1), "R" + std::to_string(r + 1), "T" + std::to_string(t + 1),
                        rng.uniform() < p ? 1 : 0);
            }
        }
    }
    if (any_extreme(obs, 1)) return std::nullopt;
    return obs;
}

std::optional<ObservationSet> random_partial_credit_5x3(std::uint64_t seed) {
    CounterRng rng(CounterRng::mix(seed) ^ 0x5bd1e995ULL);
    ObservationSet obs;
    obs.scale = RatingScale::consecutive(0, 2);
    double theta[5];
    for (double& t : theta) t = uniform(rng, -1.5, 1.5);
    const double b1 = uniform(rng, -0.8, 0.8);
    const double b2 = uniform(rng, -0.8, 0.8);
    const double beta[3] = {b1, b2, -b1 - b2};
    double step[3];
    for (double& s : step) s = uniform(rng, -0.8, 0.8);
    for (int n = 0; n < 5; ++n) {
        for (int i = 0; i < 3; ++i) {
            const double tau[2] = {step[i], -step[i]};
            const auto probs = pcm_category_probabilities(theta[n], beta[i], tau);
            obs.add("P" + std::to_string(n + 1), "I" + std::to_string(i + 1), sample_category(probs, rng));
        }
    }
    if (any_extreme(obs, 2)) return std::nullopt;
    std::map<std::uint32_t, std::set<int>> used;
    for (const auto& o : obs.observations) used[o.task].insert(o.category);
    for (const auto& [item, cats] : used) {
        if (cats.size() != 3) return std::nullopt;
    }
    return obs;
}

}  // namespace raschkit::testing
