#include "raschkit/scale.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "raschkit/error.hpp"

namespace raschkit {

std::string_view to_string(ThresholdIssue issue) noexcept {
    return issue == ThresholdIssue::Disordered ? "disordered" : "too_close";
}

std::vector<ThresholdFinding> detect_disordered_thresholds(std::span<const double> tau, double closeness_tol) {
    std::vector<ThresholdFinding> out;
    for (std::size_t k = 0; k + 1 < tau.size(); ++k) {
        const int pos = static_cast<int>(k) + 1;
        if (tau[k + 1] < tau[k]) out.push_back({ThresholdIssue::Disordered, pos, tau[k], tau[k + 1], {}});
        if (std::abs(tau[k + 1] - tau[k]) < closeness_tol) {
            out.push_back({ThresholdIssue::TooClose, pos, tau[k], tau[k + 1], {}});
        }
    }
    return out;
}

std::vector<ThresholdFinding> detect_threshold_findings(const ParameterSet& params, double closeness_tol) {
    if (params.model == Model::ThreeFacet) return detect_disordered_thresholds(params.tau, closeness_tol);
    std::vector<ThresholdFinding> out;
    for (std::size_t i = 0; i < params.item_tau.size(); ++i) {
        for (auto f : detect_disordered_thresholds(params.item_tau[i], closeness_tol)) {
            f.item_id = params.tasks.ids[i];
            out.push_back(f);
        }
    }
    return out;
}

std::string_view to_string(RecodeReason reason) noexcept {
    switch (reason) {
        case RecodeReason::DisorderedThresholds: return "disordered_thresholds";
        case RecodeReason::TooCloseThresholds: return "too_close_thresholds";
        case RecodeReason::Dichotomization: return "dichotomization";
        case RecodeReason::Manual: return "manual";
    }
    return "manual";
}

RecodeReason parse_recode_reason(std::string_view text) {
    for (auto r : {RecodeReason::DisorderedThresholds, RecodeReason::TooCloseThresholds,
                   RecodeReason::Dichotomization, RecodeReason::Manual}) {
        if (text == to_string(r)) return r;
    }
    fail(ErrorKind::Validation, "unknown recode reason '" + std::string(text) + "'");
}

void RecodeMap::validate() const {
    if (mapping.empty()) fail(ErrorKind::Validation, "recode map is empty");
    int prev = mapping.begin()->second;
    for (const auto& [from, to] : mapping) {
        if (to < prev) fail(ErrorKind::Validation, "recode map is not monotone at code " + std::to_string(from));
        if (to > prev + 1) {
            fail(ErrorKind::Validation, "recode map skips new code " + std::to_string(prev + 1));
        }
        prev = to;
    }
}

namespace {

RatingScale rebuild_scale(const RatingScale& old, const RecodeMap& recode) {
    std::map<int, ScaleCategory> merged;
    for (const auto& c : old.categories()) {
        auto it = recode.mapping.find(c.code);
        if (it == recode.mapping.end()) {
            fail(ErrorKind::Validation, "recode map does not cover scale code " + std::to_string(c.code));
        }
        auto [slot, fresh] = merged.try_emplace(it->second);
        auto& cat = slot->second;
        if (fresh) {
            cat = c;
            cat.code = it->second;
            continue;
        }
        if (!c.label.empty()) cat.label = cat.label.empty() ? c.label : cat.label + " / " + c.label;
        if (cat.probability_band && c.probability_band) {
            cat.probability_band = std::make_pair(std::min(cat.probability_band->first, c.probability_band->first),
                                                  std::max(cat.probability_band->second, c.probability_band->second));
        } else {
            cat.probability_band.reset();
        }
    }
    std::vector<ScaleCategory> cats;
    for (auto& [code, cat] : merged) cats.push_back(cat);
    return RatingScale(std::move(cats));
}

}  // namespace

ObservationSet collapse_categories(const ObservationSet& obs, const RecodeMap& recode) {
    recode.validate();
    ObservationSet out = obs;
    std::optional<std::uint32_t> item;
    if (!recode.item.empty()) {
        item = obs.tasks.find(recode.item);
        if (!item) fail(ErrorKind::Validation, "recode names unknown item '" + recode.item + "'");
    }
    for (std::size_t i = 0; i < obs.observations.size(); ++i) {
        const auto& o = obs.observations[i];
        if (item && o.task != *item) continue;
        const int code = obs.scale.code_of(o.category);
        if (!recode.mapping.contains(code)) {
            std::string who = obs.examinees.at(o.examinee);
            if (obs.has_raters()) who += "/" + obs.raters.at(o.rater);
            who += "/" + obs.tasks.at(o.task);
            fail(ErrorKind::Validation,
                 "observation " + std::to_string(i) + " (" + who + ") has code " + std::to_string(code) +
                     " outside the recode map");
        }
    }
    if (!item) out.scale = rebuild_scale(obs.scale, recode);
    for (auto& o : out.observations) {
        if (item && o.task != *item) continue;
        auto it = recode.mapping.find(obs.scale.code_of(o.category));
        const auto index = out.scale.index_of(it->second);
        if (!index) {
            fail(ErrorKind::Validation, "recoded value " + std::to_string(it->second) + " is not on the scale " +
                                            out.scale.describe());
        }
        o.category = *index;
    }
    return out;
}

void ResponseTable::validate() const {
    if (answers.size() != persons.size()) fail(ErrorKind::Dimension, "response table needs one row per person");
    for (const auto& row : answers) {
        if (row.size() != items.size()) fail(ErrorKind::Dimension, "response table needs one column per item");
    }
}

std::string normalize_answer(std::string_view answer) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0, e = answer.size();
    while (b < e && is_space(static_cast<unsigned char>(answer[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(answer[e - 1]))) --e;
    std::string out(answer.substr(b, e - b));
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

ObservationSet dichotomize(const ResponseTable& responses, const AnswerKey& key) {
    responses.validate();
    int top = 1;
    std::vector<const KeyEntry*> entries;
    for (const auto& item : responses.items) {
        auto it = key.find(item);
        if (it == key.end()) fail(ErrorKind::Validation, "item '" + item + "' has no answer key");
        if (it->second.pass_through) {
            if (it->second.levels < 2) fail(ErrorKind::Validation, "item '" + item + "' needs at least 2 levels");
            top = std::max(top, it->second.levels - 1);
        } else if (it->second.accepted.empty()) {
            fail(ErrorKind::Validation, "item '" + item + "' has no accepted answers");
        }
        entries.push_back(&it->second);
    }
    std::vector<std::vector<std::string>> accepted(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (const auto& a : entries[i]->accepted) accepted[i].push_back(normalize_answer(a));
    }

    ObservationSet out;
    out.scale = RatingScale::consecutive(0, top);
    for (const auto& p : responses.persons) out.examinees.add(p);
    for (const auto& i : responses.items) out.tasks.add(i);
    for (std::size_t p = 0; p < responses.persons.size(); ++p) {
        for (std::size_t i = 0; i < responses.items.size(); ++i) {
            const auto& raw = responses.answers[p][i];
            if (!raw) continue;
            const auto answer = normalize_answer(*raw);
            if (answer.empty()) continue;
            int code = 0;
            if (entries[i]->pass_through) {
                int v = 0;
                auto [ptr, ec] = std::from_chars(answer.data(), answer.data() + answer.size(), v);
                if (ec == std::errc() && ptr == answer.data() + answer.size()) {
                    if (v < 0 || v >= entries[i]->levels) {
                        fail(ErrorKind::Validation, "answer " + answer + " of item '" + responses.items[i] +
                                                        "' is outside 0.." + std::to_string(entries[i]->levels - 1));
                    }
                    code = v;
                }
            } else {
                code = std::find(accepted[i].begin(), accepted[i].end(), answer) != accepted[i].end() ? 1 : 0;
            }
            out.observations.push_back({static_cast<std::uint32_t>(p), 0, static_cast<std::uint32_t>(i), code});
        }
    }
    return out;
}

}  // namespace raschkit
