#include "raschkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "raschkit/csv.hpp"
#include "raschkit/error.hpp"

namespace raschkit {

using json = nlohmann::ordered_json;

namespace {

std::optional<int> parse_int(const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Validation, what + ": " + e.what());
    }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) fail(ErrorKind::Validation, where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            fail(ErrorKind::Validation, "unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::Validation, where + "." + key + ": " + e.what());
    }
}

template <typename T>
void maybe(const json& j, const char* key, T& out, const std::string& where) {
    if (j.contains(key)) out = get<T>(j, key, where);
}

}  // namespace

ObservationSet parse_observations_text(const std::string& text, const std::optional<RatingScale>& scale,
                                       const std::string& source) {
    const auto t = csv::parse(text);
    const auto ex = t.column("examinee"), ra = t.column("rater"), ta = t.column("task");
    const auto pe = t.column("person"), it = t.column("item"), sc = t.column("score");
    const bool three = ex != std::string::npos && ra != std::string::npos && ta != std::string::npos;
    const bool two = pe != std::string::npos && it != std::string::npos;
    if (sc == std::string::npos || (!three && !two) || t.header.size() != (three ? 4u : 3u)) {
        fail(ErrorKind::Validation,
             source + ": header must be examinee,rater,task,score or person,item,score");
    }

    struct Raw {
        std::string a, r, b;
        int code;
        std::size_t line;
    };
    std::vector<Raw> raws;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const auto score = trimmed(row[sc]);
        Raw raw{trimmed(row[three ? ex : pe]), three ? trimmed(row[ra]) : "", trimmed(row[three ? ta : it]), 0, t.lines[i]};
        if (raw.a.empty() || raw.b.empty() || (three && raw.r.empty())) {
            fail(ErrorKind::Validation, source + ": line " + std::to_string(raw.line) + ": empty identifier");
        }
        if (score.empty()) continue;
        const auto code = parse_int(score);
        if (!code) {
            fail(ErrorKind::Validation, source + ": line " + std::to_string(raw.line) + ": score '" + score +
                                            "' is not an integer");
        }
        raw.code = *code;
        raws.push_back(raw);
    }
    if (raws.empty()) fail(ErrorKind::Validation, source + ": no observations");

    ObservationSet obs;
    if (scale) {
        obs.scale = *scale;
    } else {
        int lo = raws.front().code, hi = lo;
        for (const auto& r : raws) {
            lo = std::min(lo, r.code);
            hi = std::max(hi, r.code);
        }
        obs.scale = RatingScale::consecutive(lo, hi);
    }
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;
    for (const auto& r : raws) {
        auto [pos, fresh] = seen.emplace(std::make_tuple(r.a, r.r, r.b), r.line);
        if (!fresh) {
            fail(ErrorKind::Validation, source + ": duplicate observation at lines " + std::to_string(pos->second) +
                                            " and " + std::to_string(r.line));
        }
        const auto index = obs.scale.index_of(r.code);
        if (!index) {
            fail(ErrorKind::Validation, source + ": line " + std::to_string(r.line) + ": score " +
                                            std::to_string(r.code) + " is not on the scale " + obs.scale.describe());
        }
        if (three) {
            obs.add(r.a, r.r, r.b, *index);
        } else {
            obs.add(r.a, r.b, *index);
        }
    }
    obs.validate();
    return obs;
}

ObservationSet parse_observations(const std::string& path, const std::optional<RatingScale>& scale) {
    return parse_observations_text(csv::read_file(path), scale, path);
}

std::string write_observations_csv(const ObservationSet& obs) {
    if (obs.has_raters()) {
        csv::Writer w({"examinee", "rater", "task", "score"});
        for (const auto& o : obs.observations) {
            w.add({obs.examinees.at(o.examinee), obs.raters.at(o.rater), obs.tasks.at(o.task),
                   std::to_string(obs.scale.code_of(o.category))});
        }
        return w.str();
    }
    csv::Writer w({"person", "item", "score"});
    for (const auto& o : obs.observations) {
        w.add({obs.examinees.at(o.examinee), obs.tasks.at(o.task), std::to_string(obs.scale.code_of(o.category))});
    }
    return w.str();
}

RaterScoreTable parse_wide_ratings(const std::string& text) {
    const auto t = csv::parse(text);
    if (t.header.empty() || t.header[0] != "rater" || t.header.size() < 2) {
        fail(ErrorKind::Validation, "wide ratings need a header rater,<item>,...");
    }
    RaterScoreTable table;
    table.items.assign(t.header.begin() + 1, t.header.end());
    std::set<std::string> items(table.items.begin(), table.items.end());
    if (items.size() != table.items.size()) fail(ErrorKind::Validation, "wide ratings repeat an item column");
    std::set<std::string> raters;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto id = trimmed(t.rows[r][0]);
        if (id.empty() || !raters.insert(id).second) {
            fail(ErrorKind::Validation, "line " + std::to_string(t.lines[r]) + ": empty or repeated rater id");
        }
        table.raters.push_back(id);
        std::vector<std::optional<int>> scores;
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            const auto cell = trimmed(t.rows[r][c]);
            if (cell.empty()) {
                scores.emplace_back();
                continue;
            }
            const auto v = parse_int(cell);
            if (!v) fail(ErrorKind::Validation, "line " + std::to_string(t.lines[r]) + ": score '" + cell + "' is not an integer");
            scores.emplace_back(*v);
        }
        table.scores.push_back(std::move(scores));
    }
    return table;
}

std::string write_wide_ratings(const RaterScoreTable& table) {
    table.validate();
    std::vector<std::string> header{"rater"};
    header.insert(header.end(), table.items.begin(), table.items.end());
    csv::Writer w(header);
    for (std::size_t r = 0; r < table.raters.size(); ++r) {
        std::vector<std::string> row{table.raters[r]};
        for (const auto& s : table.scores[r]) row.push_back(s ? std::to_string(*s) : "");
        w.add(row);
    }
    return w.str();
}

std::string wide_to_long_csv(const RaterScoreTable& table) {
    table.validate();
    csv::Writer w({"rater", "item", "score"});
    for (std::size_t r = 0; r < table.raters.size(); ++r) {
        for (std::size_t i = 0; i < table.items.size(); ++i) {
            if (table.scores[r][i]) w.add({table.raters[r], table.items[i], std::to_string(*table.scores[r][i])});
        }
    }
    return w.str();
}

ObservationSet expand_combinations(const RaterScoreTable& table, const std::vector<Combination>& combinations,
                                   const RatingScale& scale) {
    table.validate();
    ObservationSet obs;
    obs.scale = scale;
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < table.items.size(); ++i) column[table.items[i]] = i;
    for (const auto& c : combinations) obs.examinees.add(c.label);
    for (const auto& r : table.raters) obs.raters.add(r);
    for (auto t : kSemioticTasks) obs.tasks.add(std::string(to_string(t)));
    for (std::uint32_t e = 0; e < combinations.size(); ++e) {
        for (std::uint32_t r = 0; r < table.raters.size(); ++r) {
            for (std::uint32_t t = 0; t < 4; ++t) {
                const auto item = std::to_string(combinations[e].items[t]);
                auto it = column.find(item);
                if (it == column.end()) fail(ErrorKind::Validation, "no ratings column for item " + item);
                const auto& score = table.scores[r][it->second];
                if (!score) continue;
                const auto index = scale.index_of(*score);
                if (!index) {
                    fail(ErrorKind::Validation, "rater " + table.raters[r] + " item " + item + ": score " +
                                                    std::to_string(*score) + " is not on the scale " + scale.describe());
                }
                obs.observations.push_back({e, r, t, *index});
            }
        }
    }
    obs.validate();
    return obs;
}

ResponseTable parse_response_table(const std::string& text) {
    const auto t = csv::parse(text);
    if (t.header.empty() || t.header[0] != "person" || t.header.size() < 2) {
        fail(ErrorKind::Validation, "responses need a header person,<item>,...");
    }
    ResponseTable table;
    table.items.assign(t.header.begin() + 1, t.header.end());
    for (const auto& row : t.rows) {
        table.persons.push_back(trimmed(row[0]));
        std::vector<std::optional<std::string>> answers;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c].empty()) {
                answers.emplace_back();
            } else {
                answers.emplace_back(row[c]);
            }
        }
        table.answers.push_back(std::move(answers));
    }
    return table;
}

ItemBank parse_item_bank_json(const std::string& text) {
    const auto j = parse_json(text, "item bank");
    check_keys(j, {"items", "label_start"}, "item bank");
    ItemBank bank;
    for (const auto& e : get<json>(j, "items", "item bank")) {
        check_keys(e, {"number", "data_viz", "task", "format"}, "item bank entry");
        ItemBankEntry entry;
        entry.item_number = get<int>(e, "number", "item");
        entry.data_viz = get<std::string>(e, "data_viz", "item");
        entry.task = parse_semiotic_task(get<std::string>(e, "task", "item"));
        entry.format = parse_answer_format(get<std::string>(e, "format", "item"));
        bank.entries.push_back(entry);
    }
    if (j.contains("label_start")) {
        for (const auto& [viz, start] : j.at("label_start").items()) bank.label_start[viz] = start.get<int>();
    }
    bank.validate();
    return bank;
}

std::string serialize_item_bank_json(const ItemBank& bank) {
    json j;
    j["items"] = json::array();
    for (const auto& e : bank.entries) {
        j["items"].push_back({{"number", e.item_number},
                              {"data_viz", e.data_viz},
                              {"task", std::string(to_string(e.task))},
                              {"format", std::string(to_string(e.format))}});
    }
    j["label_start"] = json::object();
    for (const auto& [viz, start] : bank.label_start) j["label_start"][viz] = start;
    return j.dump(2) + "\n";
}

SelectionRules parse_selection_rules_json(const std::string& text) {
    const auto j = parse_json(text, "selection rules");
    check_keys(j, {"strategies", "order", "top_k", "scope", "decimals", "tier_size"}, "selection rules");
    SelectionRules rules;
    const auto strategies = get<json>(j, "strategies", "selection rules");
    for (const auto& [viz, s] : strategies.items()) {
        rules.strategies[viz] = parse_strategy(s.get<std::string>());
    }
    maybe(j, "order", rules.order, "selection rules");
    maybe(j, "top_k", rules.top_k, "selection rules");
    if (j.contains("scope")) rules.scope = parse_uniqueness_scope(get<std::string>(j, "scope", "selection rules"));
    maybe(j, "decimals", rules.decimals, "selection rules");
    maybe(j, "tier_size", rules.tier_size, "selection rules");
    rules.validate();
    return rules;
}

std::string serialize_selection_rules_json(const SelectionRules& rules) {
    json j;
    j["strategies"] = json::object();
    for (const auto& [viz, s] : rules.strategies) j["strategies"][viz] = std::string(to_string(s));
    j["order"] = rules.order;
    j["top_k"] = rules.top_k;
    j["scope"] = std::string(to_string(rules.scope));
    j["decimals"] = rules.decimals;
    j["tier_size"] = rules.tier_size;
    return j.dump(2) + "\n";
}

AnswerKey parse_answer_key_json(const std::string& text) {
    const auto j = parse_json(text, "answer key");
    check_keys(j, {"items"}, "answer key");
    AnswerKey key;
    const auto items = get<json>(j, "items", "answer key");
    for (const auto& [item, e] : items.items()) {
        check_keys(e, {"accepted", "pass_through", "levels"}, "answer key entry '" + item + "'");
        KeyEntry entry;
        maybe(e, "accepted", entry.accepted, item);
        maybe(e, "pass_through", entry.pass_through, item);
        maybe(e, "levels", entry.levels, item);
        key[item] = entry;
    }
    return key;
}

std::string serialize_audit_json(const Selection& selection) {
    json j;
    j["selected"] = selection.labels;
    j["audit"] = json::array();
    for (const auto& a : selection.audit) {
        json rejected = json::array();
        for (const auto& r : a.rejected) rejected.push_back({{"label", r.label}, {"reason", r.reason}});
        j["audit"].push_back({{"data_viz", a.data_viz},
                              {"strategy", std::string(to_string(a.strategy))},
                              {"candidates", a.candidates},
                              {"selected", a.selected},
                              {"rejected", rejected},
                              {"note", a.note}});
    }
    return j.dump(2) + "\n";
}

std::vector<AuditEntry> parse_audit_json(const std::string& text) {
    const auto j = parse_json(text, "audit log");
    std::vector<AuditEntry> out;
    for (const auto& e : get<json>(j, "audit", "audit log")) {
        AuditEntry a;
        a.data_viz = get<std::string>(e, "data_viz", "audit");
        a.strategy = parse_strategy(get<std::string>(e, "strategy", "audit"));
        a.candidates = get<std::vector<std::string>>(e, "candidates", "audit");
        a.selected = get<std::string>(e, "selected", "audit");
        for (const auto& r : get<json>(e, "rejected", "audit")) {
            a.rejected.push_back({get<std::string>(r, "label", "audit"), get<std::string>(r, "reason", "audit")});
        }
        maybe(e, "note", a.note, "audit");
        out.push_back(std::move(a));
    }
    return out;
}

void RunConfig::validate() const {
    estimation.validate();
    if (!facets.empty()) validate_facets(facets);
    for (const auto& r : recodes) r.validate();
    if (!(closeness_tol >= 0.0)) fail(ErrorKind::Validation, "closeness_tol must be non-negative");
    if (contrasts < 1) fail(ErrorKind::Validation, "contrasts must be at least 1");
    if (!(fit.noticeable > 0.0 && fit.degrading >= fit.noticeable)) {
        fail(ErrorKind::Validation, "fit bands need 0 < noticeable <= degrading");
    }
    const auto& s = simulation;
    if (s.replications < 1) fail(ErrorKind::Validation, "simulation.replications must be at least 1");
    if (s.format != "long" && s.format != "wide") fail(ErrorKind::Validation, "simulation.format must be long or wide");
    if (s.format == "wide" && s.tasks != 1) fail(ErrorKind::Validation, "wide simulation output needs exactly one task");
    if (!s.examinee_ids.empty() && static_cast<int>(s.examinee_ids.size()) != s.examinees) {
        fail(ErrorKind::Validation, "simulation.examinee_ids must list every examinee");
    }
    if (s.examinees < 1 || s.raters < 1 || s.tasks < 1 || s.persons < 1 || s.items < 1) {
        fail(ErrorKind::Validation, "simulation facet sizes must be positive");
    }
}

std::vector<FacetSpec> RunConfig::effective_facets() const {
    return facets.empty() ? default_facets(model) : facets;
}

std::string RunConfig::resolve(const std::string& path) const {
    if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

namespace {

RatingScale parse_scale(const json& j) {
    check_keys(j, {"categories"}, "scale");
    std::vector<ScaleCategory> cats;
    for (const auto& c : get<json>(j, "categories", "scale")) {
        check_keys(c, {"code", "label", "band"}, "scale category");
        ScaleCategory cat;
        cat.code = get<int>(c, "code", "scale category");
        maybe(c, "label", cat.label, "scale category");
        if (c.contains("band")) {
            const auto band = get<std::vector<double>>(c, "band", "scale category");
            if (band.size() != 2) fail(ErrorKind::Validation, "scale band must be [low, high]");
            cat.probability_band = std::make_pair(band[0], band[1]);
        }
        cats.push_back(cat);
    }
    return RatingScale(std::move(cats));
}

json scale_json(const RatingScale& s) {
    json cats = json::array();
    for (const auto& c : s.categories()) {
        json cj{{"code", c.code}, {"label", c.label}};
        if (c.probability_band) cj["band"] = {c.probability_band->first, c.probability_band->second};
        cats.push_back(cj);
    }
    return json{{"categories", cats}};
}

std::string_view to_string(CollapseOrder o) {
    switch (o) {
        case CollapseOrder::Before: return "before";
        case CollapseOrder::After: return "after";
        case CollapseOrder::Never: return "never";
    }
    return "after";
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
    const auto j = parse_json(json_text, "run config");
    check_keys(j, {"model", "facets", "scale", "recodes", "collapse", "estimation", "fit", "closeness_tol", "contrasts",
                   "inputs", "output_dir", "seed", "simulation"},
               "run config");
    RunConfig c;
    c.base_dir = base_dir;
    if (j.contains("model")) c.model = parse_model(get<std::string>(j, "model", "run config"));
    if (j.contains("facets")) {
        for (const auto& f : j.at("facets")) {
            check_keys(f, {"role", "name", "orientation", "centered"}, "facet");
            FacetSpec spec;
            spec.role = parse_facet_role(get<std::string>(f, "role", "facet"));
            maybe(f, "name", spec.name, "facet");
            maybe(f, "orientation", spec.orientation, "facet");
            maybe(f, "centered", spec.centered, "facet");
            c.facets.push_back(spec);
        }
    }
    if (j.contains("scale")) c.scale = parse_scale(j.at("scale"));
    if (j.contains("recodes")) {
        for (const auto& r : j.at("recodes")) {
            check_keys(r, {"item", "map", "reason"}, "recode");
            RecodeMap map;
            maybe(r, "item", map.item, "recode");
            const auto map_json = get<json>(r, "map", "recode");
            for (const auto& [from, to] : map_json.items()) {
                const auto code = parse_int(from);
                if (!code) fail(ErrorKind::Validation, "recode key '" + from + "' is not an integer code");
                map.mapping[*code] = to.get<int>();
            }
            if (r.contains("reason")) map.reason = parse_recode_reason(get<std::string>(r, "reason", "recode"));
            c.recodes.push_back(map);
        }
    }
    if (j.contains("collapse")) {
        const auto s = get<std::string>(j, "collapse", "run config");
        if (s == "before") {
            c.collapse = CollapseOrder::Before;
        } else if (s == "after") {
            c.collapse = CollapseOrder::After;
        } else if (s == "never") {
            c.collapse = CollapseOrder::Never;
        } else {
            fail(ErrorKind::Validation, "collapse must be before, after or never");
        }
    }
    if (j.contains("estimation")) {
        const auto& e = j.at("estimation");
        check_keys(e, {"convergence_tol", "max_iterations", "step_clamp", "extreme_score_adjustment", "centering"},
                   "estimation");
        maybe(e, "convergence_tol", c.estimation.convergence_tol, "estimation");
        maybe(e, "max_iterations", c.estimation.max_iterations, "estimation");
        maybe(e, "step_clamp", c.estimation.step_clamp, "estimation");
        maybe(e, "extreme_score_adjustment", c.estimation.extreme_score_adjustment, "estimation");
        if (e.contains("centering")) {
            for (const auto& r : e.at("centering")) c.estimation.centering.push_back(parse_facet_role(r.get<std::string>()));
        }
    }
    if (j.contains("fit")) {
        const auto& f = j.at("fit");
        check_keys(f, {"noticeable", "degrading"}, "fit");
        maybe(f, "noticeable", c.fit.noticeable, "fit");
        maybe(f, "degrading", c.fit.degrading, "fit");
    }
    maybe(j, "closeness_tol", c.closeness_tol, "run config");
    maybe(j, "contrasts", c.contrasts, "run config");
    if (j.contains("inputs")) {
        const auto& in = j.at("inputs");
        check_keys(in, {"observations", "wide_ratings", "responses", "answer_key", "item_bank", "selection_rules",
                        "measures", "respondent_measures"},
                   "inputs");
        maybe(in, "observations", c.inputs.observations, "inputs");
        maybe(in, "wide_ratings", c.inputs.wide_ratings, "inputs");
        maybe(in, "responses", c.inputs.responses, "inputs");
        maybe(in, "answer_key", c.inputs.answer_key, "inputs");
        maybe(in, "item_bank", c.inputs.item_bank, "inputs");
        maybe(in, "selection_rules", c.inputs.selection_rules, "inputs");
        maybe(in, "measures", c.inputs.measures, "inputs");
        maybe(in, "respondent_measures", c.inputs.respondent_measures, "inputs");
    }
    maybe(j, "output_dir", c.output_dir, "run config");
    maybe(j, "seed", c.seed, "run config");
    if (j.contains("simulation")) {
        const auto& s = j.at("simulation");
        check_keys(s, {"examinees", "raters", "tasks", "examinee_ids", "examinee_spread", "rater_spread", "task_spread",
                       "tau", "persons", "items", "person_spread", "item_spread", "missing_rate", "replications",
                       "format", "plant"},
                   "simulation");
        auto& sim = c.simulation;
        maybe(s, "examinees", sim.examinees, "simulation");
        maybe(s, "raters", sim.raters, "simulation");
        maybe(s, "tasks", sim.tasks, "simulation");
        maybe(s, "examinee_ids", sim.examinee_ids, "simulation");
        maybe(s, "examinee_spread", sim.examinee_spread, "simulation");
        maybe(s, "rater_spread", sim.rater_spread, "simulation");
        maybe(s, "task_spread", sim.task_spread, "simulation");
        maybe(s, "tau", sim.tau, "simulation");
        maybe(s, "persons", sim.persons, "simulation");
        maybe(s, "items", sim.items, "simulation");
        maybe(s, "person_spread", sim.person_spread, "simulation");
        maybe(s, "item_spread", sim.item_spread, "simulation");
        maybe(s, "missing_rate", sim.missing_rate, "simulation");
        maybe(s, "replications", sim.replications, "simulation");
        maybe(s, "format", sim.format, "simulation");
        if (s.contains("plant")) {
            const auto& p = s.at("plant");
            check_keys(p, {"examinee", "rater", "shift"}, "simulation.plant");
            PlantedBias pb;
            pb.examinee = get<std::string>(p, "examinee", "simulation.plant");
            pb.rater = get<std::string>(p, "rater", "simulation.plant");
            maybe(p, "shift", pb.shift, "simulation.plant");
            sim.plant = pb;
        }
    }
    c.validate();
    return c;
}

RunConfig load_run_config(const std::string& path) {
    const auto dir = std::filesystem::path(path).parent_path().string();
    return parse_run_config(csv::read_file(path), dir);
}

std::string serialize_run_config(const RunConfig& c) {
    json j;
    j["model"] = std::string(to_string(c.model));
    j["facets"] = json::array();
    for (const auto& f : c.facets) {
        j["facets"].push_back({{"role", std::string(to_string(f.role))},
                               {"name", f.name},
                               {"orientation", f.orientation},
                               {"centered", f.centered}});
    }
    if (c.scale) j["scale"] = scale_json(*c.scale);
    j["recodes"] = json::array();
    for (const auto& r : c.recodes) {
        json map = json::object();
        for (const auto& [from, to] : r.mapping) map[std::to_string(from)] = to;
        j["recodes"].push_back({{"item", r.item}, {"map", map}, {"reason", std::string(to_string(r.reason))}});
    }
    j["collapse"] = std::string(to_string(c.collapse));
    json centering = json::array();
    for (auto r : c.estimation.centering) centering.push_back(std::string(to_string(r)));
    j["estimation"] = {{"convergence_tol", c.estimation.convergence_tol},
                       {"max_iterations", c.estimation.max_iterations},
                       {"step_clamp", c.estimation.step_clamp},
                       {"extreme_score_adjustment", c.estimation.extreme_score_adjustment},
                       {"centering", centering}};
    j["fit"] = {{"noticeable", c.fit.noticeable}, {"degrading", c.fit.degrading}};
    j["closeness_tol"] = c.closeness_tol;
    j["contrasts"] = c.contrasts;
    j["inputs"] = {{"observations", c.inputs.observations},
                   {"wide_ratings", c.inputs.wide_ratings},
                   {"responses", c.inputs.responses},
                   {"answer_key", c.inputs.answer_key},
                   {"item_bank", c.inputs.item_bank},
                   {"selection_rules", c.inputs.selection_rules},
                   {"measures", c.inputs.measures},
                   {"respondent_measures", c.inputs.respondent_measures}};
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    const auto& s = c.simulation;
    json sim = {{"examinees", s.examinees},
                {"raters", s.raters},
                {"tasks", s.tasks},
                {"examinee_ids", s.examinee_ids},
                {"examinee_spread", s.examinee_spread},
                {"rater_spread", s.rater_spread},
                {"task_spread", s.task_spread},
                {"tau", s.tau},
                {"persons", s.persons},
                {"items", s.items},
                {"person_spread", s.person_spread},
                {"item_spread", s.item_spread},
                {"missing_rate", s.missing_rate},
                {"replications", s.replications},
                {"format", s.format}};
    if (s.plant) sim["plant"] = {{"examinee", s.plant->examinee}, {"rater", s.plant->rater}, {"shift", s.plant->shift}};
    j["simulation"] = sim;
    return j.dump(2) + "\n";
}

std::string serialize_estimation_json(const EstimationResult& result, const ObservationSet& obs) {
    const auto& p = result.params;
    json j;
    j["model"] = std::string(to_string(p.model));
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["max_change"] = result.max_change;
    j["observations"] = obs.size();
    j["scale"] = scale_json(obs.scale);
    if (p.model == Model::ThreeFacet) {
        j["tau"] = p.tau;
    } else {
        json items = json::object();
        for (std::size_t i = 0; i < p.item_tau.size(); ++i) {
            json codes = json::array();
            for (int idx : p.item_categories[i]) codes.push_back(obs.scale.code_of(idx));
            items[p.tasks.ids[i]] = {{"tau", p.item_tau[i]}, {"codes", codes}};
        }
        j["items"] = items;
    }
    j["extremes"] = json::array();
    for (const auto& e : result.dropped_elements) {
        j["extremes"].push_back({{"facet", std::string(to_string(e.facet))},
                                 {"id", e.id},
                                 {"raw_score", e.raw_score},
                                 {"max_score", e.max_score},
                                 {"adjusted_score", e.adjusted_score},
                                 {"policy", e.policy}});
    }
    j["recodes"] = json::array();
    for (const auto& r : result.recodes) j["recodes"].push_back({{"item", r.item_id}, {"source_codes", r.source_codes}});
    return j.dump(2) + "\n";
}

SimulationDesign simulation_design(const RunConfig& config) {
    const auto& s = config.simulation;
    SimulationDesign d;
    d.seed = config.seed;
    d.replications = s.replications;
    d.missing_rate = s.missing_rate;
    if (config.model == Model::ThreeFacet) {
        ThreeFacetLayout layout;
        layout.examinees = s.examinees;
        layout.raters = s.raters;
        layout.tasks = s.tasks;
        layout.examinee_spread = s.examinee_spread;
        layout.rater_spread = s.rater_spread;
        layout.task_spread = s.task_spread;
        layout.tau = s.tau;
        layout.orientations = orientations_of(config.effective_facets());
        d.generating = make_three_facet_generators(layout);
        if (!s.examinee_ids.empty()) d.generating.examinees.ids = s.examinee_ids;
        d.scale = config.scale ? *config.scale : RatingScale::consecutive(0, static_cast<int>(s.tau.size()));
    } else {
        PartialCreditLayout layout;
        layout.persons = s.persons;
        layout.items = s.items;
        layout.person_spread = s.person_spread;
        layout.item_spread = s.item_spread;
        layout.tau = s.tau;
        d.generating = make_partial_credit_generators(layout);
        d.scale = config.scale ? *config.scale : RatingScale::consecutive(0, static_cast<int>(s.tau.size()));
    }
    d.validate();
    return d;
}

}  // namespace raschkit
