#include "raschkit_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "raschkit/csv.hpp"
#include "raschkit/diagnostics.hpp"
#include "raschkit/dimensionality.hpp"
#include "raschkit/error.hpp"
#include "raschkit/estimation.hpp"
#include "raschkit/io.hpp"
#include "raschkit/report.hpp"
#include "raschkit/scale.hpp"
#include "raschkit/selection.hpp"
#include "raschkit/simulate.hpp"

namespace fs = std::filesystem;

namespace raschkit::cli {

namespace {

struct Overrides {
    std::string config;
    std::string output_dir;
    std::string observations;
    std::string model;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_iterations;
    std::optional<int> replications;
};

struct Run {
    RunConfig cfg;
    fs::path out;
    std::ostream& log;
    std::ostream& err;
    bool converged = true;

    void put(const std::string& name, const std::string& content) const {
        csv::write_file((out / name).string(), content);
    }
    void warn(const Error& e) const { err << "warning[" << to_string(e.kind()) << "]: " << e.what() << "\n"; }
};

RunConfig load_config(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? parse_run_config("{}", fs::current_path().string()) : load_run_config(o.config);
    if (!o.model.empty()) {
        cfg.model = parse_model(o.model);
        if (!cfg.facets.empty() && cfg.model != Model::ThreeFacet) cfg.facets.clear();
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.max_iterations) cfg.estimation.max_iterations = *o.max_iterations;
    if (o.replications) cfg.simulation.replications = *o.replications;
    if (!o.observations.empty()) cfg.inputs.observations = fs::absolute(o.observations).string();
    cfg.validate();
    return cfg;
}

fs::path output_dir(const Overrides& o, const RunConfig& cfg) {
    if (!o.output_dir.empty()) return o.output_dir;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("RASCHKIT_OUTPUT_DIR"); env && *env) return env;
    return "raschkit-out";
}

struct Loaded {
    ObservationSet obs;
    std::optional<RaterScoreTable> ratings;
    std::vector<Combination> combinations;
};

RatingScale scale_of(const RunConfig& cfg, const RaterScoreTable& t) {
    if (cfg.scale) return *cfg.scale;
    std::optional<int> lo, hi;
    for (const auto& row : t.scores) {
        for (const auto& s : row) {
            if (!s) continue;
            lo = lo ? std::min(*lo, *s) : *s;
            hi = hi ? std::max(*hi, *s) : *s;
        }
    }
    if (!lo) fail(ErrorKind::Validation, "wide ratings contain no scores");
    return RatingScale::consecutive(*lo, *hi);
}

std::optional<RaterScoreTable> load_ratings(const RunConfig& cfg) {
    if (cfg.inputs.wide_ratings.empty()) return std::nullopt;
    return parse_wide_ratings(csv::read_file(cfg.resolve(cfg.inputs.wide_ratings)));
}

ItemBank load_bank(const RunConfig& cfg) {
    if (cfg.inputs.item_bank.empty()) fail(ErrorKind::Validation, "inputs.item_bank is required");
    return parse_item_bank_json(csv::read_file(cfg.resolve(cfg.inputs.item_bank)));
}

Loaded load_observations(const Run& run) {
    const auto& cfg = run.cfg;
    Loaded l;
    l.ratings = load_ratings(cfg);
    if (!cfg.inputs.observations.empty()) {
        l.obs = parse_observations(cfg.resolve(cfg.inputs.observations), cfg.scale);
    } else if (l.ratings) {
        if (cfg.model != Model::ThreeFacet) fail(ErrorKind::Validation, "wide rater tables feed three-facet runs only");
        l.combinations = generate_combinations(load_bank(cfg));
        l.obs = expand_combinations(*l.ratings, l.combinations, scale_of(cfg, *l.ratings));
    } else if (!cfg.inputs.responses.empty()) {
        if (cfg.inputs.answer_key.empty()) fail(ErrorKind::Validation, "inputs.responses needs inputs.answer_key");
        const auto table = parse_response_table(csv::read_file(cfg.resolve(cfg.inputs.responses)));
        l.obs = dichotomize(table, parse_answer_key_json(csv::read_file(cfg.resolve(cfg.inputs.answer_key))));
    } else {
        fail(ErrorKind::Validation, "no input: set inputs.observations, inputs.wide_ratings or inputs.responses");
    }
    if ((cfg.model == Model::ThreeFacet) != l.obs.has_raters()) {
        fail(ErrorKind::Validation, "observation format does not match model " + std::string(to_string(cfg.model)));
    }
    if (cfg.collapse == CollapseOrder::Before) {
        for (const auto& r : cfg.recodes) l.obs = collapse_categories(l.obs, r);
    }
    return l;
}

EstimationResult estimate(const Run& run, const ObservationSet& obs) {
    const auto& cfg = run.cfg;
    if (cfg.model == Model::ThreeFacet) {
        const auto facets = cfg.effective_facets();
        return estimate_3frsm(obs, facets, cfg.estimation);
    }
    if (cfg.model == Model::Rasch && obs.scale.size() != 2) {
        fail(ErrorKind::Validation, "the dichotomous model needs a two-category scale, got " + obs.scale.describe());
    }
    return estimate_pcm(obs, cfg.estimation);
}

void write_estimation(Run& run, const std::string& prefix, const EstimationResult& res, const ObservationSet& obs) {
    run.put(prefix + "estimation.json", serialize_estimation_json(res, obs));
    ReportInputs in;
    in.params = res.params;
    const auto bundle = render_tables(in);
    run.put(prefix + "measures.csv", bundle.find("measures.csv")->content);
    run.put(prefix + "thresholds.csv", bundle.find("thresholds.csv")->content);
    const auto map = render_wright_map(wright_columns(res));
    run.put(prefix + "wright_map.txt", map.text);
    run.put(prefix + "wright_map.svg", map.svg);
    run.log << prefix << "estimation: " << (res.converged ? "converged" : "NOT converged") << " after "
            << res.iterations << " iterations (max change " << res.max_change << ")\n";
    if (!res.converged) run.converged = false;
}

ReportInputs diagnostics(Run& run, const ObservationSet& obs, const EstimationResult& res,
                         const std::optional<RaterScoreTable>& ratings) {
    const auto& cfg = run.cfg;
    ReportInputs in;
    in.params = res.params;
    std::vector<FacetRole> roles{FacetRole::Examinee, FacetRole::Task};
    if (res.params.model == Model::ThreeFacet) roles.insert(roles.begin() + 1, FacetRole::Rater);
    for (auto role : roles) {
        const auto rows = fit_statistics(obs, res.params, role, cfg.fit);
        in.fits.insert(in.fits.end(), rows.begin(), rows.end());
        try {
            in.reliability.push_back(separation_reliability(res.params, role));
        } catch (const Error& e) {
            run.warn(e);
        }
    }
    in.thresholds = detect_threshold_findings(res.params, cfg.closeness_tol);
    if (res.params.model == Model::ThreeFacet) {
        try {
            in.wald = wald_equal_severity(res.params);
        } catch (const Error& e) {
            run.warn(e);
        }
        if (res.converged) in.bias = estimate_bias_interactions(obs, res, cfg.estimation);
    } else {
        const auto residuals = residual_matrix(obs, res.params);
        in.residual_correlations = residual_item_correlations(residuals);
        try {
            auto report = residual_pca(residuals, std::min<int>(cfg.contrasts, static_cast<int>(residuals.items.size())));
            try {
                report.correlations =
                    disattenuated_cluster_correlations(obs, res.params, report.items, report.clusters, cfg.estimation);
            } catch (const Error& e) {
                run.warn(e);
            }
            in.contrasts = std::move(report);
        } catch (const Error& e) {
            run.warn(e);
        }
    }
    if (ratings) in.pairwise = pairwise_difference_matrices(*ratings);
    return in;
}

void write_bundle(const Run& run, const std::string& prefix, const ReportBundle& bundle) {
    for (const auto& f : bundle.files) run.put(prefix + f.name, f.content);
}

std::string findings_csv(const std::vector<ThresholdFinding>& findings) {
    ReportInputs in;
    in.thresholds = findings;
    const auto bundle = render_tables(in);
    const auto* f = bundle.find("threshold_findings.csv");
    return f ? f->content : csv::row({"scope", "pair", "issue", "lower", "upper"});
}

struct ScaleOutcome {
    ObservationSet obs;
    EstimationResult result;
    bool collapsed = false;
};

ScaleOutcome scale_check(Run& run, const std::string& prefix, const ObservationSet& obs, const EstimationResult& res) {
    const auto& cfg = run.cfg;
    ScaleOutcome outcome{obs, res, false};
    const auto initial = detect_threshold_findings(res.params, cfg.closeness_tol);
    run.put(prefix + "findings_initial.csv", findings_csv(initial));
    std::ostringstream summary;
    summary << "closeness_tol " << cfg.closeness_tol << "\n";
    summary << "initial findings: " << initial.size() << "\n";
    for (const auto& f : initial) {
        summary << "  " << (f.item_id.empty() ? "shared" : f.item_id) << " pair " << f.position << "-"
                << f.position + 1 << " " << to_string(f.issue) << " (" << f.lower << ", " << f.upper << ")\n";
    }
    if (cfg.collapse == CollapseOrder::After && !initial.empty() && !cfg.recodes.empty()) {
        for (const auto& r : cfg.recodes) outcome.obs = collapse_categories(outcome.obs, r);
        outcome.result = estimate(run, outcome.obs);
        outcome.collapsed = true;
        const auto after = detect_threshold_findings(outcome.result.params, cfg.closeness_tol);
        run.put(prefix + "findings_collapsed.csv", findings_csv(after));
        run.put(prefix + "observations_collapsed.csv", write_observations_csv(outcome.obs));
        write_estimation(run, prefix + "collapsed_", outcome.result, outcome.obs);
        summary << "collapsed with " << cfg.recodes.size() << " recode map(s); scale now " << outcome.obs.scale.describe()
                << "\n";
        summary << "findings after collapsing: " << after.size() << "\n";
    } else {
        summary << "no collapsing applied\n";
    }
    run.put(prefix + "scale_check.txt", summary.str());
    run.log << prefix << "scale check: " << initial.size() << " finding(s)"
            << (outcome.collapsed ? ", collapsed and re-estimated" : "") << "\n";
    return outcome;
}

struct SelectOutcome {
    std::vector<Combination> combinations;
    Selection selection;
    std::vector<BlueprintRow> blueprint;
};

SelectOutcome select(Run& run, const std::string& prefix, const std::optional<EstimationResult>& estimates,
                     const ObservationSet* obs) {
    const auto& cfg = run.cfg;
    const auto bank = load_bank(cfg);
    if (cfg.inputs.selection_rules.empty()) fail(ErrorKind::Validation, "inputs.selection_rules is required");
    const auto rules = parse_selection_rules_json(csv::read_file(cfg.resolve(cfg.inputs.selection_rules)));
    SelectOutcome out;
    out.combinations = generate_combinations(bank);

    std::vector<CombinationScore> scores;
    if (!cfg.inputs.measures.empty()) {
        scores = scores_from_measure_table(parse_measure_table(csv::read_file(cfg.resolve(cfg.inputs.measures))),
                                           out.combinations);
    } else {
        if (!estimates || !obs) fail(ErrorKind::Validation, "selection needs inputs.measures or estimated combinations");
        const auto fits = fit_statistics(*obs, estimates->params, FacetRole::Examinee, cfg.fit);
        scores = combination_scores(*estimates, fits, out.combinations);
    }
    const auto ranked = rank_combinations(scores);
    out.selection = select_items(ranked, rules);
    out.blueprint = export_selected_test(out.selection.labels, out.combinations, bank);

    csv::Writer cw({"label", "data_viz", "Name", "Represent", "Use", "Content"});
    for (const auto& c : out.combinations) {
        cw.add({c.label, c.data_viz, std::to_string(c.items[0]), std::to_string(c.items[1]), std::to_string(c.items[2]),
                std::to_string(c.items[3])});
    }
    run.put(prefix + "combinations.csv", cw.str());
    std::vector<MeasureRow> rows;
    for (const auto& s : ranked) rows.push_back({s.label, s.measure, s.infit, s.outfit, s.ptmea});
    run.put(prefix + "ranking.csv", render_measure_table(rows, 2));
    csv::Writer sw({"data_viz", "label"});
    for (const auto& a : out.selection.audit) (void)a;
    for (const auto& label : out.selection.labels) {
        for (const auto& c : out.combinations) {
            if (c.label == label) sw.add({c.data_viz, label});
        }
    }
    run.put(prefix + "selection.csv", sw.str());
    run.put(prefix + "audit.json", serialize_audit_json(out.selection));
    csv::Writer bw({"data_viz", "combination", "task", "item", "code", "format"});
    for (const auto& b : out.blueprint) {
        bw.add({b.data_viz, b.combination, std::string(to_string(b.task)), std::to_string(b.item_number), b.code,
                std::string(to_string(b.format))});
    }
    run.put(prefix + "blueprint.csv", bw.str());
    csv::Writer fw({"format", "items"});
    int total = 0;
    for (const auto& [format, n] : format_counts(out.blueprint)) {
        fw.add({std::string(to_string(format)), std::to_string(n)});
        total += n;
    }
    fw.add({"total", std::to_string(total)});
    run.put(prefix + "format_counts.csv", fw.str());

    run.log << prefix << "selected:";
    for (const auto& l : out.selection.labels) run.log << " " << l;
    run.log << " (" << total << " items)\n";
    return out;
}

std::vector<MeasureRow> load_measures(const RunConfig& cfg, const std::string& path) {
    return parse_measure_table(csv::read_file(cfg.resolve(path)));
}

WrightColumn measure_column(const std::vector<MeasureRow>& rows, const std::string& title) {
    WrightColumn c;
    c.title = title;
    c.markers = true;
    for (const auto& r : rows) c.entries.push_back({r.id, r.measure});
    return c;
}

void write_report(Run& run, const std::string& prefix, const std::optional<RaterScoreTable>& ratings,
                  const std::vector<BlueprintRow>* blueprint) {
    const auto& cfg = run.cfg;
    bool wrote = false;
    if (!cfg.inputs.measures.empty()) {
        const auto map = render_wright_map({measure_column(load_measures(cfg, cfg.inputs.measures), "Measures")});
        run.put(prefix + "wright_map.txt", map.text);
        run.put(prefix + "wright_map.svg", map.svg);
        wrote = true;
    }
    if (!cfg.inputs.respondent_measures.empty()) {
        const auto rows = load_measures(cfg, cfg.inputs.respondent_measures);
        const auto map = render_wright_map({measure_column(rows, "Items")});
        run.put(prefix + "respondent_wright_map.txt", map.text);
        run.put(prefix + "respondent_wright_map.svg", map.svg);
        wrote = true;
        if (ratings) {
            std::map<std::string, std::string> code_to_item;
            if (blueprint) {
                for (const auto& b : *blueprint) code_to_item[b.code] = std::to_string(b.item_number);
            }
            std::map<std::string, std::size_t> column;
            for (std::size_t i = 0; i < ratings->items.size(); ++i) column[ratings->items[i]] = i;
            std::map<std::string, std::vector<int>> scores;
            std::map<std::string, double> measures;
            for (const auto& r : rows) {
                std::string item = r.id;
                if (!column.count(item) && code_to_item.count(item)) item = code_to_item[item];
                auto it = column.find(item);
                if (it == column.end()) {
                    fail(ErrorKind::Validation, "respondent item '" + r.id + "' has no rater column");
                }
                std::vector<int> s;
                for (const auto& row : ratings->scores) {
                    if (row[it->second]) s.push_back(*row[it->second]);
                }
                scores[r.id] = s;
                measures[r.id] = r.measure;
            }
            run.put(prefix + "rater_respondent_bands.csv", render_band_csv(rater_respondent_bands(scores, measures)));
        }
    }
    if (ratings) {
        run.put(prefix + "rater_distributions.csv", rater_distribution_csv(*ratings));
        wrote = true;
    }
    if (!wrote) fail(ErrorKind::Validation, "report needs inputs.measures, inputs.respondent_measures or inputs.wide_ratings");
    run.log << prefix << "report written\n";
}

int cmd_estimate(Run& run) {
    const auto loaded = load_observations(run);
    const auto res = estimate(run, loaded.obs);
    write_estimation(run, "", res, loaded.obs);
    return run.converged ? kExitOk : kExitNotConverged;
}

int cmd_diagnose(Run& run) {
    const auto loaded = load_observations(run);
    const auto res = estimate(run, loaded.obs);
    write_estimation(run, "", res, loaded.obs);
    write_bundle(run, "", render_tables(diagnostics(run, loaded.obs, res, loaded.ratings)));
    return run.converged ? kExitOk : kExitNotConverged;
}

int cmd_scale_check(Run& run) {
    const auto loaded = load_observations(run);
    const auto res = estimate(run, loaded.obs);
    write_estimation(run, "", res, loaded.obs);
    scale_check(run, "", loaded.obs, res);
    return run.converged ? kExitOk : kExitNotConverged;
}

int cmd_select(Run& run) {
    if (!run.cfg.inputs.measures.empty()) {
        select(run, "", std::nullopt, nullptr);
        return kExitOk;
    }
    const auto loaded = load_observations(run);
    const auto res = estimate(run, loaded.obs);
    write_estimation(run, "", res, loaded.obs);
    select(run, "", res, &loaded.obs);
    return run.converged ? kExitOk : kExitNotConverged;
}

int cmd_simulate(Run& run) {
    const auto& cfg = run.cfg;
    const auto design = simulation_design(cfg);
    if (cfg.simulation.format == "wide" && (cfg.model != Model::ThreeFacet || cfg.simulation.tasks != 1)) {
        fail(ErrorKind::Validation, "wide simulation output needs a three-facet design with exactly one task");
    }
    csv::Writer gw({"facet", "element", "measure"});
    for (const auto* fm : {&design.generating.examinees, &design.generating.raters, &design.generating.tasks}) {
        for (std::size_t i = 0; i < fm->size(); ++i) {
            std::ostringstream m;
            m.precision(17);
            m << fm->measure[i];
            gw.add({std::string(to_string(fm->role)), fm->ids[i], m.str()});
        }
    }
    run.put("generators.csv", gw.str());
    const int width = design.replications >= 1000 ? 4 : 3;
    for (int r = 0; r < design.replications; ++r) {
        auto obs = generate_replication(design, r);
        const auto& plant = cfg.simulation.plant;
        if (plant) obs = plant_bias(obs, plant->examinee, plant->rater, plant->shift);
        std::ostringstream name;
        name << "replication_" << std::setw(width) << std::setfill('0') << r;
        if (cfg.simulation.format == "wide") {
            RaterScoreTable t;
            t.raters = obs.raters.ids();
            t.items = obs.examinees.ids();
            t.scores.assign(t.raters.size(), std::vector<std::optional<int>>(t.items.size()));
            for (const auto& o : obs.observations) t.scores[o.rater][o.examinee] = obs.scale.code_of(o.category);
            run.put(name.str() + "_wide.csv", write_wide_ratings(t));
        } else {
            run.put(name.str() + ".csv", write_observations_csv(obs));
        }
    }
    run.log << "simulated " << design.replications << " replication(s)\n";
    return kExitOk;
}

int cmd_report(Run& run) {
    const auto ratings = load_ratings(run.cfg);
    std::optional<SelectOutcome> sel;
    if (!run.cfg.inputs.item_bank.empty() && !run.cfg.inputs.selection_rules.empty() && !run.cfg.inputs.measures.empty()) {
        sel = select(run, "selection_", std::nullopt, nullptr);
    }
    write_report(run, "", ratings, sel ? &sel->blueprint : nullptr);
    return kExitOk;
}

int cmd_pipeline(Run& run) {
    const auto loaded = load_observations(run);
    if (loaded.ratings) {
        run.put("00_input/ratings_long.csv", wide_to_long_csv(*loaded.ratings));
    }
    run.put("00_input/observations.csv", write_observations_csv(loaded.obs));
    const auto res = estimate(run, loaded.obs);
    write_estimation(run, "01_estimate/", res, loaded.obs);
    write_bundle(run, "02_diagnose/", render_tables(diagnostics(run, loaded.obs, res, loaded.ratings)));
    const auto scaled = scale_check(run, "03_scale_check/", loaded.obs, res);
    if (scaled.collapsed) {
        write_bundle(run, "03_scale_check/diagnose_",
                     render_tables(diagnostics(run, scaled.obs, scaled.result, std::nullopt)));
    }
    std::optional<SelectOutcome> sel;
    if (!run.cfg.inputs.item_bank.empty() && !run.cfg.inputs.selection_rules.empty()) {
        sel = select(run, "04_select/", scaled.result, &scaled.obs);
    }
    if (!run.cfg.inputs.measures.empty() || !run.cfg.inputs.respondent_measures.empty() || loaded.ratings) {
        write_report(run, "05_report/", loaded.ratings, sel ? &sel->blueprint : nullptr);
    }
    return run.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rasch-family measurement engine and item-selection pipeline", "raschkit"};
    app.require_subcommand(1);
    Overrides o;

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(Run&);
    };
    const Command commands[] = {
        {"estimate", "Estimate the configured model and write measures", cmd_estimate},
        {"diagnose", "Estimate, then compute fit, reliability, Wald, bias and residual diagnostics", cmd_diagnose},
        {"scale-check", "Detect disordered or too-close thresholds and optionally collapse", cmd_scale_check},
        {"select", "Generate combinations, rank them and select one per data viz", cmd_select},
        {"simulate", "Generate synthetic observations from a simulation design", cmd_simulate},
        {"report", "Render Wright maps and band / distribution tables", cmd_report},
        {"pipeline", "estimate -> diagnose -> scale-check -> select -> report", cmd_pipeline},
    };
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("-c,--config", o.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
        sub->add_option("-o,--output-dir", o.output_dir, "Output directory (default: config, then $RASCHKIT_OUTPUT_DIR)");
        sub->add_option("--observations", o.observations, "Observation CSV overriding inputs.observations");
        sub->add_option("--model", o.model, "Model override: rm, pcm or 3frsm");
        sub->add_option("--seed", o.seed, "Seed override");
        sub->add_option("--max-iterations", o.max_iterations, "Iteration cap override");
        sub->add_option("--replications", o.replications, "Simulation replications override");
        by_app[sub] = &c;
    }

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand --help is raised from within the subcommand.
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            for (auto* sub : app.get_subcommands()) out << sub->help();
            if (app.get_subcommands().empty()) out << app.help();
            return kExitOk;
        }
        err << "error[usage]: " << e.what() << "\n";
        return kExitValidation;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        const auto cfg = load_config(o);
        Run run{cfg, output_dir(o, cfg), out, err};
        fs::create_directories(run.out);
        return by_app.at(chosen)->fn(run);
    } catch (const Error& e) {
        err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace raschkit::cli
