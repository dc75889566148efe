#include "raschkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "raschkit/csv.hpp"
#include "raschkit/error.hpp"
#include "raschkit/stats.hpp"

namespace raschkit {

namespace {

constexpr const char* kMarkerHeader = "M/S/T";
constexpr const char* kSeparator = " | ";

std::string num(double v, int decimals = 4) {
    if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
    return fmt::format("{:.{}f}", v, decimals);
}

std::string opt(const std::optional<double>& v, int decimals = 4) { return v ? num(*v, decimals) : ""; }

std::string pval(double p) { return fmt::format("{:.6g}", p); }

std::string rtrim(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string xml_unescape(std::string s) {
    const std::pair<const char*, const char*> table[] = {
        {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&apos;", "'"}, {"&amp;", "&"}};
    for (const auto& [from, to] : table) {
        std::string::size_type pos = 0;
        const std::string f = from;
        while ((pos = s.find(f, pos)) != std::string::npos) {
            s.replace(pos, f.size(), to);
            pos += std::string(to).size();
        }
    }
    return s;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0, pos;
    while ((pos = s.find(sep, start)) != std::string::npos) {
        out.push_back(s.substr(start, pos - start));
        start = pos + sep.size();
    }
    out.push_back(s.substr(start));
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(' ');
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(' ') - b + 1);
}

// Fixed-width text table, first column left aligned, the rest right aligned.
std::string aligned(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out += "  ";
            out += c == 0 ? fmt::format("{:<{}}", r[c], width[c]) : fmt::format("{:>{}}", r[c], width[c]);
        }
        return rtrim(out) + "\n";
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

}  // namespace

long wright_bin(double measure, double bin_width) {
    if (!(bin_width > 0.0)) fail(ErrorKind::InvalidArgument, "Wright map bin width must be positive");
    return std::lround(measure / bin_width);
}

WrightMap render_wright_map(const std::vector<WrightColumn>& columns, const WrightLayout& layout) {
    std::size_t total = 0;
    for (const auto& c : columns) total += c.entries.size();
    if (columns.empty() || total == 0) fail(ErrorKind::InvalidArgument, "Wright map needs at least one element");

    WrightMap map;
    const double w = layout.bin_width;
    std::vector<std::vector<const WrightEntry*>> sorted(columns.size());
    bool first = true;
    auto extend = [&](long bin) {
        if (first) {
            map.top_bin = map.bottom_bin = bin;
            first = false;
        }
        map.top_bin = std::max(map.top_bin, bin);
        map.bottom_bin = std::min(map.bottom_bin, bin);
    };
    for (std::size_t c = 0; c < columns.size(); ++c) {
        map.titles.push_back(columns[c].title);
        for (const auto& e : columns[c].entries) {
            if (!std::isfinite(e.measure)) fail(ErrorKind::InvalidArgument, "non-finite measure for '" + e.id + "'");
            sorted[c].push_back(&e);
            extend(wright_bin(e.measure, w));
        }
        std::stable_sort(sorted[c].begin(), sorted[c].end(), [](const WrightEntry* a, const WrightEntry* b) {
            if (a->measure != b->measure) return a->measure > b->measure;
            return a->id < b->id;
        });
        if (columns[c].markers && !columns[c].entries.empty()) {
            std::vector<double> m;
            for (const auto& e : columns[c].entries) m.push_back(e.measure);
            const double mu = stats::mean(m);
            map.markers.push_back({c, 'M', wright_bin(mu, w)});
            if (m.size() >= 2) {
                const double sd = stats::sample_sd(m);
                for (int k : {1, 2}) {
                    const char sym = k == 1 ? 'S' : 'T';
                    map.markers.push_back({c, sym, wright_bin(mu + k * sd, w)});
                    map.markers.push_back({c, sym, wright_bin(mu - k * sd, w)});
                }
            }
        }
    }
    for (const auto& mk : map.markers) extend(mk.bin);

    // Rows top to bottom, columns left to right.
    for (long bin = map.top_bin; bin >= map.bottom_bin; --bin) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            for (const auto* e : sorted[c]) {
                if (wright_bin(e->measure, w) == bin) map.placements.push_back({c, e->id, bin});
            }
        }
    }

    // Text grid.
    std::vector<std::string> header{"logit"};
    std::vector<int> field_column{-1};
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].markers) {
            header.push_back(kMarkerHeader);
            field_column.push_back(-2 - static_cast<int>(c));
        }
        header.push_back(columns[c].title);
        field_column.push_back(static_cast<int>(c));
    }
    std::vector<std::vector<std::string>> grid;
    for (long bin = map.top_bin; bin >= map.bottom_bin; --bin) {
        std::vector<std::string> row(header.size());
        row[0] = fmt::format("{:+.2f}", static_cast<double>(bin) * w);
        for (std::size_t f = 1; f < header.size(); ++f) {
            const int fc = field_column[f];
            if (fc >= 0) {
                for (const auto& p : map.placements) {
                    if (p.bin == bin && p.column == static_cast<std::size_t>(fc)) {
                        if (!row[f].empty()) row[f] += ' ';
                        row[f] += p.id;
                    }
                }
            } else {
                const auto c = static_cast<std::size_t>(-2 - fc);
                for (const auto& mk : map.markers) {
                    if (mk.bin == bin && mk.column == c) row[f] += mk.symbol;
                }
            }
        }
        grid.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t f = 0; f < header.size(); ++f) {
        width[f] = header[f].size();
        for (const auto& r : grid) width[f] = std::max(width[f], r[f].size());
    }
    auto emit = [&](const std::vector<std::string>& r) {
        std::size_t used = r.size();
        while (used > 1 && r[used - 1].empty()) --used;
        std::string line;
        for (std::size_t f = 0; f < used; ++f) {
            if (f) line += kSeparator;
            line += fmt::format("{:<{}}", r[f], width[f]);
        }
        return rtrim(line) + "\n";
    };
    map.text = emit(header);
    std::string rule;
    for (std::size_t f = 0; f < header.size(); ++f) {
        if (f) rule += "-+-";
        rule += std::string(width[f], '-');
    }
    map.text += rule + "\n";
    for (const auto& r : grid) map.text += emit(r);

    // SVG with the same placements.
    const double rh = layout.row_height, cw = layout.char_width;
    const double top_margin = 2.5 * rh, left = 8.0 * cw;
    std::vector<double> x0(columns.size());
    double x = left + 2.0 * cw;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        x0[c] = x;
        std::size_t widest = columns[c].title.size();
        for (long bin = map.top_bin; bin >= map.bottom_bin; --bin) {
            std::size_t chars = columns[c].markers ? 4 : 0;
            for (const auto& p : map.placements) {
                if (p.bin == bin && p.column == c) chars += p.id.size() + 1;
            }
            widest = std::max(widest, chars);
        }
        x += static_cast<double>(widest + 3) * cw;
    }
    const double width_px = x + cw;
    const double height_px = top_margin + static_cast<double>(map.top_bin - map.bottom_bin + 2) * rh;
    auto y_of = [&](long bin) { return top_margin + static_cast<double>(map.top_bin - bin + 1) * rh; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
        "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"monospace\" font-size=\"{2:.0f}\">\n",
        width_px, height_px, rh * 0.8);
    svg << fmt::format("<line class=\"axis\" x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                       left, y_of(map.top_bin) - rh * 0.5, y_of(map.bottom_bin) + rh * 0.5);
    const long per_logit = std::max(1L, std::lround(1.0 / w));
    for (long bin = map.top_bin; bin >= map.bottom_bin; --bin) {
        if (bin % per_logit != 0) continue;
        svg << fmt::format("<text class=\"tick\" x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" data-bin=\"{}\">{:+.0f}</text>\n",
                           left - cw, y_of(bin), bin, static_cast<double>(bin) * w);
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        svg << fmt::format("<text class=\"title\" x=\"{:.1f}\" y=\"{:.1f}\" data-column=\"{}\">{}</text>\n", x0[c], rh * 1.2,
                           c, xml_escape(columns[c].title));
    }
    for (long bin = map.top_bin; bin >= map.bottom_bin; --bin) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            double cx = x0[c];
            if (columns[c].markers) {
                std::string symbols;
                for (const auto& mk : map.markers) {
                    if (mk.bin == bin && mk.column == c) symbols += mk.symbol;
                }
                for (std::size_t k = 0; k < symbols.size(); ++k) {
                    svg << fmt::format(
                        "<text class=\"marker\" x=\"{:.1f}\" y=\"{:.1f}\" data-column=\"{}\" data-bin=\"{}\" "
                        "data-marker=\"{}\">{}</text>\n",
                        cx + static_cast<double>(k) * cw, y_of(bin), c, bin, symbols[k], symbols[k]);
                }
                cx += 4.0 * cw;
            }
            for (const auto& p : map.placements) {
                if (p.bin != bin || p.column != c) continue;
                svg << fmt::format(
                    "<text class=\"element\" x=\"{:.1f}\" y=\"{:.1f}\" data-column=\"{}\" data-bin=\"{}\" "
                    "data-id=\"{}\">{}</text>\n",
                    cx, y_of(bin), c, bin, xml_escape(p.id), xml_escape(p.id));
                cx += static_cast<double>(p.id.size() + 1) * cw;
            }
        }
    }
    svg << "</svg>\n";
    map.svg = svg.str();
    return map;
}

std::vector<WrightColumn> wright_columns(const EstimationResult& result) {
    const auto& p = result.params;
    const bool markers = p.model != Model::ThreeFacet;
    auto column = [&](const FacetMeasures& fm, std::string title) {
        WrightColumn c;
        c.title = std::move(title);
        c.markers = markers;
        for (std::size_t i = 0; i < fm.size(); ++i) c.entries.push_back({fm.ids[i], fm.measure[i]});
        return c;
    };
    std::vector<WrightColumn> out;
    if (p.model == Model::ThreeFacet) {
        out.push_back(column(p.examinees, "Examinees"));
        out.push_back(column(p.raters, "Raters"));
        out.push_back(column(p.tasks, "Tasks"));
    } else {
        out.push_back(column(p.examinees, "Persons"));
        out.push_back(column(p.tasks, "Items"));
    }
    return out;
}

std::vector<WrightPlacement> parse_wright_text(const std::string& text, double bin_width) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::Validation, "empty Wright map text");
    const auto header = split(line, kSeparator);
    std::vector<int> field_column;
    int next = 0;
    for (const auto& h : header) {
        const auto t = trim(h);
        if (&h == &header.front()) {
            field_column.push_back(-1);
        } else if (t == kMarkerHeader) {
            field_column.push_back(-2);
        } else {
            field_column.push_back(next++);
        }
    }
    std::getline(in, line);  // rule
    std::vector<WrightPlacement> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, kSeparator);
        const long bin = wright_bin(std::stod(trim(fields[0])), bin_width);
        for (std::size_t f = 1; f < fields.size() && f < field_column.size(); ++f) {
            if (field_column[f] < 0) continue;
            std::istringstream ids(fields[f]);
            std::string id;
            while (ids >> id) out.push_back({static_cast<std::size_t>(field_column[f]), id, bin});
        }
    }
    return out;
}

std::vector<WrightPlacement> parse_wright_svg(const std::string& svg) {
    static const std::regex element(
        "<text class=\"element\"[^>]*data-column=\"([0-9]+)\" data-bin=\"(-?[0-9]+)\" data-id=\"([^\"]*)\"");
    std::vector<WrightPlacement> out;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), element); it != std::sregex_iterator(); ++it) {
        out.push_back({static_cast<std::size_t>(std::stoul((*it)[1])), xml_unescape((*it)[3]), std::stol((*it)[2])});
    }
    return out;
}

std::vector<MeasureRow> parse_measure_table(const std::string& csv_text) {
    const auto t = csv::parse(csv_text);
    const auto id = t.column("id"), measure = t.column("measure");
    if (id == std::string::npos || measure == std::string::npos) {
        fail(ErrorKind::Validation, "measure table needs 'id' and 'measure' columns");
    }
    const auto infit = t.column("infit"), outfit = t.column("outfit"), ptmea = t.column("ptmea");
    auto number = [&](std::size_t r, std::size_t c) -> std::optional<double> {
        if (c == std::string::npos || t.rows[r][c].empty()) return std::nullopt;
        try {
            std::size_t used = 0;
            const double v = std::stod(t.rows[r][c], &used);
            if (used != t.rows[r][c].size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::Validation, "line " + std::to_string(t.lines[r]) + ": '" + t.rows[r][c] + "' is not a number");
        }
    };
    std::vector<MeasureRow> rows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        MeasureRow row;
        row.id = t.rows[r][id];
        if (row.id.empty()) fail(ErrorKind::Validation, "line " + std::to_string(t.lines[r]) + ": empty id");
        const auto m = number(r, measure);
        if (!m) fail(ErrorKind::Validation, "line " + std::to_string(t.lines[r]) + ": missing measure");
        row.measure = *m;
        row.infit = number(r, infit);
        row.outfit = number(r, outfit);
        row.ptmea = number(r, ptmea);
        rows.push_back(row);
    }
    return rows;
}

std::string render_measure_table(const std::vector<MeasureRow>& rows, int decimals) {
    csv::Writer w({"id", "measure", "infit", "outfit", "ptmea"});
    auto f = [&](const std::optional<double>& v) { return v ? fmt::format("{:.{}f}", *v, decimals) : std::string(); };
    for (const auto& r : rows) w.add({r.id, fmt::format("{:.{}f}", r.measure, decimals), f(r.infit), f(r.outfit), f(r.ptmea)});
    return w.str();
}

const ReportFile* ReportBundle::find(const std::string& name) const {
    for (const auto& f : files) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

ReportBundle render_tables(const ReportInputs& in) {
    ReportBundle bundle;
    std::string text;
    auto section = [&](const std::string& title) { text += (text.empty() ? "" : "\n") + title + "\n"; };
    auto notice = [&](const std::string& title) { text += (text.empty() ? "" : "\n") + title + ": not computed\n"; };

    // Measures joined with fit rows.
    if (in.params) {
        const std::vector<std::string> header{"facet", "element", "measure", "se", "infit", "outfit", "ptmea", "flag"};
        csv::Writer w(header);
        std::vector<std::vector<std::string>> rows;
        std::vector<const FacetMeasures*> facets{&in.params->examinees};
        if (in.params->model == Model::ThreeFacet) facets.push_back(&in.params->raters);
        facets.push_back(&in.params->tasks);
        for (const auto* fm : facets) {
            for (std::size_t e = 0; e < fm->size(); ++e) {
                const FitRow* fit = nullptr;
                for (const auto& f : in.fits) {
                    if (f.facet == fm->role && f.element_id == fm->ids[e]) fit = &f;
                }
                std::vector<std::string> r{std::string(to_string(fm->role)), fm->ids[e], num(fm->measure[e]),
                                           e < fm->se.size() ? opt(fm->se[e]) : "",
                                           fit ? opt(fit->infit) : "", fit ? opt(fit->outfit) : "",
                                           fit ? opt(fit->ptmea) : "", fit ? fit->flag : ""};
                w.add(r);
                rows.push_back(std::move(r));
            }
        }
        bundle.files.push_back({"measures.csv", w.str()});
        section("Measures");
        text += aligned(header, rows);

        const std::vector<std::string> th{"scope", "position", "tau"};
        csv::Writer tw(th);
        std::vector<std::vector<std::string>> trows;
        if (in.params->model == Model::ThreeFacet) {
            for (std::size_t k = 0; k < in.params->tau.size(); ++k) {
                trows.push_back({"shared", std::to_string(k + 1), num(in.params->tau[k])});
            }
        } else {
            for (std::size_t i = 0; i < in.params->item_tau.size(); ++i) {
                for (std::size_t k = 0; k < in.params->item_tau[i].size(); ++k) {
                    trows.push_back({in.params->tasks.ids[i], std::to_string(k + 1), num(in.params->item_tau[i][k])});
                }
            }
        }
        for (const auto& r : trows) tw.add(r);
        bundle.files.push_back({"thresholds.csv", tw.str()});
        section("Thresholds");
        text += aligned(th, trows);
    } else {
        notice("Measures");
    }

    if (!in.thresholds.empty()) {
        const std::vector<std::string> header{"scope", "pair", "issue", "lower", "upper"};
        csv::Writer w(header);
        std::vector<std::vector<std::string>> rows;
        for (const auto& f : in.thresholds) {
            std::vector<std::string> r{f.item_id.empty() ? "shared" : f.item_id,
                                       fmt::format("{}-{}", f.position, f.position + 1), std::string(to_string(f.issue)),
                                       num(f.lower), num(f.upper)};
            w.add(r);
            rows.push_back(std::move(r));
        }
        bundle.files.push_back({"threshold_findings.csv", w.str()});
        section("Threshold findings");
        text += aligned(header, rows);
    } else {
        notice("Threshold findings");
    }

    if (!in.reliability.empty()) {
        const std::vector<std::string> header{"facet", "elements", "mean", "observed_sd", "rmse", "separation",
                                              "reliability"};
        csv::Writer w(header);
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : in.reliability) {
            std::vector<std::string> row{std::string(to_string(r.facet)), std::to_string(r.elements), num(r.mean),
                                         num(r.observed_sd), num(r.rmse), num(r.separation), num(r.reliability)};
            w.add(row);
            rows.push_back(std::move(row));
        }
        bundle.files.push_back({"reliability.csv", w.str()});
        section("Separation reliability");
        text += aligned(header, rows);
    } else {
        notice("Separation reliability");
    }

    if (in.wald) {
        const std::vector<std::string> header{"statistic", "df", "p_value", "weighted_mean"};
        csv::Writer w(header);
        std::vector<std::string> row{num(in.wald->statistic), std::to_string(in.wald->df), pval(in.wald->p_value),
                                     num(in.wald->weighted_mean)};
        w.add(row);
        bundle.files.push_back({"wald.csv", w.str()});
        const std::vector<std::string> ph{"a", "b", "difference", "se", "z", "p_value"};
        csv::Writer pw(ph);
        std::vector<std::vector<std::string>> prows;
        for (const auto& p : in.wald->pairwise) {
            std::vector<std::string> r{p.a, p.b, num(p.difference), num(p.se), num(p.z), pval(p.p_value)};
            pw.add(r);
            prows.push_back(std::move(r));
        }
        bundle.files.push_back({"wald_pairwise.csv", pw.str()});
        section("Wald test of equal severity");
        text += aligned(header, {row});
        section("Pairwise Wald z-tests");
        text += aligned(ph, prows);
    } else {
        notice("Wald test of equal severity");
    }

    if (in.bias) {
        const std::vector<std::string> header{"examinee", "rater", "count", "observed", "expected", "phi", "se",
                                              "t", "df", "p_value", "significant", "flag"};
        csv::Writer w(header);
        std::vector<std::vector<std::string>> rows;
        for (const auto& b : in.bias->rows) {
            std::vector<std::string> r{b.examinee_id, b.rater_id, std::to_string(b.count), num(b.observed),
                                       num(b.expected), num(b.phi), opt(b.se), opt(b.t), std::to_string(b.df),
                                       b.p_value ? pval(*b.p_value) : "", b.significant ? "yes" : "no", b.flag};
            w.add(r);
            rows.push_back(std::move(r));
        }
        bundle.files.push_back({"bias.csv", w.str()});
        section("Examinee by rater interactions");
        text += aligned(header, rows);
    } else {
        notice("Examinee by rater interactions");
    }

    if (in.residual_correlations) {
        const auto& t = *in.residual_correlations;
        const std::vector<std::string> header{"item_a", "item_b", "r", "n"};
        csv::Writer w(header);
        for (std::size_t a = 0; a < t.items.size(); ++a) {
            for (std::size_t b = a + 1; b < t.items.size(); ++b) {
                w.add({t.items[a], t.items[b], opt(t.r[a][b]), std::to_string(t.n[a][b])});
            }
        }
        bundle.files.push_back({"residual_correlations.csv", w.str()});
        section("Residual correlations");
        std::vector<std::vector<std::string>> rows;
        if (t.most_positive) {
            rows.push_back({"highest positive", t.items[t.most_positive->a], t.items[t.most_positive->b],
                            num(t.most_positive->r, 2)});
        }
        if (t.most_negative) {
            rows.push_back({"highest negative", t.items[t.most_negative->a], t.items[t.most_negative->b],
                            num(t.most_negative->r, 2)});
        }
        text += aligned({"extreme", "item_a", "item_b", "r"}, rows);
    } else {
        notice("Residual correlations");
    }

    if (in.contrasts) {
        const auto& c = *in.contrasts;
        csv::Writer ew({"component", "eigenvalue"});
        std::vector<std::vector<std::string>> erows;
        for (std::size_t k = 0; k < c.eigenvalues.size(); ++k) {
            std::vector<std::string> r{std::to_string(k + 1), num(c.eigenvalues[k])};
            ew.add(r);
            erows.push_back(std::move(r));
        }
        bundle.files.push_back({"contrast_eigenvalues.csv", ew.str()});
        std::vector<std::string> lh{"item"};
        for (std::size_t k = 0; k < c.loadings.size(); ++k) lh.push_back(fmt::format("loading_{}", k + 1));
        lh.push_back("cluster");
        csv::Writer lw(lh);
        std::vector<std::vector<std::string>> lrows;
        for (std::size_t i = 0; i < c.items.size(); ++i) {
            std::vector<std::string> r{c.items[i]};
            for (const auto& l : c.loadings) r.push_back(num(l[i]));
            r.push_back(std::to_string(c.clusters[i]));
            lw.add(r);
            lrows.push_back(std::move(r));
        }
        bundle.files.push_back({"contrast_loadings.csv", lw.str()});
        section("Residual PCA eigenvalues");
        text += aligned({"component", "eigenvalue"}, erows);
        section("Contrast loadings");
        text += aligned(lh, lrows);
        if (!c.correlations.empty()) {
            const std::vector<std::string> ch{"clusters", "persons", "observed", "reliability_a", "reliability_b",
                                              "disattenuated"};
            csv::Writer cw(ch);
            std::vector<std::vector<std::string>> crows;
            for (const auto& cc : c.correlations) {
                std::vector<std::string> r{fmt::format("{}-{}", cc.first, cc.second), std::to_string(cc.persons),
                                           opt(cc.observed), num(cc.reliability_first), num(cc.reliability_second),
                                           opt(cc.disattenuated)};
                cw.add(r);
                crows.push_back(std::move(r));
            }
            bundle.files.push_back({"cluster_correlations.csv", cw.str()});
            section("Disattenuated cluster correlations");
            text += aligned(ch, crows);
        }
    } else {
        notice("Residual PCA");
    }

    if (!in.pairwise.empty()) {
        const std::vector<std::string> header{"item", "row_rater", "column_rater", "difference", "band"};
        csv::Writer w(header);
        for (const auto& m : in.pairwise) {
            for (std::size_t a = 0; a < m.raters.size(); ++a) {
                for (std::size_t b = 0; b < m.raters.size(); ++b) {
                    const auto& cell = m.cells[a][b];
                    w.add({m.item_id, m.raters[a], m.raters[b], cell ? std::to_string(*cell) : "",
                           cell ? disagreement_band(*cell) : "absent"});
                }
            }
        }
        bundle.files.push_back({"pairwise_differences.csv", w.str()});
        section("Pairwise rater differences");
        text += fmt::format("{} item matrices written to pairwise_differences.csv\n", in.pairwise.size());
    } else {
        notice("Pairwise rater differences");
    }

    bundle.files.push_back({"report.txt", text});
    return bundle;
}

std::vector<BandRow> rater_respondent_bands(const std::map<std::string, std::vector<int>>& rater_scores,
                                            const std::map<std::string, double>& measures, const BandConfig& config) {
    if (config.rater_cuts.size() != 3) fail(ErrorKind::InvalidArgument, "rater band mapping needs three cuts");
    std::vector<double> below, above;
    for (const auto& [item, m] : measures) (m < 0.0 ? below : above).push_back(m);
    const double lo = below.empty() ? 0.0 : stats::median(below);
    const double hi = above.empty() ? 0.0 : stats::median(above);
    std::vector<BandRow> out;
    for (const auto& [item, scores] : rater_scores) {
        auto it = measures.find(item);
        if (it == measures.end()) fail(ErrorKind::MissingParameter, "no respondent measure for item '" + item + "'");
        if (scores.empty()) fail(ErrorKind::InvalidArgument, "no rater scores for item '" + item + "'");
        BandRow row;
        row.item = item;
        row.rater_median = stats::median(std::vector<double>(scores.begin(), scores.end()));
        row.rater_band = 4;
        for (std::size_t k = 0; k < 3; ++k) {
            if (row.rater_median <= config.rater_cuts[k]) {
                row.rater_band = static_cast<int>(k) + 1;
                break;
            }
        }
        row.measure = it->second;
        // Items at a half's median go to the outer band.
        if (row.measure < 0.0) {
            row.measure_band = row.measure <= lo ? 1 : 2;
        } else {
            row.measure_band = row.measure < hi ? 3 : 4;
        }
        out.push_back(row);
    }
    return out;
}

std::string render_band_csv(const std::vector<BandRow>& rows) {
    csv::Writer w({"item", "rater_median", "rater_band", "measure", "measure_band"});
    for (const auto& r : rows) {
        w.add({r.item, num(r.rater_median, 1), std::to_string(r.rater_band), num(r.measure, 2),
               std::to_string(r.measure_band)});
    }
    return w.str();
}

std::string rater_distribution_csv(const RaterScoreTable& table) {
    table.validate();
    csv::Writer w({"rater", "item", "score"});
    for (std::size_t r = 0; r < table.raters.size(); ++r) {
        for (std::size_t i = 0; i < table.items.size(); ++i) {
            if (table.scores[r][i]) w.add({table.raters[r], table.items[i], std::to_string(*table.scores[r][i])});
        }
    }
    return w.str();
}

std::vector<CombinationScore> scores_from_measure_table(const std::vector<MeasureRow>& rows,
                                                        const std::vector<Combination>& combinations) {
    std::map<std::string, const Combination*> by_label;
    for (const auto& c : combinations) by_label[c.label] = &c;
    std::set<std::string> seen;
    std::vector<CombinationScore> scores;
    for (const auto& row : rows) {
        auto it = by_label.find(row.id);
        if (it == by_label.end()) fail(ErrorKind::Validation, "measure table row '" + row.id + "' is not a combination");
        if (!seen.insert(row.id).second) fail(ErrorKind::Validation, "measure table repeats " + row.id);
        scores.push_back({row.id, it->second->data_viz, row.measure, row.infit, row.outfit, row.ptmea});
    }
    for (const auto& c : combinations) {
        if (!seen.count(c.label)) fail(ErrorKind::Validation, "measure table has no row for " + c.label);
    }
    return scores;
}

}  // namespace raschkit
