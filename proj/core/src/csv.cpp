#include "raschkit/csv.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "raschkit/error.hpp"

namespace raschkit::csv {

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::string::npos;
}

Table parse(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> starts;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false, field_started = false, any = false;
    std::size_t line = 1, start_line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = fields.size() == 1 && fields[0].empty() && !any;
        if (!blank) {
            records.push_back(std::move(fields));
            starts.push_back(start_line);
        }
        fields.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (fields.empty() && !field_started && field.empty() && !any) start_line = line;
        switch (c) {
            case '"':
                if (field_started) fail(ErrorKind::Validation, "line " + std::to_string(line) + ": stray quote");
                quoted = true;
                field_started = true;
                any = true;
                break;
            case ',':
                end_field();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field += c;
                field_started = true;
                any = true;
        }
    }
    if (quoted) fail(ErrorKind::Validation, "unterminated quoted field");
    if (any || !field.empty()) end_record();

    if (records.empty()) fail(ErrorKind::Validation, "CSV input is empty");
    Table t;
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size()) {
            fail(ErrorKind::Validation, "line " + std::to_string(starts[r]) + ": expected " +
                                            std::to_string(t.header.size()) + " fields, found " +
                                            std::to_string(records[r].size()));
        }
        t.rows.push_back(std::move(records[r]));
        t.lines.push_back(starts[r]);
    }
    return t;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    out += "\r\n";
    return out;
}

Writer::Writer(std::vector<std::string> header) : width_(header.size()), out_(row(header)) {}

void Writer::add(std::vector<std::string> fields) {
    if (fields.size() != width_) fail(ErrorKind::Dimension, "CSV row width does not match its header");
    out_ += row(fields);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) fail(ErrorKind::Io, "cannot create directory '" + parent.string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace raschkit::csv
