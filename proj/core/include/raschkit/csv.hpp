#pragma once

// Minimal RFC-4180 reading and writing.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace raschkit::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // 1-based line where each row starts

    // Index of a header column, or npos.
    std::size_t column(std::string_view name) const;
};

// First record is the header. Blank lines are skipped; every row must have as
// many fields as the header.
Table parse(std::string_view text);

std::string escape(std::string_view field);
std::string row(const std::vector<std::string>& fields);

class Writer {
public:
    explicit Writer(std::vector<std::string> header);
    void add(std::vector<std::string> fields);
    const std::string& str() const noexcept { return out_; }

private:
    std::size_t width_;
    std::string out_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace raschkit::csv
