#include "sch/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "sch/errors.hpp"

namespace sch {

std::string fmt_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

CsvWriter::CsvWriter(std::string provenance, std::vector<std::string> columns)
    : n_columns_(columns.size()) {
    body_ = "# " + std::move(provenance) + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_)
        throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(n_columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << body_;
}

std::string cell(double x) { return fmt_double(x); }
std::string cell(std::int64_t x) { return std::to_string(x); }
std::string cell(int x) { return std::to_string(x); }

}  // namespace sch
