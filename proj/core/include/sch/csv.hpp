#pragma once

// CSV and number-formatting helpers. Doubles are written with std::to_chars
// (shortest round-trip form), so files are byte-stable across reruns and
// thread counts; every file starts with a `# seed=... config=fnv1a:...`
// provenance line.

#include <cstdint>
#include <string>
#include <vector>

namespace sch {

// Shortest representation that parses back to the same double.
std::string fmt_double(double x);

// FNV-1a 64-bit hash, hex-encoded. Stable across platforms; used to stamp the
// canonical config text into output files.
std::string fnv1a_hex(const std::string& text);

class CsvWriter {
public:
    CsvWriter(std::string provenance, std::vector<std::string> columns);

    void add_row(const std::vector<std::string>& cells);
    const std::string& body() const { return body_; }
    void write(const std::string& path) const;

private:
    std::string body_;
    std::size_t n_columns_;
};

std::string cell(double x);
std::string cell(std::int64_t x);
std::string cell(int x);

}  // namespace sch
