#ifndef DELTARAD_CSV_HPP
#define DELTARAD_CSV_HPP

#include <string>
#include <vector>

namespace deltarad::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

Table read_file(const std::string& path);
Table parse(const std::string& text);
void write_file(const std::string& path, const Table& t);
std::string quote(const std::string& field);

// Deterministic float formatting for artifacts: shortest round-trip-safe
// decimal via %.17g fallback ladder.
std::string fmt(double x);
// fixed 2-decimal rendering used by the percentage tables
std::string fmt2(double x);

double to_double(const std::string& field, const std::string& context);
int to_int(const std::string& field, const std::string& context);

}  // namespace deltarad::csv

#endif
