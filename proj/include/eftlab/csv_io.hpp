#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eftlab {

/// 17 significant digits, '.' decimal point, no locale surprises.
std::string format_double(double x);

/// Comma separator, header line, LF endings, format_double for numbers.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Variant with free-form string cells.
void write_csv_text(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

/// Run manifest: flat `key = value` lines, written before any result file so
/// a rerun with the same manifest is reproducible byte for byte.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params;  // insertion order preserved
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;

    void add(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void add(const std::string& key, double value) { params.emplace_back(key, format_double(value)); }
    void add(const std::string& key, long value) { params.emplace_back(key, std::to_string(value)); }
};

void write_manifest(const std::string& path, const RunManifest& manifest);

/// Flat `key = value` config file; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> read_config(const std::string& path);

/// Two-column numeric CSV (optional header) -> column vectors.
void read_two_column_csv(const std::string& path, std::vector<double>& col1,
                         std::vector<double>& col2);

}  // namespace eftlab
