#include "eftlab/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eftlab/version.hpp"

namespace eftlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    return out;
}

void write_header(std::ofstream& out, const std::vector<std::string>& header) {
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    auto out = open_out(path);
    write_header(out, header);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

void write_csv_text(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    auto out = open_out(path);
    write_header(out, header);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    auto out = open_out(path);
    out << "subcommand = " << manifest.subcommand << "\n";
    out << "version = " << kVersion << "\n";
    out << "seed = " << manifest.seed << "\n";
    for (const auto& [k, v] : manifest.params) out << k << " = " << v << "\n";
    for (const auto& f : manifest.outputs) out << "output = " << f << "\n";
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        out[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return out;
}

void read_two_column_csv(const std::string& path, std::vector<double>& col1,
                         std::vector<double>& col2) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open csv: " + path);
    col1.clear();
    col2.clear();
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::string tmp = line;
        std::replace(tmp.begin(), tmp.end(), ',', ' ');
        std::istringstream ls(tmp);
        double a, b;
        if (!(ls >> a >> b)) {
            if (first) { first = false; continue; }  // header
            throw std::invalid_argument(path + ": malformed line '" + line + "'");
        }
        first = false;
        col1.push_back(a);
        col2.push_back(b);
    }
}

}  // namespace eftlab
