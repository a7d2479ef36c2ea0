#include "risfox/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace risfox {

namespace {

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

}  // namespace

void emit_csv(const CurveResult& r, std::ostream& os) {
    for (const auto& [k, v] : r.metadata) os << "# " << one_line(k) << ": " << one_line(v) << "\n";
    for (const auto& w : r.warnings) os << "# warning: " << one_line(w) << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << "\n";
    char buf[40];
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (row[i]) {
                std::snprintf(buf, sizeof buf, "%.17e", *row[i]);
                os << buf;
            }
        }
        os << "\n";
    }
}

void emit_csv(const CurveResult& r, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_csv(r, f);
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

CurveResult parse_csv(std::istream& is) {
    CurveResult r;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const auto colon = body.find(": ");
            if (colon == std::string::npos) {
                r.metadata.emplace_back(body, "");
            } else if (body.compare(0, colon, "warning") == 0) {
                r.warnings.push_back(body.substr(colon + 2));
            } else {
                r.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
            }
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.emplace_back();
        if (!header) {
            r.columns = fields;
            header = true;
            continue;
        }
        if (fields.size() != r.columns.size()) throw std::runtime_error("csv: ragged row");
        std::vector<std::optional<double>> row;
        for (const auto& v : fields) {
            if (v.empty()) {
                row.emplace_back();
                continue;
            }
            char* end = nullptr;
            const double x = std::strtod(v.c_str(), &end);
            if (end != v.c_str() + v.size()) throw std::runtime_error("csv: bad number '" + v + "'");
            row.emplace_back(x);
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

}  // namespace risfox
