#include "qslit/output.hpp"

#include <json.hpp>

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qslit/error.hpp"

namespace qslit::output {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string column_header(const Series& s, bool abscissa) {
    if (abscissa) return s.x_name + "[" + s.x_unit + "]";
    return s.y_name + "[" + s.y_unit + "]";
}

} // namespace

OutputRecord make_record(const scenarios::RunResult& result) {
    OutputRecord rec;
    rec.provenance = result.metadata;
    rec.columns.push_back(column_header(result.analytic, true));
    rec.data.push_back(result.analytic.x);
    rec.columns.push_back(column_header(result.analytic, false));
    rec.data.push_back(result.analytic.y);
    if (result.numeric) {
        rec.columns.push_back(column_header(*result.numeric, false));
        rec.data.push_back(result.numeric->y);
    }
    for (const auto& extra : result.extras) {
        rec.columns.push_back(column_header(extra, false));
        rec.data.push_back(extra.y);
    }
    for (const auto& col : rec.data)
        if (col.size() != rec.rows()) fail(ErrorCode::bad_argument, "column length mismatch in record");
    return rec;
}

OutputRecord make_record(const scenarios::EventHistogram& histogram, const Series& source_density,
                         std::map<std::string, std::string> provenance) {
    OutputRecord rec;
    rec.provenance = std::move(provenance);
    std::vector<double> centers(histogram.counts.size());
    std::vector<double> counts(histogram.counts.size());
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        centers[i] = 0.5 * (histogram.edges[i] + histogram.edges[i + 1]);
        counts[i] = static_cast<double>(histogram.counts[i]);
    }
    rec.columns.push_back("bin_center[" + source_density.x_unit + "]");
    rec.data.push_back(std::move(centers));
    rec.columns.push_back("count[1]");
    rec.data.push_back(std::move(counts));
    rec.provenance["events.total"] = std::to_string(histogram.total);
    return rec;
}

void write_csv(std::ostream& os, const OutputRecord& record) {
    for (const auto& [key, value] : record.provenance) os << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < record.columns.size(); ++c)
        os << record.columns[c] << (c + 1 < record.columns.size() ? "," : "\n");
    for (std::size_t r = 0; r < record.rows(); ++r)
        for (std::size_t c = 0; c < record.data.size(); ++c)
            os << fmt17(record.data[c][r]) << (c + 1 < record.data.size() ? "," : "\n");
}

void write_json(std::ostream& os, const OutputRecord& record) {
    nlohmann::json j;
    j["meta"] = record.provenance;
    nlohmann::json series = nlohmann::json::object();
    for (std::size_t c = 0; c < record.columns.size(); ++c) series[record.columns[c]] = record.data[c];
    j["series"] = series;
    os << j.dump(2) << "\n";
}

OutputRecord read_csv(std::istream& is) {
    OutputRecord rec;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            std::string value = line.substr(eq + 1);
            auto strip = [](std::string& s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
            };
            strip(key);
            strip(value);
            rec.provenance[key] = value;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) {
                if (!cell.empty() && cell.back() == '\r') cell.pop_back();
                rec.columns.push_back(cell);
            }
            rec.data.resize(rec.columns.size());
            have_header = true;
            continue;
        }
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            if (c >= rec.data.size()) fail(ErrorCode::bad_argument, "CSV row wider than header");
            rec.data[c++].push_back(std::stod(cell));
        }
        if (c != rec.data.size()) fail(ErrorCode::bad_argument, "CSV row narrower than header");
    }
    if (!have_header) fail(ErrorCode::bad_argument, "CSV has no header row");
    return rec;
}

} // namespace qslit::output
