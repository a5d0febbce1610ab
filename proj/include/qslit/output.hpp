#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qslit/scenarios.hpp"
#include "qslit/series.hpp"

namespace qslit::output {

/// Columnar numeric record with provenance. Column headers are `name[unit]`.
struct OutputRecord {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; ///< one vector per column, equal lengths
    std::map<std::string, std::string> provenance;

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

/// Assemble a record from a scenario result: abscissa column, analytic column,
/// numeric and extra columns when present (all share the abscissa).
OutputRecord make_record(const scenarios::RunResult& result);

/// Append histogram columns (bin centers and counts) as an independent block record.
OutputRecord make_record(const scenarios::EventHistogram& histogram, const Series& source_density,
                         std::map<std::string, std::string> provenance);

/// CSV: `# key = value` provenance lines, a `name[unit]` header row, then rows with
/// full round-trip precision (17 significant digits).
void write_csv(std::ostream& os, const OutputRecord& record);

/// JSON object with `meta` (provenance) and `series` (column name -> array) keys.
void write_json(std::ostream& os, const OutputRecord& record);

/// Parse a CSV produced by write_csv (used for round-trip checks and reproduction).
OutputRecord read_csv(std::istream& is);

} // namespace qslit::output
