#pragma once

#include <string>
#include <vector>

#include "peersplit/experiments.hpp"

namespace peersplit {

// Shortest decimal form that parses back to the same double (std::to_chars);
// non-finite values become "inf", "-inf", "nan".
std::string format_double(double v);

// CSV emitters. Missing optional fields (target, L) are empty cells; booleans
// are 1/0; undefined statistics are "nan".
std::string per_run_csv(const std::vector<RunRecord>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::string histogram_csv(const FrequencyHistogram& hist);
std::string heatmap_csv(const Heatmap& hm);

// JSON emitters: arrays of objects with the CSV column names as keys.
// Non-finite numbers are serialized as null.
std::string per_run_json(const std::vector<RunRecord>& rows);
std::string aggregate_json(const std::vector<AggregateRow>& rows);
std::string histogram_json(const FrequencyHistogram& hist);
std::string heatmap_json(const Heatmap& hm);

// Creates parent directories as needed; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace peersplit
