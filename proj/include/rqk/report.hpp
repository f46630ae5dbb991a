#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rqk/bench.hpp"

namespace rqk {

// Raw record CSV, header exactly: task,d,kernel,sigma,seed,accuracy,n_test
std::string serialize_raw_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_raw_csv(const std::string& text);
std::vector<RunRecord> read_raw_csv(const std::filesystem::path& file);

// Aggregate CSV, header exactly:
// task,d,kernel,sigma,mean_accuracy,std_accuracy,n_seeds
// (std_accuracy is left empty for single-seed cells)
std::string serialize_aggregate_csv(const std::vector<CellAggregate>& aggregates);

enum class ReportFormat { csv, markdown, svg };

// Renders every requested artifact into out_dir:
//   csv      -> raw.csv + aggregate.csv
//   markdown -> tables.md (clean table rows d x columns task/kernel, plus a
//               noise table rows (task, d) x columns sigma)
//   svg      -> accuracy_vs_d_<task>.svg and accuracy_vs_sigma_<task>_d<d>.svg
// Aggregates and plots are always derived from the serialized raw records
// (after a parse round-trip), so re-rendering an emitted raw.csv recreates
// every downstream file byte for byte.
void emit_report(const std::filesystem::path& out_dir, const std::vector<RunRecord>& records,
                 const std::vector<ReportFormat>& formats = {ReportFormat::csv,
                                                             ReportFormat::markdown,
                                                             ReportFormat::svg});

// Re-renders aggregate/markdown/svg outputs from an existing raw CSV.
void render_from_raw_csv(const std::filesystem::path& raw_csv,
                         const std::filesystem::path& out_dir,
                         const std::vector<ReportFormat>& formats);

}  // namespace rqk
