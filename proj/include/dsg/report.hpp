#ifndef DSG_REPORT_HPP_
#define DSG_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsg/harness.hpp"

namespace dsg {

// Raised when an output file cannot be written; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One exported row; column order is fixed as declared.
struct ExportRecord {
  std::uint64_t run_id = 0;
  StepRecord step;
};

inline constexpr const char* kCsvHeader =
    "run_id,t,action_c,action_d,r_c,r_d,tax_rate,adj_c,adj_d,incentive,su";

// Rows ordered by (run_id, t); run_id is the seed of the run.
std::vector<ExportRecord> ExportRows(const RunSummary& summary);

std::string ToCsv(const std::vector<ExportRecord>& rows);
std::string ToJson(const std::vector<ExportRecord>& rows);
// Inverse of ToCsv. Throws std::runtime_error on malformed input.
std::vector<ExportRecord> ParseCsv(const std::string& text);

void ExportCsv(const RunSummary& summary, const std::filesystem::path& path);
void ExportJson(const RunSummary& summary, const std::filesystem::path& path);

struct PlotOptions {
  int smoothing_window = 1;  // 1 = raw series
  int width = 900;
  int height = 420;
  std::string title;
};

// Static SVG: each seed's SU series as a light stroke, the cross-seed mean
// as a dark stroke, t on the x axis.
std::string RenderPlotSvg(const RunSummary& summary, const PlotOptions& options);
void EmitPlot(const RunSummary& summary, const std::filesystem::path& path,
              const PlotOptions& options = {});

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace dsg

#endif  // DSG_REPORT_HPP_
