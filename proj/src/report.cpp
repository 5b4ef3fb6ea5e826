#include "dsg/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace dsg {

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<ExportRecord> ExportRows(const RunSummary& summary) {
  std::vector<std::size_t> order(summary.runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return summary.seeds[a] < summary.seeds[b];
  });
  std::vector<ExportRecord> rows;
  for (std::size_t i : order)
    for (const StepRecord& step : summary.runs[i])
      rows.push_back({summary.seeds[i], step});
  return rows;
}

std::string ToCsv(const std::vector<ExportRecord>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    const StepRecord& s = row.step;
    out += std::to_string(row.run_id);
    out += ',';
    out += std::to_string(s.t);
    out += ',';
    out += ToChar(s.joint.citizen);
    out += ',';
    out += ToChar(s.joint.ddo);
    for (double v : {s.raw.citizen, s.raw.ddo, s.tax_rate, s.adjusted.citizen,
                     s.adjusted.ddo, s.incentive_added, s.su}) {
      out += ',';
      out += FormatDouble(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

double ParseDouble(std::string_view field) {
  double v = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::runtime_error("bad number '" + std::string(field) + "' in CSV");
  return v;
}

template <typename Int>
Int ParseInt(std::string_view field) {
  Int v{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::runtime_error("bad integer '" + std::string(field) + "' in CSV");
  return v;
}

}  // namespace

std::vector<ExportRecord> ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("CSV header mismatch");
  std::vector<ExportRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 11) throw std::runtime_error("CSV row needs 11 fields: " + line);
    if (f[2].size() != 1 || f[3].size() != 1)
      throw std::runtime_error("bad action field in CSV row: " + line);
    ExportRecord r;
    r.run_id = ParseInt<std::uint64_t>(f[0]);
    r.step.t = ParseInt<int>(f[1]);
    r.step.joint = {ActionFromChar(f[2][0]), ActionFromChar(f[3][0])};
    r.step.raw = {ParseDouble(f[4]), ParseDouble(f[5])};
    r.step.tax_rate = ParseDouble(f[6]);
    r.step.adjusted = {ParseDouble(f[7]), ParseDouble(f[8])};
    r.step.incentive_added = ParseDouble(f[9]);
    r.step.su = ParseDouble(f[10]);
    rows.push_back(r);
  }
  return rows;
}

std::string ToJson(const std::vector<ExportRecord>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    const StepRecord& s = row.step;
    nlohmann::json j;
    j["run_id"] = row.run_id;
    j["t"] = s.t;
    j["action_c"] = std::string(1, ToChar(s.joint.citizen));
    j["action_d"] = std::string(1, ToChar(s.joint.ddo));
    j["r_c"] = s.raw.citizen;
    j["r_d"] = s.raw.ddo;
    j["tax_rate"] = s.tax_rate;
    j["adj_c"] = s.adjusted.citizen;
    j["adj_d"] = s.adjusted.ddo;
    j["incentive"] = s.incentive_added;
    j["su"] = s.su;
    arr.push_back(std::move(j));
  }
  return arr.dump() + "\n";
}

void ExportCsv(const RunSummary& summary, const std::filesystem::path& path) {
  WriteTextFile(path, ToCsv(ExportRows(summary)));
}

void ExportJson(const RunSummary& summary, const std::filesystem::path& path) {
  WriteTextFile(path, ToJson(ExportRows(summary)));
}

namespace {

std::string Polyline(const std::vector<double>& ys, double x0, double x_scale,
                     double y0, double y_scale, double y_min) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i) os << ' ';
    os << x0 + x_scale * static_cast<double>(i) << ','
       << y0 - y_scale * (ys[i] - y_min);
  }
  return os.str();
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string RenderPlotSvg(const RunSummary& summary, const PlotOptions& opt) {
  const int left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = opt.width - left - right;
  const double plot_h = opt.height - top - bottom;

  auto smooth = [&](const std::vector<double>& s) {
    return opt.smoothing_window > 1 ? RollingMean(s, opt.smoothing_window) : s;
  };
  std::vector<std::vector<double>> series;
  for (const auto& s : summary.su) series.push_back(smooth(s));
  const std::vector<double> mean = smooth(summary.mean);

  double y_min = 0.0, y_max = 6.0;
  for (const auto& s : series)
    for (double v : s) {
      y_min = std::min(y_min, std::floor(v));
      y_max = std::max(y_max, std::ceil(v));
    }
  const std::size_t n = mean.size();
  const double x_scale = n > 1 ? plot_w / static_cast<double>(n - 1) : 0.0;
  const double y_scale = plot_h / (y_max - y_min);
  const double y0 = top + plot_h;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
     << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' '
     << opt.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string title = opt.title.empty() ? summary.scenario : opt.title;
  os << "<text x=\"" << opt.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << Escape(title) << "</text>\n";

  // Axes, y grid at integer utilities, x ticks at ~10 positions.
  os << "<g stroke=\"#333\" stroke-width=\"1\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << y0 << "\" x2=\"" << left + plot_w
     << "\" y2=\"" << y0 << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << y0 << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int v = static_cast<int>(y_min); v <= static_cast<int>(y_max); ++v) {
    const double y = y0 - y_scale * (v - y_min);
    os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
       << left + plot_w << "\" y2=\"" << y
       << "\" stroke=\"#e5e5e5\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\">" << v << "</text>\n";
  }
  const std::size_t tick_step = std::max<std::size_t>(1, n / 10);
  for (std::size_t t = 0; t < n; t += tick_step) {
    const double x = left + x_scale * static_cast<double>(t);
    os << "<text x=\"" << x << "\" y=\"" << y0 + 18
       << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << opt.height - 10
     << "\" text-anchor=\"middle\">t</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">social utility</text>\n</g>\n";

  for (const auto& s : series) {
    os << "<polyline class=\"seed\" fill=\"none\" stroke=\"#9ecae1\" "
          "stroke-opacity=\"0.7\" stroke-width=\"1\" points=\""
       << Polyline(s, left, x_scale, y0, y_scale, y_min) << "\"/>\n";
  }
  os << "<polyline class=\"mean\" fill=\"none\" stroke=\"#08306b\" "
        "stroke-width=\"2\" points=\""
     << Polyline(mean, left, x_scale, y0, y_scale, y_min) << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

void EmitPlot(const RunSummary& summary, const std::filesystem::path& path,
              const PlotOptions& options) {
  WriteTextFile(path, RenderPlotSvg(summary, options));
}

}  // namespace dsg
