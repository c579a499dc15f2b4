#include "fixopt/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fixopt/errors.hpp"

namespace fixopt {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#000000", "#aec7e8"};

std::vector<SvgSeries> series_of(const std::vector<AggregateRow>& rows, bool d) {
  std::vector<SvgSeries> out;
  for (const auto& r : rows) {
    if (out.empty() || out.back().name != r.algorithm) out.push_back({r.algorithm, {}});
    out.back().values.push_back(d ? r.d_n : r.f_n);
  }
  return out;
}

}  // namespace

void write_raw_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  // Sorted by (configured algorithm order, sampling); rows are already in n order.
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }
  auto rank = [&](const RunRecord* r) {
    return std::find(order.begin(), order.end(), r->algorithm) - order.begin();
  };
  std::vector<const RunRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [&](const RunRecord* a, const RunRecord* b) {
    const auto ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a->sampling < b->sampling;
  });
  out << kRawCsvHeader << '\n';
  for (const RunRecord* r : sorted) {
    for (const auto& row : r->rows) {
      out << fmt::format("{},{},{},{},{},{},{}\n", r->algorithm, r->sampling, r->seed, row.n, residual_norm(row),
                         row.f_value, row.clamps);
    }
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregateCsvHeader << '\n';
  for (const auto& r : rows) out << fmt::format("{},{},{},{}\n", r.algorithm, r.n, r.d_n, r.f_n);
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json algs = nlohmann::ordered_json::array();
  std::vector<std::string> order;
  for (const auto& r : result.records) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }
  for (const auto& name : order) {
    const AggregateRow* first = nullptr;
    const AggregateRow* last = nullptr;
    for (const auto& row : result.aggregate) {
      if (row.algorithm != name) continue;
      if (!first) first = &row;
      last = &row;
    }
    std::size_t clamps = 0, runs = 0;
    double wall = 0.0;
    for (const auto& r : result.records) {
      if (r.algorithm != name) continue;
      ++runs;
      wall += r.wall_seconds;
      for (const auto& row : r.rows) clamps += row.clamps;
    }
    nlohmann::ordered_json a;
    a["algorithm"] = name;
    a["samplings"] = runs;
    a["iterations"] = last ? last->n : 0;
    a["D_0"] = first ? first->d_n : 0.0;
    a["D_N"] = last ? last->d_n : 0.0;
    a["F_0"] = first ? first->f_n : 0.0;
    a["F_N"] = last ? last->f_n : 0.0;
    a["clamps"] = clamps;
    a["mean_wall_seconds"] = runs ? wall / static_cast<double>(runs) : 0.0;
    algs.push_back(std::move(a));
  }
  doc["algorithms"] = std::move(algs);
  doc["warnings"] = result.warnings;
  out << doc.dump(2) << '\n';
}

std::vector<SvgSeries> d_series(const std::vector<AggregateRow>& rows) { return series_of(rows, true); }
std::vector<SvgSeries> f_series(const std::vector<AggregateRow>& rows) { return series_of(rows, false); }

void write_svg(std::ostream& out, const std::string& title, const std::vector<SvgSeries>& series, bool log_y) {
  constexpr double width = 720, height = 440, left = 70, right = 150, top = 40, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  constexpr double log_floor = 1e-16;
  auto transform = [&](double v) { return log_y ? std::log10(std::max(v, log_floor)) : v; };
  std::size_t max_len = 1;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series) {
    max_len = std::max(max_len, s.values.size());
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, transform(v));
      hi = std::max(hi, transform(v));
    }
  }
  if (!(lo <= hi)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double x_span = static_cast<double>(std::max<std::size_t>(max_len - 1, 1));

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      width, height, width, height);
  out << fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
  out << fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n", left,
                     xml_escape(title));
  out << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
                     top, plot_w, plot_h);
  out << fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">iteration</text>\n",
      left + plot_w / 2, height - 12);
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const double y = top + plot_h * (1.0 - frac);
    const double value = lo + frac * (hi - lo);
    const std::string label = log_y ? fmt::format("1e{:.1f}", value) : fmt::format("{:.3g}", value);
    out << fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
        left - 6, y + 4, label);
    out << fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
        left + plot_w * frac, top + plot_h + 16, static_cast<long long>(std::llround(frac * x_span)));
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string pts;
    for (std::size_t n = 0; n < s.values.size(); ++n) {
      if (!std::isfinite(s.values[n])) continue;
      const double px = left + plot_w * static_cast<double>(n) / x_span;
      const double py = top + plot_h * (1.0 - (transform(s.values[n]) - lo) / (hi - lo));
      pts += fmt::format("{}{:.2f},{:.2f}", pts.empty() ? "" : " ", px, py);
    }
    out << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
    const double ly = top + 14.0 * static_cast<double>(k) + 8;
    out << fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       left + plot_w + 10, ly, left + plot_w + 30, ly, color);
    out << fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                       left + plot_w + 36, ly + 4, xml_escape(s.name));
  }
  out << "</svg>\n";
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  require(!records.empty(), "emit_csv: no records");
  auto out = open_for_write(path);
  write_raw_csv(out, records);
  finish(out, path);
}

void emit_aggregate(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  require(!rows.empty(), "emit_aggregate: no rows");
  auto out = open_for_write(path);
  write_aggregate_csv(out, rows);
  finish(out, path);
}

void emit_summary(const ExperimentResult& result, const std::filesystem::path& path) {
  require(!result.records.empty(), "emit_summary: no records");
  auto out = open_for_write(path);
  write_summary(out, result);
  finish(out, path);
}

void emit_svg(const std::vector<SvgSeries>& series, const std::string& title, bool log_y,
              const std::filesystem::path& path) {
  require(!series.empty(), "emit_svg: no series");
  auto out = open_for_write(path);
  write_svg(out, title, series, log_y);
  finish(out, path);
}

}  // namespace fixopt
