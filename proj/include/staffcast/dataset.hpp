#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "staffcast/error.hpp"

namespace staffcast {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct SeriesLabels {
  std::string x;
  std::string y;

  friend bool operator==(const SeriesLabels&, const SeriesLabels&) = default;
};

/// Ordered (driver, response) observations. Order is kept exactly as given;
/// every coordinate is finite.
class PairedSeries {
 public:
  PairedSeries() = default;

  explicit PairedSeries(std::vector<Point> points,
                        std::optional<SeriesLabels> labels = std::nullopt)
      : points_(std::move(points)), labels_(std::move(labels)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
        throw Error(ErrorCode::InvalidRequest,
                    "non-finite value at point " + std::to_string(i));
      }
    }
  }

  static PairedSeries from_columns(std::span<const double> xs, std::span<const double> ys,
                                   std::optional<SeriesLabels> labels = std::nullopt) {
    if (xs.size() != ys.size()) {
      throw Error(ErrorCode::LengthMismatch, "x has " + std::to_string(xs.size()) +
                                                 " values, y has " + std::to_string(ys.size()));
    }
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
    return PairedSeries(std::move(pts), std::move(labels));
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const Point> points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::optional<SeriesLabels>& labels() const noexcept { return labels_; }

  std::vector<double> xs() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.x);
    return out;
  }

  std::vector<double> ys() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.y);
    return out;
  }

  friend bool operator==(const PairedSeries&, const PairedSeries&) = default;

 private:
  std::vector<Point> points_;
  std::optional<SeriesLabels> labels_;
};

enum class IssueCode { Empty, SinglePoint, ZeroXVariance, DuplicateX };

constexpr std::string_view issue_name(IssueCode code) noexcept {
  switch (code) {
    case IssueCode::Empty: return "EMPTY";
    case IssueCode::SinglePoint: return "SINGLE_POINT";
    case IssueCode::ZeroXVariance: return "ZERO_X_VARIANCE";
    case IssueCode::DuplicateX: return "DUPLICATE_X";
  }
  return "UNKNOWN";
}

struct ValidationReport {
  std::size_t n = 0;
  bool x_variance_zero = false;
  std::size_t duplicate_x_count = 0;
  std::vector<IssueCode> issues;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline std::optional<double> parse_real(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Shortest decimal text that parses back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Parses a two-column CSV document with a mandatory header row.
///
/// Fields are trimmed, LF and CRLF endings are accepted and trailing blank
/// lines are ignored. Throws MalformedRowError with the 1-based line number
/// (header is line 1) or Error(EmptyInput) when no data rows exist.
inline PairedSeries parse_paired_series(std::string_view csv_text) {
  if (csv_text.size() >= 3 && csv_text.substr(0, 3) == "\xEF\xBB\xBF") csv_text.remove_prefix(3);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= csv_text.size()) {
    const auto nl = csv_text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(csv_text.substr(start));
      break;
    }
    lines.push_back(csv_text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "no header row");

  const auto header = detail::split_fields(lines.front());
  if (header.size() != 2) throw MalformedRowError(1, "header must have exactly two columns");
  SeriesLabels labels{std::string(header[0]), std::string(header[1])};

  std::vector<Point> points;
  points.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 2) {
      throw MalformedRowError(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    const auto x = detail::parse_real(fields[0]);
    const auto y = detail::parse_real(fields[1]);
    if (!x || !y) throw MalformedRowError(line_no, "non-numeric field");
    points.push_back({*x, *y});
  }
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");
  return PairedSeries(std::move(points), std::move(labels));
}

/// Inverse of parse_paired_series. Absent labels are written as "x","y".
inline std::string serialize_paired_series(const PairedSeries& series) {
  const SeriesLabels labels = series.labels().value_or(SeriesLabels{"x", "y"});
  for (const auto* l : {&labels.x, &labels.y}) {
    if (l->find_first_of(",\r\n") != std::string::npos || detail::trim(*l) != *l) {
      throw Error(ErrorCode::InvalidRequest, "label not representable in CSV: '" + *l + "'");
    }
  }
  std::string out = labels.x + "," + labels.y + "\n";
  for (const auto& p : series.points()) {
    out += detail::format_real(p.x);
    out += ',';
    out += detail::format_real(p.y);
    out += '\n';
  }
  return out;
}

inline ValidationReport validate(const PairedSeries& series) {
  ValidationReport report;
  report.n = series.size();
  if (series.empty()) {
    report.x_variance_zero = true;  // vacuously: no two x values differ
    report.issues.push_back(IssueCode::Empty);
    return report;
  }
  if (series.size() == 1) report.issues.push_back(IssueCode::SinglePoint);

  std::vector<double> xs = series.xs();
  std::sort(xs.begin(), xs.end());
  report.x_variance_zero = xs.front() == xs.back();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] == xs[i - 1]) ++report.duplicate_x_count;
  }
  if (report.x_variance_zero) report.issues.push_back(IssueCode::ZeroXVariance);
  if (report.duplicate_x_count > 0) report.issues.push_back(IssueCode::DuplicateX);
  return report;
}

}  // namespace staffcast
