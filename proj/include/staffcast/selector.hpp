#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "staffcast/error.hpp"

namespace staffcast {

inline constexpr std::size_t kCategoryRows = 8;
inline constexpr std::size_t kApproachColumns = 7;

/// Binary category x approach suitability table. Row 0 ("no selection yet")
/// and row 7 ("other") are all-zero sentinels in the default table.
class DecisionMatrix {
 public:
  using Row = std::array<std::uint8_t, kApproachColumns>;
  using Cells = std::array<Row, kCategoryRows>;

  DecisionMatrix() : cells_{} {}

  explicit DecisionMatrix(const Cells& cells) : cells_(cells) {
    for (const auto& row : cells_) {
      for (auto c : row) {
        if (c > 1) throw SchemaError("cells", "every cell must be 0 or 1");
      }
    }
  }

  static DecisionMatrix default_matrix() {
    return DecisionMatrix(Cells{{
        {0, 0, 0, 0, 0, 0, 0},
        {1, 0, 0, 1, 0, 0, 1},
        {1, 1, 0, 1, 0, 0, 1},
        {0, 1, 0, 1, 1, 1, 0},
        {0, 1, 1, 1, 0, 0, 0},
        {0, 1, 1, 1, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0},
    }});
  }

  const Cells& cells() const noexcept { return cells_; }
  bool suitable(std::size_t row, std::size_t column) const { return cells_.at(row).at(column) == 1; }

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;

 private:
  Cells cells_;
};

struct CategoryId {
  std::size_t index = 0;
  std::string label;

  bool sentinel() const noexcept { return index == 0 || index == kCategoryRows - 1; }

  friend bool operator==(const CategoryId&, const CategoryId&) = default;
};

/// Display labels for the matrix rows; configuration, not ground truth.
class CategoryLabels {
 public:
  using Labels = std::array<std::string, kCategoryRows>;

  CategoryLabels() : labels_(default_labels()) {}
  explicit CategoryLabels(Labels labels) : labels_(std::move(labels)) {}

  static Labels default_labels() {
    return {"No selection",  "Public Service", "Government",           "Healthcare",
            "Retail",        "Manufacturing",  "General Organization", "Other"};
  }

  const Labels& labels() const noexcept { return labels_; }

  CategoryId at(std::size_t index) const {
    if (index >= kCategoryRows) {
      throw Error(ErrorCode::RowOutOfRange,
                  "category index " + std::to_string(index) + " outside 0..7");
    }
    return {index, labels_[index]};
  }

  // Case-insensitive label lookup.
  CategoryId find(std::string_view label) const {
    auto lower = [](std::string_view s) {
      std::string out(s);
      for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return out;
    };
    const auto key = lower(label);
    for (std::size_t i = 0; i < kCategoryRows; ++i) {
      if (lower(labels_[i]) == key) return {i, labels_[i]};
    }
    throw Error(ErrorCode::UnknownCategory, "unknown category '" + std::string(label) + "'");
  }

  friend bool operator==(const CategoryLabels&, const CategoryLabels&) = default;

 private:
  Labels labels_;
};

/// 1-based approach ids marked suitable for the category's row, ascending.
inline std::vector<int> suggest(const DecisionMatrix& matrix, const CategoryId& category) {
  if (category.index >= kCategoryRows) {
    throw Error(ErrorCode::RowOutOfRange,
                "category index " + std::to_string(category.index) + " outside 0..7");
  }
  std::vector<int> ids;
  for (std::size_t j = 0; j < kApproachColumns; ++j) {
    if (matrix.suitable(category.index, j)) ids.push_back(static_cast<int>(j + 1));
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Approach catalog

enum class Calculator { DirectManagerial, HistoricalRatio, Scenario, LinearRegression, None };

constexpr std::string_view calculator_name(Calculator c) noexcept {
  switch (c) {
    case Calculator::DirectManagerial: return "DIRECT_MANAGERIAL";
    case Calculator::HistoricalRatio: return "HISTORICAL_RATIO";
    case Calculator::Scenario: return "SCENARIO";
    case Calculator::LinearRegression: return "LINEAR_REGRESSION";
    case Calculator::None: return "NONE";
  }
  return "NONE";
}

inline std::optional<Calculator> parse_calculator(std::string_view s) {
  for (auto c : {Calculator::DirectManagerial, Calculator::HistoricalRatio, Calculator::Scenario,
                 Calculator::LinearRegression, Calculator::None}) {
    if (calculator_name(c) == s) return c;
  }
  return std::nullopt;
}

inline constexpr std::size_t kMaxApproachNameLength = 50;
inline constexpr std::string_view kUnsetText = "-";

struct Approach {
  int approach_id = 0;
  std::string name;
  std::string introduction{kUnsetText};
  std::string strength{kUnsetText};
  std::string limitation{kUnsetText};
  std::string suitability{kUnsetText};
  std::string application{kUnsetText};
  Calculator calculator = Calculator::None;

  friend bool operator==(const Approach&, const Approach&) = default;
};

namespace detail {

// Code points in a UTF-8 string (continuation bytes are not counted).
inline std::size_t utf8_length(std::string_view s) noexcept {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

inline void check_approach(const Approach& a, std::string_view where) {
  const std::string at(where);
  if (a.approach_id < 1 || a.approach_id > static_cast<int>(kApproachColumns)) {
    throw SchemaError(at + ".approach_id", "must be an integer in 1..7");
  }
  if (a.name.empty()) throw SchemaError(at + ".name", "required and must not be empty");
  if (utf8_length(a.name) > kMaxApproachNameLength) {
    throw SchemaError(at + ".name", "longer than 50 characters");
  }
}

}  // namespace detail

/// Parses the catalog document `{"approaches": [...]}`. Missing or empty text
/// fields become "-"; a missing calculator is NONE.
inline std::vector<Approach> load_catalog(std::string_view source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("approaches") || !doc["approaches"].is_array()) {
    throw SchemaError("approaches", "top level must be an object with an 'approaches' array");
  }

  std::vector<Approach> out;
  std::set<int> seen;
  const auto& list = doc["approaches"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& e = list[i];
    const std::string where = "approaches[" + std::to_string(i) + "]";
    if (!e.is_object()) throw SchemaError(where, "entry must be an object");

    Approach a;
    if (!e.contains("approach_id") || !e["approach_id"].is_number_integer()) {
      throw SchemaError(where + ".approach_id", "required integer");
    }
    a.approach_id = e["approach_id"].get<int>();
    if (!e.contains("name") || !e["name"].is_string()) {
      throw SchemaError(where + ".name", "required string");
    }
    a.name = e["name"].get<std::string>();

    const std::pair<const char*, std::string*> texts[] = {
        {"introduction", &a.introduction}, {"strength", &a.strength},
        {"limitation", &a.limitation},     {"suitability", &a.suitability},
        {"application", &a.application},
    };
    for (const auto& [key, field] : texts) {
      if (!e.contains(key) || e[key].is_null()) continue;
      if (!e[key].is_string()) throw SchemaError(where + "." + key, "must be a string");
      auto text = e[key].get<std::string>();
      *field = text.empty() ? std::string(kUnsetText) : std::move(text);
    }
    if (e.contains("calculator") && !e["calculator"].is_null()) {
      if (!e["calculator"].is_string()) throw SchemaError(where + ".calculator", "must be a string");
      const auto calc = parse_calculator(e["calculator"].get<std::string>());
      if (!calc) throw SchemaError(where + ".calculator", "unknown calculator");
      a.calculator = *calc;
    }

    detail::check_approach(a, where);
    if (!seen.insert(a.approach_id).second) {
      throw SchemaError(where + ".approach_id", "duplicate id " + std::to_string(a.approach_id));
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(),
            [](const Approach& x, const Approach& y) { return x.approach_id < y.approach_id; });
  return out;
}

/// Canonical catalog text: ids ascending, fixed key order, two-space indent.
inline std::string save_catalog(std::vector<Approach> approaches) {
  std::sort(approaches.begin(), approaches.end(),
            [](const Approach& x, const Approach& y) { return x.approach_id < y.approach_id; });
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& a : approaches) {
    nlohmann::ordered_json e;
    e["approach_id"] = a.approach_id;
    e["name"] = a.name;
    e["introduction"] = a.introduction;
    e["strength"] = a.strength;
    e["limitation"] = a.limitation;
    e["suitability"] = a.suitability;
    e["application"] = a.application;
    e["calculator"] = std::string(calculator_name(a.calculator));
    list.push_back(std::move(e));
  }
  nlohmann::ordered_json doc;
  doc["approaches"] = std::move(list);
  return doc.dump(2) + "\n";
}

inline std::vector<Approach> default_catalog() {
  // Columns 5-7 are qualitative approaches whose identity is not pinned down
  // by any source; their text is a placeholder until confirmed.
  return {
      {1, "Direct Managerial Input",
       "Managers fix a total (budget, cost or output) and divide it by the average figure per "
       "worker; also used as a percentage reduction of the current headcount.",
       "Simple arithmetic; usable by a newly founded organization for a rough figure.",
       "Not tied to business objectives or to the actual workload.",
       "Organizations that are overstaffed or working to a fixed budget.",
       "Headcount = total figure / average figure.", Calculator::DirectManagerial},
      {2, "Historical Ratio",
       "Relates past headcount to a business driver such as items manufactured, clients served "
       "or the yearly budget, and applies the average ratio to a projected driver.",
       "Easy to understand and to reproduce in a spreadsheet.",
       "Assumes productivity stays constant; adapts poorly to rapid change.",
       "Organizations with stable operations and a clear volume driver.",
       "Forecast = mean(headcount / driver) * projected driver.", Calculator::HistoricalRatio},
      {3, "Scenario Analysis",
       "Strategic what-if planning: select critical indicators, study their past behaviour, "
       "apply anticipated future events and write the resulting scenarios.",
       "Captures strategic change and expert foresight over a multi-year horizon.",
       "Relies on workshop quality; background and narrative steps are judgement calls.",
       "Strategic workforce planning several years ahead.",
       "Indicator trend extrapolation scaled by event multipliers.", Calculator::Scenario},
      {4, "Linear Regression",
       "Fits headcount as a straight-line function of a driver (time, beds, sales) by least "
       "squares and reads the forecast off the fitted line.",
       "Objective and usually the most accurate when a long, stable history exists.",
       "Needs enough historical data and some statistical skill; assumes linearity.",
       "Established organizations with a long, stable record of the driver and headcount.",
       "Y = intercept + slope * X; e.g. hospital staff versus sickbeds.",
       Calculator::LinearRegression},
      {5, "Expert Judgement",
       "[unverified placeholder] Experienced managers estimate future staffing needs directly.",
       "-", "-", "-", "-", Calculator::None},
      {6, "Delphi Technique",
       "[unverified placeholder] Anonymous expert panel iterating towards a consensus estimate.",
       "-", "-", "-", "-", Calculator::None},
      {7, "Managerial Estimate",
       "[unverified placeholder] Line managers submit bottom-up staffing estimates for review.",
       "-", "-", "-", "-", Calculator::None},
  };
}

// ---------------------------------------------------------------------------
// Matrix file: {"cells": [[0|1 x7] x8], "labels": [str x8]}; labels optional.

struct MatrixConfig {
  DecisionMatrix matrix = DecisionMatrix::default_matrix();
  CategoryLabels labels;

  friend bool operator==(const MatrixConfig&, const MatrixConfig&) = default;
};

inline MatrixConfig load_matrix(std::string_view source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array() ||
      doc["cells"].size() != kCategoryRows) {
    throw SchemaError("cells", "must be an array of 8 rows");
  }
  DecisionMatrix::Cells cells{};
  for (std::size_t r = 0; r < kCategoryRows; ++r) {
    const auto& row = doc["cells"][r];
    if (!row.is_array() || row.size() != kApproachColumns) {
      throw SchemaError("cells[" + std::to_string(r) + "]", "must have 7 entries");
    }
    for (std::size_t c = 0; c < kApproachColumns; ++c) {
      const auto& v = row[c];
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw SchemaError("cells[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                          "must be 0 or 1");
      }
      cells[r][c] = static_cast<std::uint8_t>(v.get<int>());
    }
  }
  MatrixConfig cfg{DecisionMatrix(cells), CategoryLabels()};
  if (doc.contains("labels")) {
    const auto& l = doc["labels"];
    if (!l.is_array() || l.size() != kCategoryRows) {
      throw SchemaError("labels", "must be an array of 8 strings");
    }
    CategoryLabels::Labels labels;
    for (std::size_t r = 0; r < kCategoryRows; ++r) {
      if (!l[r].is_string() || l[r].get<std::string>().empty()) {
        throw SchemaError("labels[" + std::to_string(r) + "]", "must be a non-empty string");
      }
      labels[r] = l[r].get<std::string>();
    }
    cfg.labels = CategoryLabels(std::move(labels));
  }
  return cfg;
}

inline std::string save_matrix(const MatrixConfig& cfg) {
  // One row per line keeps the file readable as a table.
  std::string out = "{\n  \"cells\": [\n";
  const auto& cells = cfg.matrix.cells();
  for (std::size_t r = 0; r < kCategoryRows; ++r) {
    out += "    [";
    for (std::size_t c = 0; c < kApproachColumns; ++c) {
      out += std::to_string(cells[r][c]);
      if (c + 1 < kApproachColumns) out += ", ";
    }
    out += r + 1 < kCategoryRows ? "],\n" : "]\n";
  }
  out += "  ],\n  \"labels\": " + nlohmann::json(cfg.labels.labels()).dump() + "\n}\n";
  return out;
}

}  // namespace staffcast
